#include "potkit/asymptotic.hpp"

#include <algorithm>
#include <cmath>

namespace potkit {

ApproachPath ApproachPath::geometric(const Point& direction, double r0, double q, int count)
{
    require(r0 > 0.0 && q > 0.0 && q < 1.0, "geometric path needs r0 > 0 and 0 < q < 1");
    require(count >= 1, "path needs at least one sample");
    ApproachPath p;
    p.direction = normalized(direction);
    double r = r0;
    for (int k = 0; k < count; ++k) {
        p.radii.push_back(r);
        r *= q;
    }
    return p;
}

Point ApproachPath::at(const Point& target, std::size_t k) const { return target + direction * radii[k]; }

void ApproachPath::validate(std::size_t n) const
{
    require(direction.dim() == n, "path direction dimension mismatch");
    require(std::abs(direction.norm() - 1.0) < 1e-9, "path direction must be a unit vector");
    if (radii.size() < 8) fail(ErrorKind::PathTooShort, "approach path needs at least 8 samples");
    for (std::size_t k = 0; k < radii.size(); ++k) {
        require(radii[k] > 0.0 && std::isfinite(radii[k]), "path samples must avoid the target");
        if (k > 0) require(radii[k] < radii[k - 1], "path distances must decrease");
    }
}

std::pair<double, double> linearFit(const std::vector<double>& x, const std::vector<double>& y)
{
    const std::size_t n = x.size();
    require(n >= 2 && y.size() == n, "linear fit needs at least two points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
    return {slope, my - slope * mx};
}

LimitFit fitLimit(const std::vector<double>& radii, const std::vector<double>& ratios, CorrectionScale scale)
{
    const std::size_t N = ratios.size();
    if (N < 8) fail(ErrorKind::PathTooShort, "limit fit needs at least 8 samples");
    require(radii.size() == N, "radii and ratios must align");
    LimitFit fit;
    for (double v : ratios)
        if (!std::isfinite(v)) {
            fit.limit = kInfinity;
            fit.tail = kInfinity;
            return fit;
        }

    std::vector<double> xi(N);
    for (std::size_t k = 0; k < N; ++k) {
        if (scale == CorrectionScale::Power) {
            xi[k] = radii[k];
        } else {
            require(radii[k] < 1.0, "log-scale fit needs radii below 1");
            xi[k] = 1.0 / std::log(1.0 / radii[k]);
        }
    }
    const std::size_t start = std::min(N - 4, N - std::max<std::size_t>(4, N / 3));
    const double last = ratios.back();

    double maxDelta = 0.0;
    for (std::size_t k = start; k + 1 < N; ++k) maxDelta = std::max(maxDelta, std::abs(ratios[k + 1] - ratios[k]));
    const double flatTol = 1e-13 * std::max(1.0, std::abs(last));
    if (maxDelta <= flatTol) {
        fit.limit = last;
        fit.exponent = 0.0;
    } else {
        // Pick the correction exponent s whose linear model ratio = L + c*xi^s fits the window best.
        auto rssAt = [&](double s, double* intercept) {
            std::vector<double> X, Y;
            for (std::size_t k = start; k < N; ++k) {
                X.push_back(std::pow(xi[k], s));
                Y.push_back(ratios[k]);
            }
            auto [slope, icpt] = linearFit(X, Y);
            double rss = 0.0;
            for (std::size_t i = 0; i < X.size(); ++i) {
                const double e = Y[i] - (icpt + slope * X[i]);
                rss += e * e;
            }
            if (intercept) *intercept = icpt;
            return rss;
        };
        const double lo = std::log(1e-3), hi = std::log(8.0);
        const int M = 240;
        int best = 0;
        double bestRss = kInfinity;
        for (int i = 0; i <= M; ++i) {
            const double r = rssAt(std::exp(lo + (hi - lo) * i / M), nullptr);
            if (r < bestRss) {
                bestRss = r;
                best = i;
            }
        }
        double a = lo + (hi - lo) * std::max(0, best - 1) / M, b = lo + (hi - lo) * std::min(M, best + 1) / M;
        const double g = 0.5 * (std::sqrt(5.0) - 1.0);
        for (int it = 0; it < 80; ++it) {
            const double x1 = b - g * (b - a), x2 = a + g * (b - a);
            if (rssAt(std::exp(x1), nullptr) < rssAt(std::exp(x2), nullptr)) b = x2;
            else a = x1;
        }
        fit.exponent = std::exp(0.5 * (a + b));
        rssAt(fit.exponent, &fit.limit);
    }
    fit.tail = std::abs(fit.limit - last);
    for (std::size_t k = 0; k < N; ++k) fit.residuals.push_back(ratios[k] - fit.limit);
    return fit;
}

}  // namespace potkit
