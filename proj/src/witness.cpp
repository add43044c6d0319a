#include "potkit/witness.hpp"

#include <algorithm>
#include <cmath>

namespace potkit {

AtomicMeasure witnessMeasure(int n, double p, int first, int count)
{
    require(count >= 1 && first >= 1, "witness needs at least one atom");
    std::vector<Atom> atoms;
    for (int i = first; i < first + count; ++i) {
        Point x(static_cast<std::size_t>(n));
        x[0] = std::ldexp(1.0, -i);
        atoms.push_back(Atom{x, std::pow(2.0, -i * (n - p)) * std::pow(static_cast<double>(i), p - 1.0)});
    }
    return AtomicMeasure(std::move(atoms));
}

WitnessReport thinWitnessBlowup(double s, double p, const WitnessOptions& options)
{
    const int n = options.n;
    require(n >= 3 && n <= 4, "the witness is built for n in {3, 4}");
    require(p > 2.0 && p < n, "the witness needs p in (2, n)");
    require(s > 0.0 && std::isfinite(s), "s must be positive");
    WitnessReport rep;
    rep.n = n;
    rep.p = p;
    rep.s = s;
    rep.gamma = (n - p) / (p - 1.0);
    const Point x0(static_cast<std::size_t>(n));

    const AtomicMeasure atoms = witnessMeasure(n, p, options.first, options.atoms);
    rep.mu = Measure(atoms);
    rep.totalMass = atoms.totalMass();
    rep.E = ballFamily(x0, s, options.first, std::max(options.first, options.annuli + 1));

    rep.series = wienerTerms(rep.E, x0, p, options.annuli, WienerWeighting::CapP, options.wiener);
    rep.thinness = classifyThin(rep.series.values());

    WolffParams wp{p, options.r};
    rep.centersDiverge = true;
    for (const auto& a : atoms.atoms()) {
        const int i = static_cast<int>(std::lround(-std::log2(a.location[0])));
        if (a.location[0] >= options.r) continue;
        WitnessAtomSample smp;
        smp.i = i;
        smp.mass = a.mass;
        const double scale = std::pow(a.location.norm(), rep.gamma);
        smp.centerScaled = scale * wolffPotential(rep.mu, wp, a.location);
        smp.claimedBound = i / rep.gamma;
        Point probe = a.location;
        probe[1] += 0.5 * std::ldexp(1.0, -i) * std::pow(static_cast<double>(i), -s);
        smp.probeScaled = std::pow(probe.norm(), rep.gamma) * wolffPotential(rep.mu, wp, probe);
        if (!(smp.centerScaled >= smp.claimedBound)) rep.centersDiverge = false;
        rep.atoms.push_back(smp);
    }

    rep.ray = escapingRay(rep.E, x0, options.r, options.directions, options.seed);
    if (rep.ray) {
        const int deepest = options.first + options.atoms - 4;
        for (int k = 2; k <= 2 * deepest; ++k) {
            const double t = std::pow(2.0, -0.5 * k);
            rep.rayRadii.push_back(t);
            rep.rayScaled.push_back(std::pow(t, rep.gamma) * wolffPotential(rep.mu, wp, *rep.ray * t));
        }
        const std::size_t N = rep.rayScaled.size();
        bool decreasing = true;
        for (std::size_t k = N - N / 4; k < N; ++k)
            if (rep.rayScaled[k] > rep.rayScaled[k - 1] * (1.0 + 1e-12)) decreasing = false;
        const double first = *std::max_element(rep.rayScaled.begin(), rep.rayScaled.end());
        rep.rayDecays = decreasing && rep.rayScaled.back() <= 1e-2 * first;
    }
    return rep;
}

}  // namespace potkit
