#include "potkit/report.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <unistd.h>

namespace fs = std::filesystem;

namespace potkit {

Json jnum(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

Json jvec(const std::vector<double>& v)
{
    Json a = Json::array();
    for (double x : v) a.push_back(jnum(x));
    return a;
}

std::string formatNumber(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void Artifacts::csv(const std::string& name, const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows)
{
    std::string out;
    for (std::size_t j = 0; j < header.size(); ++j) out += (j ? "," : "") + header[j];
    out += '\n';
    for (const auto& r : rows) {
        require(r.size() == header.size(), "CSV row width differs from its header");
        for (std::size_t j = 0; j < r.size(); ++j) out += (j ? "," : "") + formatNumber(r[j]);
        out += '\n';
    }
    files_[name] = std::move(out);
}

void Artifacts::commit(const std::string& dir) const
{
    fs::create_directories(dir);
    const fs::path staging = fs::path(dir) / (".staging-" + std::to_string(::getpid()));
    fs::remove_all(staging);
    fs::create_directories(staging);
    std::map<std::string, std::string> all = files_;
    all["report.json"] = report.dump(2) + "\n";
    try {
        for (const auto& [name, content] : all) {
            std::ofstream out(staging / name, std::ios::binary);
            out << content;
            out.close();
            if (!out) fail(ErrorKind::InvalidArgument, "cannot write " + (staging / name).string());
        }
        for (const auto& [name, content] : all) fs::rename(staging / name, fs::path(dir) / name);
    } catch (...) {
        fs::remove_all(staging);
        throw;
    }
    fs::remove_all(staging);
}

}  // namespace potkit
