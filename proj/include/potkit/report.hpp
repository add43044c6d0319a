#pragma once

#include "potkit/scene.hpp"

#include <map>
#include <string>
#include <vector>

namespace potkit {

/// Number as JSON; non-finite values become the strings "inf", "-inf" and "nan".
Json jnum(double x);
Json jvec(const std::vector<double>& v);
/// Shortest round-trip decimal form; the same strings as jnum for non-finite values.
std::string formatNumber(double x);

/// Report plus CSV series, staged in memory and committed all at once.
class Artifacts {
public:
    Json report = Json::object();

    void csv(const std::string& name, const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);
    void text(const std::string& name, std::string content) { files_[name] = std::move(content); }
    const std::map<std::string, std::string>& files() const { return files_; }

    /// Writes every file into a staging directory under `dir`, then renames them into place.
    void commit(const std::string& dir) const;

private:
    std::map<std::string, std::string> files_;
};

}  // namespace potkit
