#pragma once

#include "potkit/report.hpp"

#include <optional>
#include <string>

namespace potkit {

/// Flags shared by every task; command-line values override the scene.
struct RunContext {
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    int jobs = 1;
};

struct RunOutcome {
    std::size_t tasks = 0;
    std::size_t failedChecks = 0;
};

/// Runs every task of the given type ("all" runs all); `verb` narrows cones tasks.
/// Results go into `out.report["tasks"][name]` and per-task CSV files.
RunOutcome runScene(const Scene& scene, const std::string& type, const std::string& verb, const RunContext& ctx,
                    Artifacts& out);

}  // namespace potkit
