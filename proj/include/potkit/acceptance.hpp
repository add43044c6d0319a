#pragma once

#include "potkit/report.hpp"

#include <functional>
#include <set>
#include <string>
#include <vector>

namespace potkit {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string summary;     ///< one line of measured values
    Json metrics = Json::object();
    double seconds = 0.0;    ///< wall time; kept out of the artifacts
    double budget = 0.0;     ///< runtime budget in seconds
};

struct AcceptanceOptions {
    std::uint64_t seed = 0;
    int jobs = 1;
    std::set<int> only;      ///< empty means criteria 1..10
};

/// Runs criteria 1..10, adding metrics to out.report["criteria"] and CSV series to `out`.
/// `progress` sees each result as soon as it is known.
std::vector<CriterionResult> runAcceptance(const AcceptanceOptions& options, Artifacts& out,
                                           const std::function<void(const CriterionResult&)>& progress = {});

/// Criterion 11: two runs of the suite with the same seed produce byte-identical artifacts.
CriterionResult determinismCriterion(const Artifacts& first, const Artifacts& second);

/// "PASS  3  title  (summary)" style line.
std::string criterionLine(const CriterionResult& r);

}  // namespace potkit
