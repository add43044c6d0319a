#include "potkit/acceptance.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace potkit;

/// Prints one PASS/FAIL line per acceptance criterion; criterion 11 reruns the suite and compares artifacts.
int main(int argc, char** argv)
{
    CLI::App app{"potkit acceptance criteria 1-11"};
    std::uint64_t seed = 0;
    int jobs = 1;
    std::string out;
    std::vector<int> only;
    app.add_option("--seed", seed, "suite seed")->envname("POTKIT_SEED");
    app.add_option("--jobs", jobs, "worker threads")->envname("POTKIT_JOBS")->check(CLI::PositiveNumber);
    app.add_option("--out", out, "also write the first run's artifacts here")->envname("POTKIT_OUT");
    app.add_option("--only", only, "criteria to run (default all)")->delimiter(',');
    CLI11_PARSE(app, argc, argv);

    AcceptanceOptions opt;
    opt.seed = seed;
    opt.jobs = jobs;
    const bool wantDeterminism = only.empty() || std::find(only.begin(), only.end(), 11) != only.end();
    for (int id : only)
        if (id != 11) opt.only.insert(id);
    if (!only.empty() && opt.only.empty()) opt.only = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};

    bool ok = true;
    double total = 0.0;
    Artifacts first;
    const bool skipFirst = !only.empty() && opt.only.size() == 10 && std::find(only.begin(), only.end(), 11) != only.end() && only.size() == 1;
    runAcceptance(opt, first, [&](const CriterionResult& r) {
        if (!skipFirst) std::cout << criterionLine(r) << "  [" << r.seconds << " s of " << r.budget << " s]" << std::endl;
        ok = ok && r.pass && r.seconds <= r.budget;
        total += r.seconds;
    });
    if (!out.empty()) first.commit(out);
    if (wantDeterminism) {
        Artifacts second;
        runAcceptance(opt, second);
        const CriterionResult det = determinismCriterion(first, second);
        std::cout << criterionLine(det) << std::endl;
        ok = ok && det.pass;
    }
    std::cout << "suite time " << total << " s" << std::endl;
    return ok ? 0 : 1;
}
