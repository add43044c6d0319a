#include "potkit/acceptance.hpp"
#include "potkit/tasks.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace potkit;

namespace {

struct Flags {
    std::string scene;
    std::string out = "potkit-out";
    std::uint64_t seed = 0;
    double tol = 0.0;
    int jobs = 1;
    std::vector<int> only;
};

int runTasks(const Flags& f, CLI::App& app, const std::string& type, const std::string& verb)
{
    if (f.scene.empty()) throw CLI::RequiredError("--scene");
    const Scene scene = loadScene(f.scene);
    RunContext ctx;
    if (app.count("--seed")) ctx.seed = f.seed;
    if (app.count("--tol")) ctx.tol = f.tol;
    ctx.jobs = std::max(1, f.jobs);
    Artifacts art;
    art.report["command"] = verb.empty() ? type : type + " " + verb;
    const RunOutcome res = runScene(scene, type, verb, ctx, art);
    art.report["failedChecks"] = res.failedChecks;
    art.commit(f.out);
    for (const auto& [name, t] : art.report["tasks"].items())
        std::cout << (t["pass"].get<bool>() ? "ok    " : "check ") << name << "\n";
    return res.failedChecks == 0 ? 0 : 2;
}

int verifyAll(const Flags& f)
{
    AcceptanceOptions opt;
    opt.seed = f.seed;
    opt.jobs = std::max(1, f.jobs);
    opt.only.insert(f.only.begin(), f.only.end());
    Artifacts art;
    bool ok = true;
    runAcceptance(opt, art, [&](const CriterionResult& r) {
        std::cout << criterionLine(r) << std::endl;
        ok = ok && r.pass;
    });
    art.commit(f.out);
    return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"potkit: potentials, capacities and thinness diagnostics"};
    app.require_subcommand(1);
    app.fallthrough();
    Flags f;
    app.add_option("--scene", f.scene, "scene JSON file")->envname("POTKIT_SCENE");
    app.add_option("--out", f.out, "output directory")->envname("POTKIT_OUT");
    app.add_option("--seed", f.seed, "seed for randomized tasks")->envname("POTKIT_SEED");
    app.add_option("--tol", f.tol, "tolerance override for checks")->envname("POTKIT_TOL")->check(CLI::PositiveNumber);
    app.add_option("--jobs", f.jobs, "worker threads")->envname("POTKIT_JOBS")->check(CLI::PositiveNumber);

    std::string chosen, verb;
    for (const char* name : {"riesz", "capacity", "thin", "wolff", "plaplace", "density"})
        app.add_subcommand(name, std::string("run the scene's ") + name + " tasks")->callback([&chosen, name] { chosen = name; });
    auto* cones = app.add_subcommand("cones", "cone membership, inclusion and p index");
    cones->require_subcommand(1);
    for (const char* v : {"member", "include", "pgamma"})
        cones->add_subcommand(v, std::string("run the scene's cones ") + v + " tasks")->callback([&chosen, &verb, v] {
            chosen = "cones";
            verb = v;
        });
    auto* all = app.add_subcommand("verify-all", "run the acceptance suite");
    all->add_option("--only", f.only, "criteria to run (default 1..10)")->delimiter(',');
    all->callback([&chosen] { chosen = "verify-all"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    try {
        if (chosen == "verify-all") return verifyAll(f);
        return runTasks(f, app, chosen, verb);
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
