#include "doctest.h"

#include "potkit/tasks.hpp"

#include <filesystem>
#include <fstream>

using namespace potkit;

namespace {

std::string schemaMessage(const std::string& text)
{
    try {
        const Scene s = parseScene(text);
        Artifacts out;
        runScene(s, "all", "", RunContext{}, out);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Schema) return e.what();
        return std::string("other: ") + e.what();
    }
    return "";
}

const char* kWolff = R"({
  "dimension": 3,
  "measures": {"atom": {"atoms": [{"at": [0, 0, 0], "mass": 2}]}},
  "tasks": [{"type": "wolff", "name": "w", "measure": "atom", "p": 2.5, "r": 1, "x0": [0, 0, 0],
             "path": {"direction": [1, 0, 0], "r0": 0.5, "q": 0.5, "count": 12}}]
})";

}  // namespace

TEST_CASE("schema errors name the offending field")
{
    CHECK(schemaMessage("{").find("invalid JSON") != std::string::npos);
    CHECK(schemaMessage(R"({"tasks": []})").find("/dimension: required field is missing") != std::string::npos);
    CHECK(schemaMessage(R"({"dimension": 1, "tasks": []})").find("/dimension") != std::string::npos);
    CHECK(schemaMessage(R"({"dimension": 3, "tasks": []})").find("/tasks: at least one task") != std::string::npos);
    CHECK(schemaMessage(R"({"dimension": 3, "tasks": [{"type": "wolff"}]})").find("/tasks/0/name") != std::string::npos);

    std::string bad = kWolff;
    bad.replace(bad.find("\"mass\": 2"), 9, "\"mass\": -2");
    CHECK(schemaMessage(bad).find("/measures/atom/atoms/0/mass") != std::string::npos);

    std::string shortPoint = kWolff;
    shortPoint.replace(shortPoint.find("\"x0\": [0, 0, 0]"), 15, "\"x0\": [0, 0]");
    CHECK(schemaMessage(shortPoint).find("/tasks/0/x0: expected 3 coordinates") != std::string::npos);
}

TEST_CASE("numbers serialize with non-finite sentinels")
{
    CHECK(jnum(kInfinity) == "inf");
    CHECK(jnum(-kInfinity) == "-inf");
    CHECK(jnum(std::nan("")) == "nan");
    CHECK(jnum(0.5) == 0.5);
    CHECK(formatNumber(0.1) == "0.1");
    CHECK(formatNumber(kInfinity) == "inf");
}

TEST_CASE("a scene run is deterministic and commits atomically")
{
    const Scene s = parseScene(kWolff);
    Artifacts a, b;
    const RunOutcome ra = runScene(s, "all", "", RunContext{}, a);
    runScene(s, "all", "", RunContext{}, b);
    CHECK(ra.tasks == 1);
    CHECK(ra.failedChecks == 0);
    CHECK(a.report.dump() == b.report.dump());
    CHECK(a.files() == b.files());

    const auto dir = std::filesystem::temp_directory_path() / "potkit-unit-commit";
    std::filesystem::remove_all(dir);
    a.commit(dir.string());
    CHECK(std::filesystem::exists(dir / "report.json"));
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        CHECK(entry.path().filename().string().rfind(".staging", 0) != 0);
    std::ifstream in(dir / "report.json");
    const Json back = Json::parse(in);
    CHECK(back == a.report);
    std::filesystem::remove_all(dir);
}
