#pragma once

#include "potkit/capacity.hpp"
#include "potkit/cones.hpp"
#include "potkit/measures.hpp"
#include "potkit/sets.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace potkit {

using Json = nlohmann::json;

/// Read-only view of a JSON value that remembers its JSON-pointer path for schema errors.
class Node {
public:
    Node(const Json& value, std::string pointer) : v_(&value), ptr_(std::move(pointer)) {}

    const Json& json() const { return *v_; }
    const std::string& pointer() const { return ptr_; }

    bool has(const std::string& key) const;
    Node at(const std::string& key) const;
    Node at(std::size_t index) const;
    std::size_t size() const;  ///< array length

    double number() const;
    double number(const std::string& key, double fallback) const;
    double positive() const;
    int integer() const;
    int integer(const std::string& key, int fallback) const;
    std::uint64_t unsignedInteger() const;
    bool boolean(const std::string& key, bool fallback) const;
    std::string string() const;
    std::string string(const std::string& key, const std::string& fallback) const;
    std::vector<double> numbers() const;
    Point point(std::size_t n) const;

    [[noreturn]] void error(const std::string& message) const;
    /// The single key of a tagged object such as {"ball": {...}}.
    std::string tag(const std::vector<std::string>& allowed) const;

private:
    const Json* v_;
    std::string ptr_;
};

struct Scene {
    Json doc;
    std::size_t n = 3;
    std::optional<std::uint64_t> seed;
    double tol = 0.0;              ///< 0 means each task's default
    int jobs = 1;

    Node root() const { return Node(doc, ""); }
    Node tasks() const { return root().at("tasks"); }

    /// A measure given inline or by name in "measures".
    Measure measure(const Node& spec) const;
    ParametricSet set(const Node& spec) const;
    Region region(const Node& spec) const;
    ConeSpec cone(const Node& spec) const;
    /// Task seed, else scene seed; schema error at the task when neither is given.
    std::uint64_t seedFor(const Node& task) const;
};

/// Parses and validates the scene skeleton (dimension, named objects, task list).
Scene parseScene(const std::string& text, const std::string& origin = "scene");
Scene loadScene(const std::string& path);

}  // namespace potkit
