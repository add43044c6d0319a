#include "potkit/scene.hpp"

#include "potkit/density.hpp"
#include "potkit/thinness.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace potkit {

namespace {

std::string escapeToken(const std::string& key)
{
    std::string out;
    for (char c : key) {
        if (c == '~') out += "~0";
        else if (c == '/') out += "~1";
        else out += c;
    }
    return out;
}

}  // namespace

void Node::error(const std::string& message) const { fail(ErrorKind::Schema, (ptr_.empty() ? "/" : ptr_) + ": " + message); }

bool Node::has(const std::string& key) const { return v_->is_object() && v_->contains(key); }

Node Node::at(const std::string& key) const
{
    if (!v_->is_object()) error("expected an object");
    auto it = v_->find(key);
    if (it == v_->end()) Node(*v_, ptr_ + "/" + escapeToken(key)).error("required field is missing");
    return Node(*it, ptr_ + "/" + escapeToken(key));
}

Node Node::at(std::size_t index) const
{
    if (!v_->is_array()) error("expected an array");
    if (index >= v_->size()) error("index " + std::to_string(index) + " out of range");
    return Node((*v_)[index], ptr_ + "/" + std::to_string(index));
}

std::size_t Node::size() const
{
    if (!v_->is_array()) error("expected an array");
    return v_->size();
}

double Node::number() const
{
    if (v_->is_string()) {
        const std::string s = v_->get<std::string>();
        if (s == "inf") return kInfinity;
        error("expected a number");
    }
    if (!v_->is_number()) error("expected a number");
    const double x = v_->get<double>();
    if (!std::isfinite(x)) error("expected a finite number");
    return x;
}

double Node::number(const std::string& key, double fallback) const { return has(key) ? at(key).number() : fallback; }

double Node::positive() const
{
    const double x = number();
    if (!(x > 0.0)) error("expected a positive number");
    return x;
}

int Node::integer() const
{
    if (!v_->is_number_integer()) error("expected an integer");
    return v_->get<int>();
}

int Node::integer(const std::string& key, int fallback) const { return has(key) ? at(key).integer() : fallback; }

std::uint64_t Node::unsignedInteger() const
{
    if (!v_->is_number_unsigned() && !(v_->is_number_integer() && v_->get<std::int64_t>() >= 0))
        error("expected a nonnegative integer");
    return v_->get<std::uint64_t>();
}

bool Node::boolean(const std::string& key, bool fallback) const
{
    if (!has(key)) return fallback;
    const Node b = at(key);
    if (!b.json().is_boolean()) b.error("expected true or false");
    return b.json().get<bool>();
}

std::string Node::string() const
{
    if (!v_->is_string()) error("expected a string");
    return v_->get<std::string>();
}

std::string Node::string(const std::string& key, const std::string& fallback) const { return has(key) ? at(key).string() : fallback; }

std::vector<double> Node::numbers() const
{
    std::vector<double> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).number());
    return out;
}

Point Node::point(std::size_t n) const
{
    const auto v = numbers();
    if (v.size() != n) error("expected " + std::to_string(n) + " coordinates, got " + std::to_string(v.size()));
    return Point(v);
}

std::string Node::tag(const std::vector<std::string>& allowed) const
{
    if (!v_->is_object() || v_->size() != 1) error("expected an object with exactly one key");
    const std::string key = v_->begin().key();
    for (const auto& a : allowed)
        if (a == key) return key;
    std::string list;
    for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
    Node(*v_, ptr_ + "/" + escapeToken(key)).error("unknown kind '" + key + "' (expected one of " + list + ")");
}

Measure Scene::measure(const Node& spec) const
{
    if (spec.json().is_string()) {
        const std::string name = spec.string();
        const Node all = root().has("measures") ? root().at("measures") : spec;
        if (!root().has("measures") || !all.has(name)) spec.error("unknown measure '" + name + "'");
        return measure(all.at(name));
    }
    const std::string kind = spec.tag({"atoms", "radial", "grid", "uniformBall", "sum"});
    const Node b = spec.at(kind);
    if (kind == "atoms") {
        std::vector<Atom> atoms;
        for (std::size_t i = 0; i < b.size(); ++i) {
            const Node a = b.at(i);
            const double m = a.at("mass").number();
            if (m < 0.0) a.at("mass").error("masses must be nonnegative");
            atoms.push_back(Atom{a.at("at").point(n), m});
        }
        return Measure(AtomicMeasure(std::move(atoms)));
    }
    if (kind == "radial") {
        const Point c = b.at("center").point(n);
        const std::string form = b.string("form", "power");
        try {
            if (form == "power") return Measure(RadialProfileMeasure(c, RadialProfile::power(b.at("c").number(), b.at("m").number(), b.at("radius").positive())));
            if (form == "atom+power")
                return Measure(RadialProfileMeasure(c, RadialProfile::atomPlusPower(b.at("atom").number(), b.at("c").number(), b.at("m").number(), b.at("radius").positive())));
            if (form == "table") {
                std::vector<std::pair<double, double>> steps;
                const Node s = b.at("steps");
                for (std::size_t i = 0; i < s.size(); ++i) {
                    const auto tv = s.at(i).numbers();
                    if (tv.size() != 2) s.at(i).error("expected [t, value]");
                    steps.emplace_back(tv[0], tv[1]);
                }
                return Measure(RadialProfileMeasure(c, RadialProfile::table(std::move(steps))));
            }
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::Schema) throw;
            b.error(e.what());
        }
        b.at("form").error("form must be power, atom+power or table");
    }
    if (kind == "grid") {
        EvaluationGrid g(Box(b.at("lo").point(n), b.at("hi").point(n)), b.at("h").positive());
        std::vector<double> rho;
        const Node d = b.at("density");
        if (d.json().is_array()) {
            rho = d.numbers();
            if (rho.size() != g.cellCount()) d.error("expected " + std::to_string(g.cellCount()) + " cell densities");
        } else {
            rho.assign(g.cellCount(), d.number());
        }
        for (double x : rho)
            if (x < 0.0) d.error("densities must be nonnegative");
        return Measure(GridMeasure(std::move(g), std::move(rho)));
    }
    if (kind == "uniformBall") {
        return Measure(uniformBallGrid(b.at("center").point(n), b.at("radius").positive(), b.number("density", 1.0), b.at("h").positive(),
                                       b.at("halfWidth").positive()));
    }
    std::vector<Measure> parts;
    for (std::size_t i = 0; i < b.size(); ++i) parts.push_back(measure(b.at(i)));
    return Measure::sum(parts);
}

ParametricSet Scene::set(const Node& spec) const
{
    if (spec.json().is_string()) {
        const std::string name = spec.string();
        if (!root().has("sets") || !root().at("sets").has(name)) spec.error("unknown set '" + name + "'");
        return set(root().at("sets").at(name));
    }
    const std::string kind = spec.tag({"ball", "sphere", "box", "segment", "points", "cusp", "cantor", "ballFamily", "union"});
    const Node b = spec.at(kind);
    if (kind == "ball") return ParametricSet::ball(b.at("center").point(n), b.at("radius").positive());
    if (kind == "sphere") return ParametricSet::sphere(b.at("center").point(n), b.at("radius").positive());
    if (kind == "box") return ParametricSet::box(Box(b.at("lo").point(n), b.at("hi").point(n)));
    if (kind == "segment") return ParametricSet::segment(b.at("a").point(n), b.at("b").point(n));
    if (kind == "points") {
        std::vector<Point> pts;
        for (std::size_t i = 0; i < b.size(); ++i) pts.push_back(b.at(i).point(n));
        return ParametricSet::points(pts);
    }
    if (kind == "cusp")
        return ParametricSet::cusp(b.at("apex").point(n), b.at("axis").point(n), b.at("length").positive(), b.at("exponent").positive(),
                                   b.at("width").positive());
    if (kind == "cantor") {
        const int axis = b.integer("axis", 0);
        if (axis < 0 || static_cast<std::size_t>(axis) >= n) b.at("axis").error("axis out of range");
        return cantorSet(b.at("origin").point(n), static_cast<std::size_t>(axis), b.number("length", 1.0), b.integer("depth", 10));
    }
    if (kind == "ballFamily") {
        const int first = b.integer("first", 2), last = b.at("last").integer();
        if (first < 1 || last < first) b.error("need 1 <= first <= last");
        return ballFamily(b.at("x0").point(n), b.at("s").positive(), first, last);
    }
    ParametricSet E(n);
    for (std::size_t i = 0; i < b.size(); ++i) E = E.united(set(b.at(i)));
    return E;
}

Region Scene::region(const Node& spec) const
{
    const std::string kind = spec.tag({"box", "ball", "shell"});
    const Node b = spec.at(kind);
    if (kind == "box") return Region::fromBox(Box(b.at("lo").point(n), b.at("hi").point(n)));
    if (kind == "ball") return Region::ball(b.at("center").point(n), b.at("radius").positive());
    const double inner = b.at("inner").number(), outer = b.at("outer").positive();
    if (inner < 0.0 || inner >= outer) b.error("need 0 <= inner < outer");
    return Region::shell(b.at("center").point(n), inner, outer);
}

ConeSpec Scene::cone(const Node& spec) const
{
    const std::string kind = spec.tag({"A", "R", "Gamma"});
    const Node v = spec.at(kind);
    if (kind == "A") return ConeSpec::A(v.number());
    return kind == "R" ? ConeSpec::R(v.integer()) : ConeSpec::Gamma(v.integer());
}

std::uint64_t Scene::seedFor(const Node& task) const
{
    if (task.has("seed")) return task.at("seed").unsignedInteger();
    if (seed) return *seed;
    task.error("this task is randomized and needs a seed (task, scene or --seed)");
}

Scene parseScene(const std::string& text, const std::string& origin)
{
    Scene s;
    try {
        s.doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        fail(ErrorKind::Schema, origin + ": invalid JSON: " + e.what());
    }
    const Node root = s.root();
    if (!s.doc.is_object()) root.error("a scene is a JSON object");
    const int n = root.at("dimension").integer();
    if (n < 2 || n > 8) root.at("dimension").error("dimension must lie in 2..8");
    s.n = static_cast<std::size_t>(n);
    if (root.has("seed")) s.seed = root.at("seed").unsignedInteger();
    s.tol = root.number("tol", 0.0);
    s.jobs = root.integer("jobs", 1);
    for (const char* key : {"measures", "sets"})
        if (root.has(key) && !root.at(key).json().is_object()) root.at(key).error("expected an object of named entries");
    const Node tasks = root.at("tasks");
    if (tasks.size() == 0) tasks.error("at least one task is required");
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const Node t = tasks.at(i);
        t.at("type").string();
        t.at("name").string();
    }
    return s;
}

Scene loadScene(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Schema, path + ": cannot open scene file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parseScene(ss.str(), path);
}

}  // namespace potkit
