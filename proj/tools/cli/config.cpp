#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace vortex3::cli {

using nlohmann::json;

std::string to_string(Formulation f)
{
    switch (f) {
    case Formulation::Cartesian: return "cartesian";
    case Formulation::Shape: return "shape";
    case Formulation::Regularized: return "regularized";
    case Formulation::All: return "all";
    }
    return "?";
}

std::size_t Range::count() const
{
    if (to < from) {
        return 0;
    }
    return static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
}

namespace {

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

double parse_decimal(const std::string& text, const std::string& field)
{
    std::string s = text;
    if (!s.empty() && s.front() == '+') {
        s.erase(0, 1);
    }
    double value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ConfigError("config: field '" + field + "': cannot parse '" + text + "' as a number");
    }
    return value;
}

const json& require(const json& obj, const char* key, const std::string& field)
{
    if (!obj.is_object() || !obj.contains(key)) {
        throw ConfigError("config: missing field '" + field + "'");
    }
    return obj.at(key);
}

Range parse_range(const json& j, const std::string& field)
{
    if (!j.is_object()) {
        throw ConfigError("config: field '" + field + "': expected an object {from, to, step}");
    }
    Range r;
    r.from = parse_number(require(j, "from", field + ".from"), field + ".from");
    r.to = parse_number(require(j, "to", field + ".to"), field + ".to");
    r.step = parse_number(require(j, "step", field + ".step"), field + ".step");
    if (!(r.step > 0)) {
        throw ConfigError("config: field '" + field + ".step': must be positive");
    }
    return r;
}

Orientation parse_orientation(const json& j, const std::string& field)
{
    const double v = parse_number(j, field);
    if (v == 1) {
        return Orientation::Positive;
    }
    if (v == -1) {
        return Orientation::Negative;
    }
    if (v == 0) {
        return Orientation::Collinear;
    }
    throw ConfigError("config: field '" + field + "': orientation must be -1, 0 or 1");
}

InitialCondition parse_initial_condition(const json& j)
{
    const std::string base = "initial_condition";
    if (!j.is_object() || j.size() != 1) {
        throw ConfigError("config: field '" + base +
                          "': expected exactly one of 'cartesian', 'shape' or 'regularized'");
    }
    if (j.contains("cartesian")) {
        const json& pts = j.at("cartesian");
        if (!pts.is_array() || pts.size() != 3) {
            throw ConfigError("config: field '" + base + ".cartesian': expected three [x, y] pairs");
        }
        CartesianState s;
        for (std::size_t a = 0; a < 3; ++a) {
            const std::string f = base + ".cartesian[" + std::to_string(a) + "]";
            if (!pts[a].is_array() || pts[a].size() != 2) {
                throw ConfigError("config: field '" + f + "': expected [x, y]");
            }
            s.positions.emplace_back(parse_number(pts[a][0], f + "[0]"), parse_number(pts[a][1], f + "[1]"));
        }
        return s;
    }
    if (j.contains("shape")) {
        const std::string f = base + ".shape";
        const json& sj = j.at("shape");
        const json& bj = require(sj, "b", f + ".b");
        if (!bj.is_array() || bj.size() != 3) {
            throw ConfigError("config: field '" + f + ".b': expected three squared distances");
        }
        ShapeState s;
        for (std::size_t i = 0; i < 3; ++i) {
            s.b[i] = parse_number(bj[i], f + ".b[" + std::to_string(i) + "]");
            if (!(s.b[i] > 0)) {
                throw ConfigError("config: field '" + f + ".b[" + std::to_string(i) + "]': must be positive");
            }
        }
        s.eps = parse_orientation(require(sj, "eps", f + ".eps"), f + ".eps");
        return s;
    }
    if (j.contains("regularized")) {
        const std::string f = base + ".regularized";
        const json& rj = j.at("regularized");
        RegularizedState r;
        r.alpha = parse_number(require(rj, "alpha", f + ".alpha"), f + ".alpha");
        r.lambda = parse_number(require(rj, "lambda", f + ".lambda"), f + ".lambda");
        r.theta = parse_number(require(rj, "theta", f + ".theta"), f + ".theta");
        return r;
    }
    throw ConfigError("config: field '" + base + "': expected one of 'cartesian', 'shape' or 'regularized'");
}

} // namespace

double parse_number_text(std::string_view text, const std::string& field)
{
    std::string s = trim(text);
    // Accept the typographic minus sign U+2212.
    for (std::size_t pos; (pos = s.find("\xE2\x88\x92")) != std::string::npos;) {
        s.replace(pos, 3, "-");
    }
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
        return parse_decimal(s, field);
    }
    const double num = parse_decimal(trim(s.substr(0, slash)), field);
    const double den = parse_decimal(trim(s.substr(slash + 1)), field);
    if (den == 0) {
        throw ConfigError("config: field '" + field + "': zero denominator in '" + std::string(text) + "'");
    }
    return num / den;
}

double parse_number(const json& value, const std::string& field)
{
    if (value.is_number()) {
        return value.get<double>();
    }
    if (value.is_string()) {
        return parse_number_text(value.get<std::string>(), field);
    }
    throw ConfigError("config: field '" + field + "': expected a number or a numeric string");
}

Config parse_config(const json& doc)
{
    if (!doc.is_object()) {
        throw ConfigError("config: top level must be a JSON object");
    }
    Config cfg;
    if (doc.contains("vorticities")) {
        const json& gj = doc.at("vorticities");
        if (!gj.is_array() || gj.size() != 3) {
            throw ConfigError("config: field 'vorticities': expected three circulations");
        }
        std::array<double, 3> g{};
        for (std::size_t i = 0; i < 3; ++i) {
            g[i] = parse_number(gj[i], "vorticities[" + std::to_string(i) + "]");
            if (g[i] == 0 || !std::isfinite(g[i])) {
                throw ConfigError("config: field 'vorticities[" + std::to_string(i) + "]': must be finite and nonzero");
            }
        }
        cfg.vorticities = Vorticities(g);
    }
    if (doc.contains("initial_condition")) {
        cfg.initial_condition = parse_initial_condition(doc.at("initial_condition"));
    }
    if (doc.contains("formulation")) {
        const json& fj = doc.at("formulation");
        const std::string name = fj.is_string() ? fj.get<std::string>() : "";
        if (name == "cartesian") {
            cfg.formulation = Formulation::Cartesian;
        } else if (name == "shape") {
            cfg.formulation = Formulation::Shape;
        } else if (name == "regularized") {
            cfg.formulation = Formulation::Regularized;
        } else if (name == "all") {
            cfg.formulation = Formulation::All;
        } else {
            throw ConfigError("config: field 'formulation': expected cartesian, shape, regularized or all");
        }
    }
    if (doc.contains("integrator")) {
        const json& ij = doc.at("integrator");
        if (!ij.is_object()) {
            throw ConfigError("config: field 'integrator': expected an object");
        }
        auto read = [&](const char* key, double& target) {
            if (ij.contains(key)) {
                target = parse_number(ij.at(key), std::string("integrator.") + key);
            }
        };
        read("rel_tol", cfg.integrator.rel_tol);
        read("abs_tol", cfg.integrator.abs_tol);
        read("horizon", cfg.integrator.horizon);
        read("max_step", cfg.integrator.max_step);
        read("halt_min_distance", cfg.integrator.halt_min_distance);
        if (ij.contains("samples")) {
            const double n = parse_number(ij.at("samples"), "integrator.samples");
            if (!(n >= 1) || n != std::floor(n)) {
                throw ConfigError("config: field 'integrator.samples': must be a positive integer");
            }
            cfg.samples = static_cast<std::size_t>(n);
        }
        try {
            cfg.integrator.validate();
        } catch (const Error& e) {
            throw ConfigError(std::string("config: field 'integrator': ") + e.what());
        }
    }
    if (doc.contains("sweep")) {
        const json& sj = doc.at("sweep");
        SweepConfig sweep;
        const std::string grid = sj.contains("grid") && sj.at("grid").is_string() ? sj.at("grid").get<std::string>() : "mn";
        if (grid == "mn") {
            sweep.grid = SweepConfig::Grid::MN;
            sweep.first = parse_range(require(sj, "m", "sweep.m"), "sweep.m");
            sweep.second = parse_range(require(sj, "n", "sweep.n"), "sweep.n");
        } else if (grid == "vorticities") {
            sweep.grid = SweepConfig::Grid::Vorticities;
            sweep.first = parse_range(require(sj, "g1", "sweep.g1"), "sweep.g1");
            sweep.second = parse_range(require(sj, "g2", "sweep.g2"), "sweep.g2");
            sweep.g3 = parse_number(require(sj, "g3", "sweep.g3"), "sweep.g3");
            if (sweep.g3 == 0) {
                throw ConfigError("config: field 'sweep.g3': must be nonzero");
            }
        } else {
            throw ConfigError("config: field 'sweep.grid': expected 'mn' or 'vorticities'");
        }
        cfg.sweep = sweep;
    }
    return cfg;
}

Config load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config: cannot open '" + path.string() + "'");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config: '" + path.string() + "': " + e.what());
    }
    return parse_config(doc);
}

} // namespace vortex3::cli
