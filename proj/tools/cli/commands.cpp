#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>
#include <utility>

namespace vortex3::cli {

using nlohmann::json;
namespace fs = std::filesystem;

std::string format_double(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

json extended(double v)
{
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    if (std::isnan(v)) {
        return nullptr;
    }
    return v;
}

json shape_json(const ShapeState& s) { return {{"b", {s.b[0], s.b[1], s.b[2]}}, {"eps", sign_of(s.eps)}}; }

json classification_json(const OrbitClassification& c)
{
    json j{{"kind", c.mixed_signs ? to_string(c.kind) : "NoMixedSigns"},
           {"stratum", to_string(c.kind)},
           {"non_collision", c.non_collision},
           {"M", c.M},
           {"relabel_shift", c.shift}};
    j["direction"] = c.direction ? json(to_string(*c.direction)) : json(nullptr);
    return j;
}

// Trailing alpha, lambda, theta columns; theta is nan on equilateral shapes.
std::string chart_columns(const ShapeState& s)
{
    double theta = std::numeric_limits<double>::quiet_NaN();
    try {
        theta = to_regularized(s).theta;
    } catch (const EquilateralError&) {
    }
    return format_double(normalized_area(s)) + "," + format_double(s.lambda()) + "," + format_double(theta);
}

std::string invariant_columns(const Vorticities& g, const std::array<double, 3>& b)
{
    return format_double(energy_of_shape(g, b)) + "," + format_double(moment_of_shape(g, b));
}

struct RunOutcome {
    std::string name;
    bool ran = false;
    std::string skipped_reason;
    HaltReason halt = HaltReason::HorizonReached;
    double t_final = 0;
    std::size_t samples = 0;
    StepStats stats;
    InvariantDrift drift;
    double min_side_ratio = 0;
    std::map<double, std::array<double, 3>> b_by_time;
    std::string csv;

    explicit RunOutcome(std::string n, std::string skipped = {}) : name(std::move(n)), skipped_reason(std::move(skipped)) {}
};

template <class State>
void fill_common(RunOutcome& out, const Trajectory<State>& traj)
{
    out.ran = true;
    out.halt = traj.halt_reason;
    out.t_final = traj.final_time();
    out.samples = traj.samples.size();
    out.stats = traj.stats;
    out.drift = traj.drift;
    out.min_side_ratio = traj.min_side_ratio;
}

RunOutcome run_cartesian(const Vorticities& g, const CartesianState& z0, const IntegratorConfig& icfg)
{
    RunOutcome out("cartesian");
    const auto traj = integrate_cartesian(g, z0, icfg);
    fill_common(out, traj);
    std::ostringstream csv;
    csv << "t,x1,y1,x2,y2,x3,y3,H,M,alpha,lambda,theta\n";
    for (const auto& [t, state] : traj.samples) {
        const ShapeState s = shape_of(state);
        out.b_by_time[t] = s.b;
        csv << format_double(t);
        for (const Point& z : state.positions) {
            csv << ',' << format_double(z.real()) << ',' << format_double(z.imag());
        }
        csv << ',' << invariant_columns(g, s.b) << ',' << chart_columns(s) << '\n';
    }
    out.csv = csv.str();
    return out;
}

RunOutcome run_shape(const Vorticities& g, const ShapeState& s0, const IntegratorConfig& icfg)
{
    RunOutcome out("shape");
    const auto traj = integrate_shape(g, s0, icfg);
    fill_common(out, traj);
    std::ostringstream csv;
    csv << "t,b1,b2,b3,eps,H,M,alpha,lambda,theta\n";
    for (const auto& [t, s] : traj.samples) {
        out.b_by_time[t] = s.b;
        csv << format_double(t) << ',' << format_double(s.b[0]) << ',' << format_double(s.b[1]) << ','
            << format_double(s.b[2]) << ',' << sign_of(s.eps) << ',' << invariant_columns(g, s.b) << ','
            << chart_columns(s) << '\n';
    }
    out.csv = csv.str();
    return out;
}

RunOutcome run_regularized(const Vorticities& g, const RegularizedState& r0, const IntegratorConfig& icfg)
{
    RunOutcome out("regularized");
    const auto traj = integrate_regularized(g, r0, icfg);
    fill_common(out, traj);
    std::ostringstream csv;
    csv << "t,b1,b2,b3,eps,H,M,alpha,lambda,theta\n";
    for (const auto& [t, r] : traj.samples) {
        const auto b = shape_triple(r);
        out.b_by_time[t] = b;
        csv << format_double(t) << ',' << format_double(b[0]) << ',' << format_double(b[1]) << ','
            << format_double(b[2]) << ',' << sign_of(orientation_from(r.alpha)) << ',' << invariant_columns(g, b)
            << ',' << format_double(r.alpha) << ',' << format_double(r.lambda) << ',' << format_double(r.theta)
            << '\n';
    }
    out.csv = csv.str();
    return out;
}

json deviation_json(const RunOutcome& a, const RunOutcome& b)
{
    double worst = 0;
    std::size_t compared = 0;
    for (const auto& [t, ba] : a.b_by_time) {
        const auto it = b.b_by_time.find(t);
        if (it == b.b_by_time.end()) {
            continue;
        }
        ++compared;
        for (std::size_t i = 0; i < 3; ++i) {
            worst = std::max(worst, std::abs(ba[i] - it->second[i]));
        }
    }
    return {{"max_abs_b_deviation", worst}, {"compared_samples", compared}};
}

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write '" + path.string() + "'");
    }
    out << text;
}

} // namespace

int cmd_simulate(const Config& cfg, const fs::path& out_dir, std::ostream& log)
{
    if (!cfg.vorticities) {
        throw ConfigError("config: missing field 'vorticities'");
    }
    if (!cfg.initial_condition) {
        throw ConfigError("config: missing field 'initial_condition'");
    }
    const Vorticities g = *cfg.vorticities;

    // Consistent initial data for every formulation.
    CartesianState z0;
    ShapeState s0;
    std::optional<RegularizedState> r0;
    std::string chart_problem;
    try {
        if (const auto* z = std::get_if<CartesianState>(&*cfg.initial_condition)) {
            z0 = *z;
            s0 = shape_of(z0);
        } else if (const auto* s = std::get_if<ShapeState>(&*cfg.initial_condition)) {
            if (admissibility(s->b) == Admissibility::Outside) {
                throw ConfigError("config: field 'initial_condition.shape.b': outside the admissible cone");
            }
            s0 = *s;
            z0 = recentered(g.span(), realize(s0));
        } else {
            const auto& r = std::get<RegularizedState>(*cfg.initial_condition);
            s0 = from_regularized(r);
            r0 = r;
            z0 = recentered(g.span(), realize(s0));
        }
    } catch (const Error& e) {
        throw ConfigError(std::string("config: field 'initial_condition': ") + e.what());
    }
    if (!r0) {
        try {
            r0 = to_regularized(s0);
        } catch (const EquilateralError& e) {
            chart_problem = e.what();
        }
    }

    IntegratorConfig icfg = cfg.integrator;
    icfg.record_steps = false;
    icfg.output_times.clear();
    for (std::size_t k = 1; k <= cfg.samples; ++k) {
        icfg.output_times.push_back(icfg.horizon * static_cast<double>(k) / static_cast<double>(cfg.samples));
    }

    const bool all = cfg.formulation == Formulation::All;
    const bool want_cartesian = all || cfg.formulation == Formulation::Cartesian;
    const bool want_shape = all || cfg.formulation == Formulation::Shape;
    const bool want_regularized = all || cfg.formulation == Formulation::Regularized;

    std::vector<std::future<RunOutcome>> jobs;
    std::vector<RunOutcome> skipped;
    if (want_cartesian) {
        jobs.push_back(std::async(std::launch::async, [&] { return run_cartesian(g, z0, icfg); }));
    }
    if (want_shape) {
        const bool interior = s0.eps != Orientation::Collinear && admissibility(s0.b) == Admissibility::Interior;
        if (interior) {
            jobs.push_back(std::async(std::launch::async, [&] { return run_shape(g, s0, icfg); }));
        } else {
            skipped.emplace_back("shape", "initial shape is collinear; shape coordinates are singular there");
        }
    }
    if (want_regularized) {
        if (r0) {
            jobs.push_back(std::async(std::launch::async, [&] { return run_regularized(g, *r0, icfg); }));
        } else {
            skipped.emplace_back("regularized", "initial shape is outside the regularized chart: " + chart_problem);
        }
    }

    std::vector<RunOutcome> runs;
    bool failed = false;
    for (auto& job : jobs) {
        try {
            runs.push_back(job.get());
        } catch (const Error& e) {
            log << "error: " << e.what() << '\n';
            failed = true;
        }
    }

    fs::create_directories(out_dir);
    json summary;
    summary["vorticities"] = {g[0], g[1], g[2]};
    summary["formulation"] = to_string(cfg.formulation);
    summary["initial_shape"] = shape_json(s0);
    summary["classification"] = classification_json(classify(g, s0));
    json& runs_json = summary["runs"];
    runs_json = json::object();
    for (const auto& run : runs) {
        write_text(out_dir / ("trajectory_" + run.name + ".csv"), run.csv);
        runs_json[run.name] = {
            {"halt_reason", to_string(run.halt)},
            {"t_final", run.t_final},
            {"samples", run.samples},
            {"steps_accepted", run.stats.accepted},
            {"steps_rejected", run.stats.rejected},
            {"drift", {{"H", run.drift.H}, {"M", run.drift.M}, {"Z", run.drift.Z}}},
            {"min_side_ratio", run.min_side_ratio},
        };
        if (run.halt == HaltReason::StepFailure || run.halt == HaltReason::BinaryCollisionApproach) {
            failed = true;
        }
    }
    for (const auto& run : skipped) {
        runs_json[run.name] = {{"skipped", run.skipped_reason}};
        if (!all) {
            log << "error: " << run.name << ": " << run.skipped_reason << '\n';
            failed = true;
        }
    }
    if (all && runs.size() > 1) {
        json& dev = summary["cross_deviation"];
        for (std::size_t i = 0; i < runs.size(); ++i) {
            for (std::size_t k = i + 1; k < runs.size(); ++k) {
                dev[runs[i].name + "_vs_" + runs[k].name] = deviation_json(runs[i], runs[k]);
            }
        }
    }
    summary["status"] = failed ? "failed" : "ok";
    write_text(out_dir / "summary.json", summary.dump(2) + "\n");
    log << "wrote " << runs.size() << " trajectories to " << out_dir.string() << '\n';
    return failed ? exit_runtime_error : exit_ok;
}

json classify_report(const Config& cfg)
{
    if (!cfg.vorticities) {
        throw ConfigError("config: missing field 'vorticities'");
    }
    const Vorticities g = *cfg.vorticities;
    json report;
    report["vorticities"] = {g[0], g[1], g[2]};
    report["Gamma"] = g.total();
    report["V"] = g.virial();

    const auto manifold = equilibrium_manifold(g);
    if (!g.mixed_signs()) {
        report["kind"] = "NoMixedSigns";
        report["m"] = g.m();
        report["n"] = g.n();
        report["beta"] = g.beta();
        report["gamma"] = g.gamma();
    } else {
        const auto [cg, shift] = canonicalize(g);
        const TRegion region = t_region(cg);
        report["canonical"] = {{"vorticities", {cg[0], cg[1], cg[2]}}, {"shift", shift}};
        report["m"] = cg.m();
        report["n"] = cg.n();
        report["beta"] = cg.beta();
        report["gamma"] = cg.gamma();
        report["t_region"] = {{"exists", region.exists}, {"degenerate", region.degenerate}};
        report["p"] = region.exists ? json{extended(region.p_lo), extended(region.p_hi)} : json::array();
        report["kind"] = to_string(stratum_of(cg));
    }
    json eq{{"equilateral_ray", manifold.equilateral_ray},
            {"equilateral_in_region", manifold.equilateral_in_region},
            {"equilibrium_line", manifold.equilibrium_line}};
    eq["collinear_rays"] = json::array();
    for (double p : manifold.collinear_rays) {
        eq["collinear_rays"].push_back(extended(p));
    }
    eq["line_slope"] = manifold.line_slope ? json(*manifold.line_slope) : json(nullptr);
    report["equilibrium_manifold"] = eq;

    if (cfg.initial_condition) {
        ShapeState s;
        try {
            if (const auto* z = std::get_if<CartesianState>(&*cfg.initial_condition)) {
                s = shape_of(*z);
            } else if (const auto* sp = std::get_if<ShapeState>(&*cfg.initial_condition)) {
                s = *sp;
            } else {
                s = from_regularized(std::get<RegularizedState>(*cfg.initial_condition));
            }
            if (admissibility(s.b) == Admissibility::Outside) {
                throw DomainError("shape outside the admissible cone");
            }
        } catch (const Error& e) {
            throw ConfigError(std::string("config: field 'initial_condition': ") + e.what());
        }
        json state = classification_json(classify(g, s));
        state["shape"] = shape_json(s);
        const auto eqc = is_equilibrium(g, s);
        state["equilibrium"] = {{"is_equilibrium", eqc.equilibrium}, {"reason", to_string(eqc.reason)}};
        report["state"] = state;
    }
    return report;
}

int cmd_classify(const Config& cfg, const fs::path* out, std::ostream& os)
{
    const std::string text = classify_report(cfg).dump(2) + "\n";
    os << text;
    if (out) {
        fs::create_directories(*out);
        write_text(*out / "classify.json", text);
    }
    return exit_ok;
}

namespace {

std::string region_fields(const Vorticities& canonical)
{
    const TRegion region = t_region(canonical);
    return format_double(canonical.beta()) + "," + format_double(canonical.gamma()) + "," +
           (region.exists ? "1" : "0") + "," + (region.degenerate ? "1" : "0") + "," + format_double(region.p_lo) +
           "," + format_double(region.p_hi) + "," + to_string(stratum_of(canonical));
}

std::string sweep_record(const SweepConfig& sweep, double a, double b)
{
    if (sweep.grid == SweepConfig::Grid::MN) {
        // m = -g3/g1, n = -g3/g2 with g3 = -1.
        const Vorticities g(1.0 / a, 1.0 / b, -1.0);
        return format_double(a) + "," + format_double(b) + "," + region_fields(g);
    }
    const std::string prefix = format_double(a) + "," + format_double(b) + "," + format_double(sweep.g3) + ",";
    if (a == 0 || b == 0) {
        return prefix + "nan,nan,nan,nan,nan,nan,nan,nan,nan,Invalid";
    }
    const Vorticities g(a, b, sweep.g3);
    if (!g.mixed_signs()) {
        return prefix + "nan,nan,nan,nan,nan,nan,nan,nan,nan,NoMixedSigns";
    }
    const auto [cg, shift] = canonicalize(g);
    return prefix + std::to_string(shift) + "," + format_double(cg.m()) + "," + format_double(cg.n()) + "," +
           region_fields(cg);
}

} // namespace

std::vector<std::string> sweep_rows(const SweepConfig& sweep, unsigned jobs)
{
    const std::size_t rows = sweep.first.count();
    const std::size_t cols = sweep.second.count();
    const std::size_t total = rows * cols;
    if (total == 0) {
        return {};
    }
    if (sweep.grid == SweepConfig::Grid::MN && (sweep.first.from <= 0 || sweep.second.from <= 0)) {
        throw ConfigError("config: field 'sweep': m and n must be positive");
    }
    std::vector<std::string> out(total + 1);
    out[0] = sweep.grid == SweepConfig::Grid::MN ? "m,n,beta,gamma,exists,degenerate,p_lo,p_hi,kind"
                                                 : "g1,g2,g3,shift,m,n,beta,gamma,exists,degenerate,p_lo,p_hi,kind";
    const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(total)));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t idx = w; idx < total; idx += workers) {
                out[idx + 1] = sweep_record(sweep, sweep.first.at(idx / cols), sweep.second.at(idx % cols));
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    return out;
}

int cmd_sweep(const Config& cfg, const fs::path& out_dir, unsigned jobs, std::ostream& log)
{
    if (!cfg.sweep) {
        throw ConfigError("config: missing field 'sweep'");
    }
    const auto rows = sweep_rows(*cfg.sweep, jobs);
    std::string text;
    for (const auto& row : rows) {
        text += row;
        text += '\n';
    }
    fs::create_directories(out_dir);
    write_text(out_dir / "sweep.csv", text);
    log << "wrote " << (rows.empty() ? 0 : rows.size() - 1) << " grid points to " << (out_dir / "sweep.csv").string()
        << '\n';
    return exit_ok;
}

int cmd_check(std::uint64_t seed, std::size_t count, std::ostream& os)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> magnitude(0.5, 2.0), coord(-1.0, 1.0);
    std::uniform_int_distribution<int> odd_one(0, 2), coin(0, 1);
    constexpr double drift_limit = 1e-8;
    constexpr double deviation_limit = 1e-6;
    IntegratorConfig icfg;
    icfg.horizon = 5.0;
    icfg.record_steps = false;
    for (int k = 1; k <= 100; ++k) {
        icfg.output_times.push_back(icfg.horizon * k / 100.0);
    }

    bool ok = true;
    for (std::size_t c = 0; c < count; ++c) {
        std::array<double, 3> gv{};
        const int odd = odd_one(rng);
        const double sign = coin(rng) ? 1.0 : -1.0;
        for (int i = 0; i < 3; ++i) {
            gv[i] = (i == odd ? -sign : sign) * magnitude(rng);
        }
        const Vorticities g(gv);
        CartesianState z0;
        do {
            z0.positions = {{coord(rng), coord(rng)}, {coord(rng), coord(rng)}, {coord(rng), coord(rng)}};
        } while (min_pairwise_distance(z0) < 0.3 || std::abs(normalized_area(shape_of(z0))) < 0.05);
        const ShapeState s0 = shape_of(z0);

        const RunOutcome cart = run_cartesian(g, z0, icfg);
        const RunOutcome shape = run_shape(g, s0, icfg);
        const RunOutcome reg = run_regularized(g, to_regularized(s0), icfg);
        const double dev_shape = deviation_json(cart, shape)["max_abs_b_deviation"].get<double>();
        const double dev_reg = deviation_json(cart, reg)["max_abs_b_deviation"].get<double>();
        const double drift = std::max({cart.drift.H, cart.drift.M, cart.drift.Z});
        const bool pass = drift <= drift_limit && dev_shape <= deviation_limit && dev_reg <= deviation_limit &&
                          cart.halt == HaltReason::HorizonReached;
        ok = ok && pass;
        os << (pass ? "PASS" : "FAIL") << " case " << c << " g=(" << format_double(g[0]) << ", "
           << format_double(g[1]) << ", " << format_double(g[2]) << ") drift=" << format_double(drift)
           << " shape_dev=" << format_double(dev_shape) << " regularized_dev=" << format_double(dev_reg) << '\n';
    }
    return ok ? exit_ok : exit_runtime_error;
}

} // namespace vortex3::cli
