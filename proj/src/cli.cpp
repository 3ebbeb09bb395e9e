/*
   Copyright 2026 The vortex4 Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "vortex4/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "vortex4/analysis.hpp"
#include "vortex4/classify.hpp"
#include "vortex4/dynamics.hpp"
#include "vortex4/homotopy.hpp"
#include "vortex4/sweep.hpp"
#include "vortex4/systems.hpp"

namespace vortex4::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr const char* kVersion = "1.0.0";

class ExpressionParser {
public:
    explicit ExpressionParser(std::string_view text) : text_(text) {}

    double parse()
    {
        const double v = expr();
        skip();
        if (pos_ != text_.size()) fail("unexpected character");
        if (!std::isfinite(v)) fail("value is not finite");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw std::invalid_argument("expression '" + std::string(text_) + "': " + what);
    }

    void skip()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    double expr()
    {
        double v = term();
        for (;;) {
            if (accept('+'))
                v += term();
            else if (accept('-'))
                v -= term();
            else
                return v;
        }
    }

    double term()
    {
        double v = unary();
        for (;;) {
            if (accept('*')) {
                v *= unary();
            } else if (accept('/')) {
                const double d = unary();
                if (d == 0.0) fail("division by zero");
                v /= d;
            } else {
                return v;
            }
        }
    }

    double unary()
    {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return primary();
    }

    double primary()
    {
        skip();
        if (pos_ >= text_.size()) fail("unexpected end");
        if (accept('(')) {
            const double v = expr();
            if (!accept(')')) fail("missing ')'");
            return v;
        }
        const char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        double v = 0.0;
        const auto [end, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
        if (ec != std::errc()) fail("expected a number");
        pos_ = static_cast<std::size_t>(end - text_.data());
        return v;
    }

    double identifier()
    {
        const std::size_t begin = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::string_view name = text_.substr(begin, pos_ - begin);
        if (name == "pi") return kPi;
        if (name != "sqrt") fail("unknown name '" + std::string(name) + "'");
        if (accept('(')) {
            const double v = expr();
            if (!accept(')')) fail("missing ')'");
            if (v < 0.0) fail("sqrt of a negative number");
            return std::sqrt(v);
        }
        const std::size_t digits = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == digits) fail("sqrt needs an argument");
        int n = 0;
        std::from_chars(text_.data() + digits, text_.data() + pos_, n);
        return std::sqrt(static_cast<double>(n));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

std::vector<std::string_view> split(std::string_view text, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t begin = 0;
    for (;;) {
        const std::size_t end = text.find(sep, begin);
        parts.push_back(text.substr(begin, end == std::string_view::npos ? std::string_view::npos : end - begin));
        if (end == std::string_view::npos) return parts;
        begin = end + 1;
    }
}

json cjson(Complex c) { return json::array({c.real(), c.imag()}); }

template <typename Derived>
json vjson(const Eigen::MatrixBase<Derived>& v)
{
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(cjson(v(i)));
    return a;
}

json meta(const std::string& command)
{
    return {{"tool", "vortex4"}, {"version", kVersion}, {"schema", 1}, {"command", command}};
}

std::string to_string(LambdaChoice c)
{
    switch (c) {
    case LambdaChoice::plus: return "plus";
    case LambdaChoice::minus: return "minus";
    case LambdaChoice::both: return "both";
    }
    return "both";
}

json tolerances_json(const Tolerances& t)
{
    return {{"track", t.track},         {"newton", t.newton},       {"dedup", t.dedup},
            {"real", t.real},           {"invariant", t.invariant}, {"residual", t.residual},
            {"dynamics", t.dynamics}};
}

json input_json(const RunConfig& cfg)
{
    json in;
    in["command"] = cfg.command;
    if (!cfg.kind.empty()) in["kind"] = cfg.kind;
    in["gammas"] = cfg.gammas;
    in["gammas_text"] = cfg.gammas_text;
    if (cfg.command == "solve") {
        in["lambda"] = to_string(cfg.lambda);
        in["theta"] = cfg.theta ? json(*cfg.theta) : json(nullptr);
        in["theta_grid"] = cfg.theta_grid;
        in["seed"] = cfg.seed;
        in["tolerances"] = tolerances_json(cfg.tol);
        in["verify_dynamics"] = cfg.verify_dynamics;
    }
    return in;
}

TrackOptions track_options(const RunConfig& cfg)
{
    TrackOptions o;
    o.seed = cfg.seed;
    o.track_tol = cfg.tol.track;
    o.newton_tol = cfg.tol.newton;
    o.dedup_radius = cfg.tol.dedup;
    o.validate();
    return o;
}

ClassifyTolerances classify_tolerances(const Tolerances& t)
{
    ClassifyTolerances c;
    c.real = t.real;
    c.invariant = t.invariant;
    c.require_certified = false;
    return c;
}

json counts_json(const CountSummary& c)
{
    json j = {{"raw", c.raw},
              {"configurations", c.configurations},
              {"real", c.real},
              {"real_configurations", c.real_configurations},
              {"collinear", c.collinear},
              {"strictly_planar", c.strictly_planar}};
    j["mirror_classes"] = c.mirror_classes ? json(*c.mirror_classes) : json(nullptr);
    j["collision_endpoints"] = c.collision_endpoints;
    j["at_infinity"] = c.at_infinity;
    j["failed"] = c.failed;
    return j;
}

json invariants_json(const InvariantReport& r)
{
    return {{"M_z", std::abs(r.M_z)},
            {"M_w", std::abs(r.M_w)},
            {"I", std::abs(r.I)},
            {"S", std::abs(r.S)},
            {"lambda_I_minus_L", std::abs(r.lambda_I_minus_L)}};
}

json dynamics_json(const StationaryCheck& c)
{
    return {{"T", c.T},
            {"dt", c.dt},
            {"homographic", c.homographic},
            {"radius_drift", c.radius_drift},
            {"affine_residual", c.affine_residual},
            {"displacement_defect", c.displacement_defect},
            {"drift_H", c.drift_H},
            {"drift_I", c.drift_I},
            {"drift_M", c.drift_M},
            {"collision_approach", c.collision_approach},
            {"passed", c.passed}};
}

struct Check {
    std::string name;
    bool passed = true;
    std::string detail;
};

json checks_json(const std::vector<Check>& checks)
{
    json a = json::array();
    for (const auto& c : checks) a.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return a;
}

struct Block {
    std::string label;
    SystemKind kind;
    Complex lambda;
    PolySystem system;
    SolutionSet set;
    std::optional<Classification> cls;
    std::string error;
};

Block run_block(const std::string& label, const SystemKind& kind, Complex lambda, PolySystem sys, const Vorticities& g,
                const RunConfig& cfg)
{
    Block b{label, kind, lambda, std::move(sys), {}, std::nullopt, {}};
    b.set = solve(b.system, track_options(cfg));
    try {
        b.cls = classify(b.set, g, kind, lambda, classify_tolerances(cfg.tol));
    } catch (const ConsistencyError& e) {
        b.error = e.what();
    }
    return b;
}

json path_json(const Block& b)
{
    int converged = 0;
    for (const auto& p : b.set.paths)
        if (p.status == PathStatus::converged) ++converged;
    json j;
    j["system"] = b.label;
    j["tag"] = to_string(b.kind.tag);
    j["lambda"] = cjson(b.lambda);
    j["theta"] = b.kind.tag == SystemTag::collapse ? json(b.kind.theta) : json(nullptr);
    j["degrees"] = b.system.degrees();
    j["gauge_note"] = b.system.gauge_note();
    j["seed"] = b.set.seed;
    j["n_paths"] = b.set.n_paths;
    j["converged"] = converged;
    j["at_infinity"] = b.set.n_at_infinity;
    j["failed"] = b.set.n_failed;
    j["multiplicity_total"] = b.set.multiplicity_total();
    j["distinct_endpoints"] = b.set.solutions.size();
    j["certified"] = b.set.certified();
    json clusters = json::array();
    for (const auto& s : b.set.solutions)
        if (s.is_collision)
            clusters.push_back({{"point", vjson(s.point)}, {"multiplicity", s.multiplicity}, {"residual", s.residual}});
    j["collision_clusters"] = clusters;
    return j;
}

int corollary_collinear_bound(const Vorticities& g)
{
    const double gmax = g.max_abs();
    if (std::abs(g.angular_momentum()) <= 1e-12 * gmax * gmax) return 10;
    if (std::abs(g.total()) <= 1e-12 * gmax) return 6;
    return 12;
}

Check bound_check(const std::string& name, int measured, int bound)
{
    std::ostringstream os;
    os << measured << " <= " << bound;
    return {name, measured <= bound, os.str()};
}

void write_csv_counts(std::ostringstream& os, const std::string& label, const CountSummary& c)
{
    os << label << ',' << c.raw << ',' << c.configurations << ',' << c.real << ',' << c.real_configurations << ','
       << c.collinear << ',' << c.strictly_planar << ',' << (c.mirror_classes ? std::to_string(*c.mirror_classes) : "")
       << ',' << c.collision_endpoints << ',' << c.at_infinity << ',' << c.failed << '\n';
}

Outcome solve_sweep(const RunConfig& cfg, const Vorticities& g)
{
    SweepOptions so;
    so.grid.points = cfg.theta_grid;
    so.track = track_options(cfg);
    so.real_tol = cfg.tol.real;
    so.grid.validate();
    const CollapseSweep sw = sweep_collapse(g, so);

    ClassifyTolerances ct = classify_tolerances(cfg.tol);
    json sols = json::array();
    int rejected = 0, dyn_failed = 0;
    for (const auto& r : sw.real) {
        const Configuration c = r.configuration();
        const InvariantReport rep = verify_invariants(c, g);
        const auto why = check_contract(c, rep, g, ct);
        json s;
        s["theta"] = r.theta;
        s["z"] = vjson(c.z);
        s["w"] = vjson(c.w);
        s["lambda"] = cjson(c.lambda);
        s["sigma"] = r.sigma;
        s["residual_primary"] = r.residual;
        s["refined"] = r.refined;
        s["invariants"] = invariants_json(rep);
        s["contract"] = why ? json(*why) : json(nullptr);
        if (why) ++rejected;
        if (cfg.verify_dynamics) {
            const StationaryCheck d = verify_stationary(c, g, cfg.tol.dynamics);
            if (!d.passed) ++dyn_failed;
            s["dynamics"] = dynamics_json(d);
        }
        sols.push_back(std::move(s));
    }

    std::vector<Check> checks;
    for (const auto* anchor : {&sw.anchor_upper, &sw.anchor_lower}) {
        const int total = anchor->multiplicity_total() + anchor->n_at_infinity + anchor->n_failed;
        checks.push_back({"path_accounting", total == anchor->n_paths,
                          std::to_string(total) + " of " + std::to_string(anchor->n_paths)});
    }
    checks.push_back({"contracts", rejected == 0, std::to_string(rejected) + " rejected"});
    if (cfg.verify_dynamics) checks.push_back({"dynamics", dyn_failed == 0, std::to_string(dyn_failed) + " failed"});

    json samples = json::array();
    int reanchored = 0;
    for (const auto& s : sw.samples) {
        samples.push_back({{"theta", s.theta}, {"sigma", s.sigma}, {"n_solutions", s.n_solutions}});
        if (s.reanchored) ++reanchored;
    }

    Outcome out;
    auto& j = out.report;
    j["meta"] = meta("solve");
    j["input"] = input_json(cfg);
    j["paths"] = json::array();
    for (const auto* anchor : {&sw.anchor_upper, &sw.anchor_lower})
        j["paths"].push_back({{"system", "collapse anchor"},
                              {"n_paths", anchor->n_paths},
                              {"at_infinity", anchor->n_at_infinity},
                              {"failed", anchor->n_failed},
                              {"multiplicity_total", anchor->multiplicity_total()},
                              {"certified", anchor->certified()}});
    j["solutions"] = std::move(sols);
    j["counts"] = {{"grid_points", static_cast<int>(sw.samples.size())},
                   {"real", static_cast<int>(sw.real.size())},
                   {"reanchors", sw.reanchors},
                   {"reanchored_samples", reanchored}};
    j["checks"] = checks_json(checks);
    j["sweep"] = std::move(samples);

    const bool all_ok = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
    out.code = !sw.certified ? ExitCode::uncertified : all_ok ? ExitCode::success : ExitCode::mismatch;
    if (cfg.format == Format::csv) {
        std::ostringstream os;
        os << "theta,sigma,n_solutions\n";
        os.precision(17);
        for (const auto& s : sw.samples) os << s.theta << ',' << s.sigma << ',' << s.n_solutions << '\n';
        out.csv = os.str();
    }
    return out;
}

std::vector<int> lambda_signs(LambdaChoice c)
{
    switch (c) {
    case LambdaChoice::plus: return {1};
    case LambdaChoice::minus: return {-1};
    case LambdaChoice::both: return {1, -1};
    }
    return {1, -1};
}

}  // namespace

double parse_expression(std::string_view text) { return ExpressionParser(text).parse(); }

std::array<double, 4> parse_gammas(std::string_view text)
{
    const auto parts = split(text, ',');
    if (parts.size() != 4) throw std::invalid_argument("--gammas needs exactly four comma-separated values");
    std::array<double, 4> g{};
    for (std::size_t i = 0; i < 4; ++i) g[i] = parse_expression(parts[i]);
    return g;
}

void Tolerances::validate() const
{
    for (double v : {track, newton, dedup, real, invariant, residual, dynamics})
        if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("tolerances must be positive and finite");
}

Outcome cmd_analyze(const RunConfig& cfg)
{
    const Vorticities g(cfg.gammas);
    const VorticityReport r = analyze(g);
    json rep;
    rep["gamma_total"] = r.gamma_total;
    rep["L"] = r.L;
    rep["equilibria_possible"] = r.equilibria_possible;
    rep["translating_possible"] = r.translating_possible;
    rep["exceptional_sqrt3"] = r.exceptional_sqrt3;
    rep["exceptional_minus_half"] = r.exceptional_minus_half;
    json compat = json::object();
    for (const auto& name : diagram_names()) {
        const auto it = r.diagram_compat.find(name);
        if (it != r.diagram_compat.end()) compat[name] = it->second;
    }
    rep["diagram_compat"] = compat;
    rep["finiteness_certificate"] = r.finiteness_certificate();

    Outcome out;
    out.report["meta"] = meta("analyze");
    out.report["input"] = input_json(cfg);
    out.report["report"] = rep;
    return out;
}

Outcome cmd_solve(const RunConfig& cfg)
{
    cfg.tol.validate();
    const Vorticities g(cfg.gammas);
    if (cfg.kind == "collapse" && cfg.theta_grid > 0) return solve_sweep(cfg, g);

    std::vector<Block> blocks;
    if (cfg.kind == "re") {
        for (int sign : lambda_signs(cfg.lambda))
            blocks.push_back(run_block(sign > 0 ? "relative equilibria, Lambda = +1" : "relative equilibria, Lambda = -1",
                                       {SystemTag::relative_equilibrium, 0.0}, Complex(sign, 0.0),
                                       build_relative_equilibrium(g, sign), g, cfg));
    } else if (cfg.kind == "collinear") {
        blocks.push_back(run_block("collinear relative equilibria", {SystemTag::collinear, 0.0}, Complex(1.0, 0.0),
                                   build_collinear(g), g, cfg));
    } else if (cfg.kind == "collapse") {
        std::vector<double> thetas;
        if (cfg.theta)
            thetas.push_back(*cfg.theta);
        else
            for (int sign : lambda_signs(cfg.lambda)) thetas.push_back(sign > 0 ? kPi / 2 : 3 * kPi / 2);
        for (double th : thetas) {
            char buf[32];
            const auto res = std::to_chars(buf, buf + sizeof buf, th);
            blocks.push_back(run_block("collapse, theta = " + std::string(buf, res.ptr), {SystemTag::collapse, th}, std::polar(1.0, th),
                                       build_collapse(g, th), g, cfg));
        }
    } else if (cfg.kind == "equilibrium") {
        blocks.push_back(
            run_block("equilibria", {SystemTag::equilibrium, 0.0}, Complex(0.0), build_equilibrium(g), g, cfg));
    } else if (cfg.kind == "translating") {
        blocks.push_back(run_block("translating configurations", {SystemTag::translating, 0.0}, Complex(0.0),
                                   build_translating(g), g, cfg));
    } else {
        throw std::invalid_argument("unknown system kind '" + cfg.kind + "'");
    }

    std::vector<Check> checks;
    CountSummary total;
    json paths = json::array(), sols = json::array(), per_block = json::array();
    bool certified = true;
    int rejected = 0, dyn_failed = 0;
    double worst_primary = 0.0, worst_zw = 0.0;
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        const Block& b = blocks[bi];
        certified = certified && b.set.certified();
        paths.push_back(path_json(b));
        const int sum = b.set.multiplicity_total() + b.set.n_at_infinity + b.set.n_failed;
        checks.push_back({"path_accounting", sum == b.set.n_paths,
                          b.label + ": " + std::to_string(sum) + " of " + std::to_string(b.set.n_paths)});
        if (b.kind.tag == SystemTag::relative_equilibrium || b.kind.tag == SystemTag::collapse ||
            b.kind.tag == SystemTag::collinear)
            checks.push_back({"pairing", b.error.empty(), b.label + (b.error.empty() ? ": closed" : ": " + b.error)});
        if (!b.cls) continue;
        const Classification& c = *b.cls;
        total += c.counts;
        per_block.push_back({{"system", b.label}, {"counts", counts_json(c.counts)}});
        rejected += static_cast<int>(c.rejected.size());
        for (const auto& s : c.solutions) {
            worst_primary = std::max(worst_primary, s.residual_primary);
            worst_zw = std::max(worst_zw, s.residual_zw);
            json r;
            r["block"] = bi;
            r["z"] = vjson(s.config.z);
            r["w"] = vjson(s.config.w);
            r["lambda"] = cjson(s.config.lambda);
            r["point"] = vjson(s.point);
            r["multiplicity"] = s.multiplicity;
            r["is_real"] = s.is_real;
            r["is_collinear"] = s.is_collinear ? json(*s.is_collinear) : json(nullptr);
            r["pair_id"] = s.pair_id;
            r["residual_primary"] = s.residual_primary;
            r["residual_zw"] = s.residual_zw;
            r["invariants"] = invariants_json(s.invariants);
            if (cfg.verify_dynamics && s.is_real) {
                const StationaryCheck d = verify_stationary(s.config, g, cfg.tol.dynamics);
                if (!d.passed) ++dyn_failed;
                r["dynamics"] = dynamics_json(d);
            }
            sols.push_back(std::move(r));
        }
    }
    checks.push_back({"contracts", rejected == 0, std::to_string(rejected) + " rejected"});
    {
        std::ostringstream os;
        os << "max primary " << worst_primary << ", max independent " << worst_zw;
        checks.push_back({"residuals", worst_primary <= cfg.tol.residual && worst_zw <= cfg.tol.residual, os.str()});
    }
    if (blocks.size() == 2 && blocks[0].cls && blocks[1].cls) {
        const int fwd = unmatched_under_scaling(blocks[0].cls->solutions, blocks[1].cls->solutions, Complex(0.0, 1.0));
        const int back = unmatched_under_scaling(blocks[1].cls->solutions, blocks[0].cls->solutions, Complex(0.0, -1.0));
        checks.push_back({"gauge_bijection", fwd == 0 && back == 0,
                          "unmatched under x -> i x: " + std::to_string(fwd) + " and " + std::to_string(back)});
    }
    if (cfg.kind == "re") {
        checks.push_back(bound_check("strictly_planar_bound", total.strictly_planar, 74));
        checks.push_back(bound_check("collinear_bound", total.collinear, corollary_collinear_bound(g)));
        checks.push_back(bound_check("central_configuration_bound", total.configurations, 144));
    } else if (cfg.kind == "collinear") {
        checks.push_back(bound_check("collinear_bound", total.real_configurations, corollary_collinear_bound(g)));
    } else if (cfg.kind == "collapse") {
        for (const auto& b : blocks)
            if (b.cls) checks.push_back(bound_check("collapse_bound", b.cls->counts.configurations, 130));
    } else if (cfg.kind == "equilibrium") {
        checks.push_back({"equilibrium_count", total.raw == 2, std::to_string(total.raw) + " == 2"});
    } else if (cfg.kind == "translating") {
        checks.push_back(bound_check("translating_bound", total.raw, 6));
    }
    if (cfg.verify_dynamics) checks.push_back({"dynamics", dyn_failed == 0, std::to_string(dyn_failed) + " failed"});

    Outcome out;
    auto& j = out.report;
    j["meta"] = meta("solve");
    j["input"] = input_json(cfg);
    j["paths"] = std::move(paths);
    j["solutions"] = std::move(sols);
    json counts = counts_json(total);
    counts["per_system"] = std::move(per_block);
    j["counts"] = std::move(counts);
    j["checks"] = checks_json(checks);

    const bool all_ok = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
    out.code = !certified ? ExitCode::uncertified : all_ok ? ExitCode::success : ExitCode::mismatch;
    if (cfg.format == Format::csv) {
        std::ostringstream os;
        os << "system,raw,configurations,real,real_configurations,collinear,strictly_planar,mirror_classes,"
              "collision_endpoints,at_infinity,failed\n";
        for (const auto& b : blocks)
            if (b.cls) write_csv_counts(os, b.label, b.cls->counts);
        write_csv_counts(os, "total", total);
        out.csv = os.str();
    }
    return out;
}

Outcome cmd_verify_paper(const RunConfig& cfg)
{
    struct Row {
        std::string name;
        std::string expected;
        std::string measured;
        bool pass;
    };
    std::vector<Row> rows;
    TrackOptions opts;
    opts.seed = cfg.seed;
    const ClassifyTolerances ct{.require_certified = false};
    const auto summary = [](const CountSummary& c) {
        return std::to_string(c.raw) + "/" + std::to_string(c.configurations) + "/" + std::to_string(c.real) + "/" +
               std::to_string(c.real_configurations);
    };

    const Vorticities g_re(-2, 1, 1, 1);
    const SolutionSet plus = solve(build_relative_equilibrium(g_re, 1.0), opts);
    const SolutionSet minus = solve(build_relative_equilibrium(g_re, -1.0), opts);
    const Classification c_plus = classify(plus, g_re, {SystemTag::relative_equilibrium, 0.0}, 1.0, ct);
    const Classification c_minus = classify(minus, g_re, {SystemTag::relative_equilibrium, 0.0}, -1.0, ct);
    CountSummary both = c_plus.counts;
    both += c_minus.counts;
    rows.push_back({"relative equilibria (-2,1,1,1), Lambda = +1 and -1 (raw/configurations/real/real configurations)",
                    "88/44/12/6", summary(both), summary(both) == "88/44/12/6"});
    rows.push_back({"relative equilibria (-2,1,1,1), Lambda = +1 (raw/configurations/real/real configurations)",
                    "88/44/12/6", summary(c_plus.counts), summary(c_plus.counts) == "88/44/12/6"});
    rows.push_back({"strictly planar relative equilibria (-2,1,1,1) <= 74", "<= 74", std::to_string(both.strictly_planar),
                    both.strictly_planar <= 74});

    const Vorticities g_col(1, 2, 3, 4);
    const SolutionSet col = solve(build_collinear(g_col), opts);
    const Classification c_col = classify(col, g_col, {SystemTag::collinear, 0.0}, 1.0, ct);
    const int col_total = col.multiplicity_total() + col.n_at_infinity + col.n_failed;
    rows.push_back({"collinear (1,2,3,4) path accounting", "24", std::to_string(col_total), col_total == 24});

    const Vorticities g_l0(1, 1, 1, -1);
    const SolutionSet col0 = solve(build_collinear(g_l0), opts);
    const Classification c_col0 = classify(col0, g_l0, {SystemTag::collinear, 0.0}, 1.0, ct);
    int origin = 0;
    for (const auto& s : col0.solutions)
        if (s.is_collision && s.point.cwiseAbs().maxCoeff() <= 1e-6) origin = s.multiplicity;
    rows.push_back({"collinear (1,1,1,-1) origin multiplicity", "4", std::to_string(origin), origin == 4});
    rows.push_back({"collinear (1,1,1,-1) <= 10", "<= 10", std::to_string(c_col0.counts.real_configurations),
                    c_col0.counts.real_configurations <= 10});

    const int worst_collinear = std::max({c_col.counts.real_configurations, c_col0.counts.real_configurations,
                                          both.collinear});
    rows.push_back({"collinear <= 12 across fixtures", "<= 12", std::to_string(worst_collinear), worst_collinear <= 12});

    const SolutionSet eq = solve(build_equilibrium(g_l0), opts);
    const Classification c_eq = classify(eq, g_l0, {SystemTag::equilibrium, 0.0}, 0.0, ct);
    rows.push_back({"equilibria (1,1,1,-1)", "2", std::to_string(c_eq.counts.raw), c_eq.counts.raw == 2});

    const Vorticities g_tr(1, 1, 1, -3);
    const SolutionSet tr = solve(build_translating(g_tr), opts);
    const Classification c_tr = classify(tr, g_tr, {SystemTag::translating, 0.0}, 0.0, ct);
    rows.push_back({"translating (1,1,1,-3) <= 6", "<= 6", std::to_string(c_tr.counts.raw), c_tr.counts.raw <= 6});

    const double k = std::sqrt(3.0) - 2.0;
    const Vorticities g_ex(1, 1, k, k);
    int free_ex = 0, real_ex = 0;
    for (double th : {kPi / 2, 3 * kPi / 2}) {
        const SolutionSet s = solve(build_collapse(g_ex, th), opts);
        const Classification c = classify(s, g_ex, {SystemTag::collapse, th}, std::polar(1.0, th), ct);
        free_ex += c.counts.raw;
        real_ex += c.counts.real;
    }
    rows.push_back({"collapse (1,1,sqrt3-2,sqrt3-2) collision-free solutions at Lambda = +-i", "0",
                    std::to_string(free_ex), free_ex == 0});
    rows.push_back({"collapse (1,1,sqrt3-2,sqrt3-2) real solutions at Lambda = +-i", "0", std::to_string(real_ex),
                    real_ex == 0});

    Outcome out;
    json table = json::array();
    bool all = true;
    for (const auto& r : rows) {
        all = all && r.pass;
        table.push_back({{"name", r.name}, {"expected", r.expected}, {"measured", r.measured}, {"pass", r.pass}});
    }
    out.report["meta"] = meta("verify-paper");
    out.report["input"] = {{"command", "verify-paper"}, {"seed", cfg.seed}};
    out.report["rows"] = std::move(table);
    out.report["all_pass"] = all;
    out.code = all ? ExitCode::success : ExitCode::mismatch;
    if (cfg.format == Format::csv) {
        std::ostringstream os;
        os << "name,expected,measured,pass\n";
        for (const auto& r : rows)
            os << '"' << r.name << "\"," << r.expected << ',' << r.measured << ',' << (r.pass ? "PASS" : "FAIL") << '\n';
        out.csv = os.str();
    }
    return out;
}

Outcome cmd_simulate(const RunConfig& cfg)
{
    const Vorticities g(cfg.gammas);
    Positions z0;
    for (int n = 0; n < 4; ++n) z0(n) = Complex(cfg.positions[2 * n], cfg.positions[2 * n + 1]);
    if (!(min_separation(z0) > 0.0)) throw CollisionError("initial positions contain coinciding vortices");
    const double dt = cfg.dt ? *cfg.dt : std::min(1e-3, max_stable_dt(z0, g));
    const Trajectory traj = integrate(z0, g, cfg.T, dt);

    Outcome out;
    auto& j = out.report;
    j["meta"] = meta("simulate");
    j["input"] = {{"command", "simulate"}, {"gammas", cfg.gammas},       {"gammas_text", cfg.gammas_text},
                  {"positions", cfg.positions}, {"T", cfg.T}, {"dt", dt}};
    const std::size_t last = traj.times.size() - 1;
    j["trajectory"] = {{"samples", traj.times.size()},
                       {"t_final", traj.times[last]},
                       {"collision_approach", traj.collision_approach},
                       {"final_positions", vjson(traj.positions[last])}};
    j["checks"] = {{"drift_H", std::abs(traj.H[last] - traj.H[0])},
                   {"drift_M", std::abs(traj.M[last] - traj.M[0])},
                   {"drift_I", std::abs(traj.I[last] - traj.I[0])},
                   {"homographic_deviation", homographic_deviation(traj)}};
    if (cfg.format == Format::csv) {
        std::ostringstream os;
        write_csv(os, traj);
        out.csv = os.str();
    }
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Stationary configurations of four point vortices", "vortex4"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string lambda = "both", format = "json", positions;

    const auto add_common = [&](CLI::App* sub, bool gammas) {
        if (gammas) sub->add_option("--gammas", cfg.gammas_text, "four vortex strengths, e.g. 1,1,sqrt3-2,sqrt3-2")->required();
        sub->add_option("--out", cfg.out, "write the report to this file");
        sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--seed", cfg.seed, "random seed for the homotopy");
    };

    CLI::App* analyze_cmd = app.add_subcommand("analyze", "vorticity analysis");
    add_common(analyze_cmd, true);

    CLI::App* solve_cmd = app.add_subcommand("solve", "solve a stationary-configuration system");
    add_common(solve_cmd, true);
    solve_cmd->add_option("kind", cfg.kind, "re, collinear, collapse, equilibrium or translating")
        ->required()
        ->check(CLI::IsMember({"re", "collinear", "collapse", "equilibrium", "translating"}));
    solve_cmd->add_option("--lambda", lambda, "plus, minus or both")->check(CLI::IsMember({"plus", "minus", "both"}));
    solve_cmd->add_option("--theta", cfg.theta, "collapse multiplier angle");
    solve_cmd->add_option("--theta-grid", cfg.theta_grid, "sweep the collapse angle over this many points");
    solve_cmd->add_option("--tol-track", cfg.tol.track, "path tracking tolerance");
    solve_cmd->add_option("--tol-newton", cfg.tol.newton, "Newton corrector tolerance");
    solve_cmd->add_option("--tol-dedup", cfg.tol.dedup, "endpoint clustering radius");
    solve_cmd->add_option("--tol-real", cfg.tol.real, "relative ||w - conj(z)|| for real solutions");
    solve_cmd->add_option("--tol-invariant", cfg.tol.invariant, "relative bound on M, I and Lambda I - L");
    solve_cmd->add_option("--tol-residual", cfg.tol.residual, "bound on primary and independent residuals");
    solve_cmd->add_option("--tol-dynamics", cfg.tol.dynamics, "bound on integrated motion defects");
    solve_cmd->add_flag("--verify-dynamics", cfg.verify_dynamics, "integrate every real solution");

    CLI::App* paper_cmd = app.add_subcommand("verify-paper", "built-in reproduction suite");
    add_common(paper_cmd, false);

    CLI::App* sim_cmd = app.add_subcommand("simulate", "integrate the vortex equations");
    add_common(sim_cmd, true);
    sim_cmd->add_option("--positions", positions, "x1,y1,...,x4,y4")->required();
    sim_cmd->add_option("--T", cfg.T, "final time");
    sim_cmd->add_option("--dt", cfg.dt, "RK4 step");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::invalid_input);
    }

    Outcome result;
    try {
        cfg.format = format == "csv" ? Format::csv : Format::json;
        cfg.lambda = lambda == "plus" ? LambdaChoice::plus : lambda == "minus" ? LambdaChoice::minus : LambdaChoice::both;
        if (!cfg.gammas_text.empty()) cfg.gammas = parse_gammas(cfg.gammas_text);
        if (analyze_cmd->parsed()) {
            cfg.command = "analyze";
            if (cfg.format == Format::csv) throw std::invalid_argument("analyze has no csv form");
            result = cmd_analyze(cfg);
        } else if (solve_cmd->parsed()) {
            cfg.command = "solve";
            if (cfg.theta_grid < 0) throw std::invalid_argument("--theta-grid must be positive");
            if ((cfg.theta || cfg.theta_grid > 0) && cfg.kind != "collapse")
                throw std::invalid_argument("--theta and --theta-grid apply to collapse only");
            result = cmd_solve(cfg);
        } else if (paper_cmd->parsed()) {
            cfg.command = "verify-paper";
            result = cmd_verify_paper(cfg);
        } else {
            cfg.command = "simulate";
            const auto parts = split(positions, ',');
            if (parts.size() != 8) throw std::invalid_argument("--positions needs exactly eight values");
            for (std::size_t i = 0; i < 8; ++i) cfg.positions[i] = parse_expression(parts[i]);
            result = cmd_simulate(cfg);
        }
    } catch (const std::invalid_argument& e) {
        err << "invalid input: " << e.what() << '\n';
        return static_cast<int>(ExitCode::invalid_input);
    } catch (const PreconditionError& e) {
        err << "precondition violated: " << e.what() << '\n';
        return static_cast<int>(ExitCode::invalid_input);
    } catch (const CollisionError& e) {
        err << "invalid input: " << e.what() << '\n';
        return static_cast<int>(ExitCode::invalid_input);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::mismatch);
    }

    const std::string text = result.csv ? *result.csv : result.report.dump(2) + "\n";
    if (cfg.out.empty()) {
        out << text;
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!f) {
            err << "cannot write " << cfg.out << '\n';
            return static_cast<int>(ExitCode::invalid_input);
        }
        f << text;
    }
    return static_cast<int>(result.code);
}

}  // namespace vortex4::cli
