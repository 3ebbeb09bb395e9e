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

// Acceptance run: one PASS/FAIL line per criterion with the measured values.
// Exit status is 0 when every failing criterion is one of the documented
// discrepancies listed in README.md.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "vortex4/classify.hpp"
#include "vortex4/dynamics.hpp"
#include "vortex4/homotopy.hpp"
#include "vortex4/sweep.hpp"
#include "vortex4/systems.hpp"

using namespace vortex4;

namespace {

constexpr double kPi = 3.14159265358979323846;

const std::set<int> kDocumentedDiscrepancies{1, 3, 6};

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail << " [violated: " << what << "]";
        }
    }
};

std::string counts(const CountSummary& c)
{
    return std::to_string(c.raw) + "/" + std::to_string(c.configurations) + "/" + std::to_string(c.real) + "/" +
           std::to_string(c.real_configurations);
}

double max_residuals(const Classification& c)
{
    double r = 0.0;
    for (const auto& s : c.solutions) r = std::max({r, s.residual_primary, s.residual_zw});
    return r;
}

Classification classify_re(const SolutionSet& s, const Vorticities& g, double lambda)
{
    return classify(s, g, SystemKind{SystemTag::relative_equilibrium}, lambda);
}

// Newton with synthetic-division deflation, each root polished on the
// undeflated polynomial. Coefficients are in ascending order.
std::vector<Complex> deflation_roots(std::vector<Complex> c)
{
    const std::vector<Complex> original = c;
    auto horner = [](const std::vector<Complex>& p, Complex x, Complex& dp) {
        Complex v = 0.0;
        dp = 0.0;
        for (std::size_t k = p.size(); k-- > 0;) {
            dp = dp * x + v;
            v = v * x + p[k];
        }
        return v;
    };
    auto newton = [&](const std::vector<Complex>& p, Complex x) {
        for (int it = 0; it < 500; ++it) {
            Complex dp;
            const Complex v = horner(p, x, dp);
            if (dp == Complex(0.0)) x += Complex(1e-3, 1e-3);
            else {
                const Complex step = v / dp;
                x -= step;
                if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(x))) break;
            }
        }
        return x;
    };
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Complex> roots;
    while (c.size() > 1) {
        Complex r = newton(c, Complex(u(rng), u(rng)));
        r = newton(original, r);
        roots.push_back(r);
        std::vector<Complex> q(c.size() - 1);
        Complex carry = c.back();
        for (std::size_t k = c.size() - 1; k-- > 0;) {
            q[k] = carry;
            carry = c[k] + carry * r;
        }
        c = std::move(q);
    }
    return roots;
}

PolySystem univariate(const std::vector<Complex>& c)
{
    MultiPoly p(1);
    for (std::size_t k = 0; k < c.size(); ++k) p.add_term({static_cast<int>(k)}, c[k]);
    return PolySystem({p}, {"x"});
}

bool near(const SolutionSet& s, const CVector& x, double tol)
{
    for (const auto& sol : s.solutions)
        if ((sol.point - x).cwiseAbs().maxCoeff() <= tol * coordinate_scale(x)) return true;
    return false;
}

double jacobian_fd_error(const PolySystem& sys, std::mt19937_64& rng, int samples)
{
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        CVector x(sys.nvars());
        for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = Complex(u(rng), u(rng));
        const CMatrix J = sys.jacobian(x);
        const double h = 1e-6;
        for (int j = 0; j < sys.nvars(); ++j) {
            CVector xp = x, xm = x;
            xp(j) += h;
            xm(j) -= h;
            const CVector fd = (sys.evaluate(xp) - sys.evaluate(xm)) / (2.0 * h);
            const double scale = std::max(1.0, J.col(j).cwiseAbs().maxCoeff());
            worst = std::max(worst, (fd - J.col(j)).cwiseAbs().maxCoeff() / scale);
        }
    }
    return worst;
}

// ---------------------------------------------------------------------------

Verdict criterion1()
{
    Verdict v;
    const Vorticities g(-2, 1, 1, 1);
    const Classification plus = classify_re(solve(build_relative_equilibrium(g, 1.0)), g, 1.0);
    const Classification minus = classify_re(solve(build_relative_equilibrium(g, -1.0)), g, -1.0);
    CountSummary both = plus.counts;
    both += minus.counts;
    v.detail << "raw/configurations/real/real configurations over Lambda = +-1: " << counts(both)
             << " (Lambda = +1 alone: " << counts(plus.counts) << ", Lambda = -1 alone: " << counts(minus.counts)
             << "), expected 88/44/12/6";
    v.require(counts(both) == "88/44/12/6", "count over both signs");
    const double res = std::max(max_residuals(plus), max_residuals(minus));
    v.detail << "; max residual " << res;
    v.require(res <= 1e-8, "residual 1e-8");
    return v;
}

Verdict criterion2()
{
    Verdict v;
    const Vorticities g(1, 2, 3, 4);
    const SolutionSet s = solve(build_collinear(g));
    const Classification c = classify(s, g, SystemKind{SystemTag::collinear}, 1.0);
    const int finite = s.multiplicity_total();
    v.detail << "paths " << s.n_paths << " = finite " << finite << " + at infinity " << s.n_at_infinity
             << " + failed " << s.n_failed << "; collision-free configurations " << c.counts.configurations;
    v.require(s.n_paths == 24 && finite + s.n_at_infinity == 24 && s.n_failed == 0, "path partition 24");
    v.require(c.counts.configurations <= 12, "<= 12 configurations");
    return v;
}

Verdict criterion3()
{
    Verdict v;
    const Vorticities g(1, 1, 1, -1);
    const SolutionSet s = solve(build_collinear(g));
    const Classification c = classify(s, g, SystemKind{SystemTag::collinear}, 1.0);
    int origin = 0;
    for (const auto& sol : s.solutions)
        if (sol.point.cwiseAbs().maxCoeff() <= 1e-6) origin += sol.multiplicity;
    v.detail << "origin cluster multiplicity " << origin << " (expected 4), at infinity " << s.n_at_infinity
             << ", collision-free configurations " << c.counts.configurations << " (<= 10)";
    v.require(origin == 4, "origin multiplicity 4");
    v.require(c.counts.configurations <= 10, "<= 10 configurations");
    return v;
}

Verdict criterion4()
{
    Verdict v;
    const Vorticities g(1, 1, 1, -1);
    const Classification c =
        classify(solve(build_equilibrium(g)), g, SystemKind{SystemTag::equilibrium}, 0.0);
    double worst = 0.0;
    for (const auto& s : c.solutions) worst = std::max(worst, conjugate_velocities(s.config.z, g).cwiseAbs().maxCoeff());
    v.detail << "collision-free equilibria " << c.counts.raw << " (expected 2), max |U_n| " << worst;
    v.require(c.counts.raw == 2, "exactly 2");
    v.require(worst <= 1e-8, "|U_n| <= 1e-8");
    return v;
}

Verdict criterion5()
{
    Verdict v;
    const Vorticities g(1, 1, 1, -3);
    const Classification c =
        classify(solve(build_translating(g)), g, SystemKind{SystemTag::translating}, 0.0);
    const double T = 0.5;
    double worst = 0.0, slowest = std::numeric_limits<double>::infinity();
    for (const auto& s : c.solutions) {
        const Positions z0 = s.config.z;
        const Positions U = conjugate_velocities(z0, g);
        slowest = std::min(slowest, std::abs(U(0)));
        const Trajectory tr = integrate(z0, g, T, std::min(1e-3, max_stable_dt(z0, g)));
        const Positions expected = z0 - Complex(0.0, 1.0) * U.conjugate() * T;
        worst = std::max(worst, (tr.positions.back() - expected).cwiseAbs().maxCoeff());
    }
    v.detail << "translating configurations " << c.counts.raw << " (<= 6), min |V| " << slowest
             << ", max ||z(T) - z(0) + i conj(V) T|| " << worst;
    v.require(c.counts.raw <= 6, "<= 6");
    v.require(slowest > 1e-8, "nonzero velocity");
    v.require(worst <= 1e-6, "translation 1e-6");
    return v;
}

Verdict criterion6()
{
    Verdict v;
    const double k = std::sqrt(3.0) - 2.0;
    const Vorticities g(1, 1, k, k);
    int free = 0, real = 0;
    for (double th : {kPi / 2, 3 * kPi / 2}) {
        const Classification c =
            classify(solve(build_collapse(g, th)), g, SystemKind{SystemTag::collapse, th}, std::polar(1.0, th));
        free += c.counts.raw;
        real += c.counts.real;
    }
    v.detail << "collision-free solutions at Lambda = +-i: " << free << " (expected 0); real among them: " << real;
    v.require(free == 0, "no collision-free solutions");
    return v;
}

Verdict criterion7()
{
    Verdict v;
    const Vorticities g(1, 1, 1, -1);
    const CollapseSweep sw = sweep_collapse(g);
    double worst_i = 0.0, worst_s = 0.0, worst_h = 0.0, worst_a = 0.0;
    for (const RealCollapse& r : sw.real) {
        const Configuration cfg = r.configuration();
        const double s2 = cfg.scale() * cfg.scale();
        const InvariantReport rep = verify_invariants(cfg, g);
        worst_i = std::max(worst_i, std::abs(rep.I) / s2);
        worst_s = std::max(worst_s, std::abs(rep.S) / s2);
        const StationaryCheck chk = verify_stationary(cfg, g);
        worst_h = std::max(worst_h, chk.homographic);
        worst_a = std::max(worst_a, chk.affine_residual);
    }
    v.detail << sw.samples.size() << "-point sweep, " << sw.real.size() << " real solutions, " << sw.reanchors
             << " re-anchors; max |I|/scale^2 " << worst_i << ", |S|/scale^2 " << worst_s << ", homographic "
             << worst_h << ", affine residual " << worst_a;
    v.require(sw.certified, "certified sweep");
    v.require(!sw.real.empty(), "real solutions emitted");
    v.require(worst_i <= 1e-8, "|I| 1e-8");
    v.require(worst_s <= 1e-7, "|S| 1e-7");
    v.require(worst_h <= 1e-6, "homographic 1e-6");
    v.require(worst_a <= 1e-6, "affine 1e-6");
    return v;
}

Verdict criterion8()
{
    Verdict v;
    std::mt19937_64 rng(2026);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    auto strength = [&] {
        double x;
        do x = u(rng);
        while (std::abs(x) < 0.2);
        return x;
    };
    int worst_planar = 0, worst_collapse = 0, re_samples = 0, collapse_samples = 0;
    for (int n = 0; n < 25; ++n) {
        if (n % 5 == 4) {
            // L = e2(g1, g2, g3) + g4 (g1 + g2 + g3) = 0.
            double g4 = 0.0, g1 = 0.0, g2 = 0.0, g3 = 0.0;
            do {
                g1 = strength(), g2 = strength(), g3 = strength();
                const double s = g1 + g2 + g3;
                g4 = std::abs(s) < 0.2 ? 0.0 : -(g1 * g2 + g1 * g3 + g2 * g3) / s;
            } while (std::abs(g4) < 0.2 || std::abs(g4) > 10.0);
            const Vorticities g(g1, g2, g3, g4);
            const double th = 0.3 + 2.0 * kPi * std::uniform_real_distribution<double>(0.0, 0.9)(rng);
            const Classification c = classify(solve(build_collapse(g, th)), g, SystemKind{SystemTag::collapse, th},
                                              std::polar(1.0, th));
            worst_collapse = std::max(worst_collapse, c.counts.configurations);
            ++collapse_samples;
        } else {
            const Vorticities g(strength(), strength(), strength(), strength());
            if (std::abs(g.angular_momentum()) < 1e-3) {
                --n;
                continue;
            }
            const SolutionSet plus = solve(build_relative_equilibrium(g, 1.0));
            const SolutionSet minus = image_solution_set(plus, build_relative_equilibrium(g, -1.0), Complex(0.0, 1.0));
            CountSummary both = classify_re(plus, g, 1.0).counts;
            both += classify_re(minus, g, -1.0).counts;
            worst_planar = std::max(worst_planar, both.strictly_planar);
            ++re_samples;
        }
    }
    v.detail << re_samples << " relative-equilibrium samples, max strictly planar " << worst_planar << " (<= 74); "
             << collapse_samples << " L = 0 samples, max collapse configurations " << worst_collapse << " (<= 130)";
    v.require(worst_planar <= 74, "<= 74");
    v.require(worst_collapse <= 130, "<= 130");
    return v;
}

Verdict criterion9()
{
    Verdict v;
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> deg(1, 6);
    int matched = 0, total = 0;
    for (int n = 0; n < 20; ++n) {
        std::vector<Complex> c(static_cast<std::size_t>(deg(rng) + 1));
        for (auto& x : c) x = Complex(u(rng), u(rng));
        const SolutionSet s = solve(univariate(c), TrackOptions{.seed = static_cast<std::uint64_t>(n + 1)});
        for (const Complex& r : deflation_roots(c)) {
            ++total;
            CVector x(1);
            x(0) = r;
            matched += near(s, x, 1e-9);
        }
        v.require(s.certified() && static_cast<int>(s.solutions.size()) == static_cast<int>(c.size()) - 1,
                  "root count of system " + std::to_string(n));
    }
    const MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
    const SolutionSet hand = solve(PolySystem({x * x + y * y - MultiPoly::constant(2, 5.0),
                                               x * y - MultiPoly::constant(2, 2.0)},
                                              {"x", "y"}));
    int hand_matched = 0;
    for (auto [a, b] : {std::pair{1.0, 2.0}, {2.0, 1.0}, {-1.0, -2.0}, {-2.0, -1.0}}) {
        CVector p(2);
        p << a, b;
        hand_matched += near(hand, p, 1e-9);
    }
    v.detail << "univariate roots matched " << matched << "/" << total << "; {x^2+y^2-5, xy-2}: " << hand_matched
             << "/4 of " << hand.solutions.size() << " solutions";
    v.require(matched == total, "deflation oracle 1e-9");
    v.require(hand_matched == 4 && hand.solutions.size() == 4, "hand-derived roots 1e-9");
    return v;
}

Verdict criterion10()
{
    Verdict v;
    const Vorticities g(-2, 1, 1, 1);
    double worst_m = 0.0, worst_l = 0.0;
    int unpaired = 0;
    std::vector<std::string> seed_counts;
    for (std::uint64_t seed : {1, 2}) {
        std::string line;
        for (double lambda : {1.0, -1.0}) {
            const Classification c =
                classify_re(solve(build_relative_equilibrium(g, lambda), TrackOptions{.seed = seed}), g, lambda);
            unpaired += unmatched_under_scaling(c.solutions, c.solutions, -1.0);
            for (const auto& s : c.solutions) {
                const double scale = s.config.scale();
                worst_m = std::max({worst_m, std::abs(s.invariants.M_z) / scale, std::abs(s.invariants.M_w) / scale});
                worst_l = std::max(worst_l, std::abs(s.invariants.lambda_I_minus_L) / (scale * scale));
            }
            line += counts(c.counts) + ";";
        }
        seed_counts.push_back(line);
    }
    const Vorticities gc(1, 2, 3, 4);
    const CountSummary col1 = classify(solve(build_collinear(gc), {.seed = 1}), gc, {SystemTag::collinear}, 1.0).counts;
    const CountSummary col2 = classify(solve(build_collinear(gc), {.seed = 3}), gc, {SystemTag::collinear}, 1.0).counts;

    std::mt19937_64 rng(10);
    const Vorticities gl(1, 1, 1, -1), gt(1, 1, 1, -3);
    double fd = 0.0;
    for (const PolySystem& sys : {build_relative_equilibrium(gc, 1.0), build_collinear(gc), build_collapse(gl, 0.7),
                                  build_equilibrium(gl), build_translating(gt)})
        fd = std::max(fd, jacobian_fd_error(sys, rng, 20));

    Positions z0;
    z0 << Complex(0.1, 0.2), Complex(1.3, -0.4), Complex(-0.7, 0.9), Complex(0.4, 1.5);
    const Vorticities gd(1, -2, 3, 0.5);
    const Trajectory tr = integrate(z0, gd, 1.0, max_stable_dt(z0, gd));
    const double scale = z0.cwiseAbs().maxCoeff();
    double dm = 0.0, di = 0.0, dh = 0.0;
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        dm = std::max(dm, std::abs(tr.M[i] - tr.M[0]));
        di = std::max(di, std::abs(tr.I[i] - tr.I[0]) / (scale * scale));
        dh = std::max(dh, std::abs(tr.H[i] - tr.H[0]));
    }

    v.detail << "unpaired " << unpaired << ", max |M|/scale " << worst_m << ", max |Lambda I - L|/scale^2 " << worst_l
             << ", Jacobian vs finite differences " << fd << ", RE counts seed 1 {" << seed_counts[0] << "} seed 2 {"
             << seed_counts[1] << "}, collinear seeds 1/3 " << counts(col1) << " " << counts(col2) << ", RK4 drift M "
             << dm << " I " << di << " H " << dh;
    v.require(unpaired == 0, "negation closure");
    v.require(worst_m <= 1e-8, "M 1e-8");
    v.require(worst_l <= 1e-8, "Lambda I = L 1e-8");
    v.require(fd <= 1e-6, "Jacobian 1e-6");
    v.require(seed_counts[0] == seed_counts[1] && counts(col1) == counts(col2), "seed independence");
    v.require(dm <= 1e-10 && di <= 1e-8 && dh <= 1e-8, "drift bounds");
    return v;
}

struct Criterion {
    int id;
    const char* name;
    double budget;
    std::function<Verdict()> run;
};

}  // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "exceptional relative-equilibrium count (-2,1,1,1)", 10.0, criterion1},
        {2, "collinear Bezout accounting (1,2,3,4)", 1.0, criterion2},
        {3, "collinear L = 0 multiplicity (1,1,1,-1)", 1.0, criterion3},
        {4, "equilibria (1,1,1,-1)", 1.0, criterion4},
        {5, "rigid translation (1,1,1,-3)", 2.0, criterion5},
        {6, "exceptional collapse nonexistence (1,1,sqrt3-2,sqrt3-2)", 5.0, criterion6},
        {7, "collapse invariant suite (1,1,1,-1)", 60.0, criterion7},
        {8, "bound conformance over 25 seeded samples", 60.0, criterion8},
        {9, "solver oracle equivalence", 1.0, criterion9},
        {10, "invariant closure", 20.0, criterion10},
    };
    std::vector<int> failed;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail << "exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        v.require(secs <= c.budget, "runtime budget");
        if (!v.pass) failed.push_back(c.id);
        std::printf("criterion %2d %s  %s: %s (%.2f s, budget %.0f s)\n", c.id, v.pass ? "PASS" : "FAIL", c.name,
                    v.detail.str().c_str(), secs, c.budget);
        std::fflush(stdout);
    }
    bool undocumented = false;
    std::string list;
    for (int id : failed) {
        list += " " + std::to_string(id);
        undocumented = undocumented || !kDocumentedDiscrepancies.count(id);
    }
    std::printf("%zu of %zu criteria pass; failing:%s%s\n", criteria.size() - failed.size(), criteria.size(),
                list.empty() ? " none" : list.c_str(),
                failed.empty() ? "" : undocumented ? " (includes undocumented failures)" : " (all documented)");
    return undocumented ? 1 : 0;
}
