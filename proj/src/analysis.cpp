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

#include "vortex4/analysis.hpp"

#include <array>
#include <cmath>

namespace vortex4 {

namespace {

// The three ways to split {0,1,2,3} into two pairs.
constexpr std::array<std::array<int, 4>, 3> kPairSplits{{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};

struct Context {
    const Vorticities& g;
    double tol;
    double gamma;
    double L;
    double max_pair;

    double at(int i) const { return g[i]; }
    bool zero_L() const { return std::abs(L) <= tol * max_pair; }
    bool zero_gamma() const { return std::abs(gamma) <= tol * g.max_abs(); }
    bool sum_zero(double a, double b) const { return std::abs(a + b) <= tol * std::max(std::abs(a), std::abs(b)); }
    bool product_eq(int a, int b, int c, int d) const
    {
        return nearly_equal(at(a) * at(b), at(c) * at(d), tol);
    }
    bool equal(int a, int b) const { return nearly_equal(at(a), at(b), tol); }
    bool reciprocal_sum_zero(int a, int b, int c) const
    {
        const double ia = 1.0 / at(a), ib = 1.0 / at(b), ic = 1.0 / at(c);
        const double m = std::max({std::abs(ia), std::abs(ib), std::abs(ic)});
        return std::abs(ia + ib + ic) <= tol * m;
    }
    bool triple_sum_zero(int a, int b, int c) const
    {
        const double m = std::max({std::abs(at(a)), std::abs(at(b)), std::abs(at(c))});
        return std::abs(at(a) + at(b) + at(c)) <= tol * m;
    }
};

DiagramAssignment labels(std::initializer_list<int> idx)
{
    DiagramAssignment a;
    for (int i : idx) a.push_back(i + 1);
    return a;
}

}  // namespace

bool nearly_equal(double a, double b, double tol, double floor)
{
    return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), floor});
}

Totals totals(const Vorticities& g)
{
    return {g.total(), g.angular_momentum()};
}

NecessaryConditions necessary_conditions(const Vorticities& g, const AnalysisTolerances& tol)
{
    double max_pair = 0.0;
    for (int j = 0; j < 4; ++j)
        for (int k = j + 1; k < 4; ++k) max_pair = std::max(max_pair, std::abs(g[j] * g[k]));
    NecessaryConditions nc;
    nc.equilibria_possible = std::abs(g.angular_momentum()) <= tol.exact * max_pair;
    nc.translating_possible = std::abs(g.total()) <= tol.exact * g.max_abs();
    return nc;
}

ExceptionalFlags exceptional_flags(const Vorticities& g, const AnalysisTolerances& tol)
{
    const double root3 = std::sqrt(3.0);
    const std::array<double, 2> special{root3 - 2.0, -root3 - 2.0};

    ExceptionalFlags f;
    for (const auto& s : kPairSplits) {
        const double ga = g[s[0]], gb = g[s[1]], gc = g[s[2]], gd = g[s[3]];
        if (!nearly_equal(ga, gb, tol.ratio) || !nearly_equal(gc, gd, tol.ratio)) continue;
        for (double r : special)
            if (nearly_equal(gc / ga, r, tol.ratio)) f.sqrt3 = true;
    }
    for (int odd = 0; odd < 4; ++odd) {
        std::array<int, 3> rest{};
        int k = 0;
        for (int i = 0; i < 4; ++i)
            if (i != odd) rest[static_cast<std::size_t>(k++)] = i;
        const double target = -0.5 * g[odd];
        bool all = true;
        for (int i : rest) all = all && nearly_equal(g[i], target, tol.ratio);
        if (all) f.minus_half = true;
    }
    return f;
}

const std::vector<std::string>& diagram_names()
{
    static const std::vector<std::string> names{"I", "II", "III_A", "III_B", "III'", "IV",
                                                "V", "VI", "VII", "VIII", "IX"};
    return names;
}

DiagramCompat diagram_constraints(const Vorticities& g, const AnalysisTolerances& tol)
{
    double max_pair = 0.0;
    for (int j = 0; j < 4; ++j)
        for (int k = j + 1; k < 4; ++k) max_pair = std::max(max_pair, std::abs(g[j] * g[k]));
    const Context cx{g, tol.ratio, g.total(), g.angular_momentum(), max_pair};
    const bool L0 = cx.zero_L();
    const bool G0 = cx.zero_gamma();

    DiagramCompat out;
    auto record = [&out](const std::string& name, DiagramAssignment a) { out[name].push_back(std::move(a)); };

    for (const auto& s : kPairSplits) {
        const int a = s[0], b = s[1], c = s[2], d = s[3];
        // I: pairs {a,b}, {c,d}
        if (cx.product_eq(a, b, c, d) && L0 && !G0 && !cx.sum_zero(g[a], g[b]) && !cx.sum_zero(g[c], g[d]))
            record("I", labels({a, b, c, d}));
        // III_A and III_B use pairs {a,c}, {b,d}; label order (a, b, c, d) with a,c paired.
        const int p = a, q = c, r = b, t = d;
        if (cx.product_eq(p, r, q, t) && !G0) record("III_A", labels({p, q, r, t}));
        if (cx.equal(p, r) && cx.equal(q, t) && G0 && !L0) record("III_B", labels({p, q, r, t}));
        // III' and IV: Gamma_a + Gamma_b = 0 and Gamma_c + Gamma_d = 0
        if (cx.sum_zero(g[a], g[b]) && cx.sum_zero(g[c], g[d]) && G0 && !L0) {
            record("III'", labels({a, b, c, d}));
            record("IV", labels({a, b, c, d}));
        }
    }
    if (L0 && !G0) record("II", {});
    if (G0 && !L0) record("V", {});

    for (int skip = 3; skip >= 0; --skip) {
        std::array<int, 3> tri{};
        int k = 0;
        for (int i = 0; i < 4; ++i)
            if (i != skip) tri[static_cast<std::size_t>(k++)] = i;
        const int a = tri[0], b = tri[1], c = tri[2];
        if (cx.reciprocal_sum_zero(a, b, c) && !L0 && !G0) {
            record("VI", labels({a, b, c}));
            record("IX", labels({a, b, c}));
        }
        if (cx.triple_sum_zero(a, b, c) && !L0 && !G0) record("VII", labels({a, b, c}));
        // VIII: the third triple member equals the excluded vortex.
        for (int m = 0; m < 3; ++m) {
            const int cc = tri[static_cast<std::size_t>(m)];
            const int aa = tri[static_cast<std::size_t>((m + 1) % 3)];
            const int bb = tri[static_cast<std::size_t>((m + 2) % 3)];
            if (cx.reciprocal_sum_zero(aa, bb, cc) && cx.equal(cc, skip) && !L0 && !G0)
                record("VIII", labels({std::min(aa, bb), std::max(aa, bb), cc, skip}));
        }
    }
    return out;
}

bool VorticityReport::finiteness_certificate() const
{
    return diagram_compat.empty();
}

VorticityReport analyze(const Vorticities& g, const AnalysisTolerances& tol)
{
    VorticityReport r;
    const auto t = totals(g);
    r.gamma_total = t.gamma;
    r.L = t.L;
    const auto nc = necessary_conditions(g, tol);
    r.equilibria_possible = nc.equilibria_possible;
    r.translating_possible = nc.translating_possible;
    const auto ex = exceptional_flags(g, tol);
    r.exceptional_sqrt3 = ex.sqrt3;
    r.exceptional_minus_half = ex.minus_half;
    r.diagram_compat = diagram_constraints(g, tol);
    return r;
}

}  // namespace vortex4
