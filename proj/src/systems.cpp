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

#include "vortex4/systems.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <utility>

#include "vortex4/analysis.hpp"

namespace vortex4 {

namespace {

// Unordered pairs j < k in lexicographic order: 12, 13, 14, 23, 24, 34.
constexpr std::array<std::pair<int, int>, 6> kPairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

void require_zero_L(const Vorticities& g, double tol, const char* what)
{
    AnalysisTolerances t;
    t.exact = tol;
    if (!necessary_conditions(g, t).equilibria_possible) {
        std::ostringstream msg;
        msg << what << " requires total vortex angular momentum L = 0 (got L = " << g.angular_momentum() << ")";
        throw PreconditionError(msg.str());
    }
}

// Sum of c / (p_a - p_b) over gauge-fixed positions p = (0, 1, x_0, x_1),
// multiplied through by the product of its distinct non-constant denominators.
struct ReciprocalTerm {
    double coeff;
    int a;
    int b;
};

MultiPoly gauge_position(int n)
{
    if (n == 0) return MultiPoly::constant(2, 0.0);
    if (n == 1) return MultiPoly::constant(2, 1.0);
    return MultiPoly::variable(2, n - 2);
}

MultiPoly clear_denominators(const std::vector<ReciprocalTerm>& terms)
{
    // Canonical factor for the pair (lo, hi) is p_lo - p_hi.
    std::map<std::pair<int, int>, MultiPoly> factors;
    for (const auto& t : terms) {
        const int lo = std::min(t.a, t.b), hi = std::max(t.a, t.b);
        if (hi <= 1) continue;  // p_0 - p_1 = -1 is a constant
        factors.try_emplace({lo, hi}, gauge_position(lo) - gauge_position(hi));
    }
    MultiPoly out(2);
    for (const auto& t : terms) {
        const int lo = std::min(t.a, t.b), hi = std::max(t.a, t.b);
        const double sign = (t.a == lo) ? 1.0 : -1.0;
        MultiPoly num = MultiPoly::constant(2, Complex(sign * t.coeff, 0.0));
        if (hi <= 1) num *= Complex(-1.0, 0.0);  // divide by p_0 - p_1 = -1
        for (const auto& [key, f] : factors)
            if (key != std::make_pair(lo, hi)) num = num * f;
        out += num;
    }
    return out;
}

std::vector<ReciprocalTerm> velocity_terms(const Vorticities& g, int n, double sign)
{
    std::vector<ReciprocalTerm> t;
    for (int j = 0; j < 4; ++j)
        if (j != n) t.push_back({sign * g[j], n, j});
    return t;
}

std::vector<MultiPoly> gauge_collision_factors()
{
    std::vector<MultiPoly> c;
    for (const auto& [j, k] : kPairs) {
        if (k <= 1) continue;
        c.push_back(gauge_position(k) - gauge_position(j));
    }
    return c;
}

}  // namespace

std::string to_string(SystemTag tag)
{
    switch (tag) {
    case SystemTag::relative_equilibrium: return "relative_equilibrium";
    case SystemTag::collinear: return "collinear";
    case SystemTag::collapse: return "collapse";
    case SystemTag::equilibrium: return "equilibrium";
    case SystemTag::translating: return "translating";
    case SystemTag::zw_check: return "zw_check";
    }
    return "unknown";
}

SymbolTable::SymbolTable(const Vorticities& g, bool collinear) : g_(g), collinear_(collinear) {}

MultiPoly SymbolTable::z(int n) const
{
    return MultiPoly::variable(nvars(), n);
}

MultiPoly SymbolTable::w(int n) const
{
    return MultiPoly::variable(nvars(), collinear_ ? n : 4 + n);
}

MultiPoly SymbolTable::M_z() const
{
    MultiPoly p(nvars());
    for (int j = 0; j < 4; ++j) p += g_[j] * z(j);
    return p;
}

MultiPoly SymbolTable::M_w() const
{
    MultiPoly p(nvars());
    for (int j = 0; j < 4; ++j) p += g_[j] * w(j);
    return p;
}

MultiPoly SymbolTable::I() const
{
    MultiPoly p(nvars());
    for (int j = 0; j < 4; ++j) p += g_[j] * (z(j) * w(j));
    return p;
}

MultiPoly SymbolTable::F_z() const
{
    MultiPoly p(nvars());
    for (int j = 0; j < 4; ++j) p += g_[j] * (z(j) * z(j) * w(j));
    return p;
}

MultiPoly SymbolTable::F_w() const
{
    MultiPoly p(nvars());
    for (int j = 0; j < 4; ++j) p += g_[j] * (z(j) * w(j) * w(j));
    return p;
}

MultiPoly SymbolTable::f_z() const
{
    MultiPoly p(nvars());
    for (const auto& [j, k] : kPairs) p += (g_[j] * g_[k]) * (z(j) + z(k));
    return p;
}

MultiPoly SymbolTable::f_w() const
{
    MultiPoly p(nvars());
    for (const auto& [j, k] : kPairs) p += (g_[j] * g_[k]) * (w(j) + w(k));
    return p;
}

MultiPoly SymbolTable::G_z() const
{
    MultiPoly p(nvars());
    for (int n = 0; n < 4; ++n) {
        MultiPoly t = g_[n] * w(n);
        for (int j = 0; j < 4; ++j)
            if (j != n) t = t * z(j);
        p += t;
    }
    return p;
}

MultiPoly SymbolTable::G_w() const
{
    MultiPoly p(nvars());
    for (int n = 0; n < 4; ++n) {
        MultiPoly t = g_[n] * z(n);
        for (int j = 0; j < 4; ++j)
            if (j != n) t = t * w(j);
        p += t;
    }
    return p;
}

MultiPoly SymbolTable::g_z() const
{
    MultiPoly p(nvars());
    for (const auto& [j, k] : kPairs) {
        int l = -1, m = -1;
        for (int i = 0; i < 4; ++i) {
            if (i == j || i == k) continue;
            (l < 0 ? l : m) = i;
        }
        p += (g_[j] * g_[k]) * (z(l) * z(m));
    }
    return p;
}

MultiPoly SymbolTable::g_w() const
{
    MultiPoly p(nvars());
    for (const auto& [j, k] : kPairs) {
        int l = -1, m = -1;
        for (int i = 0; i < 4; ++i) {
            if (i == j || i == k) continue;
            (l < 0 ? l : m) = i;
        }
        p += (g_[j] * g_[k]) * (w(l) * w(m));
    }
    return p;
}

std::vector<MultiPoly> SymbolTable::separations() const
{
    std::vector<MultiPoly> s;
    for (const auto& [j, k] : kPairs) s.push_back(z(k) - z(j));
    if (!collinear_)
        for (const auto& [j, k] : kPairs) s.push_back(w(k) - w(j));
    return s;
}

std::vector<std::string> SymbolTable::var_names() const
{
    std::vector<std::string> v{"z1", "z2", "z3", "z4"};
    if (!collinear_) v.insert(v.end(), {"w1", "w2", "w3", "w4"});
    return v;
}

PolySystem build_relative_equilibrium(const Vorticities& g, double lambda)
{
    if (std::abs(std::abs(lambda) - 1.0) > 1e-12)
        throw std::invalid_argument("build_relative_equilibrium: lambda must be +1 or -1");
    const SymbolTable s(g, false);
    const Complex lam(lambda, 0.0);
    std::vector<MultiPoly> eqs{
        s.M_z(),
        s.M_w(),
        s.constant(g.angular_momentum()) - lam * s.I(),
        (s.z(1) - s.z(0)) - (s.w(1) - s.w(0)),
        lam * s.F_z() - s.f_z(),
        lam * s.F_w() - s.f_w(),
        lam * s.G_z() + s.g_z(),
        lam * s.G_w() + s.g_w(),
    };
    return PolySystem(std::move(eqs), s.var_names(),
                      "translation: M_z = M_w = 0; rotation: z2 - z1 = w2 - w1; scale: |Lambda| = 1", s.separations());
}

PolySystem build_collinear(const Vorticities& g)
{
    const SymbolTable s(g, true);
    std::vector<MultiPoly> eqs{
        s.M_z(),
        s.constant(g.angular_momentum()) - s.I(),
        s.F_z() - s.f_z(),
        s.G_z() + s.g_z(),
    };
    return PolySystem(std::move(eqs), s.var_names(), "w = z; translation: M_z = 0; scale: Lambda = 1",
                      s.separations());
}

PolySystem build_collapse(const Vorticities& g, double theta, double l_tol)
{
    require_zero_L(g, l_tol, "collapse system");
    const double r = std::remainder(theta, std::numbers::pi);
    if (std::abs(r) < 1e-6)
        throw PreconditionError("collapse system requires Im(Lambda) != 0; theta must avoid 0 and pi");
    const SymbolTable s(g, false);
    const Complex lam = std::polar(1.0, theta);
    const Complex lam_bar = std::conj(lam);
    std::vector<MultiPoly> eqs{
        s.M_z(),
        s.M_w(),
        s.I(),
        (s.z(1) - s.z(0)) - (s.w(1) - s.w(0)),
        lam_bar * s.F_z() - s.f_z(),
        lam * s.F_w() - s.f_w(),
        lam_bar * s.G_z() + s.g_z(),
        lam * s.G_w() + s.g_w(),
    };
    return PolySystem(std::move(eqs), s.var_names(),
                      "translation: M_z = M_w = 0; rotation: z2 - z1 = w2 - w1; scale: |Lambda| = 1", s.separations());
}

PolySystem build_equilibrium(const Vorticities& g, double l_tol)
{
    require_zero_L(g, l_tol, "equilibrium system");
    std::vector<MultiPoly> eqs{clear_denominators(velocity_terms(g, 2, 1.0)),
                               clear_denominators(velocity_terms(g, 3, 1.0))};
    return PolySystem(std::move(eqs), {"z3", "z4"}, "z1 = 0, z2 = 1", gauge_collision_factors());
}

PolySystem build_translating(const Vorticities& g, double gamma_tol)
{
    AnalysisTolerances t;
    t.exact = gamma_tol;
    if (!necessary_conditions(g, t).translating_possible) {
        std::ostringstream msg;
        msg << "translating system requires total vorticity Gamma = 0 (got Gamma = " << g.total() << ")";
        throw PreconditionError(msg.str());
    }
    std::vector<MultiPoly> eqs;
    for (int n : {2, 3}) {
        auto terms = velocity_terms(g, n, 1.0);
        const auto first = velocity_terms(g, 0, -1.0);
        terms.insert(terms.end(), first.begin(), first.end());
        eqs.push_back(clear_denominators(terms));
    }
    return PolySystem(std::move(eqs), {"z3", "z4"}, "z1 = 0, z2 = 1", gauge_collision_factors());
}

PolySystem build_collinear_at_infinity(const Vorticities& g)
{
    const SymbolTable s(g, true);
    std::vector<MultiPoly> eqs{s.M_z(), s.I(), s.F_z(), s.G_z()};
    return PolySystem(std::move(eqs), s.var_names(), "w = z; homogeneous part of the collinear system",
                      s.separations());
}

std::vector<MultiPoly> collinear_collapse_equations(const Vorticities& g)
{
    const SymbolTable s(g, true);
    return {s.M_z(), s.I(), s.F_z(), s.f_z(), s.G_z(), s.g_z()};
}

Positions conjugate_velocities(const Positions& z, const Vorticities& g)
{
    Positions u = Positions::Zero();
    for (int n = 0; n < 4; ++n)
        for (int j = 0; j < 4; ++j) {
            if (j == n) continue;
            const Complex d = z(n) - z(j);
            if (d == Complex(0.0, 0.0)) throw CollisionError("conjugate_velocities: vortices coincide");
            u(n) += g[j] / d;
        }
    return u;
}

Positions gauge_positions(const CVector& z34)
{
    if (z34.size() != 2) throw std::invalid_argument("gauge_positions: expected (z3, z4)");
    Positions p;
    p << Complex(0.0, 0.0), Complex(1.0, 0.0), z34(0), z34(1);
    return p;
}

std::array<Complex, 14> zw_residuals(const Positions& z, const Positions& w, const Vorticities& g, Complex lambda,
                                     Complex lambda_bar)
{
    // Antisymmetric reciprocal separations: Z(j,k) = 1 / (w_k - w_j), W(j,k) = 1 / (z_k - z_j).
    Eigen::Matrix<Complex, 4, 4> Z = Eigen::Matrix<Complex, 4, 4>::Zero();
    Eigen::Matrix<Complex, 4, 4> W = Eigen::Matrix<Complex, 4, 4>::Zero();
    for (const auto& [j, k] : kPairs) {
        Z(j, k) = 1.0 / (w(k) - w(j));
        Z(k, j) = -Z(j, k);
        W(j, k) = 1.0 / (z(k) - z(j));
        W(k, j) = -W(j, k);
    }
    // A(X)_{ab} = sum_{j != b} G_j X_{jb} - sum_{j != a} G_j X_{ja}, i.e. the separation
    // of the induced field between vortices a and b.
    auto field_sep = [&g](const Eigen::Matrix<Complex, 4, 4>& X, int a, int b) {
        Complex s(0.0, 0.0);
        for (int j = 0; j < 4; ++j) {
            if (j != b) s += g[j] * X(j, b);
            if (j != a) s -= g[j] * X(j, a);
        }
        return s;
    };
    std::array<Complex, 14> r{};
    for (std::size_t p = 0; p < kPairs.size(); ++p) {
        const auto [a, b] = kPairs[p];
        r[p] = Z(a, b) * field_sep(W, a, b) - lambda_bar;
        r[p + 6] = W(a, b) * field_sep(Z, a, b) - lambda;
    }
    r[12] = field_sep(Z, 0, 1) - (lambda / lambda_bar) * field_sep(W, 0, 1);
    r[13] = Z(0, 1) - W(0, 1);
    return r;
}

const std::array<int, 14>& zw_residual_weights()
{
    static const std::array<int, 14> weights{-2, -2, -2, -2, -2, -2, -2, -2, -2, -2, -2, -2, -1, -1};
    return weights;
}

double build_zw_residual(const Configuration& cfg, const Vorticities& g)
{
    const double tol = 1e-12 * cfg.scale();
    for (const auto& [j, k] : kPairs)
        if (std::abs(cfg.z(k) - cfg.z(j)) < tol || std::abs(cfg.w(k) - cfg.w(j)) < tol)
            throw CollisionError("build_zw_residual: configuration has coinciding vortices");
    const auto r = zw_residuals(cfg.z, cfg.w, g, cfg.lambda, 1.0 / cfg.lambda);
    double m = 0.0;
    for (const auto& v : r) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace vortex4
