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

#include "vortex4/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace vortex4 {

namespace {

constexpr std::array<std::pair<int, int>, 6> kPairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

bool gauge_fixed(SystemTag tag) { return tag == SystemTag::equilibrium || tag == SystemTag::translating; }

double max_abs(const Positions& p) { return p.cwiseAbs().maxCoeff(); }

double velocity_check(const Configuration& cfg, const Vorticities& g)
{
    const Positions U = conjugate_velocities(cfg.z, g);
    if (cfg.kind == ConfigKind::equilibrium) return max_abs(U);
    const Complex mean = U.mean();
    return (U.array() - mean).abs().maxCoeff();
}

std::string format_value(const char* name, double value, double bound)
{
    std::ostringstream os;
    os << name << " = " << value << " exceeds " << bound;
    return os.str();
}

}  // namespace

CountSummary& CountSummary::operator+=(const CountSummary& o)
{
    raw += o.raw;
    configurations += o.configurations;
    real += o.real;
    real_configurations += o.real_configurations;
    collinear += o.collinear;
    strictly_planar += o.strictly_planar;
    if (mirror_classes || o.mirror_classes) mirror_classes = mirror_classes.value_or(0) + o.mirror_classes.value_or(0);
    collision_endpoints += o.collision_endpoints;
    at_infinity += o.at_infinity;
    failed += o.failed;
    return *this;
}

bool is_real_configuration(const Configuration& cfg, double tol)
{
    return max_abs(cfg.w - cfg.z.conjugate()) <= tol * cfg.scale();
}

bool is_collinear(const Configuration& cfg, double tol, double real_tol)
{
    if (!is_real_configuration(cfg, real_tol))
        throw std::invalid_argument("is_collinear: collinearity is defined only for real configurations");
    const Complex z12 = cfg.z(0) - cfg.z(1);
    if (std::abs(z12) == 0.0) throw CollisionError("is_collinear: z_1 = z_2");
    for (const auto& [j, k] : kPairs)
        if (std::abs(((cfg.z(j) - cfg.z(k)) / z12).imag()) > tol) return false;
    return true;
}

InvariantReport verify_invariants(const Configuration& cfg, const Vorticities& g)
{
    InvariantReport r;
    for (int n = 0; n < 4; ++n) {
        r.M_z += g[n] * cfg.z(n);
        r.M_w += g[n] * cfg.w(n);
        r.I += g[n] * cfg.z(n) * cfg.w(n);
    }
    r.S = g.total() * r.I - r.M_z * r.M_w;
    r.lambda_I_minus_L = cfg.lambda * r.I - g.angular_momentum();
    return r;
}

std::optional<std::string> check_contract(const Configuration& cfg, const InvariantReport& rep, const Vorticities& g,
                                          const ClassifyTolerances& tol)
{
    const double scale = cfg.scale();
    const double gmax = g.max_abs();
    const double moment = tol.invariant * scale * gmax;
    const double quadratic = tol.invariant * scale * scale * gmax * gmax;
    switch (cfg.kind) {
    case ConfigKind::relative_equilibrium:
        if (std::abs(rep.M_z) > moment) return format_value("|M_z|", std::abs(rep.M_z), moment);
        if (std::abs(rep.M_w) > moment) return format_value("|M_w|", std::abs(rep.M_w), moment);
        if (std::abs(rep.lambda_I_minus_L) > quadratic)
            return format_value("|Lambda I - L|", std::abs(rep.lambda_I_minus_L), quadratic);
        if (std::abs(g.total()) <= 1e-12 * gmax && std::abs(g.angular_momentum()) > 1e-12 * gmax * gmax &&
            std::abs(rep.I) < tol.invariant)
            return std::string("Gamma = 0 and L != 0 but I vanishes");
        return std::nullopt;
    case ConfigKind::collapse: {
        if (std::abs(g.angular_momentum()) > 1e-12 * gmax * gmax) return std::string("collapse requires L = 0");
        if (std::abs(rep.M_z) > moment) return format_value("|M_z|", std::abs(rep.M_z), moment);
        if (std::abs(rep.M_w) > moment) return format_value("|M_w|", std::abs(rep.M_w), moment);
        const double ibound = tol.invariant * scale * scale * gmax;
        if (std::abs(rep.I) > ibound) return format_value("|I|", std::abs(rep.I), ibound);
        const double sbound = tol.s_invariant * scale * scale * gmax * gmax;
        if (std::abs(rep.S) > sbound) return format_value("|S|", std::abs(rep.S), sbound);
        return std::nullopt;
    }
    case ConfigKind::equilibrium: {
        const double v = velocity_check(cfg, g);
        if (v > tol.velocity) return format_value("max |U_n|", v, tol.velocity);
        return std::nullopt;
    }
    case ConfigKind::translating: {
        const double v = velocity_check(cfg, g);
        if (v > tol.velocity) return format_value("spread of U_n", v, tol.velocity);
        if (std::abs(conjugate_velocities(cfg.z, g)(0)) <= tol.velocity)
            return std::string("common velocity vanishes");
        return std::nullopt;
    }
    }
    return std::nullopt;
}

Configuration to_configuration(const CVector& x, const SystemKind& kind, Complex lambda)
{
    Configuration c;
    c.lambda = lambda;
    switch (kind.tag) {
    case SystemTag::relative_equilibrium:
    case SystemTag::collapse:
    case SystemTag::zw_check:
        if (x.size() != 8) throw std::invalid_argument("to_configuration: expected 8 coordinates");
        c.z = x.head(4);
        c.w = x.tail(4);
        c.kind = kind.tag == SystemTag::collapse ? ConfigKind::collapse : ConfigKind::relative_equilibrium;
        break;
    case SystemTag::collinear: {
        if (x.size() != 4) throw std::invalid_argument("to_configuration: expected 4 coordinates");
        c.kind = ConfigKind::relative_equilibrium;
        c.z = x;
        const double scale = coordinate_scale(x);
        // A purely imaginary point is a real line configuration rotating the other way.
        if (x.real().cwiseAbs().maxCoeff() <= 1e-8 * scale && x.imag().cwiseAbs().maxCoeff() > 1e-8 * scale) {
            c.z = Complex(0.0, -1.0) * x;
            c.lambda = -lambda;
        }
        c.w = c.z;
        break;
    }
    case SystemTag::equilibrium:
    case SystemTag::translating:
        if (x.size() != 2) throw std::invalid_argument("to_configuration: expected 2 coordinates");
        c.z = gauge_positions(x);
        c.w = c.z.conjugate();
        c.lambda = 0.0;
        c.kind = kind.tag == SystemTag::equilibrium ? ConfigKind::equilibrium : ConfigKind::translating;
        break;
    }
    return c;
}

Classification classify(const SolutionSet& set, const Vorticities& g, const SystemKind& kind, Complex lambda,
                        const ClassifyTolerances& tol)
{
    if (tol.require_certified && !set.certified())
        throw PreconditionError("classify: solution set has failed paths and is uncertified");

    Classification out;
    out.tag = kind.tag;
    out.lambda = lambda;
    out.certified = set.certified();
    out.counts.at_infinity = set.n_at_infinity;
    out.counts.failed = set.n_failed;

    const bool fixed = gauge_fixed(kind.tag);
    std::vector<const Solution*> free;
    for (const auto& s : set.solutions) {
        if (s.is_collision)
            ++out.counts.collision_endpoints;
        else
            free.push_back(&s);
    }

    std::vector<int> pair(free.size(), -1);
    if (!fixed) {
        int next = 0;
        for (std::size_t a = 0; a < free.size(); ++a) {
            if (pair[a] >= 0) continue;
            const CVector& x = free[a]->point;
            const double scale = coordinate_scale(x);
            for (std::size_t b = a + 1; b < free.size(); ++b) {
                if (pair[b] >= 0) continue;
                if ((x + free[b]->point).cwiseAbs().maxCoeff() <= tol.pairing * scale) {
                    pair[a] = pair[b] = next++;
                    break;
                }
            }
            if (pair[a] < 0) throw ConsistencyError("classify: solution without a negation partner (missed path?)");
        }
    } else {
        std::iota(pair.begin(), pair.end(), 0);
    }

    for (std::size_t a = 0; a < free.size(); ++a) {
        ClassifiedSolution cs;
        cs.point = free[a]->point;
        cs.multiplicity = free[a]->multiplicity;
        cs.pair_id = pair[a];
        cs.residual_primary = free[a]->residual;
        cs.config = to_configuration(cs.point, kind, lambda);
        cs.invariants = verify_invariants(cs.config, g);
        if (auto why = check_contract(cs.config, cs.invariants, g, tol)) {
            out.rejected.push_back({cs.point, *why});
            continue;
        }
        cs.is_real = fixed || is_real_configuration(cs.config, tol.real);
        if (cs.is_real) cs.is_collinear = is_collinear(cs.config, tol.collinear, tol.real);
        cs.residual_zw = fixed ? velocity_check(cs.config, g) : build_zw_residual(cs.config, g);
        out.solutions.push_back(std::move(cs));
    }

    auto& c = out.counts;
    const int per_config = fixed ? 1 : 2;
    c.raw = static_cast<int>(out.solutions.size());
    int collinear = 0, planar = 0;
    for (const auto& s : out.solutions) {
        if (!s.is_real) continue;
        ++c.real;
        (*s.is_collinear ? collinear : planar) += 1;
    }
    c.configurations = c.raw / per_config;
    c.real_configurations = c.real / per_config;
    c.collinear = collinear / per_config;
    c.strictly_planar = planar / per_config;

    if (fixed) {
        std::vector<bool> seen(out.solutions.size(), false);
        int classes = 0;
        for (std::size_t a = 0; a < out.solutions.size(); ++a) {
            if (seen[a]) continue;
            seen[a] = true;
            ++classes;
            const CVector mirror = out.solutions[a].point.conjugate();
            const double scale = coordinate_scale(mirror);
            for (std::size_t b = a + 1; b < out.solutions.size(); ++b)
                if (!seen[b] && (out.solutions[b].point - mirror).cwiseAbs().maxCoeff() <= tol.pairing * scale)
                    seen[b] = true;
        }
        c.mirror_classes = classes;
    }
    return out;
}

SolutionSet image_solution_set(const SolutionSet& set, const PolySystem& target, Complex factor, double tol)
{
    SolutionSet out = set;
    for (auto& s : out.solutions) {
        s.point *= factor;
        if (s.is_collision) continue;
        newton_polish(target, s.point);
        s.residual = scaled_residual(target, s.point);
        if (!(s.residual <= tol)) throw ConsistencyError("image_solution_set: image is not a solution of the target");
    }
    for (auto& p : out.paths) p.endpoint *= factor;
    std::sort(out.solutions.begin(), out.solutions.end(),
              [](const Solution& a, const Solution& b) { return canonical_less(a.point, b.point); });
    return out;
}

int unmatched_under_scaling(const std::vector<ClassifiedSolution>& from, const std::vector<ClassifiedSolution>& to,
                            Complex factor, double tol)
{
    int missing = 0;
    for (const auto& a : from) {
        const CVector image = factor * a.point;
        const double scale = coordinate_scale(image);
        const bool found = std::any_of(to.begin(), to.end(), [&](const ClassifiedSolution& b) {
            return b.point.size() == image.size() && (b.point - image).cwiseAbs().maxCoeff() <= tol * scale;
        });
        if (!found) ++missing;
    }
    return missing;
}

}  // namespace vortex4
