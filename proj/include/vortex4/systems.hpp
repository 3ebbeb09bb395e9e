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

#ifndef VORTEX4_SYSTEMS_HPP
#define VORTEX4_SYSTEMS_HPP

#include <array>
#include <string>
#include <vector>

#include "vortex4/core.hpp"
#include "vortex4/polynomial.hpp"

namespace vortex4 {

enum class SystemTag { relative_equilibrium, collinear, collapse, equilibrium, translating, zw_check };

std::string to_string(SystemTag tag);

/// Which polynomial family a system belongs to; `theta` is meaningful only for collapse.
struct SystemKind {
    SystemTag tag = SystemTag::relative_equilibrium;
    double theta = 0.0;
};

/// Polynomial building blocks over the variables (z_1..z_4, w_1..w_4).
///
/// When `collinear` is set the system has only the four z variables and every
/// w_j is replaced by z_j.
class SymbolTable {
public:
    SymbolTable(const Vorticities& g, bool collinear);

    int nvars() const { return collinear_ ? 4 : 8; }
    MultiPoly z(int n) const;
    MultiPoly w(int n) const;
    MultiPoly constant(Complex c) const { return MultiPoly::constant(nvars(), c); }

    MultiPoly M_z() const;
    MultiPoly M_w() const;
    MultiPoly I() const;
    MultiPoly F_z() const;
    MultiPoly F_w() const;
    MultiPoly f_z() const;
    MultiPoly f_w() const;
    MultiPoly G_z() const;
    MultiPoly G_w() const;
    MultiPoly g_z() const;
    MultiPoly g_w() const;

    /// All z_k - z_j (and w_k - w_j unless collinear), j < k.
    std::vector<MultiPoly> separations() const;
    std::vector<std::string> var_names() const;

private:
    Vorticities g_;
    bool collinear_;
};

PolySystem build_relative_equilibrium(const Vorticities& g, double lambda);
PolySystem build_collinear(const Vorticities& g);

/// Throws PreconditionError when L != 0 or Lambda = e^{i theta} is real.
PolySystem build_collapse(const Vorticities& g, double theta, double l_tol = 1e-12);

/// Unknowns (z_3, z_4) with z_1 = 0, z_2 = 1. Throws PreconditionError when L != 0.
PolySystem build_equilibrium(const Vorticities& g, double l_tol = 1e-12);
/// Unknowns (z_3, z_4) with z_1 = 0, z_2 = 1. Throws PreconditionError when Gamma != 0.
PolySystem build_translating(const Vorticities& g, double gamma_tol = 1e-12);

/// {M_z, I, F_z, G_z} restricted to w = z: the collinear system at infinity.
PolySystem build_collinear_at_infinity(const Vorticities& g);
/// The collapse system restricted to w = z. Because Lambda differs from its
/// conjugate this forces M_z = I = F_z = f_z = G_z = g_z = 0; the six
/// polynomials are returned (an overdetermined family).
std::vector<MultiPoly> collinear_collapse_equations(const Vorticities& g);

/// U_n = sum_{j != n} Gamma_j / (z_n - z_j); the conjugate of the induced velocity V_n.
Positions conjugate_velocities(const Positions& z, const Vorticities& g);

/// Full configuration (0, 1, z_3, z_4) from gauge-fixed unknowns.
Positions gauge_positions(const CVector& z34);

/// Raw residuals of the 14 separation-reciprocal equations with independent
/// multipliers for the z- and w-halves (lambda_bar = 1/lambda when |lambda| = 1).
std::array<Complex, 14> zw_residuals(const Positions& z, const Positions& w, const Vorticities& g, Complex lambda,
                                     Complex lambda_bar);

/// Scaling weight of each zw residual under (z, w, lambda, lambda_bar) ->
/// (a z, a w, lambda / a^2, lambda_bar / a^2).
const std::array<int, 14>& zw_residual_weights();

/// Max |residual| over the 14 equations, using cfg.lambda and 1/cfg.lambda.
/// Throws CollisionError when some |z_jk| or |w_jk| < 1e-12 * scale.
double build_zw_residual(const Configuration& cfg, const Vorticities& g);

}  // namespace vortex4

#endif  // VORTEX4_SYSTEMS_HPP
