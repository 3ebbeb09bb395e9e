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

#ifndef VORTEX4_CLASSIFY_HPP
#define VORTEX4_CLASSIFY_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vortex4/core.hpp"
#include "vortex4/homotopy.hpp"
#include "vortex4/systems.hpp"

namespace vortex4 {

/// A solution set failed an internal consistency check (e.g. an unpaired
/// solution under negation, which signals a missed path).
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct ClassifyTolerances {
    double real = 1e-8;        ///< ||w - conj(z)||_inf / scale
    double collinear = 1e-8;   ///< |Im(z_jk / z_12)|
    double pairing = 1e-8;     ///< ||x + y||_inf / scale for a negation pair
    double invariant = 1e-8;   ///< M, Lambda I - L, I (relative to scale, scale^2)
    double s_invariant = 1e-7; ///< S for collapse (relative to scale^2)
    double velocity = 1e-8;    ///< |U_n| for equilibria, spread of U_n for translation
    bool require_certified = true;
};

struct InvariantReport {
    Complex M_z{};
    Complex M_w{};
    Complex I{};
    Complex S{};
    Complex lambda_I_minus_L{};
};

struct ClassifiedSolution {
    CVector point;
    Configuration config;
    int multiplicity = 1;
    bool is_real = false;
    /// Defined only for real solutions.
    std::optional<bool> is_collinear;
    /// Solutions x and -x share an id; gauge-fixed kinds give every solution its own id.
    int pair_id = 0;
    double residual_primary = 0.0;
    /// Independent check: zw residual for Lambda systems, velocity condition otherwise.
    double residual_zw = 0.0;
    InvariantReport invariants;
};

struct CountSummary {
    int raw = 0;
    int configurations = 0;
    int real = 0;
    int real_configurations = 0;
    /// Among real configurations.
    int collinear = 0;
    int strictly_planar = 0;
    /// Real configurations up to reflection z -> conj(z); gauge-fixed kinds only.
    std::optional<int> mirror_classes;
    int collision_endpoints = 0;
    int at_infinity = 0;
    int failed = 0;

    CountSummary& operator+=(const CountSummary& o);
};

struct Rejection {
    CVector point;
    std::string reason;
};

struct Classification {
    SystemTag tag = SystemTag::relative_equilibrium;
    Complex lambda{1.0, 0.0};
    std::vector<ClassifiedSolution> solutions;
    std::vector<Rejection> rejected;
    CountSummary counts;
    bool certified = true;
};

/// Real configurations satisfy w = conj(z) up to tol relative to scale.
bool is_real_configuration(const Configuration& cfg, double tol = 1e-8);

/// True iff every separation ratio z_jk / z_12 is real to tol.
/// Throws std::invalid_argument for non-real configurations.
bool is_collinear(const Configuration& cfg, double tol = 1e-8, double real_tol = 1e-8);

InvariantReport verify_invariants(const Configuration& cfg, const Vorticities& g);

/// Checks the kind-specific contract; returns a diagnostic on violation.
std::optional<std::string> check_contract(const Configuration& cfg, const InvariantReport& rep, const Vorticities& g,
                                          const ClassifyTolerances& tol = {});

/// Maps a solver point of the given system to a configuration.
Configuration to_configuration(const CVector& x, const SystemKind& kind, Complex lambda);

/// Classifies the collision-free solutions of `set`.
/// Throws PreconditionError when the set is uncertified and tol.require_certified
/// is set, and ConsistencyError when a Lambda-system solution has no negation partner.
Classification classify(const SolutionSet& set, const Vorticities& g, const SystemKind& kind, Complex lambda,
                        const ClassifyTolerances& tol = {});

/// The image of a solved set under x -> factor * x with every collision-free
/// point Newton-polished on `target`. Collision flags and path statistics are
/// copied, which is valid because collision factors are homogeneous. Throws
/// ConsistencyError when an image does not polish to a solution of `target`
/// within tol (scaled residual).
SolutionSet image_solution_set(const SolutionSet& set, const PolySystem& target, Complex factor, double tol = 1e-8);

/// Number of points of `from` with no partner in `to` under x -> factor * x.
int unmatched_under_scaling(const std::vector<ClassifiedSolution>& from, const std::vector<ClassifiedSolution>& to,
                            Complex factor, double tol = 1e-8);

}  // namespace vortex4

#endif  // VORTEX4_CLASSIFY_HPP
