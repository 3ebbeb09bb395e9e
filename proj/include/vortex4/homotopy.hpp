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

#ifndef VORTEX4_HOMOTOPY_HPP
#define VORTEX4_HOMOTOPY_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vortex4/core.hpp"
#include "vortex4/polynomial.hpp"

namespace vortex4 {

/// Path tracker settings. Step sizes are in the homotopy parameter t in [0, 1].
struct TrackOptions {
    std::uint64_t seed = 1;
    double initial_step = 0.05;
    double min_step = 1e-7;
    double newton_tol = 1e-12;
    double track_tol = 1e-10;
    int max_newton_iters = 10;
    double divergence_cutoff = 1e10;
    double endgame_start = 0.95;
    double dedup_radius = 1e-6;

    /// Throws std::invalid_argument unless min_step < initial_step and all tolerances are positive.
    void validate() const;
};

enum class PathStatus { converged, at_infinity, failed };

std::string to_string(PathStatus s);

struct PathResult {
    CVector endpoint;
    PathStatus status = PathStatus::failed;
    double final_t = 0.0;
    /// max_i |F_i(x)| / scale^{deg F_i} at the endpoint, scale = max(1, |x|_inf).
    double residual = 0.0;
    int newton_steps_total = 0;
    /// Ratio of extreme singular values of the target Jacobian at the endpoint.
    double condition_estimate = 0.0;
    int steps = 0;
};

struct Solution {
    CVector point;
    int multiplicity = 1;
    double residual = 0.0;
    bool is_collision = false;
    double condition_estimate = 0.0;
};

struct SolutionSet {
    std::vector<Solution> solutions;
    int n_paths = 0;
    int n_at_infinity = 0;
    int n_failed = 0;
    std::uint64_t seed = 0;
    std::vector<PathResult> paths;

    bool certified() const { return n_failed == 0; }
    int multiplicity_total() const;
    /// Solutions that do not vanish on a collision factor.
    std::vector<const Solution*> collision_free() const;
};

struct StartSystem {
    PolySystem system;
    std::vector<Complex> constants;
    std::vector<CVector> points;
};

/// x_i^{d_i} - c_i with seeded unit-modulus c_i; start points enumerate the
/// d_i-th roots lexicographically (first variable most significant).
StartSystem make_start_system(std::span<const int> degrees, std::uint64_t seed);
StartSystem make_start_system(std::span<const int> degrees, std::span<const Complex> constants);

/// Seeded unit-modulus constant used for the gamma trick.
Complex gamma_for_seed(std::uint64_t seed);

/// Newton refinement of F(x) = 0 with least-squares steps; stops when the
/// update stagnates. Returns the number of iterations used.
int newton_polish(const PolySystem& f, CVector& x, int max_iters = 60, double tol = 1e-15);

/// Scaled residual max_i |F_i(x)| / scale^{deg F_i}.
double scaled_residual(const PolySystem& f, const CVector& x);

/// Tracks H(x, t) = (1 - t) gamma G(x) + t F(x) from t = 0 to t = 1, where
/// gamma = gamma_for_seed(opts.seed).
PathResult track_path(const PolySystem& target, const PolySystem& start, const CVector& x0, const TrackOptions& opts);

/// Same, with an explicit gamma.
PathResult track_path(const PolySystem& target, const PolySystem& start, const CVector& x0, const TrackOptions& opts,
                      Complex gamma);

/// Straight-line parameter continuation from a solution of `from` to the
/// corresponding solution of `to` (no gamma, no endgame). Both systems must
/// share their monomial structure closely enough for the segment to be regular.
PathResult continue_solution(const PolySystem& from, const PolySystem& to, const CVector& x0,
                             const TrackOptions& opts);

/// Total-degree homotopy solve: every path tracked, endpoints clustered.
SolutionSet solve(const PolySystem& sys, const TrackOptions& opts = {});

/// Square system built from `n` seeded random linear combinations of `polys`.
PolySystem randomize_system(const std::vector<MultiPoly>& polys, int n, std::uint64_t seed);

/// Sort key comparator used to order points reproducibly.
bool canonical_less(const CVector& a, const CVector& b);

}  // namespace vortex4

#endif  // VORTEX4_HOMOTOPY_HPP
