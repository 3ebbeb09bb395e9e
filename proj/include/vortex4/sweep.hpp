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

#ifndef VORTEX4_SWEEP_HPP
#define VORTEX4_SWEEP_HPP

#include <vector>

#include "vortex4/core.hpp"
#include "vortex4/homotopy.hpp"

namespace vortex4 {

/// Grid of collapse multipliers Lambda = e^{i theta}.
///
/// `points` values in total, half spread evenly over [clamp, pi - clamp] and half over
/// [pi + clamp, 2 pi - clamp]. The grid is symmetric under theta -> 2 pi - theta.
struct ThetaGrid {
    int points = 720;
    double clamp = 1e-3;

    void validate() const;
    std::vector<double> values() const;
};

struct SweepOptions {
    ThetaGrid grid;
    TrackOptions track;
    /// Local minima of sigma below this are refined.
    double refine_threshold = 1e-3;
    /// Refinement stops when the theta bracket is narrower than this.
    double theta_tol = 1e-10;
    /// Refined points with sigma at or below this are reported as real.
    double real_tol = 1e-8;
};

struct SweepSample {
    double theta = 0.0;
    /// min over continued solutions of ||w - conj(z)||_inf / scale; +inf when none.
    double sigma = 0.0;
    int n_solutions = 0;
    bool reanchored = false;
};

/// A real collapse configuration located by the sweep, either directly at a
/// grid point or by refining a near-real local minimum of the defect.
struct RealCollapse {
    double theta = 0.0;
    CVector point;
    double sigma = 0.0;
    double residual = 0.0;
    bool refined = false;

    Configuration configuration() const;
};

struct CollapseSweep {
    SolutionSet anchor_upper;  // total-degree solve at theta = pi / 2
    SolutionSet anchor_lower;  // total-degree solve at theta = 3 pi / 2
    std::vector<SweepSample> samples;
    std::vector<RealCollapse> real;
    int reanchors = 0;
    bool certified = true;
};

/// ||w - conj(z)||_inf / scale for a point (z_1..z_4, w_1..w_4).
double conjugacy_defect(const CVector& x);

/// Continues the collision-free collapse solutions in theta from anchors at
/// pi/2 and 3pi/2 across the grid. Every solution that is real at a grid point
/// is reported; isolated near-real minima are refined in theta.
/// Throws PreconditionError when L != 0.
CollapseSweep sweep_collapse(const Vorticities& g, const SweepOptions& opts = {});

}  // namespace vortex4

#endif  // VORTEX4_SWEEP_HPP
