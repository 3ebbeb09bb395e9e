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

#ifndef VORTEX4_DYNAMICS_HPP
#define VORTEX4_DYNAMICS_HPP

#include <ostream>
#include <vector>

#include "vortex4/core.hpp"

namespace vortex4 {

/// dz_n/dt = -i V_n with V_n = sum_{j != n} Gamma_j / conj(z_n - z_j).
/// Throws CollisionError when two vortices coincide.
Positions vortex_rhs(const Positions& z, const Vorticities& g);

/// H = -sum_{j<k} Gamma_j Gamma_k ln r_jk.
double hamiltonian(const Positions& z, const Vorticities& g);
/// M = sum Gamma_j z_j.
Complex vorticity_moment(const Positions& z, const Vorticities& g);
/// I = sum Gamma_j |z_j|^2.
double angular_impulse(const Positions& z, const Vorticities& g);

double min_separation(const Positions& z);
double max_separation(const Positions& z);

struct Trajectory {
    std::vector<double> times;
    std::vector<Positions> positions;
    std::vector<double> H;
    std::vector<Complex> M;
    std::vector<double> I;
    double dt = 0.0;
    /// Integration stopped early because two vortices came too close.
    bool collision_approach = false;
};

struct IntegrateOptions {
    /// Stop when the minimum separation drops below this fraction of the
    /// initial maximum separation.
    double stop_ratio = 1e-6;
    /// Keep every k-th step (the final state is always kept).
    int sample_every = 1;
};

/// One classical RK4 step of size h. No step-size check.
Positions rk4_step(const Positions& z, const Vorticities& g, double h);

/// Largest dt accepted by integrate(): 1e-3 * (min initial separation)^2 / max |Gamma|.
double max_stable_dt(const Positions& z0, const Vorticities& g);

/// Fixed-step RK4 from t = 0 to T. Throws PreconditionError when dt exceeds
/// max_stable_dt() or T, dt are not positive, CollisionError for colliding data.
Trajectory integrate(const Positions& z0, const Vorticities& g, double T, double dt, const IntegrateOptions& opts = {});

/// max over samples and pairs of |z_jk(t)/z_12(t) - z_jk(0)/z_12(0)|.
double homographic_deviation(const Trajectory& traj);

struct AffineFit {
    double intercept = 0.0;
    double slope = 0.0;
    double residual = 0.0;  ///< max |data - fit|
};

/// Least-squares line through (t, r_12(t)^2 / r_12(0)^2).
AffineFit squared_distance_fit(const Trajectory& traj);

/// Outcome of integrating a stationary configuration and testing the motion
/// its kind predicts. Unused measurements stay at zero.
struct StationaryCheck {
    double T = 0.0;
    double dt = 0.0;
    double homographic = 0.0;
    /// Relative drift of |z_n| (relative equilibria).
    double radius_drift = 0.0;
    /// Max deviation of r_12^2 / r_12(0)^2 from its affine fit (collapse).
    double affine_residual = 0.0;
    /// ||z(T) - z(0) - T dz/dt(0)||_inf (translation) or ||z(T) - z(0)||_inf (equilibrium).
    double displacement_defect = 0.0;
    double drift_H = 0.0;
    double drift_I = 0.0;
    double drift_M = 0.0;
    bool collision_approach = false;
    bool passed = false;
};

/// Integrates cfg.z and checks rigid rotation, self-similar collapse, rigid
/// translation or rest according to cfg.kind. Collapse runs are stopped at a
/// quarter of the predicted collapse time or at T = 1, whichever is first.
StationaryCheck verify_stationary(const Configuration& cfg, const Vorticities& g, double tol = 1e-6);

/// Columns t, Re z_1, Im z_1, ..., Re z_4, Im z_4, H, I.
void write_csv(std::ostream& os, const Trajectory& traj);

}  // namespace vortex4

#endif  // VORTEX4_DYNAMICS_HPP
