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

#include "vortex4/dynamics.hpp"

#include <cmath>
#include <iomanip>
#include <limits>

#include <Eigen/Dense>

namespace vortex4 {

Positions vortex_rhs(const Positions& z, const Vorticities& g)
{
    const Complex minus_i(0.0, -1.0);
    Positions dz = Positions::Zero();
    for (int n = 0; n < 4; ++n) {
        Complex v = 0.0;
        for (int j = 0; j < 4; ++j) {
            if (j == n) continue;
            const Complex d = z(n) - z(j);
            if (d == Complex(0.0)) throw CollisionError("vortex_rhs: coinciding vortices");
            v += g[j] / std::conj(d);
        }
        dz(n) = minus_i * v;
    }
    return dz;
}

double hamiltonian(const Positions& z, const Vorticities& g)
{
    double h = 0.0;
    for (int j = 0; j < 4; ++j)
        for (int k = j + 1; k < 4; ++k) h -= g[j] * g[k] * std::log(std::abs(z(j) - z(k)));
    return h;
}

Complex vorticity_moment(const Positions& z, const Vorticities& g)
{
    Complex m = 0.0;
    for (int n = 0; n < 4; ++n) m += g[n] * z(n);
    return m;
}

double angular_impulse(const Positions& z, const Vorticities& g)
{
    double s = 0.0;
    for (int n = 0; n < 4; ++n) s += g[n] * std::norm(z(n));
    return s;
}

double min_separation(const Positions& z)
{
    double d = std::numeric_limits<double>::infinity();
    for (int j = 0; j < 4; ++j)
        for (int k = j + 1; k < 4; ++k) d = std::min(d, std::abs(z(j) - z(k)));
    return d;
}

double max_separation(const Positions& z)
{
    double d = 0.0;
    for (int j = 0; j < 4; ++j)
        for (int k = j + 1; k < 4; ++k) d = std::max(d, std::abs(z(j) - z(k)));
    return d;
}

double max_stable_dt(const Positions& z0, const Vorticities& g)
{
    const double d = min_separation(z0);
    return 1e-3 * d * d / g.max_abs();
}

Positions rk4_step(const Positions& z, const Vorticities& g, double h)
{
    const Positions k1 = vortex_rhs(z, g);
    const Positions k2 = vortex_rhs(z + 0.5 * h * k1, g);
    const Positions k3 = vortex_rhs(z + 0.5 * h * k2, g);
    const Positions k4 = vortex_rhs(z + h * k3, g);
    return z + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Trajectory integrate(const Positions& z0, const Vorticities& g, double T, double dt, const IntegrateOptions& opts)
{
    if (!(T > 0.0) || !(dt > 0.0)) throw PreconditionError("integrate: T and dt must be positive");
    if (opts.sample_every < 1) throw std::invalid_argument("integrate: sample_every must be >= 1");
    if (min_separation(z0) == 0.0) throw CollisionError("integrate: initial data has coinciding vortices");
    if (dt > max_stable_dt(z0, g) * (1.0 + 1e-12))
        throw PreconditionError("integrate: dt exceeds 1e-3 (min separation)^2 / max|Gamma|");

    Trajectory tr;
    tr.dt = dt;
    auto record = [&](double t, const Positions& z) {
        tr.times.push_back(t);
        tr.positions.push_back(z);
        tr.H.push_back(hamiltonian(z, g));
        tr.M.push_back(vorticity_moment(z, g));
        tr.I.push_back(angular_impulse(z, g));
    };

    const double stop = opts.stop_ratio * max_separation(z0);
    const auto steps = static_cast<long long>(std::ceil(T / dt - 1e-9));
    Positions z = z0;
    record(0.0, z);
    for (long long s = 1; s <= steps; ++s) {
        const double h = std::min(dt, T - (s - 1) * dt);
        z = rk4_step(z, g, h);
        const double t = s == steps ? T : s * dt;
        if (min_separation(z) < stop) {
            record(t, z);
            tr.collision_approach = true;
            break;
        }
        if (s % opts.sample_every == 0 || s == steps) record(t, z);
    }
    return tr;
}

double homographic_deviation(const Trajectory& traj)
{
    if (traj.positions.size() < 2) throw std::invalid_argument("homographic_deviation: need at least two samples");
    auto ratios = [](const Positions& z) {
        Eigen::Matrix<Complex, 6, 1> r;
        const Complex z12 = z(0) - z(1);
        int i = 0;
        for (int j = 0; j < 4; ++j)
            for (int k = j + 1; k < 4; ++k) r(i++) = (z(j) - z(k)) / z12;
        return r;
    };
    const auto r0 = ratios(traj.positions.front());
    double dev = 0.0;
    for (const auto& z : traj.positions) dev = std::max(dev, (ratios(z) - r0).cwiseAbs().maxCoeff());
    return dev;
}

AffineFit squared_distance_fit(const Trajectory& traj)
{
    const auto n = static_cast<Eigen::Index>(traj.positions.size());
    if (n < 2) throw std::invalid_argument("squared_distance_fit: need at least two samples");
    const double r0 = std::norm(traj.positions.front()(0) - traj.positions.front()(1));
    Eigen::MatrixXd A(n, 2);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& z = traj.positions[static_cast<std::size_t>(i)];
        A(i, 0) = 1.0;
        A(i, 1) = traj.times[static_cast<std::size_t>(i)];
        b(i) = std::norm(z(0) - z(1)) / r0;
    }
    const Eigen::Vector2d c = A.colPivHouseholderQr().solve(b);
    AffineFit fit;
    fit.intercept = c(0);
    fit.slope = c(1);
    fit.residual = (A * c - b).cwiseAbs().maxCoeff();
    return fit;
}

StationaryCheck verify_stationary(const Configuration& cfg, const Vorticities& g, double tol)
{
    StationaryCheck c;
    const Positions& z0 = cfg.z;
    const Positions v0 = vortex_rhs(z0, g);
    switch (cfg.kind) {
    case ConfigKind::translating: c.T = 0.5; break;
    case ConfigKind::collapse: {
        // |z(t)|^2 / |z(0)|^2 = 1 + 2 Im(Lambda) t along self-similar motion.
        const double rate = 2.0 * cfg.lambda.imag();
        c.T = rate < 0.0 ? std::min(1.0, 0.25 / -rate) : 1.0;
        break;
    }
    default: c.T = 1.0;
    }
    c.dt = std::min(1e-3, max_stable_dt(z0, g));
    IntegrateOptions opts;
    opts.stop_ratio = cfg.kind == ConfigKind::collapse ? 1e-3 : 1e-6;
    opts.sample_every = 10;
    const Trajectory tr = integrate(z0, g, c.T, c.dt, opts);
    const Positions& zT = tr.positions.back();
    const double scale = cfg.scale();

    c.collision_approach = tr.collision_approach;
    c.homographic = homographic_deviation(tr);
    c.drift_H = std::abs(tr.H.back() - tr.H.front());
    c.drift_I = std::abs(tr.I.back() - tr.I.front());
    c.drift_M = std::abs(tr.M.back() - tr.M.front());

    switch (cfg.kind) {
    case ConfigKind::relative_equilibrium:
        for (const auto& z : tr.positions)
            c.radius_drift = std::max(c.radius_drift, (z.cwiseAbs() - z0.cwiseAbs()).cwiseAbs().maxCoeff() / scale);
        c.passed = c.homographic <= tol && c.radius_drift <= 0.1 * tol;
        break;
    case ConfigKind::collapse:
        c.affine_residual = squared_distance_fit(tr).residual;
        c.passed = c.homographic <= tol && c.affine_residual <= tol;
        break;
    case ConfigKind::translating: {
        Positions d = zT - z0 - c.T * v0;
        c.displacement_defect = d.cwiseAbs().maxCoeff();
        c.passed = c.displacement_defect <= tol && v0.cwiseAbs().maxCoeff() > tol;
        break;
    }
    case ConfigKind::equilibrium:
        c.displacement_defect = (zT - z0).cwiseAbs().maxCoeff();
        c.passed = c.displacement_defect <= 1e-2 * tol;
        break;
    }
    c.passed = c.passed && !c.collision_approach;
    return c;
}

void write_csv(std::ostream& os, const Trajectory& traj)
{
    os << "t";
    for (int n = 1; n <= 4; ++n) os << ",re_z" << n << ",im_z" << n;
    os << ",H,I\n";
    os << std::setprecision(17);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        os << traj.times[i];
        for (int n = 0; n < 4; ++n) os << ',' << traj.positions[i](n).real() << ',' << traj.positions[i](n).imag();
        os << ',' << traj.H[i] << ',' << traj.I[i] << '\n';
    }
}

}  // namespace vortex4
