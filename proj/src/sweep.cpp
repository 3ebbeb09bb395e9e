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

#include "vortex4/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "vortex4/systems.hpp"

namespace vortex4 {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<CVector> collision_free_points(const SolutionSet& set)
{
    std::vector<CVector> out;
    for (const Solution* s : set.collision_free()) out.push_back(s->point);
    return out;
}

double min_sigma(const std::vector<CVector>& pts)
{
    double s = std::numeric_limits<double>::infinity();
    for (const auto& x : pts) s = std::min(s, conjugacy_defect(x));
    return s;
}

class HalfSweep {
public:
    HalfSweep(const Vorticities& g, const SweepOptions& opts, CollapseSweep& out)
        : g_(g), opts_(opts), out_(out)
    {
        cont_ = opts.track;
        cont_.initial_step = 0.25;
        cont_.min_step = std::min(opts.track.min_step, 0.1 * cont_.initial_step);
    }

    void run(const std::vector<double>& thetas, double anchor_theta, SolutionSet& anchor)
    {
        const int n = static_cast<int>(thetas.size());
        thetas_ = thetas;
        points_.assign(static_cast<std::size_t>(n), {});
        segment_.assign(static_cast<std::size_t>(n), 0);
        reanchored_.assign(static_cast<std::size_t>(n), false);

        anchor = solve(build_collapse(g_, anchor_theta), opts_.track);
        if (!anchor.certified()) out_.certified = false;

        int j0 = 0;
        for (int j = 1; j < n; ++j)
            if (std::abs(thetas[static_cast<std::size_t>(j)] - anchor_theta) <
                std::abs(thetas[static_cast<std::size_t>(j0)] - anchor_theta))
                j0 = j;

        const PolySystem anchor_sys = build_collapse(g_, anchor_theta);
        place(j0, anchor_sys, collision_free_points(anchor), 0);
        int next_segment = 1;
        for (int dir : {1, -1}) {
            PolySystem from = build_collapse(g_, thetas[static_cast<std::size_t>(j0)]);
            for (int j = j0 + dir; j >= 0 && j < n; j += dir) {
                const int prev = j - dir;
                const PolySystem to = build_collapse(g_, thetas[static_cast<std::size_t>(j)]);
                auto moved = advance(from, to, points_[static_cast<std::size_t>(prev)]);
                if (moved) {
                    points_[static_cast<std::size_t>(j)] = std::move(*moved);
                    segment_[static_cast<std::size_t>(j)] = segment_[static_cast<std::size_t>(prev)];
                } else {
                    reanchor(j, to, next_segment++);
                }
                from = to;
            }
        }

        for (int j = 0; j < n; ++j) {
            SweepSample s;
            s.theta = thetas[static_cast<std::size_t>(j)];
            s.sigma = min_sigma(points_[static_cast<std::size_t>(j)]);
            s.n_solutions = static_cast<int>(points_[static_cast<std::size_t>(j)].size());
            s.reanchored = reanchored_[static_cast<std::size_t>(j)];
            out_.samples.push_back(s);
            emit_grid_reals(j);
        }
        refine_all();
    }

private:
    void place(int j, const PolySystem& sys, std::vector<CVector> pts, int segment)
    {
        const double theta = thetas_[static_cast<std::size_t>(j)];
        const PolySystem to = build_collapse(g_, theta);
        auto moved = advance(sys, to, pts);
        if (moved) {
            points_[static_cast<std::size_t>(j)] = std::move(*moved);
            segment_[static_cast<std::size_t>(j)] = segment;
        } else {
            reanchor(j, to, segment);
        }
    }

    void reanchor(int j, const PolySystem& sys, int segment)
    {
        const SolutionSet fresh = solve(sys, opts_.track);
        if (!fresh.certified()) out_.certified = false;
        points_[static_cast<std::size_t>(j)] = collision_free_points(fresh);
        segment_[static_cast<std::size_t>(j)] = segment;
        reanchored_[static_cast<std::size_t>(j)] = true;
        ++out_.reanchors;
    }

    std::optional<CVector> move_one(const PolySystem& from, const PolySystem& to, const CVector& x) const
    {
        const PathResult r = continue_solution(from, to, x, cont_);
        if (r.status != PathStatus::converged) return std::nullopt;
        const double scale = coordinate_scale(r.endpoint);
        if (to.min_collision_factor(r.endpoint) <= std::max(1e-8, opts_.track.dedup_radius) * scale)
            return std::nullopt;
        return r.endpoint;
    }

    std::optional<std::vector<CVector>> advance(const PolySystem& from, const PolySystem& to,
                                                const std::vector<CVector>& pts) const
    {
        std::vector<CVector> moved;
        moved.reserve(pts.size());
        for (const auto& x : pts) {
            auto y = move_one(from, to, x);
            if (!y) return std::nullopt;
            moved.push_back(std::move(*y));
        }
        for (std::size_t a = 0; a < moved.size(); ++a)
            for (std::size_t b = a + 1; b < moved.size(); ++b) {
                const double scale = std::max(coordinate_scale(moved[a]), coordinate_scale(moved[b]));
                if ((moved[a] - moved[b]).cwiseAbs().maxCoeff() <= opts_.track.dedup_radius * scale)
                    return std::nullopt;
            }
        return moved;
    }

    bool same_track(int j, int k) const
    {
        return segment_[static_cast<std::size_t>(j)] == segment_[static_cast<std::size_t>(k)] &&
               !reanchored_[static_cast<std::size_t>(std::max(j, k))] &&
               !reanchored_[static_cast<std::size_t>(std::min(j, k))];
    }

    void refine_all()
    {
        const int n = static_cast<int>(thetas_.size());
        for (int j = 1; j + 1 < n; ++j) {
            if (!same_track(j - 1, j) || !same_track(j, j + 1)) continue;
            const auto& here = points_[static_cast<std::size_t>(j)];
            for (std::size_t i = 0; i < here.size(); ++i) {
                const double s = conjugacy_defect(here[i]);
                if (s >= opts_.refine_threshold || s <= opts_.real_tol) continue;
                if (s > conjugacy_defect(points_[static_cast<std::size_t>(j - 1)][i])) continue;
                if (s > conjugacy_defect(points_[static_cast<std::size_t>(j + 1)][i])) continue;
                refine(j, here[i]);
            }
        }
    }

    void refine(int j, const CVector& x)
    {
        const double theta_j = thetas_[static_cast<std::size_t>(j)];
        const PolySystem base = build_collapse(g_, theta_j);
        auto at = [&](double theta) -> std::optional<CVector> {
            if (theta == theta_j) return x;
            return move_one(base, build_collapse(g_, theta), x);
        };
        auto sigma = [&](double theta) {
            const auto y = at(theta);
            return y ? conjugacy_defect(*y) : std::numeric_limits<double>::infinity();
        };

        const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
        double lo = thetas_[static_cast<std::size_t>(j - 1)], hi = thetas_[static_cast<std::size_t>(j + 1)];
        double a = hi - ratio * (hi - lo), b = lo + ratio * (hi - lo);
        double fa = sigma(a), fb = sigma(b);
        while (hi - lo > opts_.theta_tol) {
            if (fa <= fb) {
                hi = b;
                b = a;
                fb = fa;
                a = hi - ratio * (hi - lo);
                fa = sigma(a);
            } else {
                lo = a;
                a = b;
                fa = fb;
                b = lo + ratio * (hi - lo);
                fb = sigma(b);
            }
        }
        const double theta = 0.5 * (lo + hi);
        auto y = at(theta);
        if (!y) return;
        emit(build_collapse(g_, theta), theta, *y, true);
    }

    void emit_grid_reals(int j)
    {
        const double theta = thetas_[static_cast<std::size_t>(j)];
        std::optional<PolySystem> sys;
        for (const auto& x : points_[static_cast<std::size_t>(j)]) {
            if (conjugacy_defect(x) > opts_.real_tol) continue;
            if (!sys) sys = build_collapse(g_, theta);
            emit(*sys, theta, x, false);
        }
    }

    void emit(const PolySystem& sys, double theta, CVector y, bool refined)
    {
        newton_polish(sys, y);
        RealCollapse rc;
        rc.theta = theta;
        rc.point = y;
        rc.sigma = conjugacy_defect(y);
        rc.residual = scaled_residual(sys, y);
        rc.refined = refined;
        if (rc.sigma > opts_.real_tol || rc.residual > opts_.track.track_tol) return;
        if (refined)
            for (const auto& r : out_.real)
                if (std::abs(r.theta - rc.theta) <= 1e3 * opts_.theta_tol &&
                    (r.point - rc.point).cwiseAbs().maxCoeff() <=
                        opts_.track.dedup_radius * coordinate_scale(rc.point))
                    return;
        out_.real.push_back(std::move(rc));
    }

    const Vorticities& g_;
    const SweepOptions& opts_;
    CollapseSweep& out_;
    TrackOptions cont_;
    std::vector<double> thetas_;
    std::vector<std::vector<CVector>> points_;
    std::vector<int> segment_;
    std::vector<bool> reanchored_;
};

}  // namespace

void ThetaGrid::validate() const
{
    if (points < 4 || points % 2 != 0) throw std::invalid_argument("ThetaGrid: points must be even and >= 4");
    if (!(clamp > 0.0) || clamp >= kPi / 4) throw std::invalid_argument("ThetaGrid: clamp out of range");
}

std::vector<double> ThetaGrid::values() const
{
    validate();
    const int half = points / 2;
    const double h = (kPi - 2.0 * clamp) / (half - 1);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(points));
    for (int k = 0; k < half; ++k) out.push_back(clamp + k * h);
    for (int k = 0; k < half; ++k) out.push_back(2.0 * kPi - (clamp + (half - 1 - k) * h));
    return out;
}

Configuration RealCollapse::configuration() const
{
    Configuration c;
    for (int n = 0; n < 4; ++n) {
        c.z(n) = point(n);
        c.w(n) = point(n + 4);
    }
    c.lambda = std::polar(1.0, theta);
    c.kind = ConfigKind::collapse;
    return c;
}

double conjugacy_defect(const CVector& x)
{
    if (x.size() != 8) throw std::invalid_argument("conjugacy_defect: expected 8 coordinates");
    return (x.tail(4) - x.head(4).conjugate()).cwiseAbs().maxCoeff() / coordinate_scale(x);
}

CollapseSweep sweep_collapse(const Vorticities& g, const SweepOptions& opts)
{
    opts.grid.validate();
    opts.track.validate();
    if (std::abs(g.angular_momentum()) > 1e-12 * std::max(1.0, g.max_abs() * g.max_abs()))
        throw PreconditionError("sweep_collapse: collapse requires L = 0");

    const auto thetas = opts.grid.values();
    const auto half = static_cast<std::ptrdiff_t>(thetas.size() / 2);
    CollapseSweep out;
    {
        HalfSweep hs(g, opts, out);
        hs.run({thetas.begin(), thetas.begin() + half}, kPi / 2, out.anchor_upper);
    }
    {
        HalfSweep hs(g, opts, out);
        hs.run({thetas.begin() + half, thetas.end()}, 3 * kPi / 2, out.anchor_lower);
    }
    std::sort(out.real.begin(), out.real.end(), [](const RealCollapse& a, const RealCollapse& b) {
        if (a.theta != b.theta) return a.theta < b.theta;
        return canonical_less(a.point, b.point);
    });
    return out;
}

}  // namespace vortex4
