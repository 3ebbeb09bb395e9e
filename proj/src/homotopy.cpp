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

#include "vortex4/homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace vortex4 {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kCauchyRadius = 1e-6;

// Uniform double in [0, 1) built from the top 53 bits, identical on every platform.
double unit_uniform(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double inf_norm(const CVector& v)
{
    double m = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) m = std::max(m, std::norm(v(i)));
    return std::sqrt(m);
}

// H(x, s) = s gamma G(x) + (1 - s) F(x), tracked from s = 1 down to s = 0.
struct Homotopy {
    const PolySystem& start;
    const PolySystem& target;
    Complex gamma;

    mutable CVector g, f;
    mutable CMatrix gx, fx;

    void eval(const CVector& x, Complex s, CVector& H, CMatrix& Hx, CVector* Hs) const
    {
        start.evaluate_with_jacobian(x, g, gx);
        target.evaluate_with_jacobian(x, f, fx);
        const Complex a = s * gamma;
        const Complex b = 1.0 - s;
        H = a * g + b * f;
        Hx = a * gx + b * fx;
        if (Hs) *Hs = gamma * g - f;
    }
};

// Solves A y = b after equilibrating the rows of A; the solution is unchanged
// by row scaling but the conditioning test becomes meaningful when equations
// of very different degree are evaluated far from the origin.
template <typename Matrix>
bool scaled_solve_impl(const CMatrix& A, const CVector& b, CVector& y)
{
    Matrix As(A.rows(), A.cols());
    Eigen::Matrix<double, Matrix::RowsAtCompileTime, 1> r(A.rows());
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        const double m = std::sqrt(A.row(i).cwiseAbs2().maxCoeff());
        if (!(m > 0.0) || !std::isfinite(m)) return false;
        r(i) = 1.0 / m;
        As.row(i) = A.row(i) * r(i);
    }
    const Eigen::PartialPivLU<Matrix> lu(As);
    const auto d = lu.matrixLU().diagonal().cwiseAbs();
    if (!(d.minCoeff() > 0.0) || lu.rcond() < 1e-14) return false;
    y = lu.solve((r.template cast<Complex>().array() * b.array()).matrix());
    return y.allFinite();
}

bool scaled_solve(const CMatrix& A, const CVector& b, CVector& y)
{
    if (A.rows() == 8 && A.cols() == 8) return scaled_solve_impl<Eigen::Matrix<Complex, 8, 8>>(A, b, y);
    if (A.rows() == 4 && A.cols() == 4) return scaled_solve_impl<Eigen::Matrix<Complex, 4, 4>>(A, b, y);
    return scaled_solve_impl<CMatrix>(A, b, y);
}

// Along x(s) = x* + c s^p, x(s_new) - x(s) = power_factor(p, s, s_new) * (-dx/ds)(s).
double power_factor(double p, double s, double s_new)
{
    const double r = s_new / s;
    if (std::abs(p) < 1e-8) return -s * std::log(r);
    return s * (1.0 - std::pow(r, p)) / p;
}

// Exponent p of a power law matching the tangent magnitudes at s and s_new.
double tangent_power(const CVector& v, const CVector& v_new, double s, double s_new)
{
    const double a = inf_norm(v), b = inf_norm(v_new);
    if (!(a > 0.0) || !(b > 0.0)) return 1.0;
    return std::clamp(1.0 + std::log(b / a) / std::log(s_new / s), -4.0, 4.0);
}

enum class Correction { ok, diverged, singular };

struct Tracker {
    const Homotopy& hom;
    const TrackOptions& opts;
    bool endgame;
    int newton_total = 0;

    Correction correct(CVector& x, Complex s, const CVector& x_prev) const
    {
        CVector H, dx;
        CMatrix Hx;
        const double predict_len = inf_norm(x - x_prev);
        double prev_len = std::numeric_limits<double>::infinity();
        for (int k = 0; k < opts.max_newton_iters; ++k) {
            hom.eval(x, s, H, Hx, nullptr);
            if (!scaled_solve(Hx, H, dx)) return Correction::singular;
            x -= dx;
            ++const_cast<Tracker*>(this)->newton_total;
            const double len = inf_norm(dx);
            const double xs = 1.0 + inf_norm(x);
            if (!std::isfinite(len)) return Correction::diverged;
            if (k == 0 && len > 0.25 * predict_len + 1e-8 * xs) return Correction::diverged;
            if (len <= opts.newton_tol * xs) return Correction::ok;
            if (k > 0 && len > 0.5 * prev_len) {
                // Stagnation at the rounding floor still counts as converged.
                if (len <= 1e-9 * xs && len <= 1e-3 * predict_len) return Correction::ok;
                return Correction::diverged;
            }
            prev_len = len;
        }
        return Correction::diverged;
    }
};

struct Growth {
    double exponent = 0.0;
    double decades = 0.0;
};

Growth growth_exponent(const std::vector<std::pair<double, double>>& hist)
{
    // hist holds (log s, log(1 + |x|)) in decreasing s; compare the last entry
    // against the one roughly four decades earlier.
    if (hist.size() < 2) return {};
    const auto& last = hist.back();
    std::size_t i = hist.size() - 1;
    while (i > 0 && hist[i].first - last.first < std::log(1e4)) --i;
    const double ds = hist[i].first - last.first;
    if (ds <= 0.0) return {};
    return {(last.second - hist[i].second) / ds, ds / std::log(10.0)};
}

double newton_step_length(const PolySystem& f, const CVector& x)
{
    CVector v;
    CMatrix J;
    f.evaluate_with_jacobian(x, v, J);
    return inf_norm(Eigen::CompleteOrthogonalDecomposition<CMatrix>(J).solve(v));
}

double condition_number(const CMatrix& J)
{
    Eigen::JacobiSVD<CMatrix> svd(J);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0) return 0.0;
    const double smin = sv(sv.size() - 1);
    if (!(smin > 0.0)) return std::numeric_limits<double>::infinity();
    return sv(0) / smin;
}

// Loops s = s0 e^{i phi} around the endpoint until the path closes up; the
// mean over the loops is the endpoint (Cauchy integral formula in s^{1/c}).
bool cauchy_endpoint(const Tracker& tr, const CVector& x0, double s0, CVector& out, int& cycles)
{
    constexpr int kSamples = 64;
    constexpr int kMaxCycles = 40;
    const double dphi = 2.0 * kPi / kSamples;
    CVector x = x0;
    CVector sum = CVector::Zero(x0.size());
    CVector H, Hs, dxds;
    CMatrix Hx;
    for (int loop = 1; loop <= kMaxCycles; ++loop) {
        for (int k = 0; k < kSamples; ++k) {
            sum += x;
            const double phi0 = dphi * k;
            double done = 0.0;
            double sub = 1.0;
            while (done < 1.0) {
                sub = std::min(sub, 1.0 - done);
                const Complex s = std::polar(s0, phi0 + dphi * done);
                const Complex s_next = std::polar(s0, phi0 + dphi * (done + sub));
                tr.hom.eval(x, s, H, Hx, &Hs);
                CVector v;
                const bool ok = scaled_solve(Hx, Hs, v);
                CVector x_try = x - (s_next - s) * v;
                if (ok && x_try.allFinite() && tr.correct(x_try, s_next, x) == Correction::ok) {
                    x = x_try;
                    done += sub;
                    sub *= 2.0;
                } else {
                    sub *= 0.5;
                    if (sub < 1e-6) return false;
                }
            }
        }
        if (inf_norm(x - x0) <= 1e-8 * (1.0 + inf_norm(x0))) {
            out = sum / static_cast<double>(kSamples * loop);
            cycles = loop;
            return true;
        }
    }
    return false;
}

PathResult track_impl(const PolySystem& target, const PolySystem& start, const CVector& x0, const TrackOptions& opts,
                      Complex gamma, bool endgame)
{
    const Homotopy hom{start, target, gamma, {}, {}, {}, {}};
    Tracker tr{hom, opts, endgame};
    PathResult out;

    const double s_endgame = 1.0 - opts.endgame_start;
    const double s_stop = endgame ? 1e-14 : 0.0;
    double s = 1.0;
    double h = opts.initial_step;
    CVector x = x0;
    int successes = 0;
    int singular_retries = 0;
    bool stalled = false;
    std::vector<std::pair<double, double>> history;
    double s_cauchy = 0.0;
    CVector x_cauchy;

    CVector H, Hs, dxds;
    CMatrix Hx;
    // dx/ds = -Hx^{-1} Hs; the tangent stored is its negative since s decreases.
    auto tangent = [&](const CVector& at, double sv, CVector& v) {
        hom.eval(at, sv, H, Hx, &Hs);
        return scaled_solve(Hx, Hs, v);
    };
    bool have_tangent = false;
    double power = 1.0;
    CVector x_back, v_back;
    double h_back = 0.0;
    double growing_since = 0.0;
    int growing_steps = 0;
    while (s > s_stop) {
        double hmax = opts.initial_step;
        if (endgame && s <= s_endgame) hmax = std::min(hmax, 0.5 * s);
        h = std::min(h, hmax);
        if (!endgame || s > s_endgame) h = std::min(h, s);
        const double s_new = std::max(0.0, s - h);

        if (!have_tangent) have_tangent = tangent(x, s, dxds);
        CVector x_try = x;
        CVector v_new;
        Correction c = Correction::singular;
        const bool power_law = endgame && s <= s_endgame && s_new > 0.0;
        if (have_tangent) {
            if (power_law) {
                x_try = x + power_factor(power, s, s_new) * dxds;
            } else if (h_back > 0.0 && h <= 2.0 * h_back) {
                // Cubic Hermite extrapolation through the last two accepted points.
                const double t = 1.0 + h / h_back, t2 = t * t, t3 = t2 * t;
                x_try = (2 * t3 - 3 * t2 + 1) * x_back + (t3 - 2 * t2 + t) * h_back * v_back +
                        (3 * t2 - 2 * t3) * x + (t3 - t2) * h_back * dxds;
            } else {
                x_try = x + h * dxds;
            }
            c = tr.correct(x_try, s_new, x);
            // Reject steps whose end tangent disagrees with the integrated
            // tangent model: the corrector has most likely landed on a
            // neighbouring path.
            if (c == Correction::ok && tangent(x_try, s_new, v_new)) {
                const double move = inf_norm(x_try - x);
                CVector model;
                if (power_law) {
                    const double p = tangent_power(dxds, v_new, s, s_new);
                    model = power_factor(p, s, s_new) * dxds;
                } else {
                    model = 0.5 * h * (dxds + v_new);
                }
                const double mismatch = inf_norm((x_try - x) - model);
                if (mismatch > 0.1 * move + opts.newton_tol * (1.0 + inf_norm(x))) c = Correction::diverged;
            }
        }
        ++out.steps;

        if (c == Correction::ok) {
            h_back = v_new.size() == x.size() ? s - s_new : 0.0;
            x_back = x;
            v_back = dxds;
            x = x_try;
            if (v_new.size() == x.size()) {
                if (power_law) {
                    power = tangent_power(dxds, v_new, s, s_new);
                    if (power > -0.05) {
                        growing_since = 0.0;
                        growing_steps = 0;
                    } else if (growing_since == 0.0) {
                        growing_since = s;
                    } else {
                        ++growing_steps;
                    }
                }
                dxds = v_new;
            } else {
                have_tangent = false;
            }
            s = s_new;
            singular_retries = 0;
            if (inf_norm(x) > opts.divergence_cutoff) {
                out.endpoint = x;
                out.status = PathStatus::at_infinity;
                out.final_t = 1.0 - s;
                out.newton_steps_total = tr.newton_total;
                return out;
            }
            // A path whose norm has followed s^p with p < 0 for a full decade is diverging.
            if (growing_since > 0.0 && growing_since >= 10.0 * s && growing_steps >= 5 &&
                ((s <= 1e-5 && inf_norm(x) >= 1e2) || (s <= 1e-3 && inf_norm(x) >= 1e3))) {
                out.endpoint = x;
                out.status = PathStatus::at_infinity;
                out.final_t = 1.0 - s;
                out.newton_steps_total = tr.newton_total;
                return out;
            }
            if (endgame && s <= s_endgame) history.emplace_back(std::log(std::max(s, 1e-300)), std::log1p(inf_norm(x)));
            if (endgame && s <= kCauchyRadius && s_cauchy == 0.0) {
                s_cauchy = s;
                x_cauchy = x;
            }
            if (++successes >= 3) {
                h *= 2.0;
                successes = 0;
            }
            continue;
        }

        successes = 0;
        if (c == Correction::singular) {
            if (++singular_retries > 3) {
                if (endgame && s < s_endgame) {
                    stalled = true;
                    break;
                }
                out.endpoint = x;
                out.status = PathStatus::failed;
                out.final_t = 1.0 - s;
                out.newton_steps_total = tr.newton_total;
                return out;
            }
            h *= 0.618;
        } else {
            h *= 0.5;
        }
        const double floor = (endgame && s < s_endgame) ? opts.min_step * s / s_endgame : opts.min_step;
        if (h < floor) {
            if (endgame && s < s_endgame) {
                stalled = true;
                break;
            }
            out.endpoint = x;
            out.status = PathStatus::failed;
            out.final_t = 1.0 - s;
            out.newton_steps_total = tr.newton_total;
            return out;
        }
    }
    (void)stalled;

    out.final_t = 1.0;
    if (!endgame) {
        out.endpoint = x;
        out.residual = scaled_residual(target, x);
        out.newton_steps_total = tr.newton_total;
        out.status = out.residual <= opts.track_tol ? PathStatus::converged : PathStatus::failed;
        out.condition_estimate = condition_number(target.jacobian(x));
        return out;
    }

    CVector y = x;
    tr.newton_total += newton_polish(target, y, 400);
    const double r = scaled_residual(target, y);
    const Growth growth = growth_exponent(history);
    const double alpha = growth.exponent;
    const double xn = inf_norm(x);
    out.newton_steps_total = tr.newton_total;
    const bool settled = newton_step_length(target, y) <= 1e-6 * (1.0 + inf_norm(y));
    if (std::isfinite(r) && r <= opts.track_tol && settled && inf_norm(y - x) <= 0.1 * (1.0 + xn) && alpha < 0.05) {
        out.endpoint = y;
        out.residual = r;
        out.status = PathStatus::converged;
        out.condition_estimate = condition_number(target.jacobian(y));
        return out;
    }
    const bool growing = (alpha >= 0.02 && growth.decades >= 3.0) ||
                         (xn >= 20.0 && alpha >= (growth.decades >= 1.0 ? 0.1 : 0.5));
    if (!growing && xn <= 1e6 && s_cauchy > 0.0) {
        CVector c;
        int cycles = 0;
        if (cauchy_endpoint(tr, x_cauchy, s_cauchy, c, cycles)) {
            newton_polish(target, c, 20);
            const double rc = scaled_residual(target, c);
            if (std::isfinite(rc) && rc <= opts.track_tol && newton_step_length(target, c) <= 1e-6 * (1.0 + inf_norm(c))) {
                out.endpoint = c;
                out.residual = rc;
                out.status = PathStatus::converged;
                out.condition_estimate = condition_number(target.jacobian(c));
                out.newton_steps_total = tr.newton_total;
                return out;
            }
        }
    }
    out.endpoint = x;
    out.residual = scaled_residual(target, x);
    out.final_t = 1.0 - s;
    out.newton_steps_total = tr.newton_total;
    out.status = (growing || xn > 1e6) ? PathStatus::at_infinity : PathStatus::failed;
    return out;
}

struct Cluster {
    std::vector<int> members;
};

std::vector<Cluster> cluster_endpoints(const std::vector<PathResult>& paths, const TrackOptions& opts)
{
    std::vector<int> idx;
    for (int i = 0; i < static_cast<int>(paths.size()); ++i)
        if (paths[static_cast<std::size_t>(i)].status == PathStatus::converged) idx.push_back(i);

    std::vector<int> parent(paths.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](int a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
            a = parent[static_cast<std::size_t>(a)];
        }
        return a;
    };
    auto radius = [&opts](const PathResult& p) {
        const double scaled = opts.dedup_radius * std::max(1.0, p.condition_estimate * 1e-8);
        return std::min(1e-4, scaled);
    };
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
            const auto& pa = paths[static_cast<std::size_t>(idx[a])];
            const auto& pb = paths[static_cast<std::size_t>(idx[b])];
            const double scale = std::max({1.0, inf_norm(pa.endpoint), inf_norm(pb.endpoint)});
            if (inf_norm(pa.endpoint - pb.endpoint) <= std::max(radius(pa), radius(pb)) * scale) {
                const int ra = find(idx[a]), rb = find(idx[b]);
                if (ra != rb) parent[static_cast<std::size_t>(std::max(ra, rb))] = std::min(ra, rb);
            }
        }
    std::vector<Cluster> out;
    std::vector<int> slot(paths.size(), -1);
    for (int i : idx) {
        const int r = find(i);
        if (slot[static_cast<std::size_t>(r)] < 0) {
            slot[static_cast<std::size_t>(r)] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[static_cast<std::size_t>(slot[static_cast<std::size_t>(r)])].members.push_back(i);
    }
    return out;
}

}  // namespace

void TrackOptions::validate() const
{
    if (!(initial_step > 0.0) || !(min_step > 0.0) || !(min_step < initial_step))
        throw std::invalid_argument("TrackOptions: require 0 < min_step < initial_step");
    if (!(newton_tol > 0.0) || !(track_tol > 0.0) || !(dedup_radius > 0.0) || !(divergence_cutoff > 0.0))
        throw std::invalid_argument("TrackOptions: tolerances must be positive");
    if (max_newton_iters < 1) throw std::invalid_argument("TrackOptions: max_newton_iters must be >= 1");
    if (!(endgame_start > 0.0 && endgame_start < 1.0))
        throw std::invalid_argument("TrackOptions: endgame_start must lie in (0, 1)");
}

std::string to_string(PathStatus s)
{
    switch (s) {
    case PathStatus::converged: return "converged";
    case PathStatus::at_infinity: return "at_infinity";
    case PathStatus::failed: return "failed";
    }
    return "unknown";
}

int SolutionSet::multiplicity_total() const
{
    int m = 0;
    for (const auto& s : solutions) m += s.multiplicity;
    return m;
}

std::vector<const Solution*> SolutionSet::collision_free() const
{
    std::vector<const Solution*> out;
    for (const auto& s : solutions)
        if (!s.is_collision) out.push_back(&s);
    return out;
}

StartSystem make_start_system(std::span<const int> degrees, std::span<const Complex> constants)
{
    const int n = static_cast<int>(degrees.size());
    if (n == 0 || constants.size() != degrees.size())
        throw std::invalid_argument("make_start_system: degrees and constants must be nonempty and equal length");
    for (int d : degrees)
        if (d < 1) throw std::invalid_argument("make_start_system: every degree must be >= 1");

    StartSystem st;
    st.constants.assign(constants.begin(), constants.end());
    std::vector<MultiPoly> eqs;
    std::vector<std::vector<Complex>> roots(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int d = degrees[static_cast<std::size_t>(i)];
        const Complex c = constants[static_cast<std::size_t>(i)];
        if (c == Complex(0.0, 0.0)) throw std::invalid_argument("make_start_system: constants must be nonzero");
        MultiPoly p(n);
        std::vector<int> e(static_cast<std::size_t>(n), 0);
        e[static_cast<std::size_t>(i)] = d;
        p.add_term(e, Complex(1.0, 0.0));
        p.add_term(std::vector<int>(static_cast<std::size_t>(n), 0), -c);
        eqs.push_back(std::move(p));
        const double r = std::pow(std::abs(c), 1.0 / d);
        const double phi = std::arg(c);
        for (int k = 0; k < d; ++k)
            roots[static_cast<std::size_t>(i)].push_back(std::polar(r, (phi + 2.0 * kPi * k) / d));
    }
    st.system = PolySystem(std::move(eqs), {});

    std::vector<int> digit(static_cast<std::size_t>(n), 0);
    while (true) {
        CVector x(n);
        for (int i = 0; i < n; ++i) x(i) = roots[static_cast<std::size_t>(i)][static_cast<std::size_t>(digit[static_cast<std::size_t>(i)])];
        st.points.push_back(std::move(x));
        int i = n - 1;
        while (i >= 0) {
            auto& dg = digit[static_cast<std::size_t>(i)];
            if (++dg < degrees[static_cast<std::size_t>(i)]) break;
            dg = 0;
            --i;
        }
        if (i < 0) break;
    }
    return st;
}

StartSystem make_start_system(std::span<const int> degrees, std::uint64_t seed)
{
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 0x5851F42D4C957F2DULL);
    std::vector<Complex> c;
    for (std::size_t i = 0; i < degrees.size(); ++i) c.push_back(std::polar(1.0, 2.0 * kPi * unit_uniform(rng)));
    return make_start_system(degrees, c);
}

Complex gamma_for_seed(std::uint64_t seed)
{
    std::mt19937_64 rng(seed ^ 0xD1B54A32D192ED03ULL);
    return std::polar(1.0, 2.0 * kPi * unit_uniform(rng));
}

double scaled_residual(const PolySystem& f, const CVector& x)
{
    const CVector v = f.evaluate(x);
    const double scale = std::max(1.0, inf_norm(x));
    const auto deg = f.degrees();
    double r = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        r = std::max(r, std::abs(v(i)) / std::pow(scale, deg[static_cast<std::size_t>(i)]));
    return r;
}

int newton_polish(const PolySystem& f, CVector& x, int max_iters, double tol)
{
    CVector v;
    CMatrix J;
    CVector best = x;
    double best_res = scaled_residual(f, x);
    int stale = 0;
    int k = 0;
    for (; k < max_iters; ++k) {
        f.evaluate_with_jacobian(x, v, J);
        Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(J);
        const CVector dx = cod.solve(v);
        if (!dx.allFinite()) break;
        x -= dx;
        const double r = scaled_residual(f, x);
        if (r < best_res) {
            best_res = r;
            best = x;
            stale = 0;
        } else if (++stale > 6) {
            break;
        }
        if (inf_norm(dx) <= tol * (1.0 + inf_norm(x))) break;
    }
    // Keep the last iterate when it is as good: linear convergence at singular
    // roots keeps moving x closer while the residual sits at roundoff.
    if (scaled_residual(f, x) > best_res) x = best;
    return k;
}

PathResult track_path(const PolySystem& target, const PolySystem& start, const CVector& x0, const TrackOptions& opts,
                      Complex gamma)
{
    opts.validate();
    if (target.nvars() != start.nvars() || x0.size() != target.nvars())
        throw std::invalid_argument("track_path: dimension mismatch");
    return track_impl(target, start, x0, opts, gamma, true);
}

PathResult track_path(const PolySystem& target, const PolySystem& start, const CVector& x0, const TrackOptions& opts)
{
    return track_path(target, start, x0, opts, gamma_for_seed(opts.seed));
}

PathResult continue_solution(const PolySystem& from, const PolySystem& to, const CVector& x0, const TrackOptions& opts)
{
    opts.validate();
    if (from.nvars() != to.nvars() || x0.size() != to.nvars())
        throw std::invalid_argument("continue_solution: dimension mismatch");
    return track_impl(to, from, x0, opts, Complex(1.0, 0.0), false);
}

bool canonical_less(const CVector& a, const CVector& b)
{
    if (a.size() != b.size()) return a.size() < b.size();
    auto key = [](double v) { return std::round(v * 1e6); };
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const double ar = key(a(i).real()), br = key(b(i).real());
        if (ar != br) return ar < br;
        const double ai = key(a(i).imag()), bi = key(b(i).imag());
        if (ai != bi) return ai < bi;
    }
    return false;
}

namespace {

MultiPoly homogenize(const MultiPoly& p, int degree)
{
    const int n = p.nvars();
    MultiPoly h(n + 1);
    for (const auto& [e, c] : p.terms()) {
        MultiPoly::Exponent he(e);
        int sum = 0;
        for (int k : e) sum += k;
        he.push_back(degree - sum);
        h.add_term(std::move(he), c);
    }
    return h;
}

// Tracks the same homotopy path on a random affine chart of projective space.
// Used only for paths the affine tracker could not finish.
PathResult track_projective(const PolySystem& target, const PolySystem& start, const CVector& x0,
                            const TrackOptions& opts, Complex gamma)
{
    const int n = target.nvars();
    std::mt19937_64 rng(opts.seed ^ 0x94D049BB133111EBULL);
    CVector a(n + 1);
    for (int i = 0; i <= n; ++i) a(i) = std::polar(1.0, 2.0 * kPi * unit_uniform(rng));

    MultiPoly chart = MultiPoly::constant(n + 1, Complex(-1.0));
    for (int i = 0; i <= n; ++i) chart += MultiPoly::variable(n + 1, i, a(i));

    const auto degrees = target.degrees();
    std::vector<MultiPoly> fh, gh;
    for (int i = 0; i < n; ++i) {
        fh.push_back(homogenize(target[i], degrees[static_cast<std::size_t>(i)]));
        gh.push_back(homogenize(start[i], degrees[static_cast<std::size_t>(i)]));
    }
    fh.push_back(chart);
    gh.push_back(chart);
    std::vector<std::string> names(static_cast<std::size_t>(n + 1), "y");
    const PolySystem fsys(std::move(fh), names), gsys(std::move(gh), names);

    CVector y0(n + 1);
    y0.head(n) = x0;
    y0(n) = 1.0;
    y0 /= (a.transpose() * y0)(0);

    PathResult pr = track_impl(fsys, gsys, y0, opts, gamma, true);
    PathResult out = pr;
    out.endpoint = pr.endpoint.head(n);
    const Complex h = pr.endpoint(n);
    const double yn = inf_norm(pr.endpoint);
    if (std::abs(h) <= 1e-6 * yn) {
        out.status = PathStatus::at_infinity;
        return out;
    }
    if (pr.status != PathStatus::converged) {
        out.status = PathStatus::failed;
        return out;
    }
    CVector x = pr.endpoint.head(n) / h;
    out.newton_steps_total += newton_polish(target, x, 400);
    out.endpoint = x;
    out.residual = scaled_residual(target, x);
    out.condition_estimate = condition_number(target.jacobian(x));
    out.status = out.residual <= opts.track_tol ? PathStatus::converged : PathStatus::failed;
    return out;
}

}  // namespace

SolutionSet solve(const PolySystem& sys, const TrackOptions& opts)
{
    opts.validate();
    if (!sys.is_square()) throw std::invalid_argument("solve: system is not square");
    const auto degrees = sys.degrees();
    for (int d : degrees)
        if (d < 1) throw std::invalid_argument("solve: every equation must have degree >= 1");

    const StartSystem st = make_start_system(degrees, opts.seed);
    const Complex gamma = gamma_for_seed(opts.seed);

    SolutionSet out;
    out.seed = opts.seed;
    out.n_paths = static_cast<int>(st.points.size());
    out.paths.reserve(st.points.size());
    for (const auto& x0 : st.points) out.paths.push_back(track_impl(sys, st.system, x0, opts, gamma, true));

    auto retrack = [&](int i, int round) {
        TrackOptions o = opts;
        o.initial_step = opts.initial_step / std::pow(4.0, round);
        o.min_step = std::min(opts.min_step, 0.5 * o.initial_step) / std::pow(4.0, round);
        out.paths[static_cast<std::size_t>(i)] =
            track_impl(sys, st.system, st.points[static_cast<std::size_t>(i)], o, gamma, true);
    };

    for (int round = 1; round <= 2; ++round) {
        bool changed = false;
        for (int i = 0; i < out.n_paths; ++i)
            if (out.paths[static_cast<std::size_t>(i)].status == PathStatus::failed) {
                retrack(i, round);
                changed = true;
            }
        // Several paths landing on one well-conditioned root means a path jumped.
        for (const auto& c : cluster_endpoints(out.paths, opts)) {
            if (c.members.size() < 2) continue;
            const auto& rep = out.paths[static_cast<std::size_t>(c.members.front())];
            if (rep.condition_estimate > 1e8) continue;
            for (int i : c.members) retrack(i, round);
            changed = true;
        }
        if (!changed) break;
    }
    for (int i = 0; i < out.n_paths; ++i) {
        auto& p = out.paths[static_cast<std::size_t>(i)];
        if (p.status != PathStatus::failed) continue;
        p = track_projective(sys, st.system, st.points[static_cast<std::size_t>(i)], opts, gamma);
    }

    for (const auto& p : out.paths) {
        if (p.status == PathStatus::at_infinity) ++out.n_at_infinity;
        if (p.status == PathStatus::failed) ++out.n_failed;
    }

    for (const auto& c : cluster_endpoints(out.paths, opts)) {
        const int n = sys.nvars();
        CVector avg = CVector::Zero(n);
        double wsum = 0.0;
        double cond = 0.0;
        for (int i : c.members) {
            const auto& p = out.paths[static_cast<std::size_t>(i)];
            const double w = 1.0 / (p.residual + 1e-16);
            avg += w * p.endpoint;
            wsum += w;
            cond = std::max(cond, p.condition_estimate);
        }
        avg /= wsum;
        Solution s;
        s.multiplicity = static_cast<int>(c.members.size());
        CVector polished = avg;
        newton_polish(sys, polished);
        s.point = scaled_residual(sys, polished) <= scaled_residual(sys, avg) ? polished : avg;
        s.residual = scaled_residual(sys, s.point);
        s.condition_estimate = cond;
        const double radius = std::min(1e-4, opts.dedup_radius * std::max(1.0, cond * 1e-8));
        const double scale = std::max(1.0, inf_norm(s.point));
        s.is_collision = sys.min_collision_factor(s.point) <= std::max(1e-8, radius) * scale;
        out.solutions.push_back(std::move(s));
    }
    std::sort(out.solutions.begin(), out.solutions.end(),
              [](const Solution& a, const Solution& b) { return canonical_less(a.point, b.point); });
    return out;
}

PolySystem randomize_system(const std::vector<MultiPoly>& polys, int n, std::uint64_t seed)
{
    if (polys.empty() || n < 1 || n > static_cast<int>(polys.size()))
        throw std::invalid_argument("randomize_system: need 1 <= n <= number of polynomials");
    std::mt19937_64 rng(seed + 0x2545F4914F6CDD1DULL);
    std::vector<MultiPoly> eqs;
    for (int i = 0; i < n; ++i) {
        MultiPoly p(polys.front().nvars());
        for (const auto& q : polys) p += std::polar(1.0, 2.0 * kPi * unit_uniform(rng)) * q;
        eqs.push_back(std::move(p));
    }
    return PolySystem(std::move(eqs), {});
}

}  // namespace vortex4
