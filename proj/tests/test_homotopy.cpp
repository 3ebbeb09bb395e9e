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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "vortex4/homotopy.hpp"
#include "vortex4/systems.hpp"

using namespace vortex4;

namespace {

MultiPoly var(int n, int i) { return MultiPoly::variable(n, i); }
MultiPoly cst(int n, Complex c) { return MultiPoly::constant(n, c); }

PolySystem make_system(std::vector<MultiPoly> polys)
{
    std::vector<std::string> names;
    for (int i = 0; i < polys.front().nvars(); ++i) names.push_back("x" + std::to_string(i + 1));
    return PolySystem(std::move(polys), std::move(names));
}

bool contains(const SolutionSet& s, const CVector& x, double tol)
{
    for (const auto& sol : s.solutions)
        if ((sol.point - x).cwiseAbs().maxCoeff() <= tol) return true;
    return false;
}

int converged(const SolutionSet& s)
{
    int c = 0;
    for (const auto& p : s.paths) c += p.status == PathStatus::converged;
    return c;
}

CVector vec(std::initializer_list<Complex> v)
{
    CVector x(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (Complex c : v) x(i++) = c;
    return x;
}

}  // namespace

TEST_CASE("start system")
{
    const std::vector<int> degrees{1, 1, 2, 1, 3, 3, 4, 4};
    const StartSystem st = make_start_system(degrees, 7);
    CHECK(st.points.size() == 288);
    CHECK(total_degree(st.system) == 288);
    for (const Complex& c : st.constants) CHECK(std::abs(std::abs(c) - 1.0) <= 1e-14);
    for (const CVector& p : st.points) CHECK(st.system.evaluate(p).cwiseAbs().maxCoeff() <= 1e-14);
    for (std::size_t a = 0; a < st.points.size(); ++a)
        for (std::size_t b = a + 1; b < st.points.size(); ++b)
            CHECK((st.points[a] - st.points[b]).cwiseAbs().maxCoeff() > 1e-3);

    const std::vector<int> two{2};
    const std::vector<Complex> one{Complex(1.0)};
    const StartSystem sq = make_start_system(two, one);
    REQUIRE(sq.points.size() == 2);
    CHECK(std::abs(sq.points[0](0) - Complex(1.0)) <= 1e-15);
    CHECK(std::abs(sq.points[1](0) - Complex(-1.0)) <= 1e-15);

    CHECK(make_start_system(degrees, 7).constants == st.constants);
    CHECK(make_start_system(degrees, 8).constants != st.constants);
}

TEST_CASE("univariate quadratic")
{
    const SolutionSet s = solve(make_system({var(1, 0) * var(1, 0) - cst(1, 1.0)}));
    CHECK(s.certified());
    CHECK(s.n_paths == 2);
    REQUIRE(s.solutions.size() == 2);
    CHECK(contains(s, vec({1.0}), 1e-12));
    CHECK(contains(s, vec({-1.0}), 1e-12));
}

TEST_CASE("circle meets hyperbola")
{
    const MultiPoly x = var(2, 0), y = var(2, 1);
    const PolySystem f = make_system({x * x + y * y - cst(2, 5.0), x * y - cst(2, 2.0)});
    const SolutionSet s = solve(f);
    CHECK(s.certified());
    CHECK(s.n_at_infinity == 0);
    REQUIRE(s.solutions.size() == 4);
    for (const CVector& r : {vec({1.0, 2.0}), vec({2.0, 1.0}), vec({-1.0, -2.0}), vec({-2.0, -1.0})})
        CHECK(contains(s, r, 1e-9));
    for (const auto& sol : s.solutions) {
        CHECK(sol.multiplicity == 1);
        CHECK(contains(s, (-sol.point).eval(), 1e-9));
    }
}

TEST_CASE("random univariate polynomials recover their constructed roots")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_int_distribution<int> deg(1, 6);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = deg(rng);
        std::vector<Complex> roots;
        MultiPoly p = cst(1, Complex(u(rng), u(rng)));
        // Rejection keeps the roots well separated so they are simple.
        while (static_cast<int>(roots.size()) < d) {
            const Complex r(u(rng), u(rng));
            bool separated = true;
            for (const Complex& q : roots) separated = separated && std::abs(q - r) > 0.2;
            if (!separated) continue;
            roots.push_back(r);
            p = p * (var(1, 0) - cst(1, r));
        }
        const SolutionSet s = solve(make_system({p}), TrackOptions{.seed = static_cast<std::uint64_t>(trial + 1)});
        CHECK(s.certified());
        CHECK(s.n_paths == d);
        CHECK(static_cast<int>(s.solutions.size()) == d);
        for (const Complex& r : roots) CHECK(contains(s, vec({r}), 1e-9));
    }
}

TEST_CASE("path accounting with roots at infinity and multiple roots")
{
    const MultiPoly x = var(2, 0), y = var(2, 1);
    SUBCASE("one finite root")
    {
        const SolutionSet s = solve(make_system({x * y - cst(2, 1.0), x - cst(2, 2.0)}));
        CHECK(s.n_paths == 2);
        CHECK(s.n_at_infinity == 1);
        CHECK(s.n_failed == 0);
        REQUIRE(s.solutions.size() == 1);
        CHECK(contains(s, vec({2.0, 0.5}), 1e-10));
        CHECK(s.multiplicity_total() + s.n_at_infinity + s.n_failed == s.n_paths);
    }
    SUBCASE("double root")
    {
        const SolutionSet s = solve(make_system({x * x, y - cst(2, 1.0)}));
        CHECK(s.n_paths == 2);
        REQUIRE(s.solutions.size() == 1);
        CHECK(s.solutions[0].multiplicity == 2);
        CHECK(contains(s, vec({0.0, 1.0}), 1e-6));
        CHECK(s.multiplicity_total() + s.n_at_infinity + s.n_failed == s.n_paths);
    }
    SUBCASE("relative equilibrium system")
    {
        const SolutionSet s = solve(build_relative_equilibrium(Vorticities(1, 2, 3, 4), 1.0));
        CHECK(s.n_paths == 288);
        CHECK(static_cast<int>(s.paths.size()) == 288);
        CHECK(converged(s) == s.multiplicity_total());
        CHECK(s.multiplicity_total() + s.n_at_infinity + s.n_failed == s.n_paths);
        const PolySystem f = build_relative_equilibrium(Vorticities(1, 2, 3, 4), 1.0);
        for (const auto& sol : s.solutions) {
            CHECK(sol.residual <= 1e-8);
            if (sol.multiplicity > 1 || sol.is_collision) continue;
            // One more Newton step contracts the residual or it is already at roundoff.
            const double before = scaled_residual(f, sol.point);
            CVector x = sol.point;
            newton_polish(f, x, 1, 0.0);
            const double after = scaled_residual(f, x);
            CHECK((after <= before / 10.0 || after <= 1e-14));
        }
    }
}

TEST_CASE("solutions do not depend on the seed")
{
    const PolySystem col = build_collinear(Vorticities(1, 2, 3, 4));
    const SolutionSet ref = solve(col, TrackOptions{.seed = 1});
    CHECK(ref.certified());
    for (std::uint64_t seed : {2, 3, 4}) {
        const SolutionSet s = solve(col, TrackOptions{.seed = seed});
        CHECK(s.certified());
        CHECK(s.seed == seed);
        REQUIRE(s.solutions.size() == ref.solutions.size());
        for (std::size_t i = 0; i < s.solutions.size(); ++i) {
            CHECK((s.solutions[i].point - ref.solutions[i].point).cwiseAbs().maxCoeff() <= 1e-8);
            CHECK(s.solutions[i].multiplicity == ref.solutions[i].multiplicity);
        }
    }
}

TEST_CASE("Newton converges quadratically near a simple root")
{
    const MultiPoly x = var(1, 0);
    const PolySystem f = make_system({x * x - cst(1, 2.0)});
    const double root = std::sqrt(2.0);
    CVector z = vec({1.6});
    std::vector<double> err{std::abs(z(0) - root)};
    for (int k = 0; k < 3; ++k) {
        newton_polish(f, z, 1, 0.0);
        err.push_back(std::abs(z(0) - root));
    }
    // For x^2 - 2 the exact error recursion is e' = e^2 / (2 x).
    for (std::size_t k = 1; k < err.size(); ++k) {
        if (err[k - 1] < 1e-7) break;
        CHECK(err[k] <= err[k - 1] * err[k - 1]);
    }
    newton_polish(f, z);
    CHECK(std::abs(z(0) - root) <= 1e-15);
    CHECK(scaled_residual(f, z) <= 1e-15);
}

TEST_CASE("track options validation")
{
    CHECK_NOTHROW(TrackOptions{}.validate());
    CHECK_THROWS_AS(TrackOptions{.initial_step = 1e-8}.validate(), std::invalid_argument);
    CHECK_THROWS_AS(TrackOptions{.newton_tol = 0.0}.validate(), std::invalid_argument);
    CHECK_THROWS_AS(TrackOptions{.max_newton_iters = 0}.validate(), std::invalid_argument);
    CHECK_THROWS_AS(TrackOptions{.endgame_start = 1.0}.validate(), std::invalid_argument);
    CHECK_THROWS_AS(solve(make_system({var(1, 0)}), TrackOptions{.track_tol = -1.0}), std::invalid_argument);
}

TEST_CASE("gamma is unit modulus and seeded")
{
    CHECK(std::abs(std::abs(gamma_for_seed(1)) - 1.0) <= 1e-15);
    CHECK(gamma_for_seed(1) == gamma_for_seed(1));
    CHECK(gamma_for_seed(1) != gamma_for_seed(2));
}

TEST_CASE("randomized systems keep the common zeros")
{
    const std::vector<MultiPoly> eqs = collinear_collapse_equations(Vorticities(1, 1, 1, -1));
    const PolySystem r = randomize_system(eqs, 4, 3);
    CHECK(r.is_square());
    CHECK(r.nvars() == 4);
    const CVector origin = CVector::Zero(4);
    for (const auto& p : eqs) REQUIRE(std::abs(poly_eval(p, origin)) == 0.0);
    CHECK(r.evaluate(origin).cwiseAbs().maxCoeff() == 0.0);
    CHECK(r.evaluate(CVector::Ones(4)).cwiseAbs().maxCoeff() > 0.0);
    CHECK_THROWS_AS(randomize_system(eqs, 7, 3), std::invalid_argument);
}
