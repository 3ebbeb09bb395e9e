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

#include <boost/multiprecision/cpp_complex.hpp>

#include "vortex4/polynomial.hpp"
#include "vortex4/systems.hpp"

using namespace vortex4;
using Wide = boost::multiprecision::cpp_complex_50;

namespace {

Wide wide_eval(const MultiPoly& p, const CVector& x)
{
    Wide sum = 0;
    for (const auto& [e, c] : p.terms()) {
        Wide t(c.real(), c.imag());
        for (std::size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) t *= Wide(x(static_cast<Eigen::Index>(i)).real(), x(static_cast<Eigen::Index>(i)).imag());
        sum += t;
    }
    return sum;
}

MultiPoly random_poly(int nvars, int degree, int terms, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> var(0, nvars - 1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    MultiPoly p(nvars);
    for (int t = 0; t < terms; ++t) {
        MultiPoly::Exponent e(static_cast<std::size_t>(nvars), 0);
        const int d = std::uniform_int_distribution<int>(0, degree)(rng);
        for (int k = 0; k < d; ++k) ++e[static_cast<std::size_t>(var(rng))];
        p.add_term(e, Complex(u(rng), u(rng)));
    }
    return p;
}

CVector random_point(int n, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    CVector x(n);
    for (int i = 0; i < n; ++i) x(i) = Complex(u(rng), u(rng));
    return x;
}

std::vector<PolySystem> built_systems()
{
    const Vorticities g(1, 2, 3, -11.0 / 6);
    return {build_relative_equilibrium(Vorticities(-2, 1, 1, 1), 1.0), build_relative_equilibrium(g, -1.0),
            build_collinear(Vorticities(1, 2, 3, 4)),             build_collapse(g, 1.0),
            build_equilibrium(Vorticities(1, 1, 1, -1)),          build_translating(Vorticities(1, 1, 1, -3))};
}

}  // namespace

TEST_CASE("vorticities reject zero strengths and satisfy the positivity identity")
{
    CHECK_THROWS_AS(Vorticities(0, 1, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(Vorticities(1, 1, 1, 0), std::invalid_argument);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int k = 0; k < 100; ++k) {
        const Vorticities g(u(rng), u(rng), u(rng), u(rng));
        const double G = g.total(), L = g.angular_momentum();
        double sq = 0.0;
        for (int n = 0; n < 4; ++n) sq += g[n] * g[n];
        CHECK(G * G - 2 * L == doctest::Approx(sq).epsilon(1e-12));
        CHECK(G * G - 2 * L > 0.0);
    }
}

TEST_CASE("polynomial arithmetic keeps the sparse form canonical")
{
    const MultiPoly x = MultiPoly::variable(2, 0);
    const MultiPoly y = MultiPoly::variable(2, 1);
    const MultiPoly p = x * x - y * y;
    CHECK(p.terms().size() == 2);
    CHECK(p.degree() == 2);
    CHECK((p - p).is_zero());
    CHECK((p - p).degree() == 0);
    CHECK(((x + y) * (x - y) - p).is_zero());
    CHECK(p.derivative(0).terms().size() == 1);
    CHECK_THROWS_AS(MultiPoly::variable(2, 2), std::out_of_range);
    CHECK_THROWS_AS(x + MultiPoly::variable(3, 0), std::invalid_argument);
}

TEST_CASE("poly_eval on the shared symbols")
{
    const SymbolTable t(Vorticities(1, 1, 1, -3), false);
    CVector ones = CVector::Ones(8);
    CHECK(std::abs(poly_eval(t.M_z(), ones)) == 0.0);

    const SymbolTable s(Vorticities(1, 1, 1, 1), false);
    CHECK(poly_eval(s.F_z(), ones) == Complex(4.0, 0.0));
    CHECK_THROWS_AS(poly_eval(s.F_z(), CVector::Ones(4).eval()), std::invalid_argument);
}

TEST_CASE("poly_eval agrees with an extended-precision oracle")
{
    std::mt19937_64 rng(11);
    for (int k = 0; k < 200; ++k) {
        const MultiPoly p = random_poly(5, 3, 12, rng);
        const CVector x = random_point(5, rng);
        const Complex v = poly_eval(p, x);
        const Wide ref = wide_eval(p, x);
        const Complex r(static_cast<double>(ref.real()), static_cast<double>(ref.imag()));
        double magnitude = 0.0;
        for (const auto& [e, c] : p.terms()) {
            double t = std::abs(c);
            for (std::size_t i = 0; i < e.size(); ++i) t *= std::pow(std::abs(x(static_cast<Eigen::Index>(i))), e[i]);
            magnitude += t;
        }
        CHECK(std::abs(v - r) <= 1e-12 * std::max(1.0, magnitude));
    }
}

TEST_CASE("poly_eval is linear in the polynomial")
{
    std::mt19937_64 rng(5);
    for (int k = 0; k < 100; ++k) {
        const MultiPoly p = random_poly(4, 4, 10, rng);
        const MultiPoly q = random_poly(4, 4, 10, rng);
        const CVector x = random_point(4, rng);
        const Complex lhs = poly_eval(p + q, x);
        const Complex rhs = poly_eval(p, x) + poly_eval(q, x);
        CHECK(std::abs(lhs - rhs) <= 1e-14 * std::max({1.0, std::abs(poly_eval(p, x)), std::abs(poly_eval(q, x))}) * 10);
    }
}

TEST_CASE("PolySystem evaluation matches term-by-term evaluation")
{
    std::mt19937_64 rng(3);
    for (const PolySystem& sys : built_systems()) {
        for (int k = 0; k < 10; ++k) {
            const CVector x = random_point(sys.nvars(), rng);
            const CVector v = sys.evaluate(x);
            for (int i = 0; i < sys.size(); ++i) {
                const Complex ref = poly_eval(sys[i], x);
                CHECK(std::abs(v(i) - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
            }
        }
    }
}

TEST_CASE("poly_jacobian")
{
    const MultiPoly x = MultiPoly::variable(1, 0);
    const PolySystem quad({x * x - MultiPoly::constant(1, 1.0)}, {"x"});
    CVector at(1);
    at << 3.0;
    CHECK(poly_jacobian(quad, at)(0, 0) == Complex(6.0, 0.0));
    CHECK(total_degree(quad) == 2);
    CHECK_THROWS_AS(poly_jacobian(quad, CVector::Ones(2).eval()), std::invalid_argument);

    SUBCASE("linear moment row")
    {
        const Vorticities g(1, 2, 3, 4);
        const PolySystem re = build_relative_equilibrium(g, 1.0);
        std::mt19937_64 rng(2);
        const CMatrix J = poly_jacobian(re, random_point(8, rng));
        for (int j = 0; j < 8; ++j) CHECK(J(0, j) == Complex(j < 4 ? g[j] : 0.0, 0.0));
    }

    SUBCASE("central differences on every built system")
    {
        std::mt19937_64 rng(13);
        const double h = 1e-6;
        for (const PolySystem& sys : built_systems()) {
            double worst = 0.0;
            for (int k = 0; k < 100; ++k) {
                const CVector p = random_point(sys.nvars(), rng);
                const CMatrix J = poly_jacobian(sys, p);
                for (int j = 0; j < sys.nvars(); ++j) {
                    CVector a = p, b = p;
                    a(j) += h;
                    b(j) -= h;
                    const CVector fd = (sys.evaluate(a) - sys.evaluate(b)) / (2 * h);
                    for (int i = 0; i < sys.size(); ++i)
                        worst = std::max(worst, std::abs(fd(i) - J(i, j)) / (1.0 + std::abs(J(i, j))));
                }
            }
            CHECK(worst <= 1e-6);
        }
    }
}

TEST_CASE("total degrees of the built systems")
{
    CHECK(total_degree(build_relative_equilibrium(Vorticities(-2, 1, 1, 1), 1.0)) == 288);
    CHECK(total_degree(build_relative_equilibrium(Vorticities(1, 2, 3, 4), -1.0)) == 288);
    CHECK(total_degree(build_collinear(Vorticities(1, 2, 3, 4))) == 24);
    CHECK(total_degree(build_collapse(Vorticities(1, 1, 1, -1), 0.5)) == 288);
    CHECK(total_degree(build_equilibrium(Vorticities(1, 1, 1, -1))) == 4);
    CHECK(build_relative_equilibrium(Vorticities(1, 2, 3, 4), 1.0).degrees() == std::vector<int>{1, 1, 2, 1, 3, 3, 4, 4});
    CHECK(build_collinear(Vorticities(1, 2, 3, 4)).degrees() == std::vector<int>{1, 2, 3, 4});
}
