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

#ifndef VORTEX4_POLYNOMIAL_HPP
#define VORTEX4_POLYNOMIAL_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vortex4/core.hpp"

namespace vortex4 {

/// Sparse multivariate polynomial over `Scalar`.
///
/// Terms are keyed by dense exponent vectors of length nvars(). Zero
/// coefficients are never stored, so the zero polynomial has no terms.
template <typename Scalar>
class Polynomial {
public:
    using Exponent = std::vector<int>;
    using TermMap = std::map<Exponent, Scalar>;

    Polynomial() = default;
    explicit Polynomial(int nvars) : nvars_(nvars)
    {
        if (nvars < 0) throw std::invalid_argument("Polynomial: negative variable count");
    }

    static Polynomial constant(int nvars, Scalar c)
    {
        Polynomial p(nvars);
        p.add_term(Exponent(static_cast<std::size_t>(nvars), 0), c);
        return p;
    }

    static Polynomial variable(int nvars, int index, Scalar c = Scalar(1))
    {
        if (index < 0 || index >= nvars) throw std::out_of_range("Polynomial::variable: index out of range");
        Exponent e(static_cast<std::size_t>(nvars), 0);
        e[static_cast<std::size_t>(index)] = 1;
        Polynomial p(nvars);
        p.add_term(std::move(e), c);
        return p;
    }

    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Maximum total exponent over the stored terms; 0 for the zero polynomial.
    int degree() const
    {
        int d = 0;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (int k : e) s += k;
            d = std::max(d, s);
        }
        return d;
    }

    Polynomial& add_term(Exponent e, Scalar c)
    {
        if (static_cast<int>(e.size()) != nvars_)
            throw std::invalid_argument("Polynomial::add_term: exponent length mismatch");
        for (int k : e)
            if (k < 0) throw std::invalid_argument("Polynomial::add_term: negative exponent");
        if (c == Scalar(0)) return *this;
        auto [it, inserted] = terms_.try_emplace(std::move(e), c);
        if (!inserted) {
            it->second += c;
            if (it->second == Scalar(0)) terms_.erase(it);
        }
        return *this;
    }

    Polynomial& operator+=(const Polynomial& q)
    {
        check_compatible(q);
        for (const auto& [e, c] : q.terms_) add_term(e, c);
        return *this;
    }

    Polynomial& operator-=(const Polynomial& q)
    {
        check_compatible(q);
        for (const auto& [e, c] : q.terms_) add_term(e, -c);
        return *this;
    }

    Polynomial& operator*=(Scalar s)
    {
        if (s == Scalar(0)) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend Polynomial operator+(Polynomial p, const Polynomial& q) { return p += q; }
    friend Polynomial operator-(Polynomial p, const Polynomial& q) { return p -= q; }
    friend Polynomial operator*(Polynomial p, Scalar s) { return p *= s; }
    friend Polynomial operator*(Scalar s, Polynomial p) { return p *= s; }
    friend Polynomial operator-(Polynomial p) { return p *= Scalar(-1); }

    friend Polynomial operator*(const Polynomial& p, const Polynomial& q)
    {
        p.check_compatible(q);
        Polynomial r(p.nvars_);
        for (const auto& [ep, cp] : p.terms_) {
            for (const auto& [eq, cq] : q.terms_) {
                Exponent e(ep);
                for (std::size_t i = 0; i < e.size(); ++i) e[i] += eq[i];
                r.add_term(std::move(e), cp * cq);
            }
        }
        return r;
    }

    /// Symbolic partial derivative with respect to variable `index`.
    Polynomial derivative(int index) const
    {
        if (index < 0 || index >= nvars_) throw std::out_of_range("Polynomial::derivative: index out of range");
        Polynomial d(nvars_);
        const auto k = static_cast<std::size_t>(index);
        for (const auto& [e, c] : terms_) {
            if (e[k] == 0) continue;
            Exponent de(e);
            de[k] -= 1;
            d.add_term(std::move(de), c * Scalar(e[k]));
        }
        return d;
    }

    template <typename Derived>
    Scalar operator()(const Eigen::MatrixBase<Derived>& x) const;

private:
    void check_compatible(const Polynomial& q) const
    {
        if (q.nvars_ != nvars_) throw std::invalid_argument("Polynomial: variable count mismatch");
    }

    int nvars_ = 0;
    TermMap terms_;
};

/// Evaluates p at x term by term.
template <typename Scalar, typename Derived>
Scalar poly_eval(const Polynomial<Scalar>& p, const Eigen::MatrixBase<Derived>& x)
{
    if (x.size() != p.nvars()) throw std::invalid_argument("poly_eval: dimension mismatch");
    Scalar sum(0);
    for (const auto& [e, c] : p.terms()) {
        Scalar t = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) t *= Scalar(x(static_cast<Eigen::Index>(i)));
        sum += t;
    }
    return sum;
}

template <typename Scalar>
template <typename Derived>
Scalar Polynomial<Scalar>::operator()(const Eigen::MatrixBase<Derived>& x) const
{
    return poly_eval(*this, x);
}

using MultiPoly = Polynomial<Complex>;

/// Square (by construction of the builders) polynomial system with metadata.
///
/// Immutable after construction. The constructor precomputes a flattened
/// representation of every polynomial and of every partial derivative so that
/// evaluate() and jacobian() avoid map traversal on the hot path.
class PolySystem {
public:
    PolySystem() = default;
    PolySystem(std::vector<MultiPoly> polys, std::vector<std::string> var_names, std::string gauge_note = {},
               std::vector<MultiPoly> collision_factors = {});

    int nvars() const { return nvars_; }
    int size() const { return static_cast<int>(polys_.size()); }
    bool is_square() const { return size() == nvars_; }

    const std::vector<MultiPoly>& polys() const { return polys_; }
    const MultiPoly& operator[](int i) const { return polys_[static_cast<std::size_t>(i)]; }
    const std::vector<std::string>& var_names() const { return var_names_; }
    const std::string& gauge_note() const { return gauge_note_; }
    const std::vector<MultiPoly>& collision_factors() const { return collision_factors_; }

    std::vector<int> degrees() const;

    /// F(x), one entry per equation.
    CVector evaluate(const CVector& x) const;
    /// dF/dx evaluated at x, size() x nvars().
    CMatrix jacobian(const CVector& x) const;
    /// Both at once, sharing the power table.
    void evaluate_with_jacobian(const CVector& x, CVector& value, CMatrix& jac) const;

    /// min over collision factors of |c(x)|; +inf when there are none.
    double min_collision_factor(const CVector& x) const;

private:
    struct FlatPoly {
        std::vector<Complex> coeffs;
        std::vector<int> start;    // term t uses factors[start[t] .. start[t+1])
        std::vector<int> factors;  // indices into the power table
    };
    FlatPoly flatten(const MultiPoly& p) const;
    void fill_powers(const CVector& x, std::vector<Complex>& pw) const;
    Complex eval_flat(const FlatPoly& f, const std::vector<Complex>& pw) const;

    int nvars_ = 0;
    int max_exp_ = 0;
    std::vector<MultiPoly> polys_;
    std::vector<std::string> var_names_;
    std::string gauge_note_;
    std::vector<MultiPoly> collision_factors_;
    std::vector<FlatPoly> flat_;
    std::vector<FlatPoly> flat_jac_;  // row-major over (equation, variable)
};

/// Product of equation degrees (the Bezout number of the square system).
long long total_degree(const PolySystem& sys);

/// Jacobian of a square system; throws std::invalid_argument on dimension mismatch.
CMatrix poly_jacobian(const PolySystem& sys, const CVector& x);

}  // namespace vortex4

#endif  // VORTEX4_POLYNOMIAL_HPP
