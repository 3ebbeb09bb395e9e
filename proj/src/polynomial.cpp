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

#include "vortex4/polynomial.hpp"

#include <cmath>
#include <limits>

namespace vortex4 {

PolySystem::PolySystem(std::vector<MultiPoly> polys, std::vector<std::string> var_names, std::string gauge_note,
                       std::vector<MultiPoly> collision_factors)
    : polys_(std::move(polys)),
      var_names_(std::move(var_names)),
      gauge_note_(std::move(gauge_note)),
      collision_factors_(std::move(collision_factors))
{
    if (polys_.empty()) throw std::invalid_argument("PolySystem: no equations");
    nvars_ = polys_.front().nvars();
    for (const auto& p : polys_)
        if (p.nvars() != nvars_) throw std::invalid_argument("PolySystem: equations disagree on variable count");
    for (const auto& c : collision_factors_)
        if (c.nvars() != nvars_) throw std::invalid_argument("PolySystem: collision factor variable count mismatch");
    if (var_names_.empty())
        for (int i = 0; i < nvars_; ++i) var_names_.push_back("x" + std::to_string(i + 1));
    if (static_cast<int>(var_names_.size()) != nvars_)
        throw std::invalid_argument("PolySystem: variable name count mismatch");

    for (const auto& p : polys_)
        for (const auto& [e, c] : p.terms())
            for (int k : e) max_exp_ = std::max(max_exp_, k);
    for (const auto& p : polys_) {
        flat_.push_back(flatten(p));
        for (int j = 0; j < nvars_; ++j) flat_jac_.push_back(flatten(p.derivative(j)));
    }
}

std::vector<int> PolySystem::degrees() const
{
    std::vector<int> d;
    d.reserve(polys_.size());
    for (const auto& p : polys_) d.push_back(p.degree());
    return d;
}

PolySystem::FlatPoly PolySystem::flatten(const MultiPoly& p) const
{
    const int stride = max_exp_ + 1;
    FlatPoly f;
    f.start.push_back(0);
    for (const auto& [e, c] : p.terms()) {
        f.coeffs.push_back(c);
        for (int i = 0; i < nvars_; ++i)
            if (e[static_cast<std::size_t>(i)] != 0) f.factors.push_back(i * stride + e[static_cast<std::size_t>(i)]);
        f.start.push_back(static_cast<int>(f.factors.size()));
    }
    return f;
}

void PolySystem::fill_powers(const CVector& x, std::vector<Complex>& pw) const
{
    if (x.size() != nvars_) throw std::invalid_argument("PolySystem: dimension mismatch");
    const int stride = max_exp_ + 1;
    pw.assign(static_cast<std::size_t>(nvars_ * stride), Complex(1.0, 0.0));
    for (int i = 0; i < nvars_; ++i)
        for (int k = 1; k < stride; ++k)
            pw[static_cast<std::size_t>(i * stride + k)] = pw[static_cast<std::size_t>(i * stride + k - 1)] * x(i);
}

Complex PolySystem::eval_flat(const FlatPoly& f, const std::vector<Complex>& pw) const
{
    Complex sum(0.0, 0.0);
    const int* idx = f.factors.data();
    for (std::size_t t = 0; t < f.coeffs.size(); ++t) {
        Complex v = f.coeffs[t];
        for (int k = f.start[t]; k < f.start[t + 1]; ++k) v *= pw[static_cast<std::size_t>(idx[k])];
        sum += v;
    }
    return sum;
}

CVector PolySystem::evaluate(const CVector& x) const
{
    std::vector<Complex> pw;
    fill_powers(x, pw);
    CVector v(size());
    for (int i = 0; i < size(); ++i) v(i) = eval_flat(flat_[static_cast<std::size_t>(i)], pw);
    return v;
}

CMatrix PolySystem::jacobian(const CVector& x) const
{
    std::vector<Complex> pw;
    fill_powers(x, pw);
    CMatrix J(size(), nvars_);
    for (int i = 0; i < size(); ++i)
        for (int j = 0; j < nvars_; ++j)
            J(i, j) = eval_flat(flat_jac_[static_cast<std::size_t>(i * nvars_ + j)], pw);
    return J;
}

void PolySystem::evaluate_with_jacobian(const CVector& x, CVector& value, CMatrix& jac) const
{
    std::vector<Complex> pw;
    fill_powers(x, pw);
    value.resize(size());
    jac.resize(size(), nvars_);
    for (int i = 0; i < size(); ++i) {
        value(i) = eval_flat(flat_[static_cast<std::size_t>(i)], pw);
        for (int j = 0; j < nvars_; ++j)
            jac(i, j) = eval_flat(flat_jac_[static_cast<std::size_t>(i * nvars_ + j)], pw);
    }
}

double PolySystem::min_collision_factor(const CVector& x) const
{
    double m = std::numeric_limits<double>::infinity();
    for (const auto& c : collision_factors_) m = std::min(m, std::abs(poly_eval(c, x)));
    return m;
}

long long total_degree(const PolySystem& sys)
{
    long long d = 1;
    for (int k : sys.degrees()) d *= k;
    return d;
}

CMatrix poly_jacobian(const PolySystem& sys, const CVector& x)
{
    if (!sys.is_square()) throw std::invalid_argument("poly_jacobian: system is not square");
    return sys.jacobian(x);
}

}  // namespace vortex4
