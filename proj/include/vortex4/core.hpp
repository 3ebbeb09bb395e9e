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

#ifndef VORTEX4_CORE_HPP
#define VORTEX4_CORE_HPP

#include <algorithm>
#include <array>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace vortex4 {

using Complex = std::complex<double>;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using CVector = VectorX<Complex>;
using CMatrix = MatrixX<Complex>;

/// Positions (or conjugate coordinates) of the four vortices.
using Positions = Eigen::Matrix<Complex, 4, 1>;

inline constexpr int kVortexCount = 4;

/// Raised when an operation's mathematical precondition does not hold
/// (e.g. a collapse system requested for vorticities with L != 0).
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when two vortices coincide where a collision-free configuration is required.
class CollisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The four nonzero vortex strengths.
class Vorticities {
public:
    explicit Vorticities(const std::array<double, 4>& gammas);
    Vorticities(double g1, double g2, double g3, double g4)
        : Vorticities(std::array<double, 4>{g1, g2, g3, g4}) {}

    double operator[](int n) const { return gammas_[static_cast<std::size_t>(n)]; }
    const std::array<double, 4>& values() const { return gammas_; }

    /// Total vorticity, the sum of all strengths.
    double total() const;
    /// Total vortex angular momentum, the sum of pairwise products.
    double angular_momentum() const;

    double max_abs() const;

    /// Relabel: result[k] = (*this)[perm[k]].
    Vorticities permuted(const std::array<int, 4>& perm) const;

private:
    std::array<double, 4> gammas_;
};

enum class ConfigKind { relative_equilibrium, collapse, equilibrium, translating };

std::string to_string(ConfigKind kind);

/// A point of the complexified stationary-configuration problem.
///
/// For a real configuration w is the complex conjugate of z. `lambda` is the
/// rotation/scaling multiplier (|lambda| = 1 after normalization); it is unused
/// for equilibria and translating configurations.
struct Configuration {
    Positions z = Positions::Zero();
    Positions w = Positions::Zero();
    Complex lambda{1.0, 0.0};
    ConfigKind kind = ConfigKind::relative_equilibrium;

    /// max |coordinate| over z and w, floored at 1.
    double scale() const;
};

/// max |x_i| floored at 1; the reference magnitude for relative tolerances.
template <typename Derived>
double coordinate_scale(const Eigen::MatrixBase<Derived>& x)
{
    double s = 1.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) s = std::max(s, std::abs(x(i)));
    return s;
}

}  // namespace vortex4

#endif  // VORTEX4_CORE_HPP
