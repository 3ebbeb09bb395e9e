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

#include "vortex4/core.hpp"

#include <cmath>
#include <sstream>

namespace vortex4 {

Vorticities::Vorticities(const std::array<double, 4>& gammas) : gammas_(gammas)
{
    for (std::size_t n = 0; n < gammas_.size(); ++n) {
        if (!std::isfinite(gammas_[n])) {
            std::ostringstream msg;
            msg << "vortex strength " << n + 1 << " is not finite";
            throw std::invalid_argument(msg.str());
        }
        if (gammas_[n] == 0.0) {
            std::ostringstream msg;
            msg << "vortex strength " << n + 1 << " is zero; all strengths must be nonzero";
            throw std::invalid_argument(msg.str());
        }
    }
}

double Vorticities::total() const
{
    return gammas_[0] + gammas_[1] + gammas_[2] + gammas_[3];
}

double Vorticities::angular_momentum() const
{
    double l = 0.0;
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t k = j + 1; k < 4; ++k) l += gammas_[j] * gammas_[k];
    return l;
}

double Vorticities::max_abs() const
{
    double m = 0.0;
    for (double g : gammas_) m = std::max(m, std::abs(g));
    return m;
}

Vorticities Vorticities::permuted(const std::array<int, 4>& perm) const
{
    std::array<double, 4> g{};
    for (std::size_t k = 0; k < 4; ++k) g[k] = gammas_.at(static_cast<std::size_t>(perm[k]));
    return Vorticities(g);
}

std::string to_string(ConfigKind kind)
{
    switch (kind) {
    case ConfigKind::relative_equilibrium: return "relative_equilibrium";
    case ConfigKind::collapse: return "collapse";
    case ConfigKind::equilibrium: return "equilibrium";
    case ConfigKind::translating: return "translating";
    }
    return "unknown";
}

double Configuration::scale() const
{
    return std::max(coordinate_scale(z), coordinate_scale(w));
}

}  // namespace vortex4
