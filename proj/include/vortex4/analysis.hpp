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

#ifndef VORTEX4_ANALYSIS_HPP
#define VORTEX4_ANALYSIS_HPP

#include <map>
#include <string>
#include <vector>

#include "vortex4/core.hpp"

namespace vortex4 {

struct Totals {
    double gamma = 0.0;  ///< total vorticity
    double L = 0.0;      ///< total vortex angular momentum
};

/// Equality thresholds. `exact` applies to conditions the user states
/// exactly (L = 0, Gamma = 0); `ratio` to detecting special ratios.
struct AnalysisTolerances {
    double exact = 1e-12;
    double ratio = 1e-9;
};

struct NecessaryConditions {
    bool equilibria_possible = false;   ///< L = 0
    bool translating_possible = false;  ///< Gamma = 0
};

struct ExceptionalFlags {
    bool sqrt3 = false;       ///< two equal pairs with ratio (sqrt3 - 2)^{+-1}
    bool minus_half = false;  ///< three equal strengths, each -1/2 of the fourth
};

/// Vertex labels (1-based) in the role order of the diagram's constraint set.
using DiagramAssignment = std::vector<int>;
using DiagramCompat = std::map<std::string, std::vector<DiagramAssignment>>;

struct VorticityReport {
    double gamma_total = 0.0;
    double L = 0.0;
    bool equilibria_possible = false;
    bool translating_possible = false;
    bool exceptional_sqrt3 = false;
    bool exceptional_minus_half = false;
    DiagramCompat diagram_compat;

    /// No singular-sequence diagram is compatible with these strengths.
    bool finiteness_certificate() const;
};

Totals totals(const Vorticities& g);
NecessaryConditions necessary_conditions(const Vorticities& g, const AnalysisTolerances& tol = {});
ExceptionalFlags exceptional_flags(const Vorticities& g, const AnalysisTolerances& tol = {});

/// Diagram names in report order.
const std::vector<std::string>& diagram_names();

/// For every diagram, the index assignments whose vorticity constraints hold.
/// Diagrams without satisfying assignments are absent from the map.
DiagramCompat diagram_constraints(const Vorticities& g, const AnalysisTolerances& tol = {});

VorticityReport analyze(const Vorticities& g, const AnalysisTolerances& tol = {});

/// |a - b| <= tol * max(|a|, |b|, floor).
bool nearly_equal(double a, double b, double tol, double floor = 0.0);

}  // namespace vortex4

#endif  // VORTEX4_ANALYSIS_HPP
