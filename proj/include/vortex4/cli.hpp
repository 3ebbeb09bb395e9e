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

#ifndef VORTEX4_CLI_HPP
#define VORTEX4_CLI_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "vortex4/core.hpp"

namespace vortex4::cli {

enum class ExitCode : int { success = 0, mismatch = 1, invalid_input = 2, uncertified = 3 };

/// Evaluates a real expression built from decimal literals, sqrtN, sqrt(...),
/// pi, unary signs, + - * / and parentheses. Throws std::invalid_argument.
double parse_expression(std::string_view text);

/// Four comma-separated expressions. Throws std::invalid_argument.
std::array<double, 4> parse_gammas(std::string_view text);

enum class LambdaChoice { plus, minus, both };
enum class Format { json, csv };

struct Tolerances {
    double track = 1e-10;
    double newton = 1e-12;
    double dedup = 1e-6;
    double real = 1e-8;
    double invariant = 1e-8;
    double residual = 1e-8;
    double dynamics = 1e-6;

    /// Throws std::invalid_argument unless every value is positive and finite.
    void validate() const;
};

struct RunConfig {
    std::string command;
    std::string kind;
    std::string gammas_text;
    std::array<double, 4> gammas{};
    LambdaChoice lambda = LambdaChoice::both;
    std::optional<double> theta;
    int theta_grid = 0;
    std::uint64_t seed = 1;
    Tolerances tol;
    bool verify_dynamics = false;
    std::array<double, 8> positions{};
    double T = 1.0;
    std::optional<double> dt;
    std::string out;
    Format format = Format::json;
};

struct Outcome {
    nlohmann::ordered_json report;
    /// Set when the command has a tabular form and csv output was requested.
    std::optional<std::string> csv;
    ExitCode code = ExitCode::success;
};

Outcome cmd_analyze(const RunConfig& cfg);
Outcome cmd_solve(const RunConfig& cfg);
Outcome cmd_verify_paper(const RunConfig& cfg);
Outcome cmd_simulate(const RunConfig& cfg);

/// Parses the command line, dispatches and writes the report to --out or `out`.
/// Diagnostics go to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vortex4::cli

#endif  // VORTEX4_CLI_HPP
