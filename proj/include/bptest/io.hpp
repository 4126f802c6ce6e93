// Copyright 2026 The bptest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BPTEST_IO_HPP
#define BPTEST_IO_HPP

// File formats and report serialization.
//
// State file: {"n": int, "d": int, "amplitudes": [[re, im], ...]} in the
// global index convention. Graph file: the vertex count, then one "u v" edge
// per line; '#' starts a comment.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bptest/ensembles.hpp"
#include "bptest/haar.hpp"
#include "bptest/measures.hpp"
#include "bptest/testers.hpp"

namespace bptest {

/// Malformed input file; the message carries the diagnostic.
class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Loader accepts and re-normalizes states whose norm is within this of 1.
inline constexpr double kLoadNormTolerance = 1e-6;

PureState parse_state(const nlohmann::json& j);
PureState parse_state(std::istream& in);
PureState load_state(const std::string& path);
nlohmann::json state_to_json(const PureState& psi);

Graph parse_graph(std::istream& in);
Graph load_graph(const std::string& path);

/// %.12g.
std::string format_double(double x);
/// x rounded to 12 significant digits, for JSON output.
double round12(double x);

std::string bound_csv_header();
std::string bound_csv_row(const BoundReport& r);
nlohmann::json bound_to_json(const BoundReport& r);

std::string tail_csv_header();
std::string tail_csv_row(const TailEstimate& t);
nlohmann::json tail_to_json(const TailEstimate& t);

nlohmann::json outcome_to_json(const TestOutcome& o, int n);

/// gamma_max for every cut containing party 0, plus Gamma_max, E_G and distance_to_bp.
nlohmann::json measure_report(const PureState& psi);

}  // namespace bptest

#endif
