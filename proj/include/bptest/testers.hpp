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

#ifndef BPTEST_TESTERS_HPP
#define BPTEST_TESTERS_HPP

// Measurement-level simulation of the swap test, the product test and the
// testers built on it. The product test measures {Pi_sym, Pi_anti} on each
// pair of corresponding blocks of two copies; all outcomes are sampled
// jointly from their exact distribution.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bptest/rng.hpp"
#include "bptest/tensor.hpp"

namespace bptest {

/// Disjoint blocks covering all parties.
using Partition = std::vector<std::vector<int>>;

/// Throws PreconditionError unless `parts` partitions {0, ..., n-1} into nonempty blocks.
void validate_partition(const Partition& parts, int n);
Partition singleton_partition(int n);
Partition cut_partition(const Bipartition& s);

/// <psi phi| Pi_sym |psi phi> = (1 + |<psi|phi>|^2) / 2.
double swap_accept_probability(const PureState& psi, const PureState& phi);
/// One swap test; true means the symmetric outcome.
bool swap_test(const PureState& psi, const PureState& phi, Rng& rng);

/// Tr(rho_A^2) for the reduced state on the parties in `mask`.
double subsystem_purity(const PureState& psi, std::uint64_t mask);

/// Probability that every block swap test passes:
/// 2^{-m} sum over block subsets T of Tr(rho_T^2).
double product_test_probability(const PureState& psi, const Partition& parts);
/// Same value by applying the tensor product of block symmetric projectors to
/// |psi>|psi> explicitly. Needs d^{2n} within the state cap.
double product_test_probability_projector(const PureState& psi, const Partition& parts);

/// Joint outcome distribution. Entry o has bit b set iff block b failed.
std::vector<double> product_test_distribution(const PureState& psi, const Partition& parts);

struct ProductTestResult {
    bool accepted = false;
    std::vector<bool> block_passed;
};

ProductTestResult product_test(const PureState& psi, const Partition& parts, Rng& rng);

/// Copy budget exhausted.
class OracleExhausted : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Dispenses identical copies of a fixed state and counts them.
class StateOracle {
  public:
    explicit StateOracle(PureState state, std::optional<std::uint64_t> budget = std::nullopt);

    /// Takes `count` copies. Throws OracleExhausted past the budget.
    const PureState& draw(std::uint64_t count = 1);
    std::uint64_t copies_dispensed() const { return dispensed_; }
    const PureState& peek() const { return state_; }

  private:
    PureState state_;
    std::optional<std::uint64_t> budget_;
    std::uint64_t dispensed_ = 0;
};

struct Repetition {
    /// Cut under test; 0 for the multipartite tester.
    std::uint64_t cut = 0;
    int index = 0;
    bool accepted = false;
    std::vector<bool> block_passed;
};

struct TestOutcome {
    bool accepted = false;
    std::uint64_t copies_used = 0;
    /// Exact probability that the whole schedule accepts.
    std::optional<double> accept_probability;
    /// Bipartite tester only: sum over cuts of the chance a cut passes all its
    /// repetitions, the union bound on a false accept.
    std::optional<double> union_bound;
    std::vector<Repetition> transcript;
};

/// Product test over singletons, `reps` times on fresh copy pairs.
TestOutcome mp_tester(StateOracle& oracle, int reps, Rng& rng);

inline constexpr int kMaxSweepParties = 10;

/// Runs the two-block product test `reps_per_cut` times on every cut containing
/// party 0. Accepts iff some cut passes all of its repetitions.
TestOutcome bp_tester_naive(StateOracle& oracle, int reps_per_cut, Rng& rng);

enum class TesterKind { mp, bp };

/// Number of accepting runs among `trials` independent runs; trial i uses
/// substream(seed, i).
std::uint64_t count_accepts(TesterKind kind, const PureState& psi, int reps, std::uint64_t trials, std::uint64_t seed);

}  // namespace bptest

#endif
