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

#ifndef BPTEST_HAAR_HPP
#define BPTEST_HAAR_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "bptest/rng.hpp"
#include "bptest/tensor.hpp"

namespace bptest {

/// Haar-random unit vector: normalized i.i.d. standard complex Gaussians.
CVector haar_vector(std::uint64_t dim, Rng& rng);
PureState haar_state(int n, int d, Rng& rng);

/// Haar-random unitary (QR of a Ginibre matrix with the phase fix).
CMatrix haar_unitary(int dim, Rng& rng);

/// Applies one local unitary per party.
PureState apply_local_unitaries(const PureState& psi, std::span<const CMatrix> locals);

/// Largest Schmidt coefficient across s : s^c. Trivial cuts give 1.
double gamma_max(const PureState& psi, const Bipartition& s);

/// Max of gamma_max over every nontrivial cut. Throws for n = 1.
double capital_gamma_max(const PureState& psi);

/// True iff some cut has gamma_max > threshold; stops at the first such cut.
bool schmidt_exceeds(const PureState& psi, double threshold);

/// Constants of the Schmidt-tail bound P(Gamma_max > gamma) <= c1 2^n exp(-c2 d^n),
/// valid for n > n_threshold.
struct TailConstants {
    double c1 = 0;
    double c2 = 0;
    double n_threshold = 0;
};

/// Requires sqrt(3)/2 <= gamma < 1 and d >= 2.
TailConstants lemma4_constants(double gamma, int d);

/// c1 2^n exp(-c2 d^n), evaluated in log space.
double tail_bound(const TailConstants& c, int n, int d);

/// Upper end of the two-sided 95% Wilson score interval.
double wilson_upper(std::uint64_t successes, std::uint64_t trials);

struct TailEstimate {
    int n = 0;
    int d = 0;
    double gamma = 0;
    std::uint64_t samples = 0;
    std::uint64_t exceed_count = 0;
    double frequency = 0;
    double wilson_upper = 0;
    double lemma_bound = 0;
    double n_threshold = 0;
    std::uint64_t seed = 0;
};

/// Monte Carlo estimate of P(Gamma_max > gamma). Sample i uses substream(seed, i).
TailEstimate tail_mc(int n, int d, double gamma, std::uint64_t samples, std::uint64_t seed);
TailEstimate tail_mc_serial(int n, int d, double gamma, std::uint64_t samples, std::uint64_t seed);

inline constexpr std::uint64_t kDefaultRejectionBudget = 1'000'000;

/// Rejection sampling ran out of tries.
class RejectionBudgetError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct ConditionedSample {
    PureState state;
    std::uint64_t tries;
};

/// Haar state conditioned on Gamma_max <= gamma, by rejection.
ConditionedSample conditioned_sample(int n, int d, double gamma, Rng& rng,
                                     std::uint64_t max_tries = kDefaultRejectionBudget);

/// Finite weighted ensemble of pure states, all of the same (n, d).
class WeightedEnsemble {
  public:
    WeightedEnsemble(std::vector<PureState> states, std::vector<double> weights, int k);

    const std::vector<PureState>& states() const { return states_; }
    const std::vector<double>& weights() const { return weights_; }
    int copies() const { return k_; }

  private:
    std::vector<PureState> states_;
    std::vector<double> weights_;
    int k_;
};

struct MixtureDistance {
    double distance = 0;
    double excluded_mass = 0;
};

/// D(rho, rho') where rho mixes |psi_i><psi_i|^{(x)k} and rho' keeps only the
/// states the predicate accepts, renormalized. Also returns the excluded mass p.
MixtureDistance mixture_condition_distance(const WeightedEnsemble& e,
                                           const std::function<bool(const PureState&)>& keep);
MixtureDistance mixture_condition_distance(const WeightedEnsemble& e, const std::vector<bool>& keep);

}  // namespace bptest

#endif
