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

#ifndef BPTEST_ENSEMBLES_HPP
#define BPTEST_ENSEMBLES_HPP

// The symmetric-subspace ensembles on k copies of an n-party state and the
// quantities used to bound their trace distance:
//
//   rho    = Pi^k_{d^n} / C(d^n + k - 1, k)
//   tau_S  = Pi^k_{d^|S|} (x)_S Pi^k_{d^{n-|S|}} / (C(d^|S| + k - 1, k) C(d^{n-|S|} + k - 1, k))
//   sigma  = mean of tau_S over all S subset of [n]
//   sigma' = mean of tau_S over nontrivial S
//
// Exact routes use BlockOperator and are limited to d^{nk} <= kMaxOperatorDim.

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bptest/block_operator.hpp"
#include "bptest/tensor.hpp"

namespace bptest {

using BigInt = boost::multiprecision::cpp_int;

struct GridPoint {
    int n = 1;
    int k = 1;
    int d = 2;

    /// Throws PreconditionError unless n >= 1, k >= 1, d >= 2.
    void validate() const;
    /// d^{nk} fits the dense/block operator cap and k is enumerable.
    bool exactly_computable() const;
};

/// C(a + b - 1, b) with the bounds a^b / b! <= C <= (a^b / b!) e^{b^2 / a}.
struct BinomBounds {
    BigInt binomial;
    double log_binomial = 0;  // -inf when the binomial is 0
    /// Absent for a = 0, where e^{b^2/a} is undefined.
    std::optional<double> log_lower;
    std::optional<double> log_upper;

    /// Doubles, +inf once they overflow.
    std::optional<double> lower() const;
    std::optional<double> upper() const;
    /// Compares in log space; false when the bounds are absent.
    bool holds() const;
};

BinomBounds binom_and_bounds(std::uint64_t a, std::uint64_t b);

/// Natural log of a nonnegative big integer (-inf for zero).
double log_big(const BigInt& x);

std::shared_ptr<const BlockLayout> ensemble_layout(const GridPoint& g);

/// Unnormalized A_S = Pi (x)_S Pi and its normalization C(d^|S|+k-1,k) C(d^{n-|S|}+k-1,k).
BlockOperator tau_unnormalized(const std::shared_ptr<const BlockLayout>& layout, std::uint64_t mask);
double tau_normalization(const GridPoint& g, int subset_size);

BlockOperator rho_blocks(const GridPoint& g);
BlockOperator tau_blocks(const GridPoint& g, std::uint64_t mask);
/// Throws PreconditionError for n = 1 without trivial subsets.
BlockOperator sigma_blocks(const GridPoint& g, bool include_trivial);

DensityOperator rho_state(const GridPoint& g);
DensityOperator sigma_state(const GridPoint& g, bool include_trivial);

/// tau_S assembled from dense symmetric projectors (Kronecker product, then
/// factor reordering into the interleaved layout). Independent of BlockOperator.
DensityOperator tau_state_dense(const GridPoint& g, std::uint64_t mask);

double exact_rho_sigma_distance(const GridPoint& g);

struct EnsembleTraces {
    double rho_rho = 0;
    double rho_sigma = 0;
    double sigma_sigma = 0;
};
EnsembleTraces ensemble_traces(const GridPoint& g);

/// Trace norm of sigma - sigma'.
double sigma_prime_gap(const GridPoint& g);

/// F(k, n, d) = Tr E_{S,T}[A_S A_T] by explicit block products over all 4^n pairs.
double f_trace(const GridPoint& g);
double f_trace_serial(const GridPoint& g);

/// F(k, n, d) from cycle numbers: E over S, T, alpha, gamma, delta of
/// d^{|S&T| c(a d g) + |S&~T| c(a) + |~S&T| c(g) + |~S&~T| c(d)}.
/// Subset pairs are grouped by their four overlap sizes with multinomial weights.
double f_cycle(const GridPoint& g);

enum class StVariant { intersect, diagonal };

/// ((1 + d) / 2)^n.
double st_closed_form(int n, int d, StVariant variant);
/// E_{S,T} d^{|S&T| + |S&~T|} (intersect) or d^{|S&T| + |~S&~T|} (diagonal)
/// by exhaustive enumeration of all 4^n pairs. n <= 16.
double st_enumerated(int n, int d, StVariant variant);
double st_enumerated_serial(int n, int d, StVariant variant);

/// (k!/4)(1 + (k!)^3 ((1+d)/(2d))^n - e^{-k^2/d^n}) and its natural log.
double lemma3_bound(const GridPoint& g);
double log_lemma3_bound(const GridPoint& g);

/// a = log2(4/3) / 2.
inline constexpr double kDecayRate = 0.20751874963942190927;

/// 2 k log2 k - a n.
double theorem_decay(std::int64_t n, std::int64_t k);

struct BoundReport {
    GridPoint grid;
    std::optional<double> exact_d;
    std::optional<double> d_squared;
    double lemma3_bound = 0;
    std::optional<double> f_trace;
    std::optional<double> f_cycle;
    /// D^2 <= bound + 1e-9; absent when D was not computed.
    std::optional<bool> satisfied;
    double theorem_decay = 0;
    /// k^2 < d^n, where the small-f expansion of 1 - e^{-k^2/d^n} applies.
    bool small_ratio = false;
};

struct ReportOptions {
    bool exact = true;
    /// f_trace only below this party count (cost grows as 4^n).
    int f_trace_max_n = 6;
};

BoundReport bound_report(const GridPoint& g, const ReportOptions& options = {});

/// Reports in input order; points are evaluated in parallel.
std::vector<BoundReport> bound_sweep(const std::vector<GridPoint>& grid, const ReportOptions& options = {});

}  // namespace bptest

#endif
