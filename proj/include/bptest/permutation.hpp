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

#ifndef BPTEST_PERMUTATION_HPP
#define BPTEST_PERMUTATION_HPP

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "bptest/rng.hpp"
#include "bptest/tensor.hpp"

namespace bptest {

/// Element of S_k as an image table, image[i] = alpha(i), 0-based.
class Permutation {
  public:
    explicit Permutation(std::vector<int> image);
    static Permutation identity(int k);
    /// Builds from 1-based cycle notation, e.g. from_cycles(4, {{1, 2}}) is (1 2)(3)(4).
    static Permutation from_cycles(int k, std::initializer_list<std::initializer_list<int>> cycles);

    int degree() const { return static_cast<int>(image_.size()); }
    int operator()(int i) const { return image_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& image() const { return image_; }

    Permutation inverse() const;
    bool is_identity() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;

  private:
    std::vector<int> image_;
};

/// (a * b)(i) = a(b(i)).
Permutation compose(const Permutation& a, const Permutation& b);

/// All k! elements in lexicographic image order. Throws CapacityError past kMaxGroupDegree.
std::vector<Permutation> enumerate_group(int k);

/// Number of disjoint cycles, fixed points included.
int cycle_number(const Permutation& alpha);

/// Where U_alpha sends basis column `column` of (C^d)^{(x)k}: the content of slot
/// i moves to slot alpha(i).
std::uint64_t permuted_index(const Permutation& alpha, std::uint64_t d, std::uint64_t column);

/// U_alpha on (C^d)^{(x)k}, built by index mapping.
ComplexOperator permutation_unitary(const Permutation& alpha, int d);

/// Trace of U_alpha as an exact integer: the number of fixed basis columns.
std::uint64_t permutation_unitary_trace(const Permutation& alpha, int d);

/// U_alpha applied to a vector of (C^local_dim)^{(x)k}.
CVector apply_permutation(const Permutation& alpha, std::uint64_t local_dim, const CVector& v);

/// dim Sym^k_d = C(d + k - 1, k).
std::uint64_t sym_dimension(int k, std::uint64_t d);

/// Projector onto Sym^k_d as the group average of U_alpha.
ComplexOperator sym_projector(int k, int d);

/// C(d+k-1, k) times the empirical mean of |psi><psi|^{(x)k} over Haar samples.
/// Sample i draws from substream(seed, i), and partial sums are reduced in a
/// fixed chunk order, so the result does not depend on the thread count.
ComplexOperator sym_projector_haar_mc(int k, int d, std::uint64_t samples, std::uint64_t seed);
/// Single-threaded reference for sym_projector_haar_mc; sums sample by sample.
ComplexOperator sym_projector_haar_mc_serial(int k, int d, std::uint64_t samples, std::uint64_t seed);

/// Joint counts of (c(a d g), c(a), c(g), c(d)) over all triples (a, g, d) in S_k^3.
struct CycleTripleHistogram {
    int k = 0;
    /// Flat k^4 table; see index().
    std::vector<std::uint64_t> counts;

    std::size_t index(int c_adg, int c_a, int c_g, int c_d) const {
        const auto kk = static_cast<std::size_t>(k);
        return ((static_cast<std::size_t>(c_adg - 1) * kk + static_cast<std::size_t>(c_a - 1)) * kk +
                static_cast<std::size_t>(c_g - 1)) * kk + static_cast<std::size_t>(c_d - 1);
    }
    std::uint64_t total() const;
};

inline constexpr int kMaxTripleDegree = 6;

CycleTripleHistogram cycle_triple_histogram(int k);
CycleTripleHistogram cycle_triple_histogram_serial(int k);

}  // namespace bptest

#endif
