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

#ifndef BPTEST_BLOCK_OPERATOR_HPP
#define BPTEST_BLOCK_OPERATOR_HPP

// Block-diagonal real operators on k copies of an n-party, dimension-d system.
//
// Every operator built from copy permutations (applied jointly to all parties
// or separately to the two sides of a cut) maps a basis vector to basis
// vectors with the same per-party multiset of digits across copies. Grouping
// basis indices by that multiset therefore block-diagonalizes rho, sigma and
// every tau_S exactly; traces, products and trace norms split over blocks.

#include <cstdint>
#include <memory>
#include <vector>

#include <Eigen/Dense>

namespace bptest {

class BlockLayout {
  public:
    /// Throws CapacityError when d^{nk} exceeds kMaxOperatorDim.
    BlockLayout(int n, int k, int d);

    int parties() const { return n_; }
    int copies() const { return k_; }
    int local_dim() const { return d_; }
    std::uint64_t dim() const { return dim_; }

    std::size_t block_count() const { return members_.size(); }
    std::size_t block_of(std::uint64_t index) const { return block_[index]; }
    std::size_t position_of(std::uint64_t index) const { return position_[index]; }
    const std::vector<std::uint64_t>& members(std::size_t block) const { return members_[block]; }
    /// Sum of squared block sizes, the storage cost of one operator.
    std::uint64_t storage() const;

  private:
    int n_;
    int k_;
    int d_;
    std::uint64_t dim_;
    std::vector<std::size_t> block_;
    std::vector<std::size_t> position_;
    std::vector<std::vector<std::uint64_t>> members_;
};

class BlockOperator {
  public:
    explicit BlockOperator(std::shared_ptr<const BlockLayout> layout);

    const BlockLayout& layout() const { return *layout_; }
    std::size_t block_count() const { return blocks_.size(); }
    Eigen::MatrixXd& block(std::size_t b) { return blocks_[b]; }
    const Eigen::MatrixXd& block(std::size_t b) const { return blocks_[b]; }

    /// Adds `value` at global (row, col); both must lie in the same block.
    void add(std::uint64_t row, std::uint64_t col, double value);

    BlockOperator& operator+=(const BlockOperator& other);
    BlockOperator& operator-=(const BlockOperator& other);
    BlockOperator& operator*=(double s);

    double trace() const;
    /// Sum of absolute eigenvalues; assumes a symmetric operator.
    double trace_norm() const;
    Eigen::MatrixXd dense() const;

  private:
    std::shared_ptr<const BlockLayout> layout_;
    std::vector<Eigen::MatrixXd> blocks_;
};

/// Tr(A B), block by block.
double trace_product(const BlockOperator& a, const BlockOperator& b);

/// Unnormalized Pi^k_{d^|S|} (x)_S Pi^k_{d^{n-|S|}} for the cut given by `mask`.
/// mask = all parties gives Pi^k_{d^n}.
BlockOperator subset_projector(std::shared_ptr<const BlockLayout> layout, std::uint64_t mask);
/// acc += scale * subset_projector(acc.layout(), mask), without a temporary.
void accumulate_subset_projector(BlockOperator& acc, std::uint64_t mask, double scale);

}  // namespace bptest

#endif
