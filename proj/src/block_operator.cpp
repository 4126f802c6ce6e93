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

#include "bptest/block_operator.hpp"

#include <algorithm>
#include <map>

#include "bptest/common.hpp"
#include "bptest/tensor.hpp"

namespace bptest {

BlockLayout::BlockLayout(int n, int k, int d) : n_(n), k_(k), d_(d) {
    if (n < 1 || k < 1 || d < 2) {
        throw PreconditionError("block layout needs n >= 1, k >= 1, d >= 2");
    }
    dim_ = checked_pow(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(k),
                       kMaxOperatorDim);
    block_.resize(dim_);
    position_.resize(dim_);
    std::map<std::vector<int>, std::size_t> ids;
    std::vector<int> digits(static_cast<std::size_t>(n * k));
    std::vector<int> signature(static_cast<std::size_t>(n * k));
    for (std::uint64_t x = 0; x < dim_; ++x) {
        std::uint64_t rest = x;
        for (std::size_t pos = digits.size(); pos-- > 0;) {
            digits[pos] = static_cast<int>(rest % static_cast<std::uint64_t>(d));
            rest /= static_cast<std::uint64_t>(d);
        }
        // Digit of (copy j, party p) sits at j * n + p; collect per party and sort.
        for (int p = 0; p < n; ++p) {
            auto first = signature.begin() + p * k;
            for (int j = 0; j < k; ++j) {
                first[j] = digits[static_cast<std::size_t>(j * n + p)];
            }
            std::sort(first, first + k);
        }
        auto [it, inserted] = ids.try_emplace(signature, members_.size());
        if (inserted) {
            members_.emplace_back();
        }
        block_[x] = it->second;
        position_[x] = members_[it->second].size();
        members_[it->second].push_back(x);
    }
}

std::uint64_t BlockLayout::storage() const {
    std::uint64_t s = 0;
    for (const auto& m : members_) {
        s += m.size() * m.size();
    }
    return s;
}

BlockOperator::BlockOperator(std::shared_ptr<const BlockLayout> layout) : layout_(std::move(layout)) {
    blocks_.reserve(layout_->block_count());
    for (std::size_t b = 0; b < layout_->block_count(); ++b) {
        const auto size = static_cast<Eigen::Index>(layout_->members(b).size());
        blocks_.push_back(Eigen::MatrixXd::Zero(size, size));
    }
}

void BlockOperator::add(std::uint64_t row, std::uint64_t col, double value) {
    const std::size_t b = layout_->block_of(col);
    if (layout_->block_of(row) != b) {
        throw PreconditionError("entry couples two different blocks");
    }
    blocks_[b](static_cast<Eigen::Index>(layout_->position_of(row)),
               static_cast<Eigen::Index>(layout_->position_of(col))) += value;
}

namespace {

void require_same_layout(const BlockOperator& a, const BlockOperator& b) {
    const BlockLayout& x = a.layout();
    const BlockLayout& y = b.layout();
    if (&x != &y && (x.parties() != y.parties() || x.copies() != y.copies() || x.local_dim() != y.local_dim())) {
        throw PreconditionError("block operators on different layouts");
    }
}

}  // namespace

BlockOperator& BlockOperator::operator+=(const BlockOperator& other) {
    require_same_layout(*this, other);
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        blocks_[b] += other.blocks_[b];
    }
    return *this;
}

BlockOperator& BlockOperator::operator-=(const BlockOperator& other) {
    require_same_layout(*this, other);
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        blocks_[b] -= other.blocks_[b];
    }
    return *this;
}

BlockOperator& BlockOperator::operator*=(double s) {
    for (auto& m : blocks_) {
        m *= s;
    }
    return *this;
}

double BlockOperator::trace() const {
    double t = 0.0;
    for (const auto& m : blocks_) {
        t += m.trace();
    }
    return t;
}

double BlockOperator::trace_norm() const {
    double t = 0.0;
    for (const auto& m : blocks_) {
        t += trace_norm_symmetric(0.5 * (m + m.transpose()));
    }
    return t;
}

Eigen::MatrixXd BlockOperator::dense() const {
    const auto dim = static_cast<Eigen::Index>(layout_->dim());
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        const auto& idx = layout_->members(b);
        for (std::size_t c = 0; c < idx.size(); ++c) {
            for (std::size_t r = 0; r < idx.size(); ++r) {
                out(static_cast<Eigen::Index>(idx[r]), static_cast<Eigen::Index>(idx[c])) =
                    blocks_[b](static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            }
        }
    }
    return out;
}

double trace_product(const BlockOperator& a, const BlockOperator& b) {
    double t = 0.0;
    for (std::size_t i = 0; i < a.block_count(); ++i) {
        t += a.block(i).cwiseProduct(b.block(i).transpose()).sum();
    }
    return t;
}

namespace {

// Visits every distinct rearrangement of `values`.
template <typename F>
std::size_t for_each_rearrangement(std::vector<std::uint64_t> values, F&& visit) {
    std::sort(values.begin(), values.end());
    std::size_t count = 0;
    do {
        visit(values);
        ++count;
    } while (std::next_permutation(values.begin(), values.end()));
    return count;
}

std::size_t rearrangement_count(std::vector<std::uint64_t> values) {
    return for_each_rearrangement(std::move(values), [](const std::vector<std::uint64_t>&) {});
}

}  // namespace

BlockOperator subset_projector(std::shared_ptr<const BlockLayout> layout, std::uint64_t mask) {
    BlockOperator op(std::move(layout));
    accumulate_subset_projector(op, mask, 1.0);
    return op;
}

void accumulate_subset_projector(BlockOperator& op, std::uint64_t mask, double scale) {
    const BlockLayout& layout = op.layout();
    const int n = layout.parties();
    const int k = layout.copies();
    const auto d = static_cast<std::uint64_t>(layout.local_dim());
    if (n < 64 && (mask >> n) != 0) {
        throw PreconditionError("subset mask has parties out of range");
    }
    std::vector<int> in_s;
    std::vector<int> in_c;
    for (int p = 0; p < n; ++p) {
        ((mask >> p) & 1U ? in_s : in_c).push_back(p);
    }
    // Weight of party p's digit within one copy, and of copy j within the full index.
    std::vector<std::uint64_t> party_weight(static_cast<std::size_t>(n));
    std::uint64_t w = 1;
    for (int p = n - 1; p >= 0; --p) {
        party_weight[static_cast<std::size_t>(p)] = w;
        w *= d;
    }
    const std::uint64_t copy_dim = w;
    std::vector<std::uint64_t> copy_weight(static_cast<std::size_t>(k));
    w = 1;
    for (int j = k - 1; j >= 0; --j) {
        copy_weight[static_cast<std::size_t>(j)] = w;
        w *= copy_dim;
    }
    // Spread a side-local value (digits of that side's parties, ascending) over a copy index.
    const auto expand = [&](const std::vector<int>& side, std::uint64_t value) {
        std::uint64_t out = 0;
        for (std::size_t i = side.size(); i-- > 0;) {
            out += (value % d) * party_weight[static_cast<std::size_t>(side[i])];
            value /= d;
        }
        return out;
    };
    const auto compress = [&](const std::vector<int>& side, std::uint64_t copy_value) {
        std::uint64_t out = 0;
        for (int p : side) {
            out = out * d + (copy_value / party_weight[static_cast<std::size_t>(p)]) % d;
        }
        return out;
    };

    std::vector<std::uint64_t> s_vals(static_cast<std::size_t>(k));
    std::vector<std::uint64_t> c_vals(static_cast<std::size_t>(k));
    std::vector<std::uint64_t> s_part(static_cast<std::size_t>(k));
    for (std::uint64_t x = 0; x < layout.dim(); ++x) {
        for (int j = 0; j < k; ++j) {
            const std::uint64_t copy_value = (x / copy_weight[static_cast<std::size_t>(j)]) % copy_dim;
            s_vals[static_cast<std::size_t>(j)] = compress(in_s, copy_value);
            c_vals[static_cast<std::size_t>(j)] = compress(in_c, copy_value);
        }
        // Pi |x> spreads uniformly over the distinct rearrangements on each side.
        const double weight = scale / static_cast<double>(rearrangement_count(s_vals) * rearrangement_count(c_vals));
        for_each_rearrangement(s_vals, [&](const std::vector<std::uint64_t>& s_perm) {
            for (int j = 0; j < k; ++j) {
                s_part[static_cast<std::size_t>(j)] = expand(in_s, s_perm[static_cast<std::size_t>(j)]);
            }
            for_each_rearrangement(c_vals, [&](const std::vector<std::uint64_t>& c_perm) {
                std::uint64_t row = 0;
                for (int j = 0; j < k; ++j) {
                    row += (s_part[static_cast<std::size_t>(j)] + expand(in_c, c_perm[static_cast<std::size_t>(j)])) *
                           copy_weight[static_cast<std::size_t>(j)];
                }
                op.add(row, x, weight);
            });
        });
    }
}

}  // namespace bptest
