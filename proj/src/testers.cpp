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

#include "bptest/testers.hpp"

#include <algorithm>
#include <cmath>

#include "bptest/permutation.hpp"

namespace bptest {

void validate_partition(const Partition& parts, int n) {
    if (parts.empty()) {
        throw PreconditionError("partition has no blocks");
    }
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::size_t covered = 0;
    for (const auto& block : parts) {
        if (block.empty()) {
            throw PreconditionError("partition has an empty block");
        }
        for (int p : block) {
            if (p < 0 || p >= n) {
                throw PreconditionError("partition names party " + std::to_string(p) + " outside [0, n)");
            }
            if (seen[static_cast<std::size_t>(p)]) {
                throw PreconditionError("party " + std::to_string(p) + " appears in two blocks");
            }
            seen[static_cast<std::size_t>(p)] = true;
            ++covered;
        }
    }
    if (covered != static_cast<std::size_t>(n)) {
        throw PreconditionError("partition does not cover every party");
    }
}

Partition singleton_partition(int n) {
    Partition parts;
    for (int p = 0; p < n; ++p) {
        parts.push_back({p});
    }
    return parts;
}

Partition cut_partition(const Bipartition& s) {
    if (!s.nontrivial()) {
        throw PreconditionError("cut partition needs a nontrivial bipartition");
    }
    return Partition{s.members(), s.complement_members()};
}

double swap_accept_probability(const PureState& psi, const PureState& phi) {
    if (psi.dim() != phi.dim()) {
        throw DimensionError("swap test on states of different dimension");
    }
    checked_pow(psi.dim(), 2);
    const CVector pair = kron(psi.amplitudes(), phi.amplitudes());
    const CVector swapped = apply_permutation(Permutation::from_cycles(2, {{1, 2}}), psi.dim(), pair);
    const CVector projected = 0.5 * (pair + swapped);
    return projected.squaredNorm();
}

bool swap_test(const PureState& psi, const PureState& phi, Rng& rng) {
    std::bernoulli_distribution pass(std::clamp(swap_accept_probability(psi, phi), 0.0, 1.0));
    return pass(rng);
}

double subsystem_purity(const PureState& psi, std::uint64_t mask) {
    const Bipartition cut(psi.n(), mask);
    if (!cut.nontrivial()) {
        return 1.0;
    }
    const CMatrix m = regroup(psi, cut);
    const CMatrix gram = m.rows() <= m.cols() ? CMatrix(m * m.adjoint()) : CMatrix(m.adjoint() * m);
    return gram.squaredNorm();
}

namespace {

std::vector<std::uint64_t> block_masks(const Partition& parts) {
    std::vector<std::uint64_t> masks;
    for (const auto& block : parts) {
        std::uint64_t m = 0;
        for (int p : block) {
            m |= std::uint64_t{1} << p;
        }
        masks.push_back(m);
    }
    return masks;
}

// purity[t] = Tr(rho^2) of the union of blocks selected by bit set t.
std::vector<double> block_purities(const PureState& psi, const Partition& parts) {
    validate_partition(parts, psi.n());
    const auto masks = block_masks(parts);
    const std::size_t m = masks.size();
    if (m > 20) {
        throw CapacityError("product test supports at most 20 blocks");
    }
    std::vector<double> purity(std::size_t{1} << m);
    for (std::size_t t = 0; t < purity.size(); ++t) {
        std::uint64_t mask = 0;
        for (std::size_t b = 0; b < m; ++b) {
            if ((t >> b) & 1U) {
                mask |= masks[b];
            }
        }
        purity[t] = subsystem_purity(psi, mask);
    }
    return purity;
}

}  // namespace

double product_test_probability(const PureState& psi, const Partition& parts) {
    const auto purity = block_purities(psi, parts);
    double total = 0.0;
    for (double p : purity) {
        total += p;
    }
    return std::clamp(total / static_cast<double>(purity.size()), 0.0, 1.0);
}

double product_test_probability_projector(const PureState& psi, const Partition& parts) {
    validate_partition(parts, psi.n());
    const auto d = static_cast<std::uint64_t>(psi.d());
    const std::uint64_t copy_dim = psi.dim();
    const std::uint64_t dim = checked_pow(copy_dim, 2);
    const int n = psi.n();
    std::vector<std::uint64_t> weight(static_cast<std::size_t>(n));
    std::uint64_t w = 1;
    for (int p = n - 1; p >= 0; --p) {
        weight[static_cast<std::size_t>(p)] = w;
        w *= d;
    }
    CVector v = kron(psi.amplitudes(), psi.amplitudes());
    // Block projectors commute, so applying them in turn gives the tensor product.
    for (const auto& block : parts) {
        CVector swapped(v.size());
        for (std::uint64_t x = 0; x < dim; ++x) {
            std::uint64_t first = x / copy_dim;
            std::uint64_t second = x % copy_dim;
            for (int p : block) {
                const std::uint64_t wp = weight[static_cast<std::size_t>(p)];
                const std::uint64_t a = (first / wp) % d;
                const std::uint64_t b = (second / wp) % d;
                first += (b - a) * wp;
                second += (a - b) * wp;
            }
            swapped(static_cast<Eigen::Index>(first * copy_dim + second)) = v(static_cast<Eigen::Index>(x));
        }
        v = 0.5 * (v + swapped);
    }
    return v.squaredNorm();
}

std::vector<double> product_test_distribution(const PureState& psi, const Partition& parts) {
    std::vector<double> p = block_purities(psi, parts);
    // Expanding (I +/- SWAP_b)/2 over blocks turns purities into outcome
    // probabilities through a Walsh-Hadamard transform.
    for (std::size_t h = 1; h < p.size(); h <<= 1) {
        for (std::size_t i = 0; i < p.size(); i += 2 * h) {
            for (std::size_t j = i; j < i + h; ++j) {
                const double a = p[j];
                const double b = p[j + h];
                p[j] = a + b;
                p[j + h] = a - b;
            }
        }
    }
    const double scale = 1.0 / static_cast<double>(p.size());
    for (double& x : p) {
        x = std::max(0.0, x * scale);
    }
    return p;
}

namespace {

ProductTestResult sample_outcome(const std::vector<double>& distribution, std::size_t blocks, Rng& rng) {
    std::discrete_distribution<std::size_t> pick(distribution.begin(), distribution.end());
    const std::size_t outcome = pick(rng);
    ProductTestResult r;
    r.accepted = outcome == 0;
    r.block_passed.resize(blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
        r.block_passed[b] = ((outcome >> b) & 1U) == 0;
    }
    return r;
}

}  // namespace

ProductTestResult product_test(const PureState& psi, const Partition& parts, Rng& rng) {
    return sample_outcome(product_test_distribution(psi, parts), parts.size(), rng);
}

StateOracle::StateOracle(PureState state, std::optional<std::uint64_t> budget)
    : state_(std::move(state)), budget_(budget) {}

const PureState& StateOracle::draw(std::uint64_t count) {
    if (budget_ && dispensed_ + count > *budget_) {
        throw OracleExhausted("copy budget of " + std::to_string(*budget_) + " exhausted");
    }
    dispensed_ += count;
    return state_;
}

TestOutcome mp_tester(StateOracle& oracle, int reps, Rng& rng) {
    if (reps < 1) {
        throw PreconditionError("tester needs reps >= 1");
    }
    const PureState& psi = oracle.peek();
    const Partition parts = singleton_partition(psi.n());
    const auto distribution = product_test_distribution(psi, parts);
    TestOutcome out;
    out.accepted = true;
    out.accept_probability = std::pow(distribution[0], reps);
    const std::uint64_t before = oracle.copies_dispensed();
    for (int r = 0; r < reps; ++r) {
        oracle.draw(2);
        ProductTestResult res = sample_outcome(distribution, parts.size(), rng);
        out.accepted = out.accepted && res.accepted;
        out.transcript.push_back(Repetition{0, r, res.accepted, std::move(res.block_passed)});
    }
    out.copies_used = oracle.copies_dispensed() - before;
    return out;
}

TestOutcome bp_tester_naive(StateOracle& oracle, int reps_per_cut, Rng& rng) {
    if (reps_per_cut < 1) {
        throw PreconditionError("tester needs reps_per_cut >= 1");
    }
    const PureState& psi = oracle.peek();
    if (psi.n() < 2) {
        throw PreconditionError("bipartite tester needs n >= 2");
    }
    if (psi.n() > kMaxSweepParties) {
        throw CapacityError("bipartite tester sweeps all cuts; n is capped at " + std::to_string(kMaxSweepParties));
    }
    TestOutcome out;
    double all_cuts_fail = 1.0;
    double union_bound = 0.0;
    const std::uint64_t before = oracle.copies_dispensed();
    for (const auto& cut : cuts_up_to_complement(psi.n())) {
        const Partition parts = cut_partition(cut);
        const auto distribution = product_test_distribution(psi, parts);
        const double pass_all = std::pow(distribution[0], reps_per_cut);
        all_cuts_fail *= 1.0 - pass_all;
        union_bound += pass_all;
        bool cut_product = true;
        for (int r = 0; r < reps_per_cut; ++r) {
            oracle.draw(2);
            ProductTestResult res = sample_outcome(distribution, parts.size(), rng);
            cut_product = cut_product && res.accepted;
            out.transcript.push_back(Repetition{cut.mask(), r, res.accepted, std::move(res.block_passed)});
        }
        out.accepted = out.accepted || cut_product;
    }
    out.copies_used = oracle.copies_dispensed() - before;
    out.accept_probability = 1.0 - all_cuts_fail;
    out.union_bound = union_bound;
    return out;
}

std::uint64_t count_accepts(TesterKind kind, const PureState& psi, int reps, std::uint64_t trials, std::uint64_t seed) {
    std::uint64_t accepts = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : accepts)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(trials); ++i) {
        Rng rng = substream(seed, static_cast<std::uint64_t>(i));
        StateOracle oracle(psi);
        const TestOutcome o = kind == TesterKind::mp ? mp_tester(oracle, reps, rng) : bp_tester_naive(oracle, reps, rng);
        accepts += o.accepted ? 1 : 0;
    }
    return accepts;
}

}  // namespace bptest
