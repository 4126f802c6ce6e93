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

#include <gtest/gtest.h>

#include <cmath>

#include "bptest/haar.hpp"

using namespace bptest;

namespace {

// <psi psi| prod_B (I + SWAP_B)/2 |psi psi> by expanding the product into
// 2^m swaps. Copy c of party p sits at digit c*n + p of the doubled register.
double product_test_reference(const PureState& psi, const Partition& parts) {
    const int n = psi.n();
    const auto d = static_cast<std::uint64_t>(psi.d());
    const CVector v = kron(psi.amplitudes(), psi.amplitudes());
    const auto dim = static_cast<std::uint64_t>(v.size());
    const std::size_t m = parts.size();
    double total = 0;
    for (std::uint64_t t = 0; t < (std::uint64_t{1} << m); ++t) {
        std::uint64_t swapped = 0;
        for (std::size_t b = 0; b < m; ++b) {
            if ((t >> b) & 1U) {
                for (int p : parts[b]) {
                    swapped |= std::uint64_t{1} << p;
                }
            }
        }
        CVector w = CVector::Zero(v.size());
        for (std::uint64_t x = 0; x < dim; ++x) {
            std::vector<std::uint64_t> digit(static_cast<std::size_t>(2 * n));
            std::uint64_t rest = x;
            for (int pos = 2 * n - 1; pos >= 0; --pos) {
                digit[static_cast<std::size_t>(pos)] = rest % d;
                rest /= d;
            }
            for (int p = 0; p < n; ++p) {
                if ((swapped >> p) & 1U) {
                    std::swap(digit[static_cast<std::size_t>(p)], digit[static_cast<std::size_t>(n + p)]);
                }
            }
            std::uint64_t y = 0;
            for (auto g : digit) {
                y = y * d + g;
            }
            w(static_cast<Eigen::Index>(y)) = v(static_cast<Eigen::Index>(x));
        }
        total += v.dot(w).real();
    }
    return total / static_cast<double>(std::uint64_t{1} << m);
}

PureState random_product(int n, int d, Rng& rng) {
    std::vector<CVector> locals;
    for (int p = 0; p < n; ++p) {
        locals.push_back(haar_vector(static_cast<std::uint64_t>(d), rng));
    }
    return PureState::product(locals);
}

}  // namespace

TEST(SwapTest, Examples) {
    const PureState zero = PureState::basis(1, 2, 0);
    const PureState one = PureState::basis(1, 2, 1);
    CVector plus(2);
    plus << 1.0, 1.0;
    EXPECT_NEAR(swap_accept_probability(zero, zero), 1.0, 1e-15);
    EXPECT_NEAR(swap_accept_probability(zero, one), 0.5, 1e-15);
    EXPECT_NEAR(swap_accept_probability(PureState::normalized(1, 2, plus), zero), 0.75, 1e-15);
    EXPECT_THROW(swap_accept_probability(zero, PureState::basis(1, 3, 0)), DimensionError);
}

TEST(SwapTest, LawOnRandomPairsAndSampling) {
    Rng rng = substream(40, 0);
    for (int i = 0; i < 20; ++i) {
        const PureState a = haar_state(2, 3, rng);
        const PureState b = haar_state(2, 3, rng);
        EXPECT_NEAR(swap_accept_probability(a, b), 0.5 * (1 + std::norm(overlap(a, b))), 1e-12);
    }
    const PureState zero = PureState::basis(1, 2, 0);
    const PureState one = PureState::basis(1, 2, 1);
    int accepts = 0;
    for (int i = 0; i < 10000; ++i) {
        accepts += swap_test(zero, one, rng) ? 1 : 0;
    }
    EXPECT_LE(std::abs(accepts - 5000), 250);
}

TEST(Partition, Validation) {
    EXPECT_NO_THROW(validate_partition({{0, 2}, {1}}, 3));
    EXPECT_THROW(validate_partition({{0}, {0, 1}}, 2), PreconditionError);
    EXPECT_THROW(validate_partition({{0}}, 2), PreconditionError);
    EXPECT_THROW(validate_partition({{0}, {}, {1}}, 2), PreconditionError);
    EXPECT_THROW(validate_partition({{0}, {2}}, 2), PreconditionError);
    EXPECT_EQ(singleton_partition(3), (Partition{{0}, {1}, {2}}));
    EXPECT_EQ(cut_partition(Bipartition(3, std::uint64_t{0b101})), (Partition{{0, 2}, {1}}));
}

TEST(ProductTest, BellStateThreeQuarters) {
    const PureState bell = ghz_state(2);
    const Partition parts{{0}, {1}};
    EXPECT_NEAR(product_test_reference(bell, parts), 0.75, 1e-12);
    EXPECT_NEAR(product_test_probability(bell, parts), 0.75, 1e-12);
    EXPECT_NEAR(product_test_probability_projector(bell, parts), 0.75, 1e-12);
}

TEST(ProductTest, GhzValues) {
    const PureState ghz = ghz_state(3);
    // 2^-3 (1 + 1 + six reduced purities of 1/2).
    EXPECT_NEAR(product_test_reference(ghz, singleton_partition(3)), 5.0 / 8.0, 1e-12);
    EXPECT_NEAR(product_test_probability(ghz, singleton_partition(3)), 5.0 / 8.0, 1e-12);
    EXPECT_NEAR(product_test_probability(ghz, {{0}, {1, 2}}), 0.75, 1e-12);
}

TEST(ProductTest, OneBlockAlwaysAccepts) {
    Rng rng = substream(41, 0);
    const PureState psi = haar_state(3, 2, rng);
    EXPECT_NEAR(product_test_probability(psi, {{0, 1, 2}}), 1.0, 1e-12);
}

TEST(ProductTest, RoutesAgreeWithReference) {
    Rng rng = substream(42, 0);
    const std::vector<Partition> partitions{{{0}, {1}, {2}}, {{0, 2}, {1}}, {{1}, {0, 2}}, {{0, 1, 2}}};
    for (int trial = 0; trial < 5; ++trial) {
        const PureState psi = haar_state(3, 2, rng);
        for (const auto& parts : partitions) {
            const double ref = product_test_reference(psi, parts);
            EXPECT_NEAR(product_test_probability(psi, parts), ref, 1e-9);
            EXPECT_NEAR(product_test_probability_projector(psi, parts), ref, 1e-9);
        }
    }
}

TEST(ProductTest, OneIffProductAcrossPartition) {
    Rng rng = substream(43, 0);
    for (int n = 2; n <= 4; ++n) {
        EXPECT_NEAR(product_test_probability(random_product(n, 2, rng), singleton_partition(n)), 1.0, 1e-12);
        EXPECT_LT(product_test_probability(ghz_state(n), singleton_partition(n)), 1.0 - 1e-3);
    }
    // (Bell on 0,1) (x) |phi> on 2: product across {0,1}:{2} but not across singletons.
    std::vector<CVector> one{haar_vector(2, rng)};
    const PureState psi = tensor(ghz_state(2), PureState::product(one));
    EXPECT_NEAR(product_test_probability(psi, {{0, 1}, {2}}), 1.0, 1e-12);
    EXPECT_LT(product_test_probability(psi, {{0}, {1, 2}}), 1.0 - 1e-3);
}

TEST(ProductTest, LocalUnitaryInvariance) {
    Rng rng = substream(44, 0);
    const PureState psi = haar_state(3, 2, rng);
    const double base = product_test_probability(psi, singleton_partition(3));
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<CMatrix> locals{haar_unitary(2, rng), haar_unitary(2, rng), haar_unitary(2, rng)};
        EXPECT_NEAR(product_test_probability(apply_local_unitaries(psi, locals), singleton_partition(3)), base, 1e-9);
    }
}

TEST(ProductTest, SampledFrequencyMatchesExact) {
    Rng rng = substream(45, 0);
    const PureState ghz = ghz_state(3);
    const Partition parts = singleton_partition(3);
    const double p = product_test_probability(ghz, parts);
    const int trials = 20000;
    int accepts = 0;
    std::vector<int> passed(3, 0);
    for (int i = 0; i < trials; ++i) {
        const ProductTestResult r = product_test(ghz, parts, rng);
        accepts += r.accepted ? 1 : 0;
        for (int b = 0; b < 3; ++b) {
            passed[static_cast<std::size_t>(b)] += r.block_passed[static_cast<std::size_t>(b)] ? 1 : 0;
        }
        ASSERT_EQ(r.accepted, r.block_passed[0] && r.block_passed[1] && r.block_passed[2]);
    }
    const double freq = static_cast<double>(accepts) / trials;
    const double wilson_hi = wilson_upper(static_cast<std::uint64_t>(accepts), trials);
    const double wilson_lo = 1.0 - wilson_upper(static_cast<std::uint64_t>(trials - accepts), trials);
    EXPECT_LE(wilson_lo, p);
    EXPECT_GE(wilson_hi, p);
    EXPECT_NEAR(freq, 0.625, 0.02);
    // A single swap test on one qubit of GHZ3 passes with probability (1 + 1/2) / 2.
    for (int b = 0; b < 3; ++b) {
        EXPECT_NEAR(static_cast<double>(passed[static_cast<std::size_t>(b)]) / trials, 0.75, 0.02);
    }
}

TEST(ProductTest, DistributionSumsToOne) {
    Rng rng = substream(46, 0);
    const PureState psi = haar_state(4, 2, rng);
    const auto dist = product_test_distribution(psi, singleton_partition(4));
    ASSERT_EQ(dist.size(), 16u);
    double sum = 0;
    for (double x : dist) {
        EXPECT_GE(x, 0.0);
        sum += x;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
    // Outcome 0 is the one where no block failed.
    EXPECT_NEAR(dist.front(), product_test_probability(psi, singleton_partition(4)), 1e-12);
}

TEST(StateOracle, CountsAndBudget) {
    StateOracle oracle(ghz_state(2), 3);
    oracle.draw(2);
    EXPECT_EQ(oracle.copies_dispensed(), 2u);
    EXPECT_THROW(oracle.draw(2), OracleExhausted);
    EXPECT_EQ(oracle.copies_dispensed(), 2u);
    oracle.draw();
    EXPECT_EQ(oracle.copies_dispensed(), 3u);
}

TEST(MpTester, ProductStatesAlwaysAccepted) {
    Rng rng = substream(47, 0);
    for (int trial = 0; trial < 20; ++trial) {
        StateOracle oracle(random_product(3, 2, rng));
        const TestOutcome o = mp_tester(oracle, 20, rng);
        EXPECT_TRUE(o.accepted);
        EXPECT_EQ(o.copies_used, 40u);
        EXPECT_NEAR(*o.accept_probability, 1.0, 1e-12);
    }
}

TEST(MpTester, CopyBookkeeping) {
    Rng rng = substream(48, 0);
    StateOracle oracle(ghz_state(3));
    const TestOutcome o = mp_tester(oracle, 3, rng);
    EXPECT_EQ(o.copies_used, 6u);
    EXPECT_EQ(oracle.copies_dispensed(), 6u);
    EXPECT_EQ(o.transcript.size(), 3u);
    EXPECT_NEAR(*o.accept_probability, std::pow(0.625, 3), 1e-12);
    StateOracle limited(ghz_state(3), 5);
    EXPECT_THROW(mp_tester(limited, 3, rng), OracleExhausted);
}

TEST(MpTester, RejectsGhz) {
    const std::uint64_t accepts = count_accepts(TesterKind::mp, ghz_state(3), 50, 200, 7);
    // Exact accept probability per run is (5/8)^50, about 6e-11.
    EXPECT_LE(accepts, 2u);
}

TEST(BpTester, AcceptsProductAcrossKnownCut) {
    Rng rng = substream(49, 0);
    const PureState psi = tensor(PureState::basis(1, 2, 0), ghz_state(3));
    for (int trial = 0; trial < 20; ++trial) {
        StateOracle oracle(psi);
        const TestOutcome o = bp_tester_naive(oracle, 5, rng);
        EXPECT_TRUE(o.accepted);
        EXPECT_NEAR(*o.accept_probability, 1.0, 1e-12);
        EXPECT_EQ(o.copies_used, 2u * 5u * 7u);
    }
}

TEST(BpTester, BookkeepingAndCap) {
    Rng rng = substream(50, 0);
    StateOracle oracle(ghz_state(3));
    const TestOutcome o = bp_tester_naive(oracle, 2, rng);
    EXPECT_EQ(o.copies_used, 12u);
    EXPECT_EQ(o.transcript.size(), 6u);
    // Every cut of GHZ3 passes one run with probability 3/4.
    const double per_cut = std::pow(0.75, 2);
    EXPECT_NEAR(*o.accept_probability, 1 - std::pow(1 - per_cut, 3), 1e-12);
    EXPECT_NEAR(*o.union_bound, 3 * per_cut, 1e-12);
    StateOracle one(PureState::basis(1, 2, 0));
    EXPECT_THROW(bp_tester_naive(one, 1, rng), PreconditionError);
    StateOracle big(PureState::basis(11, 2, 0));
    EXPECT_THROW(bp_tester_naive(big, 1, rng), CapacityError);
}

TEST(BpTester, RejectsGhz) {
    const std::uint64_t accepts = count_accepts(TesterKind::bp, ghz_state(3), 60, 100, 8);
    // Accept probability per trial is at most 3 (3/4)^60, about 1e-7.
    EXPECT_LE(accepts, 5u);
}
