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

#include "bptest/tensor.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "bptest/haar.hpp"
#include "bptest/permutation.hpp"

using namespace bptest;

namespace {

CVector ket(std::initializer_list<Complex> values) {
    CVector v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (auto x : values) {
        v(i++) = x;
    }
    return v;
}

// Singular values from a JacobiSVD, independent of the library's Gram route.
Eigen::VectorXd svd_values(const CMatrix& m) {
    return Eigen::JacobiSVD<CMatrix>(m).singularValues();
}

}  // namespace

TEST(PureState, RejectsWrongLengthAndNorm) {
    EXPECT_THROW(PureState(2, 2, CVector::Ones(3)), DimensionError);
    EXPECT_THROW(PureState(1, 2, ket({1.0, 1.0})), PreconditionError);
    EXPECT_NO_THROW(PureState(1, 2, ket({1.0, 0.0})));
    EXPECT_THROW(PureState::normalized(1, 2, CVector::Zero(2)), PreconditionError);
}

TEST(PureState, NormalizedAndBasis) {
    const PureState plus = PureState::normalized(1, 2, ket({1.0, 1.0}));
    EXPECT_NEAR(plus.amplitudes().norm(), 1.0, 1e-15);
    const PureState b = PureState::basis(2, 3, 5);
    EXPECT_EQ(b.dim(), 9u);
    EXPECT_EQ(b.amplitudes()(5), Complex(1.0));
    EXPECT_THROW(PureState::basis(2, 2, 4), PreconditionError);
}

TEST(PureState, CapacityLimit) {
    EXPECT_THROW(checked_pow(2, 21), CapacityError);
    EXPECT_EQ(checked_pow(2, 20), kMaxStateDim);
    EXPECT_THROW(PureState::basis(21, 2, 0), CapacityError);
}

TEST(Tensor, IdentityTimesIdentity) {
    const ComplexOperator i6 = tensor(ComplexOperator::identity(2), ComplexOperator::identity(3));
    EXPECT_EQ(i6.dim(), 6u);
    EXPECT_TRUE(i6.matrix().isIdentity(0.0));
}

TEST(Tensor, BasisOrderingFirstFactorMostSignificant) {
    const PureState ab = tensor(PureState::basis(1, 2, 0), PureState::basis(1, 2, 1));
    EXPECT_EQ(ab.amplitudes(), PureState::basis(2, 2, 1).amplitudes());
    const PureState ba = tensor(PureState::basis(1, 2, 1), PureState::basis(1, 2, 0));
    EXPECT_EQ(ba.amplitudes(), PureState::basis(2, 2, 2).amplitudes());
}

TEST(Tensor, SymmetricProjectorSquareHasTraceNine) {
    const ComplexOperator p = sym_projector(2, 2);
    const ComplexOperator pp = tensor(p, p);
    // Explicit Kronecker build as the cross-check.
    CMatrix manual = CMatrix::Zero(16, 16);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            manual.block(4 * i, 4 * j, 4, 4) = p.matrix()(i, j) * p.matrix();
        }
    }
    EXPECT_EQ((pp.matrix() - manual).norm(), 0.0);
    EXPECT_NEAR(pp.trace().real(), 9.0, 1e-12);
}

TEST(Tensor, OperatorCapacity) {
    const ComplexOperator big = ComplexOperator::identity(1024);
    EXPECT_THROW(tensor(big, big), CapacityError);
}

TEST(GhzState, Amplitudes) {
    const PureState g = ghz_state(3);
    EXPECT_NEAR(g.amplitudes()(0).real(), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(g.amplitudes()(7).real(), 1.0 / std::sqrt(2.0), 1e-15);
    const PureState g3 = ghz_state(2, 3);
    EXPECT_NEAR(std::abs(g3.amplitudes()(4)), 1.0 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(std::abs(g3.amplitudes()(8)), 1.0 / std::sqrt(3.0), 1e-15);
}

TEST(Bipartition, MembersAndFlags) {
    const Bipartition s(4, std::uint64_t{0b0101});
    EXPECT_EQ(s.size(), 2);
    EXPECT_TRUE(s.nontrivial());
    EXPECT_EQ(s.members(), (std::vector<int>{0, 2}));
    EXPECT_EQ(s.complement_members(), (std::vector<int>{1, 3}));
    EXPECT_EQ(s.complement().mask(), 0b1010u);
    EXPECT_FALSE(Bipartition(3, std::uint64_t{0}).nontrivial());
    EXPECT_FALSE(Bipartition(3, std::uint64_t{7}).nontrivial());
    EXPECT_THROW(Bipartition(3, std::uint64_t{8}), PreconditionError);
    const std::vector<int> bad{0, 3};
    EXPECT_THROW(Bipartition(3, bad), PreconditionError);
}

TEST(Bipartition, CutsUpToComplement) {
    for (int n = 1; n <= 6; ++n) {
        const auto cuts = cuts_up_to_complement(n);
        EXPECT_EQ(cuts.size(), (std::size_t{1} << (n - 1)) - 1);
        for (const auto& c : cuts) {
            EXPECT_TRUE(c.contains(0));
            EXPECT_TRUE(c.nontrivial());
        }
    }
}

TEST(Regroup, ShapeAndGhzSingularValues) {
    const Bipartition s0(3, std::uint64_t{1});
    const CMatrix m = regroup(ghz_state(3), s0);
    EXPECT_EQ(m.rows(), 2);
    EXPECT_EQ(m.cols(), 4);
    const Eigen::VectorXd sv = svd_values(m);
    EXPECT_NEAR(sv(0), 1.0 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(sv(1), 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(Regroup, ProductStateIsRankOne) {
    const CMatrix m = regroup(PureState::basis(2, 2, 0), Bipartition(2, std::uint64_t{1}));
    const Eigen::VectorXd sv = svd_values(m);
    EXPECT_NEAR(sv(0), 1.0, 1e-15);
    EXPECT_NEAR(sv(1), 0.0, 1e-15);
}

TEST(Regroup, TrivialCutIsDegenerate) {
    const PureState psi = ghz_state(3);
    const CMatrix row = regroup(psi, Bipartition(3, std::uint64_t{7}));
    EXPECT_EQ(row.rows(), 8);
    EXPECT_EQ(row.cols(), 1);
    EXPECT_NEAR(svd_values(row)(0), 1.0, 1e-15);
}

TEST(Regroup, EntryPlacementMatchesDigits) {
    // n=3, d=3, S={1}: entry (x1, x0 x2) equals amplitude at x0 x1 x2.
    Rng rng = substream(1, 0);
    const PureState psi = haar_state(3, 3, rng);
    const CMatrix m = regroup(psi, Bipartition(3, std::uint64_t{0b010}));
    for (int x0 = 0; x0 < 3; ++x0) {
        for (int x1 = 0; x1 < 3; ++x1) {
            for (int x2 = 0; x2 < 3; ++x2) {
                EXPECT_EQ(m(x1, 3 * x0 + x2), psi.amplitudes()(9 * x0 + 3 * x1 + x2));
            }
        }
    }
}

TEST(Regroup, RoundTripIsExact) {
    Rng rng = substream(2, 0);
    for (int n = 1; n <= 5; ++n) {
        const PureState psi = haar_state(n, 2, rng);
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            const Bipartition s(n, mask);
            EXPECT_EQ(ungroup(regroup(psi, s), s, 2), psi.amplitudes());
        }
    }
}

TEST(PermuteSubsystems, SwapTwoFactors) {
    const std::vector<int> dims{2, 3};
    const std::vector<int> order{1, 0};
    const CVector a = ket({1.0, 2.0});
    const CVector b = ket({3.0, 4.0, 5.0});
    EXPECT_EQ(permute_subsystems(kron(a, b), dims, order), kron(b, a));
    const CMatrix ma = CMatrix::Random(2, 2);
    const CMatrix mb = CMatrix::Random(3, 3);
    EXPECT_TRUE(permute_subsystems(kron(ma, mb), dims, order).isApprox(kron(mb, ma), 1e-14));
}

TEST(TraceDistance, SpecExamples) {
    const DensityOperator zero = DensityOperator::pure(PureState::basis(1, 2, 0));
    const DensityOperator one = DensityOperator::pure(PureState::basis(1, 2, 1));
    EXPECT_NEAR(trace_distance(zero, zero), 0.0, 1e-15);
    EXPECT_NEAR(trace_distance(zero, one), 1.0, 1e-15);
    EXPECT_NEAR(trace_distance(DensityOperator::maximally_mixed(2), zero), 0.5, 1e-15);
    EXPECT_THROW(trace_distance(zero, DensityOperator::maximally_mixed(3)), DimensionError);
}

TEST(TraceDistance, PureStatesMatchFidelityFormula) {
    for (int d : {2, 3, 4}) {
        Rng rng = substream(3, static_cast<std::uint64_t>(d));
        for (int i = 0; i < 100; ++i) {
            const PureState a = haar_state(1, d, rng);
            const PureState b = haar_state(1, d, rng);
            const double expected = std::sqrt(std::max(0.0, 1.0 - std::norm(overlap(a, b))));
            EXPECT_NEAR(trace_distance(DensityOperator::pure(a), DensityOperator::pure(b)), expected, 1e-8);
        }
    }
}

TEST(TraceDistance, SymmetricAndTriangle) {
    Rng rng = substream(4, 0);
    for (int i = 0; i < 50; ++i) {
        const auto a = DensityOperator::pure(haar_state(2, 2, rng));
        const auto b = DensityOperator::pure(haar_state(2, 2, rng));
        const auto c = DensityOperator::pure(haar_state(2, 2, rng));
        EXPECT_NEAR(trace_distance(a, b), trace_distance(b, a), 1e-12);
        EXPECT_LE(trace_distance(a, c), trace_distance(a, b) + trace_distance(b, c) + 1e-8);
    }
}

TEST(Overlap, SpecExamples) {
    const PureState zero = PureState::basis(1, 2, 0);
    const PureState one = PureState::basis(1, 2, 1);
    const PureState plus = PureState::normalized(1, 2, ket({1.0, 1.0}));
    EXPECT_NEAR(std::abs(overlap(plus, plus)), 1.0, 1e-15);
    EXPECT_EQ(overlap(zero, one), Complex(0.0));
    EXPECT_NEAR(overlap(plus, zero).real(), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_THROW(overlap(zero, PureState::basis(1, 3, 0)), DimensionError);
}

TEST(DensityOperator, Validation) {
    CMatrix nonherm = CMatrix::Zero(2, 2);
    nonherm(0, 0) = 1.0;
    nonherm(0, 1) = 0.5;
    EXPECT_THROW(DensityOperator{nonherm}, PreconditionError);
    CMatrix negative = CMatrix::Zero(2, 2);
    negative(0, 0) = 1.5;
    negative(1, 1) = -0.5;
    EXPECT_THROW(DensityOperator{negative}, PreconditionError);
    CMatrix unnormalized = CMatrix::Identity(2, 2);
    EXPECT_THROW(DensityOperator{unnormalized}, PreconditionError);
    EXPECT_NO_THROW(DensityOperator(unnormalized, false));
    EXPECT_NEAR(DensityOperator::maximally_mixed(4).purity(), 0.25, 1e-15);
}

TEST(ComplexOperator, RejectsNonFinite) {
    CMatrix m = CMatrix::Identity(2, 2);
    m(0, 1) = Complex(std::nan(""), 0.0);
    EXPECT_THROW(ComplexOperator{m}, PreconditionError);
    EXPECT_THROW(ComplexOperator{CMatrix::Zero(2, 3)}, DimensionError);
}
