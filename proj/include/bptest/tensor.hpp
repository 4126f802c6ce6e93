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

#ifndef BPTEST_TENSOR_HPP
#define BPTEST_TENSOR_HPP

// Dense complex linear algebra over multipartite states.
//
// Index convention, used everywhere in the library: for n parties of local
// dimension d, party 0 is the most significant base-d digit of the basis
// index. A k-fold copy space (C^D)^{(x)k} is copy-major: copy 0 is the most
// significant block.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "bptest/common.hpp"

namespace bptest {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Normalized pure state of n parties, each of dimension d.
class PureState {
  public:
    /// Throws if the length is not d^n or the norm is off by more than 1e-9.
    PureState(int n, int d, CVector amplitudes);

    /// Rescales `amplitudes` to unit norm. Zero vectors are rejected.
    static PureState normalized(int n, int d, CVector amplitudes);
    static PureState basis(int n, int d, std::uint64_t index);
    /// Tensor product of single-party vectors (each normalized first).
    static PureState product(std::span<const CVector> locals);

    int n() const { return n_; }
    int d() const { return d_; }
    std::uint64_t dim() const { return static_cast<std::uint64_t>(amplitudes_.size()); }
    const CVector& amplitudes() const { return amplitudes_; }

  private:
    int n_;
    int d_;
    CVector amplitudes_;
};

/// Square complex matrix with finite entries and no further constraints.
class ComplexOperator {
  public:
    explicit ComplexOperator(CMatrix entries);
    static ComplexOperator identity(std::uint64_t dim);

    std::uint64_t dim() const { return static_cast<std::uint64_t>(entries_.rows()); }
    const CMatrix& matrix() const { return entries_; }
    Complex trace() const { return entries_.trace(); }

  private:
    CMatrix entries_;
};

/// Hermitian PSD operator. With `unit_trace` the trace must be 1.
///
/// The PSD check needs a full eigensolve, so it only runs up to
/// kPsdCheckDim; larger inputs get the Hermitian and trace checks.
class DensityOperator {
  public:
    static constexpr std::uint64_t kPsdCheckDim = 1024;

    explicit DensityOperator(CMatrix entries, bool unit_trace = true);
    static DensityOperator pure(const PureState& psi);
    static DensityOperator pure(const CVector& psi);
    static DensityOperator maximally_mixed(std::uint64_t dim);

    std::uint64_t dim() const { return static_cast<std::uint64_t>(entries_.rows()); }
    const CMatrix& matrix() const { return entries_; }
    double purity() const;

  private:
    CMatrix entries_;
};

/// Subset S of the parties {0, ..., n-1}, stored as a bit mask (bit p is party p).
class Bipartition {
  public:
    Bipartition(int n, std::uint64_t mask);
    Bipartition(int n, std::span<const int> members);

    int n() const { return n_; }
    std::uint64_t mask() const { return mask_; }
    bool contains(int party) const { return (mask_ >> party) & 1U; }
    int size() const;
    bool nontrivial() const;
    Bipartition complement() const;
    std::vector<int> members() const;
    std::vector<int> complement_members() const;

  private:
    int n_;
    std::uint64_t mask_;
};

/// Every nontrivial bipartition containing party 0, in increasing mask order.
/// These are the 2^{n-1} - 1 cuts up to complement.
std::vector<Bipartition> cuts_up_to_complement(int n);

ComplexOperator tensor(const ComplexOperator& a, const ComplexOperator& b);
PureState tensor(const PureState& a, const PureState& b);

/// (|0...0> + |1...1> + ... + |d-1...d-1>) / sqrt(d) on n parties.
PureState ghz_state(int n, int d = 2);
/// Kronecker product on raw vectors/matrices; first factor most significant.
CVector kron(const CVector& a, const CVector& b);
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Coefficient matrix of psi across S : S^c. Rows are indexed by the digits of
/// the parties in S (ascending party order), columns by those of S^c.
CMatrix regroup(const PureState& psi, const Bipartition& s);
/// Inverse of regroup.
CVector ungroup(const CMatrix& coefficients, const Bipartition& s, int d);

/// Reorders tensor factors. Input factor `order[i]` becomes output factor i.
/// `dims[j]` is the dimension of input factor j.
CVector permute_subsystems(const CVector& v, std::span<const int> dims, std::span<const int> order);
/// Applies the same reordering to rows and columns: P A P^T.
CMatrix permute_subsystems(const CMatrix& a, std::span<const int> dims, std::span<const int> order);

/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm_hermitian(const CMatrix& h);
double trace_norm_symmetric(const Eigen::MatrixXd& h);

/// Half the trace norm of rho - sigma, via a Hermitian eigensolve.
double trace_distance(const DensityOperator& rho, const DensityOperator& sigma);

/// <psi|phi>.
Complex overlap(const PureState& psi, const PureState& phi);

/// Largest deviation from Hermiticity, max |A_ij - conj(A_ji)|.
double hermitian_defect(const CMatrix& a);

}  // namespace bptest

#endif
