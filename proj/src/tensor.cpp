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

#include <bit>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace bptest {

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && r > cap / base) {
            std::ostringstream msg;
            msg << base << "^" << exp << " exceeds the dimension cap " << cap;
            throw CapacityError(msg.str());
        }
        r *= base;
    }
    if (r > cap) {
        throw CapacityError("dimension " + std::to_string(r) + " exceeds the cap " + std::to_string(cap));
    }
    return r;
}

namespace {

void require_shape(int n, int d) {
    if (n < 1) {
        throw PreconditionError("party count must be >= 1");
    }
    if (d < 2) {
        throw PreconditionError("local dimension must be >= 2");
    }
}

}  // namespace

PureState::PureState(int n, int d, CVector amplitudes) : n_(n), d_(d), amplitudes_(std::move(amplitudes)) {
    require_shape(n, d);
    const auto dim = checked_pow(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(n));
    if (static_cast<std::uint64_t>(amplitudes_.size()) != dim) {
        throw DimensionError("amplitude vector has length " + std::to_string(amplitudes_.size()) + ", expected " +
                             std::to_string(dim));
    }
    if (!amplitudes_.allFinite()) {
        throw PreconditionError("amplitudes must be finite");
    }
    const double norm = amplitudes_.norm();
    if (std::abs(norm - 1.0) > kExactTol) {
        throw PreconditionError("state is not normalized (norm " + std::to_string(norm) + ")");
    }
}

PureState PureState::normalized(int n, int d, CVector amplitudes) {
    const double norm = amplitudes.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw PreconditionError("cannot normalize a zero or non-finite vector");
    }
    amplitudes /= norm;
    return PureState(n, d, std::move(amplitudes));
}

PureState PureState::basis(int n, int d, std::uint64_t index) {
    require_shape(n, d);
    const auto dim = checked_pow(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(n));
    if (index >= dim) {
        throw PreconditionError("basis index out of range");
    }
    CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return PureState(n, d, std::move(v));
}

PureState PureState::product(std::span<const CVector> locals) {
    if (locals.empty()) {
        throw PreconditionError("product state needs at least one factor");
    }
    const auto d = locals.front().size();
    CVector v = CVector::Ones(1);
    for (const auto& local : locals) {
        if (local.size() != d) {
            throw DimensionError("product factors must share a local dimension");
        }
        const double norm = local.norm();
        if (!(norm > 0.0)) {
            throw PreconditionError("product factor is zero");
        }
        v = kron(v, CVector(local / norm));
    }
    return PureState::normalized(static_cast<int>(locals.size()), static_cast<int>(d), std::move(v));
}

ComplexOperator::ComplexOperator(CMatrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) {
        throw DimensionError("operator must be square");
    }
    if (!entries_.allFinite()) {
        throw PreconditionError("operator entries must be finite");
    }
}

ComplexOperator ComplexOperator::identity(std::uint64_t dim) {
    checked_pow(dim, 1, kMaxOperatorDim);
    return ComplexOperator(CMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)));
}

double hermitian_defect(const CMatrix& a) {
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

DensityOperator::DensityOperator(CMatrix entries, bool unit_trace) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) {
        throw DimensionError("density operator must be square");
    }
    if (!entries_.allFinite()) {
        throw PreconditionError("density operator entries must be finite");
    }
    if (hermitian_defect(entries_) > kExactTol) {
        throw PreconditionError("density operator is not Hermitian");
    }
    if (unit_trace && std::abs(entries_.trace() - Complex(1.0)) > kExactTol) {
        throw PreconditionError("density operator does not have unit trace");
    }
    if (dim() <= kPsdCheckDim) {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(entries_, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -kExactTol) {
            throw PreconditionError("density operator has a negative eigenvalue");
        }
    }
}

DensityOperator DensityOperator::pure(const PureState& psi) {
    return pure(psi.amplitudes());
}

DensityOperator DensityOperator::pure(const CVector& psi) {
    checked_pow(static_cast<std::uint64_t>(psi.size()), 1, kMaxOperatorDim);
    return DensityOperator(psi * psi.adjoint());
}

DensityOperator DensityOperator::maximally_mixed(std::uint64_t dim) {
    checked_pow(dim, 1, kMaxOperatorDim);
    const auto n = static_cast<Eigen::Index>(dim);
    return DensityOperator(CMatrix::Identity(n, n) / static_cast<double>(dim));
}

double DensityOperator::purity() const {
    return (entries_.cwiseProduct(entries_.transpose())).sum().real();
}

Bipartition::Bipartition(int n, std::uint64_t mask) : n_(n), mask_(mask) {
    if (n < 1 || n > 63) {
        throw PreconditionError("bipartition party count must be in [1, 63]");
    }
    if ((mask >> n) != 0) {
        throw PreconditionError("bipartition member out of range");
    }
}

Bipartition::Bipartition(int n, std::span<const int> members) : Bipartition(n, 0) {
    for (int p : members) {
        if (p < 0 || p >= n) {
            throw PreconditionError("bipartition member " + std::to_string(p) + " out of range");
        }
        mask_ |= std::uint64_t{1} << p;
    }
}

int Bipartition::size() const {
    return std::popcount(mask_);
}

bool Bipartition::nontrivial() const {
    return mask_ != 0 && size() != n_;
}

Bipartition Bipartition::complement() const {
    return Bipartition(n_, ~mask_ & ((std::uint64_t{1} << n_) - 1));
}

std::vector<int> Bipartition::members() const {
    std::vector<int> out;
    for (int p = 0; p < n_; ++p) {
        if (contains(p)) {
            out.push_back(p);
        }
    }
    return out;
}

std::vector<int> Bipartition::complement_members() const {
    return complement().members();
}

std::vector<Bipartition> cuts_up_to_complement(int n) {
    std::vector<Bipartition> cuts;
    if (n < 2) {
        return cuts;
    }
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t rest = 0; rest < (std::uint64_t{1} << (n - 1)); ++rest) {
        const std::uint64_t mask = (rest << 1) | 1U;
        if (mask != full) {
            cuts.emplace_back(n, mask);
        }
    }
    return cuts;
}

CVector kron(const CVector& a, const CVector& b) {
    CVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexOperator tensor(const ComplexOperator& a, const ComplexOperator& b) {
    checked_pow(a.dim() * b.dim(), 1, kMaxOperatorDim);
    return ComplexOperator(kron(a.matrix(), b.matrix()));
}

PureState tensor(const PureState& a, const PureState& b) {
    if (a.d() != b.d()) {
        throw DimensionError("tensor of states with different local dimensions");
    }
    checked_pow(a.dim() * b.dim(), 1);
    return PureState::normalized(a.n() + b.n(), a.d(), kron(a.amplitudes(), b.amplitudes()));
}

PureState ghz_state(int n, int d) {
    if (n < 1 || d < 2) {
        throw PreconditionError("ghz_state needs n >= 1 and d >= 2");
    }
    const std::uint64_t dim = checked_pow(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(n));
    const std::uint64_t stride = (dim - 1) / static_cast<std::uint64_t>(d - 1);
    CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
    for (int j = 0; j < d; ++j) {
        v(static_cast<Eigen::Index>(stride * static_cast<std::uint64_t>(j))) = 1.0;
    }
    return PureState::normalized(n, d, std::move(v));
}

CMatrix regroup(const PureState& psi, const Bipartition& s) {
    if (s.n() != psi.n()) {
        throw DimensionError("bipartition and state disagree on the party count");
    }
    const auto d = static_cast<std::uint64_t>(psi.d());
    const std::uint64_t rows = checked_pow(d, static_cast<std::uint64_t>(s.size()));
    const std::uint64_t cols = psi.dim() / rows;
    CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    const auto& amp = psi.amplitudes();
    for (std::uint64_t x = 0; x < psi.dim(); ++x) {
        std::uint64_t r = 0;
        std::uint64_t c = 0;
        std::uint64_t rest = x;
        std::uint64_t rscale = 1;
        std::uint64_t cscale = 1;
        for (int p = psi.n() - 1; p >= 0; --p) {
            const std::uint64_t digit = rest % d;
            rest /= d;
            if (s.contains(p)) {
                r += digit * rscale;
                rscale *= d;
            } else {
                c += digit * cscale;
                cscale *= d;
            }
        }
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = amp(static_cast<Eigen::Index>(x));
    }
    return m;
}

CVector ungroup(const CMatrix& coefficients, const Bipartition& s, int d) {
    const auto ud = static_cast<std::uint64_t>(d);
    const std::uint64_t rows = checked_pow(ud, static_cast<std::uint64_t>(s.size()));
    const std::uint64_t cols = checked_pow(ud, static_cast<std::uint64_t>(s.n() - s.size()));
    if (static_cast<std::uint64_t>(coefficients.rows()) != rows ||
        static_cast<std::uint64_t>(coefficients.cols()) != cols) {
        throw DimensionError("coefficient matrix shape does not match the bipartition");
    }
    CVector v(static_cast<Eigen::Index>(rows * cols));
    for (std::uint64_t x = 0; x < rows * cols; ++x) {
        std::uint64_t r = 0;
        std::uint64_t c = 0;
        std::uint64_t rest = x;
        std::uint64_t rscale = 1;
        std::uint64_t cscale = 1;
        for (int p = s.n() - 1; p >= 0; --p) {
            const std::uint64_t digit = rest % ud;
            rest /= ud;
            if (s.contains(p)) {
                r += digit * rscale;
                rscale *= ud;
            } else {
                c += digit * cscale;
                cscale *= ud;
            }
        }
        v(static_cast<Eigen::Index>(x)) = coefficients(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
    return v;
}

namespace {

// out_index[x] for the factor reordering described in permute_subsystems.
std::vector<std::uint64_t> reorder_map(std::span<const int> dims, std::span<const int> order) {
    const std::size_t m = dims.size();
    if (order.size() != m) {
        throw DimensionError("reorder needs one entry per subsystem");
    }
    std::vector<bool> seen(m, false);
    for (int j : order) {
        if (j < 0 || static_cast<std::size_t>(j) >= m || seen[static_cast<std::size_t>(j)]) {
            throw PreconditionError("subsystem order is not a permutation");
        }
        seen[static_cast<std::size_t>(j)] = true;
    }
    std::uint64_t total = 1;
    for (int dj : dims) {
        total *= static_cast<std::uint64_t>(dj);
    }
    // Stride of each input factor inside the output index.
    std::vector<std::uint64_t> out_stride(m);
    std::uint64_t stride = 1;
    for (std::size_t i = m; i-- > 0;) {
        out_stride[static_cast<std::size_t>(order[i])] = stride;
        stride *= static_cast<std::uint64_t>(dims[static_cast<std::size_t>(order[i])]);
    }
    std::vector<std::uint64_t> map(total);
    for (std::uint64_t x = 0; x < total; ++x) {
        std::uint64_t rest = x;
        std::uint64_t y = 0;
        for (std::size_t j = m; j-- > 0;) {
            const auto dj = static_cast<std::uint64_t>(dims[j]);
            y += (rest % dj) * out_stride[j];
            rest /= dj;
        }
        map[x] = y;
    }
    return map;
}

}  // namespace

CVector permute_subsystems(const CVector& v, std::span<const int> dims, std::span<const int> order) {
    const auto map = reorder_map(dims, order);
    if (static_cast<std::uint64_t>(v.size()) != map.size()) {
        throw DimensionError("vector length does not match subsystem dimensions");
    }
    CVector out(v.size());
    for (std::size_t x = 0; x < map.size(); ++x) {
        out(static_cast<Eigen::Index>(map[x])) = v(static_cast<Eigen::Index>(x));
    }
    return out;
}

CMatrix permute_subsystems(const CMatrix& a, std::span<const int> dims, std::span<const int> order) {
    const auto map = reorder_map(dims, order);
    if (static_cast<std::uint64_t>(a.rows()) != map.size() || a.rows() != a.cols()) {
        throw DimensionError("matrix shape does not match subsystem dimensions");
    }
    CMatrix out(a.rows(), a.cols());
    for (std::size_t c = 0; c < map.size(); ++c) {
        for (std::size_t r = 0; r < map.size(); ++r) {
            out(static_cast<Eigen::Index>(map[r]), static_cast<Eigen::Index>(map[c])) =
                a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
    }
    return out;
}

double trace_norm_hermitian(const CMatrix& h) {
    if (h.rows() == 0) {
        return 0.0;
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

double trace_norm_symmetric(const Eigen::MatrixXd& h) {
    if (h.rows() == 0) {
        return 0.0;
    }
    if (h.rows() == 1) {
        return std::abs(h(0, 0));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
    if (rho.dim() != sigma.dim()) {
        throw DimensionError("trace distance between operators of different dimension");
    }
    const CMatrix diff = rho.matrix() - sigma.matrix();
    return 0.5 * trace_norm_hermitian(0.5 * (diff + diff.adjoint()));
}

Complex overlap(const PureState& psi, const PureState& phi) {
    if (psi.dim() != phi.dim()) {
        throw DimensionError("overlap between states of different dimension");
    }
    return psi.amplitudes().dot(phi.amplitudes());
}

}  // namespace bptest
