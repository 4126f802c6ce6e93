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

#include "bptest/haar.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace bptest {

CVector haar_vector(std::uint64_t dim, Rng& rng) {
    if (dim < 2) {
        throw PreconditionError("Haar vector needs dimension at least 2");
    }
    std::normal_distribution<double> normal(0.0, 1.0);
    CVector v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        v(i) = Complex(re, im);
    }
    return v / v.norm();
}

PureState haar_state(int n, int d, Rng& rng) {
    const auto dim = checked_pow(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(n));
    return PureState::normalized(n, d, haar_vector(dim, rng));
}

CMatrix haar_unitary(int dim, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix z(dim, dim);
    for (int c = 0; c < dim; ++c) {
        for (int r = 0; r < dim; ++r) {
            const double re = normal(rng);
            const double im = normal(rng);
            z(r, c) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ();
    const CMatrix& r = qr.matrixQR();
    for (int j = 0; j < dim; ++j) {
        const Complex rjj = r(j, j);
        if (std::abs(rjj) > 0.0) {
            q.col(j) *= rjj / std::abs(rjj);
        }
    }
    return q;
}

PureState apply_local_unitaries(const PureState& psi, std::span<const CMatrix> locals) {
    if (static_cast<int>(locals.size()) != psi.n()) {
        throw DimensionError("need one local unitary per party");
    }
    const auto d = static_cast<std::uint64_t>(psi.d());
    CVector v = psi.amplitudes();
    std::uint64_t stride = psi.dim();
    for (int p = 0; p < psi.n(); ++p) {
        const CMatrix& u = locals[static_cast<std::size_t>(p)];
        if (static_cast<std::uint64_t>(u.rows()) != d || static_cast<std::uint64_t>(u.cols()) != d) {
            throw DimensionError("local unitary has the wrong dimension");
        }
        stride /= d;  // weight of party p's digit
        CVector out = CVector::Zero(v.size());
        for (std::uint64_t x = 0; x < psi.dim(); ++x) {
            const std::uint64_t digit = (x / stride) % d;
            const std::uint64_t base = x - digit * stride;
            for (std::uint64_t a = 0; a < d; ++a) {
                out(static_cast<Eigen::Index>(base + a * stride)) +=
                    u(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(digit)) * v(static_cast<Eigen::Index>(x));
            }
        }
        v = std::move(out);
    }
    return PureState::normalized(psi.n(), psi.d(), std::move(v));
}

double gamma_max(const PureState& psi, const Bipartition& s) {
    if (!s.nontrivial()) {
        return 1.0;
    }
    const CMatrix m = regroup(psi, s);
    // Largest eigenvalue of the smaller Gram matrix is the squared top singular value.
    const CMatrix gram = m.rows() <= m.cols() ? CMatrix(m * m.adjoint()) : CMatrix(m.adjoint() * m);
    if (gram.rows() == 1) {
        return std::sqrt(std::max(0.0, gram(0, 0).real()));
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(gram, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double capital_gamma_max(const PureState& psi) {
    if (psi.n() < 2) {
        throw PreconditionError("Gamma_max needs at least two parties");
    }
    double best = 0.0;
    for (const auto& cut : cuts_up_to_complement(psi.n())) {
        best = std::max(best, gamma_max(psi, cut));
    }
    return best;
}

bool schmidt_exceeds(const PureState& psi, double threshold) {
    if (psi.n() < 2) {
        throw PreconditionError("Gamma_max needs at least two parties");
    }
    for (const auto& cut : cuts_up_to_complement(psi.n())) {
        if (gamma_max(psi, cut) > threshold) {
            return true;
        }
    }
    return false;
}

TailConstants lemma4_constants(double gamma, int d) {
    const double lower = std::sqrt(3.0) / 2.0;
    if (!(gamma >= lower - 1e-12) || !(gamma < 1.0)) {
        throw PreconditionError("gamma must satisfy sqrt(3)/2 <= gamma < 1");
    }
    if (d < 2) {
        throw PreconditionError("local dimension must be >= 2");
    }
    const double g2 = gamma * gamma;
    const double g4 = g2 * g2;
    const double ln2 = std::numbers::ln2;
    TailConstants c;
    c.c1 = 0.5 * std::pow(30.0 / g2, 2.0 * d);
    c.c2 = d * g4 / (126.0 * ln2);
    c.n_threshold = std::log(252.0 * ln2 * std::log(30.0 / g2) / g4) / std::log(static_cast<double>(d));
    return c;
}

double tail_bound(const TailConstants& c, int n, int d) {
    const double log_bound = std::log(c.c1) + n * std::numbers::ln2 - c.c2 * std::pow(static_cast<double>(d), n);
    return std::exp(log_bound);
}

double wilson_upper(std::uint64_t successes, std::uint64_t trials) {
    if (trials == 0) {
        throw PreconditionError("Wilson interval needs at least one trial");
    }
    constexpr double z = 1.959963984540054;
    const double nt = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / nt;
    const double z2 = z * z;
    const double centre = p + z2 / (2.0 * nt);
    const double spread = z * std::sqrt(p * (1.0 - p) / nt + z2 / (4.0 * nt * nt));
    return std::min(1.0, (centre + spread) / (1.0 + z2 / nt));
}

namespace {

TailEstimate make_estimate(int n, int d, double gamma, std::uint64_t samples, std::uint64_t seed,
                           std::uint64_t exceed) {
    const TailConstants c = lemma4_constants(gamma, d);
    TailEstimate t;
    t.n = n;
    t.d = d;
    t.gamma = gamma;
    t.samples = samples;
    t.exceed_count = exceed;
    t.frequency = static_cast<double>(exceed) / static_cast<double>(samples);
    t.wilson_upper = wilson_upper(exceed, samples);
    t.lemma_bound = tail_bound(c, n, d);
    t.n_threshold = c.n_threshold;
    t.seed = seed;
    return t;
}

void check_tail_args(int n, std::uint64_t samples) {
    if (n < 2) {
        throw PreconditionError("tail estimate needs n >= 2");
    }
    if (samples < 1) {
        throw PreconditionError("tail estimate needs at least one sample");
    }
}

}  // namespace

TailEstimate tail_mc(int n, int d, double gamma, std::uint64_t samples, std::uint64_t seed) {
    check_tail_args(n, samples);
    lemma4_constants(gamma, d);
    std::uint64_t exceed = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : exceed)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(samples); ++i) {
        Rng rng = substream(seed, static_cast<std::uint64_t>(i));
        exceed += schmidt_exceeds(haar_state(n, d, rng), gamma) ? 1 : 0;
    }
    return make_estimate(n, d, gamma, samples, seed, exceed);
}

TailEstimate tail_mc_serial(int n, int d, double gamma, std::uint64_t samples, std::uint64_t seed) {
    check_tail_args(n, samples);
    lemma4_constants(gamma, d);
    std::uint64_t exceed = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        Rng rng = substream(seed, i);
        exceed += capital_gamma_max(haar_state(n, d, rng)) > gamma ? 1 : 0;
    }
    return make_estimate(n, d, gamma, samples, seed, exceed);
}

ConditionedSample conditioned_sample(int n, int d, double gamma, Rng& rng, std::uint64_t max_tries) {
    if (!(gamma > 0.0) || gamma > 1.0) {
        throw PreconditionError("conditioning threshold must lie in (0, 1]");
    }
    if (max_tries < 1) {
        throw PreconditionError("rejection budget must be >= 1");
    }
    for (std::uint64_t t = 1; t <= max_tries; ++t) {
        PureState psi = haar_state(n, d, rng);
        if (gamma >= 1.0 || !schmidt_exceeds(psi, gamma)) {
            return ConditionedSample{std::move(psi), t};
        }
    }
    throw RejectionBudgetError("no state with Gamma_max <= " + std::to_string(gamma) + " in " +
                               std::to_string(max_tries) + " tries");
}

WeightedEnsemble::WeightedEnsemble(std::vector<PureState> states, std::vector<double> weights, int k)
    : states_(std::move(states)), weights_(std::move(weights)), k_(k) {
    if (states_.empty() || states_.size() != weights_.size()) {
        throw PreconditionError("ensemble needs one weight per state and at least one state");
    }
    if (k < 1) {
        throw PreconditionError("copy count must be >= 1");
    }
    double sum = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0)) {
            throw PreconditionError("ensemble weights must be nonnegative");
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw PreconditionError("ensemble weights must sum to 1");
    }
    for (const auto& s : states_) {
        if (s.n() != states_.front().n() || s.d() != states_.front().d()) {
            throw DimensionError("ensemble states must share (n, d)");
        }
    }
}

MixtureDistance mixture_condition_distance(const WeightedEnsemble& e, const std::vector<bool>& keep) {
    const auto& states = e.states();
    if (keep.size() != states.size()) {
        throw DimensionError("keep mask needs one entry per state");
    }
    const auto dim = checked_pow(states.front().dim(), static_cast<std::uint64_t>(e.copies()), kMaxOperatorDim);
    const auto n = static_cast<Eigen::Index>(dim);
    CMatrix rho = CMatrix::Zero(n, n);
    CMatrix kept = CMatrix::Zero(n, n);
    double kept_mass = 0.0;
    double excluded_mass = 0.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        CVector v = states[i].amplitudes();
        for (int c = 1; c < e.copies(); ++c) {
            v = kron(v, states[i].amplitudes());
        }
        const CMatrix proj = v * v.adjoint();
        const double w = e.weights()[i];
        rho += w * proj;
        if (keep[i]) {
            kept += w * proj;
            kept_mass += w;
        } else {
            excluded_mass += w;
        }
    }
    if (!(kept_mass > 0.0)) {
        throw PreconditionError("predicate excludes every state with positive weight");
    }
    kept /= kept_mass;
    MixtureDistance out;
    out.distance = trace_distance(DensityOperator(rho), DensityOperator(kept));
    out.excluded_mass = excluded_mass;
    return out;
}

MixtureDistance mixture_condition_distance(const WeightedEnsemble& e,
                                           const std::function<bool(const PureState&)>& keep) {
    std::vector<bool> mask;
    mask.reserve(e.states().size());
    for (const auto& s : e.states()) {
        mask.push_back(keep(s));
    }
    return mixture_condition_distance(e, mask);
}

}  // namespace bptest
