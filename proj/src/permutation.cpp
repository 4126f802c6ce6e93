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

#include "bptest/permutation.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include <omp.h>

#include "bptest/haar.hpp"

namespace bptest {

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
    std::vector<bool> seen(image_.size(), false);
    for (int v : image_) {
        if (v < 0 || static_cast<std::size_t>(v) >= image_.size() || seen[static_cast<std::size_t>(v)]) {
            throw PreconditionError("image table is not a bijection");
        }
        seen[static_cast<std::size_t>(v)] = true;
    }
}

Permutation Permutation::identity(int k) {
    std::vector<int> image(static_cast<std::size_t>(k));
    std::iota(image.begin(), image.end(), 0);
    return Permutation(std::move(image));
}

Permutation Permutation::from_cycles(int k, std::initializer_list<std::initializer_list<int>> cycles) {
    std::vector<int> image(static_cast<std::size_t>(k));
    std::iota(image.begin(), image.end(), 0);
    for (const auto& cycle : cycles) {
        const std::vector<int> c(cycle);
        for (std::size_t i = 0; i < c.size(); ++i) {
            const int from = c[i] - 1;
            const int to = c[(i + 1) % c.size()] - 1;
            if (from < 0 || from >= k || to < 0 || to >= k) {
                throw PreconditionError("cycle entry out of range");
            }
            image[static_cast<std::size_t>(from)] = to;
        }
    }
    return Permutation(std::move(image));
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) {
        inv[static_cast<std::size_t>(image_[i])] = static_cast<int>(i);
    }
    return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
    for (std::size_t i = 0; i < image_.size(); ++i) {
        if (image_[i] != static_cast<int>(i)) {
            return false;
        }
    }
    return true;
}

Permutation compose(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree()) {
        throw DimensionError("composing permutations of different degree");
    }
    std::vector<int> image(static_cast<std::size_t>(a.degree()));
    for (int i = 0; i < a.degree(); ++i) {
        image[static_cast<std::size_t>(i)] = a(b(i));
    }
    return Permutation(std::move(image));
}

std::vector<Permutation> enumerate_group(int k) {
    if (k < 1) {
        throw PreconditionError("group degree must be >= 1");
    }
    if (k > kMaxGroupDegree) {
        throw CapacityError("S_" + std::to_string(k) + " is beyond the enumeration cap of " +
                            std::to_string(kMaxGroupDegree));
    }
    std::vector<Permutation> out;
    std::vector<int> image(static_cast<std::size_t>(k));
    std::iota(image.begin(), image.end(), 0);
    do {
        out.emplace_back(image);
    } while (std::next_permutation(image.begin(), image.end()));
    return out;
}

int cycle_number(const Permutation& alpha) {
    const int k = alpha.degree();
    std::vector<bool> visited(static_cast<std::size_t>(k), false);
    int cycles = 0;
    for (int start = 0; start < k; ++start) {
        if (visited[static_cast<std::size_t>(start)]) {
            continue;
        }
        ++cycles;
        for (int i = start; !visited[static_cast<std::size_t>(i)]; i = alpha(i)) {
            visited[static_cast<std::size_t>(i)] = true;
        }
    }
    return cycles;
}

std::uint64_t permuted_index(const Permutation& alpha, std::uint64_t d, std::uint64_t column) {
    const int k = alpha.degree();
    if (k > 64) {
        throw CapacityError("permutation degree too large for index mapping");
    }
    // Slot i has weight d^{k-1-i}.
    std::uint64_t weights[64];
    std::uint64_t w = 1;
    for (int i = k - 1; i >= 0; --i) {
        weights[i] = w;
        w *= d;
    }
    std::uint64_t row = 0;
    for (int i = k - 1; i >= 0; --i) {
        row += (column % d) * weights[alpha(i)];
        column /= d;
    }
    return row;
}

ComplexOperator permutation_unitary(const Permutation& alpha, int d) {
    if (d < 2) {
        throw PreconditionError("local dimension must be >= 2");
    }
    const auto ud = static_cast<std::uint64_t>(d);
    const std::uint64_t dim = checked_pow(ud, static_cast<std::uint64_t>(alpha.degree()), kMaxOperatorDim);
    CMatrix u = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::uint64_t x = 0; x < dim; ++x) {
        u(static_cast<Eigen::Index>(permuted_index(alpha, ud, x)), static_cast<Eigen::Index>(x)) = 1.0;
    }
    return ComplexOperator(std::move(u));
}

std::uint64_t permutation_unitary_trace(const Permutation& alpha, int d) {
    const auto ud = static_cast<std::uint64_t>(d);
    const std::uint64_t dim = checked_pow(ud, static_cast<std::uint64_t>(alpha.degree()));
    std::uint64_t fixed = 0;
    for (std::uint64_t x = 0; x < dim; ++x) {
        fixed += permuted_index(alpha, ud, x) == x ? 1 : 0;
    }
    return fixed;
}

CVector apply_permutation(const Permutation& alpha, std::uint64_t local_dim, const CVector& v) {
    const std::uint64_t dim = checked_pow(local_dim, static_cast<std::uint64_t>(alpha.degree()));
    if (static_cast<std::uint64_t>(v.size()) != dim) {
        throw DimensionError("vector length does not match (local_dim)^k");
    }
    CVector out(v.size());
    for (std::uint64_t x = 0; x < dim; ++x) {
        out(static_cast<Eigen::Index>(permuted_index(alpha, local_dim, x))) = v(static_cast<Eigen::Index>(x));
    }
    return out;
}

std::uint64_t sym_dimension(int k, std::uint64_t d) {
    // C(d + k - 1, k) built incrementally; each partial product is itself a binomial.
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        const std::uint64_t num = d - 1 + static_cast<std::uint64_t>(i);
        if (r > std::numeric_limits<std::uint64_t>::max() / num) {
            throw CapacityError("symmetric subspace dimension overflows 64 bits");
        }
        r = r * num / static_cast<std::uint64_t>(i);
    }
    return r;
}

ComplexOperator sym_projector(int k, int d) {
    const auto ud = static_cast<std::uint64_t>(d);
    const std::uint64_t dim = checked_pow(ud, static_cast<std::uint64_t>(k), kMaxOperatorDim);
    const auto group = enumerate_group(k);
    const double weight = 1.0 / static_cast<double>(group.size());
    CMatrix p = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (const auto& alpha : group) {
        for (std::uint64_t x = 0; x < dim; ++x) {
            p(static_cast<Eigen::Index>(permuted_index(alpha, ud, x)), static_cast<Eigen::Index>(x)) += weight;
        }
    }
    return ComplexOperator(std::move(p));
}

namespace {

constexpr std::uint64_t kMomentChunk = 1024;

CVector tensor_power(const CVector& v, int k) {
    CVector out = v;
    for (int i = 1; i < k; ++i) {
        out = kron(out, v);
    }
    return out;
}

void check_moment_args(int k, int d, std::uint64_t samples) {
    if (samples < 1) {
        throw PreconditionError("Haar moment estimate needs at least one sample");
    }
    if (k < 1 || d < 2) {
        throw PreconditionError("Haar moment estimate needs k >= 1 and d >= 2");
    }
    checked_pow(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(k), kMaxOperatorDim);
}

}  // namespace

ComplexOperator sym_projector_haar_mc(int k, int d, std::uint64_t samples, std::uint64_t seed) {
    check_moment_args(k, d, samples);
    const auto dim = static_cast<Eigen::Index>(checked_pow(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(k)));
    const std::uint64_t chunks = (samples + kMomentChunk - 1) / kMomentChunk;
    std::vector<CMatrix> partial(chunks);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
        CMatrix acc = CMatrix::Zero(dim, dim);
        const std::uint64_t begin = static_cast<std::uint64_t>(c) * kMomentChunk;
        const std::uint64_t end = std::min(samples, begin + kMomentChunk);
        for (std::uint64_t i = begin; i < end; ++i) {
            Rng rng = substream(seed, i);
            const CVector v = tensor_power(haar_vector(static_cast<std::uint64_t>(d), rng), k);
            acc.noalias() += v * v.adjoint();
        }
        partial[static_cast<std::size_t>(c)] = std::move(acc);
    }
    CMatrix total = CMatrix::Zero(dim, dim);
    for (const auto& p : partial) {
        total += p;
    }
    const double scale = static_cast<double>(sym_dimension(k, static_cast<std::uint64_t>(d))) / static_cast<double>(samples);
    return ComplexOperator(total * scale);
}

ComplexOperator sym_projector_haar_mc_serial(int k, int d, std::uint64_t samples, std::uint64_t seed) {
    check_moment_args(k, d, samples);
    const auto dim = static_cast<Eigen::Index>(checked_pow(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(k)));
    CMatrix total = CMatrix::Zero(dim, dim);
    for (std::uint64_t i = 0; i < samples; ++i) {
        Rng rng = substream(seed, i);
        const CVector v = tensor_power(haar_vector(static_cast<std::uint64_t>(d), rng), k);
        total.noalias() += v * v.adjoint();
    }
    const double scale = static_cast<double>(sym_dimension(k, static_cast<std::uint64_t>(d))) / static_cast<double>(samples);
    return ComplexOperator(total * scale);
}

std::uint64_t CycleTripleHistogram::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

namespace {

// Group data shared by both histogram kernels: composition table and cycle numbers.
struct GroupTables {
    std::size_t order = 0;
    std::vector<std::uint32_t> compose;  // compose[a * order + b] = index of a * b
    std::vector<int> cycles;
};

GroupTables group_tables(int k) {
    if (k < 1 || k > kMaxTripleDegree) {
        throw CapacityError("cycle triple histogram supports 1 <= k <= " + std::to_string(kMaxTripleDegree));
    }
    const auto group = enumerate_group(k);
    GroupTables t;
    t.order = group.size();
    t.cycles.reserve(t.order);
    for (const auto& g : group) {
        t.cycles.push_back(cycle_number(g));
    }
    // Group is in lexicographic order, so binary search recovers an element's index.
    const auto rank = [&](const Permutation& p) {
        const auto it = std::lower_bound(group.begin(), group.end(), p, [](const Permutation& x, const Permutation& y) {
            return x.image() < y.image();
        });
        return static_cast<std::uint32_t>(it - group.begin());
    };
    t.compose.resize(t.order * t.order);
    for (std::size_t a = 0; a < t.order; ++a) {
        for (std::size_t b = 0; b < t.order; ++b) {
            t.compose[a * t.order + b] = rank(compose(group[a], group[b]));
        }
    }
    return t;
}

}  // namespace

CycleTripleHistogram cycle_triple_histogram(int k) {
    const GroupTables t = group_tables(k);
    CycleTripleHistogram h;
    h.k = k;
    h.counts.assign(static_cast<std::size_t>(k * k * k * k), 0);
    const auto order = static_cast<std::int64_t>(t.order);
#pragma omp parallel
    {
        std::vector<std::uint64_t> local(h.counts.size(), 0);
#pragma omp for schedule(static)
        for (std::int64_t a = 0; a < order; ++a) {
            const int ca = t.cycles[static_cast<std::size_t>(a)];
            for (std::size_t dl = 0; dl < t.order; ++dl) {
                const std::size_t ad = t.compose[static_cast<std::size_t>(a) * t.order + dl];
                const int cd = t.cycles[dl];
                for (std::size_t g = 0; g < t.order; ++g) {
                    const std::size_t adg = t.compose[ad * t.order + g];
                    ++local[h.index(t.cycles[adg], ca, t.cycles[g], cd)];
                }
            }
        }
#pragma omp critical
        for (std::size_t i = 0; i < local.size(); ++i) {
            h.counts[i] += local[i];
        }
    }
    return h;
}

CycleTripleHistogram cycle_triple_histogram_serial(int k) {
    if (k < 1 || k > kMaxTripleDegree) {
        throw CapacityError("cycle triple histogram supports 1 <= k <= " + std::to_string(kMaxTripleDegree));
    }
    // Straight from the definition: compose the permutations and count cycles.
    const auto group = enumerate_group(k);
    CycleTripleHistogram h;
    h.k = k;
    h.counts.assign(static_cast<std::size_t>(k * k * k * k), 0);
    for (const auto& a : group) {
        for (const auto& dl : group) {
            const Permutation ad = compose(a, dl);
            for (const auto& g : group) {
                ++h.counts[h.index(cycle_number(compose(ad, g)), cycle_number(a), cycle_number(g), cycle_number(dl))];
            }
        }
    }
    return h;
}

}  // namespace bptest
