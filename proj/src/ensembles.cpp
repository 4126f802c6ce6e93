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

#include "bptest/ensembles.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

#include "bptest/permutation.hpp"

namespace bptest {

void GridPoint::validate() const {
    if (n < 1 || k < 1 || d < 2) {
        throw PreconditionError("grid point needs n >= 1, k >= 1, d >= 2");
    }
}

bool GridPoint::exactly_computable() const {
    if (k > kMaxGroupDegree) {
        return false;
    }
    try {
        checked_pow(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(k),
                    kMaxOperatorDim);
    } catch (const CapacityError&) {
        return false;
    }
    return true;
}

double log_big(const BigInt& x) {
    if (x <= 0) {
        return -std::numeric_limits<double>::infinity();
    }
    const auto bits = static_cast<std::int64_t>(boost::multiprecision::msb(x)) + 1;
    if (bits <= 1000) {
        return std::log(x.convert_to<double>());
    }
    const std::int64_t shift = bits - 64;
    const BigInt top = x >> shift;
    return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::numbers::ln2;
}

std::optional<double> BinomBounds::lower() const {
    if (!log_lower) {
        return std::nullopt;
    }
    return std::exp(*log_lower);
}

std::optional<double> BinomBounds::upper() const {
    if (!log_upper) {
        return std::nullopt;
    }
    return std::exp(*log_upper);
}

bool BinomBounds::holds() const {
    if (!log_lower || !log_upper) {
        return false;
    }
    // Relative slack only absorbs rounding in the logs; b = 1 makes the lower bound tight.
    constexpr double slack = 1e-12;
    const double scale = std::max(1.0, std::abs(log_binomial));
    return *log_lower <= log_binomial + slack * scale && log_binomial <= *log_upper + slack * scale;
}

BinomBounds binom_and_bounds(std::uint64_t a, std::uint64_t b) {
    if (b < 1) {
        throw PreconditionError("binomial bound needs b >= 1");
    }
    BinomBounds out;
    BigInt r = 1;
    for (std::uint64_t i = 1; i <= b; ++i) {
        r = r * (BigInt(a) + i - 1) / i;
    }
    out.binomial = r;
    out.log_binomial = log_big(r);
    if (a >= 1) {
        const double bd = static_cast<double>(b);
        const double lower = bd * std::log(static_cast<double>(a)) - std::lgamma(bd + 1.0);
        out.log_lower = lower;
        out.log_upper = lower + bd * bd / static_cast<double>(a);
    }
    return out;
}

std::shared_ptr<const BlockLayout> ensemble_layout(const GridPoint& g) {
    g.validate();
    if (g.k > kMaxGroupDegree) {
        throw CapacityError("k beyond the enumeration cap");
    }
    return std::make_shared<const BlockLayout>(g.n, g.k, g.d);
}

BlockOperator tau_unnormalized(const std::shared_ptr<const BlockLayout>& layout, std::uint64_t mask) {
    return subset_projector(layout, mask);
}

double tau_normalization(const GridPoint& g, int subset_size) {
    const auto d = static_cast<std::uint64_t>(g.d);
    const auto cap = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t da = checked_pow(d, static_cast<std::uint64_t>(subset_size), cap);
    const std::uint64_t db = checked_pow(d, static_cast<std::uint64_t>(g.n - subset_size), cap);
    return static_cast<double>(sym_dimension(g.k, da)) * static_cast<double>(sym_dimension(g.k, db));
}

namespace {

std::uint64_t full_mask(int n) {
    return (std::uint64_t{1} << n) - 1;
}

BlockOperator sigma_on(const std::shared_ptr<const BlockLayout>& layout, const GridPoint& g, bool include_trivial) {
    if (!include_trivial && g.n < 2) {
        throw PreconditionError("sigma' needs n >= 2: a single party has no nontrivial subsets");
    }
    const std::uint64_t full = full_mask(g.n);
    const std::uint64_t count = include_trivial ? full + 1 : full - 1;
    BlockOperator sigma(layout);
    for (std::uint64_t s = 0; s <= full; ++s) {
        if (!include_trivial && (s == 0 || s == full)) {
            continue;
        }
        const double scale = 1.0 / (tau_normalization(g, std::popcount(s)) * static_cast<double>(count));
        accumulate_subset_projector(sigma, s, scale);
    }
    return sigma;
}

BlockOperator rho_on(const std::shared_ptr<const BlockLayout>& layout, const GridPoint& g) {
    BlockOperator rho(layout);
    accumulate_subset_projector(rho, full_mask(g.n), 1.0 / tau_normalization(g, g.n));
    return rho;
}

DensityOperator to_density(const BlockOperator& op) {
    return DensityOperator(op.dense().cast<Complex>());
}

}  // namespace

BlockOperator rho_blocks(const GridPoint& g) {
    return rho_on(ensemble_layout(g), g);
}

BlockOperator tau_blocks(const GridPoint& g, std::uint64_t mask) {
    auto layout = ensemble_layout(g);
    BlockOperator tau(layout);
    accumulate_subset_projector(tau, mask, 1.0 / tau_normalization(g, std::popcount(mask)));
    return tau;
}

BlockOperator sigma_blocks(const GridPoint& g, bool include_trivial) {
    return sigma_on(ensemble_layout(g), g, include_trivial);
}

DensityOperator rho_state(const GridPoint& g) {
    return to_density(rho_blocks(g));
}

DensityOperator sigma_state(const GridPoint& g, bool include_trivial) {
    return to_density(sigma_blocks(g, include_trivial));
}

DensityOperator tau_state_dense(const GridPoint& g, std::uint64_t mask) {
    g.validate();
    const Bipartition cut(g.n, mask);
    const std::vector<int> s_parties = cut.members();
    const std::vector<int> c_parties = cut.complement_members();
    const auto side_projector = [&](std::size_t parties) {
        if (parties == 0) {
            return CMatrix(CMatrix::Identity(1, 1));
        }
        const auto local = checked_pow(static_cast<std::uint64_t>(g.d), parties, kMaxOperatorDim);
        CMatrix p = sym_projector(g.k, static_cast<int>(local)).matrix();
        return CMatrix(p / p.trace().real());
    };
    const CMatrix joint = kron(side_projector(s_parties.size()), side_projector(c_parties.size()));
    // Input factors: k copies of the S side (one factor per S party), then k copies of S^c.
    const auto ns = static_cast<int>(s_parties.size());
    const auto nc = static_cast<int>(c_parties.size());
    std::vector<int> dims(static_cast<std::size_t>(g.n * g.k), g.d);
    std::vector<int> order;
    order.reserve(dims.size());
    for (int j = 0; j < g.k; ++j) {
        int si = 0;
        int ci = 0;
        for (int p = 0; p < g.n; ++p) {
            if (cut.contains(p)) {
                order.push_back(j * ns + si++);
            } else {
                order.push_back(g.k * ns + j * nc + ci++);
            }
        }
    }
    return DensityOperator(permute_subsystems(joint, dims, order));
}

double exact_rho_sigma_distance(const GridPoint& g) {
    auto layout = ensemble_layout(g);
    const BlockOperator rho = rho_on(layout, g);
    const std::uint64_t full = full_mask(g.n);
    const double weight = 1.0 / static_cast<double>(full + 1);
    BlockOperator diff(layout);
    for (std::uint64_t s = 0; s <= full; ++s) {
        BlockOperator term = rho;
        BlockOperator tau(layout);
        accumulate_subset_projector(tau, s, 1.0 / tau_normalization(g, std::popcount(s)));
        term -= tau;
        term *= weight;
        diff += term;
    }
    return 0.5 * diff.trace_norm();
}

EnsembleTraces ensemble_traces(const GridPoint& g) {
    auto layout = ensemble_layout(g);
    const BlockOperator rho = rho_on(layout, g);
    const BlockOperator sigma = sigma_on(layout, g, true);
    return EnsembleTraces{trace_product(rho, rho), trace_product(rho, sigma), trace_product(sigma, sigma)};
}

double sigma_prime_gap(const GridPoint& g) {
    auto layout = ensemble_layout(g);
    BlockOperator diff = sigma_on(layout, g, true);
    diff -= sigma_on(layout, g, false);
    return diff.trace_norm();
}

namespace {

constexpr int kFTraceMaxParties = 10;

std::vector<BlockOperator> all_subset_projectors(const GridPoint& g) {
    if (g.n > kFTraceMaxParties) {
        throw CapacityError("f_trace enumerates 4^n subset pairs; n is capped at " + std::to_string(kFTraceMaxParties));
    }
    auto layout = ensemble_layout(g);
    std::vector<BlockOperator> ops;
    ops.reserve(std::size_t{1} << g.n);
    for (std::uint64_t s = 0; s <= full_mask(g.n); ++s) {
        ops.push_back(subset_projector(layout, s));
    }
    return ops;
}

}  // namespace

double f_trace(const GridPoint& g) {
    const auto ops = all_subset_projectors(g);
    const auto count = static_cast<std::int64_t>(ops.size());
    std::vector<double> row_sums(ops.size(), 0.0);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t s = 0; s < count; ++s) {
        double acc = 0.0;
        for (std::int64_t t = 0; t < count; ++t) {
            acc += trace_product(ops[static_cast<std::size_t>(s)], ops[static_cast<std::size_t>(t)]);
        }
        row_sums[static_cast<std::size_t>(s)] = acc;
    }
    double total = 0.0;
    for (double r : row_sums) {
        total += r;
    }
    return total / (static_cast<double>(count) * static_cast<double>(count));
}

double f_trace_serial(const GridPoint& g) {
    const auto ops = all_subset_projectors(g);
    double total = 0.0;
    for (const auto& a : ops) {
        for (const auto& b : ops) {
            total += trace_product(a, b);
        }
    }
    return total / (static_cast<double>(ops.size()) * static_cast<double>(ops.size()));
}

namespace {

const CycleTripleHistogram& cached_histogram(int k) {
    static std::mutex mutex;
    static std::map<int, CycleTripleHistogram> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(k);
    if (it == cache.end()) {
        it = cache.emplace(k, cycle_triple_histogram(k)).first;
    }
    return it->second;
}

}  // namespace

double f_cycle(const GridPoint& g) {
    g.validate();
    if (static_cast<double>(g.n) * g.k * std::log2(static_cast<double>(g.d)) > 16000.0) {
        throw CapacityError("d^{nk} exceeds extended precision range");
    }
    const CycleTripleHistogram& h = cached_histogram(g.k);
    const int k = g.k;
    const int n = g.n;

    struct Term {
        long double weight;
        int c[4];
    };
    std::vector<Term> terms;
    long double group_cube = 1.0L;
    for (int i = 2; i <= k; ++i) {
        group_cube *= static_cast<long double>(i);
    }
    group_cube = group_cube * group_cube * group_cube;
    for (int a = 1; a <= k; ++a) {
        for (int b = 1; b <= k; ++b) {
            for (int c = 1; c <= k; ++c) {
                for (int e = 1; e <= k; ++e) {
                    const std::uint64_t count = h.counts[h.index(a, b, c, e)];
                    if (count != 0) {
                        terms.push_back(Term{static_cast<long double>(count) / group_cube, {a, b, c, e}});
                    }
                }
            }
        }
    }
    std::vector<long double> power(static_cast<std::size_t>(n * k + 1));
    power[0] = 1.0L;
    for (std::size_t i = 1; i < power.size(); ++i) {
        power[i] = power[i - 1] * static_cast<long double>(g.d);
    }
    // Each party lands in S&T, S&~T, ~S&T, ~S&~T with probability 1/4.
    const long double log_n_fact = std::lgamma(static_cast<long double>(n) + 1.0L);
    const long double log_quarter_n = static_cast<long double>(n) * std::log(4.0L);
    long double total = 0.0L;
    for (int st = 0; st <= n; ++st) {
        for (int sc = 0; st + sc <= n; ++sc) {
            for (int cs = 0; st + sc + cs <= n; ++cs) {
                const int cc = n - st - sc - cs;
                const long double log_w = log_n_fact - std::lgamma(st + 1.0L) - std::lgamma(sc + 1.0L) -
                                          std::lgamma(cs + 1.0L) - std::lgamma(cc + 1.0L) - log_quarter_n;
                long double inner = 0.0L;
                for (const auto& t : terms) {
                    inner += t.weight * power[static_cast<std::size_t>(st * t.c[0] + sc * t.c[1] + cs * t.c[2] + cc * t.c[3])];
                }
                total += std::exp(log_w) * inner;
            }
        }
    }
    return static_cast<double>(total);
}

double st_closed_form(int n, int d, StVariant) {
    if (n < 1) {
        throw PreconditionError("closed form needs n >= 1");
    }
    return std::pow((1.0 + d) / 2.0, n);
}

namespace {

void check_st_args(int n, int d) {
    if (n < 1 || n > 16 || d < 2) {
        throw PreconditionError("subset enumeration needs 1 <= n <= 16 and d >= 2");
    }
    // Sum of 4^n terms each at most d^n must fit in 63 bits.
    if (n * (2.0 + std::log2(static_cast<double>(d))) >= 63.0) {
        throw CapacityError("subset enumeration sum would overflow 64 bits");
    }
}

std::uint64_t st_exponent(std::uint64_t s, std::uint64_t t, std::uint64_t full, StVariant variant) {
    if (variant == StVariant::intersect) {
        return static_cast<std::uint64_t>(std::popcount(s & t) + std::popcount(s & (~t & full)));
    }
    return static_cast<std::uint64_t>(std::popcount(s & t) + std::popcount(~s & ~t & full));
}

}  // namespace

double st_enumerated(int n, int d, StVariant variant) {
    check_st_args(n, d);
    const std::uint64_t full = full_mask(n);
    std::vector<std::uint64_t> power(static_cast<std::size_t>(n + 1), 1);
    for (int i = 1; i <= n; ++i) {
        power[static_cast<std::size_t>(i)] = power[static_cast<std::size_t>(i - 1)] * static_cast<std::uint64_t>(d);
    }
    std::uint64_t total = 0;
#pragma omp parallel for schedule(static) reduction(+ : total)
    for (std::int64_t s = 0; s <= static_cast<std::int64_t>(full); ++s) {
        for (std::uint64_t t = 0; t <= full; ++t) {
            total += power[st_exponent(static_cast<std::uint64_t>(s), t, full, variant)];
        }
    }
    return static_cast<double>(static_cast<long double>(total) / std::pow(4.0L, n));
}

double st_enumerated_serial(int n, int d, StVariant variant) {
    check_st_args(n, d);
    const std::uint64_t full = full_mask(n);
    std::uint64_t total = 0;
    for (std::uint64_t s = 0; s <= full; ++s) {
        for (std::uint64_t t = 0; t <= full; ++t) {
            std::uint64_t term = 1;
            for (std::uint64_t e = st_exponent(s, t, full, variant); e > 0; --e) {
                term *= static_cast<std::uint64_t>(d);
            }
            total += term;
        }
    }
    return static_cast<double>(static_cast<long double>(total) / std::pow(4.0L, n));
}

double log_lemma3_bound(const GridPoint& g) {
    g.validate();
    const double log_kfact = std::lgamma(g.k + 1.0);
    const double ratio = std::exp(2.0 * std::log(static_cast<double>(g.k)) - g.n * std::log(static_cast<double>(g.d)));
    // 1 - e^{-k^2/d^n} and (k!)^3 ((1+d)/(2d))^n, both positive, combined in log space.
    const double t1 = std::log(-std::expm1(-ratio));
    const double t2 = 3.0 * log_kfact + g.n * std::log((1.0 + g.d) / (2.0 * g.d));
    const double hi = std::max(t1, t2);
    const double lo = std::min(t1, t2);
    return log_kfact - std::log(4.0) + hi + std::log1p(std::exp(lo - hi));
}

double lemma3_bound(const GridPoint& g) {
    return std::exp(log_lemma3_bound(g));
}

double theorem_decay(std::int64_t n, std::int64_t k) {
    if (n < 1 || k < 1) {
        throw PreconditionError("decay exponent needs n, k >= 1");
    }
    const double kd = static_cast<double>(k);
    return 2.0 * kd * std::log2(kd) - kDecayRate * static_cast<double>(n);
}

BoundReport bound_report(const GridPoint& g, const ReportOptions& options) {
    g.validate();
    BoundReport r;
    r.grid = g;
    r.lemma3_bound = lemma3_bound(g);
    r.theorem_decay = theorem_decay(g.n, g.k);
    r.small_ratio = 2.0 * std::log(static_cast<double>(g.k)) < g.n * std::log(static_cast<double>(g.d));
    if (g.k <= kMaxTripleDegree) {
        try {
            r.f_cycle = f_cycle(g);
        } catch (const CapacityError&) {
        }
    }
    if (options.exact && g.exactly_computable()) {
        const double dist = exact_rho_sigma_distance(g);
        r.exact_d = dist;
        r.d_squared = dist * dist;
        r.satisfied = dist * dist <= r.lemma3_bound + kExactTol;
        if (g.n <= options.f_trace_max_n) {
            r.f_trace = f_trace(g);
        }
    }
    return r;
}

std::vector<BoundReport> bound_sweep(const std::vector<GridPoint>& grid, const ReportOptions& options) {
    for (const auto& g : grid) {
        g.validate();
    }
    std::vector<BoundReport> out(grid.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(grid.size()); ++i) {
        out[static_cast<std::size_t>(i)] = bound_report(grid[static_cast<std::size_t>(i)], options);
    }
    return out;
}

}  // namespace bptest
