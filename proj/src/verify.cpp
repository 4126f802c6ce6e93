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

#include "bptest/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "bptest/ensembles.hpp"
#include "bptest/haar.hpp"
#include "bptest/io.hpp"
#include "bptest/measures.hpp"
#include "bptest/permutation.hpp"
#include "bptest/testers.hpp"

namespace bptest {

namespace {

constexpr double kFaultSize = 1e-3;

Check make_check(std::string name, bool passed, std::string detail = {}) {
    return Check{std::move(name), passed, std::move(detail)};
}

std::uint64_t ipow(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        r *= base;
    }
    return r;
}

std::string grid_label(const GridPoint& g) {
    return "n=" + std::to_string(g.n) + " k=" + std::to_string(g.k) + " d=" + std::to_string(g.d);
}

CMatrix qubit_pair_projector(bool inject_fault) {
    CMatrix p = sym_projector(2, 2).matrix();
    if (inject_fault) {
        p(0, 0) += kFaultSize;
    }
    return p;
}

Check cycle_trace_check() {
    int tested = 0;
    for (int d : {2, 3}) {
        for (int k = 1; k <= 5; ++k) {
            for (const auto& alpha : enumerate_group(k)) {
                const std::uint64_t expected = ipow(static_cast<std::uint64_t>(d), cycle_number(alpha));
                if (permutation_unitary_trace(alpha, d) != expected) {
                    return make_check("Tr(U_alpha) = d^c(alpha), k <= 5, d in {2,3}", false,
                                      "mismatch at k=" + std::to_string(k) + " d=" + std::to_string(d));
                }
                ++tested;
            }
        }
    }
    return make_check("Tr(U_alpha) = d^c(alpha), k <= 5, d in {2,3}", true,
                      std::to_string(tested) + " permutations");
}

Check projector_check(const CMatrix& p) {
    const double idempotency = (p * p - p).norm();
    const double defect = hermitian_defect(p);
    const double trace_error = std::abs(p.trace() - Complex(3.0, 0.0));
    const bool ok = idempotency <= kExactTol && defect <= kExactTol && trace_error <= kExactTol;
    return make_check("symmetric projector k=2 d=2 is a rank-3 orthogonal projector", ok,
                      "idempotency defect " + format_double(idempotency) + ", trace error " +
                          format_double(trace_error));
}

Check haar_moment_check(const CMatrix& p, std::uint64_t seed) {
    constexpr std::uint64_t samples = 100000;
    const CMatrix mc = sym_projector_haar_mc(2, 2, samples, seed).matrix();
    const double err = (mc - p).norm();
    return make_check("Haar moment k=2 d=2 matches the symmetric projector (Frobenius <= 0.05)", err <= 0.05,
                      "Frobenius error " + format_double(err) + " over " + std::to_string(samples) + " samples");
}

Check binbounds_check() {
    int tested = 0;
    for (int t = 0; t <= 60; ++t) {
        const auto a = static_cast<std::uint64_t>(std::llround(std::pow(10.0, 6.0 * t / 60.0)));
        for (std::uint64_t b = 1; b <= 20; ++b) {
            if (!binom_and_bounds(a, b).holds()) {
                return make_check("binomial bounds, b <= 20, a <= 1e6", false,
                                  "fails at a=" + std::to_string(a) + " b=" + std::to_string(b));
            }
            ++tested;
        }
    }
    return make_check("binomial bounds, b <= 20, a <= 1e6", true, std::to_string(tested) + " pairs");
}

Check haar_mixture_check(std::uint64_t seed, int ensembles) {
    const std::vector<std::pair<int, int>> shapes{{1, 2}, {1, 3}, {1, 4}, {1, 8}, {2, 2}, {3, 2}};
    double worst_slack = -1.0;
    for (int i = 0; i < ensembles; ++i) {
        Rng rng = substream(seed, static_cast<std::uint64_t>(i));
        std::uniform_int_distribution<int> pick_size(2, 5);
        std::uniform_int_distribution<std::size_t> pick_shape(0, shapes.size() - 1);
        std::uniform_int_distribution<int> pick_k(1, 2);
        std::exponential_distribution<double> weight_law(1.0);
        const auto [n, d] = shapes[pick_shape(rng)];
        const int m = pick_size(rng);
        const int k = pick_k(rng);
        std::vector<PureState> states;
        std::vector<double> weights;
        double total = 0;
        for (int j = 0; j < m; ++j) {
            states.push_back(haar_state(n, d, rng));
            weights.push_back(weight_law(rng));
            total += weights.back();
        }
        for (auto& w : weights) {
            w /= total;
        }
        std::vector<bool> keep(static_cast<std::size_t>(m));
        std::bernoulli_distribution coin(0.6);
        for (int j = 0; j < m; ++j) {
            keep[static_cast<std::size_t>(j)] = coin(rng);
        }
        keep[0] = true;
        const auto r = mixture_condition_distance(WeightedEnsemble(std::move(states), std::move(weights), k), keep);
        worst_slack = std::max(worst_slack, r.distance - r.excluded_mass);
    }
    return make_check("conditioned mixture distance D <= excluded mass p", worst_slack <= kExactTol,
                      std::to_string(ensembles) + " ensembles, max D - p = " + format_double(worst_slack));
}

Check schmidt_overlap_check(std::uint64_t seed, int pairs) {
    double worst = 0;
    for (int i = 0; i < pairs; ++i) {
        Rng rng = substream(seed, static_cast<std::uint64_t>(i));
        const int n = 2 + i % 2;
        const int d = 2 + (i / 2) % 2;
        const PureState psi = haar_state(n, d, rng);
        const auto cuts = cuts_up_to_complement(n);
        const Bipartition& cut = cuts[static_cast<std::size_t>(i) % cuts.size()];
        const double diff = std::abs(max_product_overlap(psi, cut, rng) - gamma_max(psi, cut));
        worst = std::max(worst, diff);
    }
    return make_check("alternating product overlap equals largest Schmidt coefficient", worst <= 1e-6,
                      std::to_string(pairs) + " (state, cut) pairs, max deviation " + format_double(worst));
}

}  // namespace

bool VerifyReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"facts", "ensembles", "testers", "all"};
    return names;
}

std::vector<Check> facts_checks(const VerifyOptions& options) {
    const CMatrix p = qubit_pair_projector(options.inject_fault);
    std::vector<Check> out;
    out.push_back(cycle_trace_check());
    out.push_back(projector_check(p));
    out.push_back(haar_moment_check(p, derive_seed(options.seed, 1)));
    out.push_back(binbounds_check());
    out.push_back(haar_mixture_check(derive_seed(options.seed, 2), 200));
    out.push_back(schmidt_overlap_check(derive_seed(options.seed, 3), 20));
    return out;
}

std::vector<Check> ensembles_checks(const VerifyOptions&) {
    std::vector<Check> out;

    double worst = 0;
    int points = 0;
    for (int d = 2; d <= 8; ++d) {
        for (int k = 1; k <= 3; ++k) {
            for (int n = 1; ipow(static_cast<std::uint64_t>(d), n * k) <= 64; ++n) {
                const GridPoint g{n, k, d};
                const double a = f_trace(g);
                const double b = f_cycle(g);
                worst = std::max(worst, std::abs(a - b) / std::max(std::abs(a), 1e-300));
                ++points;
            }
        }
    }
    out.push_back(make_check("f_trace = f_cycle for d^(nk) <= 64, k <= 3", worst <= 1e-9,
                             std::to_string(points) + " grid points, max relative gap " + format_double(worst)));

    double st_worst = 0;
    for (int d : {2, 3}) {
        for (int n = 1; n <= 8; ++n) {
            for (auto v : {StVariant::intersect, StVariant::diagonal}) {
                const double c = st_closed_form(n, d, v);
                st_worst = std::max(st_worst, std::abs(st_enumerated(n, d, v) - c) / c);
            }
        }
    }
    out.push_back(make_check("subset sums match ((1+d)/2)^n, n <= 8, d in {2,3}", st_worst <= 1e-9,
                             "max relative gap " + format_double(st_worst)));

    for (int n = 1; n <= 3; ++n) {
        for (int k = 1; k <= 3; ++k) {
            const GridPoint g{n, k, 2};
            const BoundReport r = bound_report(g);
            const EnsembleTraces t = ensemble_traces(g);
            const bool trace_ok = std::abs(t.rho_sigma - t.rho_rho) <= kExactTol;
            const bool zero_ok = k != 1 || *r.exact_d == 0.0;
            out.push_back(make_check("D^2 <= lemma3_bound and Tr(rho sigma) = Tr(rho^2) at " + grid_label(g),
                                     r.satisfied.value_or(false) && trace_ok && zero_ok,
                                     "D^2 = " + format_double(*r.d_squared) + ", bound = " +
                                         format_double(r.lemma3_bound)));
        }
    }

    for (int n : {2, 3}) {
        const GridPoint g{n, 2, 2};
        const double gap = sigma_prime_gap(g);
        const double limit = std::ldexp(1.0, -(n - 2));
        out.push_back(make_check("||sigma - sigma'||_1 <= 2^-(n-2) at " + grid_label(g), gap <= limit + kExactTol,
                                 "gap " + format_double(gap)));
    }

    bool decay_ok = true;
    for (int e = 4; e <= 20; ++e) {
        const std::int64_t n = std::int64_t{1} << e;
        const auto k = static_cast<std::int64_t>(std::ceil(0.05 * static_cast<double>(n) / e));
        decay_ok = decay_ok && theorem_decay(n, k) < 0;
    }
    out.push_back(make_check("decay exponent negative for k = ceil(0.05 n / log2 n), n = 2^4..2^20", decay_ok));
    return out;
}

std::vector<Check> testers_checks(const VerifyOptions& options) {
    std::vector<Check> out;

    Rng rng = substream(options.seed, 100);
    double mp_worst = 0;
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<CVector> locals;
        for (int p = 0; p < 3; ++p) {
            locals.push_back(haar_vector(2, rng));
        }
        const PureState psi = PureState::product(locals);
        const Partition parts = singleton_partition(3);
        mp_worst = std::max({mp_worst, std::abs(1.0 - product_test_probability(psi, parts)),
                             std::abs(1.0 - product_test_probability_projector(psi, parts))});
    }
    out.push_back(make_check("product test accepts product states with probability 1", mp_worst <= kExactTol,
                             "max deviation " + format_double(mp_worst)));

    const PureState bell = ghz_state(2);
    const double bell_p = product_test_probability_projector(bell, singleton_partition(2));
    out.push_back(make_check("Bell state product test accepts with probability 3/4",
                             std::abs(bell_p - 0.75) <= kExactTol, "p = " + format_double(bell_p)));

    double swap_worst = 0;
    for (int trial = 0; trial < 10; ++trial) {
        const PureState a = haar_state(2, 2, rng);
        const PureState b = haar_state(2, 2, rng);
        const double expected = 0.5 * (1.0 + std::norm(overlap(a, b)));
        swap_worst = std::max(swap_worst, std::abs(swap_accept_probability(a, b) - expected));
    }
    out.push_back(make_check("swap test accepts with probability (1 + |<a|b>|^2)/2", swap_worst <= kExactTol,
                             "max deviation " + format_double(swap_worst)));

    constexpr std::uint64_t trials = 200;
    const std::uint64_t accepts = count_accepts(TesterKind::mp, ghz_state(3), 50, trials, derive_seed(options.seed, 101));
    out.push_back(make_check("mp_tester rejects GHZ3 (50 reps) in >= 99% of 200 trials", accepts <= 2,
                             std::to_string(accepts) + " accepting trials"));

    StateOracle oracle(tensor(PureState::basis(1, 2, 0), ghz_state(3)));
    Rng bp_rng = substream(options.seed, 102);
    const TestOutcome bp = bp_tester_naive(oracle, 5, bp_rng);
    out.push_back(make_check("bp_tester_naive accepts |0> (x) GHZ3 with probability 1",
                             bp.accepted && bp.accept_probability && std::abs(*bp.accept_probability - 1.0) <= kExactTol,
                             "p = " + format_double(bp.accept_probability.value_or(-1.0))));

    int graphs = 0;
    bool graphs_ok = true;
    for (int n = 2; n <= 4; ++n) {
        for (const Graph& g : all_graphs(n)) {
            const bool entangled = capital_gamma_max(graph_state(g)) < 1.0 - kExactTol;
            graphs_ok = graphs_ok && entangled == is_connected(g);
            ++graphs;
        }
    }
    out.push_back(make_check("graph state is bipartite product iff the graph is disconnected, n <= 4", graphs_ok,
                             std::to_string(graphs) + " graphs"));
    return out;
}

std::optional<VerifyReport> run_suite(const std::string& suite, const VerifyOptions& options) {
    if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end()) {
        return std::nullopt;
    }
    VerifyReport report{suite, {}};
    auto append = [&report](std::vector<Check> checks) {
        report.checks.insert(report.checks.end(), std::make_move_iterator(checks.begin()),
                             std::make_move_iterator(checks.end()));
    };
    if (suite == "facts" || suite == "all") {
        append(facts_checks(options));
    }
    if (suite == "ensembles" || suite == "all") {
        append(ensembles_checks(options));
    }
    if (suite == "testers" || suite == "all") {
        append(testers_checks(options));
    }
    return report;
}

nlohmann::json report_to_json(const VerifyReport& report) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : report.checks) {
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    return {{"suite", report.suite}, {"passed", report.passed()}, {"checks", std::move(checks)}};
}

std::string report_summary(const VerifyReport& report) {
    std::ostringstream out;
    std::size_t passed = 0;
    for (const auto& c : report.checks) {
        out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name;
        if (!c.detail.empty()) {
            out << " (" << c.detail << ')';
        }
        out << '\n';
        passed += c.passed ? 1 : 0;
    }
    out << passed << '/' << report.checks.size() << " checks passed in suite " << report.suite << '\n';
    return out.str();
}

}  // namespace bptest
