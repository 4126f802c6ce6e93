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

#include "bptest/measures.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "bptest/haar.hpp"

namespace bptest {

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n), edges_(std::move(edges)) {
    if (n < 1) {
        throw PreconditionError("graph needs at least one vertex");
    }
    std::set<std::pair<int, int>> seen;
    for (auto& [u, v] : edges_) {
        if (u < 0 || u >= n || v < 0 || v >= n) {
            throw PreconditionError("edge endpoint outside [0, n)");
        }
        if (u == v) {
            throw PreconditionError("self-loops are not allowed");
        }
        if (u > v) {
            std::swap(u, v);
        }
        if (!seen.insert({u, v}).second) {
            throw PreconditionError("duplicate edge");
        }
    }
}

double generalized_geometric_measure(const PureState& psi) {
    const double g = capital_gamma_max(psi);
    return std::max(0.0, 1.0 - g * g);
}

double distance_to_bp(const PureState& psi) {
    return std::sqrt(generalized_geometric_measure(psi));
}

double max_product_overlap(const PureState& psi, const Bipartition& s, Rng& rng, const OverlapOptions& options) {
    if (!s.nontrivial()) {
        throw PreconditionError("product overlap needs a nontrivial cut");
    }
    if (options.restarts < 1 || options.max_iterations < 1) {
        throw PreconditionError("product overlap needs restarts >= 1 and max_iterations >= 1");
    }
    // <a b|psi> = a^dagger M b, with M the coefficient matrix across s.
    const CMatrix m = regroup(psi, s);
    double best = 0.0;
    for (int r = 0; r < options.restarts; ++r) {
        CVector b = haar_vector(static_cast<std::uint64_t>(m.cols()), rng);
        double value = 0.0;
        for (int it = 0; it < options.max_iterations; ++it) {
            // For fixed b the best a is M b / |M b|, and symmetrically for b.
            CVector a = m * b;
            const double na = a.norm();
            if (!(na > 0.0)) {
                break;
            }
            a /= na;
            b = m.adjoint() * a;
            const double next = b.norm();
            if (!(next > 0.0)) {
                break;
            }
            b /= next;
            const bool done = std::abs(next - value) < options.tolerance;
            value = next;
            if (done) {
                break;
            }
        }
        best = std::max(best, value);
    }
    return best;
}

PureState graph_state(const Graph& g) {
    const int n = g.vertices();
    if (n > kMaxGraphVertices) {
        throw CapacityError("graph states are capped at " + std::to_string(kMaxGraphVertices) + " vertices");
    }
    const std::uint64_t dim = std::uint64_t{1} << n;
    const double amp = std::pow(2.0, -0.5 * n);
    CVector v(static_cast<Eigen::Index>(dim));
    for (std::uint64_t x = 0; x < dim; ++x) {
        int parity = 0;
        for (const auto& [a, b] : g.edges()) {
            // Party p is bit n-1-p of the index.
            parity ^= static_cast<int>((x >> (n - 1 - a)) & (x >> (n - 1 - b)) & 1U);
        }
        v(static_cast<Eigen::Index>(x)) = parity ? -amp : amp;
    }
    return PureState::normalized(n, 2, std::move(v));
}

bool is_connected(const Graph& g) {
    const int n = g.vertices();
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (const auto& [a, b] : g.edges()) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<int> stack{0};
    seen[0] = true;
    int reached = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int v : adj[static_cast<std::size_t>(u)]) {
            if (!seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = true;
                ++reached;
                stack.push_back(v);
            }
        }
    }
    return reached == n;
}

std::vector<Graph> all_graphs(int n) {
    if (n < 1 || n > 6) {
        throw CapacityError("graph enumeration supports 1 <= n <= 6");
    }
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            pairs.emplace_back(u, v);
        }
    }
    std::vector<Graph> out;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << pairs.size()); ++bits) {
        std::vector<std::pair<int, int>> edges;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            if ((bits >> i) & 1U) {
                edges.push_back(pairs[i]);
            }
        }
        out.emplace_back(n, std::move(edges));
    }
    return out;
}

}  // namespace bptest
