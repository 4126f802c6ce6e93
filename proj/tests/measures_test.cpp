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

#include <gtest/gtest.h>

#include <cmath>

#include "bptest/haar.hpp"

using namespace bptest;

namespace {

double svd_capital_gamma(const PureState& psi) {
    double best = 0;
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << psi.n()); ++mask) {
        best = std::max(best, Eigen::JacobiSVD<CMatrix>(regroup(psi, Bipartition(psi.n(), mask))).singularValues()(0));
    }
    return best;
}

// Breadth-first reachability on an adjacency matrix, independent of the library search.
bool connected_reference(const Graph& g) {
    const int n = g.vertices();
    std::vector<std::vector<bool>> adj(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
    for (auto [u, v] : g.edges()) {
        adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = true;
        adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = true;
    }
    std::vector<bool> reached(static_cast<std::size_t>(n));
    std::vector<int> frontier{0};
    reached[0] = true;
    while (!frontier.empty()) {
        const int u = frontier.back();
        frontier.pop_back();
        for (int v = 0; v < n; ++v) {
            if (adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] && !reached[static_cast<std::size_t>(v)]) {
                reached[static_cast<std::size_t>(v)] = true;
                frontier.push_back(v);
            }
        }
    }
    return std::all_of(reached.begin(), reached.end(), [](bool b) { return b; });
}

}  // namespace

TEST(GeometricMeasure, Examples) {
    EXPECT_NEAR(generalized_geometric_measure(PureState::basis(3, 2, 0)), 0.0, 1e-12);
    EXPECT_NEAR(generalized_geometric_measure(ghz_state(2)), 0.5, 1e-12);
    EXPECT_NEAR(generalized_geometric_measure(ghz_state(3)), 0.5, 1e-12);
    EXPECT_THROW(generalized_geometric_measure(PureState::basis(1, 2, 0)), PreconditionError);
}

TEST(DistanceToBp, Examples) {
    EXPECT_NEAR(distance_to_bp(PureState::basis(2, 3, 4)), 0.0, 1e-12);
    EXPECT_NEAR(distance_to_bp(ghz_state(2)), 1.0 / std::sqrt(2.0), 1e-12);
    CVector v = CVector::Zero(4);
    v(0) = std::sqrt(3.0) / 2.0;
    v(3) = 0.5;
    EXPECT_NEAR(distance_to_bp(PureState(2, 2, v)), 0.5, 1e-12);
    EXPECT_THROW(distance_to_bp(PureState::basis(1, 2, 0)), PreconditionError);
}

TEST(GeometricMeasure, ConsistencyAndLocalInvariance) {
    Rng rng = substream(60, 0);
    for (int trial = 0; trial < 10; ++trial) {
        const PureState psi = haar_state(3, 2, rng);
        const double eg = generalized_geometric_measure(psi);
        EXPECT_NEAR(eg, distance_to_bp(psi) * distance_to_bp(psi), 1e-9);
        EXPECT_NEAR(eg, 1 - svd_capital_gamma(psi) * svd_capital_gamma(psi), 1e-9);
        std::vector<CMatrix> locals{haar_unitary(2, rng), haar_unitary(2, rng), haar_unitary(2, rng)};
        EXPECT_NEAR(generalized_geometric_measure(apply_local_unitaries(psi, locals)), eg, 1e-9);
    }
}

TEST(ProductOverlap, Examples) {
    Rng rng = substream(61, 0);
    const Bipartition s(2, std::uint64_t{1});
    EXPECT_NEAR(max_product_overlap(PureState::basis(2, 2, 1), s, rng), 1.0, 1e-9);
    EXPECT_NEAR(max_product_overlap(ghz_state(2), s, rng), 1.0 / std::sqrt(2.0), 1e-6);
    EXPECT_THROW(max_product_overlap(ghz_state(2), Bipartition(2, std::uint64_t{0}), rng), PreconditionError);
}

TEST(ProductOverlap, MatchesLargestSchmidtCoefficient) {
    Rng rng = substream(62, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const PureState psi = haar_state(3, 2, rng);
        for (const auto& cut : cuts_up_to_complement(3)) {
            const double svd = Eigen::JacobiSVD<CMatrix>(regroup(psi, cut)).singularValues()(0);
            EXPECT_NEAR(max_product_overlap(psi, cut, rng), svd, 1e-6);
        }
    }
}

TEST(Graph, Validation) {
    EXPECT_THROW(Graph(3, {{1, 1}}), PreconditionError);
    EXPECT_THROW(Graph(3, {{0, 3}}), PreconditionError);
    EXPECT_THROW(Graph(3, {{0, 1}, {1, 0}}), PreconditionError);
    EXPECT_THROW(Graph(0), PreconditionError);
    EXPECT_EQ(Graph(3, {{2, 0}}).edges().front(), (std::pair<int, int>{0, 2}));
}

TEST(GraphState, Examples) {
    const PureState empty = graph_state(Graph(3));
    for (Eigen::Index i = 0; i < 8; ++i) {
        EXPECT_NEAR(empty.amplitudes()(i).real(), 1.0 / std::sqrt(8.0), 1e-15);
    }
    EXPECT_NEAR(capital_gamma_max(empty), 1.0, 1e-12);
    EXPECT_NEAR(capital_gamma_max(graph_state(Graph(2, {{0, 1}}))), 1.0 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(capital_gamma_max(graph_state(Graph(3, {{0, 1}}))), 1.0, 1e-12);
    EXPECT_THROW(graph_state(Graph(13)), CapacityError);
}

TEST(GraphState, ControlledZSigns) {
    // Triangle: amplitude sign is (-1)^{number of edges with both ends set}.
    const PureState tri = graph_state(Graph(3, {{0, 1}, {1, 2}, {0, 2}}));
    for (int x = 0; x < 8; ++x) {
        const int b0 = (x >> 2) & 1, b1 = (x >> 1) & 1, b2 = x & 1;
        const int parity = (b0 & b1) ^ (b1 & b2) ^ (b0 & b2);
        EXPECT_NEAR(tri.amplitudes()(x).real(), (parity ? -1.0 : 1.0) / std::sqrt(8.0), 1e-15);
    }
}

TEST(Connectivity, Examples) {
    EXPECT_TRUE(is_connected(Graph(2, {{0, 1}})));
    EXPECT_FALSE(is_connected(Graph(2)));
    EXPECT_TRUE(is_connected(Graph(4, {{0, 1}, {1, 2}, {2, 3}})));
    EXPECT_TRUE(is_connected(Graph(1)));
}

TEST(Connectivity, EquivalentToGraphStateEntanglement) {
    for (int n = 1; n <= 4; ++n) {
        const auto graphs = all_graphs(n);
        EXPECT_EQ(graphs.size(), std::size_t{1} << (n * (n - 1) / 2));
        for (const Graph& g : graphs) {
            EXPECT_EQ(is_connected(g), connected_reference(g));
            if (n >= 2) {
                const bool bp = svd_capital_gamma(graph_state(g)) >= 1.0 - 1e-9;
                EXPECT_EQ(!is_connected(g), bp);
            }
        }
    }
}
