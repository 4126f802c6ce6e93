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

#ifndef BPTEST_MEASURES_HPP
#define BPTEST_MEASURES_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "bptest/rng.hpp"
#include "bptest/tensor.hpp"

namespace bptest {

/// Simple undirected graph on vertices 0..n-1.
class Graph {
  public:
    explicit Graph(int n, std::vector<std::pair<int, int>> edges = {});

    int vertices() const { return n_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  private:
    int n_;
    std::vector<std::pair<int, int>> edges_;
};

/// E_G = 1 - Gamma_max^2. Throws for n = 1.
double generalized_geometric_measure(const PureState& psi);

/// sqrt(1 - Gamma_max^2), the trace distance to the nearest bipartite product state.
double distance_to_bp(const PureState& psi);

struct OverlapOptions {
    int restarts = 10;
    int max_iterations = 500;
    double tolerance = 1e-10;
};

/// max over product states |a>|b> across s of |<psi|a b>|, by alternating
/// maximization from random starts. Throws for a trivial cut.
double max_product_overlap(const PureState& psi, const Bipartition& s, Rng& rng, const OverlapOptions& options = {});

inline constexpr int kMaxGraphVertices = 12;

/// CZ on every edge applied to |+>^n.
PureState graph_state(const Graph& g);

bool is_connected(const Graph& g);

/// Every labelled simple graph on n vertices, 2^{n(n-1)/2} of them.
std::vector<Graph> all_graphs(int n);

}  // namespace bptest

#endif
