#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace orgsig {

/// Undirected weighted graph on nodes 0..n-1. Weights live in [0, 1], the
/// diagonal is zero and the weight matrix is kept exactly symmetric by
/// construction. Nodes are 0-based everywhere, including file formats.
class Graph {
 public:
  /// Edgeless graph on n nodes, n >= 1.
  explicit Graph(int n);

  /// Builds from a full row-major n*n weight matrix. Throws
  /// std::invalid_argument if the matrix is not symmetric, has a nonzero
  /// diagonal, or has entries outside [0, 1].
  Graph(int n, std::vector<double> weights);

  int size() const { return n_; }

  double weight(int i, int j) const { return w_[static_cast<std::size_t>(i) * n_ + j]; }
  bool has_edge(int i, int j) const { return weight(i, j) > 0.0; }

  /// Sets w(i,j) = w(j,i) = w. Throws on self-loops, bad indices or
  /// weights outside [0, 1].
  void set_edge(int i, int j, double w);

  /// Row-major n*n weight matrix.
  const std::vector<double>& weights() const { return w_; }

  /// Edges {i, j, w} with i < j and w > 0, lexicographic order.
  struct Edge {
    int i;
    int j;
    double w;
  };
  std::vector<Edge> edges() const;

 private:
  int n_;
  std::vector<double> w_;
};

struct DegreeSummary {
  std::vector<double> degrees;  ///< weighted degree per node
  double d_max = 0.0;
  double d_min = 0.0;
  int edge_count = 0;  ///< number of node pairs with positive weight
};

enum class GraphFamily {
  complete,
  star,
  ring,
  path,
  complete_bipartite,
  two_cliques,
};

/// Deterministic named families, all with unit weights.
///   complete     K_n, n >= 1
///   star         node 0 is the hub, n >= 1
///   ring         node i adjacent to (i +- 1) mod n, n >= 3
///   path         node i adjacent to i+1, n >= 1
///   complete_bipartite  parts {0..m-1} and {m..n-1}; `m` is the smaller
///                       part's size, 1 <= m <= n-m
///   two_cliques  disjoint K_m on {0..m-1} and K_{n-m} on {m..n-1},
///                1 <= m <= n-m
/// `m` is ignored for the first four families.
Graph make_special(GraphFamily family, int n, int m = 0);

Graph make_complete(int n);
Graph make_star(int n);
Graph make_ring(int n);
Graph make_path(int n);
Graph make_complete_bipartite(int m, int m_bar);
Graph make_two_cliques(int m, int n);

/// G(n, p): each pair independently an edge with probability p, unit
/// weights. Same seed, same graph on every platform.
Graph erdos_renyi(int n, double p, std::uint64_t seed);

/// Preferential attachment with a clique seed: starts from K_{m0} with
/// m0 = m_attach + 1, then each new node attaches to m_attach distinct
/// existing nodes sampled proportionally to degree, weights frozen at the
/// start of the node's step. Edge count is C(m0,2) + (n-m0)*m_attach and
/// the result is always connected. Requires 1 <= m_attach <= n-2.
Graph barabasi_albert(int n, int m_attach, std::uint64_t seed);

/// Complement weights 1 - w off the diagonal.
Graph complement(const Graph& g);

/// Connectivity over positive-weight edges; a single node is connected.
bool is_connected(const Graph& g);

/// True when big.weight(i,j) >= small.weight(i,j) everywhere
/// (same node count required).
bool is_spanning_supergraph(const Graph& big, const Graph& small);

DegreeSummary degree_summary(const Graph& g);

/// Parses {"n": int, "edges": [[i,j], ...], "weights": [w, ...]?}.
/// Omitted weights default to 1. Duplicate edges, self-loops, out-of-range
/// indices or weights raise std::invalid_argument.
Graph graph_from_json(const std::string& text);

/// Parses plain-text edge lists: one "i j" or "i j w" per line, `#` starts
/// a comment, blank lines ignored. The node count is external (CLI flag).
Graph graph_from_edge_list(const std::string& text, int n);

std::string graph_to_json(const Graph& g);

}  // namespace orgsig
