#include "orgsig/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "json.hpp"
#include "orgsig/rng.hpp"

namespace orgsig {

namespace {

void check_node_count(int n) {
  if (n < 1) throw std::invalid_argument("graph: node count must be at least 1");
}

void check_index(int i, int n, const char* what) {
  if (i < 0 || i >= n) {
    throw std::invalid_argument(std::string("graph: ") + what + " index " + std::to_string(i) +
                                " out of range [0, " + std::to_string(n) + ")");
  }
}

void check_weight(double w) {
  if (!(w >= 0.0 && w <= 1.0)) {
    throw std::invalid_argument("graph: weight " + std::to_string(w) + " outside [0, 1]");
  }
}

}  // namespace

Graph::Graph(int n) : n_(n) {
  check_node_count(n);
  w_.assign(static_cast<std::size_t>(n) * n, 0.0);
}

Graph::Graph(int n, std::vector<double> weights) : n_(n), w_(std::move(weights)) {
  check_node_count(n);
  if (w_.size() != static_cast<std::size_t>(n) * n) {
    throw std::invalid_argument("graph: weight matrix size does not match node count");
  }
  for (int i = 0; i < n_; ++i) {
    if (weight(i, i) != 0.0) throw std::invalid_argument("graph: nonzero diagonal entry");
    for (int j = i + 1; j < n_; ++j) {
      if (weight(i, j) != weight(j, i)) {
        throw std::invalid_argument("graph: weight matrix not symmetric");
      }
      check_weight(weight(i, j));
    }
  }
}

void Graph::set_edge(int i, int j, double w) {
  check_index(i, n_, "node");
  check_index(j, n_, "node");
  if (i == j) throw std::invalid_argument("graph: self-loops are not allowed");
  check_weight(w);
  w_[static_cast<std::size_t>(i) * n_ + j] = w;
  w_[static_cast<std::size_t>(j) * n_ + i] = w;
}

std::vector<Graph::Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (weight(i, j) > 0.0) out.push_back({i, j, weight(i, j)});
  return out;
}

Graph make_complete(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.set_edge(i, j, 1.0);
  return g;
}

Graph make_star(int n) {
  Graph g(n);
  for (int leaf = 1; leaf < n; ++leaf) g.set_edge(0, leaf, 1.0);
  return g;
}

Graph make_ring(int n) {
  if (n < 3) throw std::invalid_argument("make_ring: need at least 3 nodes");
  Graph g(n);
  for (int i = 0; i < n; ++i) g.set_edge(i, (i + 1) % n, 1.0);
  return g;
}

Graph make_path(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.set_edge(i, i + 1, 1.0);
  return g;
}

Graph make_complete_bipartite(int m, int m_bar) {
  if (m < 1 || m > m_bar) {
    throw std::invalid_argument("make_complete_bipartite: part sizes need 1 <= m <= m_bar");
  }
  Graph g(m + m_bar);
  for (int i = 0; i < m; ++i)
    for (int j = m; j < m + m_bar; ++j) g.set_edge(i, j, 1.0);
  return g;
}

Graph make_two_cliques(int m, int n) {
  if (m < 1 || m > n - m) {
    throw std::invalid_argument("make_two_cliques: first clique size must be in [1, n-m]");
  }
  Graph g(n);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) g.set_edge(i, j, 1.0);
  for (int i = m; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.set_edge(i, j, 1.0);
  return g;
}

Graph make_special(GraphFamily family, int n, int m) {
  check_node_count(n);
  switch (family) {
    case GraphFamily::complete:
      return make_complete(n);
    case GraphFamily::star:
      return make_star(n);
    case GraphFamily::ring:
      return make_ring(n);
    case GraphFamily::path:
      return make_path(n);
    case GraphFamily::complete_bipartite:
      return make_complete_bipartite(m, n - m);
    case GraphFamily::two_cliques:
      return make_two_cliques(m, n);
  }
  throw std::invalid_argument("make_special: unknown family");
}

Graph erdos_renyi(int n, double p, std::uint64_t seed) {
  check_node_count(n);
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("erdos_renyi: p must be in [0, 1]");
  }
  Xoshiro256pp rng(seed);
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.next_double() < p) g.set_edge(i, j, 1.0);
  return g;
}

Graph barabasi_albert(int n, int m_attach, std::uint64_t seed) {
  check_node_count(n);
  if (m_attach < 1 || m_attach > n - 2) {
    throw std::invalid_argument(
        "barabasi_albert: m_attach must be in [1, n-2] (seed clique has m_attach+1 nodes and at "
        "least one node must attach afterwards)");
  }
  Xoshiro256pp rng(seed);
  const int m0 = m_attach + 1;
  Graph g(n);
  std::vector<double> degree(n, 0.0);
  for (int i = 0; i < m0; ++i) {
    for (int j = i + 1; j < m0; ++j) {
      g.set_edge(i, j, 1.0);
      degree[i] += 1.0;
      degree[j] += 1.0;
    }
  }
  std::vector<double> weights(n, 0.0);
  for (int v = m0; v < n; ++v) {
    // Degrees are frozen at the start of v's step; chosen targets get weight
    // zero so the m_attach picks are distinct.
    std::copy(degree.begin(), degree.begin() + v, weights.begin());
    double total = std::accumulate(weights.begin(), weights.begin() + v, 0.0);
    for (int pick = 0; pick < m_attach; ++pick) {
      double u = rng.next_double() * total;
      int target = -1;
      for (int c = 0; c < v; ++c) {
        u -= weights[c];
        if (u < 0.0) {
          target = c;
          break;
        }
      }
      if (target < 0) {
        for (int c = v - 1; c >= 0; --c) {
          if (weights[c] > 0.0) {
            target = c;
            break;
          }
        }
      }
      g.set_edge(v, target, 1.0);
      total -= weights[target];
      weights[target] = 0.0;
    }
    for (int c = 0; c < v; ++c) degree[c] += g.weight(v, c);
    degree[v] = m_attach;
  }
  return g;
}

Graph complement(const Graph& g) {
  const int n = g.size();
  Graph c(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) c.set_edge(i, j, 1.0 - g.weight(i, j));
  return c;
}

bool is_connected(const Graph& g) {
  const int n = g.size();
  std::vector<char> seen(n, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < n; ++v) {
      if (!seen[v] && g.weight(u, v) > 0.0) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == n;
}

bool is_spanning_supergraph(const Graph& big, const Graph& small) {
  if (big.size() != small.size()) {
    throw std::invalid_argument("is_spanning_supergraph: node counts differ");
  }
  const int n = big.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (big.weight(i, j) < small.weight(i, j)) return false;
  return true;
}

DegreeSummary degree_summary(const Graph& g) {
  const int n = g.size();
  DegreeSummary s;
  s.degrees.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      s.degrees[i] += g.weight(i, j);
      if (j > i && g.weight(i, j) > 0.0) ++s.edge_count;
    }
  }
  s.d_max = *std::max_element(s.degrees.begin(), s.degrees.end());
  s.d_min = *std::min_element(s.degrees.begin(), s.degrees.end());
  return s;
}

namespace {

Graph graph_from_pairs(int n, const std::vector<std::pair<int, int>>& pairs,
                       const std::vector<double>& weights) {
  Graph g(n);
  std::vector<char> used(static_cast<std::size_t>(n) * n, 0);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const int i = pairs[k].first;
    const int j = pairs[k].second;
    check_index(i, n, "edge");
    check_index(j, n, "edge");
    if (i == j) {
      throw std::invalid_argument("graph: self-loop at node " + std::to_string(i));
    }
    const std::size_t key = static_cast<std::size_t>(std::min(i, j)) * n + std::max(i, j);
    if (used[key]) {
      throw std::invalid_argument("graph: duplicate edge (" + std::to_string(i) + ", " +
                                  std::to_string(j) + ")");
    }
    used[key] = 1;
    g.set_edge(i, j, weights[k]);
  }
  return g;
}

Graph graph_from_parsed_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("graph json: top level must be an object");
  if (!doc.contains("n") || !doc["n"].is_number_integer()) {
    throw std::invalid_argument("graph json: missing integer field \"n\"");
  }
  const int n = doc["n"].get<int>();
  check_node_count(n);
  std::vector<std::pair<int, int>> pairs;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) throw std::invalid_argument("graph json: \"edges\" must be an array");
    for (const auto& e : doc["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
        throw std::invalid_argument("graph json: each edge must be a pair of integers");
      }
      pairs.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
  }
  std::vector<double> weights(pairs.size(), 1.0);
  if (doc.contains("weights")) {
    if (!doc["weights"].is_array() || doc["weights"].size() != pairs.size()) {
      throw std::invalid_argument("graph json: \"weights\" must match \"edges\" in length");
    }
    for (std::size_t k = 0; k < weights.size(); ++k) {
      if (!doc["weights"][k].is_number()) {
        throw std::invalid_argument("graph json: weights must be numbers");
      }
      weights[k] = doc["weights"][k].get<double>();
    }
  }
  return graph_from_pairs(n, pairs, weights);
}

}  // namespace

Graph graph_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("graph json: malformed input: ") + e.what());
  }
  return graph_from_parsed_json(doc);
}

Graph graph_from_edge_list(const std::string& text, int n) {
  check_node_count(n);
  std::vector<std::pair<int, int>> pairs;
  std::vector<double> weights;
  std::istringstream lines(text);
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    std::istringstream fields(line);
    long long i = 0;
    long long j = 0;
    if (!(fields >> i)) {
      throw std::invalid_argument("edge list: line " + std::to_string(line_no) +
                                  ": expected \"i j\" or \"i j w\"");
    }
    if (!(fields >> j)) {
      throw std::invalid_argument("edge list: line " + std::to_string(line_no) +
                                  ": expected \"i j\" or \"i j w\"");
    }
    double w = 1.0;
    std::string tok;
    if (fields >> tok) {
      std::size_t consumed = 0;
      try {
        w = std::stod(tok, &consumed);
      } catch (const std::exception&) {
        consumed = 0;
      }
      if (consumed != tok.size()) {
        throw std::invalid_argument("edge list: line " + std::to_string(line_no) +
                                    ": bad weight \"" + tok + "\"");
      }
      std::string trailing;
      if (fields >> trailing) {
        throw std::invalid_argument("edge list: line " + std::to_string(line_no) +
                                    ": unexpected trailing field \"" + trailing + "\"");
      }
    }
    pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
    weights.push_back(w);
  }
  return graph_from_pairs(n, pairs, weights);
}

std::string graph_to_json(const Graph& g) {
  nlohmann::json doc;
  doc["n"] = g.size();
  auto edges = nlohmann::json::array();
  auto weights = nlohmann::json::array();
  bool all_unit = true;
  for (const auto& e : g.edges()) {
    edges.push_back({e.i, e.j});
    weights.push_back(e.w);
    if (e.w != 1.0) all_unit = false;
  }
  doc["edges"] = edges;
  if (!all_unit) doc["weights"] = weights;
  return doc.dump(2);
}

}  // namespace orgsig
