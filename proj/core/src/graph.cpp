#include "valnet/graph.hpp"

#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace valnet {

namespace {

void check_square(const Eigen::MatrixXi& m, int n, const char* what) {
  if (m.rows() != n || m.cols() != n) {
    throw std::invalid_argument(std::string(what) + ": matrix must be " +
                                std::to_string(n) + "x" + std::to_string(n));
  }
}

}  // namespace

ValuedGraph::ValuedGraph(int n, Eigen::MatrixXd weights)
    : n_(n), weights_(std::move(weights)) {
  if (n < 0) throw std::invalid_argument("ValuedGraph: negative node count");
  if (weights_.rows() != n || weights_.cols() != n) {
    throw std::invalid_argument("ValuedGraph: weight matrix must be " +
                                std::to_string(n) + "x" + std::to_string(n));
  }
  for (int i = 0; i < n; ++i) {
    if (weights_(i, i) != 0.0) {
      throw std::invalid_argument("ValuedGraph: nonzero diagonal at node " +
                                  std::to_string(i));
    }
    for (int j = i + 1; j < n; ++j) {
      const double w = weights_(i, j);
      if (!(w >= 0.0)) {  // also rejects NaN
        throw std::invalid_argument("ValuedGraph: negative or NaN weight at (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
      }
      if (w != weights_(j, i)) {
        throw std::invalid_argument("ValuedGraph: asymmetric weights at (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
}

std::vector<WeightedEntry> ValuedGraph::upper_triangle_entries() const {
  std::vector<WeightedEntry> out;
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      if (weights_(i, j) != 0.0) out.push_back({i, j, weights_(i, j)});
    }
  }
  return out;
}

ValuedGraph build_valued_graph(int n, const std::vector<WeightedEntry>& entries) {
  if (n < 0) throw std::invalid_argument("build_valued_graph: negative node count");
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  std::set<std::pair<int, int>> seen;
  for (const auto& e : entries) {
    if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n) {
      throw std::out_of_range("build_valued_graph: node index out of range: (" +
                              std::to_string(e.i) + "," + std::to_string(e.j) + ")");
    }
    if (e.i == e.j) {
      throw std::invalid_argument("build_valued_graph: self-loop at node " +
                                  std::to_string(e.i));
    }
    if (!(e.weight >= 0.0)) {
      throw std::invalid_argument("build_valued_graph: negative or NaN weight at (" +
                                  std::to_string(e.i) + "," + std::to_string(e.j) + ")");
    }
    const auto key = std::minmax(e.i, e.j);
    if (!seen.insert(key).second) {
      throw std::invalid_argument("build_valued_graph: duplicate pair (" +
                                  std::to_string(key.first) + "," +
                                  std::to_string(key.second) + ")");
    }
    w(e.i, e.j) = e.weight;
    w(e.j, e.i) = e.weight;
  }
  return ValuedGraph(n, std::move(w));
}

DirectedBinaryGraph::DirectedBinaryGraph(int n, Eigen::MatrixXi arcs)
    : n_(n), arcs_(std::move(arcs)) {
  if (n < 0) throw std::invalid_argument("DirectedBinaryGraph: negative node count");
  check_square(arcs_, n, "DirectedBinaryGraph");
  for (int i = 0; i < n; ++i) {
    if (arcs_(i, i) != 0) {
      throw std::invalid_argument("DirectedBinaryGraph: self-loop at node " +
                                  std::to_string(i));
    }
    for (int j = 0; j < n; ++j) {
      if (arcs_(i, j) != 0 && arcs_(i, j) != 1) {
        throw std::invalid_argument("DirectedBinaryGraph: arc values must be 0 or 1");
      }
    }
  }
}

long DirectedBinaryGraph::arc_count() const { return arcs_.cast<long>().sum(); }

UndirectedBinaryGraph::UndirectedBinaryGraph(int n, Eigen::MatrixXi edges)
    : n_(n), edges_(std::move(edges)) {
  if (n < 0) throw std::invalid_argument("UndirectedBinaryGraph: negative node count");
  check_square(edges_, n, "UndirectedBinaryGraph");
  for (int i = 0; i < n; ++i) {
    if (edges_(i, i) != 0) {
      throw std::invalid_argument("UndirectedBinaryGraph: self-loop at node " +
                                  std::to_string(i));
    }
    for (int j = i + 1; j < n; ++j) {
      if (edges_(i, j) != edges_(j, i)) {
        throw std::invalid_argument("UndirectedBinaryGraph: asymmetric edges at (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
      }
      if (edges_(i, j) != 0 && edges_(i, j) != 1) {
        throw std::invalid_argument("UndirectedBinaryGraph: edge values must be 0 or 1");
      }
    }
  }
}

long UndirectedBinaryGraph::edge_count() const {
  return edges_.cast<long>().sum() / 2;
}

UndirectedBinaryGraph symmetrize_or(const DirectedBinaryGraph& g) {
  const int n = g.size();
  Eigen::MatrixXi edges = Eigen::MatrixXi::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int e = (g.arc(i, j) || g.arc(j, i)) ? 1 : 0;
      edges(i, j) = e;
      edges(j, i) = e;
    }
  }
  return UndirectedBinaryGraph(n, std::move(edges));
}

namespace {

void require_at_least_two(int n) {
  if (n < 2) {
    throw std::invalid_argument("graph_stats: need at least 2 nodes, got " +
                                std::to_string(n));
  }
}

}  // namespace

GraphStats graph_stats(const ValuedGraph& g) {
  const int n = g.size();
  require_at_least_two(n);
  GraphStats s;
  long ties = 0;
  long degree_sum = 0;
  for (int i = 0; i < n; ++i) {
    int deg = 0;
    for (int j = 0; j < n; ++j) {
      if (j != i && g.weight(i, j) > 0.0) ++deg;
    }
    if (deg == 0) ++s.isolates;
    degree_sum += deg;
    for (int j = i + 1; j < n; ++j) {
      if (g.weight(i, j) > 0.0) ++ties;
    }
  }
  s.density = static_cast<double>(ties) / (static_cast<double>(n) * (n - 1) / 2.0);
  s.mean_degree = static_cast<double>(degree_sum) / n;
  return s;
}

GraphStats graph_stats(const DirectedBinaryGraph& g) {
  const int n = g.size();
  require_at_least_two(n);
  GraphStats s;
  const long arcs = g.arc_count();
  s.density = static_cast<double>(arcs) / (static_cast<double>(n) * (n - 1));
  s.mean_degree = static_cast<double>(arcs) / n;
  for (int i = 0; i < n; ++i) {
    bool incident = false;
    for (int j = 0; j < n && !incident; ++j) {
      if (j != i && (g.arc(i, j) || g.arc(j, i))) incident = true;
    }
    if (!incident) ++s.isolates;
  }
  return s;
}

GraphStats graph_stats(const UndirectedBinaryGraph& g) {
  const int n = g.size();
  require_at_least_two(n);
  GraphStats s;
  const long edges = g.edge_count();
  s.density = static_cast<double>(edges) / (static_cast<double>(n) * (n - 1) / 2.0);
  s.mean_degree = 2.0 * static_cast<double>(edges) / n;
  for (int i = 0; i < n; ++i) {
    bool incident = false;
    for (int j = 0; j < n && !incident; ++j) {
      if (j != i && g.edge(i, j)) incident = true;
    }
    if (!incident) ++s.isolates;
  }
  return s;
}

}  // namespace valnet
