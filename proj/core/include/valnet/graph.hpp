// Core graph representations shared by every other component. Networks are
// small (hundreds of nodes) and every downstream statistic is all-pairs, so
// storage is dense throughout. All three graph types are immutable after
// construction and safe to share across threads.
#pragma once

#include <Eigen/Dense>

#include <vector>

namespace valnet {

struct WeightedEntry {
  int i = 0;
  int j = 0;
  double weight = 0.0;
};

/// Undirected valued network: symmetric nonnegative tie strengths with a zero
/// diagonal. A zero weight means "no tie" and is indistinguishable from an
/// absent entry.
class ValuedGraph {
 public:
  /// Validates symmetry, nonnegativity and the zero diagonal; throws
  /// std::invalid_argument on violation.
  ValuedGraph(int n, Eigen::MatrixXd weights);

  int size() const { return n_; }
  double weight(int i, int j) const { return weights_(i, j); }
  const Eigen::MatrixXd& weights() const { return weights_; }

  /// Nonzero entries of the strict upper triangle, sorted by (i, j).
  std::vector<WeightedEntry> upper_triangle_entries() const;

 private:
  int n_;
  Eigen::MatrixXd weights_;
};

/// Builds a ValuedGraph from sparse unordered-pair entries. Each pair may be
/// listed at most once; both orientations are set. Unlisted pairs get weight
/// zero. Throws on self-loops, negative weights, out-of-range indices and
/// duplicate pairs.
ValuedGraph build_valued_graph(int n, const std::vector<WeightedEntry>& entries);

/// Directed 0/1 graph with a zero diagonal (output of outdegree censoring).
class DirectedBinaryGraph {
 public:
  DirectedBinaryGraph(int n, Eigen::MatrixXi arcs);

  int size() const { return n_; }
  bool arc(int i, int j) const { return arcs_(i, j) != 0; }
  const Eigen::MatrixXi& arcs() const { return arcs_; }
  long arc_count() const;

 private:
  int n_;
  Eigen::MatrixXi arcs_;
};

/// Undirected 0/1 graph: symmetric with a zero diagonal.
class UndirectedBinaryGraph {
 public:
  UndirectedBinaryGraph(int n, Eigen::MatrixXi edges);

  int size() const { return n_; }
  bool edge(int i, int j) const { return edges_(i, j) != 0; }
  const Eigen::MatrixXi& edges() const { return edges_; }
  long edge_count() const;

 private:
  int n_;
  Eigen::MatrixXi edges_;
};

/// OR-symmetrization: an edge exists iff either (or both) of the two arcs
/// does. Idempotent on already-symmetric arc matrices.
UndirectedBinaryGraph symmetrize_or(const DirectedBinaryGraph& g);

struct GraphStats {
  double density = 0.0;      // realized ties over possible ties
  double mean_degree = 0.0;  // mean outdegree for directed graphs
  int isolates = 0;          // nodes with no incident tie in either direction
};

/// Basic structural summary. Requires n >= 2.
GraphStats graph_stats(const ValuedGraph& g);
GraphStats graph_stats(const DirectedBinaryGraph& g);
GraphStats graph_stats(const UndirectedBinaryGraph& g);

}  // namespace valnet
