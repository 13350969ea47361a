// Distance-based node statistics on valued or binary graphs.
//
// Geodesic measures use shortest-path lengths: unit lengths on binary graphs,
// reciprocal weights (1/w) on valued graphs so that stronger ties are closer.
// Ohmic measures treat ties as electrical conductors (binary edge = 1 S,
// valued edge = w S); the distance between two nodes is the effective
// resistance of the circuit between them, computed from the Moore-Penrose
// pseudoinverse of each connected component's weighted Laplacian.
#pragma once

#include <Eigen/Dense>

#include <limits>
#include <vector>

#include "valnet/graph.hpp"

namespace valnet {

/// All-pairs shortest-path lengths; +infinity marks unreachable pairs.
class DistanceMatrix {
 public:
  static constexpr double kUnreachable = std::numeric_limits<double>::infinity();

  explicit DistanceMatrix(Eigen::MatrixXd distances);

  int size() const { return static_cast<int>(distances_.rows()); }
  double operator()(int i, int j) const { return distances_(i, j); }
  bool reachable(int i, int j) const { return std::isfinite(distances_(i, j)); }
  const Eigen::MatrixXd& values() const { return distances_; }

 private:
  Eigen::MatrixXd distances_;
};

/// Pairwise effective conductances; zero marks pairs in different components
/// (and the diagonal, where self-conductance is undefined).
class ConductanceMatrix {
 public:
  explicit ConductanceMatrix(Eigen::MatrixXd conductances);

  int size() const { return static_cast<int>(conductances_.rows()); }
  double operator()(int i, int j) const { return conductances_(i, j); }
  bool connected(int i, int j) const { return conductances_(i, j) > 0.0; }
  const Eigen::MatrixXd& values() const { return conductances_; }

 private:
  Eigen::MatrixXd conductances_;
};

DistanceMatrix geodesic_distances(const ValuedGraph& g);
DistanceMatrix geodesic_distances(const UndirectedBinaryGraph& g);

/// Harmonic geodesic closeness: sum over other nodes of 1/d(i,j) + 1/d(j,i).
/// Unreachable pairs contribute zero, so nodes in separate components have
/// zero mutual closeness. On undirected graphs the two terms coincide.
std::vector<double> harmonic_closeness(const DistanceMatrix& d);

ConductanceMatrix effective_conductance(const ValuedGraph& g);
ConductanceMatrix effective_conductance(const UndirectedBinaryGraph& g);

/// Ohmic closeness: row sums of the effective-conductance matrix.
std::vector<double> ohmic_closeness(const ConductanceMatrix& g);

/// Fixed-power Ohmic betweenness (relative rank use only). For every
/// connected unordered pair {a, b}, a circuit delivering one watt across the
/// terminals is solved; a node's throughput is half the sum of the absolute
/// currents on its incident edges, endpoints excluded. Throughputs are
/// accumulated with a 1/sqrt(G_ab) prefactor per pair.
std::vector<double> ohmic_betweenness_fp(const ValuedGraph& g);
std::vector<double> ohmic_betweenness_fp(const UndirectedBinaryGraph& g);

struct DiameterResult {
  double value = 0.0;
  bool excluded_pairs = false;  // true when unreachable pairs were skipped
};

/// Largest geodesic distance over reachable pairs. Throws if no pair is
/// reachable (edgeless graph).
DiameterResult geodesic_diameter(const DistanceMatrix& d);

/// Largest Ohmic distance 1/G over connected pairs. Throws if no pair is
/// connected.
DiameterResult ohmic_diameter(const ConductanceMatrix& g);

/// Moore-Penrose pseudoinverse of the weighted graph Laplacian built from a
/// symmetric nonnegative weight matrix, computed independently per connected
/// component. Throws with condition diagnostics when the solve fails the
/// residual check ||L L+ L - L|| <= 1e-8 ||L||.
Eigen::MatrixXd laplacian_pseudoinverse(const Eigen::MatrixXd& weights);

}  // namespace valnet
