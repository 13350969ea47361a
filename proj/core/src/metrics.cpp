#include "valnet/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace valnet {

namespace {

constexpr double kPinvResidualTol = 1e-8;

std::string short_num(double v) {
  char buf[40];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific, 3);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("?");
}

// connected components of the positive support of a symmetric weight matrix
std::vector<std::vector<int>> components_of(const Eigen::MatrixXd& w) {
  const int n = static_cast<int>(w.rows());
  std::vector<int> label(n, -1);
  std::vector<std::vector<int>> comps;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    const int id = static_cast<int>(comps.size());
    comps.emplace_back();
    stack.push_back(s);
    label[s] = id;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      comps[id].push_back(u);
      for (int v = 0; v < n; ++v) {
        if (label[v] < 0 && w(u, v) > 0.0) {
          label[v] = id;
          stack.push_back(v);
        }
      }
    }
    std::sort(comps[id].begin(), comps[id].end());
  }
  return comps;
}

struct ComponentCircuit {
  std::vector<int> nodes;                  // global indices, sorted
  Eigen::MatrixXd lplus;                   // pseudoinverse of the local Laplacian
  Eigen::MatrixXd resistance;              // pairwise effective resistances
  std::vector<std::pair<int, int>> edges;  // local index pairs with positive weight
};

// Pseudoinverse of a connected component's Laplacian via the rank-one trick:
// L+ = (L + J/m)^-1 - J/m, valid because the all-ones vector spans ker(L).
Eigen::MatrixXd component_lplus(const Eigen::MatrixXd& lap) {
  const auto m = lap.rows();
  if (m == 1) return Eigen::MatrixXd::Zero(1, 1);
  const double shift = 1.0 / static_cast<double>(m);
  Eigen::MatrixXd shifted = lap;
  shifted.array() += shift;
  Eigen::LDLT<Eigen::MatrixXd> solver(shifted);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("laplacian_pseudoinverse: factorization failed");
  }
  Eigen::MatrixXd lplus = solver.solve(Eigen::MatrixXd::Identity(m, m));
  lplus.array() -= shift;

  const double norm_l = lap.cwiseAbs().maxCoeff();
  const double residual = (lap * lplus * lap - lap).cwiseAbs().maxCoeff();
  if (!(residual <= kPinvResidualTol * std::max(norm_l, 1.0))) {
    const double dmax = shifted.diagonal().maxCoeff();
    const double dmin = shifted.diagonal().minCoeff();
    throw std::runtime_error(
        "laplacian_pseudoinverse: residual " + short_num(residual) +
        " exceeds tolerance (component size " + std::to_string(m) +
        ", diagonal range [" + short_num(dmin) + ", " + short_num(dmax) +
        "]); the weight matrix is too ill-conditioned for a dense solve");
  }
  return lplus;
}

std::vector<ComponentCircuit> solve_components(const Eigen::MatrixXd& w) {
  std::vector<ComponentCircuit> out;
  for (auto& nodes : components_of(w)) {
    ComponentCircuit cc;
    cc.nodes = std::move(nodes);
    const int m = static_cast<int>(cc.nodes.size());
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(m, m);
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b) {
        const double wij = w(cc.nodes[a], cc.nodes[b]);
        if (wij > 0.0) {
          lap(a, b) = -wij;
          lap(b, a) = -wij;
          lap(a, a) += wij;
          lap(b, b) += wij;
          cc.edges.emplace_back(a, b);
        }
      }
    }
    cc.lplus = component_lplus(lap);
    cc.resistance.resize(m, m);
    for (int a = 0; a < m; ++a) {
      cc.resistance(a, a) = 0.0;
      for (int b = a + 1; b < m; ++b) {
        const double r = cc.lplus(a, a) + cc.lplus(b, b) - 2.0 * cc.lplus(a, b);
        cc.resistance(a, b) = r;
        cc.resistance(b, a) = r;
      }
    }
    out.push_back(std::move(cc));
  }
  return out;
}

// Dijkstra from every source over an explicit adjacency with positive lengths.
Eigen::MatrixXd all_pairs_shortest(const Eigen::MatrixXd& w, bool reciprocal_lengths) {
  const int n = static_cast<int>(w.rows());
  const double inf = DistanceMatrix::kUnreachable;
  Eigen::MatrixXd dist = Eigen::MatrixXd::Constant(n, n, inf);

  std::vector<std::vector<std::pair<int, double>>> adj(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j != i && w(i, j) > 0.0) {
        adj[i].push_back({j, reciprocal_lengths ? 1.0 / w(i, j) : 1.0});
      }
    }
  }

  std::vector<double> d(n);
  std::vector<char> done(n);
  for (int s = 0; s < n; ++s) {
    std::fill(d.begin(), d.end(), inf);
    std::fill(done.begin(), done.end(), 0);
    d[s] = 0.0;
    for (int iter = 0; iter < n; ++iter) {
      int u = -1;
      double best = inf;
      for (int v = 0; v < n; ++v) {
        if (!done[v] && d[v] < best) {
          best = d[v];
          u = v;
        }
      }
      if (u < 0) break;
      done[u] = 1;
      for (const auto& [v, len] : adj[u]) {
        if (d[u] + len < d[v]) d[v] = d[u] + len;
      }
    }
    for (int v = 0; v < n; ++v) dist(s, v) = d[v];
    dist(s, s) = 0.0;
  }
  // the two directed runs of an undirected pair agree only to rounding
  // (path sums accumulate in opposite order); mirror for exact symmetry
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) dist(j, i) = dist(i, j);
  }
  return dist;
}

Eigen::MatrixXd conductances_of(const UndirectedBinaryGraph& g) {
  return g.edges().cast<double>();
}

ConductanceMatrix conductance_from_weights(const Eigen::MatrixXd& w) {
  const int n = static_cast<int>(w.rows());
  Eigen::MatrixXd cond = Eigen::MatrixXd::Zero(n, n);
  for (const auto& cc : solve_components(w)) {
    const int m = static_cast<int>(cc.nodes.size());
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b) {
        const double g = 1.0 / cc.resistance(a, b);
        cond(cc.nodes[a], cc.nodes[b]) = g;
        cond(cc.nodes[b], cc.nodes[a]) = g;
      }
    }
  }
  return ConductanceMatrix(std::move(cond));
}

// Shared implementation of the fixed-power betweenness accumulation.
std::vector<double> betweenness_from_weights(const Eigen::MatrixXd& w) {
  const int n = static_cast<int>(w.rows());
  std::vector<double> score(n, 0.0);
  std::vector<double> potential;
  for (const auto& cc : solve_components(w)) {
    const int m = static_cast<int>(cc.nodes.size());
    if (m < 2) continue;
    potential.resize(m);
    std::vector<double> throughput(m);
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b) {
        // unit-current potentials: v = L+ (e_a - e_b)
        for (int i = 0; i < m; ++i) potential[i] = cc.lplus(i, a) - cc.lplus(i, b);
        const double g_ab = 1.0 / cc.resistance(a, b);
        const double fixed_power_scale = std::sqrt(g_ab);  // 1 W across the pair
        std::fill(throughput.begin(), throughput.end(), 0.0);
        for (const auto& [i, j] : cc.edges) {
          const double wij = w(cc.nodes[i], cc.nodes[j]);
          const double current = std::abs(wij * (potential[i] - potential[j])) *
                                 fixed_power_scale;
          throughput[i] += current;
          throughput[j] += current;
        }
        const double prefactor = 1.0 / std::sqrt(g_ab);
        for (int i = 0; i < m; ++i) {
          if (i == a || i == b) continue;
          score[cc.nodes[i]] += prefactor * 0.5 * throughput[i];
        }
      }
    }
  }
  return score;
}

}  // namespace

DistanceMatrix::DistanceMatrix(Eigen::MatrixXd distances)
    : distances_(std::move(distances)) {
  if (distances_.rows() != distances_.cols()) {
    throw std::invalid_argument("DistanceMatrix: must be square");
  }
}

ConductanceMatrix::ConductanceMatrix(Eigen::MatrixXd conductances)
    : conductances_(std::move(conductances)) {
  if (conductances_.rows() != conductances_.cols()) {
    throw std::invalid_argument("ConductanceMatrix: must be square");
  }
}

DistanceMatrix geodesic_distances(const ValuedGraph& g) {
  return DistanceMatrix(all_pairs_shortest(g.weights(), /*reciprocal_lengths=*/true));
}

DistanceMatrix geodesic_distances(const UndirectedBinaryGraph& g) {
  return DistanceMatrix(
      all_pairs_shortest(g.edges().cast<double>(), /*reciprocal_lengths=*/false));
}

std::vector<double> harmonic_closeness(const DistanceMatrix& d) {
  const int n = d.size();
  std::vector<double> closeness(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      if (d.reachable(i, j)) sum += 1.0 / d(i, j);
      if (d.reachable(j, i)) sum += 1.0 / d(j, i);
    }
    closeness[i] = sum;
  }
  return closeness;
}

ConductanceMatrix effective_conductance(const ValuedGraph& g) {
  return conductance_from_weights(g.weights());
}

ConductanceMatrix effective_conductance(const UndirectedBinaryGraph& g) {
  return conductance_from_weights(conductances_of(g));
}

std::vector<double> ohmic_closeness(const ConductanceMatrix& g) {
  const int n = g.size();
  std::vector<double> closeness(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j != i) sum += g(i, j);
    }
    closeness[i] = sum;
  }
  return closeness;
}

std::vector<double> ohmic_betweenness_fp(const ValuedGraph& g) {
  return betweenness_from_weights(g.weights());
}

std::vector<double> ohmic_betweenness_fp(const UndirectedBinaryGraph& g) {
  return betweenness_from_weights(conductances_of(g));
}

DiameterResult geodesic_diameter(const DistanceMatrix& d) {
  const int n = d.size();
  DiameterResult result;
  bool any = false;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (d.reachable(i, j)) {
        result.value = std::max(result.value, d(i, j));
        any = true;
      } else {
        result.excluded_pairs = true;
      }
    }
  }
  if (!any) throw std::invalid_argument("geodesic_diameter: no reachable pair");
  return result;
}

DiameterResult ohmic_diameter(const ConductanceMatrix& g) {
  const int n = g.size();
  DiameterResult result;
  bool any = false;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (g.connected(i, j)) {
        result.value = std::max(result.value, 1.0 / g(i, j));
        any = true;
      } else {
        result.excluded_pairs = true;
      }
    }
  }
  if (!any) throw std::invalid_argument("ohmic_diameter: no connected pair");
  return result;
}

Eigen::MatrixXd laplacian_pseudoinverse(const Eigen::MatrixXd& weights) {
  if (weights.rows() != weights.cols()) {
    throw std::invalid_argument("laplacian_pseudoinverse: weights must be square");
  }
  const int n = static_cast<int>(weights.rows());
  Eigen::MatrixXd lplus = Eigen::MatrixXd::Zero(n, n);
  for (const auto& cc : solve_components(weights)) {
    const int m = static_cast<int>(cc.nodes.size());
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        lplus(cc.nodes[a], cc.nodes[b]) = cc.lplus(a, b);
      }
    }
  }
  return lplus;
}

}  // namespace valnet
