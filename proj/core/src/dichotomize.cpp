#include "valnet/dichotomize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "valnet/rng.hpp"

namespace valnet {

namespace {
constexpr std::uint64_t kTieBreakStream = 0x11;
}

UndirectedBinaryGraph threshold_graph(const ValuedGraph& g, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("threshold_graph: t must be >= 0");
  const int n = g.size();
  Eigen::MatrixXi edges = Eigen::MatrixXi::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (g.weight(i, j) > t) {
        edges(i, j) = 1;
        edges(j, i) = 1;
      }
    }
  }
  return UndirectedBinaryGraph(n, std::move(edges));
}

DirectedBinaryGraph censor_topk(const ValuedGraph& g, int k, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("censor_topk: k must be >= 1");
  const int n = g.size();
  Eigen::MatrixXi arcs = Eigen::MatrixXi::Zero(n, n);

  struct Candidate {
    double weight;
    std::uint64_t priority;  // random; orders equal weights
    int target;
  };
  std::vector<Candidate> row;
  row.reserve(n);
  for (int i = 0; i < n; ++i) {
    row.clear();
    Rng tie_rng(derive_seed(derive_seed(seed, kTieBreakStream), static_cast<std::uint64_t>(i)));
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const std::uint64_t priority = tie_rng.u64();  // drawn for every j to keep
                                                     // the stream independent of k
      const double w = g.weight(i, j);
      if (w > 0.0) row.push_back({w, priority, j});
    }
    std::sort(row.begin(), row.end(), [](const Candidate& a, const Candidate& b) {
      if (a.weight != b.weight) return a.weight > b.weight;
      return a.priority < b.priority;
    });
    const int keep = std::min<int>(k, static_cast<int>(row.size()));
    for (int r = 0; r < keep; ++r) arcs(i, row[r].target) = 1;
  }
  return DirectedBinaryGraph(n, std::move(arcs));
}

UndirectedBinaryGraph censor_then_symmetrize(const ValuedGraph& g, int k,
                                             std::uint64_t seed) {
  return symmetrize_or(censor_topk(g, k, seed));
}

std::vector<double> ladder(LadderKind kind, const ValuedGraph& g, int steps) {
  if (steps < 1) throw std::invalid_argument("ladder: steps must be >= 1");
  std::vector<double> params;

  if (kind == LadderKind::Outdegree) {
    const int top = std::min(steps, g.size() - 1);
    for (int k = 1; k <= top; ++k) params.push_back(static_cast<double>(k));
    return params;
  }

  std::vector<double> positive;
  for (const auto& e : g.upper_triangle_entries()) positive.push_back(e.weight);
  if (positive.empty()) {
    throw std::invalid_argument("ladder: threshold ladder needs positive ties");
  }
  std::sort(positive.begin(), positive.end());
  const auto m = static_cast<double>(positive.size());
  for (int s = 1; s <= steps; ++s) {
    const double q = static_cast<double>(s) / (steps + 1);
    // linear-interpolation quantile on the sorted positive weights
    const double h = q * (m - 1.0);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, positive.size() - 1);
    const double frac = h - std::floor(h);
    params.push_back(positive[lo] + frac * (positive[hi] - positive[lo]));
  }
  return params;
}

}  // namespace valnet
