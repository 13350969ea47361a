// Binary compression of valued graphs: global thresholding and per-node
// top-k outdegree censoring, plus ladder construction for parameter sweeps.
#pragma once

#include <cstdint>
#include <vector>

#include "valnet/graph.hpp"

namespace valnet {

/// Keeps ties strictly above t. Thresholding at 0 keeps exactly the positive
/// ties (explicit zero ties never survive). Requires t >= 0.
UndirectedBinaryGraph threshold_graph(const ValuedGraph& g, double t);

/// For each node, keeps arcs to its k strongest positive ties (all of them if
/// fewer than k exist). Zero ties are never selected. Equal values are ordered
/// by a seeded random permutation, so the result is seed-independent exactly
/// when the positive weights are distinct. Requires k >= 1.
DirectedBinaryGraph censor_topk(const ValuedGraph& g, int k, std::uint64_t seed);

/// censor_topk followed by OR-symmetrization.
UndirectedBinaryGraph censor_then_symmetrize(const ValuedGraph& g, int k,
                                             std::uint64_t seed);

enum class LadderKind { Outdegree, Threshold };

/// Sweep parameter ladder. Outdegree: k = 1..min(steps, n-1). Threshold:
/// `steps` cutpoints at equally spaced quantiles of the positive weight
/// distribution (probabilities s/(steps+1), linear interpolation); throws if
/// the graph has no positive ties. Requires steps >= 1.
std::vector<double> ladder(LadderKind kind, const ValuedGraph& g, int steps);

}  // namespace valnet
