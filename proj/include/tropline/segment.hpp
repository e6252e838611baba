#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "tropline/exact.hpp"
#include "tropline/metric.hpp"
#include "tropline/tree.hpp"

namespace tropline {

enum class TurningPointClass { NoChange, SingleNNI, FourClade };

std::string_view to_string(TurningPointClass c);
/// NNI moves charged to a turning point: 0, 1, or 3.
int nni_weight(TurningPointClass c);

/// Internal vertices (x1 in the tree of u, x2 in the tree of v) that are the
/// least common ancestors of a leaf pair realizing the turning scalar.
struct Witness {
  VertexId first;
  VertexId second;
};

struct TurningPoint {
  ExactScalar lambda;
  ProjectivePoint point;  // normalize(u ⊕ (lambda ⊙ v))
  EquidistantTree tree;   // ultrametric_to_tree(point)
  /// Empty only for non-generic endpoint pairs whose turning tree falls
  /// outside the trichotomy.
  std::optional<TurningPointClass> cls;
  std::optional<Witness> witness;
};

/// Tropical line segment tconv(u, v) as its turning points, plus the topology
/// of each open classical piece between consecutive turning points.
struct TropicalSegment {
  UltraVector u;
  UltraVector v;
  EquidistantTree tree_u;
  EquidistantTree tree_v;
  bool generic_pair = false;
  std::vector<TurningPoint> points;  // lambda strictly increasing
  std::vector<Topology> pieces;      // pieces[i] lies between points[i] and points[i+1]
};

/// Sorted distinct values of u_k - v_k.
std::vector<ExactScalar> turning_scalars(const UltraVector& u, const UltraVector& v);

/// Point u ⊕ (lambda ⊙ v) of the segment.
UltraVector segment_point(const UltraVector& u, const UltraVector& v, const ExactScalar& lambda);

/// Computes every turning point, reconstructs and classifies its tree, and
/// records the topology at the midpoint of every classical piece. Throws
/// NotUltrametric on bad endpoints; TheoremViolation if a generic pair yields
/// a turning tree outside the trichotomy. Non-generic pairs are accepted and
/// flagged through generic_pair = false.
TropicalSegment tropical_segment(const UltraVector& u, const UltraVector& v);

/// {(lca(T1,i,j), lca(T2,i,j)) : i < j}, sorted.
std::vector<std::pair<VertexId, VertexId>> essential_pairs(const EquidistantTree& t1, const EquidistantTree& t2);

/// 2 (h1(x1) - h2(x2)).
ExactScalar lambda_from_heights(const EquidistantTree& t1, VertexId x1, const EquidistantTree& t2, VertexId x2);

/// Number of turning points for generic metrics, |essential_pairs|. Throws
/// NonGenericPair unless is_generic_pair(t1, t2).
int tropical_interchange_number(const EquidistantTree& t1, const EquidistantTree& t2);

/// Trichotomy by child counts: all binary -> NoChange, exactly one vertex with
/// three children -> SingleNNI, exactly one with four -> FourClade. Anything
/// else throws TheoremViolation.
TurningPointClass classify_turning_point(const EquidistantTree& w);
TurningPointClass classify_turning_point(const UltraVector& w);

/// Sum of nni_weight over the turning points. Throws NonGenericPair for
/// non-generic endpoints.
int tropical_nni_number(const TropicalSegment& segment);
int tropical_nni_number(const EquidistantTree& t1, const EquidistantTree& t2);
int tropical_nni_number(const UltraVector& u, const UltraVector& v);

/// Result of cross-checking a turning point's class against the topologies of
/// the neighbouring open pieces.
struct MoveCheck {
  std::size_t point = 0;
  TurningPointClass cls = TurningPointClass::NoChange;
  /// NNI distance between the adjacent piece topologies; -1 when not needed.
  int distance = -1;
  bool consistent = false;
};

/// NoChange: neighbouring pieces share a topology. SingleNNI: they are NNI
/// neighbours. FourClade: they are exactly three NNI moves apart (bounded
/// bidirectional search, plus full BFS when n is small enough). Endpoint
/// turning points must match the adjacent piece and be NoChange.
std::vector<MoveCheck> verify_moves(const TropicalSegment& segment);

/// G(u >= v): edge {i, j} iff u_ij >= v_ij, as an adjacency matrix on 1..n.
struct ComparisonGraph {
  int n = 0;
  std::vector<std::vector<bool>> adjacent;  // (n+1) x (n+1), index 0 unused

  [[nodiscard]] bool has_edge(int i, int j) const { return adjacent[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
};

ComparisonGraph comparison_graph(const UltraVector& u, const UltraVector& v);
/// Odd cycle in the subgraph induced by `vertices` (all of 1..n when empty).
bool has_odd_cycle(const ComparisonGraph& g, const std::vector<int>& vertices = {});

}  // namespace tropline
