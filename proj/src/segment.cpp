#include "tropline/segment.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <string>

#include "tropline/errors.hpp"
#include "tropline/nni.hpp"

namespace tropline {

std::string_view to_string(TurningPointClass c) {
  switch (c) {
    case TurningPointClass::NoChange:
      return "NoChange";
    case TurningPointClass::SingleNNI:
      return "SingleNNI";
    case TurningPointClass::FourClade:
      return "FourClade";
  }
  return "?";
}

int nni_weight(TurningPointClass c) {
  switch (c) {
    case TurningPointClass::NoChange:
      return 0;
    case TurningPointClass::SingleNNI:
      return 1;
    case TurningPointClass::FourClade:
      return 3;
  }
  return 0;
}

namespace {

void require_same_n(const UltraVector& u, const UltraVector& v) {
  if (u.n() != v.n()) throw DimensionMismatch("endpoints on different leaf counts");
}

// Distinct values of u - v in ascending order, each with the first pair
// position that realizes it.
std::vector<std::pair<ExactScalar, std::size_t>> grouped_scalars(const UltraVector& u, const UltraVector& v) {
  require_same_n(u, v);
  std::vector<ExactScalar> diff;
  diff.reserve(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) diff.push_back(u[k] - v[k]);
  std::vector<std::size_t> order(diff.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&diff](std::size_t a, std::size_t b) {
    const auto c = diff[a] <=> diff[b];
    return c != 0 ? c < 0 : a < b;
  });
  std::vector<std::pair<ExactScalar, std::size_t>> out;
  for (std::size_t k : order) {
    if (out.empty() || out.back().first != diff[k]) out.emplace_back(diff[k], k);
  }
  return out;
}

std::optional<TurningPointClass> try_classify(const EquidistantTree& w) {
  try {
    return classify_turning_point(w);
  } catch (const TheoremViolation&) {
    return std::nullopt;
  }
}

EquidistantTree turning_tree(const UltraVector& w) {
  try {
    return ultrametric_to_tree(w);
  } catch (const NotUltrametric&) {
    throw TheoremViolation("point on the tropical segment is not an ultrametric");
  }
}

}  // namespace

std::vector<ExactScalar> turning_scalars(const UltraVector& u, const UltraVector& v) {
  std::vector<ExactScalar> out;
  for (auto& [lambda, k] : grouped_scalars(u, v)) out.push_back(std::move(lambda));
  return out;
}

UltraVector segment_point(const UltraVector& u, const UltraVector& v, const ExactScalar& lambda) {
  return trop_combine(u, lambda, v);
}

TropicalSegment tropical_segment(const UltraVector& u, const UltraVector& v) {
  require_same_n(u, v);
  TropicalSegment seg{u, v, ultrametric_to_tree(u), ultrametric_to_tree(v), false, {}, {}};
  seg.generic_pair = is_generic_pair(seg.tree_u, seg.tree_v);
  const int n = u.n();

  const auto scalars = grouped_scalars(u, v);
  seg.points.reserve(scalars.size());
  for (const auto& [lambda, k] : scalars) {
    ProjectivePoint point = normalize_projective(trop_combine(u, lambda, v));
    EquidistantTree tree = turning_tree(point.rep());
    std::optional<TurningPointClass> cls =
        seg.generic_pair ? std::optional(classify_turning_point(tree)) : try_classify(tree);
    const PairIndex p = PairIndex::at(k, n);
    Witness witness{seg.tree_u.lca(p.i, p.j), seg.tree_v.lca(p.i, p.j)};
    seg.points.push_back({lambda, std::move(point), std::move(tree), cls, witness});
  }

  const ExactScalar half(1, 2);
  for (std::size_t i = 0; i + 1 < seg.points.size(); ++i) {
    const ExactScalar mid = (seg.points[i].lambda + seg.points[i + 1].lambda) * half;
    seg.pieces.push_back(topology_of(turning_tree(trop_combine(u, mid, v))));
  }
  return seg;
}

std::vector<std::pair<VertexId, VertexId>> essential_pairs(const EquidistantTree& t1, const EquidistantTree& t2) {
  if (t1.leaf_count() != t2.leaf_count()) throw DimensionMismatch("trees on different leaf counts");
  const int n = t1.leaf_count();
  std::vector<std::pair<VertexId, VertexId>> out;
  out.reserve(pair_count(n));
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) out.emplace_back(t1.lca(i, j), t2.lca(i, j));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ExactScalar lambda_from_heights(const EquidistantTree& t1, VertexId x1, const EquidistantTree& t2, VertexId x2) {
  if (t1.is_leaf(x1) || t2.is_leaf(x2)) throw std::invalid_argument("lambda_from_heights needs internal vertices");
  const ExactScalar d = t1.height(x1) - t2.height(x2);
  return d + d;
}

int tropical_interchange_number(const EquidistantTree& t1, const EquidistantTree& t2) {
  if (!is_generic_pair(t1, t2)) throw NonGenericPair("tropical interchange number needs a generic pair");
  const auto pairs = essential_pairs(t1, t2);
  const auto scalars = turning_scalars(tree_to_ultrametric(t1), tree_to_ultrametric(t2));
  if (pairs.size() != scalars.size()) {
    throw TheoremViolation("generic pair with " + std::to_string(scalars.size()) + " turning points but " +
                           std::to_string(pairs.size()) + " essential pairs");
  }
  return static_cast<int>(pairs.size());
}

TurningPointClass classify_turning_point(const EquidistantTree& w) {
  int three = 0;
  int four = 0;
  for (VertexId x : w.internal_vertices()) {
    const std::size_t k = w.children(x).size();
    if (k == 3) {
      ++three;
    } else if (k == 4) {
      ++four;
    } else if (k >= 5) {
      throw TheoremViolation("turning-point tree has a vertex with " + std::to_string(k) + " children");
    }
  }
  if (three + four >= 2) {
    throw TheoremViolation("turning-point tree has " + std::to_string(three + four) +
                           " vertices with three or more children");
  }
  if (three == 1) return TurningPointClass::SingleNNI;
  if (four == 1) return TurningPointClass::FourClade;
  return TurningPointClass::NoChange;
}

TurningPointClass classify_turning_point(const UltraVector& w) { return classify_turning_point(ultrametric_to_tree(w)); }

int tropical_nni_number(const TropicalSegment& segment) {
  if (!segment.generic_pair) throw NonGenericPair("tropical NNI number needs a generic pair");
  int total = 0;
  for (const auto& p : segment.points) total += nni_weight(*p.cls);
  return total;
}

int tropical_nni_number(const EquidistantTree& t1, const EquidistantTree& t2) {
  if (!is_generic_pair(t1, t2)) throw NonGenericPair("tropical NNI number needs a generic pair");
  return tropical_nni_number(tropical_segment(tree_to_ultrametric(t1), tree_to_ultrametric(t2)));
}

int tropical_nni_number(const UltraVector& u, const UltraVector& v) {
  return tropical_nni_number(tropical_segment(u, v));
}

std::vector<MoveCheck> verify_moves(const TropicalSegment& segment) {
  std::vector<MoveCheck> out;
  const std::size_t count = segment.points.size();
  for (std::size_t i = 0; i < count; ++i) {
    const TurningPoint& p = segment.points[i];
    MoveCheck check;
    check.point = i;
    if (!p.cls) {
      out.push_back(check);
      continue;
    }
    check.cls = *p.cls;
    if (i == 0 || i + 1 == count) {
      const Topology here = topology_of(p.tree);
      bool ok = check.cls == TurningPointClass::NoChange;
      if (i == 0 && !segment.pieces.empty()) ok = ok && segment.pieces.front() == here;
      if (i + 1 == count && !segment.pieces.empty()) ok = ok && segment.pieces.back() == here;
      check.distance = 0;
      check.consistent = ok;
      out.push_back(check);
      continue;
    }
    const Topology& before = segment.pieces[i - 1];
    const Topology& after = segment.pieces[i];
    if (!before.is_binary() || !after.is_binary()) {
      out.push_back(check);
      continue;
    }
    switch (check.cls) {
      case TurningPointClass::NoChange:
        check.distance = before == after ? 0 : -1;
        check.consistent = before == after && before == topology_of(p.tree);
        break;
      case TurningPointClass::SingleNNI:
        check.consistent = nni_adjacent(before, after);
        check.distance = check.consistent ? 1 : -1;
        break;
      case TurningPointClass::FourClade: {
        const auto d = nni_distance_bounded(before, after, 3);
        check.distance = d.value_or(-1);
        check.consistent = d == 3;
        if (check.consistent && before.n() <= kMaxExactNniLeaves) {
          check.consistent = nni_distance_exact(before, after) == 3;
        }
        break;
      }
    }
    out.push_back(check);
  }
  return out;
}

ComparisonGraph comparison_graph(const UltraVector& u, const UltraVector& v) {
  require_same_n(u, v);
  const int n = u.n();
  ComparisonGraph g;
  g.n = n;
  g.adjacent.assign(static_cast<std::size_t>(n + 1), std::vector<bool>(static_cast<std::size_t>(n + 1), false));
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const std::size_t k = pair_position(i, j, n);
      if (!(u[k] < v[k])) {
        g.adjacent[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
        g.adjacent[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = true;
      }
    }
  }
  return g;
}

bool has_odd_cycle(const ComparisonGraph& g, const std::vector<int>& vertices) {
  std::vector<int> vs = vertices;
  if (vs.empty()) {
    vs.resize(static_cast<std::size_t>(g.n));
    std::iota(vs.begin(), vs.end(), 1);
  }
  std::vector<bool> member(static_cast<std::size_t>(g.n + 1), false);
  for (int v : vs) member[static_cast<std::size_t>(v)] = true;
  std::vector<int> color(static_cast<std::size_t>(g.n + 1), -1);
  for (int start : vs) {
    if (color[static_cast<std::size_t>(start)] >= 0) continue;
    color[static_cast<std::size_t>(start)] = 0;
    std::deque<int> queue{start};
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      for (int y : vs) {
        if (y == x || !g.has_edge(x, y) || !member[static_cast<std::size_t>(y)]) continue;
        if (color[static_cast<std::size_t>(y)] < 0) {
          color[static_cast<std::size_t>(y)] = 1 - color[static_cast<std::size_t>(x)];
          queue.push_back(y);
        } else if (color[static_cast<std::size_t>(y)] == color[static_cast<std::size_t>(x)]) {
          return true;
        }
      }
    }
  }
  return false;
}

}  // namespace tropline
