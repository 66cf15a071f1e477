#pragma once

// Shared fixtures and independent brute-force oracles for the test suite.
// The oracles deliberately avoid the library's precomputed closures: they
// enumerate simple paths / subsets directly, so they can disagree with the
// implementation if either is wrong.

#include <algorithm>
#include <optional>
#include <vector>

#include "lot/lot.hpp"

namespace testing {

using lot::CausalGraphModel;
using lot::DiscreteMeasure;
using lot::EdgeKind;
using lot::EventId;
using lot::GraphEdge;
using lot::MinkowskiModel;
using lot::Rational;

inline GraphEdge timelike(EventId src, EventId dst, const Rational& w) {
  return {src, dst, w, EdgeKind::Timelike};
}
inline GraphEdge nulledge(EventId src, EventId dst) {
  return {src, dst, Rational(0), EdgeKind::Null};
}

/// Path enumeration over the raw edge list. Only valid on acyclic edge sets,
/// where simple paths exhaust all walks.
class DagPathOracle {
 public:
  DagPathOracle(std::size_t n, std::vector<GraphEdge> edges)
      : n_(n), edges_(std::move(edges)) {}

  bool reachable(EventId p, EventId q) const {
    if (p == q) return true;
    bool found = false;
    walk(p, q, Rational(0), false, [&](const Rational&, bool) { found = true; });
    return found;
  }

  bool chronological(EventId p, EventId q) const {
    bool found = false;
    walk(p, q, Rational(0), false, [&](const Rational&, bool timelike_seen) {
      if (timelike_seen) found = true;
    });
    return found;
  }

  /// Longest path weight, or nullopt when q is unreachable from p (p != q).
  std::optional<Rational> longest(EventId p, EventId q) const {
    if (p == q) return Rational(0);
    std::optional<Rational> best;
    walk(p, q, Rational(0), false, [&](const Rational& w, bool) {
      if (!best || w > *best) best = w;
    });
    return best;
  }

 private:
  template <typename Visit>
  void walk(EventId at, EventId target, Rational weight, bool timelike_seen,
            const Visit& visit) const {
    for (const GraphEdge& e : edges_) {
      if (e.src != at) continue;
      const bool t = timelike_seen || e.kind == EdgeKind::Timelike;
      const Rational w = weight + e.weight;
      if (e.dst == target) visit(w, t);
      walk(e.dst, target, w, t, visit);
    }
  }

  std::size_t n_;
  std::vector<GraphEdge> edges_;
};

/// a <= b <= c chain with both edge kinds exercised.
inline CausalGraphModel three_chain() {
  return CausalGraphModel(3, {timelike(0, 1, Rational(1)), timelike(1, 2, Rational(2))});
}

inline CausalGraphModel timelike_two_cycle() {
  return CausalGraphModel(2, {timelike(0, 1, Rational(1)), timelike(1, 0, Rational(1))});
}

inline CausalGraphModel null_two_cycle() {
  return CausalGraphModel(2, {nulledge(0, 1), nulledge(1, 0)});
}

/// 1+1 Minkowski cloud from (t, x) pairs.
inline MinkowskiModel plane(std::vector<std::vector<double>> coords) {
  return MinkowskiModel(1, std::move(coords));
}

inline DiscreteMeasure uniform_on(const std::vector<EventId>& ids) {
  std::vector<DiscreteMeasure::Atom> atoms;
  for (EventId id : ids) atoms.push_back({id, Rational(1, ids.size())});
  return DiscreteMeasure::from_atoms(std::move(atoms));
}

}  // namespace testing
