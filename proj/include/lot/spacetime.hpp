#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "lot/errors.hpp"
#include "lot/extended_real.hpp"
#include "lot/rational.hpp"

namespace lot {

using EventId = std::uint32_t;

enum class EdgeKind { Timelike, Null };

struct GraphEdge {
  EventId src = 0;
  EventId dst = 0;
  Rational weight;
  EdgeKind kind = EdgeKind::Null;
};

/// Finite causal-ladder rungs a finite model can occupy. Acyclic models
/// behave as causally simple (the relation is explicitly closed), so
/// everything above "causal" collapses onto it.
enum class CausalClass { NonChronological, NonCausalChronological, Causal };

inline std::string to_string(CausalClass c) {
  switch (c) {
    case CausalClass::NonChronological: return "non_chronological";
    case CausalClass::NonCausalChronological: return "non_causal_chronological";
    case CausalClass::Causal: return "causal";
  }
  return "?";
}

namespace detail {

inline void check_event_id(std::size_t n, EventId id, const char* who) {
  if (id >= n) {
    throw InputError(std::string(who) + ": event id " + std::to_string(id) +
                     " out of range (model has " + std::to_string(n) + " events)");
  }
}

}  // namespace detail

/// Point cloud in (1+d)-dimensional Minkowski space, closed-cone convention:
/// p precedes q iff dt >= |dx| and dt >= 0. Relation decisions compare exact
/// rational squares; only the distance value itself is floating point.
class MinkowskiModel {
 public:
  MinkowskiModel(int spatial_dim, std::vector<std::vector<double>> coords)
      : spatial_dim_(spatial_dim) {
    if (spatial_dim < 1) throw InputError("minkowski: spatial_dim must be >= 1");
    coords_.reserve(coords.size());
    exact_.reserve(coords.size());
    for (const auto& row : coords) {
      if (row.size() != static_cast<std::size_t>(1 + spatial_dim)) {
        throw InputError("minkowski: event needs " + std::to_string(1 + spatial_dim) +
                         " coordinates, got " + std::to_string(row.size()));
      }
      std::vector<Rational> exact_row;
      exact_row.reserve(row.size());
      for (double c : row) exact_row.push_back(rational_from_double(c));
      exact_.push_back(std::move(exact_row));
      coords_.push_back(row);
    }
  }

  std::size_t event_count() const { return coords_.size(); }
  int spatial_dim() const { return spatial_dim_; }
  const std::vector<double>& coords(EventId p) const {
    detail::check_event_id(event_count(), p, "minkowski");
    return coords_[p];
  }
  const std::vector<std::vector<double>>& all_coords() const { return coords_; }
  /// Coordinates as the exact rationals the relation decisions use.
  const std::vector<Rational>& exact_coords(EventId p) const {
    detail::check_event_id(event_count(), p, "minkowski");
    return exact_[p];
  }

  /// Exact squared interval dt^2 - |dx|^2 (sign carries the causal type).
  Rational interval_squared(EventId p, EventId q) const {
    check(p), check(q);
    const Rational dt = exact_[q][0] - exact_[p][0];
    Rational s2 = dt * dt;
    for (int i = 1; i <= spatial_dim_; ++i) {
      const Rational dx = exact_[q][i] - exact_[p][i];
      s2 -= dx * dx;
    }
    return s2;
  }

  bool causally_precedes(EventId p, EventId q) const {
    check(p), check(q);
    const Rational dt = exact_[q][0] - exact_[p][0];
    return dt >= 0 && interval_squared(p, q) >= 0;
  }

  bool chronologically_precedes(EventId p, EventId q) const {
    check(p), check(q);
    const Rational dt = exact_[q][0] - exact_[p][0];
    return dt > 0 && interval_squared(p, q) > 0;
  }

  bool horismos(EventId p, EventId q) const {
    return causally_precedes(p, q) && !chronologically_precedes(p, q);
  }

  ExtendedReal lorentz_distance(EventId p, EventId q) const {
    if (!causally_precedes(p, q)) return ExtendedReal(0.0);
    return ExtendedReal(std::sqrt(to_double(interval_squared(p, q))));
  }

  std::vector<EventId> future_of(std::span<const EventId> k) const {
    return cone_of(k, /*future=*/true);
  }
  std::vector<EventId> past_of(std::span<const EventId> k) const {
    return cone_of(k, /*future=*/false);
  }

  /// Distinct-coordinate clouds are causal (order-theoretically: causally
  /// simple); coincident events are mutually related and flag the instance
  /// non-causal. It stays chronological (the strict cone is irreflexive).
  CausalClass classification() const {
    return has_duplicate_coords() ? CausalClass::NonCausalChronological : CausalClass::Causal;
  }

  /// Order by time coordinate, ties broken by id. Valid because related
  /// distinct events have strictly increasing t under the closed cone.
  std::vector<std::uint32_t> topological_order() const {
    if (has_duplicate_coords()) {
      throw UnsupportedModelError("topological_order: coincident events are mutually related");
    }
    std::vector<EventId> ids(event_count());
    std::iota(ids.begin(), ids.end(), 0);
    std::stable_sort(ids.begin(), ids.end(), [&](EventId a, EventId b) {
      if (exact_[a][0] != exact_[b][0]) return exact_[a][0] < exact_[b][0];
      return a < b;
    });
    std::vector<std::uint32_t> position(event_count());
    for (std::uint32_t i = 0; i < ids.size(); ++i) position[ids[i]] = i;
    return position;
  }

  MinkowskiModel time_reversed() const {
    std::vector<std::vector<double>> flipped = coords_;
    for (auto& row : flipped) row[0] = -row[0];
    return MinkowskiModel(spatial_dim_, std::move(flipped));
  }

 private:
  void check(EventId p) const { detail::check_event_id(event_count(), p, "minkowski"); }

  std::vector<EventId> cone_of(std::span<const EventId> k, bool future) const {
    for (EventId p : k) check(p);
    std::vector<EventId> out;
    for (EventId q = 0; q < event_count(); ++q) {
      for (EventId p : k) {
        const bool related = future ? causally_precedes(p, q) : causally_precedes(q, p);
        if (related) {
          out.push_back(q);
          break;
        }
      }
    }
    return out;
  }

  bool has_duplicate_coords() const {
    std::map<std::vector<Rational>, int> seen;
    for (const auto& row : exact_) {
      if (++seen[row] > 1) return true;
    }
    return false;
  }

  int spatial_dim_;
  std::vector<std::vector<double>> coords_;
  std::vector<std::vector<Rational>> exact_;
};

/// Weighted causal graph on n events. The relation exposed by all queries is
/// the reflexive-transitive closure of the edge set; edge weights realize the
/// Lorentzian length functional (weight > 0 iff timelike, = 0 iff null).
/// All derived relations and exact distances are precomputed once; instances
/// are immutable afterwards.
class CausalGraphModel {
 public:
  CausalGraphModel(std::size_t n, std::vector<GraphEdge> edges)
      : n_(n), edges_(std::move(edges)) {
    for (const auto& e : edges_) {
      detail::check_event_id(n_, e.src, "graph edge");
      detail::check_event_id(n_, e.dst, "graph edge");
      if ((e.kind == EdgeKind::Timelike) != (e.weight > 0)) {
        throw InputError("graph edge " + std::to_string(e.src) + "->" + std::to_string(e.dst) +
                         ": weight must be > 0 iff kind is timelike");
      }
      if (e.weight < 0) throw InputError("graph edge weight must be nonnegative");
    }
    build();
  }

  std::size_t event_count() const { return n_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }

  bool causally_precedes(EventId p, EventId q) const {
    check(p), check(q);
    return reach_[p][q];
  }

  bool chronologically_precedes(EventId p, EventId q) const {
    check(p), check(q);
    return chron_[p][q];
  }

  bool horismos(EventId p, EventId q) const {
    return causally_precedes(p, q) && !chronologically_precedes(p, q);
  }

  ExtendedReal lorentz_distance(EventId p, EventId q) const {
    check(p), check(q);
    if (!reach_[p][q]) return ExtendedReal(0.0);
    if (inf_[p][q]) return ExtendedReal::infinity();
    return ExtendedReal(to_double(dist_[p][q]));
  }

  /// Exact graph distance; nullopt encodes +infinity. Unrelated pairs give 0.
  std::optional<Rational> lorentz_distance_exact(EventId p, EventId q) const {
    check(p), check(q);
    if (!reach_[p][q]) return Rational(0);
    if (inf_[p][q]) return std::nullopt;
    return dist_[p][q];
  }

  std::vector<EventId> future_of(std::span<const EventId> k) const {
    return cone_of(k, /*future=*/true);
  }
  std::vector<EventId> past_of(std::span<const EventId> k) const {
    return cone_of(k, /*future=*/false);
  }

  CausalClass classification() const { return class_; }

  /// Kahn's algorithm, lowest id first among simultaneously available events.
  std::vector<std::uint32_t> topological_order() const {
    if (class_ != CausalClass::Causal) {
      throw UnsupportedModelError("topological_order: model has a causal loop");
    }
    std::vector<std::uint32_t> indegree(n_, 0);
    std::vector<std::vector<EventId>> out(n_);
    for (const auto& e : edges_) {
      ++indegree[e.dst];
      out[e.src].push_back(e.dst);
    }
    std::priority_queue<EventId, std::vector<EventId>, std::greater<>> ready;
    for (EventId v = 0; v < n_; ++v) {
      if (indegree[v] == 0) ready.push(v);
    }
    std::vector<std::uint32_t> position(n_, 0);
    std::uint32_t next = 0;
    while (!ready.empty()) {
      const EventId v = ready.top();
      ready.pop();
      position[v] = next++;
      for (EventId w : out[v]) {
        if (--indegree[w] == 0) ready.push(w);
      }
    }
    return position;
  }

  CausalGraphModel time_reversed() const {
    std::vector<GraphEdge> transposed = edges_;
    for (auto& e : transposed) std::swap(e.src, e.dst);
    return CausalGraphModel(n_, std::move(transposed));
  }

 private:
  void check(EventId p) const { detail::check_event_id(n_, p, "graph"); }

  std::vector<EventId> cone_of(std::span<const EventId> k, bool future) const {
    for (EventId p : k) check(p);
    std::vector<EventId> out;
    for (EventId q = 0; q < n_; ++q) {
      for (EventId p : k) {
        const bool related = future ? reach_[p][q] : reach_[q][p];
        if (related) {
          out.push_back(q);
          break;
        }
      }
    }
    return out;
  }

  void build() {
    std::vector<std::vector<std::pair<EventId, std::size_t>>> adj(n_);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      adj[edges_[i].src].push_back({edges_[i].dst, i});
    }

    reach_.assign(n_, std::vector<bool>(n_, false));
    chron_.assign(n_, std::vector<bool>(n_, false));
    for (EventId s = 0; s < n_; ++s) {
      // Two-state BFS: (event, whether a timelike edge was traversed).
      std::vector<bool> seen0(n_, false), seen1(n_, false);
      std::queue<std::pair<EventId, bool>> frontier;
      seen0[s] = true;
      frontier.push({s, false});
      while (!frontier.empty()) {
        auto [v, timelike] = frontier.front();
        frontier.pop();
        for (auto [w, ei] : adj[v]) {
          const bool t = timelike || edges_[ei].kind == EdgeKind::Timelike;
          auto& seen = t ? seen1 : seen0;
          if (!seen[w]) {
            seen[w] = true;
            frontier.push({w, t});
          }
        }
      }
      for (EventId q = 0; q < n_; ++q) {
        reach_[s][q] = seen0[q] || seen1[q];
        chron_[s][q] = seen1[q];
      }
      reach_[s][s] = true;  // reflexive closure
    }

    classify();
    compute_distances();
  }

  void classify() {
    bool cycle = false, timelike_cycle = false;
    for (EventId p = 0; p < n_ && !timelike_cycle; ++p) {
      if (chron_[p][p]) timelike_cycle = true;
    }
    for (const auto& e : edges_) {
      if (e.src == e.dst || (reach_[e.dst][e.src])) {
        cycle = true;
        break;
      }
    }
    if (timelike_cycle) {
      class_ = CausalClass::NonChronological;
    } else if (cycle) {
      class_ = CausalClass::NonCausalChronological;
    } else {
      class_ = CausalClass::Causal;
    }
  }

  // Longest-path distances over the closure. d(p,q) = +inf exactly when some
  // event with a timelike loop lies on a p->q route; otherwise every strongly
  // connected component on the way is all-null (weight 0) and dynamic
  // programming over the condensation in topological order is exact.
  void compute_distances() {
    inf_.assign(n_, std::vector<bool>(n_, false));
    dist_.assign(n_, std::vector<Rational>(n_, Rational(0)));

    for (EventId r = 0; r < n_; ++r) {
      if (!chron_[r][r]) continue;
      for (EventId p = 0; p < n_; ++p) {
        if (!reach_[p][r]) continue;
        for (EventId q = 0; q < n_; ++q) {
          if (reach_[r][q]) inf_[p][q] = true;
        }
      }
    }

    // SCC ids via mutual reachability; condensation topo order by reach-set size.
    std::vector<int> scc(n_, -1);
    std::vector<EventId> rep;
    for (EventId v = 0; v < n_; ++v) {
      if (scc[v] >= 0) continue;
      const int id = static_cast<int>(rep.size());
      rep.push_back(v);
      for (EventId w = v; w < n_; ++w) {
        if (reach_[v][w] && reach_[w][v]) scc[w] = id;
      }
    }
    std::vector<std::size_t> reach_count(rep.size(), 0);
    for (std::size_t c = 0; c < rep.size(); ++c) {
      for (EventId q = 0; q < n_; ++q) {
        if (reach_[rep[c]][q]) ++reach_count[c];
      }
    }
    std::vector<int> order(rep.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (reach_count[a] != reach_count[b]) return reach_count[a] > reach_count[b];
      return a < b;
    });

    std::vector<std::vector<std::size_t>> edges_from_scc(rep.size());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if (scc[edges_[i].src] != scc[edges_[i].dst]) {
        edges_from_scc[scc[edges_[i].src]].push_back(i);
      }
    }

    std::vector<std::optional<Rational>> best(rep.size());
    for (EventId p = 0; p < n_; ++p) {
      std::fill(best.begin(), best.end(), std::nullopt);
      best[scc[p]] = Rational(0);
      for (int c : order) {
        if (!best[c]) continue;
        for (std::size_t ei : edges_from_scc[c]) {
          const auto& e = edges_[ei];
          const Rational candidate = *best[c] + e.weight;
          auto& slot = best[scc[e.dst]];
          if (!slot || candidate > *slot) slot = candidate;
        }
      }
      for (EventId q = 0; q < n_; ++q) {
        if (reach_[p][q] && !inf_[p][q]) dist_[p][q] = *best[scc[q]];
      }
    }
  }

  std::size_t n_;
  std::vector<GraphEdge> edges_;
  std::vector<std::vector<bool>> reach_;
  std::vector<std::vector<bool>> chron_;
  std::vector<std::vector<bool>> inf_;
  std::vector<std::vector<Rational>> dist_;
  CausalClass class_ = CausalClass::Causal;
};

/// What the generic decision and oracle code needs from a finite spacetime
/// model. Both concrete models satisfy it.
template <typename M>
concept CausalModel = requires(const M& m, EventId p, EventId q, std::span<const EventId> k) {
  { m.event_count() } -> std::convertible_to<std::size_t>;
  { m.causally_precedes(p, q) } -> std::same_as<bool>;
  { m.chronologically_precedes(p, q) } -> std::same_as<bool>;
  { m.horismos(p, q) } -> std::same_as<bool>;
  { m.lorentz_distance(p, q) } -> std::same_as<ExtendedReal>;
  { m.future_of(k) } -> std::same_as<std::vector<EventId>>;
  { m.past_of(k) } -> std::same_as<std::vector<EventId>>;
  { m.classification() } -> std::same_as<CausalClass>;
  { m.topological_order() } -> std::same_as<std::vector<std::uint32_t>>;
  { m.time_reversed() } -> std::same_as<M>;
};

static_assert(CausalModel<MinkowskiModel>);
static_assert(CausalModel<CausalGraphModel>);

}  // namespace lot
