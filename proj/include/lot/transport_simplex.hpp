#pragma once

#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lot/rational.hpp"

namespace lot {

/// Primal simplex on the transportation polytope
///
///   maximize  sum c_a * x_a
///   s.t.      sum_j x_ij = supply_i,  sum_i x_ij = demand_j,  x >= 0
///
/// over an explicit arc list. The basis is a spanning forest of the bipartite
/// arc graph; entering and leaving choices follow Bland's rule (lowest arc
/// index), pricing is floating point with a 1e-9 threshold, and the basic
/// solution itself is carried in exact rationals, seeded from a caller-
/// provided feasible flow. Marginal equalities therefore hold exactly at
/// every iterate.
class TransportationSimplex {
 public:
  struct Problem {
    std::size_t source_count = 0;
    std::size_t sink_count = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;  // (source, sink)
    std::vector<double> cost;                                   // per arc, finite
    std::vector<Rational> initial_flow;                         // per arc, feasible
  };

  struct Solution {
    std::vector<Rational> flow;
    double objective = 0.0;
    int iterations = 0;
  };

  static Solution maximize(const Problem& problem) {
    TransportationSimplex s(problem);
    s.canonicalize_to_forest();
    s.extend_basis();
    s.iterate();
    Solution out;
    out.flow = std::move(s.flow_);
    out.objective = 0.0;
    for (std::size_t a = 0; a < out.flow.size(); ++a) {
      out.objective += problem.cost[a] * to_double(out.flow[a]);
    }
    out.iterations = s.iterations_;
    return out;
  }

 private:
  static constexpr double kPricingTolerance = 1e-9;
  static constexpr int kMaxIterations = 500000;
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  explicit TransportationSimplex(const Problem& p)
      : arcs_(p.arcs),
        cost_(p.cost),
        flow_(p.initial_flow),
        node_count_(p.source_count + p.sink_count),
        source_count_(p.source_count),
        in_basis_(p.arcs.size(), false) {}

  std::size_t source_node(std::size_t arc) const { return arcs_[arc].first; }
  std::size_t sink_node(std::size_t arc) const { return source_count_ + arcs_[arc].second; }
  std::size_t other_end(std::size_t arc, std::size_t node) const {
    return source_node(arc) == node ? sink_node(arc) : source_node(arc);
  }

  // Cancels cycles in the support of the initial flow until it is a forest.
  void canonicalize_to_forest() {
    while (true) {
      auto cycle = find_support_cycle();
      if (cycle.empty()) return;
      push_around_cycle(cycle, kNone);
    }
  }

  // Returns a cycle as a list of (arc, +1/-1 sign) starting anywhere, or
  // empty if the support is acyclic. Signs alternate along the walk.
  std::vector<std::pair<std::size_t, int>> find_support_cycle() const {
    std::vector<std::vector<std::size_t>> incident(node_count_);
    for (std::size_t a = 0; a < arcs_.size(); ++a) {
      if (flow_[a] > 0) {
        incident[source_node(a)].push_back(a);
        incident[sink_node(a)].push_back(a);
      }
    }
    std::vector<std::size_t> parent_arc(node_count_, kNone);
    std::vector<int> state(node_count_, 0);  // 0 new, 1 visited
    for (std::size_t root = 0; root < node_count_; ++root) {
      if (state[root] != 0) continue;
      std::vector<std::size_t> stack{root};
      state[root] = 1;
      while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t a : incident[v]) {
          if (a == parent_arc[v]) continue;
          const std::size_t w = other_end(a, v);
          if (state[w] == 0) {
            state[w] = 1;
            parent_arc[w] = a;
            stack.push_back(w);
          } else {
            return recover_cycle(a, v, w, parent_arc);
          }
        }
      }
    }
    return {};
  }

  std::vector<std::pair<std::size_t, int>> recover_cycle(
      std::size_t closing_arc, std::size_t v, std::size_t w,
      const std::vector<std::size_t>& parent_arc) const {
    auto path_to_root = [&](std::size_t node) {
      std::vector<std::size_t> arcs;
      while (parent_arc[node] != kNone) {
        arcs.push_back(parent_arc[node]);
        node = other_end(parent_arc[node], node);
      }
      return arcs;
    };
    std::vector<std::size_t> pv = path_to_root(v), pw = path_to_root(w);
    // Trim the shared tail up to the lowest common ancestor.
    while (!pv.empty() && !pw.empty() && pv.back() == pw.back()) {
      pv.pop_back();
      pw.pop_back();
    }
    // Walk w -> lca (via pw), then lca -> v (via reversed pv), closing with arc.
    std::vector<std::size_t> arcs_in_walk = pw;
    arcs_in_walk.insert(arcs_in_walk.end(), pv.rbegin(), pv.rend());
    arcs_in_walk.push_back(closing_arc);
    return sign_walk(arcs_in_walk, w);
  }

  // Assigns +1 to arcs traversed source->sink and -1 otherwise, walking the
  // node sequence implied by consecutive shared endpoints.
  std::vector<std::pair<std::size_t, int>> sign_walk(const std::vector<std::size_t>& walk,
                                                     std::size_t start_node) const {
    std::vector<std::pair<std::size_t, int>> signed_cycle;
    std::size_t at = start_node;
    for (std::size_t a : walk) {
      const int sign = source_node(a) == at ? +1 : -1;
      signed_cycle.push_back({a, sign});
      at = other_end(a, at);
    }
    return signed_cycle;
  }

  // theta = min flow over negative arcs; `entering` (if not kNone) joins the
  // basis and the Bland-minimal blocking arc leaves.
  void push_around_cycle(const std::vector<std::pair<std::size_t, int>>& cycle,
                         std::size_t entering) {
    Rational theta;
    std::size_t leaving = kNone;
    bool first = true;
    for (const auto& [a, sign] : cycle) {
      if (sign >= 0) continue;
      if (first || flow_[a] < theta || (flow_[a] == theta && a < leaving)) {
        theta = flow_[a];
        leaving = a;
        first = false;
      }
    }
    if (leaving == kNone) throw std::logic_error("transport simplex: cycle without reverse arc");
    for (const auto& [a, sign] : cycle) {
      if (sign > 0) {
        flow_[a] += theta;
      } else {
        flow_[a] -= theta;
      }
    }
    if (entering != kNone) {
      in_basis_[leaving] = false;
      in_basis_[entering] = true;
    }
  }

  // Augments the (acyclic) support to a spanning forest, lowest index first.
  void extend_basis() {
    std::vector<std::size_t> component(node_count_);
    for (std::size_t v = 0; v < node_count_; ++v) component[v] = v;
    auto find = [&](std::size_t v) {
      while (component[v] != v) v = component[v] = component[component[v]];
      return v;
    };
    auto unite = [&](std::size_t a, std::size_t b) { component[find(a)] = find(b); };

    for (std::size_t a = 0; a < arcs_.size(); ++a) {
      if (flow_[a] > 0) {
        in_basis_[a] = true;
        unite(source_node(a), sink_node(a));
      }
    }
    for (std::size_t a = 0; a < arcs_.size(); ++a) {
      if (in_basis_[a]) continue;
      if (find(source_node(a)) != find(sink_node(a))) {
        in_basis_[a] = true;
        unite(source_node(a), sink_node(a));
      }
    }
  }

  void compute_potentials(std::vector<double>& pot) const {
    std::vector<std::vector<std::size_t>> incident(node_count_);
    for (std::size_t a = 0; a < arcs_.size(); ++a) {
      if (in_basis_[a]) {
        incident[source_node(a)].push_back(a);
        incident[sink_node(a)].push_back(a);
      }
    }
    pot.assign(node_count_, 0.0);
    std::vector<bool> done(node_count_, false);
    for (std::size_t root = 0; root < node_count_; ++root) {
      if (done[root]) continue;
      done[root] = true;
      std::queue<std::size_t> frontier;
      frontier.push(root);
      while (!frontier.empty()) {
        const std::size_t v = frontier.front();
        frontier.pop();
        for (std::size_t a : incident[v]) {
          const std::size_t w = other_end(a, v);
          if (done[w]) continue;
          done[w] = true;
          pot[w] = cost_[a] - pot[v];
          frontier.push(w);
        }
      }
    }
  }

  // Basis path between two nodes of one tree, as a signed walk from `from`.
  std::vector<std::pair<std::size_t, int>> basis_path(std::size_t from, std::size_t to) const {
    std::vector<std::vector<std::size_t>> incident(node_count_);
    for (std::size_t a = 0; a < arcs_.size(); ++a) {
      if (in_basis_[a]) {
        incident[source_node(a)].push_back(a);
        incident[sink_node(a)].push_back(a);
      }
    }
    std::vector<std::size_t> parent_arc(node_count_, kNone);
    std::vector<bool> seen(node_count_, false);
    std::queue<std::size_t> frontier;
    seen[from] = true;
    frontier.push(from);
    while (!frontier.empty() && !seen[to]) {
      const std::size_t v = frontier.front();
      frontier.pop();
      for (std::size_t a : incident[v]) {
        const std::size_t w = other_end(a, v);
        if (!seen[w]) {
          seen[w] = true;
          parent_arc[w] = a;
          frontier.push(w);
        }
      }
    }
    if (!seen[to]) throw std::logic_error("transport simplex: disconnected basis tree");
    std::vector<std::size_t> walk;
    for (std::size_t v = to; v != from;) {
      walk.push_back(parent_arc[v]);
      v = other_end(parent_arc[v], v);
    }
    std::reverse(walk.begin(), walk.end());
    return sign_walk(walk, from);
  }

  void iterate() {
    std::vector<double> pot;
    for (iterations_ = 0; iterations_ < kMaxIterations; ++iterations_) {
      compute_potentials(pot);
      std::size_t entering = kNone;
      for (std::size_t a = 0; a < arcs_.size(); ++a) {
        if (in_basis_[a]) continue;
        const double reduced = cost_[a] - pot[source_node(a)] - pot[sink_node(a)];
        if (reduced > kPricingTolerance) {
          entering = a;
          break;  // Bland: lowest index
        }
      }
      if (entering == kNone) return;

      // Cycle: entering arc traversed source->sink, then back along the tree.
      std::vector<std::pair<std::size_t, int>> cycle{{entering, +1}};
      auto back = basis_path(sink_node(entering), source_node(entering));
      cycle.insert(cycle.end(), back.begin(), back.end());
      push_around_cycle(cycle, entering);
    }
    throw std::logic_error("transport simplex: iteration limit exceeded");
  }

  std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs_;
  std::vector<double> cost_;
  std::vector<Rational> flow_;
  std::size_t node_count_;
  std::size_t source_count_;
  std::vector<bool> in_basis_;
  int iterations_ = 0;
};

}  // namespace lot
