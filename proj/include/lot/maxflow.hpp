#pragma once

#include <limits>
#include <queue>
#include <vector>

#include "lot/rational.hpp"

namespace lot {

/// Edmonds-Karp max-flow with exact rational capacities. Termination is
/// bounded by O(V*E) augmentations independent of the capacity values, so
/// exact arithmetic is safe here.
class RationalMaxFlow {
 public:
  explicit RationalMaxFlow(std::size_t node_count) : adjacency_(node_count) {}

  /// Returns the index of the forward arc (its residual twin is index+1).
  std::size_t add_arc(std::size_t from, std::size_t to, Rational capacity) {
    const std::size_t id = arcs_.size();
    adjacency_[from].push_back(arcs_.size());
    arcs_.push_back({to, std::move(capacity), id + 1});
    adjacency_[to].push_back(arcs_.size());
    arcs_.push_back({from, Rational(0), id});
    return id;
  }

  Rational run(std::size_t source, std::size_t sink) {
    Rational total(0);
    while (true) {
      std::vector<std::size_t> parent_arc(adjacency_.size(), kNone);
      std::vector<bool> visited(adjacency_.size(), false);
      std::queue<std::size_t> frontier;
      visited[source] = true;
      frontier.push(source);
      while (!frontier.empty() && !visited[sink]) {
        const std::size_t v = frontier.front();
        frontier.pop();
        for (std::size_t ai : adjacency_[v]) {
          const Arc& a = arcs_[ai];
          if (!visited[a.to] && a.residual > 0) {
            visited[a.to] = true;
            parent_arc[a.to] = ai;
            frontier.push(a.to);
          }
        }
      }
      if (!visited[sink]) return total;

      Rational bottleneck = arcs_[parent_arc[sink]].residual;
      for (std::size_t v = sink; v != source;) {
        const Arc& a = arcs_[parent_arc[v]];
        if (a.residual < bottleneck) bottleneck = a.residual;
        v = arcs_[a.twin].to;
      }
      for (std::size_t v = sink; v != source;) {
        Arc& a = arcs_[parent_arc[v]];
        a.residual -= bottleneck;
        arcs_[a.twin].residual += bottleneck;
        v = arcs_[a.twin].to;
      }
      total += bottleneck;
    }
  }

  /// Flow currently on a forward arc (= residual accumulated on its twin).
  const Rational& flow_on(std::size_t arc_id) const { return arcs_[arc_id + 1].residual; }

  /// Nodes reachable from `start` in the residual graph; after run() the
  /// source side of a minimum cut when started at the source.
  std::vector<bool> residual_reachable(std::size_t start) const {
    std::vector<bool> visited(adjacency_.size(), false);
    std::queue<std::size_t> frontier;
    visited[start] = true;
    frontier.push(start);
    while (!frontier.empty()) {
      const std::size_t v = frontier.front();
      frontier.pop();
      for (std::size_t ai : adjacency_[v]) {
        const Arc& a = arcs_[ai];
        if (!visited[a.to] && a.residual > 0) {
          visited[a.to] = true;
          frontier.push(a.to);
        }
      }
    }
    return visited;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  struct Arc {
    std::size_t to;
    Rational residual;
    std::size_t twin;
  };

  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<Arc> arcs_;
};

}  // namespace lot
