#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "lot/errors.hpp"
#include "lot/rational.hpp"
#include "lot/spacetime.hpp"

namespace lot {

/// Finitely supported probability measure with exact rational weights.
/// Atoms are kept sorted by event id, weights strictly positive, total mass
/// exactly 1; zero-weight atoms are pruned on construction.
class DiscreteMeasure {
 public:
  using Atom = std::pair<EventId, Rational>;

  DiscreteMeasure() = default;

  /// Accumulating constructor: repeated ids are summed, zeros pruned,
  /// then the exact normalization invariant is enforced.
  static DiscreteMeasure from_atoms(std::vector<Atom> atoms) {
    std::map<EventId, Rational> acc;
    for (auto& [id, w] : atoms) {
      if (w < 0) throw InputError("measure: negative weight on event " + std::to_string(id));
      acc[id] += w;
    }
    DiscreteMeasure mu;
    Rational total(0);
    for (auto& [id, w] : acc) {
      if (w == 0) continue;
      total += w;
      mu.atoms_.push_back({id, std::move(w)});
    }
    if (total != 1) {
      throw InputError("measure: weights sum to " + to_fraction_string(total) + ", expected 1");
    }
    return mu;
  }

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t support_size() const { return atoms_.size(); }

  std::vector<EventId> support() const {
    std::vector<EventId> ids;
    ids.reserve(atoms_.size());
    for (const auto& [id, w] : atoms_) ids.push_back(id);
    return ids;
  }

  Rational mass(EventId id) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), id,
                               [](const Atom& a, EventId v) { return a.first < v; });
    if (it != atoms_.end() && it->first == id) return it->second;
    return Rational(0);
  }

  /// mu(S) for a set of event ids (duplicates in the span are ignored).
  Rational mass_of(std::span<const EventId> set) const {
    std::vector<EventId> ids(set.begin(), set.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    Rational total(0);
    for (EventId id : ids) total += mass(id);
    return total;
  }

  bool operator==(const DiscreteMeasure&) const = default;

 private:
  std::vector<Atom> atoms_;
};

/// Joint measure on pairs of events: a sparse nonnegative matrix over
/// supp(mu) x supp(nu) with entries summing to 1. Row sums give the first
/// marginal, column sums the second.
class Coupling {
 public:
  using Entry = std::tuple<EventId, EventId, Rational>;

  Coupling() = default;

  static Coupling from_entries(std::vector<Entry> entries) {
    std::map<std::pair<EventId, EventId>, Rational> acc;
    for (auto& [p, q, w] : entries) {
      if (w < 0) {
        throw InputError("coupling: negative weight on (" + std::to_string(p) + "," +
                         std::to_string(q) + ")");
      }
      acc[{p, q}] += w;
    }
    Coupling omega;
    Rational total(0);
    for (auto& [pq, w] : acc) {
      if (w == 0) continue;
      total += w;
      omega.entries_.push_back({pq.first, pq.second, std::move(w)});
    }
    if (total != 1) {
      throw InputError("coupling: entries sum to " + to_fraction_string(total) + ", expected 1");
    }
    return omega;
  }

  const std::vector<Entry>& entries() const { return entries_; }

  DiscreteMeasure first_marginal() const {
    std::vector<DiscreteMeasure::Atom> atoms;
    for (const auto& [p, q, w] : entries_) atoms.push_back({p, w});
    return DiscreteMeasure::from_atoms(std::move(atoms));
  }

  DiscreteMeasure second_marginal() const {
    std::vector<DiscreteMeasure::Atom> atoms;
    for (const auto& [p, q, w] : entries_) atoms.push_back({q, w});
    return DiscreteMeasure::from_atoms(std::move(atoms));
  }

  Rational mass(EventId p, EventId q) const {
    for (const auto& [a, b, w] : entries_) {
      if (a == p && b == q) return w;
    }
    return Rational(0);
  }

  bool operator==(const Coupling&) const = default;

 private:
  std::vector<Entry> entries_;
};

/// Measure on event triples, produced by gluing two couplings.
class TripleMeasure {
 public:
  using Entry = std::tuple<EventId, EventId, EventId, Rational>;

  static TripleMeasure from_entries(std::vector<Entry> entries) {
    std::map<std::tuple<EventId, EventId, EventId>, Rational> acc;
    for (auto& [p, q, r, w] : entries) acc[{p, q, r}] += w;
    TripleMeasure m;
    for (auto& [pqr, w] : acc) {
      if (w == 0) continue;
      m.entries_.push_back({std::get<0>(pqr), std::get<1>(pqr), std::get<2>(pqr), std::move(w)});
    }
    return m;
  }

  const std::vector<Entry>& entries() const { return entries_; }

  Coupling project_12() const { return project<0, 1>(); }
  Coupling project_23() const { return project<1, 2>(); }
  Coupling project_13() const { return project<0, 2>(); }

 private:
  template <std::size_t A, std::size_t B>
  Coupling project() const {
    std::vector<Coupling::Entry> out;
    for (const auto& e : entries_) {
      out.push_back({std::get<A>(e), std::get<B>(e), std::get<3>(e)});
    }
    return Coupling::from_entries(std::move(out));
  }

  std::vector<Entry> entries_;
};

inline DiscreteMeasure dirac(EventId p) {
  return DiscreteMeasure::from_atoms({{p, Rational(1)}});
}

/// f_* mu: weights of atoms with equal image are summed; f must be defined on
/// every atom of the support.
inline DiscreteMeasure pushforward(const std::map<EventId, EventId>& f, const DiscreteMeasure& mu) {
  std::vector<DiscreteMeasure::Atom> atoms;
  for (const auto& [id, w] : mu.atoms()) {
    auto it = f.find(id);
    if (it == f.end()) {
      throw InputError("pushforward: map undefined on atom " + std::to_string(id));
    }
    atoms.push_back({it->second, w});
  }
  return DiscreteMeasure::from_atoms(std::move(atoms));
}

template <typename F>
  requires std::is_invocable_r_v<EventId, F, EventId>
DiscreteMeasure pushforward(F&& f, const DiscreteMeasure& mu) {
  std::vector<DiscreteMeasure::Atom> atoms;
  for (const auto& [id, w] : mu.atoms()) atoms.push_back({f(id), w});
  return DiscreteMeasure::from_atoms(std::move(atoms));
}

/// Product measure: entry (p,q) = mu(p) * nu(q).
inline Coupling product(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  std::vector<Coupling::Entry> entries;
  for (const auto& [p, wp] : mu.atoms()) {
    for (const auto& [q, wq] : nu.atoms()) entries.push_back({p, q, wp * wq});
  }
  return Coupling::from_entries(std::move(entries));
}

inline std::pair<DiscreteMeasure, DiscreteMeasure> marginals(const Coupling& omega) {
  return {omega.first_marginal(), omega.second_marginal()};
}

/// Pushforward of mu along the diagonal map p -> (p,p); the canonical causal
/// coupling of mu with itself.
inline Coupling diagonal(const DiscreteMeasure& mu) {
  std::vector<Coupling::Entry> entries;
  for (const auto& [p, w] : mu.atoms()) entries.push_back({p, p, w});
  return Coupling::from_entries(std::move(entries));
}

struct GlueResult {
  TripleMeasure triple;
  Coupling omega13;
};

/// Conditional-product gluing of two couplings sharing their middle marginal:
/// omega123(p,q,r) = omega12(p,q) * omega23(q,r) / m(q). Projections onto the
/// first/last two factors reproduce the inputs exactly.
inline GlueResult glue(const Coupling& omega12, const Coupling& omega23) {
  const DiscreteMeasure middle = omega12.second_marginal();
  const DiscreteMeasure middle2 = omega23.first_marginal();
  if (middle != middle2) {
    for (const auto& [id, w] : middle.atoms()) {
      if (middle2.mass(id) != w) {
        throw InputError("glue: middle marginals differ at event " + std::to_string(id) + " (" +
                         to_fraction_string(w) + " vs " + to_fraction_string(middle2.mass(id)) +
                         ")");
      }
    }
    for (const auto& [id, w] : middle2.atoms()) {
      if (middle.mass(id) != w) {
        throw InputError("glue: middle marginals differ at event " + std::to_string(id) + " (" +
                         to_fraction_string(middle.mass(id)) + " vs " + to_fraction_string(w) +
                         ")");
      }
    }
  }

  std::map<EventId, std::vector<std::pair<EventId, Rational>>> by_middle;
  for (const auto& [q, r, w] : omega23.entries()) by_middle[q].push_back({r, w});

  std::vector<TripleMeasure::Entry> entries;
  for (const auto& [p, q, w12] : omega12.entries()) {
    const Rational mq = middle.mass(q);
    for (const auto& [r, w23] : by_middle[q]) {
      entries.push_back({p, q, r, w12 * w23 / mq});
    }
  }
  TripleMeasure triple = TripleMeasure::from_entries(std::move(entries));
  Coupling omega13 = triple.project_13();
  return {std::move(triple), std::move(omega13)};
}

}  // namespace lot
