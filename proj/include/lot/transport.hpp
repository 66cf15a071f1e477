#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "lot/errors.hpp"
#include "lot/extended_real.hpp"
#include "lot/maxflow.hpp"
#include "lot/measure.hpp"
#include "lot/spacetime.hpp"
#include "lot/transport_simplex.hpp"

namespace lot {

/// Self-verifying proof that mu does not causally precede nu: a future set
/// F = J+(K) generated by mu-atoms K with mu(F) > nu(F), i.e. a violation of
/// the future-set monotonicity condition. The pair phi = psi = 1_F then
/// violates the function-pair condition as well.
struct Certificate {
  std::vector<EventId> violating_set;  // F, sorted
  std::vector<EventId> generator;      // K, sorted
  Rational mu_mass;
  Rational nu_mass;

  template <CausalModel M>
  bool verify(const M& model, const DiscreteMeasure& mu, const DiscreteMeasure& nu) const {
    std::vector<EventId> f_closed = model.future_of(violating_set);
    std::sort(f_closed.begin(), f_closed.end());
    if (f_closed != violating_set) return false;

    std::vector<EventId> from_generator = model.future_of(generator);
    std::sort(from_generator.begin(), from_generator.end());
    if (from_generator != violating_set) return false;

    return mu.mass_of(violating_set) == mu_mass && nu.mass_of(violating_set) == nu_mass &&
           mu_mass > nu_mass;
  }
};

enum class PrecedenceStatus { Feasible, Infeasible };

struct PrecedenceResult {
  PrecedenceStatus status = PrecedenceStatus::Infeasible;
  std::optional<Coupling> coupling;        // present iff feasible
  std::optional<Certificate> certificate;  // present iff infeasible

  bool feasible() const { return status == PrecedenceStatus::Feasible; }
};

namespace detail {

template <CausalModel M>
void check_measure_events(const M& model, const DiscreteMeasure& mu, const char* who) {
  for (const auto& [id, w] : mu.atoms()) check_event_id(model.event_count(), id, who);
}

/// Shared flow network for feasibility, coupling extraction and the
/// infinite-arc probe. Nodes: 0 source, 1..m mu-atoms, m+1..m+n nu-atoms,
/// m+n+1 sink. Middle arcs are capped at total mass 1.
template <CausalModel M>
struct FeasibilityFlow {
  std::vector<EventId> mu_support;
  std::vector<EventId> nu_support;
  std::vector<std::vector<std::size_t>> arc_id;  // [i][j], kNoArc when unrelated
  RationalMaxFlow network;
  Rational value;

  static constexpr std::size_t kNoArc = static_cast<std::size_t>(-1);

  FeasibilityFlow(const M& model, const DiscreteMeasure& mu, const DiscreteMeasure& nu)
      : mu_support(mu.support()),
        nu_support(nu.support()),
        network(mu_support.size() + nu_support.size() + 2) {
    const std::size_t m = mu_support.size(), n = nu_support.size();
    arc_id.assign(m, std::vector<std::size_t>(n, kNoArc));
    for (std::size_t i = 0; i < m; ++i) {
      network.add_arc(source(), mu_node(i), mu.mass(mu_support[i]));
    }
    for (std::size_t j = 0; j < n; ++j) {
      network.add_arc(nu_node(j), sink(), nu.mass(nu_support[j]));
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (model.causally_precedes(mu_support[i], nu_support[j])) {
          arc_id[i][j] = network.add_arc(mu_node(i), nu_node(j), Rational(1));
        }
      }
    }
    value = network.run(source(), sink());
  }

  std::size_t source() const { return 0; }
  std::size_t mu_node(std::size_t i) const { return 1 + i; }
  std::size_t nu_node(std::size_t j) const { return 1 + mu_support.size() + j; }
  std::size_t sink() const { return 1 + mu_support.size() + nu_support.size(); }

  bool feasible() const { return value == 1; }

  Coupling extract_coupling() const {
    std::vector<Coupling::Entry> entries;
    for (std::size_t i = 0; i < mu_support.size(); ++i) {
      for (std::size_t j = 0; j < nu_support.size(); ++j) {
        if (arc_id[i][j] == kNoArc) continue;
        const Rational& f = network.flow_on(arc_id[i][j]);
        if (f > 0) entries.push_back({mu_support[i], nu_support[j], f});
      }
    }
    return Coupling::from_entries(std::move(entries));
  }
};

}  // namespace detail

/// Decides mu <= nu by exact max-flow (the finite Strassen argument): value 1
/// yields a causal coupling; otherwise the min cut yields a Hall-type
/// deficiency certificate F = J+(K) with mu(F) > nu(F), K greedily minimized.
template <CausalModel M>
PrecedenceResult check_precedence(const M& model, const DiscreteMeasure& mu,
                                  const DiscreteMeasure& nu) {
  detail::check_measure_events(model, mu, "check_precedence mu");
  detail::check_measure_events(model, nu, "check_precedence nu");

  detail::FeasibilityFlow<M> flow(model, mu, nu);
  PrecedenceResult result;
  if (flow.feasible()) {
    result.status = PrecedenceStatus::Feasible;
    result.coupling = flow.extract_coupling();
    return result;
  }

  const std::vector<bool> source_side = flow.network.residual_reachable(flow.source());
  std::vector<EventId> generator;
  for (std::size_t i = 0; i < flow.mu_support.size(); ++i) {
    if (source_side[flow.mu_node(i)]) generator.push_back(flow.mu_support[i]);
  }

  auto violation = [&](const std::vector<EventId>& k) {
    std::vector<EventId> f = model.future_of(k);
    std::sort(f.begin(), f.end());
    Rational mu_f = mu.mass_of(f), nu_f = nu.mass_of(f);
    return std::tuple(std::move(f), std::move(mu_f), std::move(nu_f));
  };

  // Best-effort minimization: drop atoms whose removal keeps the violation.
  for (std::size_t i = 0; i < generator.size();) {
    std::vector<EventId> smaller = generator;
    smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(i));
    auto [f, mu_f, nu_f] = violation(smaller);
    if (!smaller.empty() && mu_f > nu_f) {
      generator = std::move(smaller);
    } else {
      ++i;
    }
  }

  auto [f, mu_f, nu_f] = violation(generator);
  result.status = PrecedenceStatus::Infeasible;
  result.certificate = Certificate{std::move(f), std::move(generator), std::move(mu_f),
                                   std::move(nu_f)};
  return result;
}

/// True iff omega has exactly the marginals (mu, nu) and all its mass lies on
/// J+ (every positive entry is a causally related pair).
template <CausalModel M>
bool verify_coupling(const M& model, const Coupling& omega, const DiscreteMeasure& mu,
                     const DiscreteMeasure& nu) {
  for (const auto& [p, q, w] : omega.entries()) {
    if (p >= model.event_count() || q >= model.event_count()) return false;
    if (w > 0 && !model.causally_precedes(p, q)) return false;
  }
  return omega.first_marginal() == mu && omega.second_marginal() == nu;
}

struct LWResult {
  ExtendedReal value;
  double s = 1.0;
  /// Optimizing causal coupling; present iff a causal coupling exists and the
  /// distance is finite.
  std::optional<Coupling> optimal_coupling;
};

/// Lorentz-Wasserstein distance LW_s: 0 when no causal coupling exists;
/// +infinity when positive mass can feasibly ride an infinite-distance pair
/// (decided exactly on the flow's residual graph); otherwise the maximum of
/// sum omega * d^s over the transportation polytope, raised to 1/s.
template <CausalModel M>
LWResult lorentz_wasserstein(const M& model, const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                             double s) {
  if (!(s > 0.0 && s <= 1.0)) {
    throw InputError("lorentz_wasserstein: s must lie in (0, 1], got " + format_double(s));
  }
  detail::check_measure_events(model, mu, "lorentz_wasserstein mu");
  detail::check_measure_events(model, nu, "lorentz_wasserstein nu");

  LWResult result;
  result.s = s;

  detail::FeasibilityFlow<M> flow(model, mu, nu);
  if (!flow.feasible()) {
    result.value = ExtendedReal(0.0);
    return result;
  }

  const std::size_t m = flow.mu_support.size(), n = flow.nu_support.size();

  // A coupling can place mass on arc a0 iff a0 already carries flow or lies
  // on a residual cycle; flows of equal value differ by residual cycles.
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (flow.arc_id[i][j] == detail::FeasibilityFlow<M>::kNoArc) continue;
      if (!model.lorentz_distance(flow.mu_support[i], flow.nu_support[j]).is_infinite()) continue;
      if (flow.network.flow_on(flow.arc_id[i][j]) > 0 ||
          flow.network.residual_reachable(flow.nu_node(j))[flow.mu_node(i)]) {
        result.value = ExtendedReal::infinity();
        return result;
      }
    }
  }

  TransportationSimplex::Problem lp;
  lp.source_count = m;
  lp.sink_count = n;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (flow.arc_id[i][j] == detail::FeasibilityFlow<M>::kNoArc) continue;
      const ExtendedReal d = model.lorentz_distance(flow.mu_support[i], flow.nu_support[j]);
      if (d.is_infinite()) continue;  // provably zero in every coupling
      lp.arcs.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
      const double base = d.value();
      lp.cost.push_back(base == 0.0 ? 0.0 : (s == 1.0 ? base : std::pow(base, s)));
      lp.initial_flow.push_back(flow.network.flow_on(flow.arc_id[i][j]));
    }
  }

  const TransportationSimplex::Solution sol = TransportationSimplex::maximize(lp);

  std::vector<Coupling::Entry> entries;
  for (std::size_t a = 0; a < lp.arcs.size(); ++a) {
    if (sol.flow[a] > 0) {
      entries.push_back({flow.mu_support[lp.arcs[a].first], flow.nu_support[lp.arcs[a].second],
                         sol.flow[a]});
    }
  }
  result.optimal_coupling = Coupling::from_entries(std::move(entries));
  result.value = ExtendedReal(s == 1.0 ? sol.objective : std::pow(sol.objective, 1.0 / s));
  return result;
}

/// Maximum off-diagonal mass over causal couplings of mu with itself. Exactly
/// zero precisely when the diagonal is the unique causal self-coupling, which
/// Thm-4.12-style antisymmetry predicts on causal models.
template <CausalModel M>
Rational max_violation(const M& model, const DiscreteMeasure& mu) {
  detail::check_measure_events(model, mu, "max_violation");
  const std::vector<EventId> support = mu.support();
  const std::size_t m = support.size();

  TransportationSimplex::Problem lp;
  lp.source_count = m;
  lp.sink_count = m;
  std::vector<std::size_t> diagonal_arc(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (!model.causally_precedes(support[i], support[j])) continue;
      if (i == j) diagonal_arc[i] = lp.arcs.size();
      lp.arcs.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
      lp.cost.push_back(i == j ? 0.0 : 1.0);
      lp.initial_flow.push_back(Rational(0));
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    lp.initial_flow[diagonal_arc[i]] = mu.mass(support[i]);
  }

  const TransportationSimplex::Solution sol = TransportationSimplex::maximize(lp);
  Rational off_diagonal(0);
  for (std::size_t a = 0; a < lp.arcs.size(); ++a) {
    if (lp.arcs[a].first != lp.arcs[a].second) off_diagonal += sol.flow[a];
  }
  return off_diagonal;
}

}  // namespace lot
