#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "lot/errors.hpp"
#include "lot/measure.hpp"
#include "lot/rational.hpp"
#include "lot/spacetime.hpp"
#include "lot/transport.hpp"

namespace lot {

inline constexpr std::size_t kBruteForceBound = 20;

/// All up-sets of the partial (pre)order induced on a small ground set,
/// encoded as bitmasks over the sorted ground vector. Closed under union and
/// intersection by construction.
struct UpSetFamily {
  std::vector<EventId> ground;
  std::vector<std::uint32_t> sets;

  std::vector<EventId> decode(std::uint32_t mask) const {
    std::vector<EventId> events;
    for (std::size_t i = 0; i < ground.size(); ++i) {
      if (mask & (1u << i)) events.push_back(ground[i]);
    }
    return events;
  }
};

template <CausalModel M>
UpSetFamily enumerate_future_sets(const M& model, std::vector<EventId> ground) {
  std::sort(ground.begin(), ground.end());
  ground.erase(std::unique(ground.begin(), ground.end()), ground.end());
  for (EventId id : ground) detail::check_event_id(model.event_count(), id, "enumerate_future_sets");
  if (ground.size() > kBruteForceBound) {
    throw CapacityError("enumerate_future_sets: ground set of " + std::to_string(ground.size()) +
                        " events exceeds the brute-force bound of " +
                        std::to_string(kBruteForceBound));
  }

  const std::size_t n = ground.size();
  std::vector<std::uint32_t> up_mask(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (model.causally_precedes(ground[i], ground[j])) up_mask[i] |= 1u << j;
    }
  }

  UpSetFamily family;
  family.ground = std::move(ground);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool closed = true;
    for (std::size_t i = 0; i < n && closed; ++i) {
      if ((mask & (1u << i)) && (up_mask[i] & ~mask)) closed = false;
    }
    if (closed) family.sets.push_back(mask);
  }
  return family;
}

struct FutureSetViolation {
  std::vector<EventId> future_set;
  Rational mu_mass;
  Rational nu_mass;
};

struct Condition5Verdict {
  bool holds = true;
  std::optional<FutureSetViolation> violation;
};

/// Brute-force oracle for the Borel-future-set condition, restricted to the
/// combined support: mu(F) <= nu(F) for every up-set F. This is the yardstick
/// check_precedence is validated against.
template <CausalModel M>
Condition5Verdict check_condition_5(const M& model, const DiscreteMeasure& mu,
                                    const DiscreteMeasure& nu) {
  std::vector<EventId> ground = mu.support();
  const std::vector<EventId> nu_support = nu.support();
  ground.insert(ground.end(), nu_support.begin(), nu_support.end());
  const UpSetFamily family = enumerate_future_sets(model, std::move(ground));

  for (std::uint32_t mask : family.sets) {
    const std::vector<EventId> f = family.decode(mask);
    Rational mu_f = mu.mass_of(f), nu_f = nu.mass_of(f);
    if (mu_f > nu_f) {
      return {false, FutureSetViolation{f, std::move(mu_f), std::move(nu_f)}};
    }
  }
  return {};
}

struct Condition4Verdict {
  bool holds = true;
  std::optional<Certificate> violation;  // K with F = J+(K) and the two masses
};

/// Compact-set condition specialized to finite models: K ranges over subsets
/// of supp(mu), which suffices because any violating future set restricted to
/// mu-atoms is generated by them.
template <CausalModel M>
Condition4Verdict check_condition_4(const M& model, const DiscreteMeasure& mu,
                                    const DiscreteMeasure& nu) {
  const std::vector<EventId> support = mu.support();
  if (support.size() > kBruteForceBound) {
    throw CapacityError("check_condition_4: support of " + std::to_string(support.size()) +
                        " events exceeds the brute-force bound of " +
                        std::to_string(kBruteForceBound));
  }
  detail::check_measure_events(model, mu, "check_condition_4 mu");
  detail::check_measure_events(model, nu, "check_condition_4 nu");

  for (std::uint32_t mask = 1; mask < (1u << support.size()); ++mask) {
    std::vector<EventId> k;
    for (std::size_t i = 0; i < support.size(); ++i) {
      if (mask & (1u << i)) k.push_back(support[i]);
    }
    std::vector<EventId> f = model.future_of(k);
    std::sort(f.begin(), f.end());
    Rational mu_f = mu.mass_of(f), nu_f = nu.mass_of(f);
    if (mu_f > nu_f) {
      return {false,
              Certificate{std::move(f), std::move(k), std::move(mu_f), std::move(nu_f)}};
    }
  }
  return {};
}

/// Least causal function dominating g: g_hat(p) = max over x <= p of g(x).
/// Idempotent and extensive; fixes g exactly when g is already causal.
template <CausalModel M>
std::vector<double> monotone_closure(const M& model, std::span<const double> g) {
  if (g.size() != model.event_count()) {
    throw InputError("monotone_closure: function must be total on the " +
                     std::to_string(model.event_count()) + " model events");
  }
  std::vector<double> closed(g.size());
  for (EventId p = 0; p < g.size(); ++p) {
    double best = g[p];
    for (EventId x = 0; x < g.size(); ++x) {
      if (model.causally_precedes(x, p) && g[x] > best) best = g[x];
    }
    closed[p] = best;
  }
  return closed;
}

struct FalsifierResult {
  bool violation_found = false;
  std::uint64_t seed = 0;
  int trials_run = 0;
  std::optional<std::vector<double>> witness;  // the causal function that separated
};

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline double unit_double(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Randomized sound falsifier of the causal-function condition: draws bounded
/// random functions, monotone-closes them, and compares the two integrals
/// exactly (function values are dyadic rationals). A violation disproves
/// mu <= nu; finding none proves nothing -- completeness lives in
/// check_precedence. Each trial derives its own stream from the seed.
template <CausalModel M>
FalsifierResult falsify_condition_2(const M& model, const DiscreteMeasure& mu,
                                    const DiscreteMeasure& nu, int trials, std::uint64_t seed) {
  detail::check_measure_events(model, mu, "falsify_condition_2 mu");
  detail::check_measure_events(model, nu, "falsify_condition_2 nu");

  FalsifierResult result;
  result.seed = seed;
  std::vector<double> g(model.event_count());
  for (int trial = 0; trial < trials; ++trial) {
    std::mt19937_64 eng(detail::mix_seed(seed, static_cast<std::uint64_t>(trial)));
    for (double& v : g) v = detail::unit_double(eng);
    const std::vector<double> f = monotone_closure(model, g);

    Rational mu_integral(0), nu_integral(0);
    for (const auto& [id, w] : mu.atoms()) mu_integral += rational_from_double(f[id]) * w;
    for (const auto& [id, w] : nu.atoms()) nu_integral += rational_from_double(f[id]) * w;

    result.trials_run = trial + 1;
    if (mu_integral > nu_integral) {
      result.violation_found = true;
      result.witness = f;
      return result;
    }
  }
  return result;
}

struct SliceViolation {
  Rational time;
  Rational mu_tail;
  Rational nu_tail;
};

struct Condition8Verdict {
  bool holds = true;
  std::optional<SliceViolation> violation;
};

/// Necessary-condition screen over the Cauchy hyperplanes t = c of Minkowski
/// space: J+({t = c}) = {t >= c}, so tail masses must be monotone. Candidate
/// cuts at every atom time-coordinate suffice (tails are step functions).
inline Condition8Verdict check_condition_8_slices(const MinkowskiModel& model,
                                                  const DiscreteMeasure& mu,
                                                  const DiscreteMeasure& nu) {
  detail::check_measure_events(model, mu, "check_condition_8_slices mu");
  detail::check_measure_events(model, nu, "check_condition_8_slices nu");

  std::vector<Rational> cuts;
  auto add_times = [&](const DiscreteMeasure& m) {
    for (const auto& [id, w] : m.atoms()) cuts.push_back(model.exact_coords(id)[0]);
  };
  add_times(mu);
  add_times(nu);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  for (const Rational& c : cuts) {
    Rational mu_tail(0), nu_tail(0);
    for (const auto& [id, w] : mu.atoms()) {
      if (model.exact_coords(id)[0] >= c) mu_tail += w;
    }
    for (const auto& [id, w] : nu.atoms()) {
      if (model.exact_coords(id)[0] >= c) nu_tail += w;
    }
    if (mu_tail > nu_tail) {
      return {false, SliceViolation{c, std::move(mu_tail), std::move(nu_tail)}};
    }
  }
  return {};
}

/// Volume functions t^-(p) = eta(I^-(p)) and t^+(p) = -eta(I^+(p)) of an
/// admissible (fully supported) measure. Both are causal by push-up.
struct VolumeFunctions {
  DiscreteMeasure eta;
  std::vector<Rational> t_minus;
  std::vector<Rational> t_plus;
};

template <CausalModel M>
VolumeFunctions volume_functions(const M& model, const DiscreteMeasure& eta) {
  detail::check_measure_events(model, eta, "volume_functions");
  for (EventId p = 0; p < model.event_count(); ++p) {
    if (eta.mass(p) <= 0) {
      throw InputError("volume_functions: eta must give positive weight to every event (event " +
                       std::to_string(p) + " has none)");
    }
  }

  VolumeFunctions out;
  out.eta = eta;
  out.t_minus.resize(model.event_count());
  out.t_plus.resize(model.event_count());
  for (EventId p = 0; p < model.event_count(); ++p) {
    Rational past(0), future(0);
    for (EventId q = 0; q < model.event_count(); ++q) {
      if (model.chronologically_precedes(q, p)) past += eta.mass(q);
      if (model.chronologically_precedes(p, q)) future += eta.mass(q);
    }
    out.t_minus[p] = past;
    out.t_plus[p] = -future;
  }

  for (EventId p = 0; p < model.event_count(); ++p) {
    for (EventId q = 0; q < model.event_count(); ++q) {
      if (model.causally_precedes(p, q) &&
          (out.t_minus[p] > out.t_minus[q] || out.t_plus[p] > out.t_plus[q])) {
        throw std::logic_error("volume_functions: computed volume function is not causal");
      }
    }
  }
  return out;
}

/// Partial-order property suite over a list of measures: reflexivity via the
/// diagonal witness, constructive transitivity via gluing, antisymmetry, and
/// time-reversal duality. Counterexamples are reported, not thrown.
struct PropertyReport {
  struct Finding {
    std::string property;
    std::string detail;
  };
  std::vector<Finding> violations;
  int reflexivity_checks = 0;
  int transitivity_checks = 0;
  int antisymmetry_checks = 0;
  int duality_checks = 0;

  bool all_pass() const { return violations.empty(); }
};

template <CausalModel M>
PropertyReport property_suite(const M& model, const std::vector<DiscreteMeasure>& measures) {
  PropertyReport report;
  const std::size_t k = measures.size();

  for (std::size_t i = 0; i < k; ++i) {
    ++report.reflexivity_checks;
    if (!verify_coupling(model, diagonal(measures[i]), measures[i], measures[i])) {
      report.violations.push_back(
          {"reflexivity", "diagonal coupling of measure " + std::to_string(i) + " rejected"});
    }
  }

  std::vector<std::vector<PrecedenceResult>> decided(k, std::vector<PrecedenceResult>(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      decided[i][j] = check_precedence(model, measures[i], measures[j]);
    }
  }

  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t l = 0; l < k; ++l) {
        if (!decided[i][j].feasible() || !decided[j][l].feasible()) continue;
        ++report.transitivity_checks;
        const GlueResult glued = glue(*decided[i][j].coupling, *decided[j][l].coupling);
        if (!verify_coupling(model, glued.omega13, measures[i], measures[l])) {
          report.violations.push_back({"transitivity", "glued coupling for measures " +
                                                           std::to_string(i) + "<=" +
                                                           std::to_string(j) + "<=" +
                                                           std::to_string(l) + " is not causal"});
        }
      }
    }
  }

  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (!decided[i][j].feasible() || !decided[j][i].feasible()) continue;
      ++report.antisymmetry_checks;
      if (!(measures[i] == measures[j])) {
        report.violations.push_back(
            {"antisymmetry", "measures " + std::to_string(i) + " and " + std::to_string(j) +
                                 " precede each other but differ"});
      }
    }
  }

  const M reversed = model.time_reversed();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      ++report.duality_checks;
      const bool forward = decided[i][j].feasible();
      const bool backward = check_precedence(reversed, measures[j], measures[i]).feasible();
      if (forward != backward) {
        report.violations.push_back(
            {"time_reversal_duality", "measures " + std::to_string(i) + "," + std::to_string(j) +
                                          ": forward=" + (forward ? "yes" : "no") +
                                          " reversed=" + (backward ? "yes" : "no")});
      }
    }
  }

  return report;
}

}  // namespace lot
