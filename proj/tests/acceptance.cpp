// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one PASS/FAIL line per criterion. Exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "lot/lot.hpp"

namespace {

using lot::CausalGraphModel;
using lot::check_precedence;
using lot::DiscreteMeasure;
using lot::dirac;
using lot::EventId;
using lot::lorentz_wasserstein;
using lot::MinkowskiModel;
using lot::Rational;
using lot::Rng;

struct Outcome {
  bool pass = false;
  std::string note;
};

// Feasible pairs carried from criteria 1-3 into the falsifier-soundness run.
std::vector<std::tuple<CausalGraphModel, DiscreteMeasure, DiscreteMeasure>> feasible_graph;
std::vector<std::tuple<MinkowskiModel, DiscreteMeasure, DiscreteMeasure>> feasible_minkowski;

DiscreteMeasure random_measure_on(Rng& rng, std::size_t events, std::size_t max_support) {
  return lot::random_measure(rng, events, max_support);
}

// --------------------------------------------------------------------------
// 1. Dirac reduction: delta_p <= delta_q iff p <= q, across model kinds.
// --------------------------------------------------------------------------
Outcome criterion_dirac_reduction() {
  int agree = 0;
  const int total = 500;
  for (int k = 0; k < total; ++k) {
    Rng rng(1000 + k);
    auto check_pair = [&](const auto& model) {
      const EventId p = static_cast<EventId>(rng.below(model.event_count()));
      const EventId q = static_cast<EventId>(rng.below(model.event_count()));
      const bool event_level = model.causally_precedes(p, q);
      const auto result = check_precedence(model, dirac(p), dirac(q));
      if (result.feasible() == event_level) ++agree;
      if (result.feasible()) {
        using ModelT = std::decay_t<decltype(model)>;
        if constexpr (std::is_same_v<ModelT, CausalGraphModel>) {
          feasible_graph.push_back({model, dirac(p), dirac(q)});
        } else {
          feasible_minkowski.push_back({model, dirac(p), dirac(q)});
        }
      }
    };
    switch (k % 3) {
      case 0: check_pair(lot::random_minkowski(rng, 12, 1, 10.0)); break;
      case 1: check_pair(lot::random_minkowski(rng, 12, 2, 10.0)); break;
      default: check_pair(lot::random_dag(rng, 12)); break;
    }
  }
  std::ostringstream note;
  note << agree << "/" << total << " pairs agree with the event relation";
  return {agree == total, note.str()};
}

// --------------------------------------------------------------------------
// 2. Strassen equivalence: flow decision vs both brute-force conditions.
// --------------------------------------------------------------------------
Outcome criterion_strassen() {
  int agreements = 0, infeasible_seen = 0, certificates_ok = 0, certificates = 0;
  const int total = 200;
  for (int k = 0; k < total; ++k) {
    Rng rng(2000 + k);
    auto run = [&](const auto& model) {
      // Half the instances use a pushforward pair, which biases the sample
      // toward feasible so both verdicts get exercised.
      DiscreteMeasure mu = random_measure_on(rng, model.event_count(), 5);
      DiscreteMeasure nu = random_measure_on(rng, model.event_count(), 5);
      if (k % 2 == 0) {
        const auto chain = lot::causal_chain(rng, model, mu);
        mu = chain[0];
        nu = chain[2];
      }
      const auto flow = check_precedence(model, mu, nu);
      const auto c5 = lot::check_condition_5(model, mu, nu);
      const auto c4 = lot::check_condition_4(model, mu, nu);
      if (flow.feasible() == c5.holds && flow.feasible() == c4.holds) ++agreements;
      if (!flow.feasible()) {
        ++infeasible_seen;
        ++certificates;
        if (flow.certificate->verify(model, mu, nu)) ++certificates_ok;
      } else {
        using ModelT = std::decay_t<decltype(model)>;
        if constexpr (std::is_same_v<ModelT, CausalGraphModel>) {
          feasible_graph.push_back({model, mu, nu});
        } else {
          feasible_minkowski.push_back({model, mu, nu});
        }
      }
    };
    if (k % 2 == 0) {
      run(lot::random_dag(rng, 8));
    } else {
      run(lot::random_minkowski(rng, 8, 1, 10.0));
    }
  }
  std::ostringstream note;
  note << agreements << "/" << total << " verdicts identical, " << certificates_ok << "/"
       << certificates << " certificates re-verify, " << infeasible_seen << " infeasible";
  return {agreements == total && certificates_ok == certificates && infeasible_seen > 0,
          note.str()};
}

// --------------------------------------------------------------------------
// 3. Partial order: reflexivity, constructive transitivity, antisymmetry.
// --------------------------------------------------------------------------
Outcome criterion_partial_order() {
  int reflexive = 0, transitive = 0, transitivity_cases = 0, antisymmetric = 0;
  const int total = 100;
  for (int k = 0; k < total; ++k) {
    Rng rng(3000 + k);
    const CausalGraphModel model = lot::random_dag(rng, 10);
    const auto chain = lot::causal_chain(rng, model, 5);

    bool all_reflexive = true;
    for (const auto& mu : chain) {
      if (!lot::verify_coupling(model, lot::diagonal(mu), mu, mu)) all_reflexive = false;
    }
    if (all_reflexive) ++reflexive;

    const auto r12 = check_precedence(model, chain[0], chain[1]);
    const auto r23 = check_precedence(model, chain[1], chain[2]);
    if (r12.feasible() && r23.feasible()) {
      ++transitivity_cases;
      const auto glued = lot::glue(*r12.coupling, *r23.coupling);
      if (lot::verify_coupling(model, glued.omega13, chain[0], chain[2])) ++transitive;
      feasible_graph.push_back({model, chain[0], chain[1]});
      feasible_graph.push_back({model, chain[1], chain[2]});
    }

    bool anti_ok = true;
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        if (check_precedence(model, chain[i], chain[j]).feasible() &&
            check_precedence(model, chain[j], chain[i]).feasible() &&
            !(chain[i] == chain[j])) {
          anti_ok = false;
        }
      }
    }
    if (anti_ok) ++antisymmetric;
  }

  // Antisymmetry must fail as predicted on the timelike 2-cycle.
  const CausalGraphModel cycle(
      2, {{0, 1, Rational(1), lot::EdgeKind::Timelike}, {1, 0, Rational(1), lot::EdgeKind::Timelike}});
  const bool cycle_fails = check_precedence(cycle, dirac(0), dirac(1)).feasible() &&
                           check_precedence(cycle, dirac(1), dirac(0)).feasible() &&
                           !(dirac(0) == dirac(1));

  std::ostringstream note;
  note << "reflexivity " << reflexive << "/" << total << ", transitivity " << transitive << "/"
       << transitivity_cases << " glued couplings verify, antisymmetry " << antisymmetric << "/"
       << total << ", 2-cycle counterexample " << (cycle_fails ? "reproduced" : "MISSING");
  return {reflexive == total && transitive == transitivity_cases &&
              transitivity_cases == total && antisymmetric == total && cycle_fails,
          note.str()};
}

// --------------------------------------------------------------------------
// 4. LW Dirac identity on random causal pairs in a Minkowski box.
// --------------------------------------------------------------------------
Outcome criterion_lw_dirac() {
  int ok = 0;
  const int total = 100;
  double worst = 0.0;
  Rng rng(4000);
  for (int k = 0; k < total;) {
    const MinkowskiModel model = lot::random_minkowski(rng, 2, 1, 10.0);
    if (!model.causally_precedes(0, 1)) continue;
    ++k;
    const double t = model.coords(1)[0] - model.coords(0)[0];
    const double x = model.coords(1)[1] - model.coords(0)[1];
    const double expected = std::sqrt(t * t - x * x);
    const auto lw = lorentz_wasserstein(model, dirac(0), dirac(1), 1.0);
    const double err = std::abs(lw.value.value() - expected);
    if (err <= 1e-9) ++ok;
    worst = std::max(worst, err);
  }
  std::ostringstream note;
  note << ok << "/" << total << " within 1e-9 (worst error " << worst << ")";
  return {ok == total, note.str()};
}

// --------------------------------------------------------------------------
// 5. Geometric truncation: LW_1 = N / (1 - 2^-N), unbounded growth.
// --------------------------------------------------------------------------
Outcome criterion_geometric() {
  bool all_ok = true;
  double previous = 0.0;
  bool growing = true;
  std::ostringstream note;
  for (int terms : {1, 5, 10, 20}) {
    const lot::Instance inst = lot::demo_geometric(terms);
    const auto& model = std::get<MinkowskiModel>(inst.model);
    const double value =
        lorentz_wasserstein(model, inst.measure("mu"), inst.measure("nu"), 1.0).value.value();
    const double expected = terms / (1.0 - std::pow(2.0, -terms));
    const double rel = std::abs(value - expected) / expected;
    if (rel > 1e-9) all_ok = false;
    if (value <= previous) growing = false;
    previous = value;
    note << "N=" << terms << ": " << value << " ";
  }
  note << (growing ? "(growing without bound)" : "(NOT growing)");
  return {all_ok && growing, note.str()};
}

// --------------------------------------------------------------------------
// 6. Reverse triangle inequality for LW_1 along causal chains.
// --------------------------------------------------------------------------
Outcome criterion_reverse_triangle() {
  int ok = 0;
  const int total = 100;
  double worst_slack = 0.0;
  for (int k = 0; k < total; ++k) {
    Rng rng(6000 + k);
    const CausalGraphModel model = lot::random_dag(rng, 9);
    const auto chain = lot::causal_chain(rng, model, 4);
    const double d12 = lorentz_wasserstein(model, chain[0], chain[1], 1.0).value.value();
    const double d23 = lorentz_wasserstein(model, chain[1], chain[2], 1.0).value.value();
    const double d13 = lorentz_wasserstein(model, chain[0], chain[2], 1.0).value.value();
    if (d12 + d23 <= d13 + 1e-8) ++ok;
    worst_slack = std::max(worst_slack, d12 + d23 - d13);
  }
  std::ostringstream note;
  note << ok << "/" << total << " chains satisfy it (max lhs-rhs " << worst_slack << ")";
  return {ok == total, note.str()};
}

// --------------------------------------------------------------------------
// 7. Self-distance: max_violation = 0 and LW_1(mu, mu) = 0 on causal models;
//    +infinity on the timelike 2-cycle via the infinite-arc probe.
// --------------------------------------------------------------------------
Outcome criterion_self_distance() {
  int zero_violation = 0, zero_lw = 0;
  const int total = 100;
  for (int k = 0; k < total; ++k) {
    Rng rng(7000 + k);
    const CausalGraphModel model = lot::random_dag(rng, 9);
    const DiscreteMeasure mu = random_measure_on(rng, model.event_count(), 5);
    if (lot::max_violation(model, mu) == Rational(0)) ++zero_violation;
    const auto lw = lorentz_wasserstein(model, mu, mu, 1.0);
    if (!lw.value.is_infinite() && lw.value.value() == 0.0) ++zero_lw;
  }

  const CausalGraphModel cycle(
      2, {{0, 1, Rational(1), lot::EdgeKind::Timelike}, {1, 0, Rational(1), lot::EdgeKind::Timelike}});
  const DiscreteMeasure uniform = DiscreteMeasure::from_atoms(
      {{0, Rational(1, 2)}, {1, Rational(1, 2)}});
  const bool cycle_infinite = lorentz_wasserstein(cycle, uniform, uniform, 1.0).value.is_infinite();

  std::ostringstream note;
  note << "max_violation zero " << zero_violation << "/" << total << ", LW(mu,mu) zero "
       << zero_lw << "/" << total << ", 2-cycle LW(mu,mu) "
       << (cycle_infinite ? "infinite" : "NOT infinite");
  return {zero_violation == total && zero_lw == total && cycle_infinite, note.str()};
}

// --------------------------------------------------------------------------
// 8. Hegerfeldt demo: any positive leak is infeasible with F = J+(supp mu);
//    leak 0 is feasible.
// --------------------------------------------------------------------------
Outcome criterion_hegerfeldt() {
  bool all_ok = true;
  std::ostringstream note;
  for (const char* leak : {"1/1000000", "1/100", "1/10", "1/4", "1/3"}) {
    const lot::Instance inst = lot::demo_hegerfeldt(lot::parse_rational(leak));
    const auto& model = std::get<MinkowskiModel>(inst.model);
    const auto result = check_precedence(model, inst.measure("mu"), inst.measure("nu"));
    std::vector<EventId> shadow = model.future_of(inst.measure("mu").support());
    std::sort(shadow.begin(), shadow.end());
    const bool ok = !result.feasible() && result.certificate->violating_set == shadow &&
                    result.certificate->verify(model, inst.measure("mu"), inst.measure("nu"));
    if (!ok) all_ok = false;
    note << "leak " << leak << (ok ? " certified; " : " WRONG; ");
  }
  const lot::Instance tight = lot::demo_hegerfeldt(Rational(0));
  const bool feasible_at_zero =
      check_precedence(std::get<MinkowskiModel>(tight.model), tight.measure("mu"),
                       tight.measure("nu"))
          .feasible();
  note << "leak 0 " << (feasible_at_zero ? "feasible" : "INFEASIBLE");
  return {all_ok && feasible_at_zero, note.str()};
}

// --------------------------------------------------------------------------
// 9. Falsifier soundness on every feasible instance from criteria 1-3.
// --------------------------------------------------------------------------
Outcome criterion_falsifier_soundness() {
  int checked = 0;
  int spurious = 0;
  for (const auto& [model, mu, nu] : feasible_graph) {
    ++checked;
    if (lot::falsify_condition_2(model, mu, nu, 1000, 90000 + checked).violation_found) {
      ++spurious;
    }
  }
  for (const auto& [model, mu, nu] : feasible_minkowski) {
    ++checked;
    if (lot::falsify_condition_2(model, mu, nu, 1000, 90000 + checked).violation_found) {
      ++spurious;
    }
    if (!lot::check_condition_8_slices(model, mu, nu).holds) ++spurious;
  }
  std::ostringstream note;
  note << checked << " feasible instances, " << spurious << " spurious violations";
  return {checked > 0 && spurious == 0, note.str()};
}

// --------------------------------------------------------------------------
// 10. Volume functions on chronological graph instances.
// --------------------------------------------------------------------------
Outcome criterion_volume_functions() {
  int ok = 0;
  const int total = 50;
  for (int k = 0; k < total; ++k) {
    Rng rng(10000 + k);
    CausalGraphModel model = [&]() {
      CausalGraphModel dag = lot::random_dag(rng, 8);
      if (k % 10 != 0) return dag;
      // Sprinkle in an all-null 2-cycle on fresh events: still chronological.
      std::vector<lot::GraphEdge> edges = dag.edges();
      const EventId a = static_cast<EventId>(dag.event_count());
      edges.push_back({a, a + 1, Rational(0), lot::EdgeKind::Null});
      edges.push_back({a + 1, a, Rational(0), lot::EdgeKind::Null});
      return CausalGraphModel(dag.event_count() + 2, std::move(edges));
    }();
    if (model.classification() == lot::CausalClass::NonChronological) continue;

    std::vector<EventId> all(model.event_count());
    std::iota(all.begin(), all.end(), 0);
    std::vector<DiscreteMeasure::Atom> atoms;
    for (EventId id : all) atoms.push_back({id, Rational(1, model.event_count())});
    const auto vf = lot::volume_functions(model, DiscreteMeasure::from_atoms(std::move(atoms)));

    bool instance_ok = true;
    for (const auto& e : model.edges()) {
      if (vf.t_minus[e.src] > vf.t_minus[e.dst]) instance_ok = false;
      if (e.kind == lot::EdgeKind::Timelike && !(vf.t_minus[e.src] < vf.t_minus[e.dst])) {
        instance_ok = false;
      }
    }
    if (instance_ok) ++ok;
  }
  std::ostringstream note;
  note << ok << "/" << total
       << " instances: t- non-decreasing on every edge, strict on timelike edges";
  return {ok == total, note.str()};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "dirac reduction", 5.0, criterion_dirac_reduction},
      {2, "strassen equivalence", 30.0, criterion_strassen},
      {3, "partial order", 30.0, criterion_partial_order},
      {4, "LW dirac identity", 30.0, criterion_lw_dirac},
      {5, "geometric truncation", 30.0, criterion_geometric},
      {6, "LW reverse triangle", 30.0, criterion_reverse_triangle},
      {7, "self-distance", 30.0, criterion_self_distance},
      {8, "hegerfeldt", 30.0, criterion_hegerfeldt},
      {9, "falsifier soundness", 120.0, criterion_falsifier_soundness},
      {10, "volume functions", 30.0, criterion_volume_functions},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = elapsed < criterion.budget_seconds;
    const bool pass = outcome.pass && in_budget;
    if (!pass) ++failures;
    std::printf("[%s] criterion %2d (%s): %s [%.2fs%s]\n", pass ? "PASS" : "FAIL", criterion.id,
                criterion.name, outcome.note.c_str(), elapsed,
                in_budget ? "" : " OVER BUDGET");
  }
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
