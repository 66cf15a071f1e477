// lot: decide causal precedence between discrete measures on finite spacetime
// models, extract couplings or infeasibility certificates, and compute
// Lorentz-Wasserstein distances.
//
// Exit codes for the decision commands (check, coupling, certify):
//   0  mu causally precedes nu
//   1  it does not (a certificate is available)
//   2  input error (bad file, unknown label, malformed document)

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lot/lot.hpp"

namespace {

using lot::Instance;
using lot::json;

void emit(const json& doc, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    lot::write_json_file(out_path, doc);
  }
}

Instance load_instance(const std::string& path) {
  return lot::parse_instance(lot::read_json_file(path));
}

json run_equiv(const Instance& inst, const std::string& mu_label, const std::string& nu_label,
               int trials, std::uint64_t seed) {
  const lot::DiscreteMeasure& mu = inst.measure(mu_label);
  const lot::DiscreteMeasure& nu = inst.measure(nu_label);

  return std::visit(
      [&](const auto& model) -> json {
        json conditions;

        const lot::PrecedenceResult flow = lot::check_precedence(model, mu, nu);
        const bool feasible = flow.feasible();
        conditions["c7_coupling"] = {{"verdict", feasible ? "holds" : "violated"}};
        if (!feasible) {
          conditions["c7_coupling"]["certificate"] = lot::serialize_certificate(*flow.certificate);
        }

        std::vector<lot::EventId> ground = mu.support();
        for (lot::EventId id : nu.support()) ground.push_back(id);
        std::sort(ground.begin(), ground.end());
        ground.erase(std::unique(ground.begin(), ground.end()), ground.end());
        const bool oversized = ground.size() > lot::kBruteForceBound;

        bool c4_agrees = true, c5_agrees = true;
        if (oversized) {
          conditions["c4_compact_generators"] = {{"verdict", "skipped"}};
          conditions["c5_future_sets"] = {{"verdict", "skipped"}};
        } else {
          const lot::Condition4Verdict c4 = lot::check_condition_4(model, mu, nu);
          conditions["c4_compact_generators"] = {{"verdict", c4.holds ? "holds" : "violated"}};
          if (!c4.holds) {
            conditions["c4_compact_generators"]["certificate"] =
                lot::serialize_certificate(*c4.violation);
          }
          c4_agrees = c4.holds == feasible;

          const lot::Condition5Verdict c5 = lot::check_condition_5(model, mu, nu);
          conditions["c5_future_sets"] = {{"verdict", c5.holds ? "holds" : "violated"}};
          if (!c5.holds) {
            conditions["c5_future_sets"]["violating_set"] = c5.violation->future_set;
            conditions["c5_future_sets"]["mu_F"] = lot::to_fraction_string(c5.violation->mu_mass);
            conditions["c5_future_sets"]["nu_F"] = lot::to_fraction_string(c5.violation->nu_mass);
          }
          c5_agrees = c5.holds == feasible;
        }

        const lot::FalsifierResult falsifier =
            lot::falsify_condition_2(model, mu, nu, trials, seed);
        conditions["c2_falsifier"] = {
            {"verdict", falsifier.violation_found ? "violated" : "no_violation_found"},
            {"trials", falsifier.trials_run},
            {"seed", falsifier.seed}};
        bool c2_agrees = !(falsifier.violation_found && feasible);

        bool c8_agrees = true;
        if constexpr (std::is_same_v<std::decay_t<decltype(model)>, lot::MinkowskiModel>) {
          const lot::Condition8Verdict c8 = lot::check_condition_8_slices(model, mu, nu);
          conditions["c8_slices"] = {{"verdict", c8.holds ? "holds" : "violated"}};
          if (!c8.holds) {
            conditions["c8_slices"]["t"] = lot::to_fraction_string(c8.violation->time);
            conditions["c8_slices"]["mu_tail"] = lot::to_fraction_string(c8.violation->mu_tail);
            conditions["c8_slices"]["nu_tail"] = lot::to_fraction_string(c8.violation->nu_tail);
          }
          c8_agrees = !(feasible && !c8.holds);
        } else {
          conditions["c8_slices"] = {{"verdict", "unsupported"}};
        }

        return json{{"agreement", c4_agrees && c5_agrees && c2_agrees && c8_agrees},
                    {"conditions", conditions}};
      },
      inst.model);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"causal optimal transport on finite spacetime models"};
  app.require_subcommand(1);

  std::string instance_path, mu_label = "mu", nu_label = "nu", out_path;
  double s = 1.0;
  std::uint64_t seed = 0;
  int trials = 1000;

  auto add_io = [&](CLI::App* cmd, bool needs_measures) {
    cmd->add_option("--instance", instance_path, "instance JSON file")->required();
    if (needs_measures) {
      cmd->add_option("--mu", mu_label, "label of the earlier measure");
      cmd->add_option("--nu", nu_label, "label of the later measure");
    }
    cmd->add_option("--out", out_path, "write the JSON result here instead of stdout");
  };

  CLI::App* check = app.add_subcommand("check", "decide whether mu causally precedes nu");
  add_io(check, true);

  CLI::App* coupling = app.add_subcommand("coupling", "emit a causal coupling when one exists");
  add_io(coupling, true);

  CLI::App* certify =
      app.add_subcommand("certify", "emit the infeasibility certificate when none exists");
  add_io(certify, true);

  CLI::App* distance = app.add_subcommand("distance", "Lorentz-Wasserstein distance LW_s");
  add_io(distance, true);
  distance->add_option("--s", s, "moment exponent in (0, 1]")->default_val(1.0);

  CLI::App* equiv =
      app.add_subcommand("equiv", "cross-check the equivalent characterizations on one pair");
  add_io(equiv, true);
  equiv->add_option("--trials", trials, "falsifier trials")->default_val(1000);
  equiv->add_option("--seed", seed, "falsifier seed")->default_val(0);

  CLI::App* ladder = app.add_subcommand("ladder", "classify the model on the causal ladder");
  add_io(ladder, false);

  CLI::App* props =
      app.add_subcommand("props", "run the partial-order property suite on all measures");
  add_io(props, false);

  CLI::App* demo = app.add_subcommand("demo", "write a ready-made demo instance");
  std::string demo_name;
  std::string leak = "0.01";
  int terms = 10;
  std::size_t count = 10;
  demo->add_option("name", demo_name, "hegerfeldt | geometric | diamond")->required();
  demo->add_option("--leak", leak, "hegerfeldt: leaked mass (rational)")->default_val("0.01");
  demo->add_option("--terms", terms, "geometric: truncation length N")->default_val(10);
  demo->add_option("--s", s, "geometric: moment exponent")->default_val(1.0);
  demo->add_option("--count", count, "diamond: number of events")->default_val(10);
  demo->add_option("--seed", seed, "diamond: RNG seed")->default_val(0);
  demo->add_option("--out", out_path, "write the instance here instead of stdout");

  CLI::App* gen = app.add_subcommand("gen", "write a seeded random instance");
  std::string kind;
  std::size_t size = 10, measure_count = 3;
  gen->add_option("kind", kind, "graph | minkowski")->required();
  gen->add_option("--size", size, "event count")->default_val(10);
  gen->add_option("--seed", seed, "RNG seed")->default_val(0);
  gen->add_option("--measures", measure_count, "how many random measures")->default_val(3);
  gen->add_option("--out", out_path, "write the instance here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (check->parsed() || coupling->parsed() || certify->parsed()) {
      const Instance inst = load_instance(instance_path);
      const lot::PrecedenceResult result = std::visit(
          [&](const auto& model) {
            return lot::check_precedence(model, inst.measure(mu_label), inst.measure(nu_label));
          },
          inst.model);
      if (check->parsed()) {
        emit(lot::serialize_precedence_result(result), out_path);
      } else if (coupling->parsed()) {
        emit(result.feasible() ? lot::serialize_coupling(*result.coupling)
                               : lot::serialize_precedence_result(result),
             out_path);
      } else {
        emit(result.feasible() ? json{{"status", "feasible"}}
                               : lot::serialize_certificate(*result.certificate),
             out_path);
      }
      return result.feasible() ? 0 : 1;
    }

    if (distance->parsed()) {
      const Instance inst = load_instance(instance_path);
      const lot::LWResult result = std::visit(
          [&](const auto& model) {
            return lot::lorentz_wasserstein(model, inst.measure(mu_label),
                                            inst.measure(nu_label), s);
          },
          inst.model);
      emit(lot::serialize_lw_result(result), out_path);
      return 0;
    }

    if (equiv->parsed()) {
      const Instance inst = load_instance(instance_path);
      emit(run_equiv(inst, mu_label, nu_label, trials, seed), out_path);
      return 0;
    }

    if (ladder->parsed()) {
      const Instance inst = load_instance(instance_path);
      const lot::CausalClass c =
          std::visit([](const auto& model) { return model.classification(); }, inst.model);
      emit(json{{"classification", lot::to_string(c)}}, out_path);
      return 0;
    }

    if (props->parsed()) {
      const Instance inst = load_instance(instance_path);
      std::vector<std::string> labels;
      std::vector<lot::DiscreteMeasure> measures;
      for (const auto& [label, mu] : inst.measures) {
        labels.push_back(label);
        measures.push_back(mu);
      }
      const lot::PropertyReport report = std::visit(
          [&](const auto& model) { return lot::property_suite(model, measures); }, inst.model);
      json doc = lot::serialize_property_report(report);
      doc["measures"] = labels;
      emit(doc, out_path);
      return 0;
    }

    if (demo->parsed()) {
      Instance inst = [&] {
        if (demo_name == "hegerfeldt") return lot::demo_hegerfeldt(lot::parse_rational(leak));
        if (demo_name == "geometric") return lot::demo_geometric(terms, s);
        if (demo_name == "diamond") return lot::demo_diamond(count, seed);
        throw lot::InputError("demo: unknown scenario '" + demo_name + "'");
      }();
      emit(lot::serialize_instance(inst), out_path);
      return 0;
    }

    if (gen->parsed()) {
      emit(lot::serialize_instance(lot::gen_instance(kind, size, seed, measure_count)), out_path);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
