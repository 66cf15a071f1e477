#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lot/characterize.hpp"
#include "lot/errors.hpp"
#include "lot/instance.hpp"
#include "lot/measure.hpp"
#include "lot/spacetime.hpp"
#include "lot/transport.hpp"

namespace lot {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Models
//
// {"type":"minkowski","spatial_dim":d,"events":[[t,x1,...],...]}
// {"type":"graph","n":N,"edges":[[src,dst,"weight","timelike"|"null"],...]}
// ---------------------------------------------------------------------------

inline AnyModel parse_model(const json& doc) {
  if (!doc.is_object() || !doc.contains("type")) {
    throw InputError("model document: expected an object with a 'type' field");
  }
  const std::string type = doc.at("type").get<std::string>();
  if (type == "minkowski") {
    const int spatial_dim = doc.at("spatial_dim").get<int>();
    std::vector<std::vector<double>> events;
    for (const auto& row : doc.at("events")) {
      events.push_back(row.get<std::vector<double>>());
    }
    return MinkowskiModel(spatial_dim, std::move(events));
  }
  if (type == "graph") {
    const std::size_t n = doc.at("n").get<std::size_t>();
    std::vector<GraphEdge> edges;
    for (const auto& row : doc.at("edges")) {
      if (!row.is_array() || row.size() != 4) {
        throw InputError("graph edge: expected [src, dst, weight-string, kind]");
      }
      GraphEdge e;
      e.src = row[0].get<EventId>();
      e.dst = row[1].get<EventId>();
      e.weight = parse_rational(row[2].get<std::string>());
      const std::string kind = row[3].get<std::string>();
      if (kind == "timelike") {
        e.kind = EdgeKind::Timelike;
      } else if (kind == "null") {
        e.kind = EdgeKind::Null;
      } else {
        throw InputError("graph edge: kind must be 'timelike' or 'null', got '" + kind + "'");
      }
      edges.push_back(std::move(e));
    }
    return CausalGraphModel(n, std::move(edges));
  }
  throw InputError("model document: unknown type '" + type + "'");
}

inline json serialize_model(const AnyModel& model) {
  json doc;
  if (const auto* mink = std::get_if<MinkowskiModel>(&model)) {
    doc["type"] = "minkowski";
    doc["spatial_dim"] = mink->spatial_dim();
    doc["events"] = json::array();
    for (const auto& row : mink->all_coords()) doc["events"].push_back(row);
  } else {
    const auto& graph = std::get<CausalGraphModel>(model);
    doc["type"] = "graph";
    doc["n"] = graph.event_count();
    doc["edges"] = json::array();
    for (const auto& e : graph.edges()) {
      doc["edges"].push_back(json::array({e.src, e.dst, to_fraction_string(e.weight),
                                          e.kind == EdgeKind::Timelike ? "timelike" : "null"}));
    }
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Measures, couplings, instances
// ---------------------------------------------------------------------------

inline DiscreteMeasure parse_measure(const json& doc) {
  std::vector<DiscreteMeasure::Atom> atoms;
  for (const auto& row : doc.at("atoms")) {
    if (!row.is_array() || row.size() != 2) {
      throw InputError("measure atom: expected [event_id, weight-string]");
    }
    atoms.push_back({row[0].get<EventId>(), parse_rational(row[1].get<std::string>())});
  }
  return DiscreteMeasure::from_atoms(std::move(atoms));
}

inline json serialize_measure(const DiscreteMeasure& mu) {
  json atoms = json::array();
  for (const auto& [id, w] : mu.atoms()) atoms.push_back(json::array({id, to_fraction_string(w)}));
  return json{{"atoms", std::move(atoms)}};
}

inline Coupling parse_coupling(const json& doc) {
  std::vector<Coupling::Entry> entries;
  for (const auto& row : doc.at("entries")) {
    if (!row.is_array() || row.size() != 3) {
      throw InputError("coupling entry: expected [p, q, weight-string]");
    }
    entries.push_back(
        {row[0].get<EventId>(), row[1].get<EventId>(), parse_rational(row[2].get<std::string>())});
  }
  return Coupling::from_entries(std::move(entries));
}

inline json serialize_coupling(const Coupling& omega) {
  json entries = json::array();
  for (const auto& [p, q, w] : omega.entries()) {
    entries.push_back(json::array({p, q, to_fraction_string(w)}));
  }
  return json{{"entries", std::move(entries)}};
}

inline Instance parse_instance(const json& doc) {
  Instance inst{parse_model(doc.at("model")), {}};
  const std::size_t n = event_count(inst.model);
  if (doc.contains("measures")) {
    for (const auto& [label, measure_doc] : doc.at("measures").items()) {
      DiscreteMeasure mu = parse_measure(measure_doc);
      for (const auto& [id, w] : mu.atoms()) {
        if (id >= n) {
          throw InputError("instance: measure '" + label + "' references event " +
                           std::to_string(id) + " outside the model");
        }
      }
      inst.measures.emplace(label, std::move(mu));
    }
  }
  return inst;
}

inline json serialize_instance(const Instance& inst) {
  json measures = json::object();
  for (const auto& [label, mu] : inst.measures) measures[label] = serialize_measure(mu);
  return json{{"model", serialize_model(inst.model)}, {"measures", std::move(measures)}};
}

// ---------------------------------------------------------------------------
// Results
// ---------------------------------------------------------------------------

inline json serialize_certificate(const Certificate& cert) {
  return json{{"K", cert.generator},
              {"F", cert.violating_set},
              {"mu_F", to_fraction_string(cert.mu_mass)},
              {"nu_F", to_fraction_string(cert.nu_mass)}};
}

inline json serialize_precedence_result(const PrecedenceResult& result) {
  if (result.feasible()) {
    return json{{"status", "feasible"}, {"coupling", serialize_coupling(*result.coupling)}};
  }
  return json{{"status", "infeasible"}, {"certificate", serialize_certificate(*result.certificate)}};
}

inline json serialize_lw_result(const LWResult& result) {
  json doc{{"lw", result.value.str()}, {"s", result.s}};
  if (result.optimal_coupling) {
    doc["optimal_coupling"] = serialize_coupling(*result.optimal_coupling);
  }
  return doc;
}

inline json serialize_property_report(const PropertyReport& report) {
  json violations = json::array();
  for (const auto& v : report.violations) {
    violations.push_back(json{{"property", v.property}, {"detail", v.detail}});
  }
  return json{{"all_pass", report.all_pass()},
              {"checks",
               {{"reflexivity", report.reflexivity_checks},
                {"transitivity", report.transitivity_checks},
                {"antisymmetry", report.antisymmetry_checks},
                {"time_reversal_duality", report.duality_checks}}},
              {"violations", std::move(violations)}};
}

// ---------------------------------------------------------------------------
// Files
// ---------------------------------------------------------------------------

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
  return doc;
}

inline void write_json_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << doc.dump(2) << "\n";
}

}  // namespace lot
