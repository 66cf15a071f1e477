#pragma once

#include <map>
#include <string>
#include <variant>

#include "lot/errors.hpp"
#include "lot/measure.hpp"
#include "lot/spacetime.hpp"

namespace lot {

using AnyModel = std::variant<MinkowskiModel, CausalGraphModel>;

inline std::size_t event_count(const AnyModel& model) {
  return std::visit([](const auto& m) { return m.event_count(); }, model);
}

/// A model plus a set of labelled measures on it; the unit of CLI I/O.
struct Instance {
  AnyModel model;
  std::map<std::string, DiscreteMeasure> measures;

  const DiscreteMeasure& measure(const std::string& label) const {
    auto it = measures.find(label);
    if (it == measures.end()) throw InputError("instance: no measure labelled '" + label + "'");
    return it->second;
  }
};

}  // namespace lot
