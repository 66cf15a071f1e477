#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lot/instance.hpp"
#include "lot/measure.hpp"
#include "lot/rational.hpp"
#include "lot/spacetime.hpp"

namespace lot {

/// Deterministic random source for instance generation. All draws go through
/// fixed integer/dyadic constructions so output is identical across platforms
/// for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Random DAG on n events: edges i -> j only for i < j, so the model always
/// classifies causal. Roughly half the edges are timelike with small rational
/// weights, the rest null.
inline CausalGraphModel random_dag(Rng& rng, std::size_t n, double edge_probability = 0.3) {
  std::vector<GraphEdge> edges;
  for (EventId i = 0; i + 1 < n; ++i) {
    for (EventId j = i + 1; j < n; ++j) {
      if (!rng.chance(edge_probability)) continue;
      GraphEdge e;
      e.src = i;
      e.dst = j;
      if (rng.chance(0.5)) {
        e.kind = EdgeKind::Timelike;
        const std::uint64_t numerator = 1 + rng.below(8);
        const std::uint64_t denominator = 1 + rng.below(4);
        e.weight = Rational(numerator, denominator);
      } else {
        e.kind = EdgeKind::Null;
        e.weight = Rational(0);
      }
      edges.push_back(std::move(e));
    }
  }
  return CausalGraphModel(n, std::move(edges));
}

/// Uniform point cloud in the box t in [0, size], x_i in [-size/2, size/2].
inline MinkowskiModel random_minkowski(Rng& rng, std::size_t n, int spatial_dim, double size) {
  std::vector<std::vector<double>> coords;
  coords.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(1 + spatial_dim);
    row[0] = rng.unit() * size;
    for (int d = 1; d <= spatial_dim; ++d) row[d] = (rng.unit() - 0.5) * size;
    coords.push_back(std::move(row));
  }
  return MinkowskiModel(spatial_dim, std::move(coords));
}

/// Random measure with support of up to max_support events and exact weights
/// w_i / W for small random integers w_i.
inline DiscreteMeasure random_measure(Rng& rng, std::size_t event_count,
                                      std::size_t max_support) {
  const std::size_t size = 1 + rng.below(std::min(max_support, event_count));
  std::set<EventId> support;
  while (support.size() < size) {
    support.insert(static_cast<EventId>(rng.below(event_count)));
  }
  std::vector<std::uint64_t> raw;
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    raw.push_back(1 + rng.below(9));
    total += raw.back();
  }
  std::vector<DiscreteMeasure::Atom> atoms;
  std::size_t i = 0;
  for (EventId id : support) atoms.push_back({id, Rational(raw[i++], total)});
  return DiscreteMeasure::from_atoms(std::move(atoms));
}

/// Causal chain mu1 <= mu2 <= mu3: the outer measures are pushforwards of the
/// middle one along maps into the past resp. future of each atom, which are
/// causal couplings by construction.
template <CausalModel M>
std::array<DiscreteMeasure, 3> causal_chain(Rng& rng, const M& model,
                                            const DiscreteMeasure& middle) {
  auto shift = [&](bool to_future) {
    std::map<EventId, EventId> f;
    for (const auto& [id, w] : middle.atoms()) {
      const EventId ids[1] = {id};
      std::vector<EventId> cone = to_future ? model.future_of(ids) : model.past_of(ids);
      f[id] = cone[rng.below(cone.size())];
    }
    return f;
  };
  DiscreteMeasure lower = pushforward(shift(false), middle);
  DiscreteMeasure upper = pushforward(shift(true), middle);
  return {std::move(lower), middle, std::move(upper)};
}

template <CausalModel M>
std::array<DiscreteMeasure, 3> causal_chain(Rng& rng, const M& model, std::size_t max_support) {
  return causal_chain(rng, model, random_measure(rng, model.event_count(), max_support));
}

// ---------------------------------------------------------------------------
// Demo scenarios
// ---------------------------------------------------------------------------

/// Hegerfeldt scenario in 1+1 Minkowski space: mu uniform on the slab t = 0,
/// |x| <= 1; nu at t = 1 with `leak` mass far outside the causal shadow of
/// supp mu. Any positive leak makes the pair infeasible with certificate
/// F = J+(supp mu); leak 0 is feasible.
inline Instance demo_hegerfeldt(const Rational& leak) {
  if (leak < 0 || leak > 1) throw InputError("hegerfeldt: leak mass must lie in [0, 1]");
  MinkowskiModel model(1, {{0.0, -1.0}, {0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {1.0, 10.0}});
  Instance inst{std::move(model), {}};
  inst.measures.emplace("mu", DiscreteMeasure::from_atoms({{0, Rational(1, 3)},
                                                           {1, Rational(1, 3)},
                                                           {2, Rational(1, 3)}}));
  inst.measures.emplace(
      "nu", DiscreteMeasure::from_atoms({{3, Rational(1) - leak}, {4, leak}}));
  return inst;
}

/// Truncation of the paper's divergent example: mu a Dirac at the origin, nu
/// geometric mass 2^-i at (2^(i/s), 0) for i = 1..terms, renormalized. For
/// s = 1 the distance is terms / (1 - 2^-terms), growing without bound.
inline Instance demo_geometric(int terms, double s = 1.0) {
  if (terms < 1 || terms > 62) throw InputError("geometric: terms must lie in [1, 62]");
  if (!(s > 0.0 && s <= 1.0)) throw InputError("geometric: s must lie in (0, 1]");
  std::vector<std::vector<double>> coords{{0.0, 0.0}};
  for (int i = 1; i <= terms; ++i) {
    coords.push_back({std::pow(2.0, static_cast<double>(i) / s), 0.0});
  }
  Instance inst{MinkowskiModel(1, std::move(coords)), {}};
  inst.measures.emplace("mu", dirac(0));

  const Rational norm = Rational(1) - Rational(BigInt(1), BigInt(1) << terms);
  std::vector<DiscreteMeasure::Atom> atoms;
  for (int i = 1; i <= terms; ++i) {
    atoms.push_back({static_cast<EventId>(i), Rational(BigInt(1), BigInt(1) << i) / norm});
  }
  inst.measures.emplace("nu", DiscreteMeasure::from_atoms(std::move(atoms)));
  return inst;
}

/// Random point cloud in the causal diamond between (0,0) and (1,0), with mu
/// uniform on the earlier half of the points and nu on the later half.
inline Instance demo_diamond(std::size_t count, std::uint64_t seed) {
  if (count < 2) throw InputError("diamond: need at least 2 points");
  Rng rng(seed);
  std::vector<std::vector<double>> coords;
  while (coords.size() < count) {
    const double t = rng.unit();
    const double x = rng.unit() - 0.5;
    if (t >= std::abs(x) && 1.0 - t >= std::abs(x)) coords.push_back({t, x});
  }

  std::vector<EventId> ids(count);
  std::iota(ids.begin(), ids.end(), 0);
  std::sort(ids.begin(), ids.end(),
            [&](EventId a, EventId b) { return coords[a][0] < coords[b][0]; });
  const std::size_t half = count / 2;

  Instance inst{MinkowskiModel(1, std::move(coords)), {}};
  std::vector<DiscreteMeasure::Atom> lower, upper;
  for (std::size_t i = 0; i < half; ++i) lower.push_back({ids[i], Rational(1, half)});
  for (std::size_t i = half; i < count; ++i) upper.push_back({ids[i], Rational(1, count - half)});
  inst.measures.emplace("mu", DiscreteMeasure::from_atoms(std::move(lower)));
  inst.measures.emplace("nu", DiscreteMeasure::from_atoms(std::move(upper)));
  return inst;
}

/// Seeded random instance for fuzzing: a model plus `measure_count` random
/// measures labelled mu0, mu1, ...
inline Instance gen_instance(const std::string& kind, std::size_t size, std::uint64_t seed,
                             std::size_t measure_count = 3) {
  if (size < 1) throw InputError("gen: size must be >= 1");
  Rng rng(seed);
  Instance inst{[&]() -> AnyModel {
                  if (kind == "graph") return random_dag(rng, size);
                  if (kind == "minkowski") return random_minkowski(rng, size, 1, 10.0);
                  throw InputError("gen: model kind must be 'graph' or 'minkowski', got '" +
                                   kind + "'");
                }(),
                {}};
  for (std::size_t i = 0; i < measure_count; ++i) {
    inst.measures.emplace("mu" + std::to_string(i),
                          random_measure(rng, size, std::min<std::size_t>(size, 6)));
  }
  return inst;
}

}  // namespace lot
