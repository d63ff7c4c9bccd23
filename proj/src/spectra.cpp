#include "spinent/spectra.hpp"

#include "spinent/detail/overloaded.hpp"
#include "spinent/error.hpp"
#include "spinent/quadrature.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <string>

namespace spinent {
namespace {

using detail::Overloaded;

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

LevelSet grid_levels(const FreeSpaceGrid& grid) {
  const int hw = grid.half_width;
  const int side = 2 * hw;
  struct Key {
    int n2;
    std::array<int, 3> n;
  };
  std::vector<Key> keys;
  keys.reserve(static_cast<std::size_t>(side) * side * side);
  for (int x = -hw; x < hw; ++x)
    for (int y = -hw; y < hw; ++y)
      for (int z = -hw; z < hw; ++z) keys.push_back({x * x + y * y + z * z, {x, y, z}});
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    return a.n2 != b.n2 ? a.n2 < b.n2 : a.n < b.n;
  });

  LevelSet levels;
  levels.energy.resize(static_cast<Eigen::Index>(keys.size()));
  levels.weight = Eigen::ArrayXd::Ones(levels.energy.size());
  for (std::size_t i = 0; i < keys.size(); ++i)
    levels.energy[static_cast<Eigen::Index>(i)] = grid.energy_unit * keys[i].n2;
  return levels;
}

// Sweeps rebuild the continuum levels for every field and temperature; the
// reference rule only depends on the order.
const QuadratureRule<double>& cached_rule(int order) {
  thread_local std::map<int, QuadratureRule<double>> cache;
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, gauss_legendre<double>(order)).first;
  return it->second;
}

LevelSet continuum_levels(const FreeSpaceContinuum& c) {
  const double cutoff = *c.cutoff;
  std::vector<double> edges{0.0};
  for (double b : c.breakpoints)
    if (b > 0.0 && b < cutoff) edges.push_back(std::sqrt(b));
  edges.push_back(std::sqrt(cutoff));
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  const auto& ref = cached_rule(c.order);
  const auto panels = static_cast<Eigen::Index>(edges.size() - 1);
  LevelSet levels;
  levels.energy.resize(panels * c.order);
  levels.weight.resize(panels * c.order);
  for (Eigen::Index p = 0; p < panels; ++p) {
    const auto rule = on_interval(ref, edges[p], edges[p + 1]);
    // e = u^2, sqrt(e) de = 2 u^2 du
    levels.energy.segment(p * c.order, c.order) = rule.nodes.square();
    levels.weight.segment(p * c.order, c.order) =
        c.dos_prefactor * 2.0 * rule.nodes.square() * rule.weights;
  }
  return levels;
}

LevelSet trap_levels(const HarmonicTrap& trap) {
  const int shells = *trap.n_max + 1;
  LevelSet levels;
  levels.energy.resize(shells);
  levels.weight.resize(shells);
  for (int n = 0; n < shells; ++n) {
    levels.energy[n] = trap.hbar_omega * (n + 1.5);
    levels.weight[n] = 0.5 * (n + 1.0) * (n + 2.0);
  }
  return levels;
}

LevelSet lattice_levels(const LatticeDispersion& lat) {
  const int L = lat.L;
  std::vector<double> energy(static_cast<std::size_t>(L) * L);
  for (int mx = 0; mx < L; ++mx)
    for (int my = 0; my < L; ++my)
      energy[static_cast<std::size_t>(mx) * L + my] =
          lattice_dispersion(lattice_momentum(mx, L), lattice_momentum(my, L), lat.hopping);

  std::vector<std::size_t> order(energy.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return energy[a] < energy[b]; });

  LevelSet levels;
  levels.energy.resize(static_cast<Eigen::Index>(energy.size()));
  levels.weight = Eigen::ArrayXd::Ones(levels.energy.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    levels.energy[static_cast<Eigen::Index>(i)] = energy[order[i]];
  return levels;
}

}  // namespace

void validate_model(const SpectrumModel& model) {
  std::visit(Overloaded{
                 [](const FreeSpaceGrid& g) {
                   require(g.half_width > 0, "grid half-width must be positive");
                   require(std::isfinite(g.energy_unit) && g.energy_unit > 0,
                           "grid energy unit must be positive");
                 },
                 [](const FreeSpaceContinuum& c) {
                   require(c.order >= 1, "quadrature order must be >= 1");
                   require(std::isfinite(c.dos_prefactor) && c.dos_prefactor > 0,
                           "DOS prefactor must be positive");
                   if (c.cutoff)
                     require(std::isfinite(*c.cutoff) && *c.cutoff > 0,
                             "continuum cutoff must be positive");
                 },
                 [](const HarmonicTrap& t) {
                   require(std::isfinite(t.hbar_omega) && t.hbar_omega > 0,
                           "trap level spacing must be positive");
                   if (t.n_max) require(*t.n_max >= 0, "trap n_max must be >= 0");
                 },
                 [](const LatticeDispersion& l) {
                   require(l.L > 0 && l.L % 2 == 0, "lattice size must be a positive even integer");
                   require(std::isfinite(l.hopping), "hopping must be finite");
                 },
             },
             model);
}

LevelSet enumerate_levels(const SpectrumModel& model) {
  validate_model(model);
  return std::visit(
      Overloaded{
          [](const FreeSpaceGrid& g) { return grid_levels(g); },
          [](const FreeSpaceContinuum& c) {
            if (!c.cutoff) throw PreconditionError("continuum cutoff unset; call resolve_model");
            return continuum_levels(c);
          },
          [](const HarmonicTrap& t) {
            if (!t.n_max) throw PreconditionError("trap n_max unset; call resolve_model");
            return trap_levels(t);
          },
          [](const LatticeDispersion& l) { return lattice_levels(l); },
      },
      model);
}

double lowest_energy(const SpectrumModel& model) {
  return std::visit(Overloaded{
                        [](const FreeSpaceGrid&) { return 0.0; },
                        [](const FreeSpaceContinuum&) { return 0.0; },
                        [](const HarmonicTrap& t) { return 1.5 * t.hbar_omega; },
                        [](const LatticeDispersion& l) { return -4.0 * std::abs(l.hopping); },
                    },
                    model);
}

const char* model_name(const SpectrumModel& model) {
  return std::visit(Overloaded{
                        [](const FreeSpaceGrid&) { return "grid"; },
                        [](const FreeSpaceContinuum&) { return "continuum"; },
                        [](const HarmonicTrap&) { return "trap"; },
                        [](const LatticeDispersion&) { return "lattice"; },
                    },
                    model);
}

}  // namespace spinent
