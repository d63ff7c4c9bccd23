#include "spinent/occupancy.hpp"

#include "spinent/detail/overloaded.hpp"
#include "spinent/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace spinent {
namespace {

using detail::Overloaded;

constexpr double kTrapOccupationFloor = 1e-12;
constexpr double kContinuumThermalWidths = 40.0;

int adaptive_trap_shells(const HarmonicTrap& trap, const GasParameters& params) {
  const double mu = params.chemical_potential;
  const int floor_shells = std::max(0, static_cast<int>(std::ceil(2.0 * mu / trap.hbar_omega)));
  // The up branch (for |H|) is the more occupied one; the shell energies rise.
  const GasParameters probe{params.statistics, params.temperature, mu, std::abs(params.field)};
  int n = 0;
  while (occupation(trap.hbar_omega * (n + 1.5), probe, Spin::Up) >= kTrapOccupationFloor) ++n;
  return std::max(n, floor_shells);
}

}  // namespace

void validate_parameters(const GasParameters& params) {
  if (!(std::isfinite(params.temperature) && params.temperature > 0))
    throw DomainError("temperature must be positive and finite");
  if (!std::isfinite(params.chemical_potential))
    throw DomainError("chemical potential must be finite");
  if (!std::isfinite(params.field)) throw DomainError("field must be finite");
}

double occupation(double energy, const GasParameters& params, Spin spin) {
  const double x =
      (energy - spin_projection(spin) * params.field - params.chemical_potential) / params.temperature;
  return occupation_from_exponent(x, params.statistics);
}

SpectrumModel resolve_model(const SpectrumModel& model, const GasParameters& params) {
  validate_model(model);
  validate_parameters(params);
  return std::visit(
      Overloaded{
          [&](const FreeSpaceContinuum& c) -> SpectrumModel {
            if (c.cutoff) return c;
            FreeSpaceContinuum out = c;
            const double half_field = 0.5 * std::abs(params.field);
            const double mu = params.chemical_potential;
            out.cutoff = std::max(mu, 0.0) + half_field + kContinuumThermalWidths * params.temperature;
            if (params.statistics == Statistics::Fermi) {
              out.breakpoints.push_back(mu - half_field);
              out.breakpoints.push_back(mu + half_field);
            }
            return out;
          },
          [&](const HarmonicTrap& t) -> SpectrumModel {
            if (t.n_max) return t;
            HarmonicTrap out = t;
            out.n_max = adaptive_trap_shells(t, params);
            return out;
          },
          [](const auto& other) -> SpectrumModel { return other; },
      },
      model);
}

OccupationTable build_occupation_table(const LevelSet& levels, double lowest,
                                       const GasParameters& params) {
  validate_parameters(params);
  const double beta = params.beta();
  if (params.statistics == Statistics::Bose) {
    // effective fugacity of the more occupied branch at the band bottom
    const double x_min = beta * (lowest - 0.5 * std::abs(params.field) - params.chemical_potential);
    if (!(-std::expm1(-x_min) > kBoseFugacityGuard))
      throw DomainError("Bose fugacity at or beyond condensation: z e^{beta |H|/2} = " +
                        std::to_string(std::exp(-x_min)));
  }

  OccupationTable table;
  table.statistics = params.statistics;
  table.energy = levels.energy;
  table.weight = levels.weight;
  const Eigen::Index n = levels.size();
  table.up.resize(n);
  table.down.resize(n);
  table.up_complement.resize(n);
  table.down_complement.resize(n);
  const double shift_up = spin_projection(Spin::Up) * params.field + params.chemical_potential;
  const double shift_down = spin_projection(Spin::Down) * params.field + params.chemical_potential;
  for (Eigen::Index i = 0; i < n; ++i) {
    try {
      const double x_up = beta * (levels.energy[i] - shift_up);
      const double x_down = beta * (levels.energy[i] - shift_down);
      table.up[i] = occupation_from_exponent(x_up, params.statistics);
      table.down[i] = occupation_from_exponent(x_down, params.statistics);
      table.up_complement[i] = occupation_complement_from_exponent(x_up, params.statistics);
      table.down_complement[i] = occupation_complement_from_exponent(x_down, params.statistics);
    } catch (const Error&) {
      rethrow_with_context("level " + std::to_string(i));
    }
  }
  return table;
}

OccupationTable build_occupation_table(const SpectrumModel& model, const GasParameters& params) {
  const SpectrumModel resolved = resolve_model(model, params);
  return build_occupation_table(enumerate_levels(resolved), lowest_energy(resolved), params);
}

NumberSummary total_number(const OccupationTable& table) {
  NumberSummary s;
  s.mean_N_up = (table.weight * table.up).sum();
  s.mean_N_down = (table.weight * table.down).sum();
  s.mean_N = s.mean_N_up + s.mean_N_down;
  if (!(s.mean_N > 0)) throw DegenerateInputError("mean particle number is zero; P undefined");
  s.polarization = std::clamp((s.mean_N_up - s.mean_N_down) / s.mean_N, -1.0, 1.0);
  return s;
}

double solve_field_for_polarization(const SpectrumModel& model, const GasParameters& params,
                                    double target, const FieldSolveOptions& options) {
  if (params.statistics != Statistics::Fermi)
    throw PreconditionError("polarization solve supports Fermi statistics only");
  if (!(target >= 0.0 && target < 1.0))
    throw PreconditionError("target polarization must lie in [0, 1)");
  validate_parameters(params);
  if (target == 0.0) return 0.0;

  auto polarization_at = [&](double field) {
    GasParameters p = params;
    p.field = field;
    return total_number(build_occupation_table(model, p)).polarization;
  };

  double lo = 0.0;
  double hi = std::max(params.temperature, 1e-3 * std::abs(params.chemical_potential));
  int doublings = 0;
  while (polarization_at(hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (++doublings > options.max_doublings)
      throw ConvergenceError("no field reaches P = " + std::to_string(target) + " after " +
                             std::to_string(options.max_doublings) + " doublings");
  }

  for (int it = 0; it < options.max_iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (!(lo < mid && mid < hi)) break;
    const double p = polarization_at(mid);
    if (std::abs(p - target) < options.tolerance) return mid;
    if (p < target)
      lo = mid;
    else
      hi = mid;
  }
  throw ConvergenceError("field bisection did not reach |P - target| < " +
                         std::to_string(options.tolerance));
}

}  // namespace spinent
