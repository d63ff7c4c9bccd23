#pragma once

#include "spinent/error.hpp"
#include "spinent/spectra.hpp"

#include <Eigen/Core>

#include <cmath>
#include <string>

namespace spinent {

enum class Statistics { Bose, Fermi };

/// eta in the commutation relations: +1 for bosons, -1 for fermions.
constexpr int statistics_sign(Statistics s) { return s == Statistics::Bose ? 1 : -1; }

enum class Spin { Up, Down };

/// sigma in epsilon - sigma H.
constexpr double spin_projection(Spin s) { return s == Spin::Up ? 0.5 : -0.5; }

/// Grand-canonical control parameters, k_B = 1.
struct GasParameters {
  Statistics statistics = Statistics::Fermi;
  double temperature = 1.0;
  double chemical_potential = 1.0;
  double field = 0.0;

  static GasParameters fermi(double temperature, double chemical_potential, double field = 0.0) {
    return {Statistics::Fermi, temperature, chemical_potential, field};
  }

  /// Bose gas at fugacity z measured from the bottom of the spectrum:
  /// mu = lowest_energy + T ln z.
  static GasParameters bose(double fugacity, double temperature, double field,
                            double lowest_energy) {
    return {Statistics::Bose, temperature, lowest_energy + temperature * std::log(fugacity),
            field};
  }

  double beta() const { return 1.0 / temperature; }
};

/// Occupations beyond this |beta (e - sigma H - mu)| saturate.
inline constexpr double kExponentLimit = 700.0;

/// Relative margin to the Bose condensation point below which parameters
/// are rejected.
inline constexpr double kBoseFugacityGuard = 1e-12;

/*!
 * Mean occupation 1 / (e^x - eta) as a function of x = beta (e - sigma H - mu).
 *
 * Saturates to 0 for x > 700 (both statistics) and to 1 for x < -700
 * (fermions). Throws DomainError for bosons with x <= 0.
 */
template <typename Scalar>
Scalar occupation_from_exponent(Scalar x, Statistics statistics);

/// 1 + eta n, evaluated without cancellation (for fermions 1 - n_F(x) = n_F(-x)).
template <typename Scalar>
Scalar occupation_complement_from_exponent(Scalar x, Statistics statistics);

double occupation(double energy, const GasParameters& params, Spin spin);

/// Throws DomainError unless T > 0 and all inputs are finite.
void validate_parameters(const GasParameters& params);

/// n_{alpha sigma} over a level set.
struct OccupationTable {
  Statistics statistics = Statistics::Fermi;
  Eigen::ArrayXd energy;
  Eigen::ArrayXd weight;
  Eigen::ArrayXd up;
  Eigen::ArrayXd down;
  // 1 + eta n per level and spin, computed directly rather than from n.
  Eigen::ArrayXd up_complement;
  Eigen::ArrayXd down_complement;

  Eigen::Index size() const { return energy.size(); }
};

/*!
 * Fills the adaptive fields of a model for the given parameters.
 *
 * Continuum: cutoff max(mu, 0) + |H|/2 + 40 T, panel breaks at the Fermi
 * edges mu -/+ |H|/2. Trap: n_max is the first shell whose occupation drops
 * below 1e-12 for both spins, never less than 2 mu / hbar_omega. Explicit
 * fields are left alone.
 */
SpectrumModel resolve_model(const SpectrumModel& model, const GasParameters& params);

OccupationTable build_occupation_table(const SpectrumModel& model, const GasParameters& params);

/// Same, over an already enumerated level set.
OccupationTable build_occupation_table(const LevelSet& levels, double lowest_energy,
                                       const GasParameters& params);

struct NumberSummary {
  double mean_N = 0.0;
  double mean_N_up = 0.0;
  double mean_N_down = 0.0;
  double polarization = 0.0;
};

NumberSummary total_number(const OccupationTable& table);

struct FieldSolveOptions {
  double tolerance = 1e-8;
  int max_iterations = 200;
  int max_doublings = 200;
};

/*!
 * Zeeman field H >= 0 at which the Fermi gas reaches polarization
 * `target` at fixed T and mu.
 *
 * P(H) is nondecreasing with P(0) = 0, so the bracket [0, H_hi] is grown by
 * doubling and then bisected until |P(H) - target| < tolerance. The field
 * stored in `params` is ignored.
 */
double solve_field_for_polarization(const SpectrumModel& model, const GasParameters& params,
                                    double target, const FieldSolveOptions& options = {});

// ---------------------------------------------------------------------------

template <typename Scalar>
Scalar occupation_from_exponent(Scalar x, Statistics statistics) {
  using std::exp;
  using std::expm1;
  if (statistics == Statistics::Fermi) {
    if (x > Scalar(kExponentLimit)) return Scalar(0);
    if (x < Scalar(-kExponentLimit)) return Scalar(1);
    return Scalar(1) / (exp(x) + Scalar(1));
  }
  if (!(x > Scalar(0)))
    throw DomainError("Bose occupation diverges: beta(e - sigma H - mu) = " +
                      std::to_string(static_cast<double>(x)) + " <= 0");
  if (x > Scalar(kExponentLimit)) return Scalar(0);
  return Scalar(1) / expm1(x);
}

template <typename Scalar>
Scalar occupation_complement_from_exponent(Scalar x, Statistics statistics) {
  if (statistics == Statistics::Fermi) return occupation_from_exponent(-x, statistics);
  return Scalar(1) + occupation_from_exponent(x, statistics);
}

}  // namespace spinent
