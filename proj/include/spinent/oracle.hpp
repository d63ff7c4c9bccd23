#pragma once

#include "spinent/occupancy.hpp"
#include "spinent/spinmoments.hpp"

#include <array>
#include <cstddef>
#include <vector>

namespace spinent {

/// Few-mode ideal gas in the grand-canonical ensemble, to be traced exactly
/// over its (truncated) Fock space.
struct FockEnsemble {
  Statistics statistics = Statistics::Fermi;
  std::vector<double> energies;  // one motional mode per entry
  double beta = 1.0;
  double chemical_potential = 0.0;
  double field = 0.0;
  int boson_cutoff = 40;  // max occupation per mode and spin; doubled until converged
};

struct OracleLimits {
  int max_fermion_modes = 6;
  int max_boson_modes = 4;
  double max_states = 5e7;
  double tail_tolerance = 1e-10;
};

struct ExactMoments {
  SpinMoments moments;      // full grand-canonical state
  SpinMoments conditioned;  // restricted to N >= 2 and renormalized
  NumberWeightedTerms terms;  // N-weighted expectations over N >= 2
  double low_sector_weight = 0.0;  // P(N <= 1)
  int boson_cutoff = 0;
  double tail_weight = 0.0;  // max over mode-spins of P(n > cutoff) before truncation
  std::size_t states = 0;
};

/*!
 * Exact moments by enumerating every occupation vector.
 *
 * The density matrix is diagonal in the occupation basis and factorizes over
 * mode-spin slots, so each state's probability is the product of its slot
 * probabilities. J^z and N are diagonal; (J^x)^2 and (J^y)^2 are summed per
 * mode from <(j^x_a)^2> = (n_up + n_dn + 2 eta n_up n_dn)/4 in each state,
 * cross-mode terms having zero diagonal elements.
 *
 * Throws PreconditionError past the size limits, DomainError for Bose modes
 * at or below the chemical potential, ConvergenceError when the boson cutoff
 * cannot be raised far enough within max_states.
 */
ExactMoments exact_moments(const FockEnsemble& ensemble, const OracleLimits& limits = {});

/// Same ensemble through the closed-form Wick-theorem route.
SpinMoments wick_moments(const FockEnsemble& ensemble);

/*!
 * Largest relative deviation between two sets of moments over <N_up>,
 * <N_dn> and the four variances. The spin populations are compared instead of
 * <J^z>, whose relative error is meaningless once the two nearly cancel.
 */
double max_relative_deviation(const SpinMoments& a, const SpinMoments& b);

/// All three inequalities on the N >= 2 sector, no approximation.
std::array<InequalityCheck, 3> exact_inequalities(const ExactMoments& exact);

}  // namespace spinent
