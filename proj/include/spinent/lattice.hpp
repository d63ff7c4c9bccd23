#pragma once

#include <Eigen/Core>

namespace spinent {

/// Balanced spin-1/2 tight-binding gas on an L x L periodic square lattice.
struct LatticeGas {
  int L = 64;
  double temperature = 1e-3;  // in units of the hopping; ~0 without exact-degeneracy bookkeeping
  double chemical_potential = 0.0;
  double hopping = 1.0;
};

/// <S^z_0 S^z_r>, indexed by the displacement r = (x, y) mod L.
struct CorrelationMap {
  int L = 0;
  Eigen::MatrixXd values;

  double onsite() const { return values(0, 0); }
};

/// S(k) on k = 2 pi (mx, my) / L, mx, my = 0..L-1; (pi, pi) sits at (L/2, L/2).
struct StructureFactor {
  int L = 0;
  Eigen::MatrixXd values;

  double at_zero() const { return values(0, 0); }
  double at_pi_pi() const { return values(L / 2, L / 2); }
};

struct StaggeredQfi {
  double qfi = 0.0;
  double density = 0.0;
  bool witnessed = false;
};

/// Throws DomainError for odd or nonpositive L, T <= 0 or non-finite inputs.
void validate_lattice(const LatticeGas& gas);

/// Fermi occupation n_k per spin on the k grid, entry (mx, my).
Eigen::MatrixXd momentum_occupation(const LatticeGas& gas);

/// G(r) = <a^dag_0 a_r> = L^-2 sum_k e^{-i k r} n_k per spin. G(0) is the
/// filling per spin.
Eigen::MatrixXd first_order_correlation(const LatticeGas& gas);

/// Onsite 1/4 sum_sigma n(1-n), offsite -1/4 sum_sigma |G(r)|^2.
CorrelationMap spin_correlation_map(const LatticeGas& gas);

/// S(k) = sum_r e^{i k r} <S^z_0 S^z_r> (translation invariance folds the
/// L^-2 double sum over sites into one sum over displacements).
StructureFactor structure_factor(const CorrelationMap& map);

/*!
 * Same structure factor, computed in momentum space instead of through the
 * real-space map:
 *   S(q) = C(0) + G(0)^2/2 - 1/(2 L^2) sum_k n_k n_{q-k}.
 */
StructureFactor structure_factor_convolution(const LatticeGas& gas);

/// QFI of the staggered magnetization, 4 L^2 S(pi, pi); witnesses spatial
/// multipartite entanglement when the density 4 S(pi, pi) exceeds 1.
StaggeredQfi qfi_staggered(const StructureFactor& sf);

}  // namespace spinent
