#pragma once

#include <Eigen/Core>

#include <cmath>
#include <numbers>
#include <optional>
#include <variant>
#include <vector>

namespace spinent {

/// Default energy unit of the free-space grid, as a fraction of the chemical
/// potential. Puts the Fermi surface at |n| ~ 5.5 and the band edge at 7.5 mu.
inline constexpr double kDefaultGridEnergyUnit = 1.0 / 30.0;

/// Periodic box with integer momenta n_i in [-half_width, half_width).
/// Energies are energy_unit * |n|^2.
struct FreeSpaceGrid {
  int half_width = 15;
  double energy_unit = kDefaultGridEnergyUnit;
};

/// Thermodynamic-limit free gas: density of states dos_prefactor * sqrt(e)
/// on [0, cutoff], integrated with Gauss-Legendre panels in u = sqrt(e).
///
/// The default prefactor 2 pi / energy_unit^{3/2} is the state density of the
/// default FreeSpaceGrid, so particle numbers of the two variants agree.
/// Panel boundaries are placed at every entry of `breakpoints` inside
/// (0, cutoff). A missing cutoff is filled in per temperature and field by
/// resolve_model().
struct FreeSpaceContinuum {
  std::optional<double> cutoff;
  int order = 64;
  double dos_prefactor = 2.0 * std::numbers::pi / std::pow(kDefaultGridEnergyUnit, 1.5);
  std::vector<double> breakpoints;
};

/// Isotropic 3D harmonic oscillator, shells n = 0..n_max at
/// hbar_omega * (n + 3/2) with degeneracy (n+1)(n+2)/2. A missing n_max is
/// chosen adaptively by resolve_model().
struct HarmonicTrap {
  double hbar_omega = 1.0 / 30.0;
  std::optional<int> n_max;
};

/// Nearest-neighbour tight-binding band on an L x L periodic square lattice.
struct LatticeDispersion {
  int L = 64;
  double hopping = 1.0;
};

using SpectrumModel =
    std::variant<FreeSpaceGrid, FreeSpaceContinuum, HarmonicTrap, LatticeDispersion>;

/// Single-particle levels. `weight` is the integer degeneracy for discrete
/// spectra and the quadrature weight (times DOS) for the continuum.
struct LevelSet {
  Eigen::ArrayXd energy;
  Eigen::ArrayXd weight;

  Eigen::Index size() const { return energy.size(); }
};

/// Tight-binding dispersion -2J (cos kx + cos ky).
template <typename Scalar>
Scalar lattice_dispersion(Scalar kx, Scalar ky, Scalar hopping) {
  using std::cos;
  return Scalar(-2) * hopping * (cos(kx) + cos(ky));
}

/// Wavevector component 2 pi m / L folded into [-pi, pi).
inline double lattice_momentum(int m, int L) {
  const int folded = m >= L / 2 ? m - L : m;
  return 2.0 * std::numbers::pi * folded / L;
}

/// Enumerates levels in ascending energy, ties in lexicographic order of
/// the quantum numbers. Throws DomainError on invalid model fields and
/// PreconditionError when an adaptive field is still unset.
LevelSet enumerate_levels(const SpectrumModel& model);

/// Lower edge of the spectrum (band bottom for the continuum, which is not
/// itself a quadrature node).
double lowest_energy(const SpectrumModel& model);

/// Throws DomainError if the model's explicit fields are invalid.
void validate_model(const SpectrumModel& model);

const char* model_name(const SpectrumModel& model);

}  // namespace spinent
