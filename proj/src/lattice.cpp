#include "spinent/lattice.hpp"

#include "spinent/error.hpp"
#include "spinent/occupancy.hpp"
#include "spinent/spectra.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace spinent {
namespace {

constexpr double kImagTolerance = 1e-12;

// F(m, x) = exp(sign * 2 pi i m x / L), phases reduced mod L first.
Eigen::MatrixXcd dft_matrix(int L, int sign) {
  Eigen::MatrixXcd f(L, L);
  for (int m = 0; m < L; ++m)
    for (int x = 0; x < L; ++x) {
      const double phase = sign * 2.0 * std::numbers::pi * ((m * x) % L) / L;
      f(m, x) = std::polar(1.0, phase);
    }
  return f;
}

Eigen::MatrixXd checked_real(const Eigen::MatrixXcd& z, const char* what) {
  const double imag = z.imag().cwiseAbs().maxCoeff();
  if (imag > kImagTolerance)
    throw std::logic_error(std::string(what) + ": imaginary residue " + std::to_string(imag));
  return z.real();
}

}  // namespace

void validate_lattice(const LatticeGas& gas) {
  validate_model(LatticeDispersion{gas.L, gas.hopping});
  validate_parameters(GasParameters::fermi(gas.temperature, gas.chemical_potential));
}

Eigen::MatrixXd momentum_occupation(const LatticeGas& gas) {
  validate_lattice(gas);
  const GasParameters params = GasParameters::fermi(gas.temperature, gas.chemical_potential);
  Eigen::MatrixXd n(gas.L, gas.L);
  for (int mx = 0; mx < gas.L; ++mx)
    for (int my = 0; my < gas.L; ++my) {
      const double e = lattice_dispersion(lattice_momentum(mx, gas.L), lattice_momentum(my, gas.L),
                                          gas.hopping);
      n(mx, my) = occupation(e, params, Spin::Up);
    }
  return n;
}

Eigen::MatrixXd first_order_correlation(const LatticeGas& gas) {
  const Eigen::MatrixXd n = momentum_occupation(gas);
  const Eigen::MatrixXcd f = dft_matrix(gas.L, -1);
  const Eigen::MatrixXcd g = f.transpose() * n.cast<std::complex<double>>() * f;
  return checked_real(g, "first_order_correlation") / double(gas.L * gas.L);
}

CorrelationMap spin_correlation_map(const LatticeGas& gas) {
  const Eigen::MatrixXd g = first_order_correlation(gas);
  const double filling = g(0, 0);
  CorrelationMap map;
  map.L = gas.L;
  map.values = -0.5 * g.array().square();
  map.values(0, 0) = 0.5 * filling * (1.0 - filling);
  return map;
}

StructureFactor structure_factor(const CorrelationMap& map) {
  if (map.L <= 0 || map.L % 2 != 0 || map.values.rows() != map.L || map.values.cols() != map.L)
    throw DomainError("correlation map must be L x L with even L");
  const Eigen::MatrixXcd f = dft_matrix(map.L, +1);
  const Eigen::MatrixXcd s = f * map.values.cast<std::complex<double>>() * f;
  return {map.L, checked_real(s, "structure_factor")};
}

StructureFactor structure_factor_convolution(const LatticeGas& gas) {
  const Eigen::MatrixXd n = momentum_occupation(gas);
  const int L = gas.L;
  const double filling = n.mean();
  const double onsite = 0.5 * filling * (1.0 - filling);

  StructureFactor sf{L, Eigen::MatrixXd(L, L)};
  for (int qx = 0; qx < L; ++qx)
    for (int qy = 0; qy < L; ++qy) {
      double conv = 0.0;
      for (int kx = 0; kx < L; ++kx) {
        const int px = ((qx - kx) % L + L) % L;
        for (int ky = 0; ky < L; ++ky) conv += n(kx, ky) * n(px, ((qy - ky) % L + L) % L);
      }
      sf.values(qx, qy) = onsite + 0.5 * filling * filling - 0.5 * conv / double(L * L);
    }
  return sf;
}

StaggeredQfi qfi_staggered(const StructureFactor& sf) {
  StaggeredQfi out;
  const double s_pi = sf.at_pi_pi();
  out.qfi = 4.0 * double(sf.L) * double(sf.L) * s_pi;
  out.density = 4.0 * s_pi;
  out.witnessed = out.density > 1.0;
  return out;
}

}  // namespace spinent
