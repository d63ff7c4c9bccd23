#pragma once

#include "spinent/occupancy.hpp"
#include "spinent/spectra.hpp"

#include <Eigen/Core>

#include <array>
#include <span>
#include <vector>

namespace spinent {

/// First and second moments of the collective spin J and of N.
template <typename Scalar>
struct BasicSpinMoments {
  Scalar mean_N{0};
  Scalar mean_Jz{0};
  Scalar var_Jx{0};
  Scalar var_Jy{0};
  Scalar var_Jz{0};
  Scalar var_N{0};
  Scalar polarization{0};

  Scalar total_variance() const { return var_Jx + var_Jy + var_Jz; }
};

using SpinMoments = BasicSpinMoments<double>;

/*!
 * Wick-theorem variances of the collective spin of an ideal gas.
 *
 * With c = 1 + eta n,
 *   Var(J^z)     = 1/4 sum_a w_a (n_up c_up + n_dn c_dn)
 *   Var(J^{x,y}) = 1/4 sum_a w_a (n_up c_dn + n_dn c_up)
 *   Var(N)       =     sum_a w_a (n_up c_up + n_dn c_dn)
 * which expand to <N>/4 + eta/4 sum (n_up^2 + n_dn^2) and
 * <N>/4 + eta/2 sum n_up n_dn. Every term is nonnegative, so there is no
 * cancellation when the gas is nearly frozen.
 */
template <typename DW, typename DU, typename DD, typename DUC, typename DDC>
BasicSpinMoments<typename DW::Scalar> collective_variances(
    const Eigen::ArrayBase<DW>& weight, const Eigen::ArrayBase<DU>& up,
    const Eigen::ArrayBase<DD>& down, const Eigen::ArrayBase<DUC>& up_complement,
    const Eigen::ArrayBase<DDC>& down_complement) {
  using Scalar = typename DW::Scalar;
  BasicSpinMoments<Scalar> m;
  const Scalar n_up = (weight * up).sum();
  const Scalar n_down = (weight * down).sum();
  const Scalar same = (weight * (up * up_complement + down * down_complement)).sum();
  const Scalar cross = (weight * (up * down_complement + down * up_complement)).sum();
  m.mean_N = n_up + n_down;
  m.mean_Jz = Scalar(0.5) * (n_up - n_down);
  m.var_Jz = Scalar(0.25) * same;
  m.var_Jx = Scalar(0.25) * cross;
  m.var_Jy = m.var_Jx;
  m.var_N = same;
  m.polarization = m.mean_N > Scalar(0) ? (n_up - n_down) / m.mean_N : Scalar(0);
  return m;
}

SpinMoments collective_variances(const OccupationTable& table);

/// Checks that `statistics` matches the table before evaluating.
SpinMoments collective_variances(const OccupationTable& table, Statistics statistics);

/// xi_s^2 = 2 sum_mu Var(J^mu) / <N>.
double singlet_parameter(const SpinMoments& moments);

/// f_s = 1 - xi_s^2. Negative values are returned as-is.
double singlet_fraction(const SpinMoments& moments);

enum class Axis { X, Y, Z };

enum class Evaluation { Exact, MeanN };

const char* axis_name(Axis axis);

/// One separability inequality lhs >= rhs. For the permutation-dependent
/// inequalities `axis` is the binding choice (mu_1 for the second, mu_3 for
/// the third); the first ignores it.
struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = true;
  Evaluation evaluation = Evaluation::Exact;
  Axis axis = Axis::X;

  double margin() const { return lhs - rhs; }
};

struct WitnessReport {
  // [0]: sum of variances >= <N>/2
  // [1]: Var(J^mu1) >= <((J^mu2)^2 + (J^mu3)^2)/(N-1)> - <N/(2(N-1))>
  // [2]: Var(J^mu1) + Var(J^mu2) >= <(J^mu3)^2/(N-1)> + <N(N-2)/(4(N-1))>
  std::array<InequalityCheck, 3> inequalities;
  double xi_s2 = 0.0;
  double singlet_fraction = 0.0;
  bool entanglement_witnessed = false;
};

/*!
 * Evaluates the three variance inequalities obeyed by separable states with
 * fluctuating particle number.
 *
 * The first is exact. The other two contain <f(N) (J^mu)^2> terms. They are
 * rewritten with the identity (J^mu)^2 = N^2/4 - R_mu, R_mu >= 0 in every
 * N sector, which gives rhs_2 = <N>/2 - <(R_mu2 + R_mu3)/(N-1)> and
 * rhs_3 = <N>/2 - <R_mu3/(N-1)>. The remaining 1/(N-1) is replaced by
 * 1/(<N>-1) with <R_mu> = (<N>^2 + Var N)/4 - <(J^mu)^2>, and the
 * checks are flagged Evaluation::MeanN. Applying the substitution only to
 * the nonnegative remainder keeps the fixed-N bound |J^mu| <= N/2 intact.
 *
 * Throws PreconditionError unless <N> > 2.
 */
WitnessReport witness_report(const SpinMoments& moments);

/// Assembles the three checks from moments plus the N-weighted expectations
/// <(J^mu)^2/(N-1)>, <N/(2(N-1))>, <N(N-2)/(4(N-1))>. Shared by the
/// mean-N report and the exact enumeration.
struct NumberWeightedTerms {
  std::array<double, 3> j2_over_n_minus_1{};  // x, y, z
  double n_over_2_n_minus_1 = 0.0;
  double n_n_minus_2_over_4_n_minus_1 = 0.0;
};

std::array<InequalityCheck, 3> evaluate_inequalities(const SpinMoments& moments,
                                                     const NumberWeightedTerms& terms,
                                                     Evaluation evaluation);

/// The N-weighted terms under the mean-N substitution used by witness_report.
/// Throws PreconditionError unless <N> > 2.
NumberWeightedTerms mean_n_terms(const SpinMoments& moments);

// --- sweeps ---------------------------------------------------------------

struct SweepPoint {
  double temperature = 0.0;
  double polarization = 0.0;
  double field = 0.0;
  SpinMoments moments;
  double singlet_fraction = 0.0;
  bool witnessed = false;
};

/// Fermi gas at T, target polarization P and chemical potential mu.
SweepPoint singlet_point(const SpectrumModel& model, double temperature, double polarization,
                         double chemical_potential = 1.0);

/// f_s on the (T, P) grid, T outer and P inner, ordered by input index.
std::vector<SweepPoint> singlet_fraction_sweep(const SpectrumModel& model,
                                               std::span<const double> temperatures,
                                               std::span<const double> polarizations,
                                               double chemical_potential = 1.0);

struct ThresholdOptions {
  double tolerance = 1e-6;  // in units of mu
  int max_iterations = 200;
};

/// Temperature where f_s(T, P) crosses zero inside [t_lo, t_hi]. Requires
/// f_s(t_lo) > 0 > f_s(t_hi), otherwise throws BracketError.
double find_threshold(const SpectrumModel& model, double polarization, double t_lo, double t_hi,
                      double chemical_potential = 1.0, const ThresholdOptions& options = {});

}  // namespace spinent
