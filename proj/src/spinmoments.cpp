#include "spinent/spinmoments.hpp"

#include "spinent/error.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace spinent {
namespace {

constexpr std::array<Axis, 3> kAxes{Axis::X, Axis::Y, Axis::Z};

std::array<double, 3> variances(const SpinMoments& m) { return {m.var_Jx, m.var_Jy, m.var_Jz}; }

std::string format_point(double t, double p) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "T=%.12g, P=%.12g", t, p);
  return buf;
}

}  // namespace

SpinMoments collective_variances(const OccupationTable& table) {
  return collective_variances(table.weight, table.up, table.down, table.up_complement,
                              table.down_complement);
}

SpinMoments collective_variances(const OccupationTable& table, Statistics statistics) {
  if (table.statistics != statistics)
    throw PreconditionError("statistics sign does not match the occupation table");
  return collective_variances(table);
}

double singlet_parameter(const SpinMoments& moments) {
  if (!(moments.mean_N > 0)) throw DegenerateInputError("xi_s^2 undefined for <N> = 0");
  return 2.0 * moments.total_variance() / moments.mean_N;
}

double singlet_fraction(const SpinMoments& moments) { return 1.0 - singlet_parameter(moments); }

const char* axis_name(Axis axis) {
  switch (axis) {
    case Axis::X:
      return "x";
    case Axis::Y:
      return "y";
    case Axis::Z:
      return "z";
  }
  return "?";
}

std::array<InequalityCheck, 3> evaluate_inequalities(const SpinMoments& moments,
                                                     const NumberWeightedTerms& terms,
                                                     Evaluation evaluation) {
  const auto var = variances(moments);
  std::array<InequalityCheck, 3> out;

  out[0].lhs = moments.total_variance();
  out[0].rhs = 0.5 * moments.mean_N;
  out[0].satisfied = !(2.0 * out[0].lhs / moments.mean_N < 1.0);
  out[0].evaluation = Evaluation::Exact;

  bool first = true;
  for (std::size_t a = 0; a < 3; ++a) {
    const std::size_t b = (a + 1) % 3;
    const std::size_t c = (a + 2) % 3;
    InequalityCheck check;
    check.lhs = var[a];
    check.rhs = terms.j2_over_n_minus_1[b] + terms.j2_over_n_minus_1[c] - terms.n_over_2_n_minus_1;
    check.axis = kAxes[a];
    check.evaluation = evaluation;
    if (first || check.margin() < out[1].margin()) out[1] = check;
    first = false;
  }
  first = true;
  for (std::size_t c = 0; c < 3; ++c) {
    const std::size_t a = (c + 1) % 3;
    const std::size_t b = (c + 2) % 3;
    InequalityCheck check;
    check.lhs = var[a] + var[b];
    check.rhs = terms.j2_over_n_minus_1[c] + terms.n_n_minus_2_over_4_n_minus_1;
    check.axis = kAxes[c];
    check.evaluation = evaluation;
    if (first || check.margin() < out[2].margin()) out[2] = check;
    first = false;
  }
  out[1].satisfied = out[1].lhs >= out[1].rhs;
  out[2].satisfied = out[2].lhs >= out[2].rhs;
  return out;
}

NumberWeightedTerms mean_n_terms(const SpinMoments& m) {
  if (!(m.mean_N > 2.0))
    throw PreconditionError("witness report requires <N> > 2, got " + std::to_string(m.mean_N));

  const double n = m.mean_N;
  // <(J^mu)^2/(N-1)> ~ (<(J^mu)^2> - Var(N)/4) / (<N>-1), i.e.
  // <N^2/(4(N-1))> - <R_mu>/(<N>-1) with <N^2/(4(N-1))> at N = <N>.
  const std::array<double, 3> second{m.var_Jx, m.var_Jy, m.var_Jz + m.mean_Jz * m.mean_Jz};
  NumberWeightedTerms terms;
  for (std::size_t a = 0; a < 3; ++a)
    terms.j2_over_n_minus_1[a] = (second[a] - 0.25 * m.var_N) / (n - 1.0);
  terms.n_over_2_n_minus_1 = n / (2.0 * (n - 1.0));
  terms.n_n_minus_2_over_4_n_minus_1 = n * (n - 2.0) / (4.0 * (n - 1.0));
  return terms;
}

WitnessReport witness_report(const SpinMoments& m) {
  const auto terms = mean_n_terms(m);
  WitnessReport report;
  report.inequalities = evaluate_inequalities(m, terms, Evaluation::MeanN);
  report.xi_s2 = singlet_parameter(m);
  report.singlet_fraction = 1.0 - report.xi_s2;
  report.entanglement_witnessed = report.xi_s2 < 1.0;
  return report;
}

SweepPoint singlet_point(const SpectrumModel& model, double temperature, double polarization,
                         double chemical_potential) {
  const GasParameters base = GasParameters::fermi(temperature, chemical_potential);
  SweepPoint point;
  point.temperature = temperature;
  point.polarization = polarization;
  point.field = solve_field_for_polarization(model, base, polarization);
  GasParameters params = base;
  params.field = point.field;
  point.moments = collective_variances(build_occupation_table(model, params));
  point.singlet_fraction = singlet_fraction(point.moments);
  point.witnessed = point.singlet_fraction > 0.0;
  return point;
}

std::vector<SweepPoint> singlet_fraction_sweep(const SpectrumModel& model,
                                               std::span<const double> temperatures,
                                               std::span<const double> polarizations,
                                               double chemical_potential) {
  if (temperatures.empty() || polarizations.empty())
    throw PreconditionError("sweep grids must be nonempty");
  for (double t : temperatures)
    if (!(t > 0)) throw PreconditionError("sweep temperatures must be positive");
  for (double p : polarizations)
    if (!(p >= 0 && p < 1)) throw PreconditionError("sweep polarizations must lie in [0, 1)");

  std::vector<SweepPoint> rows;
  rows.reserve(temperatures.size() * polarizations.size());
  for (double t : temperatures) {
    for (double p : polarizations) {
      try {
        rows.push_back(singlet_point(model, t, p, chemical_potential));
      } catch (const Error&) {
        rethrow_with_context(format_point(t, p));
      }
    }
  }
  return rows;
}

double find_threshold(const SpectrumModel& model, double polarization, double t_lo, double t_hi,
                      double chemical_potential, const ThresholdOptions& options) {
  auto f = [&](double t) {
    try {
      return singlet_point(model, t, polarization, chemical_potential).singlet_fraction;
    } catch (const Error&) {
      rethrow_with_context(format_point(t, polarization));
    }
  };
  if (!(t_lo > 0 && t_lo < t_hi)) throw PreconditionError("threshold bracket must satisfy 0 < lo < hi");
  const double f_lo = f(t_lo);
  const double f_hi = f(t_hi);
  if (!(f_lo > 0.0 && f_hi < 0.0)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "no sign change of f_s in [%.6g, %.6g] (f_s = %.6g, %.6g)",
                  t_lo, t_hi, f_lo, f_hi);
    throw BracketError(buf);
  }
  const double tol = options.tolerance * std::abs(chemical_potential);
  for (int it = 0; it < options.max_iterations && t_hi - t_lo >= tol; ++it) {
    const double mid = 0.5 * (t_lo + t_hi);
    if (f(mid) > 0.0)
      t_lo = mid;
    else
      t_hi = mid;
  }
  if (t_hi - t_lo >= tol) throw ConvergenceError("threshold bisection did not converge");
  return 0.5 * (t_lo + t_hi);
}

}  // namespace spinent
