#include "spinent/oracle.hpp"

#include "spinent/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace spinent {
namespace {

struct SlotDistribution {
  std::vector<double> probability;  // P(n), n = 0..cutoff
};

double slot_exponent(const FockEnsemble& e, std::size_t slot) {
  const Spin spin = slot % 2 == 0 ? Spin::Up : Spin::Down;
  const double energy = e.energies[slot / 2];
  return e.beta * (energy - spin_projection(spin) * e.field - e.chemical_potential);
}

std::vector<SlotDistribution> fermion_slots(const FockEnsemble& e) {
  std::vector<SlotDistribution> slots(2 * e.energies.size());
  for (std::size_t s = 0; s < slots.size(); ++s) {
    const double x = slot_exponent(e, s);
    slots[s].probability = {occupation_from_exponent(-x, Statistics::Fermi),
                            occupation_from_exponent(x, Statistics::Fermi)};
  }
  return slots;
}

std::vector<SlotDistribution> boson_slots(const FockEnsemble& e, int cutoff, double& tail) {
  std::vector<SlotDistribution> slots(2 * e.energies.size());
  tail = 0.0;
  for (std::size_t s = 0; s < slots.size(); ++s) {
    const double x = slot_exponent(e, s);
    if (!(x > 0))
      throw DomainError("Bose mode " + std::to_string(s / 2) + " at or below the chemical potential");
    const double ratio = std::exp(-x);
    tail = std::max(tail, std::pow(ratio, cutoff + 1));
    auto& p = slots[s].probability;
    p.resize(static_cast<std::size_t>(cutoff) + 1);
    double norm = 0.0;
    for (int n = 0; n <= cutoff; ++n) norm += (p[n] = std::pow(ratio, n));
    for (double& v : p) v /= norm;
  }
  return slots;
}

double state_count(const std::vector<SlotDistribution>& slots) {
  double count = 1.0;
  for (const auto& s : slots) count *= double(s.probability.size());
  return count;
}

// Visits every occupation vector with its probability.
template <typename Visit>
void for_each_state(const std::vector<SlotDistribution>& slots, Visit&& visit) {
  std::vector<int> occ(slots.size(), 0);
  auto recurse = [&](auto&& self, std::size_t slot, double p) -> void {
    if (slot == slots.size()) {
      visit(occ, p);
      return;
    }
    const auto& probs = slots[slot].probability;
    for (std::size_t n = 0; n < probs.size(); ++n) {
      occ[slot] = static_cast<int>(n);
      self(self, slot + 1, p * probs[n]);
    }
  };
  recurse(recurse, 0, 1.0);
}

struct StateObservables {
  double n;
  double jz;
  double jx2;
};

StateObservables observe(const std::vector<int>& occ, int eta) {
  StateObservables o{0.0, 0.0, 0.0};
  for (std::size_t a = 0; a < occ.size() / 2; ++a) {
    const double up = occ[2 * a];
    const double down = occ[2 * a + 1];
    o.n += up + down;
    o.jz += 0.5 * (up - down);
    o.jx2 += 0.25 * (up + down + 2.0 * eta * up * down);
  }
  return o;
}

ExactMoments trace(const std::vector<SlotDistribution>& slots, int eta) {
  struct Sums {
    double p = 0, n = 0, jz = 0, jx2 = 0;
  };
  Sums all, cond;
  NumberWeightedTerms w;
  for_each_state(slots, [&](const std::vector<int>& occ, double p) {
    const auto o = observe(occ, eta);
    all.p += p;
    all.n += p * o.n;
    all.jz += p * o.jz;
    all.jx2 += p * o.jx2;
    if (o.n >= 2.0) {
      cond.p += p;
      cond.n += p * o.n;
      cond.jz += p * o.jz;
      cond.jx2 += p * o.jx2;
      const double inv = 1.0 / (o.n - 1.0);
      w.j2_over_n_minus_1[0] += p * o.jx2 * inv;
      w.j2_over_n_minus_1[2] += p * o.jz * o.jz * inv;
      w.n_over_2_n_minus_1 += p * o.n * 0.5 * inv;
      w.n_n_minus_2_over_4_n_minus_1 += p * o.n * (o.n - 2.0) * 0.25 * inv;
    }
  });

  ExactMoments out;
  out.low_sector_weight = std::max(0.0, 1.0 - cond.p / all.p);
  auto& m = out.moments;
  m.mean_N = all.n / all.p;
  m.mean_Jz = all.jz / all.p;
  m.var_Jx = all.jx2 / all.p;
  m.var_Jy = m.var_Jx;
  auto& c = out.conditioned;
  if (cond.p > 0) {
    c.mean_N = cond.n / cond.p;
    c.mean_Jz = cond.jz / cond.p;
    c.var_Jx = cond.jx2 / cond.p;
    c.var_Jy = c.var_Jx;
    w.j2_over_n_minus_1[0] /= cond.p;
    w.j2_over_n_minus_1[2] /= cond.p;
    w.n_over_2_n_minus_1 /= cond.p;
    w.n_n_minus_2_over_4_n_minus_1 /= cond.p;
  }
  w.j2_over_n_minus_1[1] = w.j2_over_n_minus_1[0];
  out.terms = w;

  // centred second pass
  double vz = 0, vn = 0, cvz = 0, cvn = 0;
  for_each_state(slots, [&](const std::vector<int>& occ, double p) {
    const auto o = observe(occ, eta);
    vz += p * (o.jz - m.mean_Jz) * (o.jz - m.mean_Jz);
    vn += p * (o.n - m.mean_N) * (o.n - m.mean_N);
    if (o.n >= 2.0) {
      cvz += p * (o.jz - c.mean_Jz) * (o.jz - c.mean_Jz);
      cvn += p * (o.n - c.mean_N) * (o.n - c.mean_N);
    }
  });
  m.var_Jz = vz / all.p;
  m.var_N = vn / all.p;
  m.polarization = m.mean_N > 0 ? 2.0 * m.mean_Jz / m.mean_N : 0.0;
  if (cond.p > 0) {
    c.var_Jz = cvz / cond.p;
    c.var_N = cvn / cond.p;
    c.polarization = 2.0 * c.mean_Jz / c.mean_N;
  }
  out.states = static_cast<std::size_t>(state_count(slots));
  return out;
}

}  // namespace

ExactMoments exact_moments(const FockEnsemble& ensemble, const OracleLimits& limits) {
  const int modes = static_cast<int>(ensemble.energies.size());
  if (modes < 1) throw PreconditionError("ensemble needs at least one mode");
  if (!(std::isfinite(ensemble.beta) && ensemble.beta > 0))
    throw DomainError("beta must be positive and finite");
  const int eta = statistics_sign(ensemble.statistics);

  if (ensemble.statistics == Statistics::Fermi) {
    if (modes > limits.max_fermion_modes)
      throw PreconditionError("too many fermionic modes: " + std::to_string(modes));
    ExactMoments out = trace(fermion_slots(ensemble), eta);
    out.boson_cutoff = 1;
    return out;
  }

  if (modes > limits.max_boson_modes)
    throw PreconditionError("too many bosonic modes: " + std::to_string(modes));
  if (ensemble.boson_cutoff < 1) throw PreconditionError("boson cutoff must be >= 1");
  int cutoff = ensemble.boson_cutoff;
  double tail = 0.0;
  auto slots = boson_slots(ensemble, cutoff, tail);
  while (tail >= limits.tail_tolerance) {
    cutoff *= 2;
    slots = boson_slots(ensemble, cutoff, tail);
    if (state_count(slots) > limits.max_states)
      throw ConvergenceError("boson cutoff " + std::to_string(cutoff) +
                             " exceeds the state budget before the tail converged");
  }
  if (state_count(slots) > limits.max_states)
    throw PreconditionError("bosonic Fock space exceeds the state budget");
  ExactMoments out = trace(slots, eta);
  out.boson_cutoff = cutoff;
  out.tail_weight = tail;
  return out;
}

SpinMoments wick_moments(const FockEnsemble& ensemble) {
  LevelSet levels;
  levels.energy = Eigen::Map<const Eigen::ArrayXd>(ensemble.energies.data(),
                                                   static_cast<Eigen::Index>(ensemble.energies.size()));
  levels.weight = Eigen::ArrayXd::Ones(levels.size());
  const GasParameters params{ensemble.statistics, 1.0 / ensemble.beta, ensemble.chemical_potential,
                             ensemble.field};
  return collective_variances(build_occupation_table(levels, levels.energy.minCoeff(), params));
}

double max_relative_deviation(const SpinMoments& a, const SpinMoments& b) {
  auto rel = [](double x, double y) {
    const double scale = std::max(std::abs(x), std::abs(y));
    return scale > 0.0 ? std::abs(x - y) / scale : 0.0;
  };
  const double up_a = 0.5 * a.mean_N + a.mean_Jz;
  const double up_b = 0.5 * b.mean_N + b.mean_Jz;
  const double down_a = 0.5 * a.mean_N - a.mean_Jz;
  const double down_b = 0.5 * b.mean_N - b.mean_Jz;
  return std::max({rel(up_a, up_b), rel(down_a, down_b), rel(a.var_Jx, b.var_Jx),
                   rel(a.var_Jy, b.var_Jy), rel(a.var_Jz, b.var_Jz), rel(a.var_N, b.var_N)});
}

std::array<InequalityCheck, 3> exact_inequalities(const ExactMoments& exact) {
  if (!(exact.conditioned.mean_N >= 2.0))
    throw PreconditionError("ensemble has no weight in the N >= 2 sector");
  return evaluate_inequalities(exact.conditioned, exact.terms, Evaluation::Exact);
}

}  // namespace spinent
