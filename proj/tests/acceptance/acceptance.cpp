// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Usage: acceptance <path-to-spinent-cli>

#include "spinent/cli.hpp"
#include "spinent/lattice.hpp"
#include "spinent/oracle.hpp"
#include "spinent/random.hpp"
#include "spinent/spinmoments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace spinent;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string cli_path;

Outcome free_space_threshold() {
  const double t = find_threshold(FreeSpaceContinuum{}, 0.0, 0.05, 2.0);
  return {std::abs(t - 1.12) <= 0.02, fmt("T*/mu = %.6f", t)};
}

Outcome grid_continuum_consistency() {
  double worst = 0.0;
  std::string detail;
  for (double t : {0.2, 0.5, 0.8, 1.0}) {
    const double grid = singlet_point(FreeSpaceGrid{}, t, 0.0).singlet_fraction;
    const double cont = singlet_point(FreeSpaceContinuum{}, t, 0.0).singlet_fraction;
    worst = std::max(worst, std::abs(grid - cont));
    detail += fmt("T=%.1f: %.5f vs %.5f; ", t, grid, cont);
  }
  return {worst < 0.01, detail + fmt("max |diff| = %.2e", worst)};
}

Outcome trap_threshold() {
  const double t = find_threshold(HarmonicTrap{}, 0.0, 0.05, 2.0);
  const double n =
      total_number(build_occupation_table(HarmonicTrap{}, GasParameters::fermi(0.02, 1.0))).mean_N;
  return {std::abs(t - 0.368) <= 0.005 && n >= 9e3 && n <= 2e4,
          fmt("T*/mu = %.6f, <N>(T=0.02mu) = %.1f", t, n)};
}

Outcome singlet_limit() {
  bool pass = true;
  std::string detail;
  const std::vector<std::pair<const char*, SpectrumModel>> models = {
      {"grid", FreeSpaceGrid{}}, {"continuum", FreeSpaceContinuum{}}, {"trap", HarmonicTrap{}}};
  for (const auto& [name, model] : models) {
    const auto p = singlet_point(model, 1e-3, 0.0);
    const auto& m = p.moments;
    const double worst = std::max({m.var_Jx, m.var_Jy, m.var_Jz}) / m.mean_N;
    const bool ok = p.singlet_fraction > 0.999 && worst < 1e-3;
    pass = pass && ok;
    detail += fmt("%s f_s=%.5f max Var/N=%.2e %s; ", name, p.singlet_fraction, worst,
                  ok ? "ok" : "short");
  }
  return {pass, detail};
}

Outcome bose_property_suite() {
  SampleStream rng(5);
  const std::vector<SpectrumModel> models = {FreeSpaceGrid{}, FreeSpaceContinuum{}, HarmonicTrap{}};
  int accepted = 0;
  int rejected = 0;
  int violations = 0;
  while (accepted < 1000) {
    const auto& model = models[accepted % models.size()];
    const double t = rng.log_uniform(0.01, 10.0);
    const double gap = rng.log_uniform(1e-10, 0.999);
    const double half_beta_h = rng.uniform(-2.0, 2.0);
    const double z = (1.0 - gap) * std::exp(-std::abs(half_beta_h));
    const auto params = GasParameters::bose(z, t, 2.0 * half_beta_h * t, lowest_energy(model));
    const auto m = collective_variances(build_occupation_table(model, params));
    if (!(m.mean_N > 2.0)) {
      ++rejected;
      continue;
    }
    ++accepted;
    const auto r = witness_report(m);
    bool ok = m.var_Jx > m.mean_N / 4 && m.var_Jy > m.mean_N / 4 && m.var_Jz > m.mean_N / 4;
    for (const auto& c : r.inequalities) ok = ok && c.satisfied;
    violations += !ok;
  }
  return {violations == 0,
          fmt("%d sets (%d with <N> <= 2 redrawn), %d violations", accepted, rejected, violations)};
}

Outcome oracle_equivalence() {
  SampleStream rng(7);
  double worst_fermi = 0.0;
  double worst_bose = 0.0;
  for (int i = 0; i < 100; ++i) {
    FockEnsemble e;
    const int modes = rng.integer(1, 4);
    for (int k = 0; k < modes; ++k) e.energies.push_back(rng.uniform(-1.0, 1.0));
    e.beta = rng.log_uniform(0.2, 20.0);
    e.chemical_potential = rng.uniform(-1.0, 1.0);
    e.field = rng.uniform(-1.0, 1.0);
    worst_fermi = std::max(worst_fermi, max_relative_deviation(exact_moments(e).moments, wick_moments(e)));
  }
  for (int i = 0; i < 20; ++i) {
    FockEnsemble e;
    e.statistics = Statistics::Bose;
    const int modes = rng.integer(1, 2);
    e.energies.push_back(0.0);
    for (int k = 1; k < modes; ++k) e.energies.push_back(rng.uniform(0.0, 1.0));
    e.beta = rng.uniform(0.5, 2.0);
    const double z_eff = rng.uniform(0.05, 0.5);
    e.field = 2.0 * rng.uniform(-1.0, 1.0) / e.beta;
    e.chemical_potential = std::log(z_eff) / e.beta - std::abs(e.field) / 2;
    worst_bose = std::max(worst_bose, max_relative_deviation(exact_moments(e).moments, wick_moments(e)));
  }
  return {worst_fermi < 1e-10 && worst_bose < 1e-6,
          fmt("fermions max rel %.2e (tol 1e-10), bosons max rel %.2e (tol 1e-6)", worst_fermi,
              worst_bose)};
}

Outcome lattice_suite() {
  const int L = 32;
  const auto map = spin_correlation_map(LatticeGas{L, 1e-3, 0.0, 1.0});
  const auto sf = structure_factor(map);
  const auto qfi = qfi_staggered(sf);
  double max_offsite = -1.0;
  for (int x = 0; x < L; ++x)
    for (int y = 0; y < L; ++y)
      if (x || y) max_offsite = std::max(max_offsite, map.values(x, y));
  Eigen::Index ix = 0;
  Eigen::Index iy = 0;
  sf.values.maxCoeff(&ix, &iy);
  const double parseval = std::abs(sf.values.mean() - map.onsite());
  const bool pass = std::abs(map.onsite() - 0.125) <= 1e-6 && max_offsite <= 0.0 &&
                    std::abs(map.values(1, 0) + 0.0205) <= 0.0005 && parseval < 1e-10 &&
                    sf.at_zero() <= 2.0 / L && ix == L / 2 && iy == L / 2 &&
                    sf.at_pi_pi() < 0.25 && qfi.density < 1.0;
  return {pass, fmt("onsite %.8f, NN %.6f, max offsite %.2e, Parseval %.1e, S(0,0) %.6f, "
                    "argmax (%d,%d), S(pi,pi) %.6f, QFI density %.6f",
                    map.onsite(), map.values(1, 0), max_offsite, parseval, sf.at_zero(), int(ix),
                    int(iy), sf.at_pi_pi(), qfi.density)};
}

Outcome polarization_linearity() {
  double worst = 0.0;
  std::string detail;
  for (const auto& [name, model] : std::vector<std::pair<const char*, SpectrumModel>>{
           {"continuum", FreeSpaceContinuum{}}, {"grid", FreeSpaceGrid{}}}) {
    const double f0 = singlet_point(model, 0.02, 0.0).singlet_fraction;
    double model_worst = 0.0;
    for (int k = 1; k <= 80; ++k) {
      const double p = 0.01 * k;
      const double f = singlet_point(model, 0.02, p).singlet_fraction;
      model_worst = std::max(model_worst, std::abs(f - (1 - p) * f0));
    }
    worst = std::max(worst, model_worst);
    detail += fmt("%s max dev %.4f; ", name, model_worst);
  }
  return {worst < 0.05, detail};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome reproducibility() {
  const auto dir = fs::temp_directory_path() / "spinent_acceptance";
  fs::create_directories(dir);
  const std::vector<std::pair<std::string, std::string>> jobs = {
      {"freespace", "workflow = freespace\nmodel = grid\ntemperatures = 0.1, 0.6\n"
                    "polarizations = linspace(0, 0.6, 4)\n"},
      {"trap", "workflow = trap\ntemperatures = linspace(0.05, 0.5, 4)\n"},
      {"threshold", "workflow = threshold\nmodel = continuum\npolarizations = 0, 0.5\n"},
      {"lattice", "workflow = lattice\nlattice_L = 16\n"},
      {"validate", "workflow = validate\nseed = 7\n"},
  };
  int identical = 0;
  int compared = 0;
  std::string detail;
  for (const auto& [name, text] : jobs) {
    const auto cfg = dir / (name + ".cfg");
    std::ofstream(cfg) << text;
    for (const auto& format : {"csv", "json"}) {
      const auto out = dir / (name + "." + format);
      const std::string cmd = cli_path + " --config " + cfg.string() + " --out " + out.string() +
                              " --format " + format + " >/dev/null";
      std::vector<std::string> runs;
      for (int run = 0; run < 2; ++run) {
        if (std::system(cmd.c_str()) != 0) return {false, "cli run failed: " + cmd};
        std::string contents;
        for (const auto& entry : fs::directory_iterator(dir)) {
          const auto fname = entry.path().filename().string();
          if (fname.rfind(name, 0) == 0 && entry.path().extension() == std::string(".") + format)
            contents += fname + "\n" + slurp(entry.path());
        }
        runs.push_back(contents);
      }
      ++compared;
      if (!runs[0].empty() && runs[0] == runs[1]) ++identical;
      else detail += name + "/" + format + " differs; ";
    }
  }
  return {identical == compared, detail + fmt("%d/%d outputs byte-identical", identical, compared)};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <spinent-cli>\n", argv[0]);
    return 2;
  }
  cli_path = argv[1];

  struct Criterion {
    int id;
    const char* title;
    double budget_s;  // <= 0: no runtime limit
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria = {
      {1, "free-space threshold 1.12 +/- 0.02", 10, free_space_threshold},
      {2, "grid/continuum f_s within 0.01", 30, grid_continuum_consistency},
      {3, "trap threshold 0.368 +/- 0.005 and <N> in [0.9, 2]e4", 30, trap_threshold},
      {4, "singlet limit at T = 1e-3 mu", 0, singlet_limit},
      {5, "Bose property suite", 60, bose_property_suite},
      {6, "oracle equivalence", 120, oracle_equivalence},
      {7, "lattice suite L = 32", 30, lattice_suite},
      {8, "low-T polarization linearity", 0, polarization_linearity},
      {9, "reproducible CLI output", 0, reproducibility},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0 && elapsed >= c.budget_s) {
      o.pass = false;
      o.detail += fmt("; over the %.0f s budget", c.budget_s);
    }
    failed += !o.pass;
    std::printf("criterion %d: %s  %s [%s] (%.2f s)\n", c.id, o.pass ? "PASS" : "FAIL", c.title,
                o.detail.c_str(), elapsed);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
