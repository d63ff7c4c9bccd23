#include "spinent/cli.hpp"

#include "spinent/error.hpp"
#include "spinent/lattice.hpp"
#include "spinent/oracle.hpp"
#include "spinent/random.hpp"
#include "spinent/spectra.hpp"
#include "spinent/spinmoments.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace spinent::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr double kFermionTolerance = 1e-10;
constexpr double kBosonTolerance = 1e-6;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// JSON numbers carry the same 12 significant digits as the CSV cells.
double rounded(double v) { return std::strtod(fmt(v).c_str(), nullptr); }

SpectrumModel make_model(const RunConfig& c) {
  SpectrumModel model;
  if (c.model == "grid") {
    model = FreeSpaceGrid{c.half_width, c.energy_unit};
  } else if (c.model == "continuum") {
    FreeSpaceContinuum m;
    m.order = c.quadrature_order;
    m.dos_prefactor = 2.0 * std::numbers::pi / std::pow(c.energy_unit, 1.5);
    model = m;
  } else if (c.model == "trap") {
    model = HarmonicTrap{c.hbar_omega, std::nullopt};
  } else {
    throw ConfigError("unknown model '" + c.model + "'");
  }
  validate_model(model);
  return model;
}

std::filesystem::path sibling(const std::filesystem::path& out, const std::string& suffix) {
  auto name = out.stem().string() + suffix + out.extension().string();
  return out.parent_path() / name;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

std::string csv_metadata(const RunConfig& c,
                         const std::vector<std::pair<std::string, double>>& results = {}) {
  std::string s;
  for (const auto& [k, v] : describe(c)) s += "# " + k + " = " + v + "\n";
  for (const auto& [k, v] : results) s += "#: " + k + " = " + fmt(v) + "\n";
  return s;
}

Json json_config(const RunConfig& c) {
  Json j = Json::object();
  for (const auto& [k, v] : describe(c)) j[k] = v;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;  // preformatted cells
  std::vector<std::vector<Json>> json_rows;
};

std::string render(const RunConfig& c, const Table& t,
                   const std::vector<std::pair<std::string, double>>& results = {}) {
  if (c.format == OutputFormat::Csv) {
    std::string s = csv_metadata(c, results);
    for (std::size_t i = 0; i < t.header.size(); ++i) s += (i ? "," : "") + t.header[i];
    s += "\n";
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + row[i];
      s += "\n";
    }
    return s;
  }
  Json j;
  j["config"] = json_config(c);
  if (!results.empty()) {
    Json r = Json::object();
    for (const auto& [k, v] : results) r[k] = rounded(v);
    j["results"] = r;
  }
  Json rows = Json::array();
  for (const auto& row : t.json_rows) {
    Json o = Json::object();
    for (std::size_t i = 0; i < row.size(); ++i) o[t.header[i]] = row[i];
    rows.push_back(o);
  }
  j["rows"] = rows;
  return dump(j);
}

RunResult run_sweep(const RunConfig& c) {
  const auto model = make_model(c);
  const double mu = c.chemical_potential;
  std::vector<double> temps;
  for (double t : c.temperatures) temps.push_back(t * mu);
  const auto points = singlet_fraction_sweep(model, temps, c.polarizations, mu);

  Table t;
  t.header = {"T_over_mu", "P", "f_s", "var_Jx", "var_Jz", "mean_N", "witnessed"};
  std::size_t witnessed = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    // Report the requested grid values, not their product with mu.
    const double t_over_mu = c.temperatures[i / c.polarizations.size()];
    const double pol = c.polarizations[i % c.polarizations.size()];
    witnessed += p.witnessed;
    t.rows.push_back({fmt(t_over_mu), fmt(pol), fmt(p.singlet_fraction), fmt(p.moments.var_Jx),
                      fmt(p.moments.var_Jz), fmt(p.moments.mean_N), p.witnessed ? "1" : "0"});
    t.json_rows.push_back({rounded(t_over_mu), rounded(pol), rounded(p.singlet_fraction),
                           rounded(p.moments.var_Jx), rounded(p.moments.var_Jz),
                           rounded(p.moments.mean_N), p.witnessed ? 1 : 0});
  }
  RunResult r;
  write_file(c.output, render(c, t));
  r.files.push_back(c.output);
  r.summary = std::string(workflow_name(c.workflow)) + " (" + c.model + "): " +
              std::to_string(points.size()) + " points, " + std::to_string(witnessed) +
              " witnessed -> " + c.output;
  return r;
}

RunResult run_threshold(const RunConfig& c) {
  const auto model = make_model(c);
  const double mu = c.chemical_potential;
  Table t;
  t.header = {"P", "T_star_over_mu"};
  std::string values;
  for (double p : c.polarizations) {
    const double t_star = find_threshold(model, p, c.t_lo * mu, c.t_hi * mu, mu) / mu;
    t.rows.push_back({fmt(p), fmt(t_star)});
    t.json_rows.push_back({rounded(p), rounded(t_star)});
    values += (values.empty() ? "" : ", ") + fmt(t_star);
  }
  RunResult r;
  write_file(c.output, render(c, t));
  r.files.push_back(c.output);
  r.summary = "threshold (" + c.model + "): T*/mu = " + values + " -> " + c.output;
  return r;
}

std::string render_map(const RunConfig& c, const Eigen::MatrixXd& values, const char* what,
                       const std::vector<std::pair<std::string, double>>& results) {
  const auto L = values.rows();
  if (c.format == OutputFormat::Csv) {
    std::string s = csv_metadata(c, results);
    s += "L," + std::to_string(L) + "\n";
    for (Eigen::Index i = 0; i < L; ++i) {
      for (Eigen::Index k = 0; k < values.cols(); ++k) s += (k ? "," : "") + fmt(values(i, k));
      s += "\n";
    }
    return s;
  }
  Json j;
  j["config"] = json_config(c);
  Json r = Json::object();
  for (const auto& [k, v] : results) r[k] = rounded(v);
  j["results"] = r;
  j["map"] = what;
  j["L"] = L;
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < L; ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < values.cols(); ++k) row.push_back(rounded(values(i, k)));
    rows.push_back(row);
  }
  j["values"] = rows;
  return dump(j);
}

RunResult run_lattice(const RunConfig& c) {
  LatticeGas gas{c.lattice_L, c.lattice_T, c.lattice_mu, c.hopping};
  const auto map = spin_correlation_map(gas);
  const auto sf = structure_factor(map);
  const auto qfi = qfi_staggered(sf);
  const std::vector<std::pair<std::string, double>> results = {
      {"S_0_0", sf.at_zero()},
      {"S_pi_pi", sf.at_pi_pi()},
      {"qfi_density", qfi.density},
      {"qfi", qfi.qfi},
  };
  const std::filesystem::path out = c.output;
  const auto corr_path = sibling(out, "_correlation");
  const auto sf_path = sibling(out, "_structure");
  write_file(corr_path, render_map(c, map.values, "correlation", results));
  write_file(sf_path, render_map(c, sf.values, "structure", results));
  RunResult r;
  r.files = {corr_path, sf_path};
  r.summary = "lattice L=" + std::to_string(c.lattice_L) + ": S(0,0) = " + fmt(sf.at_zero()) +
              ", S(pi,pi) = " + fmt(sf.at_pi_pi()) + ", F_Q/N = " + fmt(qfi.density) +
              (qfi.witnessed ? " (witnessed)" : "") + " -> " + corr_path.string() + ", " +
              sf_path.string();
  return r;
}

FockEnsemble draw_fermions(SampleStream& rng) {
  FockEnsemble e;
  e.statistics = Statistics::Fermi;
  const int modes = rng.integer(1, 4);
  for (int i = 0; i < modes; ++i) e.energies.push_back(rng.uniform(-1.0, 1.0));
  e.beta = rng.log_uniform(0.2, 20.0);
  e.chemical_potential = rng.uniform(-1.0, 1.0);
  e.field = rng.uniform(-1.0, 1.0);
  return e;
}

// Lowest mode at zero energy; the effective fugacity of the lower spin
// branch, z_eff = exp(beta (|H|/2 + mu)), stays well below one so the
// truncated Fock space converges.
FockEnsemble draw_bosons(SampleStream& rng) {
  FockEnsemble e;
  e.statistics = Statistics::Bose;
  const int modes = rng.integer(1, 2);
  e.energies.push_back(0.0);
  for (int i = 1; i < modes; ++i) e.energies.push_back(rng.uniform(0.0, 1.0));
  e.beta = rng.uniform(0.5, 2.0);
  const double z_eff = rng.uniform(0.05, 0.5);
  const double half_beta_h = rng.uniform(-1.0, 1.0);
  e.field = 2.0 * half_beta_h / e.beta;
  e.chemical_potential = std::log(z_eff) / e.beta - std::abs(e.field) / 2.0;
  return e;
}

RunResult run_validate(const RunConfig& c) {
  SampleStream rng(c.seed);
  Table t;
  t.header = {"kind", "index", "modes", "max_rel_err", "tolerance", "inequalities_hold", "pass"};
  int failed = 0;
  auto add = [&](const char* kind, int index, std::size_t modes, double err, double tol,
                 int inequalities, bool pass) {
    failed += !pass;
    const std::string ineq = inequalities < 0 ? "na" : std::to_string(inequalities);
    t.rows.push_back({kind, std::to_string(index), std::to_string(modes), fmt(err), fmt(tol), ineq,
                      pass ? "1" : "0"});
    t.json_rows.push_back({kind, index, modes, rounded(err), tol,
                           inequalities < 0 ? Json(nullptr) : Json(inequalities), pass ? 1 : 0});
  };
  for (int i = 0; i < c.fermion_samples; ++i) {
    const auto ensemble = draw_fermions(rng);
    const auto exact = exact_moments(ensemble);
    const double err = max_relative_deviation(exact.moments, wick_moments(ensemble));
    add("fermion", i, ensemble.energies.size(), err, kFermionTolerance, -1,
        err <= kFermionTolerance);
  }
  for (int i = 0; i < c.boson_samples; ++i) {
    const auto ensemble = draw_bosons(rng);
    const auto exact = exact_moments(ensemble);
    const double err = max_relative_deviation(exact.moments, wick_moments(ensemble));
    bool hold = true;
    if (exact.low_sector_weight < 1.0) {
      for (const auto& check : exact_inequalities(exact)) hold = hold && check.satisfied;
    }
    add("boson", i, ensemble.energies.size(), err, kBosonTolerance, hold ? 1 : 0,
        err <= kBosonTolerance && hold);
  }
  RunResult r;
  write_file(c.output, render(c, t));
  r.files.push_back(c.output);
  const int total = c.fermion_samples + c.boson_samples;
  r.summary = "validate: " + std::to_string(total) + " comparisons, " + std::to_string(failed) +
              " failed -> " + c.output;
  if (failed > 0) r.status = kExitValidationFailed;
  return r;
}

}  // namespace

RunResult run(const RunConfig& config) {
  const RunConfig c = resolve(config);
  switch (c.workflow) {
    case Workflow::FreeSpace:
    case Workflow::Trap:
      return run_sweep(c);
    case Workflow::Threshold:
      return run_threshold(c);
    case Workflow::Lattice:
      return run_lattice(c);
    case Workflow::Validate:
      return run_validate(c);
  }
  throw ConfigError("unknown workflow");
}

int run_and_report(const RunConfig& config, std::string& errors, std::string& summary) {
  try {
    const auto result = run(config);
    summary = result.summary;
    return result.status;
  } catch (const ConfigError& e) {
    errors = std::string("configuration error: ") + e.what();
    return kExitConfig;
  } catch (const IoError& e) {
    errors = std::string("i/o error: ") + e.what();
    return kExitIo;
  } catch (const ConvergenceError& e) {
    errors = std::string("no convergence: ") + e.what();
    return kExitConvergence;
  } catch (const DomainError& e) {
    errors = std::string("domain error: ") + e.what();
    return kExitDomain;
  } catch (const PreconditionError& e) {
    errors = std::string("domain error: ") + e.what();
    return kExitDomain;
  } catch (const DegenerateInputError& e) {
    errors = std::string("domain error: ") + e.what();
    return kExitDomain;
  } catch (const std::exception& e) {
    errors = std::string("internal error: ") + e.what();
    return 1;
  }
}

}  // namespace spinent::cli
