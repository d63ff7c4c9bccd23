#include "spinent/cli.hpp"

#include "spinent/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace spinent::cli {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view key, std::string_view text) {
  text = trim(text);
  std::string buf(text);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size() || !std::isfinite(v))
    throw ConfigError("key '" + std::string(key) + "': not a number: '" + buf + "'");
  return v;
}

template <typename Int>
Int parse_integer(std::string_view key, std::string_view text) {
  text = trim(text);
  Int v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
    throw ConfigError("key '" + std::string(key) + "': not an integer: '" + std::string(text) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return parts;
}

std::vector<double> parse_grid(std::string_view key, std::string_view text) {
  text = trim(text);
  std::vector<double> out;
  if (text.empty()) return out;
  constexpr std::string_view kLinspace = "linspace(";
  if (text.substr(0, kLinspace.size()) == kLinspace) {
    if (text.back() != ')') throw ConfigError("key '" + std::string(key) + "': unterminated linspace");
    const auto args = split(text.substr(kLinspace.size(), text.size() - kLinspace.size() - 1), ',');
    if (args.size() != 3)
      throw ConfigError("key '" + std::string(key) + "': linspace takes (start, stop, count)");
    const double a = parse_double(key, args[0]);
    const double b = parse_double(key, args[1]);
    const int n = parse_integer<int>(key, args[2]);
    if (n < 1) throw ConfigError("key '" + std::string(key) + "': linspace count must be >= 1");
    for (int i = 0; i < n; ++i) out.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
    return out;
  }
  for (auto part : split(text, ',')) out.push_back(parse_double(key, part));
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_grid(const std::vector<double>& grid) {
  std::string out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i) out += ", ";
    out += format_double(grid[i]);
  }
  return out;
}

void check(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

void check_grid(const std::vector<double>& grid, const char* name) {
  check(!grid.empty(), std::string(name) + " must be nonempty");
  for (std::size_t i = 1; i < grid.size(); ++i)
    check(grid[i] > grid[i - 1], std::string(name) + " must be strictly increasing");
}

}  // namespace

Workflow parse_workflow(std::string_view name) {
  if (name == "freespace") return Workflow::FreeSpace;
  if (name == "trap") return Workflow::Trap;
  if (name == "lattice") return Workflow::Lattice;
  if (name == "validate") return Workflow::Validate;
  if (name == "threshold") return Workflow::Threshold;
  throw ConfigError("unknown workflow '" + std::string(name) + "'");
}

const char* workflow_name(Workflow workflow) {
  switch (workflow) {
    case Workflow::FreeSpace:
      return "freespace";
    case Workflow::Trap:
      return "trap";
    case Workflow::Lattice:
      return "lattice";
    case Workflow::Validate:
      return "validate";
    case Workflow::Threshold:
      return "threshold";
  }
  return "?";
}

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw ConfigError("unknown format '" + std::string(name) + "'");
}

RunConfig parse_config(std::string_view text) {
  RunConfig c;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    try {
      if (key == "workflow") c.workflow = parse_workflow(value);
      else if (key == "model") c.model = std::string(value);
      else if (key == "half_width") c.half_width = parse_integer<int>(key, value);
      else if (key == "energy_unit") c.energy_unit = parse_double(key, value);
      else if (key == "quadrature_order") c.quadrature_order = parse_integer<int>(key, value);
      else if (key == "hbar_omega") c.hbar_omega = parse_double(key, value);
      else if (key == "chemical_potential") c.chemical_potential = parse_double(key, value);
      else if (key == "temperatures") c.temperatures = parse_grid(key, value);
      else if (key == "polarizations") c.polarizations = parse_grid(key, value);
      else if (key == "t_lo") c.t_lo = parse_double(key, value);
      else if (key == "t_hi") c.t_hi = parse_double(key, value);
      else if (key == "lattice_L") c.lattice_L = parse_integer<int>(key, value);
      else if (key == "lattice_T") c.lattice_T = parse_double(key, value);
      else if (key == "lattice_mu") c.lattice_mu = parse_double(key, value);
      else if (key == "hopping") c.hopping = parse_double(key, value);
      else if (key == "fermion_samples") c.fermion_samples = parse_integer<int>(key, value);
      else if (key == "boson_samples") c.boson_samples = parse_integer<int>(key, value);
      else if (key == "output") c.output = std::string(value);
      else if (key == "format") c.format = parse_format(value);
      else if (key == "seed") c.seed = parse_integer<std::uint64_t>(key, value);
      else throw ConfigError("unknown key '" + std::string(key) + "'");
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

RunConfig resolve(RunConfig c) {
  switch (c.workflow) {
    case Workflow::FreeSpace:
      check(c.model == "grid" || c.model == "continuum",
            "freespace workflow needs model = grid or continuum");
      break;
    case Workflow::Trap:
      c.model = "trap";
      break;
    case Workflow::Threshold:
      check(c.model == "grid" || c.model == "continuum" || c.model == "trap",
            "threshold workflow needs model = grid, continuum or trap");
      break;
    case Workflow::Lattice:
    case Workflow::Validate:
      break;
  }

  if (c.workflow == Workflow::FreeSpace || c.workflow == Workflow::Trap) {
    if (c.temperatures.empty()) c.temperatures = parse_grid("temperatures", "linspace(0.02, 1.5, 75)");
    if (c.polarizations.empty()) c.polarizations = parse_grid("polarizations", "linspace(0, 0.99, 100)");
    check_grid(c.temperatures, "temperatures");
  }
  if (c.workflow == Workflow::Threshold && c.polarizations.empty()) c.polarizations = {0.0};
  if (c.workflow == Workflow::FreeSpace || c.workflow == Workflow::Trap ||
      c.workflow == Workflow::Threshold) {
    check_grid(c.polarizations, "polarizations");
  }

  // Physical parameters are left to the modules, which raise domain errors.
  check(c.chemical_potential > 0, "chemical_potential must be positive (it sets the energy unit)");
  check(c.t_lo < c.t_hi, "threshold bracket must satisfy t_lo < t_hi");
  check(c.fermion_samples >= 0 && c.boson_samples >= 0, "sample counts must be >= 0");
  check(!c.output.empty(), "output path must be set");
  return c;
}

std::vector<std::pair<std::string, std::string>> describe(const RunConfig& c) {
  return {
      {"workflow", workflow_name(c.workflow)},
      {"model", c.model},
      {"half_width", std::to_string(c.half_width)},
      {"energy_unit", format_double(c.energy_unit)},
      {"quadrature_order", std::to_string(c.quadrature_order)},
      {"hbar_omega", format_double(c.hbar_omega)},
      {"chemical_potential", format_double(c.chemical_potential)},
      {"temperatures", format_grid(c.temperatures)},
      {"polarizations", format_grid(c.polarizations)},
      {"t_lo", format_double(c.t_lo)},
      {"t_hi", format_double(c.t_hi)},
      {"lattice_L", std::to_string(c.lattice_L)},
      {"lattice_T", format_double(c.lattice_T)},
      {"lattice_mu", format_double(c.lattice_mu)},
      {"hopping", format_double(c.hopping)},
      {"fermion_samples", std::to_string(c.fermion_samples)},
      {"boson_samples", std::to_string(c.boson_samples)},
      {"output", c.output},
      {"format", c.format == OutputFormat::Csv ? "csv" : "json"},
      {"seed", std::to_string(c.seed)},
  };
}

}  // namespace spinent::cli
