#include "acs/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <utility>

#include "acs/fock.hpp"
#include "acs/raman.hpp"
#include "acs/sphere.hpp"
#include "acs/su2.hpp"
#include "acs/thermo.hpp"

namespace acs::cli {

using nlohmann::json;

namespace {

struct OptionSpec {
  const char* name;
  const char* help;
  bool is_flag = false;
};

struct CommandSpec {
  Command command;
  const char* name;
  const char* help;
  std::vector<OptionSpec> options;
};

const std::vector<CommandSpec>& command_table() {
  static const std::vector<CommandSpec> table = {
      {Command::acs, "acs", "Atomic coherent state amplitudes in one j-block",
       {{"two-j", "Block size 2j (integer)"},
        {"tau-re", "Real part of tau"},
        {"tau-im", "Imaginary part of tau"},
        {"theta", "Polar angle (alternative to tau)"},
        {"phi", "Azimuth (alternative to tau)"}}},
      {Command::spectrum, "spectrum", "Closed-form vs Jacobi spectrum of one H block",
       {{"w1", "Mode-a frequency"}, {"w2", "Mode-b frequency"}, {"lambda", "Coupling"},
        {"two-j", "Block size 2j (integer)"}}},
      {Command::residual, "residual", "Eigenstate and eigenvector-relation residuals",
       {{"w1", "Mode-a frequency"}, {"w2", "Mode-b frequency"}, {"lambda", "Coupling"},
        {"two-j", "Block size 2j (integer)"}, {"branch", "plus or minus"},
        {"verify-file", "JSON state written by `acs` to check instead of |tau_b>"}}},
      {Command::completeness, "completeness", "Resolution-of-identity quadrature check",
       {{"two-j", "Block size 2j, or the largest block with --full"},
        {"full", "Sum all blocks up to --n-max", true},
        {"n-max", "Total-quanta cutoff for --full"},
        {"theta-nodes", "Override the number of theta nodes"},
        {"phi-count", "Override the number of azimuths"},
        {"unchecked", "Skip the grid exactness check (negative controls)", true}}},
      {Command::thermo, "thermo", "Partition function and internal energy sweep",
       {{"w1", "Mode-a frequency"}, {"w2", "Mode-b frequency"}, {"lambda", "Coupling"},
        {"beta-min", "Smallest beta"}, {"beta-max", "Largest beta"},
        {"steps", "Number of beta points (integer)"}}},
  };
  return table;
}

Format default_format(Command c) {
  return c == Command::spectrum || c == Command::thermo ? Format::csv : Format::json;
}

// --- parameter access -------------------------------------------------------

class Params {
 public:
  explicit Params(const std::map<std::string, std::string>& m) : m_(m) {}

  bool has(const std::string& key) const { return m_.count(key) != 0; }

  const std::string& text(const std::string& key) const {
    auto it = m_.find(key);
    if (it == m_.end()) throw Error(ErrorCode::InvalidArgument, "missing required --" + key);
    return it->second;
  }

  double number(const std::string& key) const {
    const std::string& s = text(key);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
      throw Error(ErrorCode::InvalidArgument, "--" + key + " expects a finite decimal number, got '" + s + "'");
    }
    return v;
  }

  int integer(const std::string& key) const {
    const std::string& s = text(key);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      throw Error(ErrorCode::InvalidArgument, "--" + key + " expects an integer, got '" + s + "'");
    }
    return v;
  }

  int non_negative(const std::string& key) const {
    const int v = integer(key);
    if (v < 0) throw Error(ErrorCode::InvalidArgument, "--" + key + " must be non-negative");
    return v;
  }

 private:
  const std::map<std::string, std::string>& m_;
};

raman::RamanParams raman_params(const Params& p) {
  raman::RamanParams rp{p.number("w1"), p.number("w2"), p.number("lambda")};
  raman::validate(rp);
  return rp;
}

raman::Branch parse_branch(const std::string& s) {
  if (s == "plus" || s == "+") return raman::Branch::plus;
  if (s == "minus" || s == "-") return raman::Branch::minus;
  throw Error(ErrorCode::InvalidArgument, "--branch must be 'plus' or 'minus', got '" + s + "'");
}

const char* branch_name(raman::Branch b) { return b == raman::Branch::plus ? "plus" : "minus"; }

// --- output helpers ---------------------------------------------------------

double checked(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::NoConvergence, "non-finite value in output");
  return v;
}

json complex_json(cplx z) { return {{"re", checked(z.real())}, {"im", checked(z.imag())}}; }

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string line;
  bool first = true;
  for (const auto& c : cells) {
    if (!first) line += ',';
    first = false;
    const bool quote = c.find_first_of(",\"\n\r") != std::string::npos;
    if (quote) {
      line += '"';
      for (char ch : c) {
        if (ch == '"') line += '"';
        line += ch;
      }
      line += '"';
    } else {
      line += c;
    }
  }
  line += '\n';
  return line;
}

std::string num(double v) { return format_double(checked(v)); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// --- commands ---------------------------------------------------------------

json state_json(const fock::BlockVector& v, cplx tau) {
  json amps = json::array();
  for (std::size_t l = 0; l < v.size(); ++l) {
    const auto occ = v.occupation(l);
    amps.push_back({{"l", l}, {"n_a", occ.n_a}, {"n_b", occ.n_b},
                    {"re", checked(v[l].real())}, {"im", checked(v[l].imag())}});
  }
  return {{"two_j", v.two_j()}, {"tau", complex_json(tau)}, {"amplitudes", amps}};
}

std::string cmd_acs(const Params& p, Format fmt) {
  const int two_j = p.non_negative("two-j");
  const bool cartesian = p.has("tau-re") || p.has("tau-im");
  const bool angular = p.has("theta") || p.has("phi");
  if (cartesian && angular) {
    throw Error(ErrorCode::InvalidArgument, "give tau either as --tau-re/--tau-im or as --theta/--phi, not both");
  }
  cplx tau{};
  if (angular) {
    tau = su2::tau_from_angles({p.number("theta"), p.number("phi")});
  } else {
    tau = {p.number("tau-re"), p.number("tau-im")};
  }
  const fock::BlockVector v = su2::build_acs({two_j, tau});
  if (fmt == Format::json) return dump(state_json(v, tau));

  std::string s = csv_row({"l", "n_a", "n_b", "re", "im"});
  for (std::size_t l = 0; l < v.size(); ++l) {
    const auto occ = v.occupation(l);
    s += csv_row({std::to_string(l), std::to_string(occ.n_a), std::to_string(occ.n_b),
                  num(v[l].real()), num(v[l].imag())});
  }
  return s;
}

std::string cmd_spectrum(const Params& p, Format fmt) {
  const raman::RamanParams rp = raman_params(p);
  const int two_j = p.non_negative("two-j");
  const auto modes = raman::normal_modes(rp);
  const double e_plus = raman::energy(rp, two_j, raman::Branch::plus);
  const double e_minus = raman::energy(rp, two_j, raman::Branch::minus);
  const auto closed = raman::spectrum_closed(rp, two_j);
  const auto oracle = raman::block_spectrum_oracle(rp, two_j);
  std::optional<raman::TauPair> taus;
  if (rp.lambda != 0.0) taus = raman::tau_pm(rp);

  if (fmt == Format::json) {
    json rows = json::array();
    for (std::size_t n = 0; n < closed.size(); ++n) {
      rows.push_back({{"n", n}, {"closed_form", checked(closed[n])}, {"oracle", checked(oracle[n])},
                      {"abs_diff", checked(std::abs(closed[n] - oracle[n]))}});
    }
    json j = {{"two_j", two_j}, {"E_plus", checked(e_plus)}, {"E_minus", checked(e_minus)},
              {"A", checked(modes.A)}, {"B", checked(modes.B)}, {"rows", rows}};
    if (taus) {
      j["tau_plus"] = complex_json(taus->plus);
      j["tau_minus"] = complex_json(taus->minus);
    }
    return dump(j);
  }

  std::string s;
  s += "# two_j=" + std::to_string(two_j) + "\n";
  if (taus) {
    s += "# tau_plus_re=" + num(taus->plus.real()) + "\n";
    s += "# tau_plus_im=" + num(taus->plus.imag()) + "\n";
    s += "# tau_minus_re=" + num(taus->minus.real()) + "\n";
    s += "# tau_minus_im=" + num(taus->minus.imag()) + "\n";
  }
  s += "# E_plus=" + num(e_plus) + "\n";
  s += "# E_minus=" + num(e_minus) + "\n";
  s += "# A=" + num(modes.A) + "\n";
  s += "# B=" + num(modes.B) + "\n";
  s += csv_row({"n", "closed_form_eigenvalue", "oracle_eigenvalue", "abs_diff"});
  for (std::size_t n = 0; n < closed.size(); ++n) {
    s += csv_row({std::to_string(n), num(closed[n]), num(oracle[n]), num(std::abs(closed[n] - oracle[n]))});
  }
  return s;
}

fock::BlockVector read_state_file(const std::string& path, cplx& tau) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open --verify-file '" + path + "'");
  try {
    const json j = json::parse(in);
    const int two_j = j.at("two_j").get<int>();
    tau = {j.at("tau").at("re").get<double>(), j.at("tau").at("im").get<double>()};
    const auto& amps = j.at("amplitudes");
    if (two_j < 0 || amps.size() != static_cast<std::size_t>(two_j) + 1) {
      throw Error(ErrorCode::InvalidArgument, "state file has inconsistent two_j and amplitude count");
    }
    fock::BlockVector v(two_j);
    for (const auto& a : amps) {
      const auto l = a.at("l").get<std::size_t>();
      if (l > static_cast<std::size_t>(two_j) || a.at("n_b").get<int>() != static_cast<int>(l) ||
          a.at("n_a").get<int>() != two_j - static_cast<int>(l)) {
        throw Error(ErrorCode::InvalidArgument, "state file amplitude entry has inconsistent occupation");
      }
      v[l] = {a.at("re").get<double>(), a.at("im").get<double>()};
    }
    return v;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed state file: ") + e.what());
  }
}

std::string cmd_residual(const Params& p, Format fmt) {
  const raman::RamanParams rp = raman_params(p);
  const raman::Branch branch = parse_branch(p.text("branch"));

  cplx tau{};
  std::optional<fock::BlockVector> state;
  if (p.has("verify-file")) {
    state = read_state_file(p.text("verify-file"), tau);
    if (p.has("two-j") && p.non_negative("two-j") != state->two_j()) {
      throw Error(ErrorCode::InvalidArgument, "--two-j does not match the block of --verify-file");
    }
  } else {
    tau = raman::tau_for(rp, branch);
    state = su2::build_acs({p.non_negative("two-j"), tau});
  }
  const int two_j = state->two_j();
  const double e = raman::energy(rp, two_j, branch);
  const double res = raman::eigen_residual(rp, *state, branch);
  const double tol = raman::eigen_residual_tolerance(rp, two_j);
  const auto rel = su2::eigenrelation_residuals(*state, tau);

  if (fmt == Format::json) {
    json j = {{"two_j", two_j}, {"branch", branch_name(branch)}, {"tau", complex_json(tau)},
              {"energy", checked(e)}, {"residual", checked(res)}, {"tolerance", checked(tol)},
              {"eigenrelation", {{"r1", checked(rel.r1)}, {"r2", checked(rel.r2)}, {"r3", checked(rel.r3)}}}};
    return dump(j);
  }
  return csv_row({"two_j", "branch", "tau_re", "tau_im", "energy", "residual", "tolerance", "r1", "r2", "r3"}) +
         csv_row({std::to_string(two_j), branch_name(branch), num(tau.real()), num(tau.imag()), num(e),
                  num(res), num(tol), num(rel.r1), num(rel.r2), num(rel.r3)});
}

std::string cmd_completeness(const Params& p, Format fmt) {
  const int two_j = p.non_negative("two-j");
  sphere::ResolutionReport rep;
  bool bounds_met = true;
  if (p.has("full")) {
    if (p.has("theta-nodes") || p.has("phi-count") || p.has("unchecked")) {
      throw Error(ErrorCode::InvalidArgument, "--full uses default grids per block");
    }
    rep = sphere::identity_resolution_full(two_j, p.non_negative("n-max"));
  } else {
    if (p.has("n-max")) throw Error(ErrorCode::InvalidArgument, "--n-max requires --full");
    sphere::SphereGrid grid = sphere::build_grid(two_j);
    if (p.has("theta-nodes") || p.has("phi-count")) {
      grid = sphere::make_grid(p.has("theta-nodes") ? p.integer("theta-nodes") : grid.theta_count(),
                               p.has("phi-count") ? p.integer("phi-count") : grid.phi_count);
    }
    bounds_met = sphere::grid_meets_bounds(grid, two_j);
    rep = sphere::identity_resolution_j(
        two_j, grid, p.has("unchecked") ? sphere::GridCheck::skip : sphere::GridCheck::enforce);
  }

  if (fmt == Format::json) {
    json j = {{"two_j", rep.two_j}, {"max_abs_deviation", checked(rep.max_abs_deviation)},
              {"grid", {{"theta_count", rep.grid.theta_count}, {"phi_count", rep.grid.phi_count}}},
              {"grid_bounds_met", bounds_met}};
    if (rep.n_max >= 0) {
      j["n_max"] = rep.n_max;
      j["max_cross_block"] = checked(rep.max_cross_block);
    }
    return dump(j);
  }
  return csv_row({"two_j", "n_max", "max_abs_deviation", "max_cross_block", "theta_count", "phi_count",
                  "grid_bounds_met"}) +
         csv_row({std::to_string(rep.two_j), rep.n_max >= 0 ? std::to_string(rep.n_max) : "",
                  num(rep.max_abs_deviation), rep.n_max >= 0 ? num(rep.max_cross_block) : "",
                  std::to_string(rep.grid.theta_count), std::to_string(rep.grid.phi_count),
                  bounds_met ? "true" : "false"});
}

std::string cmd_thermo(const Params& p, Format fmt) {
  const raman::RamanParams rp = raman_params(p);
  const double beta_min = p.number("beta-min");
  const double beta_max = p.number("beta-max");
  const int steps = p.integer("steps");
  if (steps < 1) throw Error(ErrorCode::InvalidArgument, "--steps must be at least 1");
  if (beta_max < beta_min) throw Error(ErrorCode::InvalidArgument, "--beta-max must not be below --beta-min");
  if (!thermo::stability(rp)) {
    throw Error(ErrorCode::UnstableSystem, "w1 w2 = " + format_double(rp.omega1 * rp.omega2) +
                                               " <= lambda^2 = " + format_double(rp.lambda * rp.lambda));
  }

  std::vector<std::pair<thermo::ThermoResult, double>> rows;
  for (int i = 0; i < steps; ++i) {
    const double beta = steps == 1 ? beta_min : beta_min + (beta_max - beta_min) * i / (steps - 1);
    const auto r = thermo::total_partition(rp, {beta});
    const auto oracle = thermo::spectral_sum_oracle(rp, {beta});
    rows.emplace_back(r, oracle.u);
  }

  if (fmt == Format::json) {
    json arr = json::array();
    for (const auto& [r, u_oracle] : rows) {
      arr.push_back({{"beta", checked(r.beta)}, {"Z_plus", checked(r.z_plus)}, {"Z_minus", checked(r.z_minus)},
                     {"Z", checked(r.z_total)}, {"U", checked(r.internal_energy)}, {"U_oracle", checked(u_oracle)},
                     {"rel_err", checked(std::abs(r.internal_energy - u_oracle) / std::abs(r.internal_energy))}});
    }
    return dump(json{{"rows", arr}});
  }
  std::string s = csv_row({"beta", "Z_plus", "Z_minus", "Z", "U", "U_oracle", "rel_err"});
  for (const auto& [r, u_oracle] : rows) {
    s += csv_row({num(r.beta), num(r.z_plus), num(r.z_minus), num(r.z_total), num(r.internal_energy),
                  num(u_oracle), num(std::abs(r.internal_energy - u_oracle) / std::abs(r.internal_energy))});
  }
  return s;
}

void report(std::ostream& err, std::string_view code, const std::string& message) {
  err << json{{"code", code}, {"message", message}}.dump() << "\n";
}

}  // namespace

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::BadBeta:
    case ErrorCode::GridTooCoarse:
      return kExitUsage;
    case ErrorCode::ZeroCoupling:
    case ErrorCode::UnstableSystem:
    case ErrorCode::UnstableBranch:
    case ErrorCode::PoleAtSouthPole:
      return kExitDomain;
    case ErrorCode::NoConvergence:
    case ErrorCode::TailTooFat:
    case ErrorCode::ExponentialNoConvergence:
    case ErrorCode::CombinatoricsOverflow:
    case ErrorCode::CutoffOverflow:
      return kExitNumerical;
  }
  return kExitNumerical;
}

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of zero
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Atomic coherent states in the Schwinger two-mode realization", "acstool"};
  app.require_subcommand(1);

  std::string format_text;
  std::string output_path;
  std::vector<std::pair<const CommandSpec*, CLI::App*>> subs;
  for (const auto& spec : command_table()) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    for (const auto& o : spec.options) {
      const std::string flag = std::string("--") + o.name;
      if (o.is_flag) {
        sub->add_flag(flag, o.help);
      } else {
        sub->add_option(flag, o.help)->type_name("VALUE");
      }
    }
    sub->add_option("--format", format_text, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output,-o", output_path, "Write the artifact to this file instead of stdout");
    subs.emplace_back(&spec, sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw Error(ErrorCode::InvalidArgument, e.what());
  }

  RunConfig cfg;
  for (const auto& [spec, sub] : subs) {
    if (!sub->parsed()) continue;
    cfg.command = spec->command;
    for (const auto& o : spec->options) {
      const CLI::Option* opt = sub->get_option(std::string("--") + o.name);
      if (opt->count() == 0) continue;
      cfg.params[o.name] = o.is_flag ? "1" : opt->as<std::string>();
    }
  }
  if (!format_text.empty()) cfg.format = format_text == "csv" ? Format::csv : Format::json;
  if (!output_path.empty()) cfg.output_path = output_path;
  return cfg;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const Params p(config.params);
    const Format fmt = config.format.value_or(default_format(config.command));
    std::string artifact;
    switch (config.command) {
      case Command::acs: artifact = cmd_acs(p, fmt); break;
      case Command::spectrum: artifact = cmd_spectrum(p, fmt); break;
      case Command::residual: artifact = cmd_residual(p, fmt); break;
      case Command::completeness: artifact = cmd_completeness(p, fmt); break;
      case Command::thermo: artifact = cmd_thermo(p, fmt); break;
    }
    if (config.output_path) {
      std::ofstream file(*config.output_path, std::ios::binary);
      if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write '" + *config.output_path + "'");
      file << artifact;
    } else {
      out << artifact;
    }
    return kExitOk;
  } catch (const Error& e) {
    report(err, to_string(e.code()), e.what());
    return exit_code_for(e.code());
  }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::optional<RunConfig> cfg;
  try {
    cfg = parse_args(args, out);
  } catch (const Error& e) {
    report(err, "UsageError", e.what());
    return kExitUsage;
  }
  if (!cfg) return kExitOk;
  return run(*cfg, out, err);
}

}  // namespace acs::cli
