#include <pdmwell/cli.hpp>

#include <pdmwell/models.hpp>
#include <pdmwell/verify.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace pdmwell::cli {
namespace {

// Shortest round-trip decimal form; "nan"/"inf" for non-finite values.
std::string fmt(double value) {
  char buf[32];
  const auto result = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, result.ptr);
}

WellModeld build_model(const RunConfig& config) {
  const PhysParamsd phys{config.m0, config.omega, config.hbar};
  if (config.model == "semi") return WellModeld::semiconfined(phys, config.a);
  if (config.model == "confined") return WellModeld::confined(phys, config.a, config.b);
  throw std::domain_error("unknown model '" + config.model + "' (use semi or confined)");
}

nlohmann::ordered_json parameters_json(const RunConfig& config) {
  nlohmann::ordered_json params;
  params["model"] = config.model;
  params["a"] = config.a;
  if (config.model == "confined") params["b"] = config.b;
  params["m0"] = config.m0;
  params["omega"] = config.omega;
  params["hbar"] = config.hbar;
  params["nmax"] = config.nmax;
  return params;
}

int cmd_spectrum(const RunConfig& config, std::ostream& out) {
  const WellModeld model = build_model(config);
  const auto table = spectrum_table(model, config.nmax);
  if (config.format == "json") {
    nlohmann::ordered_json doc;
    doc["parameters"] = parameters_json(config);
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table) rows.push_back({{"n", row.n}, {"energy", row.energy}});
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << "\n";
    return 0;
  }
  out << "n,energy\n";
  for (const auto& row : table) out << row.n << "," << fmt(row.energy) << "\n";
  return 0;
}

int cmd_density(const RunConfig& config, std::ostream& out) {
  if (config.samples < 2) throw std::domain_error("density: --samples must be at least 2");
  const WellModeld model = build_model(config);
  const double lo = model.a();
  const double hi =
      model.kind() == WellKind::confined ? model.b() : tail_extent(model, config.nmax);

  const auto sample_x = [&](int j) {
    return j + 1 == config.samples ? hi : lo + j * (hi - lo) / (config.samples - 1);
  };
  if (config.format == "json") {
    nlohmann::ordered_json doc;
    auto params = parameters_json(config);
    params["samples"] = config.samples;
    doc["parameters"] = std::move(params);
    auto rows = nlohmann::ordered_json::array();
    for (int n = 0; n <= config.nmax; ++n) {
      for (int j = 0; j < config.samples; ++j) {
        const double x = sample_x(j);
        const double psi = wavefunction_at(model, n, x);
        rows.push_back({{"x", x}, {"n", n}, {"psi", psi}, {"density", psi * psi}});
      }
    }
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << "\n";
    return 0;
  }
  out << "x,n,psi,density\n";
  for (int n = 0; n <= config.nmax; ++n) {
    for (int j = 0; j < config.samples; ++j) {
      const double x = sample_x(j);
      const double psi = wavefunction_at(model, n, x);
      out << fmt(x) << "," << n << "," << fmt(psi) << "," << fmt(psi * psi) << "\n";
    }
  }
  return 0;
}

VerifySuite parse_suite(const std::string& name) {
  if (name == "all") return VerifySuite::all;
  if (name == "ortho") return VerifySuite::ortho;
  if (name == "residual") return VerifySuite::residual;
  if (name == "oracle") return VerifySuite::oracle;
  if (name == "limits") return VerifySuite::limits;
  throw std::domain_error("unknown verify suite '" + name + "'");
}

int cmd_verify(const RunConfig& config, std::ostream& out) {
  const VerifySuite suite = parse_suite(config.suite);
  const VerificationReport report =
      suite == VerifySuite::limits
          ? verify_limits({config.m0, config.omega, config.hbar}, config.a)
          : verify_model(build_model(config), config.nmax, suite);
  nlohmann::ordered_json doc;
  doc["suite"] = report.suite;
  doc["parameters"] = parameters_json(config);
  auto checks = nlohmann::ordered_json::array();
  for (const auto& check : report.checks)
    checks.push_back({{"id", check.id},
                      {"observed", check.observed},
                      {"bound", check.bound},
                      {"pass", check.pass}});
  doc["checks"] = std::move(checks);
  doc["overall_pass"] = report.overall_pass();
  out << doc.dump(2) << "\n";
  return report.overall_pass() ? 0 : 1;
}

int cmd_limit_study(const RunConfig& config, std::ostream& out) {
  const PhysParamsd phys{config.m0, config.omega, config.hbar};
  const auto rows =
      limit_energy_study(phys, config.a, config.level, config.b_start, config.b_factor,
                         config.steps);
  if (config.format == "json") {
    nlohmann::ordered_json doc;
    nlohmann::ordered_json params;
    params["a"] = config.a;
    params["m0"] = config.m0;
    params["omega"] = config.omega;
    params["hbar"] = config.hbar;
    params["n"] = config.level;
    params["b_start"] = config.b_start;
    params["b_factor"] = config.b_factor;
    params["steps"] = config.steps;
    doc["parameters"] = std::move(params);
    auto out_rows = nlohmann::ordered_json::array();
    for (const auto& row : rows)
      out_rows.push_back({{"b", row.b},
                          {"energy_confined", row.energy_confined},
                          {"energy_semi", row.energy_semi},
                          {"error", row.error},
                          {"ratio_to_previous", row.ratio_to_previous}});
    doc["rows"] = std::move(out_rows);
    out << doc.dump(2) << "\n";
    return 0;
  }
  out << "b,energy_confined,energy_semi,error,ratio_to_previous\n";
  for (const auto& row : rows)
    out << fmt(row.b) << "," << fmt(row.energy_confined) << "," << fmt(row.energy_semi) << ","
        << fmt(row.error) << "," << fmt(row.ratio_to_previous) << "\n";
  return 0;
}

} // namespace

int run_command(const RunConfig& config, std::ostream& out) {
  if (config.command == "spectrum") return cmd_spectrum(config, out);
  if (config.command == "density") return cmd_density(config, out);
  if (config.command == "verify") return cmd_verify(config, out);
  if (config.command == "limit-study") return cmd_limit_study(config, out);
  throw std::domain_error("unknown command '" + config.command + "'");
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Exactly solvable oscillator wells with position-dependent mass"};
  app.require_subcommand(1);

  const auto add_common = [&config](CLI::App* cmd) {
    cmd->add_option("--model", config.model, "well geometry: semi or confined")
        ->check(CLI::IsMember({"semi", "confined"}));
    cmd->add_option("--a", config.a, "inner wall position");
    cmd->add_option("--b", config.b, "outer wall position (confined well)");
    cmd->add_option("--m0", config.m0, "mass scale");
    cmd->add_option("--omega", config.omega, "oscillator frequency");
    cmd->add_option("--hbar", config.hbar, "reduced Planck constant");
    cmd->add_option("--nmax", config.nmax, "highest level index")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--samples", config.samples, "grid samples per state (density)");
    cmd->add_option("--format", config.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", config.out_path, "write the payload to this file");
  };

  CLI::App* spectrum = app.add_subcommand("spectrum", "closed-form energy levels");
  CLI::App* density =
      app.add_subcommand("density", "wavefunctions and probability densities on a grid");
  CLI::App* verify = app.add_subcommand("verify", "verification suite, reported as JSON");
  CLI::App* limit =
      app.add_subcommand("limit-study", "confined well approaching the semiconfined one");
  for (CLI::App* cmd : {spectrum, density, verify, limit}) add_common(cmd);
  verify->add_option("--suite", config.suite, "check family to run")
      ->check(CLI::IsMember({"all", "ortho", "residual", "oracle", "limits"}));
  limit->add_option("--n", config.level, "level under study")->check(CLI::NonNegativeNumber);
  limit->add_option("--b-start", config.b_start, "first outer-wall position");
  limit->add_option("--b-factor", config.b_factor, "outer-wall growth factor per step");
  limit->add_option("--steps", config.steps, "number of study steps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  config.command = app.get_subcommands().front()->get_name();

  try {
    if (!config.out_path.empty()) {
      std::ofstream file(config.out_path, std::ios::binary);
      if (!file) throw std::domain_error("cannot open output file '" + config.out_path + "'");
      return run_command(config, file);
    }
    return run_command(config, out);
  } catch (const std::exception& e) {
    err << "pdmwell: " << e.what() << "\n";
    return 2;
  }
}

} // namespace pdmwell::cli
