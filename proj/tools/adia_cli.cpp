// adia: sweeps, closed forms, acceptance checks and single-run traces.
//
// Exit codes: 0 ok, 1 verification failed, 2 bad configuration, 3 runtime error.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "adia/acceptance.hpp"
#include "adia/errors.hpp"
#include "adia/grover.hpp"
#include "adia/propagate.hpp"
#include "adia/sweep.hpp"

namespace {

constexpr int kVerifyFailed = 1;
constexpr int kConfigError = 2;
constexpr int kRuntimeError = 3;

struct Options {
  adia::RunConfig run;
  std::string model = "grover-reduced";
  double C = 0.0;  // 0 = per-schedule default
  bool absolute_T = false;

  // closed-forms
  std::string j0_method = "quadrature";
  bool as_json = false;

  // verify
  std::vector<std::string> criteria;

  // trace
  double trace_T = 100.0;
  int output_points = 201;
  bool components = false;
  std::string out_path;
};

void add_model_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--model", o.model, "grover-reduced, grover-full or custom-matrix-file");
  cmd->add_option("--schedule", o.run.schedule, "linear, optimal or beta");
  cmd->add_option("-p,--p", o.run.p, "boundary-cancelation order for beta schedules");
  cmd->add_option("--matrix-file", o.run.matrix_file, "H_i and H_f for custom-matrix-file");
  cmd->add_option("--C", o.C, "validity constant (default depends on the schedule)");
  cmd->add_option("--quadrature-tol", o.run.quadrature_tol);
  cmd->add_option("--integrator-tol", o.run.integrator_tol);
}

void finish_config(Options& o) {
  o.run.model = adia::parse_model(o.model);
  if (o.C != 0.0) o.run.C = o.C;
  o.run.T_in_units_of_tval = !o.absolute_T;
  adia::validate(o.run);
}

std::ofstream open_output(const std::string& path, const char* field) {
  std::ofstream out(path);
  if (!out) throw adia::ConfigError(field, "cannot write '" + path + "'");
  return out;
}

int run_sweep(Options& o) {
  finish_config(o);
  const adia::SweepResult result = adia::run_sweep(o.run);
  if (o.run.csv_path.empty() || o.run.csv_path == "-") {
    adia::write_csv(std::cout, result.records);
  } else {
    std::ofstream out = open_output(o.run.csv_path, "csv");
    adia::write_csv(out, result.records);
  }
  if (!o.run.json_path.empty()) {
    std::ofstream out = open_output(o.run.json_path, "json");
    out << result.summary_json << "\n";
  }
  return 0;
}

int run_closed_forms(Options& o) {
  finish_config(o);
  if (o.run.model == adia::ModelKind::custom_matrix_file) {
    throw adia::ConfigError("model", "closed forms exist for the search model only");
  }
  adia::J0Method method;
  if (o.j0_method == "quadrature") {
    method = adia::J0Method::quadrature;
  } else if (o.j0_method == "approximation") {
    method = adia::J0Method::approximation;
  } else {
    throw adia::ConfigError("j0", "expected quadrature or approximation");
  }
  const adia::ScheduleKind kind = o.run.schedule == "linear"    ? adia::ScheduleKind::linear
                                  : o.run.schedule == "optimal" ? adia::ScheduleKind::optimal
                                                                : adia::ScheduleKind::beta;
  const double C = o.run.C.value_or(adia::default_C(o.run.schedule, o.run.p));
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  if (!o.as_json) std::cout << "N,schedule,p,C,J0,lambda10_end,omega10,T_val,eps_tilde,bound_coefficient\n";
  for (long n : o.run.N) {
    const adia::GroverClosedForms cf = adia::closed_tradeoff(static_cast<double>(n), kind, C, o.run.p, method);
    if (o.as_json) {
      nlohmann::ordered_json row;
      row["N"] = n;
      row["schedule"] = cf.schedule;
      row["p"] = cf.p;
      row["C"] = C;
      row["J0"] = cf.J0;
      row["lambda10_end"] = cf.lambda10_end;
      row["omega10"] = cf.omega10;
      row["T_val"] = cf.tradeoff.T_val;
      row["eps_tilde"] = cf.tradeoff.eps_tilde;
      row["bound_coefficient"] = cf.tradeoff.bound_coefficient;
      if (kind == adia::ScheduleKind::beta) row["eps_tilde_asymptotic"] = cf.eps_tilde_asymptotic;
      rows.push_back(row);
    } else {
      using adia::format_double;
      std::cout << n << ',' << cf.schedule << ',' << cf.p << ',' << format_double(C) << ','
                << format_double(cf.J0) << ',' << format_double(cf.lambda10_end) << ','
                << format_double(cf.omega10) << ',' << format_double(cf.tradeoff.T_val) << ','
                << format_double(cf.tradeoff.eps_tilde) << ','
                << format_double(cf.tradeoff.bound_coefficient) << '\n';
    }
  }
  if (o.as_json) std::cout << rows.dump(2) << "\n";
  return 0;
}

int run_verify(const Options& o) {
  std::vector<std::string> names = o.criteria;
  if (names.empty()) {
    for (const auto& c : adia::acceptance_criteria()) names.push_back(c.name);
  }
  int failed = 0;
  for (const std::string& name : names) {
    adia::CriterionResult r;
    try {
      r = adia::run_criterion(name);
    } catch (const std::invalid_argument& e) {
      throw adia::ConfigError("criterion", e.what());
    }
    std::cout << adia::format_result(r) << std::endl;
    if (!r.passed) ++failed;
  }
  std::cout << (names.size() - failed) << "/" << names.size() << " criteria passed\n";
  return failed == 0 ? 0 : kVerifyFailed;
}

int run_trace(Options& o) {
  finish_config(o);
  if (o.run.N.size() != 1) throw adia::ConfigError("N", "trace takes a single N");
  if (!(o.trace_T > 0.0)) throw adia::ConfigError("T", "must be positive");
  if (o.output_points < 2) throw adia::ConfigError("points", "must be >= 2");
  const double n = static_cast<double>(o.run.N.front());
  const adia::Schedule schedule = adia::make_schedule(o.run.schedule, o.run.p, n);
  const adia::HamiltonianFamily family =
      o.run.model == adia::ModelKind::custom_matrix_file
          ? adia::load_matrix_file(o.run.matrix_file, schedule)
          : adia::grover_family(o.run.N.front(), schedule,
                                o.run.model == adia::ModelKind::grover_full ? adia::GroverMode::fullN
                                                                            : adia::GroverMode::reduced2);
  adia::PropagationOptions opt;
  opt.tol = o.run.integrator_tol;
  opt.output_points = o.output_points;
  const adia::SimulationTrace trace = adia::propagate(family, o.trace_T, opt);
  if (o.out_path.empty() || o.out_path == "-") {
    adia::write_trace_csv(std::cout, trace, o.components);
  } else {
    std::ofstream out = open_output(o.out_path, "out");
    adia::write_trace_csv(out, trace, o.components);
  }
  std::cerr << "final distance " << adia::format_double(trace.final_distance()) << " after "
            << trace.steps << " steps\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adiabatic error trade-off tools"};
  app.set_config("--config", "", "INI file; [sweep], [trace], ... sections set subcommand options");
  app.require_subcommand(1);
  Options o;

  CLI::App* sweep = app.add_subcommand("sweep", "numeric error against the APT bounds over (N, T)");
  add_model_options(sweep, o);
  sweep->add_option("-N,--N", o.run.N, "problem sizes")->delimiter(',');
  sweep->add_option("--T", o.run.T_list, "explicit run times")->delimiter(',');
  sweep->add_option("--T-min", o.run.T_min);
  sweep->add_option("--T-max", o.run.T_max);
  sweep->add_option("--T-count", o.run.T_count);
  sweep->add_flag("--absolute-T", o.absolute_T, "T range in absolute units instead of T_val");
  sweep->add_option("--csv", o.run.csv_path, "CSV output (default or - : stdout)");
  sweep->add_option("--json", o.run.json_path, "JSON summary output");
  sweep->add_option("--seed", o.run.seed);
  sweep->add_option("-j,--jobs", o.run.jobs);

  CLI::App* closed = app.add_subcommand("closed-forms", "closed-form trade-off for the search model");
  add_model_options(closed, o);
  closed->add_option("-N,--N", o.run.N)->delimiter(',');
  closed->add_option("--j0", o.j0_method, "quadrature or approximation (beta schedules)");
  closed->add_flag("--json", o.as_json);

  CLI::App* verify = app.add_subcommand("verify", "run the acceptance criteria");
  verify->add_option("--criterion", o.criteria, "criterion name (repeatable; default all)");

  CLI::App* trace = app.add_subcommand("trace", "one propagation with the distance along s");
  add_model_options(trace, o);
  trace->add_option("-N,--N", o.run.N)->delimiter(',');
  trace->add_option("--T", o.trace_T, "run time");
  trace->add_option("--points", o.output_points, "output points along s");
  trace->add_flag("--components", o.components, "also write state components");
  trace->add_option("-o,--out", o.out_path, "CSV output (default or - : stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (sweep->parsed()) return run_sweep(o);
    if (closed->parsed()) return run_closed_forms(o);
    if (verify->parsed()) return run_verify(o);
    if (trace->parsed()) return run_trace(o);
  } catch (const adia::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return 0;
}
