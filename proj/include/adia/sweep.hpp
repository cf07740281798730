#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "adia/hamiltonian.hpp"
#include "adia/schedule.hpp"

namespace adia {

enum class ModelKind { grover_reduced, grover_full, custom_matrix_file };

std::string to_string(ModelKind kind);
/// Parses "grover-reduced", "grover-full", "custom-matrix-file". Throws ConfigError.
ModelKind parse_model(const std::string& text);

struct RunConfig {
  ModelKind model = ModelKind::grover_reduced;
  /// linear, optimal or beta.
  std::string schedule = "optimal";
  int p = 0;
  std::vector<long> N{32};
  /// Explicit run times; takes precedence over the range below.
  std::vector<double> T_list;
  /// Log-spaced range [T_min, T_max] with T_count points. With
  /// T_in_units_of_tval the bounds are multiples of T_val.
  double T_min = 1.0;
  double T_max = 8.0;
  int T_count = 20;
  bool T_in_units_of_tval = true;
  /// Validity constant; defaults per schedule when unset.
  std::optional<double> C;
  double quadrature_tol = 1e-10;
  double integrator_tol = 1e-9;
  std::string csv_path;
  std::string json_path;
  std::string matrix_file;
  /// Reserved; runs are deterministic.
  long seed = 0;
  /// Concurrent sweep points; 0 reads ADIA_JOBS, else the hardware count.
  int jobs = 0;
};

/// Throws ConfigError naming the offending field.
void validate(const RunConfig& config);

/// 9.5 (optimal), 50 (linear and beta p = 1), 70 (beta p = 2), 50 otherwise.
double default_C(const std::string& schedule, int p);

/// Builds the schedule named in the config (optimal needs N).
Schedule make_schedule(const std::string& name, int p, double N);

struct SweepRecord {
  long N = 0;
  std::string schedule;
  int p = 0;
  double C = 0.0;
  double T = 0.0;
  double eps_numeric = 0.0;
  double eps_leading = 0.0;
  double eps_upper = 0.0;
  double eps_lower = 0.0;
  double T_val = 0.0;
  double eps_tilde = 0.0;
  double jansen = 0.0;
  double roland_T = 0.0;
  std::vector<std::string> flags;
};

struct SweepResult {
  std::vector<SweepRecord> records;
  /// JSON text with the config echo, per-N trade-off values and fitted
  /// log-log slopes.
  std::string summary_json;
};

/// Runs every (N, T) point; records are sorted by (N, T).
SweepResult run_sweep(const RunConfig& config);

inline constexpr const char* kCsvVersionLine = "# adia-tradeoff csv v1";
inline constexpr const char* kCsvHeader =
    "N,schedule,p,C,T,eps_numeric,eps_leading,eps_upper,eps_lower,T_val,eps_tilde,jansen,"
    "roland_T,flags";

void write_csv(std::ostream& out, const std::vector<SweepRecord>& records);
/// Shortest decimal string that reads back to the same double.
std::string format_double(double value);

/// Reads a custom family: first line "d m" (m must be 2), then the d x d
/// entries of H_i followed by those of H_f, whitespace separated, each either
/// a real number or "(re,im)". Throws ConfigError.
HamiltonianFamily load_matrix_file(const std::string& path, const Schedule& schedule);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Concurrency for sweeps: ADIA_JOBS if set and positive, else hardware threads.
int default_jobs();

}  // namespace adia
