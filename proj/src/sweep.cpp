#include "adia/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "adia/apt.hpp"
#include "adia/errors.hpp"
#include "adia/grover.hpp"
#include "adia/propagate.hpp"

namespace adia {
namespace {

constexpr double kMaxTolerance = 1e-2;
constexpr double kResonanceFraction = 0.2;

void check_tolerance(const char* field, double tol) {
  if (!(tol > 0.0 && tol <= kMaxTolerance)) {
    throw ConfigError(field, "must lie in (0, 1e-2], got " + format_double(tol));
  }
}

bool is_grover(ModelKind m) { return m != ModelKind::custom_matrix_file; }

// Per-N data shared by all T points.
struct Point {
  long N;
  HamiltonianFamily propagated;
  HamiltonianFamily reference;  // family used for the APT quantities
  EndpointData endpoints;
  TradeoffResult tradeoff;
  std::string schedule;
};

std::vector<double> run_times(const RunConfig& config, double t_val) {
  if (!config.T_list.empty()) {
    std::vector<double> t = config.T_list;
    std::sort(t.begin(), t.end());
    return t;
  }
  const double unit = config.T_in_units_of_tval ? t_val : 1.0;
  const double lo = config.T_min * unit;
  const double hi = config.T_max * unit;
  std::vector<double> t;
  if (config.T_count == 1) return {lo};
  for (int i = 0; i < config.T_count; ++i) {
    t.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (config.T_count - 1)));
  }
  return t;
}

Complex parse_entry(const std::string& token, const std::string& path) {
  if (!token.empty() && token.front() == '(') {
    double re = 0.0;
    double im = 0.0;
    char open = 0;
    char comma = 0;
    char close = 0;
    std::istringstream in(token);
    if ((in >> open >> re >> comma >> im >> close) && comma == ',' && close == ')') return {re, im};
    throw ConfigError("matrix_file", path + ": malformed complex entry '" + token + "'");
  }
  double v = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    throw ConfigError("matrix_file", path + ": malformed entry '" + token + "'");
  }
  return {v, 0.0};
}

}  // namespace

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::grover_reduced:
      return "grover-reduced";
    case ModelKind::grover_full:
      return "grover-full";
    case ModelKind::custom_matrix_file:
      return "custom-matrix-file";
  }
  return "unknown";
}

ModelKind parse_model(const std::string& text) {
  if (text == "grover-reduced") return ModelKind::grover_reduced;
  if (text == "grover-full") return ModelKind::grover_full;
  if (text == "custom-matrix-file") return ModelKind::custom_matrix_file;
  throw ConfigError("model", "unknown model '" + text +
                                 "' (grover-reduced, grover-full, custom-matrix-file)");
}

void validate(const RunConfig& c) {
  if (c.schedule != "linear" && c.schedule != "optimal" && c.schedule != "beta") {
    throw ConfigError("schedule", "unknown schedule '" + c.schedule + "' (linear, optimal, beta)");
  }
  if (c.schedule == "beta" && (c.p < 1 || c.p > 4)) {
    throw ConfigError("p", "beta schedules need 1 <= p <= 4");
  }
  if (c.schedule != "beta" && c.p != 0) throw ConfigError("p", "only beta schedules take p");
  if (c.model == ModelKind::custom_matrix_file) {
    if (c.matrix_file.empty()) throw ConfigError("matrix_file", "required by custom-matrix-file");
    if (c.schedule == "optimal") {
      throw ConfigError("schedule", "the optimal schedule is defined for the search model only");
    }
  } else {
    if (c.N.empty()) throw ConfigError("N", "at least one value is required");
    for (long n : c.N) {
      if (n < 2) throw ConfigError("N", "must be >= 2, got " + std::to_string(n));
      if (c.model == ModelKind::grover_full && n > kMaxFullN) {
        throw ConfigError("N", "grover-full supports N <= " + std::to_string(kMaxFullN));
      }
    }
  }
  for (double t : c.T_list) {
    if (!(t > 0.0) || !std::isfinite(t)) throw ConfigError("T_list", "run times must be positive");
  }
  if (c.T_list.empty()) {
    if (!(c.T_min > 0.0) || !std::isfinite(c.T_min)) throw ConfigError("T_min", "must be positive");
    if (!(c.T_max >= c.T_min) || !std::isfinite(c.T_max)) throw ConfigError("T_max", "must be >= T_min");
    if (c.T_count < 1) throw ConfigError("T_count", "must be >= 1");
  }
  if (c.C && !(*c.C > 0.0 && std::isfinite(*c.C))) throw ConfigError("C", "must be positive");
  check_tolerance("quadrature_tol", c.quadrature_tol);
  check_tolerance("integrator_tol", c.integrator_tol);
  if (c.jobs < 0) throw ConfigError("jobs", "must be >= 0");
}

double default_C(const std::string& schedule, int p) {
  if (schedule == "optimal") return 9.5;
  if (schedule == "beta" && p == 2) return 70.0;
  return 50.0;
}

Schedule make_schedule(const std::string& name, int p, double N) {
  if (name == "linear") return Schedule::linear();
  if (name == "optimal") return Schedule::optimal(N);
  if (name == "beta") return Schedule::beta(p);
  throw ConfigError("schedule", "unknown schedule '" + name + "'");
}

int default_jobs() {
  if (const char* env = std::getenv("ADIA_JOBS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("slope needs >= 2 points");
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

HamiltonianFamily load_matrix_file(const std::string& path, const Schedule& schedule) {
  std::ifstream in(path);
  if (!in) throw ConfigError("matrix_file", "cannot open '" + path + "'");
  long d = 0;
  long m = 0;
  if (!(in >> d >> m)) throw ConfigError("matrix_file", path + ": first line must be 'd m'");
  if (d < 2 || d > 4096) throw ConfigError("matrix_file", path + ": dimension must lie in 2..4096");
  if (m != 2) throw ConfigError("matrix_file", path + ": expected m = 2 matrices (H_i, H_f)");
  Matrix mats[2] = {Matrix(d, d), Matrix(d, d)};
  for (auto& mat : mats) {
    for (long i = 0; i < d; ++i) {
      for (long j = 0; j < d; ++j) {
        std::string token;
        if (!(in >> token)) throw ConfigError("matrix_file", path + ": too few entries");
        mat(i, j) = parse_entry(token, path);
      }
    }
  }
  std::string extra;
  if (in >> extra) throw ConfigError("matrix_file", path + ": trailing data '" + extra + "'");
  try {
    return interpolating(mats[0], mats[1], schedule, "custom");
  } catch (const InvalidFamily& e) {
    throw ConfigError("matrix_file", path + ": " + e.what());
  }
}

SweepResult run_sweep(const RunConfig& config) {
  validate(config);
  const double C = config.C.value_or(default_C(config.schedule, config.p));
  const int p = config.schedule == "beta" ? config.p : 0;
  AptOptions apt;
  apt.quadrature_tol = config.quadrature_tol;

  std::vector<Point> points;
  const std::vector<long> sizes =
      is_grover(config.model) ? config.N : std::vector<long>{0};
  for (long n : sizes) {
    try {
      if (is_grover(config.model)) {
        const Schedule schedule = make_schedule(config.schedule, p, static_cast<double>(n));
        const GroverMode mode =
            config.model == ModelKind::grover_full ? GroverMode::fullN : GroverMode::reduced2;
        // APT quantities live in the two-level block for both modes.
        HamiltonianFamily reduced = grover_family(n, schedule, GroverMode::reduced2);
        HamiltonianFamily propagated = grover_family(n, schedule, mode);
        const ScheduleKind kind = schedule.kind();
        TradeoffResult tr = closed_tradeoff(static_cast<double>(n), kind, C, p).tradeoff;
        EndpointData ends = endpoint_data(reduced, 1.0, apt);
        points.push_back({n, std::move(propagated), std::move(reduced), std::move(ends), tr,
                          schedule.name()});
      } else {
        const Schedule schedule = make_schedule(config.schedule, p, 0.0);
        HamiltonianFamily family = load_matrix_file(config.matrix_file, schedule);
        TradeoffResult tr = bc_tradeoff(family, p, C, apt);
        EndpointData ends = endpoint_data(family, 1.0, apt);
        const long d = family.dimension();
        points.push_back({d, family, family, std::move(ends), tr, schedule.name()});
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw Error("N=" + std::to_string(n) + ": " + e.what());
    }
  }

  struct Task {
    std::size_t point;
    double T;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (double t : run_times(config, points[i].tradeoff.T_val)) tasks.push_back({i, t});
  }

  std::vector<SweepRecord> records(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  PropagationOptions prop;
  prop.tol = config.integrator_tol;
  auto worker = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++) {
      const Task& task = tasks[k];
      const Point& pt = points[task.point];
      try {
        SweepRecord r;
        r.N = pt.N;
        r.schedule = pt.schedule;
        r.p = p;
        r.C = C;
        r.T = task.T;
        r.eps_numeric = propagate(pt.propagated, task.T, prop).final_distance();
        r.eps_leading = leading_distance(pt.endpoints, pt.reference, task.T, p);
        const DistanceBounds b = distance_bounds(pt.endpoints, pt.reference, task.T, p);
        r.eps_upper = b.upper;
        r.eps_lower = b.lower;
        r.T_val = pt.tradeoff.T_val;
        r.eps_tilde = pt.tradeoff.eps_tilde;
        if (is_grover(config.model)) {
          r.jansen = jansen_bound(static_cast<double>(pt.N), task.T);
          r.roland_T = r.eps_numeric > 0.0
                           ? roland_time(static_cast<double>(pt.N), r.eps_numeric)
                           : std::numeric_limits<double>::infinity();
        } else {
          r.jansen = std::numeric_limits<double>::quiet_NaN();
          r.roland_T = std::numeric_limits<double>::quiet_NaN();
        }
        if (r.eps_leading < kResonanceFraction * r.eps_upper) r.flags.push_back("resonance-near");
        if (task.T < r.T_val) r.flags.push_back("below-validity");
        records[k] = std::move(r);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) {
          failure = std::make_exception_ptr(Error("N=" + std::to_string(pt.N) + ", T=" +
                                                  format_double(task.T) + ": " + e.what()));
        }
      }
    }
  };
  const int jobs = std::min<int>(config.jobs > 0 ? config.jobs : default_jobs(),
                                 static_cast<int>(std::max<std::size_t>(1, tasks.size())));
  std::vector<std::thread> threads;
  for (int j = 1; j < jobs; ++j) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);

  std::stable_sort(records.begin(), records.end(), [](const SweepRecord& a, const SweepRecord& b) {
    return a.N != b.N ? a.N < b.N : a.T < b.T;
  });

  nlohmann::ordered_json summary;
  summary["format"] = "adia-tradeoff summary v1";
  summary["model"] = to_string(config.model);
  summary["schedule"] = config.schedule;
  summary["p"] = p;
  summary["C"] = C;
  summary["quadrature_tol"] = config.quadrature_tol;
  summary["integrator_tol"] = config.integrator_tol;
  summary["seed"] = config.seed;
  nlohmann::ordered_json per_n = nlohmann::ordered_json::array();
  std::vector<double> ns;
  std::vector<double> tvals;
  std::vector<double> etildes;
  for (const Point& pt : points) {
    nlohmann::ordered_json entry;
    entry["N"] = pt.N;
    entry["T_val"] = pt.tradeoff.T_val;
    entry["eps_tilde"] = pt.tradeoff.eps_tilde;
    entry["bound_coefficient"] = pt.tradeoff.bound_coefficient;
    std::vector<double> ts;
    std::vector<double> es;
    for (const SweepRecord& r : records) {
      if (r.N == pt.N && r.T >= r.T_val && r.eps_numeric > 0.0) {
        ts.push_back(r.T);
        es.push_back(r.eps_numeric);
      }
    }
    if (ts.size() >= 2) entry["slope_eps_numeric_vs_T"] = loglog_slope(ts, es);
    per_n.push_back(entry);
    ns.push_back(static_cast<double>(pt.N));
    tvals.push_back(pt.tradeoff.T_val);
    etildes.push_back(pt.tradeoff.eps_tilde);
  }
  summary["points"] = per_n;
  if (ns.size() >= 2) {
    summary["slope_T_val_vs_N"] = loglog_slope(ns, tvals);
    summary["slope_eps_tilde_vs_N"] = loglog_slope(ns, etildes);
  }
  return {std::move(records), summary.dump(2) + "\n"};
}

void write_csv(std::ostream& out, const std::vector<SweepRecord>& records) {
  out << kCsvVersionLine << '\n' << kCsvHeader << '\n';
  for (const SweepRecord& r : records) {
    std::string flags;
    for (const std::string& f : r.flags) flags += (flags.empty() ? "" : ";") + f;
    out << r.N << ',' << r.schedule << ',' << r.p << ',' << format_double(r.C) << ','
        << format_double(r.T) << ',' << format_double(r.eps_numeric) << ','
        << format_double(r.eps_leading) << ',' << format_double(r.eps_upper) << ','
        << format_double(r.eps_lower) << ',' << format_double(r.T_val) << ','
        << format_double(r.eps_tilde) << ',' << format_double(r.jansen) << ','
        << format_double(r.roland_T) << ',' << flags << '\n';
  }
}

}  // namespace adia
