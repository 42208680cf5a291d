// SPDX-License-Identifier: Apache-2.0

#include "irsuav/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "irsuav/error.hpp"
#include "irsuav/rng.hpp"

namespace irsuav {
namespace {

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

[[noreturn]] void schema_fail(std::size_t line, const std::string& what) {
  raise(ErrorKind::SchemaError, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') schema_fail(lines.size() + 1, "CRLF line ending");
    lines.push_back(line);
  }
  return lines;
}

template <typename T>
T parse_number(const std::string& s, std::size_t line, const char* field) {
  T v{};
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size()) schema_fail(line, std::string("bad ") + field + " '" + s + "'");
  return v;
}

double parse_finite(const std::string& s, std::size_t line, const char* field) {
  const double v = parse_number<double>(s, line, field);
  if (!std::isfinite(v)) schema_fail(line, std::string(field) + " is not finite");
  return v;
}

template <typename Fn>
auto wrap_schema(std::size_t line, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SchemaError) throw;
    schema_fail(line, e.what());
  }
}

}  // namespace

ResultRow run_trial(const Scenario& scenario, Mode mode, std::size_t sweep_index, int trial) {
  const Scenario point = scenario.at_sweep(sweep_index);
  const ModeSetup setup = mode_setup(point, mode);

  ResultRow row;
  row.scenario_id = scenario.scenario_id;
  row.mode = mode;
  row.trial_seed = mix_seed(scenario.base_seed, static_cast<std::uint64_t>(trial), sweep_index);
  row.sweep_axis = scenario.sweep.axis;
  row.sweep_value = scenario.sweep_value(sweep_index);

  const SmallScaleDraw draw = SmallScaleDraw::generate(setup.problem.layout, setup.problem.radio.n_antennas,
                                                       setup.problem.radio.n_elements, row.trial_seed);
  try {
    const InitialPoint init = default_init(setup.problem, draw, setup.movable);
    const SolveReport report = solve(setup.problem, draw, init, setup.config);
    row.iterations = report.iterations();
    row.status = std::string(to_string(report.status));
    row.secrecy_rate = report.status == SolveStatus::Infeasible ? 0.0 : report.final_rate();
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InfeasibleStart) throw;
    row.status = std::string(to_string(SolveStatus::Infeasible));
  }
  return row;
}

std::vector<ResultRow> run_sweep(const Scenario& scenario, int threads) {
  scenario.validate();
  struct Job {
    Mode mode;
    std::size_t sweep;
    int trial;
  };
  std::vector<Job> jobs;
  for (Mode m : scenario.modes)
    for (std::size_t s = 0; s < scenario.sweep_points(); ++s)
      for (int t = 0; t < scenario.trials; ++t) jobs.push_back({m, s, t});

  std::vector<ResultRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        rows[i] = run_trial(scenario, jobs[i].mode, jobs[i].sweep, jobs[i].trial);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = jobs.size();
      }
    }
  };
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(jobs.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return rows;  // job order is already (mode, sweep, trial)
}

std::string format_results(const std::vector<ResultRow>& rows) {
  std::string out = std::string(kResultsHeader) + "\n";
  for (const auto& r : rows) {
    out += r.scenario_id + ',' + std::string(to_string(r.mode)) + ',' + std::to_string(r.trial_seed) + ',' +
           std::string(to_string(r.sweep_axis)) + ',' + fmt_double(r.sweep_value) + ',' + fmt_double(r.secrecy_rate) +
           ',' + std::to_string(r.iterations) + ',' + r.status + '\n';
  }
  return out;
}

std::vector<ResultRow> parse_results(const std::string& text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines[0] != kResultsHeader) schema_fail(1, "header does not match the results schema");
  std::vector<ResultRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t ln = i + 1;
    const auto f = split_csv(lines[i]);
    if (f.size() != 8) schema_fail(ln, "expected 8 fields, got " + std::to_string(f.size()));
    ResultRow r;
    r.scenario_id = f[0];
    if (r.scenario_id.empty()) schema_fail(ln, "empty scenario_id");
    r.mode = wrap_schema(ln, [&] { return parse_mode(f[1]); });
    r.trial_seed = parse_number<std::uint64_t>(f[2], ln, "trial_seed");
    r.sweep_axis = wrap_schema(ln, [&] { return parse_axis(f[3]); });
    r.sweep_value = parse_finite(f[4], ln, "sweep_value");
    r.secrecy_rate = parse_finite(f[5], ln, "secrecy_rate_bps_hz");
    if (r.secrecy_rate < 0.0) schema_fail(ln, "negative secrecy rate");
    r.iterations = parse_number<int>(f[6], ln, "iterations");
    if (r.iterations < 0) schema_fail(ln, "negative iteration count");
    r.status = f[7];
    if (r.status != "converged" && r.status != "max_iters" && r.status != "infeasible")
      schema_fail(ln, "unknown status '" + r.status + "'");
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
  struct Acc {
    SummaryRow row;
    std::vector<double> values;
  };
  std::vector<Acc> groups;
  std::map<std::tuple<std::string, int, int, double>, std::size_t> index;
  for (const auto& r : rows) {
    const auto key = std::make_tuple(r.scenario_id, static_cast<int>(r.mode), static_cast<int>(r.sweep_axis), r.sweep_value);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, groups.size()).first;
      groups.push_back({SummaryRow{r.scenario_id, r.mode, r.sweep_axis, r.sweep_value}, {}});
    }
    Acc& g = groups[it->second];
    g.values.push_back(r.secrecy_rate);
    if (r.status == "infeasible") ++g.row.infeasible;
  }
  std::vector<SummaryRow> out;
  for (auto& g : groups) {
    const double n = static_cast<double>(g.values.size());
    double mean = 0.0;
    for (double v : g.values) mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : g.values) ss += (v - mean) * (v - mean);
    g.row.mean = mean;
    g.row.stderr_ = g.values.size() > 1 ? std::sqrt(ss / (n - 1.0)) / std::sqrt(n) : 0.0;
    g.row.trials = static_cast<int>(g.values.size());
    out.push_back(g.row);
  }
  return out;
}

std::string format_summary(const std::vector<SummaryRow>& rows) {
  std::string out = std::string(kSummaryHeader) + "\n";
  for (const auto& r : rows) {
    out += r.scenario_id + ',' + std::string(to_string(r.mode)) + ',' + std::string(to_string(r.sweep_axis)) + ',' +
           fmt_double(r.sweep_value) + ',' + fmt_double(r.mean) + ',' + fmt_double(r.stderr_) + ',' +
           std::to_string(r.trials) + ',' + std::to_string(r.infeasible) + '\n';
  }
  return out;
}

std::vector<SummaryRow> parse_summary(const std::string& text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines[0] != kSummaryHeader) schema_fail(1, "header does not match the summary schema");
  std::vector<SummaryRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t ln = i + 1;
    const auto f = split_csv(lines[i]);
    if (f.size() != 8) schema_fail(ln, "expected 8 fields, got " + std::to_string(f.size()));
    SummaryRow r;
    r.scenario_id = f[0];
    r.mode = wrap_schema(ln, [&] { return parse_mode(f[1]); });
    r.sweep_axis = wrap_schema(ln, [&] { return parse_axis(f[2]); });
    r.sweep_value = parse_finite(f[3], ln, "sweep_value");
    r.mean = parse_finite(f[4], ln, "mean_secrecy_rate_bps_hz");
    r.stderr_ = parse_finite(f[5], ln, "stderr_bps_hz");
    r.trials = parse_number<int>(f[6], ln, "trials");
    r.infeasible = parse_number<int>(f[7], ln, "infeasible");
    if (r.trials < 1 || r.infeasible < 0 || r.infeasible > r.trials) schema_fail(ln, "inconsistent trial counts");
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) raise(ErrorKind::OutOfRange, "cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      raise(ErrorKind::OutOfRange, "write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    raise(ErrorKind::OutOfRange, "cannot rename onto " + path);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorKind::SchemaError, path + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace irsuav
