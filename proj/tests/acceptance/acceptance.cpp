// SPDX-License-Identifier: Apache-2.0
//
// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
// usage: irsuav_acceptance [output_dir]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>

#include "irsuav/error.hpp"
#include "irsuav/harness.hpp"
#include "irsuav/kernels.hpp"
#include "support.hpp"

using namespace irsuav;

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

int g_failures = 0;

void criterion(int id, const char* name, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s %2d %s (%.1f s): %s\n", o.pass ? "PASS" : "FAIL", id, name, secs, o.detail.c_str());
  std::fflush(stdout);
  g_failures += !o.pass;
}

int threads() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

struct ReflInstance {
  EffectiveChannels eff;
  ReflectionParams params;
};

ReflInstance reflection_instance(std::uint64_t seed, int m) {
  const auto inst = testing::make_instance(seed, 4, m);
  CounterRng rng(seed, 77);
  const CVec f = 10.0 * testing::random_unit_vector(rng, 4);
  return {effective_channels(inst.channels, f), testing::reflection_params(inst.problem)};
}

// --- 1 -----------------------------------------------------------------------

Outcome monotone_traces() {
  int runs = 0, violations = 0, converged = 0;
  double worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    const auto inst = testing::make_instance(5000 + s, 4, 16);
    InitialPoint init;
    try {
      init = default_init(inst.problem, inst.draw);
    } catch (const Error&) {
      continue;
    }
    const SolveReport r = solve(inst.problem, inst.draw, init, AoConfig{});
    ++runs;
    converged += r.status == SolveStatus::Converged;
    for (std::size_t i = 1; i < r.trace.size(); ++i) {
      const TraceEntry& t = r.trace[i];
      const double drops[] = {r.trace[i - 1].rate - t.after_power, t.after_power - t.after_reflection,
                              t.after_reflection - t.after_deployment};
      for (double d : drops) {
        worst = std::max(worst, d);
        violations += d > 1e-9;
      }
    }
  }
  return {runs >= 90 && violations == 0,
          fmt("%d runs, %d step decreases > 1e-9 (largest %.3g), %d converged", runs, violations, worst, converged)};
}

// --- 2 -----------------------------------------------------------------------

Outcome power_oracle() {
  int fails = 0, binding = 0;
  double worst = 1e300;
  CounterRng rng(2002, 0);
  for (int s = 0; s < 50; ++s) {
    const auto inst = testing::make_instance(6000 + s, 2, 8);
    const NoisePowers noise = NoisePowers::from(inst.problem.radio);
    const PhaseVector theta = PhaseVector::from_theta(testing::random_unit_modulus(rng, 8));
    const double p = inst.problem.p_max, floor = std::exp2(inst.problem.r_min) - 1.0;
    const QMatrices q = q_matrices(inst.channels, theta);
    const Precoder f = solve_precoder(inst.channels, theta, p, inst.problem.r_min, noise);
    const double obj = precoder_objective(q, f.f, noise);
    double best = 0.0, best_any = 0.0;
    for (int k = 0; k < 10000; ++k) {
      const CVec g = std::sqrt(p) * testing::random_unit_vector(rng, 2);
      const double v = precoder_objective(q, g, noise);
      best_any = std::max(best_any, v);
      if (std::norm(q.v_bob.dot(g)) / noise.bob >= floor) best = std::max(best, v);
    }
    binding += best < best_any;
    worst = std::min(worst, obj / best - 1.0);
    fails += obj < best * (1.0 - 1e-6);
  }
  return {fails == 0, fmt("50 instances, %d below oracle, worst relative margin %.3g, %d with a binding floor", fails,
                          worst, binding)};
}

// --- 3 -----------------------------------------------------------------------

Outcome reflection_oracle() {
  int fails = 0;
  double worst = 1e300;
  for (int s = 0; s < 20; ++s) {
    const ReflInstance r = reflection_instance(7000 + s, 4);
    const ReflectionResult res = solve_reflection(r.eff, PhaseVector::zeros(4), r.params);
    const CVec th = res.theta.theta();
    const double obj = reflection_ratio(r.eff, th, r.params);
    double grid = 0.0;
    CVec cand(4);
    for (int code = 0; code < 65536; ++code) {
      for (int m = 0, c = code; m < 4; ++m, c /= 16) cand(m) = std::polar(1.0, 2.0 * std::numbers::pi * (c % 16) / 16.0);
      if (rate_margin(r.eff, cand, r.params) >= 0.0) grid = std::max(grid, reflection_ratio(r.eff, cand, r.params));
    }
    worst = std::min(worst, obj / grid);
    fails += obj < grid * (1.0 - 0.02) || rate_margin(r.eff, th, r.params) < 0.0;
  }
  return {fails == 0, fmt("20 instances, %d below 0.98 x grid max, worst objective / grid max %.6f", fails, worst)};
}

// --- 4 -----------------------------------------------------------------------

Outcome mm_bound() {
  CounterRng rng(4004, 0);
  double min_slack = 1e300, max_touch = 0.0;
  for (int s = 0; s < 1000; ++s) {
    const ReflInstance r = reflection_instance(8000 + s % 50, 8);
    const double mu = 4.0 * rng.uniform();
    const CVec tilde = testing::random_unit_modulus(rng, 8);
    const CVec theta = testing::random_unit_modulus(rng, 8);
    const MMState st = surrogate_coefficients(r.eff, tilde, mu, r.params);
    const double scale = r.params.noise_eve;  // phi in units of the Eve noise power
    min_slack = std::min(min_slack, (surrogate_value(st, theta) - dinkelbach_objective(r.eff, theta, mu, r.params)) / scale);
    max_touch = std::max(max_touch,
                         std::abs(surrogate_value(st, tilde) - dinkelbach_objective(r.eff, tilde, mu, r.params)) / scale);
  }
  return {min_slack >= -1e-8 && max_touch <= 1e-10,
          fmt("1000 draws, min (surrogate - phi) / se^2 = %.3g, max |gap| at theta~ = %.3g", min_slack, max_touch)};
}

// --- 5 -----------------------------------------------------------------------

Outcome dinkelbach_structure() {
  int non_decreasing = 0, negative_r = 0;
  double worst_r = 1e300;
  for (int s = 0; s < 20; ++s) {
    const ReflInstance r = reflection_instance(9000 + s, 8);
    const PhaseVector start = PhaseVector::zeros(8);
    const ReflectionResult res = solve_reflection(r.eff, start, r.params);
    const double root = res.mu_root;
    double prev = 0.0;
    for (int k = 0; k < 10; ++k) {
      const double mu = root * std::pow(4.0, (k - 4.5) / 9.0 * 2.0);  // root / 4 .. root * 4
      const double v = dinkelbach_value(r.eff, start, mu, r.params);
      if (k > 0 && !(v < prev)) ++non_decreasing;
      prev = v;
    }
    const MMResult at_root = mm_minimize(r.eff, start, root, r.params);
    const double margins[] = {rate_margin(r.eff, at_root.theta.theta(), r.params),
                              rate_margin(r.eff, res.theta.theta(), r.params)};
    for (double m : margins) {
      worst_r = std::min(worst_r, m / r.params.noise_bob);
      negative_r += m / r.params.noise_bob < -1e-8;
    }
  }
  return {non_decreasing == 0 && negative_r == 0,
          fmt("20 instances x 10 mu, %d non-decreasing steps; min R / sb^2 at the root %.3g", non_decreasing, worst_r)};
}

// --- 6 -----------------------------------------------------------------------

Outcome taylor_correctness() {
  const Target targets[] = {Target::Bob, Target::Eve, Target::Irs};
  CounterRng rng(6006, 0);
  double worst_tau = 0.0, worst_lambda = 0.0;
  for (int s = 0; s < 100; ++s) {
    const Target tgt = targets[s % 3];
    const auto inst = testing::make_instance(10000 + s, 4, 8);
    const auto& l = inst.problem.layout;
    const auto& radio = inst.problem.radio;
    const Vec2 anchor(-90.0 + 180.0 * rng.uniform(), -90.0 + 180.0 * rng.uniform());
    const TaylorExpansion t = taylor_expand(anchor, tgt, l, inst.draw, radio);
    const CMat exact = channel_factor(anchor, tgt, l, inst.draw, radio).value;
    worst_tau = std::max(worst_tau, (t.tau_hat - exact).norm() / exact.norm());

    const Vec2 y = t.target_xy;
    const double r2 = (anchor - y).squaredNorm();
    const Vec2 u = (anchor - y).normalized();
    // step scaled to the distance from the overhead point, where the elevation is not differentiable
    const double h = 1e-4 * std::min(r2, t.X);
    auto at = [&](double x) { return channel_factor(y + std::sqrt(r2 + x) * u, tgt, l, inst.draw, radio).value; };
    const CMat fd = (at(h) - at(-h)) / (2.0 * h);
    worst_lambda = std::max(worst_lambda, (t.lambda_hat - fd).norm() / t.lambda_hat.norm());
  }
  return {worst_tau <= 1e-12 && worst_lambda <= 1e-4,
          fmt("100 pairs, worst tau error %.3g, worst lambda vs central differences %.3g", worst_tau, worst_lambda)};
}

// --- 7 -----------------------------------------------------------------------

Outcome deployment_safeguard() {
  int runs = 0, drops = 0, floor_fail = 0, at_grid = 0;
  double worst_gap = 0.0, mean_gap = 0.0;
  for (int s = 0; s < 50; ++s) {
    const auto inst = testing::make_instance(11000 + s, 4, 16);
    const auto& l = inst.problem.layout;
    const auto& radio = inst.problem.radio;
    InitialPoint init;
    try {
      init = default_init(inst.problem, inst.draw);
    } catch (const Error&) {
      continue;
    }
    const ChannelSet ch = channels_at(inst.problem, inst.draw, init.a);
    const DeployConstants k = deploy_constants(ch, init.theta, init.f, inst.draw, radio);
    const DeployValue v0 = deploy_objective(init.a, k, l, radio, inst.problem.r_min);
    const DeployResult res = solve_deployment(init.a, k, l, radio, inst.problem.r_min, inst.problem.box);
    ++runs;
    drops += res.value.ratio < v0.ratio - 1e-9;
    floor_fail += !res.value.bob_rate_ok || !inst.problem.box.contains(res.position);

    double grid = 0.0;
    for (int i = 0; i < 100; ++i)
      for (int j = 0; j < 100; ++j) {
        const Vec2 a = inst.problem.box.lo + Vec2((i + 0.5) / 100.0, (j + 0.5) / 100.0)
                                                 .cwiseProduct(inst.problem.box.hi - inst.problem.box.lo);
        const DeployValue v = deploy_objective(a, k, l, radio, inst.problem.r_min);
        if (v.bob_rate_ok) grid = std::max(grid, v.ratio);
      }
    const double gap = std::log2(grid) - std::log2(res.value.ratio);  // bits/s/Hz
    worst_gap = std::max(worst_gap, gap);
    mean_gap += gap;
    at_grid += gap <= 1e-3;
  }
  mean_gap /= std::max(1, runs);
  return {runs >= 45 && drops == 0 && floor_fail == 0,
          fmt("%d runs, %d decreases, %d floor/box violations; grid gap (informational) mean %.4g, max %.4g "
              "bits/s/Hz, %d within 1e-3 of the grid best",
              runs, drops, floor_fail, mean_gap, worst_gap, at_grid)};
}

// --- 8-11 --------------------------------------------------------------------

struct PresetRun {
  std::vector<ResultRow> rows;
  std::vector<SummaryRow> summary;
  std::string csv;
};

std::map<std::string, PresetRun> g_presets;
std::filesystem::path g_out = ".";

const PresetRun& preset_run(const std::string& name) {
  auto it = g_presets.find(name);
  if (it != g_presets.end()) return it->second;
  Scenario s = preset(name);
  s.trials = 50;
  PresetRun run;
  run.rows = run_sweep(s, threads());
  run.summary = summarize(run.rows);
  run.csv = format_results(run.rows);
  write_atomic((g_out / (name + "_results.csv")).string(), run.csv);
  const std::string summary_text = format_summary(run.summary);
  write_atomic((g_out / (name + "_summary.csv")).string(), summary_text);
  // the plotting input must survive a parse round-trip
  if (format_summary(parse_summary(read_file((g_out / (name + "_summary.csv")).string()))) != summary_text)
    raise(ErrorKind::SchemaError, name + " summary does not round-trip");
  return g_presets.emplace(name, std::move(run)).first->second;
}

double mean_of(const PresetRun& run, Mode mode, double sweep_value) {
  for (const auto& r : run.summary)
    if (r.mode == mode && r.sweep_value == sweep_value) return r.mean;
  raise(ErrorKind::OutOfRange, "missing summary row");
}

Outcome fig2_trend() {
  const PresetRun& run = preset_run("fig2");
  const double p[] = {30, 35, 40, 45, 50};
  std::ostringstream os;
  bool increasing = true;
  for (Mode m : kAllModes) {
    os << to_string(m) << " [";
    for (int i = 0; i < 5; ++i) {
      const double v = mean_of(run, m, p[i]);
      os << (i ? " " : "") << fmt("%.3f", v);
      if (i > 0 && !(v > mean_of(run, m, p[i - 1]))) increasing = false;
    }
    os << "] ";
  }
  const double ui = mean_of(run, Mode::UavIrs, 50), bi = mean_of(run, Mode::BsIrs, 50);
  const double un = mean_of(run, Mode::UavNoIrs, 50), bn = mean_of(run, Mode::BsNoIrs, 50);
  const bool order = ui > bi && bi > un && un > bn;
  os << "; increasing " << (increasing ? "yes" : "no") << "; order at 50 dBm "
     << (ui > bi ? ">" : "<=") << " " << (bi > un ? ">" : "<=") << " " << (un > bn ? ">" : "<=");
  return {increasing && order, os.str()};
}

Outcome fig3_trend() {
  const PresetRun& run = preset_run("fig3");
  std::ostringstream os;
  bool increasing = true;
  double prev = -1.0;
  os << "uav_irs [";
  for (int m = 10; m <= 60; m += 10) {
    const double v = mean_of(run, Mode::UavIrs, m);
    os << (m > 10 ? " " : "") << fmt("%.3f", v);
    if (m > 10 && !(v > prev)) increasing = false;
    prev = v;
  }
  os << "]";
  return {increasing, os.str()};
}

Outcome fig4_trend() {
  const PresetRun& run = preset_run("fig4");
  const double near = mean_of(run, Mode::UavIrs, 0) - mean_of(run, Mode::UavNoIrs, 0);
  const double far = mean_of(run, Mode::UavIrs, 40) - mean_of(run, Mode::UavNoIrs, 40);
  return {near > far, fmt("gap at bob_y = 0: %.4f, at bob_y = 40: %.4f", near, far)};
}

Outcome determinism() {
  std::ostringstream os;
  bool same = true;
  for (const auto& name : preset_names()) {
    Scenario s = preset(name);
    s.trials = 50;
    const std::string again = format_results(run_sweep(s, 1));
    const bool eq = again == preset_run(name).csv && again == read_file((g_out / (name + "_results.csv")).string());
    same = same && eq;
    os << name << (eq ? " identical " : " DIFFERS ");
  }
  os << "(single-threaded rerun vs " << threads() << "-thread run)";
  return {same, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_out = argv[1];
  std::filesystem::create_directories(g_out);
  std::printf("kernels: %s, threads: %d\n", std::string(kernels::to_string(kernels::active_backend())).c_str(), threads());

  criterion(1, "AO per-step monotonicity", monotone_traces);
  criterion(2, "power-step oracle", power_oracle);
  criterion(3, "reflection-step grid oracle", reflection_oracle);
  criterion(4, "MM surrogate bound", mm_bound);
  criterion(5, "Dinkelbach structure", dinkelbach_structure);
  criterion(6, "Taylor expansion correctness", taylor_correctness);
  criterion(7, "deployment safeguard", deployment_safeguard);
  criterion(8, "pmax sweep trend and mode ordering", fig2_trend);
  criterion(9, "element-count sweep trend", fig3_trend);
  criterion(10, "Bob position sweep IRS gain", fig4_trend);
  criterion(11, "preset determinism", determinism);

  std::printf("%d of 11 criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
