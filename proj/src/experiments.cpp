// Copyright 2026 The starkprobe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stark/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <thread>

#include "json.hpp"
#include "stark/analysis.hpp"
#include "stark/csv.hpp"
#include "stark/errors.hpp"
#include "stark/lindblad.hpp"
#include "stark/model.hpp"
#include "stark/nh_dynamics.hpp"
#include "stark/probes.hpp"
#include "stark/simd/kernels.hpp"
#include "stark/spectral.hpp"
#include "stark/trajectory.hpp"

#ifndef STARK_VERSION
#define STARK_VERSION "0.0.0"
#endif

namespace stark::experiments {

using config::Config;
using config::Experiment;
using csv::Cell;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<Cell> key(const std::string& formalism, int L, double J, double h, double gamma, double t,
                      std::uint64_t seed) {
  return {formalism, static_cast<std::int64_t>(L), J, h, gamma, t, static_cast<std::int64_t>(seed)};
}

std::vector<Cell> operator+(std::vector<Cell> a, const std::vector<Cell>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::string join_notes(const std::vector<std::string>& notes) {
  std::string s;
  for (const auto& n : notes) s += (s.empty() ? "" : ";") + n;
  return s;
}

std::string join_sizes(const std::vector<double>& Ls) {
  std::string s;
  for (double L : Ls) s += (s.empty() ? "" : ";") + std::to_string(static_cast<int>(L));
  return s;
}

// Analysis failures are recorded next to the data instead of aborting.
template <class F>
std::string guarded(F&& f) {
  try {
    f();
    return "ok";
  } catch (const NumericalError& e) {
    return e.what();
  }
}

class Run {
 public:
  Run(const Config& c, std::filesystem::path dir) : c_(c), dir_(std::move(dir)) {}

  std::unique_ptr<csv::Writer> open(const std::string& name, std::vector<std::string> columns) {
    auto w = std::make_unique<csv::Writer>(dir_ / name, std::move(columns));
    names_.push_back(name);
    return w;
  }

  void done(csv::Writer& w) {
    w.close();
    summary_.files.push_back({w.path().filename().string(), w.rows()});
  }

  void phase(const std::string& name, double seconds) { phases_.emplace_back(name, seconds); }

  const Config& c_;
  std::filesystem::path dir_;
  RunSummary summary_;
  std::vector<std::string> names_;
  std::vector<std::pair<std::string, double>> phases_;
};

LatticeSpec spec_of(int L, double J, double h, double gamma) { return LatticeSpec{L, J, h, gamma}; }

metrology::DerivativeOptions derivative_of(const Config& c) {
  auto d = c.derivative;
  d.parallel = false;
  return d;
}

struct Point {
  int L;
  double h;
  double gamma;
};

std::vector<Point> grid_points(const Config& c) {
  std::vector<Point> pts;
  for (double g : c.lattice.gamma)
    for (double h : c.lattice.h)
      for (int L : c.lattice.L) pts.push_back({L, h, g});
  return pts;
}

// Series pipelines share the same three outputs: the raw F^Q(t) rows, one
// peak row per point and one size-scaling row per (h, gamma).
void write_series(Run& run, const std::string& prefix, const std::string& formalism, const std::vector<Point>& pts,
                  const std::vector<probes::QfiSeries>& series) {
  const Config& c = run.c_;
  const double J = c.lattice.J;
  {
    auto w = run.open(prefix + "_series.csv", {"fq", "fq_over_t2"});
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto& s = series[i];
      for (std::size_t k = 0; k < s.times.size(); ++k) {
        const double t = s.times[k];
        w->row(key(formalism, pts[i].L, J, pts[i].h, pts[i].gamma, t, c.seed) + std::vector<Cell>{s.fq[k], s.fq[k] / (t * t)});
      }
    }
    run.done(*w);
  }
  std::map<std::pair<double, double>, std::pair<std::vector<double>, std::vector<double>>> by_field;
  {
    auto w = run.open(prefix + "_peaks.csv", {"peak_fq_over_t2", "alpha", "alpha_r_squared", "derivative_step",
                                              "max_discarded_fraction", "notes", "status"});
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto& s = series[i];
      analysis::TimeSeries ts{s.times, s.fq, {formalism, pts[i].L, J, pts[i].h, pts[i].gamma}};
      analysis::Peak peak{kNaN, kNaN, 0};
      analysis::ScalingFit alpha;
      alpha.exponent = alpha.r_squared = kNaN;
      std::string status = guarded([&] { peak = analysis::peak_qfi_over_t2(ts); });
      const std::string alpha_status = guarded([&] { alpha = analysis::short_time_alpha(ts, c.alpha_window); });
      if (alpha_status != "ok") status = status == "ok" ? alpha_status : status + "; " + alpha_status;
      if (std::isfinite(peak.value)) {
        auto& [Ls, peaks] = by_field[{pts[i].h, pts[i].gamma}];
        Ls.push_back(pts[i].L);
        peaks.push_back(peak.value);
      }
      w->row(key(formalism, pts[i].L, J, pts[i].h, pts[i].gamma, peak.t_opt, c.seed) +
             std::vector<Cell>{peak.value, alpha.exponent, alpha.r_squared, s.derivative_step, s.max_discarded_fraction,
                               join_notes(s.notes), status});
    }
    run.done(*w);
  }
  auto w = run.open(prefix + "_beta.csv", {"sizes", "beta", "prefactor", "r_squared", "status"});
  for (const auto& [field, data] : by_field) {
    const auto& [Ls, peaks] = data;
    analysis::ScalingFit fit;
    fit.exponent = fit.prefactor = fit.r_squared = kNaN;
    const std::string status = guarded([&] { fit = analysis::size_scaling_beta(Ls, peaks); });
    w->row(key(formalism, 0, J, field.first, field.second, kNaN, c.seed) +
           std::vector<Cell>{join_sizes(Ls), fit.exponent, fit.prefactor, fit.r_squared, status});
  }
  run.done(*w);
}

void lindblad_sweep(Run& run) {
  const Config& c = run.c_;
  const auto pts = grid_points(c);
  const auto times = c.times.resolve();
  std::vector<probes::QfiSeries> series(pts.size());
  const auto t0 = Clock::now();
  parallel_for(static_cast<int>(pts.size()), c.threads, [&](int i) {
    const auto& p = pts[i];
    series[i] = probes::lindblad_qfi(spec_of(p.L, c.lattice.J, p.h, p.gamma), times, derivative_of(c), c.lindblad.method);
  });
  run.phase("qfi", seconds_since(t0));
  write_series(run, "lindblad", "lindblad", pts, series);
  if (!(c.lindblad.snapshot_time > 0.0)) return;

  // h scan at the snapshot time, one table per gamma.
  std::size_t kt = 0;
  while (std::abs(times[kt] - c.lindblad.snapshot_time) > 1e-12 * times[kt]) ++kt;
  const double ts = times[kt];
  auto tw = run.open("lindblad_transition.csv", {"h_c", "predicted_h_c", "h_c_times_size", "spread_threshold", "status"});
  auto cw = run.open("lindblad_collapse.csv",
                     {"sizes", "exponent", "prefactor", "r_squared", "max_spread", "h_threshold", "threshold_spread",
                      "status"});
  for (double g : c.lattice.gamma) {
    std::map<int, std::vector<double>> values;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (pts[i].gamma != g) continue;
      values[pts[i].L].push_back(series[i].fq[kt] / (ts * ts));
    }
    std::vector<double> hs = c.lattice.h;
    std::vector<double> Ls;
    for (const auto& [L, v] : values) Ls.push_back(L);
    std::vector<analysis::TransitionPoint> tps;
    const std::string tstatus = guarded([&] { tps = analysis::transition_point(hs, values, c.lattice.J, c.spread); });
    for (const auto& tp : tps) {
      tw->row(key("lindblad", tp.L, c.lattice.J, tp.h_c, g, ts, c.seed) +
              std::vector<Cell>{tp.h_c, tp.predicted, tp.h_c * tp.L, c.spread, tstatus});
    }
    if (tps.empty()) {
      tw->row(key("lindblad", 0, c.lattice.J, kNaN, g, ts, c.seed) +
              std::vector<Cell>{kNaN, kNaN, kNaN, c.spread, tstatus});
    }
    analysis::CollapseCheck cc;
    cc.fit.exponent = cc.fit.prefactor = cc.fit.r_squared = kNaN;
    const std::string cstatus = guarded([&] { cc = analysis::localized_collapse_check(hs, values, c.lattice.J, c.spread); });
    cw->row(key("lindblad", 0, c.lattice.J, cc.h_threshold, g, ts, c.seed) +
            std::vector<Cell>{join_sizes(Ls), cc.fit.exponent, cc.fit.prefactor, cc.fit.r_squared, cc.max_spread,
                              cc.h_threshold, cc.threshold_spread, cstatus});
  }
  run.done(*tw);
  run.done(*cw);
}

void traj_validate(Run& run) {
  const Config& c = run.c_;
  const auto pts = grid_points(c);
  const auto& cps = c.trajectory.checkpoints;
  auto w = run.open("traj_validate.csv", {"n_traj", "trace_distance", "max_population_stderr", "total_jumps", "dt",
                                          "first_order"});
  const auto t0 = Clock::now();
  for (const auto& p : pts) {
    const LatticeSpec spec = spec_of(p.L, c.lattice.J, p.h, p.gamma);
    const int site = lindblad::middle_site(p.L);
    const auto reference = lindblad::propagate(DensityMatrix::basis(p.L, site), spec, cps);
    std::vector<int> ns{c.trajectory.n_traj};
    if (c.trajectory.halving) ns.push_back(c.trajectory.n_traj / 2);
    for (int n : ns) {
      trajectory::TrajectoryConfig tc;
      tc.dt = c.trajectory.dt;
      tc.t_final = cps.back();
      tc.n_traj = n;
      tc.seed = c.seed;
      tc.threads = c.threads;
      tc.first_order_jump_probability = c.trajectory.first_order;
      const auto ens = trajectory::run_ensemble(nh::site_state(p.L, site), spec, tc, cps);
      for (std::size_t k = 0; k < cps.size(); ++k) {
        const double d = trace_distance(ens.mean[k].matrix(), reference[k].matrix());
        w->row(key("trajectory", p.L, c.lattice.J, p.h, p.gamma, cps[k], c.seed) +
               std::vector<Cell>{static_cast<std::int64_t>(n), d, ens.population_stderr[k],
                                 static_cast<std::int64_t>(ens.total_jumps), tc.dt,
                                 static_cast<std::int64_t>(tc.first_order_jump_probability)});
      }
    }
  }
  run.phase("trajectories", seconds_since(t0));
  run.done(*w);
}

// Static eigenstate scans share a layout: QFI over the h grid per (L, gamma,
// state), the refined maximum, and beta of the maxima over L.
struct StaticCurve {
  int L;
  double gamma;
  std::string state;
  std::vector<double> fq;
};

void write_static(Run& run, const std::string& prefix, const std::string& formalism,
                  const std::vector<StaticCurve>& curves) {
  const Config& c = run.c_;
  const double J = c.lattice.J;
  const auto& hs = c.lattice.h;
  {
    auto w = run.open(prefix + ".csv", {"state", "fq"});
    for (const auto& cv : curves)
      for (std::size_t k = 0; k < hs.size(); ++k)
        w->row(key(formalism, cv.L, J, hs[k], cv.gamma, kNaN, c.seed) + std::vector<Cell>{cv.state, cv.fq[k]});
    run.done(*w);
  }
  std::map<std::pair<double, std::string>, std::pair<std::vector<double>, std::vector<double>>> groups;
  {
    auto w = run.open(prefix + "_peaks.csv", {"state", "h_max", "fq_max", "status"});
    for (const auto& cv : curves) {
      analysis::Peak pk{kNaN, kNaN, 0};
      const std::string status = guarded([&] { pk = analysis::refine_peak(hs, cv.fq); });
      if (std::isfinite(pk.value)) {
        auto& [Ls, peaks] = groups[{cv.gamma, cv.state}];
        Ls.push_back(cv.L);
        peaks.push_back(pk.value);
      }
      w->row(key(formalism, cv.L, J, pk.t_opt, cv.gamma, kNaN, c.seed) +
             std::vector<Cell>{cv.state, pk.t_opt, pk.value, status});
    }
    run.done(*w);
  }
  auto w = run.open(prefix + "_beta.csv", {"state", "sizes", "beta", "prefactor", "r_squared", "status"});
  for (const auto& [g, data] : groups) {
    analysis::ScalingFit fit;
    fit.exponent = fit.prefactor = fit.r_squared = kNaN;
    const std::string status = guarded([&] { fit = analysis::size_scaling_beta(data.first, data.second); });
    w->row(key(formalism, 0, J, kNaN, g.first, kNaN, c.seed) +
           std::vector<Cell>{g.second, join_sizes(data.first), fit.exponent, fit.prefactor, fit.r_squared, status});
  }
  run.done(*w);
}

void hn_static(Run& run) {
  const Config& c = run.c_;
  const auto& hs = c.lattice.h;
  struct Task {
    int L;
    double gamma;
    std::size_t k;
  };
  std::vector<Task> tasks;
  for (double g : c.lattice.gamma)
    for (int L : c.lattice.L)
      for (std::size_t k = 0; k < hs.size(); ++k) tasks.push_back({L, g, k});
  std::vector<double> fq(tasks.size());
  const auto t0 = Clock::now();
  parallel_for(static_cast<int>(tasks.size()), c.threads, [&](int i) {
    const auto& t = tasks[i];
    const int index = c.hn_static.state == "lowest" ? 0 : t.L - 1;
    fq[i] = probes::eigenstate_qfi(model::Family::HatanoNelson, spec_of(t.L, c.lattice.J, hs[t.k], t.gamma), index,
                                   derivative_of(c));
  });
  run.phase("qfi", seconds_since(t0));
  std::vector<StaticCurve> curves;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (tasks[i].k == 0) curves.push_back({tasks[i].L, tasks[i].gamma, c.hn_static.state, {}});
    curves.back().fq.push_back(fq[i]);
  }
  write_static(run, "hn_static", "hatano_nelson", curves);

  auto w = run.open("hn_skin.csv", {"eigen_index", "energy_re", "energy_im", "participation_ratio", "center_of_mass"});
  for (double g : c.lattice.gamma) {
    for (int L : c.lattice.L) {
      const auto sys = spectral::eig_biorthogonal(
          model::build(model::Family::HatanoNelson, spec_of(L, c.lattice.J, c.hn_static.skin_h, g)));
      for (int n = 0; n < L; ++n) {
        const auto loc = analysis::skin_localization_metric(sys.normalized_right(n));
        w->row(key("hatano_nelson", L, c.lattice.J, c.hn_static.skin_h, g, kNaN, c.seed) +
               std::vector<Cell>{static_cast<std::int64_t>(n), sys.values(n).real(), sys.values(n).imag(),
                                 loc.participation_ratio, loc.center_of_mass});
      }
    }
  }
  run.done(*w);
}

int uni_index(const std::string& state, int L) {
  if (state == "ground") return 0;
  if (state == "mid") return L / 2;
  return L - 1;
}

void uni_static(Run& run) {
  const Config& c = run.c_;
  const auto& hs = c.lattice.h;
  struct Task {
    int L;
    std::string state;
    std::size_t k;
  };
  std::vector<Task> tasks;
  for (const auto& s : c.uni_static.states)
    for (int L : c.lattice.L)
      for (std::size_t k = 0; k < hs.size(); ++k) tasks.push_back({L, s, k});
  std::vector<double> fq(tasks.size());
  const auto t0 = Clock::now();
  parallel_for(static_cast<int>(tasks.size()), c.threads, [&](int i) {
    const auto& t = tasks[i];
    fq[i] = probes::eigenstate_qfi(model::Family::Unidirectional, spec_of(t.L, c.lattice.J, hs[t.k], 0.0),
                                   uni_index(t.state, t.L), derivative_of(c));
  });
  run.phase("qfi", seconds_since(t0));
  std::vector<StaticCurve> curves;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (tasks[i].k == 0) curves.push_back({tasks[i].L, 0.0, tasks[i].state, {}});
    curves.back().fq.push_back(fq[i]);
  }
  write_static(run, "uni_static", "unidirectional", curves);
}

void nh_dynamic(Run& run, model::Family family) {
  const Config& c = run.c_;
  const bool uni = family == model::Family::Unidirectional;
  const auto pts = grid_points(c);
  const auto times = c.times.resolve();
  std::vector<probes::QfiSeries> series(pts.size());
  const auto t0 = Clock::now();
  parallel_for(static_cast<int>(pts.size()), c.threads, [&](int i) {
    const auto& p = pts[i];
    const CVector psi0 = uni ? nh::gaussian_packet(p.L, c.packet.sigma) : nh::site_state(p.L, lindblad::middle_site(p.L));
    series[i] = probes::nh_qfi(family, spec_of(p.L, c.lattice.J, p.h, p.gamma), psi0, times, derivative_of(c));
  });
  run.phase("qfi", seconds_since(t0));
  const std::string formalism = uni ? "unidirectional" : "hatano_nelson";
  write_series(run, uni ? "uni_dynamic" : "hn_dynamic", formalism, pts, series);
  if (!uni || c.packet.revival_periods == 0) return;

  auto w = run.open("uni_revival.csv", {"period", "revival_fidelity"});
  for (const auto& p : pts) {
    const LatticeSpec spec = spec_of(p.L, c.lattice.J, p.h, 0.0);
    const double period = 2.0 * std::numbers::pi / p.h;
    const CVector psi0 = nh::gaussian_packet(p.L, c.packet.sigma);
    for (double t : times) {
      if (t > c.packet.revival_periods * period) break;
      const double f = fidelity(nh::evolve_unidirectional(psi0, spec, t), nh::evolve_unidirectional(psi0, spec, t + period));
      w->row(key(formalism, p.L, c.lattice.J, p.h, 0.0, t, c.seed) + std::vector<Cell>{period, f});
    }
  }
  run.done(*w);
}

void table1(Run& run) {
  const Config& c = run.c_;
  const auto& tb = c.table1;
  std::vector<double> times = tb.times.resolve();
  bool has_fixed = false;
  for (double t : times) has_fixed = has_fixed || std::abs(t - tb.fixed_time) <= 1e-12 * t;
  if (!has_fixed) {
    times.push_back(tb.fixed_time);
    std::sort(times.begin(), times.end());
  }
  struct Row {
    std::string formalism;
    int L;
    double h;
  };
  std::vector<Row> rows;
  for (double h : tb.lindblad_h) rows.push_back({"lindblad", tb.lindblad_size, h});
  for (double h : tb.hn_h) rows.push_back({"hatano_nelson", tb.nh_size, h});
  for (double h : tb.uni_h) rows.push_back({"unidirectional", tb.nh_size, h});
  std::vector<probes::QfiSeries> series(rows.size());
  const auto t0 = Clock::now();
  parallel_for(static_cast<int>(rows.size()), c.threads, [&](int i) {
    const auto& r = rows[i];
    const LatticeSpec spec = spec_of(r.L, 1.0, r.h, tb.gamma);
    if (r.formalism == "lindblad") {
      series[i] = probes::lindblad_qfi(spec, times, derivative_of(c));
    } else if (r.formalism == "hatano_nelson") {
      series[i] = probes::nh_qfi(model::Family::HatanoNelson, spec,
                                 nh::site_state(r.L, lindblad::middle_site(r.L)), times, derivative_of(c));
    } else {
      series[i] = probes::nh_qfi(model::Family::Unidirectional, spec, nh::gaussian_packet(r.L, c.packet.sigma), times,
                                 derivative_of(c));
    }
  });
  run.phase("qfi", seconds_since(t0));
  auto w = run.open("table1.csv", {"phase", "t_opt", "fq_t_opt", "snr_t_opt", "fixed_time", "fq_fixed", "snr_fixed",
                                   "repetitions", "status"});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const auto& s = series[i];
    analysis::TimeSeries ts{s.times, s.fq, {r.formalism, r.L, 1.0, r.h, tb.gamma}};
    analysis::Peak pk{kNaN, kNaN, 0};
    const std::string status = guarded([&] { pk = analysis::peak_qfi_over_t2(ts); });
    const double fq_opt = std::isfinite(pk.value) ? pk.value * pk.t_opt * pk.t_opt : kNaN;
    std::size_t kf = 0;
    while (std::abs(s.times[kf] - tb.fixed_time) > 1e-12 * tb.fixed_time) ++kf;
    const double fq_fixed = s.fq[kf];
    const double hc = 8.0 / r.L;
    w->row(key(r.formalism, r.L, 1.0, r.h, tb.gamma, pk.t_opt, c.seed) +
           std::vector<Cell>{std::string(r.h < hc ? "extended" : "localized"), pk.t_opt, fq_opt,
                             std::isfinite(fq_opt) ? metrology::snr(r.h, tb.repetitions, fq_opt) : kNaN, tb.fixed_time,
                             fq_fixed, metrology::snr(r.h, tb.repetitions, fq_fixed), tb.repetitions, status});
  }
  run.done(*w);
}

void write_manifest(const Run& run, double total_seconds) {
  using Json = nlohmann::ordered_json;
  Json m;
  m["manifest_version"] = 1;
  m["code_version"] = code_version();
  m["experiment"] = config::name(run.c_.experiment);
  m["seed"] = run.c_.seed;
  m["threads"] = run.c_.threads;
  m["simd"] = std::string(simd::isa_name(simd::active().isa));
  m["config"] = Json::parse(config::to_json(run.c_));
  Json files = Json::array();
  for (const auto& f : run.summary_.files) files.push_back({{"name", f.name}, {"rows", f.rows}});
  m["outputs"] = files;
  Json rt = Json::object();
  for (const auto& [name, s] : run.phases_) rt[name] = s;
  rt["total"] = total_seconds;
  m["runtime_seconds"] = rt;
  const auto path = run.dir_ / kManifestName;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << m.dump(2) << '\n';
  out.close();
  if (out.fail()) throw Error("manifest: write to " + path.string() + " failed");
}

}  // namespace

const char* code_version() { return STARK_VERSION; }

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  const int workers = std::max(1, std::min(threads, n));
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < workers; ++k) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

RunSummary run(const Config& c, const std::filesystem::path& out_dir) {
  const auto t0 = Clock::now();
  std::filesystem::create_directories(out_dir);
  // A stale manifest would mark an interrupted run as complete.
  std::filesystem::remove(out_dir / kManifestName);
  Run r(c, out_dir);
  switch (c.experiment) {
    case Experiment::LindbladSweep: lindblad_sweep(r); break;
    case Experiment::TrajValidate: traj_validate(r); break;
    case Experiment::HnStatic: hn_static(r); break;
    case Experiment::HnDynamic: nh_dynamic(r, model::Family::HatanoNelson); break;
    case Experiment::UniStatic: uni_static(r); break;
    case Experiment::UniDynamic: nh_dynamic(r, model::Family::Unidirectional); break;
    case Experiment::Table1: table1(r); break;
  }
  r.summary_.seconds = seconds_since(t0);
  write_manifest(r, r.summary_.seconds);
  return r.summary_;
}

}  // namespace stark::experiments
