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

#include "stark/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"
#include "stark/errors.hpp"

namespace stark::config {

using Json = nlohmann::ordered_json;

namespace {

struct ExperimentInfo {
  Experiment e;
  const char* name;
};

constexpr ExperimentInfo kExperiments[] = {
    {Experiment::LindbladSweep, "lindblad-sweep"}, {Experiment::TrajValidate, "traj-validate"},
    {Experiment::HnStatic, "hn-static"},           {Experiment::HnDynamic, "hn-dynamic"},
    {Experiment::UniStatic, "uni-static"},         {Experiment::UniDynamic, "uni-dynamic"},
    {Experiment::Table1, "table1"},
};

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

std::string indexed(const std::string& path, std::size_t k) { return path + "[" + std::to_string(k) + "]"; }

// A JSON value together with the key path that reached it.
class Node {
 public:
  Node(const Json* j, std::string path) : j_(j), path_(std::move(path)) {}

  bool present() const { return j_ != nullptr && !j_->is_null(); }
  const std::string& path() const { return path_; }

  void require_object(std::initializer_list<const char*> allowed) const {
    if (!j_->is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "must be an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, v] : j_->items())
      if (!ok.count(k)) throw ConfigError(join(path_, k), "unknown key");
  }

  Node operator[](const char* key) const {
    const auto it = j_->find(key);
    return Node(it == j_->end() ? nullptr : &*it, join(path_, key));
  }

  double number() const {
    if (!j_->is_number()) throw ConfigError(path_, "must be a number");
    const double v = j_->get<double>();
    if (!std::isfinite(v)) throw ConfigError(path_, "must be finite");
    return v;
  }

  long long integer() const {
    if (!j_->is_number_integer()) throw ConfigError(path_, "must be an integer");
    return j_->get<long long>();
  }

  bool boolean() const {
    if (!j_->is_boolean()) throw ConfigError(path_, "must be true or false");
    return j_->get<bool>();
  }

  std::string string() const {
    if (!j_->is_string()) throw ConfigError(path_, "must be a string");
    return j_->get<std::string>();
  }

  // Scalars are accepted as one-element lists.
  std::vector<Node> list() const {
    std::vector<Node> out;
    if (!j_->is_array()) {
      out.emplace_back(j_, path_);
      return out;
    }
    for (std::size_t k = 0; k < j_->size(); ++k) out.emplace_back(&(*j_)[k], indexed(path_, k));
    return out;
  }

 private:
  const Json* j_;
  std::string path_;
};

double number_or(const Node& n, double fallback) { return n.present() ? n.number() : fallback; }

std::vector<double> numbers(const Node& n) {
  std::vector<double> out;
  for (const auto& e : n.list()) out.push_back(e.number());
  return out;
}

void check(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError(key, what);
}

void check_increasing(const std::vector<double>& v, const std::string& key) {
  for (std::size_t k = 0; k < v.size(); ++k) {
    check(v[k] > 0.0, indexed(key, k), "must be > 0");
    if (k > 0) check(v[k] > v[k - 1], indexed(key, k), "must be strictly increasing");
  }
}

TimeGrid parse_times(const Node& n) {
  n.require_object({"values", "step", "count"});
  TimeGrid g;
  const Node values = n["values"];
  if (values.present()) {
    check(!n["step"].present() && !n["count"].present(), n.path(), "give either values or step/count, not both");
    g.values = numbers(values);
    check(!g.values.empty(), values.path(), "must not be empty");
    check_increasing(g.values, values.path());
    return g;
  }
  check(n["step"].present() && n["count"].present(), n.path(), "needs values, or both step and count");
  g.step = n["step"].number();
  check(g.step > 0.0, join(n.path(), "step"), "must be > 0");
  const long long c = n["count"].integer();
  check(c >= 1 && c <= 1000000, join(n.path(), "count"), "must be in [1, 1000000]");
  g.count = static_cast<int>(c);
  return g;
}

Json times_json(const TimeGrid& g) {
  Json j = Json::object();
  if (!g.values.empty()) {
    j["values"] = g.values;
  } else {
    j["step"] = g.step;
    j["count"] = g.count;
  }
  return j;
}

bool series_experiment(Experiment e) {
  return e == Experiment::LindbladSweep || e == Experiment::HnDynamic || e == Experiment::UniDynamic;
}

bool needs_gamma(Experiment e) {
  return e == Experiment::LindbladSweep || e == Experiment::TrajValidate || e == Experiment::HnStatic ||
         e == Experiment::HnDynamic;
}

const std::set<std::string> kUniStates = {"ground", "mid", "edge"};

}  // namespace

const char* name(Experiment e) {
  for (const auto& x : kExperiments)
    if (x.e == e) return x.name;
  return "?";
}

std::vector<double> TimeGrid::resolve() const {
  if (!values.empty()) return values;
  std::vector<double> t(count);
  for (int k = 0; k < count; ++k) t[k] = step * (k + 1);
  return t;
}

Config parse(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("<root>", std::string("not valid JSON: ") + e.what());
  }
  // A manifest carries the resolved config under "config".
  if (root.is_object() && root.contains("manifest_version")) {
    if (!root.contains("config")) throw ConfigError("config", "manifest has no config section");
    Json inner = root["config"];
    root = std::move(inner);
  }
  const Node top(&root, "");
  top.require_object({"experiment", "seed", "threads", "lattice", "times", "derivative", "analysis", "lindblad",
                      "trajectory", "hn_static", "uni_static", "packet", "table1"});
  Config c;

  {
    const Node n = top["experiment"];
    check(n.present(), "experiment", "is required");
    const std::string s = n.string();
    bool found = false;
    for (const auto& x : kExperiments) {
      if (s == x.name) {
        c.experiment = x.e;
        found = true;
      }
    }
    check(found, "experiment",
          "unknown experiment '" + s +
              "' (expected lindblad-sweep, traj-validate, hn-static, hn-dynamic, uni-static, uni-dynamic, table1)");
  }
  if (top["seed"].present()) {
    const long long s = top["seed"].integer();
    check(s >= 0, "seed", "must be >= 0");
    c.seed = static_cast<std::uint64_t>(s);
  }
  if (top["threads"].present()) {
    const long long t = top["threads"].integer();
    check(t >= 1 && t <= 1024, "threads", "must be in [1, 1024]");
    c.threads = static_cast<int>(t);
  }

  const Experiment e = c.experiment;
  const Node lat = top["lattice"];
  if (e != Experiment::Table1) {
    check(lat.present(), "lattice", "is required");
    lat.require_object({"J", "L", "h", "gamma"});
    c.lattice.J = number_or(lat["J"], 1.0);
    check(c.lattice.J > 0.0, "lattice.J", "must be > 0");
    check(lat["L"].present(), "lattice.L", "is required");
    for (const auto& n : lat["L"].list()) {
      const long long L = n.integer();
      check(L >= 2 && L <= 4000, n.path(), "must be in [2, 4000]");
      c.lattice.L.push_back(static_cast<int>(L));
    }
    check(!c.lattice.L.empty(), "lattice.L", "must not be empty");
    check(lat["h"].present(), "lattice.h", "is required");
    c.lattice.h = numbers(lat["h"]);
    check(!c.lattice.h.empty(), "lattice.h", "must not be empty");
    for (std::size_t k = 0; k < c.lattice.h.size(); ++k) check(c.lattice.h[k] >= 0.0, indexed("lattice.h", k), "must be >= 0");
    if (needs_gamma(e)) {
      check(lat["gamma"].present(), "lattice.gamma", "is required for " + std::string(name(e)));
      c.lattice.gamma = numbers(lat["gamma"]);
      check(!c.lattice.gamma.empty(), "lattice.gamma", "must not be empty");
      for (std::size_t k = 0; k < c.lattice.gamma.size(); ++k)
        check(c.lattice.gamma[k] >= 0.0, indexed("lattice.gamma", k), "must be >= 0");
    } else {
      check(!lat["gamma"].present(), "lattice.gamma", "not used by " + std::string(name(e)));
      c.lattice.gamma = {0.0};
    }
    if (e == Experiment::HnStatic || e == Experiment::UniStatic) {
      check(c.lattice.h.size() >= 3, "lattice.h", "static scans need at least 3 field values");
      check_increasing(c.lattice.h, "lattice.h");
    }
    if (e == Experiment::UniStatic || e == Experiment::UniDynamic) {
      for (std::size_t k = 0; k < c.lattice.h.size(); ++k)
        check(c.lattice.h[k] > 0.0, indexed("lattice.h", k), "unidirectional lattice needs h > 0");
    }
  } else {
    check(!lat.present(), "lattice", "not used by table1 (see the table1 section)");
  }

  if (series_experiment(e)) {
    check(top["times"].present(), "times", "is required for " + std::string(name(e)));
    c.times = parse_times(top["times"]);
  } else {
    check(!top["times"].present(), "times", "not used by " + std::string(name(e)));
  }

  if (const Node d = top["derivative"]; d.present()) {
    d.require_object({"step", "richardson", "richardson_tolerance"});
    c.derivative.step = number_or(d["step"], 0.0);
    check(c.derivative.step >= 0.0, "derivative.step", "must be >= 0 (0 selects the default)");
    if (d["richardson"].present()) c.derivative.richardson = d["richardson"].boolean();
    c.derivative.richardson_tolerance = number_or(d["richardson_tolerance"], c.derivative.richardson_tolerance);
    check(c.derivative.richardson_tolerance > 0.0, "derivative.richardson_tolerance", "must be > 0");
  }

  if (const Node a = top["analysis"]; a.present()) {
    a.require_object({"alpha_window", "spread"});
    if (a["alpha_window"].present()) {
      const auto w = numbers(a["alpha_window"]);
      check(w.size() == 2, "analysis.alpha_window", "must be [lo, hi]");
      check(w[0] > 0.0 && w[1] > w[0], "analysis.alpha_window", "needs 0 < lo < hi");
      c.alpha_window = {w[0], w[1]};
    }
    c.spread = number_or(a["spread"], c.spread);
    check(c.spread > 0.0 && c.spread < 1.0, "analysis.spread", "must be in (0, 1)");
  }

  if (const Node n = top["lindblad"]; n.present()) {
    n.require_object({"method", "snapshot_time"});
    if (n["method"].present()) {
      const std::string m = n["method"].string();
      if (m == "structured") c.lindblad.method = lindblad::Method::Structured;
      else if (m == "dense") c.lindblad.method = lindblad::Method::DenseSuperoperator;
      else throw ConfigError("lindblad.method", "must be 'structured' or 'dense'");
    }
    c.lindblad.snapshot_time = number_or(n["snapshot_time"], 0.0);
    check(c.lindblad.snapshot_time >= 0.0, "lindblad.snapshot_time", "must be >= 0");
  }
  if (e == Experiment::LindbladSweep) {
    if (c.lindblad.method == lindblad::Method::DenseSuperoperator)
      for (std::size_t k = 0; k < c.lattice.L.size(); ++k)
        check(c.lattice.L[k] <= 40, indexed("lattice.L", k), "dense superoperator route is limited to L <= 40");
    if (c.lindblad.snapshot_time > 0.0) {
      const auto ts = c.times.resolve();
      bool hit = false;
      for (double t : ts) hit = hit || std::abs(t - c.lindblad.snapshot_time) <= 1e-12 * t;
      check(hit, "lindblad.snapshot_time", "must be one of the sampled times");
      check(c.lattice.h.size() >= 4, "lattice.h", "an h scan needs at least 4 field values");
      check_increasing(c.lattice.h, "lattice.h");
    }
  }

  if (const Node n = top["trajectory"]; n.present()) {
    n.require_object({"dt", "n_traj", "checkpoints", "first_order", "halving"});
    c.trajectory.dt = number_or(n["dt"], c.trajectory.dt);
    check(c.trajectory.dt > 0.0, "trajectory.dt", "must be > 0");
    if (n["n_traj"].present()) {
      const long long v = n["n_traj"].integer();
      check(v >= 2 && v <= 100000000, "trajectory.n_traj", "must be in [2, 1e8]");
      c.trajectory.n_traj = static_cast<int>(v);
    }
    if (n["checkpoints"].present()) c.trajectory.checkpoints = numbers(n["checkpoints"]);
    if (n["first_order"].present()) c.trajectory.first_order = n["first_order"].boolean();
    if (n["halving"].present()) c.trajectory.halving = n["halving"].boolean();
  }
  if (e == Experiment::TrajValidate) {
    check(!c.trajectory.checkpoints.empty(), "trajectory.checkpoints", "is required for traj-validate");
    check_increasing(c.trajectory.checkpoints, "trajectory.checkpoints");
    for (std::size_t k = 0; k < c.trajectory.checkpoints.size(); ++k) {
      const double r = c.trajectory.checkpoints[k] / c.trajectory.dt;
      check(std::abs(r - std::round(r)) <= 1e-9 * r, indexed("trajectory.checkpoints", k),
            "must be a multiple of trajectory.dt");
    }
  }

  if (const Node n = top["hn_static"]; n.present()) {
    n.require_object({"state", "skin_h"});
    if (n["state"].present()) c.hn_static.state = n["state"].string();
    check(c.hn_static.state == "lowest" || c.hn_static.state == "highest", "hn_static.state",
          "must be 'lowest' or 'highest'");
    c.hn_static.skin_h = number_or(n["skin_h"], 0.0);
    check(c.hn_static.skin_h >= 0.0, "hn_static.skin_h", "must be >= 0");
  }

  if (const Node n = top["uni_static"]; n.present()) {
    n.require_object({"states"});
    if (n["states"].present()) {
      c.uni_static.states.clear();
      for (const auto& s : n["states"].list()) {
        const std::string v = s.string();
        check(kUniStates.count(v) == 1, s.path(), "must be 'ground', 'mid' or 'edge'");
        c.uni_static.states.push_back(v);
      }
      check(!c.uni_static.states.empty(), "uni_static.states", "must not be empty");
    }
  }

  if (const Node n = top["packet"]; n.present()) {
    n.require_object({"sigma", "revival_periods"});
    c.packet.sigma = number_or(n["sigma"], c.packet.sigma);
    check(c.packet.sigma > 0.0, "packet.sigma", "must be > 0");
    if (n["revival_periods"].present()) {
      const long long v = n["revival_periods"].integer();
      check(v >= 0 && v <= 1000, "packet.revival_periods", "must be in [0, 1000]");
      c.packet.revival_periods = static_cast<int>(v);
    }
  }

  if (const Node n = top["table1"]; n.present()) {
    n.require_object({"repetitions", "gamma", "fixed_time", "lindblad_size", "nh_size", "lindblad_h", "hn_h", "uni_h",
                      "times"});
    auto& t = c.table1;
    t.repetitions = number_or(n["repetitions"], t.repetitions);
    check(t.repetitions > 0.0, "table1.repetitions", "must be > 0");
    t.gamma = number_or(n["gamma"], t.gamma);
    check(t.gamma >= 0.0, "table1.gamma", "must be >= 0");
    t.fixed_time = number_or(n["fixed_time"], t.fixed_time);
    check(t.fixed_time > 0.0, "table1.fixed_time", "must be > 0");
    if (n["lindblad_size"].present()) t.lindblad_size = static_cast<int>(n["lindblad_size"].integer());
    check(t.lindblad_size >= 2 && t.lindblad_size <= 400, "table1.lindblad_size", "must be in [2, 400]");
    if (n["nh_size"].present()) t.nh_size = static_cast<int>(n["nh_size"].integer());
    check(t.nh_size >= 2 && t.nh_size <= 4000, "table1.nh_size", "must be in [2, 4000]");
    for (auto [key, dst] : {std::pair{"lindblad_h", &t.lindblad_h}, {"hn_h", &t.hn_h}, {"uni_h", &t.uni_h}}) {
      if (!n[key].present()) continue;
      *dst = numbers(n[key]);
      for (std::size_t k = 0; k < dst->size(); ++k)
        check((*dst)[k] > 0.0, indexed(join("table1", key), k), "must be > 0");
    }
    if (n["times"].present()) t.times = parse_times(n["times"]);
  }
  return c;
}

Config load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("<file>", "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string to_json(const Config& c) {
  const Experiment e = c.experiment;
  Json j;
  j["experiment"] = name(e);
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  if (e != Experiment::Table1) {
    Json lat;
    lat["J"] = c.lattice.J;
    lat["L"] = c.lattice.L;
    lat["h"] = c.lattice.h;
    if (needs_gamma(e)) lat["gamma"] = c.lattice.gamma;
    j["lattice"] = lat;
  }
  if (series_experiment(e)) j["times"] = times_json(c.times);
  j["derivative"] = {{"step", c.derivative.step},
                     {"richardson", c.derivative.richardson},
                     {"richardson_tolerance", c.derivative.richardson_tolerance}};
  j["analysis"] = {{"alpha_window", {c.alpha_window.lo, c.alpha_window.hi}}, {"spread", c.spread}};
  if (e == Experiment::LindbladSweep) {
    j["lindblad"] = {{"method", c.lindblad.method == lindblad::Method::Structured ? "structured" : "dense"},
                     {"snapshot_time", c.lindblad.snapshot_time}};
  }
  if (e == Experiment::TrajValidate) {
    j["trajectory"] = {{"dt", c.trajectory.dt},
                       {"n_traj", c.trajectory.n_traj},
                       {"checkpoints", c.trajectory.checkpoints},
                       {"first_order", c.trajectory.first_order},
                       {"halving", c.trajectory.halving}};
  }
  if (e == Experiment::HnStatic) j["hn_static"] = {{"state", c.hn_static.state}, {"skin_h", c.hn_static.skin_h}};
  if (e == Experiment::UniStatic) j["uni_static"] = {{"states", c.uni_static.states}};
  if (e == Experiment::UniDynamic || e == Experiment::Table1)
    j["packet"] = {{"sigma", c.packet.sigma}, {"revival_periods", c.packet.revival_periods}};
  if (e == Experiment::Table1) {
    const auto& t = c.table1;
    j["table1"] = {{"repetitions", t.repetitions}, {"gamma", t.gamma},         {"fixed_time", t.fixed_time},
                   {"lindblad_size", t.lindblad_size}, {"nh_size", t.nh_size}, {"lindblad_h", t.lindblad_h},
                   {"hn_h", t.hn_h},                 {"uni_h", t.uni_h},       {"times", times_json(t.times)}};
  }
  return j.dump(2);
}

}  // namespace stark::config
