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

#pragma once

// Scaling-law extraction from Fisher-information curves.

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "stark/types.hpp"

namespace stark::analysis {

struct ParamRecord {
  std::string formalism;
  int L = 0;
  double J = 1.0;
  double h = 0.0;
  double gamma = 0.0;
};

struct TimeSeries {
  std::vector<double> times;  // strictly increasing
  std::vector<double> values;
  ParamRecord meta;

  // Throws InvalidArgument on size mismatch, non-finite values or
  // non-increasing times.
  void validate() const;
};

struct Window {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
};

struct ScalingFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double r_squared = 0.0;
  Window window;
  int points = 0;
};

// Least squares of log y on log x over the points with x in [lo, hi].
// InsufficientPoints below 4 points, NonPositiveData if any x or y <= 0.
ScalingFit fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys, Window window = {});

inline constexpr Window kAlphaWindow{0.1, 1.0};

// F^Q ~ t^alpha on the window (default t in [0.1, 1] / J). Throws
// WindowOutOfRange if the window is not covered by the series.
ScalingFit short_time_alpha(const TimeSeries& fq, Window window = kAlphaWindow);

struct Peak {
  double t_opt = 0.0;
  double value = 0.0;
  std::size_t index = 0;  // grid argmax
};

// Peak of y(t) refined by the parabola through the argmax and its two
// neighbours. PeakAtBoundary when the argmax is the first or last sample.
Peak refine_peak(const std::vector<double>& ts, const std::vector<double>& ys);

// Peak of F^Q / t^2 given a series of F^Q (samples with t = 0 skipped).
Peak peak_qfi_over_t2(const TimeSeries& fq);

// max(F^Q / t^2) ~ L^beta; needs at least 4 sizes.
ScalingFit size_scaling_beta(const std::vector<double>& sizes, const std::vector<double>& peaks);

inline constexpr double kSizeIndependenceSpread = 0.10;

struct TransitionPoint {
  int L = 0;
  double h_c = 0.0;
  double predicted = 0.0;  // 8 J / L
};

// Values per system size on a shared h grid. For every size except the
// largest, h_c is the smallest grid h from which the curve stays within
// `spread` (relative spread (max - min) / mean) of the next-larger size for
// all larger h. NoTransition if a pair never joins or is joined already at
// the first grid point.
std::vector<TransitionPoint> transition_point(const std::vector<double>& hs,
                                              const std::map<int, std::vector<double>>& values, double J = 1.0,
                                              double spread = kSizeIndependenceSpread);

struct CollapseCheck {
  ScalingFit fit;           // exponent of the L-averaged value vs h beyond h_threshold
  double max_spread = 0.0;  // max over those h of (max_L - min_L) / mean_L
  double h_threshold = 0.0;
  // Spread at h_threshold itself when it is a grid point (not part of the tail).
  double threshold_spread = std::numeric_limits<double>::quiet_NaN();
  std::vector<TransitionPoint> transitions;
};

// Tail strictly beyond the largest extracted h_c (8 J / L_min when only one
// size is supplied). NoTransition if fewer than 4 grid points lie beyond it.
CollapseCheck localized_collapse_check(const std::vector<double>& hs, const std::map<int, std::vector<double>>& values,
                                       double J = 1.0, double spread = kSizeIndependenceSpread);

struct Localization {
  double participation_ratio = 0.0;
  double center_of_mass = 0.0;  // in 1-based site labels
};

Localization skin_localization_metric(const CVector& psi);

}  // namespace stark::analysis
