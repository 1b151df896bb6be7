// formants.cc

// Copyright 2026  The childaugment Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "childaug/formants.h"

#include <algorithm>
#include <cmath>

#include "childaug/error.h"

namespace childaug {

double bandwidth_from_radius(double radius, double sample_period_s) {
  if (!(sample_period_s > 0.0)) throw DomainError("sample period must be positive");
  if (!(radius > 0.0)) throw DomainError("pole radius must be positive");
  if (!(radius < 1.0))
    throw DomainError("pole radius >= 1 has no positive bandwidth");
  return -std::log(radius) / (M_PI * sample_period_s);
}

double radius_from_bandwidth(double bandwidth_hz, double sample_period_s) {
  if (!(sample_period_s > 0.0)) throw DomainError("sample period must be positive");
  return std::exp(-M_PI * bandwidth_hz * sample_period_s);
}

std::vector<FormantPole> pick_formants(const PoleSet &poles,
                                       double sample_rate_hz,
                                       const FormantOptions &opts) {
  const double T = 1.0 / sample_rate_hz;
  const double fmax = sample_rate_hz / 2.0 - opts.nyquist_margin_hz;
  std::vector<FormantPole> cand;
  for (std::size_t i = 0; i < poles.conjugate_pairs.size(); ++i) {
    const auto &z = poles.conjugate_pairs[i];
    const double r = std::abs(z);
    if (!(z.imag() > 0.0) || !(r > 0.0) || !(r < 1.0)) continue;
    const double f = std::arg(z) * sample_rate_hz / (2.0 * M_PI);
    if (f < opts.min_freq_hz || f > fmax) continue;
    const double bw = bandwidth_from_radius(r, T);
    if (!(bw < opts.max_bandwidth_hz)) continue;
    cand.push_back({0, i, z, f, bw});
  }
  auto by_freq = [](const FormantPole &a, const FormantPole &b) {
    return a.center_freq_hz < b.center_freq_hz;
  };
  std::sort(cand.begin(), cand.end(), by_freq);

  const auto keep = static_cast<std::size_t>(std::max(opts.max_formants, 0));
  if (cand.size() > keep) {
    cand.resize(std::min(cand.size(), keep + 1));
    std::stable_sort(cand.begin(), cand.end(),
                     [](const FormantPole &a, const FormantPole &b) {
                       return a.bandwidth_hz < b.bandwidth_hz;
                     });
    cand.resize(keep);
    std::sort(cand.begin(), cand.end(), by_freq);
  }
  for (std::size_t i = 0; i < cand.size(); ++i)
    cand[i].k = static_cast<int>(i) + 1;
  return cand;
}

}  // namespace childaug
