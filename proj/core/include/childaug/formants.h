// childaug/formants.h

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

#ifndef CHILDAUG_FORMANTS_H_
#define CHILDAUG_FORMANTS_H_

#include <complex>
#include <cstddef>
#include <vector>

#include "childaug/lpc.h"

namespace childaug {

/// 3-dB bandwidth of a resonance with pole radius r: B = -ln(r) / (pi T).
/// Throws DomainError unless 0 < radius < 1 and T > 0.
double bandwidth_from_radius(double radius, double sample_period_s);

/// Inverse of bandwidth_from_radius: r = exp(-pi B T).
double radius_from_bandwidth(double bandwidth_hz, double sample_period_s);

/// A conjugate pole pair classified as the k-th formant.
struct FormantPole {
  int k = 0;                 // 1-based, in ascending frequency order
  std::size_t pair_index = 0;  // into PoleSet::conjugate_pairs
  std::complex<double> pole;
  double center_freq_hz = 0.0;
  double bandwidth_hz = 0.0;

  double radius() const { return std::abs(pole); }
  double angle() const { return std::arg(pole); }
};

/// Candidacy filter for formant poles.
struct FormantOptions {
  int max_formants = 4;
  double min_freq_hz = 90.0;
  double nyquist_margin_hz = 300.0;
  double max_bandwidth_hz = 700.0;
};

/// Classifies conjugate pairs as formants. Candidates are positive-imaginary
/// poles in [min_freq, fs/2 - margin] with bandwidth below the cap; when more
/// than max_formants qualify, the narrowest max_formants among the lowest
/// max_formants + 1 are kept. Result is sorted by frequency with k = 1..n.
std::vector<FormantPole> pick_formants(const PoleSet &poles,
                                       double sample_rate_hz,
                                       const FormantOptions &opts = {});

}  // namespace childaug

#endif  // CHILDAUG_FORMANTS_H_
