// childaug/lpc.h

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

#ifndef CHILDAUG_LPC_H_
#define CHILDAUG_LPC_H_

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "childaug/audio_io.h"

namespace childaug {

/// All-pole model 1/A(z) with A(z) = 1 - sum_{k=1..p} a_k z^-k.
///
/// `preemphasis` is the first-order coefficient applied to the frame before
/// analysis; synthesis undoes it. Zero disables both.
struct LpcModel {
  std::vector<double> coeffs;  // a_1 .. a_p
  double gain = 1.0;           // sqrt of the final prediction error
  double sample_period_s = 1.0 / 16000;
  double preemphasis = 0.0;

  int order() const { return static_cast<int>(coeffs.size()); }
  double sample_rate_hz() const { return 1.0 / sample_period_s; }
};

/// Roots of z^p - a_1 z^{p-1} - ... - a_p, split into conjugate pairs (each
/// stored once, by its positive-imaginary member) and real roots.
struct PoleSet {
  std::vector<std::complex<double>> conjugate_pairs;
  std::vector<double> real_poles;

  int order() const {
    return static_cast<int>(2 * conjugate_pairs.size() + real_poles.size());
  }
  /// Every pole strictly inside the unit circle.
  bool stable() const;
  /// Largest pole magnitude (0 for an empty set).
  double max_radius() const;
  /// Every root, conjugates expanded.
  std::vector<std::complex<double>> all_roots() const;
};

struct LpcOptions {
  int order = 18;
  double preemphasis = 0.97;
  // A frame whose mean-square value is below this (relative to full scale)
  // is degenerate and is not analyzed.
  double silence_threshold = 1e-8;
};

/// Classic order rule: sample rate in kHz plus two.
int default_lpc_order(int sample_rate_hz);

struct LpcAnalysis {
  LpcModel model;
  Frame residual;
};

/// Autocorrelation-method analysis (Levinson-Durbin) and inverse filtering.
/// Returns nullopt for a degenerate (near-silent) frame, which callers pass
/// through unmodified. Throws NumericError on non-finite input and
/// DomainError when the frame is not longer than the order.
std::optional<LpcAnalysis> lpc_analyze(const Frame &frame,
                                       const LpcOptions &opts);

/// Levinson-Durbin on autocorrelation lags r[0..p]; returns a_1..a_p and
/// writes the final prediction error.
std::vector<double> levinson_durbin(std::span<const double> autocorr,
                                    double *prediction_error = nullptr,
                                    std::vector<double> *reflection = nullptr);

/// Biased autocorrelation r[k] = sum_n x[n] x[n+k], k = 0..max_lag.
std::vector<double> autocorrelation(std::span<const double> x,
                                    std::size_t max_lag);

/// e(n) = x(n) - sum_k a_k x(n-k), zero initial state.
std::vector<double> inverse_filter(std::span<const double> x,
                                   std::span<const double> coeffs);

/// y(n) = e(n) + sum_k a_k y(n-k), zero initial state.
std::vector<double> all_pole_filter(std::span<const double> e,
                                    std::span<const double> coeffs);

/// Residual through 1/A(z), then de-emphasis. The exact inverse of the
/// analysis path. Throws StabilityError when any pole of A is on or outside
/// the unit circle.
Frame lpc_synthesize(const LpcModel &model, const Frame &residual);

/// Same, skipping the stability check (caller already holds the poles).
Frame lpc_synthesize_unchecked(const LpcModel &model, const Frame &residual);

struct RootOptions {
  int max_iterations = 500;
  double tolerance = 1e-14;
  // Imaginary parts below this (relative to 1 + |z|) are treated as real.
  double real_tolerance = 1e-7;
};

/// Roots of the predictor polynomial by Aberth-Ehrlich iteration with Newton
/// polishing. Throws ConvergenceError when the iteration stalls.
PoleSet find_roots(const LpcModel &model, const RootOptions &opts = {});
std::vector<std::complex<double>> polynomial_roots(
    std::span<const double> monic_tail, const RootOptions &opts = {});

/// Value of A at z, i.e. the monic predictor polynomial divided by z^p.
std::complex<double> predictor_polynomial(std::span<const double> coeffs,
                                          std::complex<double> z);

/// Expands prod (z - r) over the given roots into predictor coefficients.
/// Throws SymmetryError when the roots are not closed under conjugation.
std::vector<double> coeffs_from_roots(
    std::span<const std::complex<double>> roots);

/// Rebuilds an LpcModel from poles; gain 1, no pre-emphasis.
LpcModel poly_from_roots(const PoleSet &poles, double sample_period_s);

}  // namespace childaug

#endif  // CHILDAUG_LPC_H_
