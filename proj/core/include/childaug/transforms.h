// childaug/transforms.h

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

#ifndef CHILDAUG_TRANSFORMS_H_
#define CHILDAUG_TRANSFORMS_H_

#include <array>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "childaug/audio_io.h"
#include "childaug/formants.h"
#include "childaug/lpc.h"
#include "childaug/random.h"

namespace childaug {

// ---------------------------------------------------------------------------
// Warping factors.

/// Closed interval of a scalar warping factor.
struct FactorRange {
  double lo = 1.0;
  double hi = 1.0;

  bool contains(double x) const { return x >= lo && x <= hi; }
  bool within(const FactorRange &outer) const {
    return lo >= outer.lo && hi <= outer.hi && lo <= hi;
  }
  double sample(Rng &rng) const { return rng.uniform(lo, hi); }
};

/// Default ranges of the per-utterance and per-pole methods.
inline constexpr FactorRange kSpeedRange{0.9, 1.1};
inline constexpr FactorRange kPitchRange{0.9, 1.1};
inline constexpr FactorRange kVtlpRange{0.9, 1.1};
inline constexpr FactorRange kLpcWpRange{0.7, 1.3};
inline constexpr FactorRange kBwpRange{0.9, 1.1};

/// Per-formant phase-warp factors for segmental warping. Valid factors obey
///   a1 in [0.6, 0.85], a2 in [max(0.7, a1), 0.85],
///   a3 in [max(0.75, a2), 0.95], a4 in [max(0.85, a3), 1.0].
/// All ones is also accepted, as the identity warp.
struct SwpFactors {
  std::array<double, 4> alpha{1.0, 1.0, 1.0, 1.0};

  /// Lower/upper bound of alpha[k] given the already-drawn alpha[k-1].
  static std::pair<double, double> bounds(int k, double previous);
  bool is_identity() const;
  bool valid() const;
  /// Throws DomainError naming the first violated constraint.
  void validate() const;
  /// Draws a1, a2, a3, a4 in that order, each uniform on its conditional
  /// range. Always valid; no rejection is needed.
  static SwpFactors sample(Rng &rng);
};

/// Per-formant radius scale factors for bandwidth perturbation.
struct BwpFactors {
  std::array<double, 4> beta{1.0, 1.0, 1.0, 1.0};

  void validate(const FactorRange &range = kBwpRange) const;
  static BwpFactors sample(Rng &rng, const FactorRange &range = kBwpRange);
};

/// Upper bound 1 - epsilon on modified pole radii.
struct StabilityClamp {
  double epsilon = 0.02;

  void validate() const;
  double max_radius() const { return 1.0 - epsilon; }
};

// ---------------------------------------------------------------------------
// Pole-domain edits.

struct FrameTransformOptions {
  FormantOptions formants;
  RootOptions roots;
  StabilityClamp clamp;
  // Warped angles are capped at pi * (1 - angle_margin).
  double angle_margin = 1e-3;
};

struct PoleEdit {
  PoleSet poles;
  std::size_t clamp_count = 0;
};

/// theta / alpha, capped just below pi. Sets *clamped when the cap applied.
double warp_angle(double theta, double alpha, double angle_margin,
                  bool *clamped);

/// Phase of each formant pair multiplied by 1/alpha_k; magnitudes kept.
PoleEdit apply_swp(const PoleSet &poles,
                   std::span<const FormantPole> formants,
                   const SwpFactors &factors, double angle_margin = 1e-3);

/// Radius of each formant pair set to min(beta_k |r|, 1 - epsilon).
PoleEdit apply_bwp(const PoleSet &poles,
                   std::span<const FormantPole> formants,
                   const BwpFactors &factors, const StabilityClamp &clamp);

/// Every conjugate pair i warped by its own 1/alpha[i]; real poles kept.
PoleEdit apply_lpc_wp(const PoleSet &poles, std::span<const double> alphas,
                      double angle_margin = 1e-3);

/// Result of a frame-level LPC transform.
struct FrameTransformResult {
  Frame frame;
  PoleSet poles_before;
  PoleSet poles_after;
  std::vector<FormantPole> formants;
  std::size_t clamp_count = 0;
};

/// Resynthesizes `analysis.residual` through the filter with poles `poles`,
/// keeping the analysis gain and pre-emphasis.
Frame resynthesize(const LpcAnalysis &analysis, const PoleSet &poles);

FrameTransformResult lpc_swp_frame(const LpcAnalysis &analysis,
                                   const SwpFactors &factors,
                                   const FrameTransformOptions &opts = {});

FrameTransformResult bwp_fep_frame(const LpcAnalysis &analysis,
                                   const BwpFactors &factors,
                                   const FrameTransformOptions &opts = {});

/// Segmental warping then bandwidth scaling of the same pole set; formants
/// are classified once, before warping.
FrameTransformResult swp_bwp_fep_frame(const LpcAnalysis &analysis,
                                       const SwpFactors &swp,
                                       const BwpFactors &bwp,
                                       const FrameTransformOptions &opts = {});

/// Per-pair warp with explicit factors (one per conjugate pair).
FrameTransformResult lpc_wp_frame(const LpcAnalysis &analysis,
                                  std::span<const double> alphas,
                                  const FrameTransformOptions &opts = {});

/// Per-pair warp with factors drawn from `range`.
FrameTransformResult lpc_wp_frame(const LpcAnalysis &analysis, Rng &rng,
                                  const FrameTransformOptions &opts = {},
                                  const FactorRange &range = kLpcWpRange,
                                  std::vector<double> *drawn = nullptr);

// ---------------------------------------------------------------------------
// Waveform-level methods.

struct VtlpOptions {
  double knee_fraction = 0.85;  // of Nyquist
  FrameSpec frames;
};

/// Piecewise-linear warp of the frequency axis: slope alpha up to the knee,
/// then a straight line to (fs/2, fs/2). Output magnitude at each bin is
/// interpolated at the inverse-warped frequency. Phase is propagated frame to
/// frame from the nearest source bin's instantaneous frequency, scaled by the
/// local warp, so a steady partial stays coherent across overlapping frames.
Waveform vtlp(const Waveform &wave, double alpha, const VtlpOptions &opts = {});

/// Forward warp of frequency f (Hz) under the VTLP map.
double vtlp_warp_frequency(double f, double alpha, double nyquist,
                           double knee_fraction);

/// Resamples so the signal plays alpha times faster: length N/alpha, pitch
/// and formants scaled by alpha.
Waveform speed_modify(const Waveform &wave, double alpha);

struct WsolaOptions {
  double segment_ms = 30.0;
  double search_ms = 7.5;
};

/// Waveform-similarity overlap-add time-scale modification to an exact
/// output length.
std::vector<double> wsola_stretch(std::span<const double> x,
                                  std::size_t output_length, int sample_rate_hz,
                                  const WsolaOptions &opts = {});

/// Pitch scaled by alpha with duration preserved: resample by 1/alpha, then
/// WSOLA back to the input length.
Waveform pitch_modify(const Waveform &wave, double alpha,
                      const WsolaOptions &opts = {});

/// x + g * noise with g chosen for the requested SNR; noise is tiled or
/// cropped to the input length. The result is clamped to [-1, 1] and the
/// clamp count added to *clipped. Throws DomainError on zero-energy input or
/// noise.
Waveform add_noise(const Waveform &wave, const Waveform &noise, double snr_db,
                   std::size_t *clipped = nullptr);

/// Full convolution truncated to the input length, rescaled to the input RMS.
Waveform convolve_rir(const Waveform &wave, const Waveform &rir);

struct TimeMaskOptions {
  int max_masks = 2;
  double max_mask_ms = 100.0;
};

/// Zeroes [begin, end) sample spans.
Waveform apply_time_masks(
    const Waveform &wave,
    std::span<const std::pair<std::size_t, std::size_t>> spans);

/// Draws 0..max_masks spans of at most max_mask_ms each and zeroes them.
Waveform time_mask(const Waveform &wave, Rng &rng,
                   const TimeMaskOptions &opts = {},
                   std::vector<std::pair<std::size_t, std::size_t>> *spans =
                       nullptr);

}  // namespace childaug

#endif  // CHILDAUG_TRANSFORMS_H_
