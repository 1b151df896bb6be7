// transforms.cc

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

#include "childaug/transforms.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "childaug/error.h"
#include "childaug/resample.h"
#include "childaug/spectrum.h"

namespace childaug {

namespace {

constexpr std::array<double, 4> kSwpFloor{0.6, 0.7, 0.75, 0.85};
constexpr std::array<double, 4> kSwpCeil{0.85, 0.85, 0.95, 1.0};

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Factors

std::pair<double, double> SwpFactors::bounds(int k, double previous) {
  if (k < 0 || k > 3) throw DomainError("formant index out of range");
  const double lo = k == 0 ? kSwpFloor[0] : std::max(kSwpFloor[k], previous);
  return {lo, kSwpCeil[k]};
}

bool SwpFactors::is_identity() const {
  return alpha == std::array<double, 4>{1.0, 1.0, 1.0, 1.0};
}

bool SwpFactors::valid() const {
  if (is_identity()) return true;
  double prev = 0.0;
  for (int k = 0; k < 4; ++k) {
    const auto [lo, hi] = bounds(k, prev);
    if (!(alpha[k] >= lo && alpha[k] <= hi)) return false;
    prev = alpha[k];
  }
  return true;
}

void SwpFactors::validate() const {
  if (is_identity()) return;
  double prev = 0.0;
  for (int k = 0; k < 4; ++k) {
    const auto [lo, hi] = bounds(k, prev);
    if (!(alpha[k] >= lo && alpha[k] <= hi))
      throw DomainError("SWP factor alpha" + std::to_string(k + 1) + " = " +
                        fmt_double(alpha[k]) + " outside [" + fmt_double(lo) +
                        ", " + fmt_double(hi) + "]");
    prev = alpha[k];
  }
}

SwpFactors SwpFactors::sample(Rng &rng) {
  SwpFactors f;
  double prev = 0.0;
  for (int k = 0; k < 4; ++k) {
    const auto [lo, hi] = bounds(k, prev);
    f.alpha[k] = rng.uniform(lo, hi);
    prev = f.alpha[k];
  }
  return f;
}

void BwpFactors::validate(const FactorRange &range) const {
  for (int k = 0; k < 4; ++k)
    if (!range.contains(beta[k]))
      throw DomainError("BWP factor beta" + std::to_string(k + 1) + " = " +
                        fmt_double(beta[k]) + " outside [" +
                        fmt_double(range.lo) + ", " + fmt_double(range.hi) +
                        "]");
}

BwpFactors BwpFactors::sample(Rng &rng, const FactorRange &range) {
  BwpFactors f;
  for (double &b : f.beta) b = range.sample(rng);
  return f;
}

void StabilityClamp::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw ConfigError("stability clamp epsilon must lie in (0, 1)");
}

// ---------------------------------------------------------------------------
// Pole edits

double warp_angle(double theta, double alpha, double angle_margin,
                  bool *clamped) {
  if (!(alpha > 0.0)) throw DomainError("warp factor must be positive");
  const double cap = M_PI * (1.0 - angle_margin);
  double out = theta / alpha;
  const bool hit = out > cap;
  if (hit) out = cap;
  if (clamped != nullptr) *clamped = hit;
  return out;
}

PoleEdit apply_swp(const PoleSet &poles, std::span<const FormantPole> formants,
                   const SwpFactors &factors, double angle_margin) {
  factors.validate();
  PoleEdit edit{poles, 0};
  for (const FormantPole &f : formants) {
    if (f.k < 1 || f.k > 4) continue;
    auto &z = edit.poles.conjugate_pairs.at(f.pair_index);
    bool clamped = false;
    const double theta =
        warp_angle(std::arg(z), factors.alpha[f.k - 1], angle_margin, &clamped);
    z = std::polar(std::abs(z), theta);
    if (clamped) ++edit.clamp_count;
  }
  return edit;
}

PoleEdit apply_bwp(const PoleSet &poles, std::span<const FormantPole> formants,
                   const BwpFactors &factors, const StabilityClamp &clamp) {
  clamp.validate();
  PoleEdit edit{poles, 0};
  const double rmax = clamp.max_radius();
  for (const FormantPole &f : formants) {
    if (f.k < 1 || f.k > 4) continue;
    auto &z = edit.poles.conjugate_pairs.at(f.pair_index);
    double r = factors.beta[f.k - 1] * std::abs(z);
    if (r > rmax) {
      r = rmax;
      ++edit.clamp_count;
    }
    z = std::polar(r, std::arg(z));
  }
  return edit;
}

PoleEdit apply_lpc_wp(const PoleSet &poles, std::span<const double> alphas,
                      double angle_margin) {
  if (alphas.size() != poles.conjugate_pairs.size())
    throw ShapeError("LPC-WP needs one factor per conjugate pair");
  PoleEdit edit{poles, 0};
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    auto &z = edit.poles.conjugate_pairs[i];
    bool clamped = false;
    const double theta = warp_angle(std::arg(z), alphas[i], angle_margin, &clamped);
    z = std::polar(std::abs(z), theta);
    if (clamped) ++edit.clamp_count;
  }
  return edit;
}

Frame resynthesize(const LpcAnalysis &analysis, const PoleSet &poles) {
  if (!poles.stable())
    throw StabilityError("modified pole set is not inside the unit circle");
  LpcModel m = poly_from_roots(poles, analysis.model.sample_period_s);
  m.gain = analysis.model.gain;
  m.preemphasis = analysis.model.preemphasis;
  return lpc_synthesize_unchecked(m, analysis.residual);
}

namespace {

FrameTransformResult start(const LpcAnalysis &analysis,
                           const FrameTransformOptions &opts, bool formants) {
  FrameTransformResult res;
  res.poles_before = find_roots(analysis.model, opts.roots);
  if (formants)
    res.formants = pick_formants(res.poles_before,
                                 analysis.model.sample_rate_hz(), opts.formants);
  return res;
}

}  // namespace

FrameTransformResult lpc_swp_frame(const LpcAnalysis &analysis,
                                   const SwpFactors &factors,
                                   const FrameTransformOptions &opts) {
  factors.validate();
  FrameTransformResult res = start(analysis, opts, true);
  PoleEdit edit =
      apply_swp(res.poles_before, res.formants, factors, opts.angle_margin);
  res.poles_after = std::move(edit.poles);
  res.clamp_count = edit.clamp_count;
  res.frame = resynthesize(analysis, res.poles_after);
  return res;
}

FrameTransformResult bwp_fep_frame(const LpcAnalysis &analysis,
                                   const BwpFactors &factors,
                                   const FrameTransformOptions &opts) {
  factors.validate();
  FrameTransformResult res = start(analysis, opts, true);
  PoleEdit edit = apply_bwp(res.poles_before, res.formants, factors, opts.clamp);
  res.poles_after = std::move(edit.poles);
  res.clamp_count = edit.clamp_count;
  res.frame = resynthesize(analysis, res.poles_after);
  return res;
}

FrameTransformResult swp_bwp_fep_frame(const LpcAnalysis &analysis,
                                       const SwpFactors &swp,
                                       const BwpFactors &bwp,
                                       const FrameTransformOptions &opts) {
  swp.validate();
  bwp.validate();
  FrameTransformResult res = start(analysis, opts, true);
  PoleEdit warped =
      apply_swp(res.poles_before, res.formants, swp, opts.angle_margin);
  // pair_index is unchanged by the warp, so the same formant labels apply.
  PoleEdit scaled = apply_bwp(warped.poles, res.formants, bwp, opts.clamp);
  res.poles_after = std::move(scaled.poles);
  res.clamp_count = warped.clamp_count + scaled.clamp_count;
  res.frame = resynthesize(analysis, res.poles_after);
  return res;
}

FrameTransformResult lpc_wp_frame(const LpcAnalysis &analysis,
                                  std::span<const double> alphas,
                                  const FrameTransformOptions &opts) {
  FrameTransformResult res = start(analysis, opts, false);
  PoleEdit edit = apply_lpc_wp(res.poles_before, alphas, opts.angle_margin);
  res.poles_after = std::move(edit.poles);
  res.clamp_count = edit.clamp_count;
  res.frame = resynthesize(analysis, res.poles_after);
  return res;
}

FrameTransformResult lpc_wp_frame(const LpcAnalysis &analysis, Rng &rng,
                                  const FrameTransformOptions &opts,
                                  const FactorRange &range,
                                  std::vector<double> *drawn) {
  FrameTransformResult res = start(analysis, opts, false);
  std::vector<double> alphas(res.poles_before.conjugate_pairs.size());
  for (double &a : alphas) a = range.sample(rng);
  PoleEdit edit = apply_lpc_wp(res.poles_before, alphas, opts.angle_margin);
  res.poles_after = std::move(edit.poles);
  res.clamp_count = edit.clamp_count;
  res.frame = resynthesize(analysis, res.poles_after);
  if (drawn != nullptr) *drawn = std::move(alphas);
  return res;
}

// ---------------------------------------------------------------------------
// VTLP

double vtlp_warp_frequency(double f, double alpha, double nyquist,
                           double knee_fraction) {
  const double knee = knee_fraction * nyquist;
  if (f <= knee) return alpha * f;
  const double y0 = alpha * knee;
  return y0 + (nyquist - y0) * (f - knee) / (nyquist - knee);
}

namespace {

// Inverse of the piecewise-linear map; the map is monotone for the
// supported alpha range so each segment inverts directly.
double vtlp_unwarp_frequency(double g, double alpha, double nyquist,
                             double knee_fraction) {
  const double knee = knee_fraction * nyquist;
  const double y0 = alpha * knee;
  if (g <= y0) return g / alpha;
  return knee + (g - y0) * (nyquist - knee) / (nyquist - y0);
}

}  // namespace

Waveform vtlp(const Waveform &wave, double alpha, const VtlpOptions &opts) {
  if (!(alpha > 0.0)) throw DomainError("VTLP alpha must be positive");
  const double nyquist = wave.sample_rate_hz / 2.0;
  if (!(opts.knee_fraction > 0.0 && opts.knee_fraction < 1.0) ||
      alpha * opts.knee_fraction >= 1.0)
    throw DomainError("VTLP knee must stay below Nyquist after warping");
  if (wave.empty()) return wave;

  PaddedFrames pf = frame_signal_padded(wave, opts.frames);
  const std::size_t len = opts.frames.frame_length(wave.sample_rate_hz);
  const std::size_t nfft = 2 * next_pow2(len);
  const std::size_t nbins = nfft / 2 + 1;
  const double bin_hz = static_cast<double>(wave.sample_rate_hz) / nfft;

  const double hop = static_cast<double>(opts.frames.hop_length(wave.sample_rate_hz));

  // Source position (in bins) for every output bin; shared by all frames.
  std::vector<double> src_pos(nbins), ratio(nbins, 1.0);
  std::vector<std::size_t> nearest(nbins);
  for (std::size_t j = 0; j < nbins; ++j) {
    const double f = static_cast<double>(j) * bin_hz;
    src_pos[j] = std::clamp(
        vtlp_unwarp_frequency(f, alpha, nyquist, opts.knee_fraction) / bin_hz,
        0.0, static_cast<double>(nbins - 1));
    nearest[j] = static_cast<std::size_t>(std::lround(src_pos[j]));
    if (src_pos[j] > 0.0) ratio[j] = static_cast<double>(j) / src_pos[j];
  }

  std::vector<double> prev_phase(nbins, 0.0), out_phase(nbins, 0.0);
  std::vector<std::complex<double>> warped(nbins);
  bool first = true;
  for (Frame &frame : pf.frames) {
    const std::vector<std::complex<double>> spec = rfft(frame.samples, nfft);
    std::vector<double> phase(nbins);
    for (std::size_t i = 0; i < nbins; ++i) phase[i] = std::arg(spec[i]);
    for (std::size_t j = 0; j < nbins; ++j) {
      const double pos = src_pos[j];
      const auto i0 = static_cast<std::size_t>(pos);
      const std::size_t i1 = std::min(i0 + 1, nbins - 1);
      const double frac = pos - static_cast<double>(i0);
      const double mag =
          (1.0 - frac) * std::abs(spec[i0]) + frac * std::abs(spec[i1]);
      const std::size_t k = nearest[j];
      if (first) {
        out_phase[j] = phase[k];
      } else {
        // Instantaneous frequency of source bin k (radians per sample).
        const double expected = 2.0 * M_PI * static_cast<double>(k) * hop /
                                static_cast<double>(nfft);
        const double dev =
            std::remainder(phase[k] - prev_phase[k] - expected, 2.0 * M_PI);
        out_phase[j] = std::remainder(out_phase[j] + ratio[j] * (expected + dev),
                                      2.0 * M_PI);
      }
      warped[j] = std::polar(mag, out_phase[j]);
    }
    prev_phase = std::move(phase);
    first = false;
    // DC and Nyquist bins of a real signal are real.
    warped[0] = std::abs(warped[0]) * (spec[0].real() < 0 ? -1.0 : 1.0);
    warped[nbins - 1] = std::complex<double>(warped[nbins - 1].real(), 0.0);
    std::vector<double> y = irfft(warped, nfft);
    std::copy(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(len),
              frame.samples.begin());
  }
  return overlap_add_padded(pf, opts.frames);
}

// ---------------------------------------------------------------------------
// Speed, noise, reverberation, masking

Waveform speed_modify(const Waveform &wave, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("speed factor must be positive");
  Waveform out;
  out.sample_rate_hz = wave.sample_rate_hz;
  out.samples = resample_by_rate(wave.samples, alpha);
  return out;
}

Waveform add_noise(const Waveform &wave, const Waveform &noise, double snr_db,
                   std::size_t *clipped) {
  if (noise.empty()) throw DomainError("noise waveform is empty");
  const double ex = energy(wave.samples);
  if (!(ex > 0.0)) throw DomainError("zero-energy signal: SNR undefined");
  std::vector<double> tiled(wave.size());
  for (std::size_t i = 0; i < tiled.size(); ++i)
    tiled[i] = noise.samples[i % noise.size()];
  const double en = energy(tiled);
  if (!(en > 0.0)) throw DomainError("zero-energy noise");
  const double g = std::sqrt(ex / (en * std::pow(10.0, snr_db / 10.0)));
  Waveform out = wave;
  for (std::size_t i = 0; i < out.size(); ++i) out.samples[i] += g * tiled[i];
  const std::size_t n = clip_in_place(out.samples);
  if (clipped != nullptr) *clipped += n;
  return out;
}

Waveform convolve_rir(const Waveform &wave, const Waveform &rir) {
  if (rir.empty()) throw DomainError("RIR is empty");
  Waveform out;
  out.sample_rate_hz = wave.sample_rate_hz;
  if (wave.empty()) return out;
  out.samples = fft_convolve(wave.samples, rir.samples);
  out.samples.resize(wave.size());
  const double target = rms(wave.samples);
  const double got = rms(out.samples);
  if (got > 0.0) {
    const double g = target / got;
    for (double &v : out.samples) v *= g;
  }
  return out;
}

Waveform apply_time_masks(
    const Waveform &wave,
    std::span<const std::pair<std::size_t, std::size_t>> spans) {
  Waveform out = wave;
  for (const auto &[b, e] : spans) {
    const std::size_t end = std::min(e, out.size());
    for (std::size_t i = std::min(b, end); i < end; ++i) out.samples[i] = 0.0;
  }
  return out;
}

Waveform time_mask(const Waveform &wave, Rng &rng, const TimeMaskOptions &opts,
                   std::vector<std::pair<std::size_t, std::size_t>> *spans) {
  const auto max_width = static_cast<std::int64_t>(
      std::floor(opts.max_mask_ms * wave.sample_rate_hz / 1000.0));
  const std::int64_t count = rng.uniform_int(0, std::max(opts.max_masks, 0));
  std::vector<std::pair<std::size_t, std::size_t>> drawn;
  const auto n = static_cast<std::int64_t>(wave.size());
  for (std::int64_t m = 0; m < count; ++m) {
    const std::int64_t width = rng.uniform_int(0, std::min(max_width, n));
    const std::int64_t begin = rng.uniform_int(0, n - width);
    drawn.emplace_back(static_cast<std::size_t>(begin),
                       static_cast<std::size_t>(begin + width));
  }
  Waveform out = apply_time_masks(wave, drawn);
  if (spans != nullptr) *spans = std::move(drawn);
  return out;
}

}  // namespace childaug
