// augment.cc

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

#include "childaug/augment.h"

#include <cmath>
#include <limits>
#include <sstream>

#include "childaug/error.h"
#include "childaug/formants.h"
#include "childaug/log.h"

namespace childaug {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct MethodName {
  Method method;
  const char *name;
};

constexpr MethodName kNames[] = {
    {Method::kSpecAugment, "specaugment"}, {Method::kNoise, "noise"},
    {Method::kRir, "rir"},                 {Method::kNoiseRir, "noise_rir"},
    {Method::kSpeed, "sm"},                {Method::kPitch, "pm"},
    {Method::kVtlp, "vtlp"},               {Method::kLpcWp, "lpc_wp"},
    {Method::kLpcSwp, "lpc_swp"},          {Method::kBwpFep, "bwp_fep"},
    {Method::kSwpBwpFep, "swp_bwp_fep"},
};

void check_range(const FactorRange &r, const FactorRange &allowed,
                 const char *what) {
  if (!r.within(allowed)) {
    std::ostringstream os;
    os << what << " range [" << r.lo << ", " << r.hi << "] must lie within ["
       << allowed.lo << ", " << allowed.hi << "]";
    throw ConfigError(os.str());
  }
}

double pick_alpha(const AugmentConfig &cfg, const FactorRange &range, Rng &rng,
                  const char *what) {
  if (!cfg.fixed_alpha) return range.sample(rng);
  const double a = *cfg.fixed_alpha;
  if (!range.contains(a)) {
    std::ostringstream os;
    os << what << " factor " << a << " outside [" << range.lo << ", "
       << range.hi << "]";
    throw DomainError(os.str());
  }
  return a;
}

const Waveform &pick(const std::vector<Waveform> &pool, Rng &rng) {
  const auto i = rng.uniform_int(0, static_cast<std::int64_t>(pool.size()) - 1);
  return pool[static_cast<std::size_t>(i)];
}

Waveform noise_step(const Waveform &wave, Rng &rng, const AugmentConfig &cfg,
                    const AugmentResources &res, AugmentStats &stats) {
  const Waveform &noise = pick(res.noise_pool, rng);
  const double snr = cfg.snr_db_range.sample(rng);
  if (noise.empty()) throw DomainError("empty noise waveform in pool");
  // Random phase into the (tiled) noise.
  const auto offset = static_cast<std::size_t>(
      rng.uniform_int(0, static_cast<std::int64_t>(noise.size()) - 1));
  Waveform rotated = noise;
  std::rotate(rotated.samples.begin(),
              rotated.samples.begin() + static_cast<std::ptrdiff_t>(offset),
              rotated.samples.end());
  if (!(energy(wave.samples) > 0.0)) return wave;  // nothing to scale against
  return add_noise(wave, rotated, snr, &stats.clip_count);
}

// Frame-wise LPC pipeline shared by the four pole-domain methods.
Waveform lpc_pipeline(const Waveform &wave, Method method, Rng &rng,
                      const AugmentConfig &cfg, AugmentStats &stats,
                      std::string_view utt) {
  LpcOptions lpc = cfg.lpc;
  if (lpc.order <= 0) lpc.order = default_lpc_order(wave.sample_rate_hz);
  PaddedFrames pf = frame_signal_padded(wave, cfg.frames);

  for (Frame &frame : pf.frames) {
    Rng frame_rng = rng.derive(frame.index);
    FactorRecord rec;
    rec.utterance_id = std::string(utt);
    rec.frame_index = static_cast<long>(frame.index);
    rec.method = method;

    // Factors are drawn before looking at the signal, so the stream does not
    // depend on how many formants a frame has.
    SwpFactors swp;
    BwpFactors bwp;
    if (method == Method::kLpcSwp || method == Method::kSwpBwpFep) {
      swp = cfg.fixed_swp ? *cfg.fixed_swp : SwpFactors::sample(frame_rng);
      rec.alpha = swp.alpha;
    }
    if (method == Method::kBwpFep || method == Method::kSwpBwpFep) {
      bwp = cfg.fixed_bwp ? *cfg.fixed_bwp
                          : BwpFactors::sample(frame_rng, cfg.bwp_range);
      rec.beta = bwp.beta;
    }

    std::optional<LpcAnalysis> an = lpc_analyze(frame, lpc);
    if (!an) {
      ++stats.degenerate_frames;
      stats.factors.push_back(std::move(rec));
      continue;
    }
    try {
      FrameTransformResult res;
      switch (method) {
        case Method::kLpcSwp:
          res = lpc_swp_frame(*an, swp, cfg.transform);
          break;
        case Method::kBwpFep:
          res = bwp_fep_frame(*an, bwp, cfg.transform);
          break;
        case Method::kSwpBwpFep:
          res = swp_bwp_fep_frame(*an, swp, bwp, cfg.transform);
          break;
        case Method::kLpcWp: {
          if (cfg.fixed_alpha) {
            const PoleSet poles = find_roots(an->model, cfg.transform.roots);
            std::vector<double> alphas(poles.conjugate_pairs.size(),
                                       pick_alpha(cfg, cfg.lpc_wp_range,
                                                  frame_rng, "LPC-WP"));
            res = lpc_wp_frame(*an, alphas, cfg.transform);
            for (std::size_t i = 0; i < 4 && i < alphas.size(); ++i)
              rec.alpha[i] = alphas[i];
          } else {
            std::vector<double> drawn;
            res = lpc_wp_frame(*an, frame_rng, cfg.transform, cfg.lpc_wp_range,
                               &drawn);
            for (std::size_t i = 0; i < 4 && i < drawn.size(); ++i)
              rec.alpha[i] = drawn[i];
          }
          break;
        }
        default:
          throw UsageError("not an LPC-domain method");
      }
      frame.samples = std::move(res.frame.samples);
      rec.clamp_count = res.clamp_count;
      stats.clamp_count += res.clamp_count;
    } catch (const ConvergenceError &e) {
      ++stats.fallback_frames;
      log_warning(std::string(utt) + " frame " + std::to_string(frame.index) +
                  ": " + e.what() + "; frame passed through");
    }
    stats.factors.push_back(std::move(rec));
  }
  return overlap_add_padded(pf, cfg.frames);
}

// Pole edits change the filter gain; an utterance pushed past full scale is
// scaled back to the input peak instead of being clipped.
void peak_guard(const Waveform &in, Waveform &out, AugmentStats &stats) {
  double pin = 0.0, pout = 0.0;
  for (double v : in.samples) pin = std::max(pin, std::abs(v));
  for (double v : out.samples) pout = std::max(pout, std::abs(v));
  if (!(pout > 1.0) || !std::isfinite(pout)) return;
  const double g = std::min(pin, 1.0) / pout;
  for (double &v : out.samples) v *= g;
  stats.peak_rescaled = true;
}

}  // namespace

const char *method_name(Method m) {
  for (const auto &n : kNames)
    if (n.method == m) return n.name;
  return "?";
}

Method parse_method(std::string_view name) {
  for (const auto &n : kNames)
    if (name == n.name) return n.method;
  throw UsageError("unknown augmentation method '" + std::string(name) + "'");
}

bool is_lpc_method(Method m) {
  return m == Method::kLpcWp || m == Method::kLpcSwp || m == Method::kBwpFep ||
         m == Method::kSwpBwpFep;
}

bool needs_noise(Method m) {
  return m == Method::kNoise || m == Method::kNoiseRir;
}

bool needs_rir(Method m) { return m == Method::kRir || m == Method::kNoiseRir; }

FactorRecord::FactorRecord() {
  alpha.fill(kNaN);
  beta.fill(kNaN);
}

void AugmentConfig::validate() const {
  frames.validate();
  transform.clamp.validate();
  check_range(speed_range, kSpeedRange, "speed");
  check_range(pitch_range, kPitchRange, "pitch");
  check_range(vtlp_range, kVtlpRange, "VTLP");
  check_range(lpc_wp_range, kLpcWpRange, "LPC-WP");
  check_range(bwp_range, kBwpRange, "BWP-FEP");
  if (!(snr_db_range.lo <= snr_db_range.hi))
    throw ConfigError("SNR range must have lo <= hi");
  if (fixed_swp && !fixed_swp->valid())
    throw ConfigError("fixed SWP factors violate the sequential constraints");
  if (fixed_bwp) {
    for (double b : fixed_bwp->beta)
      if (!kBwpRange.contains(b))
        throw ConfigError("fixed BWP factors must lie in [0.9, 1.1]");
  }
  if (fixed_alpha && !(*fixed_alpha > 0.0))
    throw ConfigError("fixed alpha must be positive");
  if (lpc.order < 0) throw ConfigError("LPC order must be nonnegative");
}

Waveform augment_utterance(const Waveform &wave, Method method, Rng &rng,
                           const AugmentConfig &config,
                           const AugmentResources &resources,
                           AugmentStats *stats_out, std::string_view utt) {
  config.validate();
  if (needs_noise(method) && resources.noise_pool.empty())
    throw ConfigError(std::string("method ") + method_name(method) +
                      " needs a nonempty noise pool");
  if (needs_rir(method) && resources.rir_pool.empty())
    throw ConfigError(std::string("method ") + method_name(method) +
                      " needs a nonempty RIR pool");

  AugmentStats local;
  AugmentStats &stats = stats_out != nullptr ? *stats_out : local;
  auto utterance_record = [&](double alpha) {
    FactorRecord rec;
    rec.utterance_id = std::string(utt);
    rec.method = method;
    rec.alpha[0] = alpha;
    stats.factors.push_back(std::move(rec));
  };

  Waveform out;
  switch (method) {
    case Method::kSpecAugment:
      out = time_mask(wave, rng, config.time_mask);
      break;
    case Method::kNoise:
      out = noise_step(wave, rng, config, resources, stats);
      break;
    case Method::kRir:
      out = convolve_rir(wave, pick(resources.rir_pool, rng));
      break;
    case Method::kNoiseRir: {
      Waveform noisy = noise_step(wave, rng, config, resources, stats);
      out = convolve_rir(noisy, pick(resources.rir_pool, rng));
      break;
    }
    case Method::kSpeed: {
      const double a = pick_alpha(config, config.speed_range, rng, "speed");
      utterance_record(a);
      out = speed_modify(wave, a);
      break;
    }
    case Method::kPitch: {
      const double a = pick_alpha(config, config.pitch_range, rng, "pitch");
      utterance_record(a);
      out = pitch_modify(wave, a, config.wsola);
      break;
    }
    case Method::kVtlp: {
      const double a = pick_alpha(config, config.vtlp_range, rng, "VTLP");
      utterance_record(a);
      out = vtlp(wave, a, config.vtlp);
      break;
    }
    case Method::kLpcWp:
    case Method::kLpcSwp:
    case Method::kBwpFep:
    case Method::kSwpBwpFep:
      out = lpc_pipeline(wave, method, rng, config, stats, utt);
      peak_guard(wave, out, stats);
      break;
  }
  for (double v : out.samples)
    if (!std::isfinite(v))
      throw NumericError(std::string(method_name(method)) +
                         " produced a non-finite sample");
  stats.clip_count += clip_in_place(out.samples);
  return out;
}

void write_factor_log_header(std::ostream &os) {
  os << "utterance_id\tframe_index\tmethod\talpha1\talpha2\talpha3\talpha4"
        "\tbeta1\tbeta2\tbeta3\tbeta4\tclamp_count\n";
}

void write_factor_record(std::ostream &os, const FactorRecord &rec) {
  auto put = [&os](double v) {
    os << '\t';
    if (std::isnan(v)) {
      os << '-';
    } else {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.6f", v);
      os << buf;
    }
  };
  os << rec.utterance_id << '\t';
  if (rec.frame_index < 0)
    os << '-';
  else
    os << rec.frame_index;
  os << '\t' << method_name(rec.method);
  for (double a : rec.alpha) put(a);
  for (double b : rec.beta) put(b);
  os << '\t' << rec.clamp_count << '\n';
}

}  // namespace childaug
