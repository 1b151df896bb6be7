// childaug/augment.h

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

#ifndef CHILDAUG_AUGMENT_H_
#define CHILDAUG_AUGMENT_H_

#include <array>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "childaug/audio_io.h"
#include "childaug/lpc.h"
#include "childaug/random.h"
#include "childaug/transforms.h"

namespace childaug {

/// Augmentation methods, in the canonical column order used by the presets.
enum class Method {
  kSpecAugment,
  kNoise,
  kRir,
  kNoiseRir,
  kSpeed,
  kPitch,
  kVtlp,
  kLpcWp,
  kLpcSwp,
  kBwpFep,
  kSwpBwpFep,
};

inline constexpr std::size_t kMethodCount = 11;
inline constexpr std::array<Method, kMethodCount> kAllMethods{
    Method::kSpecAugment, Method::kNoise,  Method::kRir,
    Method::kNoiseRir,    Method::kSpeed,  Method::kPitch,
    Method::kVtlp,        Method::kLpcWp,  Method::kLpcSwp,
    Method::kBwpFep,      Method::kSwpBwpFep};

const char *method_name(Method m);
/// Throws UsageError for unknown names.
Method parse_method(std::string_view name);
bool is_lpc_method(Method m);
bool needs_noise(Method m);
bool needs_rir(Method m);

struct AugmentConfig {
  FrameSpec frames;
  LpcOptions lpc{.order = 0};  // order 0 selects the fs-dependent default
  FrameTransformOptions transform;

  FactorRange speed_range = kSpeedRange;
  FactorRange pitch_range = kPitchRange;
  FactorRange vtlp_range = kVtlpRange;
  FactorRange lpc_wp_range = kLpcWpRange;
  FactorRange bwp_range = kBwpRange;
  FactorRange snr_db_range{0.0, 15.0};

  VtlpOptions vtlp;
  WsolaOptions wsola;
  TimeMaskOptions time_mask;

  // Pin factors instead of drawing them (diagnostics and identity checks).
  std::optional<SwpFactors> fixed_swp;
  std::optional<BwpFactors> fixed_bwp;
  std::optional<double> fixed_alpha;  // SM, PM, VTLP and every LPC-WP pair

  /// Throws ConfigError when a range leaves its allowed interval.
  void validate() const;
};

struct AugmentResources {
  std::vector<Waveform> noise_pool;
  std::vector<Waveform> rir_pool;
};

/// One line of the factor log. NaN marks an unused slot.
struct FactorRecord {
  std::string utterance_id;
  long frame_index = -1;  // -1 for per-utterance methods
  Method method = Method::kLpcSwp;
  std::array<double, 4> alpha;
  std::array<double, 4> beta;
  std::size_t clamp_count = 0;

  FactorRecord();
};

struct AugmentStats {
  std::size_t clamp_count = 0;    // angle or radius clamps
  std::size_t clip_count = 0;     // output samples clamped to [-1, 1]
  std::size_t degenerate_frames = 0;
  std::size_t fallback_frames = 0;  // frames passed through after a root failure
  bool peak_rescaled = false;  // LPC output exceeded full scale and was scaled
  std::vector<FactorRecord> factors;
};

/// Applies one method to a waveform. LPC-domain methods run frame-wise
/// (frame, analyze, transform, synthesize, overlap-add) with factors drawn
/// from a per-frame child stream of `rng`, so the draws of frame i never
/// depend on other frames. If their output would exceed full scale, the
/// whole utterance is scaled to the input peak. Throws ConfigError when a
/// needed pool is empty.
Waveform augment_utterance(const Waveform &wave, Method method, Rng &rng,
                           const AugmentConfig &config,
                           const AugmentResources &resources = {},
                           AugmentStats *stats = nullptr,
                           std::string_view utterance_id = {});

/// TSV header and rows of the factor log.
void write_factor_log_header(std::ostream &os);
void write_factor_record(std::ostream &os, const FactorRecord &rec);

}  // namespace childaug

#endif  // CHILDAUG_AUGMENT_H_
