// childaug/config.h

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

#ifndef CHILDAUG_CONFIG_H_
#define CHILDAUG_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>

#include "childaug/augment.h"
#include "childaug/backend.h"
#include "childaug/mixer.h"

namespace childaug {

/// Everything a command line run can configure.
struct CliConfig {
  MixConfig mix;
  bool mix_given = false;  // a preset, ratio or weight key was seen
  AugmentConfig augment;
  TrainConfig train;
  std::optional<std::uint64_t> seed;
  std::filesystem::path noise_dir;
  std::filesystem::path rir_dir;
  unsigned jobs = 0;  // 0: one per core

  /// Throws ConfigError when any part is out of range.
  void validate() const;
};

/// Applies one `key = value` setting. Known keys:
///   preset, ratio, weight.<method>, seed, jobs,
///   frame_len_ms, hop_ms, window, lpc_order, preemphasis, epsilon,
///   range.sm, range.pm, range.vtlp, range.lpc_wp, range.bwp, snr
///   (ranges as "lo,hi"), noise_dir, rir_dir,
///   train.lambda, train.lr, train.batch, train.epochs,
///   train.normalize_in_loss, train.heldout_fraction.
/// Throws ConfigError for unknown keys or unparsable values.
void apply_config_setting(CliConfig &cfg, std::string_view key,
                          std::string_view value);

/// Reads a config file: one `key = value` per line, '#' starts a comment.
/// Ranges are checked once the whole file is applied.
void load_config(CliConfig &cfg, std::istream &is, const std::string &name);
void load_config_file(CliConfig &cfg, const std::filesystem::path &path);

}  // namespace childaug

#endif  // CHILDAUG_CONFIG_H_
