// childaug/mixer.h

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

#ifndef CHILDAUG_MIXER_H_
#define CHILDAUG_MIXER_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "childaug/augment.h"

namespace childaug {

/// Original-to-augmented mix 1 : ratio_x, split over methods by weight.
struct MixConfig {
  double ratio_x = 3.0;
  std::map<Method, double> method_weights;
  std::uint64_t seed = 0;

  /// Throws ConfigError unless weights are nonnegative, sum to ratio_x within
  /// 1e-9, and at least one is positive when ratio_x > 0.
  void validate() const;
};

/// Preset names: baseline-3-1, baseline-3-3 .. baseline-3-6 and
/// proposed-3-7 .. proposed-3-11 (the "3/11" spelling is also accepted).
/// Preset x/y gives weight x/y to each of the first y methods of kAllMethods,
/// except baseline-3-1 which is SpecAugment alone.
MixConfig preset_config(std::string_view name, std::uint64_t seed = 0);
std::vector<std::string> preset_names();

struct PlanEntry {
  std::string source_id;
  std::optional<Method> method;  // nullopt: the original
  std::size_t slot = 0;          // augmented slot index within the source
  std::uint64_t seed = 0;

  bool is_original() const { return !method.has_value(); }
  std::string method_label() const;
  /// Output file stem, e.g. "utt01" or "utt01-lpc_swp-2".
  std::string output_stem() const;
};

struct AugmentPlan {
  std::vector<PlanEntry> entries;

  std::size_t original_count() const;
  std::size_t augmented_count() const;
  std::map<Method, std::size_t> method_counts() const;
};

/// Source s receives floor((s+1) x) - floor(s x) augmented slots. Each
/// method's total is its largest-remainder share of all slots (within one of
/// the exact quota), and methods are interleaved along the slot sequence by
/// smooth weighted round robin on those totals. Entry seeds hash
/// (seed, id, method, slot).
AugmentPlan build_plan(const std::vector<std::string> &utterance_ids,
                       const MixConfig &config);

struct ExecuteOptions {
  std::filesystem::path output_root;
  AugmentConfig augment;
  bool log_factors = false;
  unsigned jobs = 1;
};

struct ManifestRow {
  std::string output_path;  // relative to the output root
  std::string source_id;
  std::string method;
  std::uint64_t seed = 0;
  std::string factor_ref;  // "-" when no factors were logged
  std::string status;      // "ok" or "error: ..."
};

struct Manifest {
  std::vector<ManifestRow> rows;
  std::size_t failures = 0;

  void write(std::ostream &os) const;
};

/// Materializes a plan: one WAV per entry under <root>/<method>/, a
/// manifest.tsv and, with log_factors, factors.tsv. Entries run on up to
/// `jobs` threads; rows keep plan order. A missing or unreadable source is
/// recorded as a failed row. Empty pools required by the plan throw
/// ConfigError before anything is written.
Manifest execute_plan(const AugmentPlan &plan,
                      const std::map<std::string, std::filesystem::path> &sources,
                      const AugmentResources &resources,
                      const ExecuteOptions &opts);

}  // namespace childaug

#endif  // CHILDAUG_MIXER_H_
