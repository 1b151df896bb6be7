// config.cc

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

#include "childaug/config.h"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "childaug/error.h"

namespace childaug {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(std::string_view key, std::string_view v) {
  const std::string s(trim(v));
  char *end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0' || !std::isfinite(x))
    throw ConfigError("'" + std::string(key) + "' needs a number, got '" + s +
                      "'");
  return x;
}

std::uint64_t to_uint(std::string_view key, std::string_view v) {
  v = trim(v);
  std::uint64_t x = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (v.empty() || ec != std::errc() || p != v.data() + v.size())
    throw ConfigError("'" + std::string(key) +
                      "' needs a nonnegative integer, got '" + std::string(v) +
                      "'");
  return x;
}

bool to_bool(std::string_view key, std::string_view v) {
  v = trim(v);
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw ConfigError("'" + std::string(key) + "' needs true or false");
}

FactorRange to_range(std::string_view key, std::string_view v) {
  const auto comma = v.find(',');
  if (comma == std::string_view::npos)
    throw ConfigError("'" + std::string(key) + "' needs 'lo,hi'");
  FactorRange r{to_double(key, v.substr(0, comma)),
                to_double(key, v.substr(comma + 1))};
  if (r.lo > r.hi)
    throw ConfigError("'" + std::string(key) + "' has lo > hi");
  return r;
}

}  // namespace

void CliConfig::validate() const {
  augment.validate();
  if (mix_given) mix.validate();
  train.validate();
  if (augment.lpc.preemphasis < 0.0 || augment.lpc.preemphasis >= 1.0)
    throw ConfigError("preemphasis must lie in [0, 1)");
}

void apply_config_setting(CliConfig &cfg, std::string_view key,
                          std::string_view value) {
  key = trim(key);
  value = trim(value);
  const std::string k(key);
  if (k == "preset") {
    const std::uint64_t seed = cfg.mix.seed;
    cfg.mix = preset_config(value, seed);
    cfg.mix_given = true;
  } else if (k == "ratio") {
    cfg.mix.ratio_x = to_double(key, value);
    cfg.mix_given = true;
  } else if (k.rfind("weight.", 0) == 0) {
    Method m;
    try {
      m = parse_method(k.substr(7));
    } catch (const UsageError &) {
      throw ConfigError("unknown method in '" + k + "'");
    }
    cfg.mix.method_weights[m] = to_double(key, value);
    cfg.mix_given = true;
  } else if (k == "seed") {
    cfg.seed = to_uint(key, value);
  } else if (k == "jobs") {
    cfg.jobs = static_cast<unsigned>(to_uint(key, value));
  } else if (k == "frame_len_ms") {
    cfg.augment.frames.frame_len_ms = to_double(key, value);
  } else if (k == "hop_ms") {
    cfg.augment.frames.hop_ms = to_double(key, value);
  } else if (k == "window") {
    try {
      cfg.augment.frames.window = parse_window(value);
    } catch (const Error &e) {
      throw ConfigError(e.detail());
    }
  } else if (k == "lpc_order") {
    cfg.augment.lpc.order = static_cast<int>(to_uint(key, value));
  } else if (k == "preemphasis") {
    cfg.augment.lpc.preemphasis = to_double(key, value);
  } else if (k == "epsilon") {
    cfg.augment.transform.clamp.epsilon = to_double(key, value);
  } else if (k == "range.sm") {
    cfg.augment.speed_range = to_range(key, value);
  } else if (k == "range.pm") {
    cfg.augment.pitch_range = to_range(key, value);
  } else if (k == "range.vtlp") {
    cfg.augment.vtlp_range = to_range(key, value);
  } else if (k == "range.lpc_wp") {
    cfg.augment.lpc_wp_range = to_range(key, value);
  } else if (k == "range.bwp") {
    cfg.augment.bwp_range = to_range(key, value);
  } else if (k == "snr") {
    cfg.augment.snr_db_range = to_range(key, value);
  } else if (k == "noise_dir") {
    cfg.noise_dir = std::string(value);
  } else if (k == "rir_dir") {
    cfg.rir_dir = std::string(value);
  } else if (k == "train.lambda") {
    cfg.train.lambda_reg = to_double(key, value);
  } else if (k == "train.lr") {
    cfg.train.learning_rate = to_double(key, value);
  } else if (k == "train.batch") {
    cfg.train.batch_size = to_uint(key, value);
  } else if (k == "train.epochs") {
    cfg.train.epochs = to_uint(key, value);
  } else if (k == "train.normalize_in_loss") {
    cfg.train.normalize_in_loss = to_bool(key, value);
  } else if (k == "train.heldout_fraction") {
    cfg.train.heldout_fraction = to_double(key, value);
  } else {
    throw ConfigError("unknown config key '" + k + "'");
  }
}

void load_config(CliConfig &cfg, std::istream &is, const std::string &name) {
  std::string line;
  for (std::size_t lineno = 1; std::getline(is, line); ++lineno) {
    std::string_view s(line);
    if (const auto hash = s.find('#'); hash != std::string_view::npos)
      s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(name + ":" + std::to_string(lineno) +
                        ": expected 'key = value'");
    try {
      apply_config_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
    } catch (const ConfigError &e) {
      throw ConfigError(name + ":" + std::to_string(lineno) + ": " + e.detail());
    }
  }
  try {
    cfg.validate();
  } catch (const ConfigError &e) {
    throw ConfigError(name + ": " + e.detail());
  }
}

void load_config_file(CliConfig &cfg, const std::filesystem::path &path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open config '" + path.string() + "'");
  load_config(cfg, is, path.string());
}

}  // namespace childaug
