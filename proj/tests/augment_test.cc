// tests/augment_test.cc

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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "childaug/augment.h"
#include "childaug/error.h"
#include "childaug/formants.h"
#include "childaug/lpc.h"
#include "test_util.h"

namespace childaug {
namespace {

constexpr double kFs = 16000.0;

Waveform vowel(std::size_t n = 16000, std::uint64_t seed = 1,
               testing::Excitation exc = testing::Excitation::kNoise) {
  Waveform w;
  w.samples = testing::synth_vowel(n, kFs, testing::standard_formants(), exc, seed);
  return w;
}

AugmentResources pools() {
  AugmentResources r;
  std::mt19937_64 gen(12);
  std::normal_distribution<double> g(0.0, 0.1);
  Waveform n;
  for (int i = 0; i < 8000; ++i) n.samples.push_back(g(gen));
  r.noise_pool.push_back(n);
  Waveform h;
  for (int i = 0; i < 2000; ++i) h.samples.push_back(g(gen) * std::exp(-i / 400.0));
  h.samples[0] = 1.0;
  r.rir_pool.push_back(h);
  return r;
}

double max_diff(const Waveform &a, const Waveform &b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a.samples[i] - b.samples[i]));
  return m;
}

// Half-power width of the largest Welch peak in [lo, hi].
// Median first-formant frequency and bandwidth over frames, from LPC poles.
std::pair<double, double> median_f1(const Waveform &w) {
  LpcOptions o;
  o.order = default_lpc_order(w.sample_rate_hz);
  std::vector<double> freq, bw;
  for (const Frame &f : frame_signal(w, FrameSpec{})) {
    const auto an = lpc_analyze(f, o);
    if (!an) continue;
    const auto formants = pick_formants(find_roots(an->model), w.sample_rate_hz);
    if (formants.empty()) continue;
    freq.push_back(formants[0].center_freq_hz);
    bw.push_back(formants[0].bandwidth_hz);
  }
  auto median = [](std::vector<double> v) {
    std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
    return v[v.size() / 2];
  };
  return {median(freq), median(bw)};
}

TEST(Methods, NamesRoundTrip) {
  for (Method m : kAllMethods) EXPECT_EQ(parse_method(method_name(m)), m);
  EXPECT_THROW(parse_method("voice_conversion"), UsageError);
  EXPECT_STREQ(method_name(Method::kNoiseRir), "noise_rir");
}

TEST(AugmentUtterance, IdentityFactorsReproduceInput) {
  const Waveform x = vowel();
  AugmentConfig cfg;
  // Unit factors only reproduce the input when no pole needs the stability
  // clamp, so move the clamp radius out of reach.
  cfg.transform.clamp.epsilon = 1e-9;
  cfg.fixed_swp = SwpFactors{};
  cfg.fixed_bwp = BwpFactors{};
  cfg.fixed_alpha = 1.0;
  cfg.lpc_wp_range = {0.7, 1.3};
  for (Method m : {Method::kLpcSwp, Method::kBwpFep, Method::kSwpBwpFep,
                   Method::kLpcWp}) {
    Rng rng(3);
    AugmentStats stats;
    const Waveform y = augment_utterance(x, m, rng, cfg, {}, &stats);
    ASSERT_EQ(stats.clamp_count, 0u) << method_name(m);
    ASSERT_EQ(y.size(), x.size());
    EXPECT_LT(max_diff(x, y), 1e-6) << method_name(m);
  }
  for (Method m : {Method::kSpeed, Method::kPitch}) {
    Rng rng(3);
    EXPECT_EQ(augment_utterance(x, m, rng, cfg).size(), x.size()) << method_name(m);
  }
}

TEST(AugmentUtterance, SwpRaisesFirstFormant) {
  const Waveform x = vowel(32000, 5);
  AugmentConfig cfg;
  SwpFactors s;
  s.alpha = {0.8, 0.85, 0.95, 1.0};
  cfg.fixed_swp = s;
  Rng rng(1);
  const Waveform y = augment_utterance(x, Method::kLpcSwp, rng, cfg);
  EXPECT_NEAR(testing::peak_frequency(x.samples, kFs, 450, 1000, 1024, 4096), 700.0, 40.0);
  EXPECT_NEAR(testing::peak_frequency(y.samples, kFs, 600, 1100, 1024, 4096), 875.0, 40.0);
}

TEST(AugmentUtterance, SwpBwpFepShiftsAndBroadens) {
  const Waveform x = vowel(32000, 6);
  AugmentConfig cfg;
  SwpFactors s;
  s.alpha = {0.8, 0.85, 0.95, 1.0};
  BwpFactors b;
  b.beta = {0.95, 1.0, 1.0, 1.0};
  cfg.fixed_swp = s;
  cfg.fixed_bwp = b;
  Rng rng(1);
  AugmentStats stats;
  const Waveform y = augment_utterance(x, Method::kSwpBwpFep, rng, cfg, {}, &stats);
  const auto [f_in, b_in] = median_f1(x);
  const auto [f_out, b_out] = median_f1(y);
  EXPECT_NEAR(f_in, 700.0, 40.0);
  EXPECT_NEAR(f_out, 875.0, 40.0);
  EXPECT_GT(b_out, 2.0 * b_in);
  for (const FactorRecord &r : stats.factors) {
    if (std::isnan(r.alpha[0])) continue;
    EXPECT_EQ(r.alpha, s.alpha);
    EXPECT_EQ(r.beta, b.beta);
  }
}

TEST(AugmentUtterance, DeterministicPerSeed) {
  const Waveform x = vowel(8000);
  const AugmentResources res = pools();
  for (Method m : kAllMethods) {
    Rng a(42), b(42);
    const Waveform ya = augment_utterance(x, m, a, AugmentConfig{}, res);
    const Waveform yb = augment_utterance(x, m, b, AugmentConfig{}, res);
    EXPECT_EQ(ya.samples, yb.samples) << method_name(m);
  }
}

TEST(AugmentUtterance, FiniteAndRarelyClipped) {
  const AugmentResources res = pools();
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const Waveform x = vowel(8000, 100 + seed,
                             seed % 2 ? testing::Excitation::kPulses
                                      : testing::Excitation::kNoise);
    for (Method m : kAllMethods) {
      Rng rng(seed);
      AugmentStats stats;
      const Waveform y = augment_utterance(x, m, rng, AugmentConfig{}, res, &stats);
      for (double v : y.samples) ASSERT_TRUE(std::isfinite(v));
      EXPECT_LT(static_cast<double>(stats.clip_count) / y.size(), 0.01)
          << method_name(m);
    }
  }
}

TEST(AugmentUtterance, SilenceFramesPassThrough) {
  Waveform x;
  x.samples.assign(8000, 0.0);
  for (Method m : {Method::kLpcSwp, Method::kBwpFep, Method::kLpcWp}) {
    Rng rng(1);
    AugmentStats stats;
    const Waveform y = augment_utterance(x, m, rng, AugmentConfig{}, {}, &stats);
    EXPECT_GT(stats.degenerate_frames, 0u);
    for (double v : y.samples) EXPECT_EQ(v, 0.0);
  }
}

TEST(AugmentUtterance, FrameFactorsIndependentOfLength) {
  const Waveform a = vowel(16000, 9);
  Waveform b = a;
  b.samples.resize(8000);
  Rng ra(5), rb(5);
  AugmentStats sa, sb;
  augment_utterance(a, Method::kSwpBwpFep, ra, AugmentConfig{}, {}, &sa);
  augment_utterance(b, Method::kSwpBwpFep, rb, AugmentConfig{}, {}, &sb);
  ASSERT_LT(sb.factors.size(), sa.factors.size());
  for (std::size_t i = 0; i < sb.factors.size(); ++i) {
    EXPECT_EQ(sa.factors[i].frame_index, sb.factors[i].frame_index);
    EXPECT_EQ(sa.factors[i].alpha, sb.factors[i].alpha);
    EXPECT_EQ(sa.factors[i].beta, sb.factors[i].beta);
  }
  for (const FactorRecord &r : sa.factors) {
    SwpFactors f;
    f.alpha = r.alpha;
    EXPECT_TRUE(f.valid());
  }
}

TEST(AugmentUtterance, PoolsRequired) {
  const Waveform x = vowel(4000);
  Rng rng(1);
  EXPECT_THROW(augment_utterance(x, Method::kNoise, rng, AugmentConfig{}), ConfigError);
  EXPECT_THROW(augment_utterance(x, Method::kRir, rng, AugmentConfig{}), ConfigError);
  EXPECT_THROW(augment_utterance(x, Method::kNoiseRir, rng, AugmentConfig{}), ConfigError);
}

TEST(AugmentConfigTest, RangesMustStayInsideDefaults) {
  AugmentConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.speed_range = {0.8, 1.1};
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = AugmentConfig{};
  cfg.lpc_wp_range = {0.75, 1.2};
  EXPECT_NO_THROW(cfg.validate());
  cfg.bwp_range = {0.9, 1.2};
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = AugmentConfig{};
  SwpFactors bad;
  bad.alpha = {0.9, 0.9, 0.9, 0.9};
  cfg.fixed_swp = bad;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(AugmentUtterance, FixedAlphaOutsideRangeRejected) {
  AugmentConfig cfg;
  cfg.fixed_alpha = 1.2;
  Rng rng(1);
  EXPECT_THROW(augment_utterance(vowel(4000), Method::kSpeed, rng, cfg), DomainError);
}

TEST(FactorLog, Format) {
  std::ostringstream os;
  write_factor_log_header(os);
  FactorRecord r;
  r.utterance_id = "u1";
  r.frame_index = 3;
  r.method = Method::kBwpFep;
  r.beta = {0.9, 1.0, 1.05, 1.1};
  r.clamp_count = 2;
  write_factor_record(os, r);
  FactorRecord u;
  u.utterance_id = "u2";
  u.method = Method::kSpeed;
  u.alpha[0] = 1.05;
  write_factor_record(os, u);
  EXPECT_EQ(os.str(),
            "utterance_id\tframe_index\tmethod\talpha1\talpha2\talpha3\talpha4"
            "\tbeta1\tbeta2\tbeta3\tbeta4\tclamp_count\n"
            "u1\t3\tbwp_fep\t-\t-\t-\t-\t0.900000\t1.000000\t1.050000\t1.100000\t2\n"
            "u2\t-\tsm\t1.050000\t-\t-\t-\t-\t-\t-\t-\t0\n");
}

}  // namespace
}  // namespace childaug
