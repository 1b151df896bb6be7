// tests/mixer_test.cc

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

#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "childaug/audio_io.h"
#include "childaug/error.h"
#include "childaug/log.h"
#include "childaug/mixer.h"
#include "test_util.h"

namespace childaug {
namespace {

namespace fs = std::filesystem;

std::vector<std::string> make_ids(std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("utt" + std::to_string(i));
  return ids;
}

std::string slurp(const fs::path &p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

TEST(Presets, Weights) {
  const MixConfig p11 = preset_config("proposed-3/11");
  EXPECT_EQ(p11.method_weights.size(), 11u);
  for (const auto &[m, w] : p11.method_weights) EXPECT_NEAR(w, 3.0 / 11.0, 1e-15);
  EXPECT_NO_THROW(p11.validate());
  const MixConfig b1 = preset_config("Baseline-3/1");
  ASSERT_EQ(b1.method_weights.size(), 1u);
  EXPECT_EQ(b1.method_weights.at(Method::kSpecAugment), 3.0);
  for (const std::string &name : preset_names()) {
    const MixConfig c = preset_config(name);
    EXPECT_NO_THROW(c.validate()) << name;
    EXPECT_EQ(c.ratio_x, 3.0);
  }
  EXPECT_THROW(preset_config("proposed-3-12"), ConfigError);
}

TEST(Presets, NamesAreTableRows) {
  const std::vector<std::string> want{
      "baseline-3-1", "baseline-3-3", "baseline-3-4", "baseline-3-5",
      "baseline-3-6", "proposed-3-7", "proposed-3-8", "proposed-3-9",
      "proposed-3-10", "proposed-3-11"};
  EXPECT_EQ(preset_names(), want);
}

TEST(BuildPlan, Proposed311On11Sources) {
  const AugmentPlan p = build_plan(make_ids(11), preset_config("proposed-3/11"));
  EXPECT_EQ(p.original_count(), 11u);
  EXPECT_EQ(p.augmented_count(), 33u);
  const auto counts = p.method_counts();
  EXPECT_EQ(counts.size(), 11u);
  for (const auto &[m, n] : counts) EXPECT_EQ(n, 3u) << method_name(m);
}

TEST(BuildPlan, Proposed311On110Sources) {
  const AugmentPlan p = build_plan(make_ids(110), preset_config("proposed-3-11"));
  EXPECT_EQ(p.original_count(), 110u);
  EXPECT_EQ(p.augmented_count(), 330u);
  for (const auto &[m, n] : p.method_counts()) EXPECT_EQ(n, 30u);
}

TEST(BuildPlan, Baseline31OneSource) {
  const AugmentPlan p = build_plan(make_ids(1), preset_config("baseline-3/1"));
  ASSERT_EQ(p.entries.size(), 4u);
  EXPECT_TRUE(p.entries[0].is_original());
  for (int i = 1; i < 4; ++i) EXPECT_EQ(*p.entries[i].method, Method::kSpecAugment);
}

TEST(BuildPlan, ZeroRatioGivesOriginals) {
  MixConfig c;
  c.ratio_x = 0.0;
  const AugmentPlan p = build_plan(make_ids(5), c);
  EXPECT_EQ(p.entries.size(), 5u);
  EXPECT_EQ(p.augmented_count(), 0u);
}

TEST(BuildPlan, ConfigErrors) {
  MixConfig c;
  c.ratio_x = 3.0;
  c.method_weights[Method::kLpcSwp] = 2.0;
  EXPECT_THROW(build_plan(make_ids(3), c), ConfigError);
  c.method_weights[Method::kLpcSwp] = 3.0;
  EXPECT_THROW(build_plan({}, c), ConfigError);
  c.method_weights[Method::kNoise] = -1.0;
  c.method_weights[Method::kLpcSwp] = 4.0;
  EXPECT_THROW(c.validate(), ConfigError);
  MixConfig z;
  z.ratio_x = 0.0;
  z.method_weights[Method::kNoise] = 0.0;
  EXPECT_NO_THROW(z.validate());
}

TEST(BuildPlan, RatioAndShareInvariants) {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + gen() % 200;
    MixConfig c;
    c.ratio_x = 1.0 + 5.0 * u(gen);
    const std::size_t k = 1 + gen() % 11;
    std::vector<double> raw(k);
    double sum = 0.0;
    for (double &r : raw) sum += (r = 0.05 + u(gen));
    for (std::size_t i = 0; i < k; ++i)
      c.method_weights[kAllMethods[i]] = c.ratio_x * raw[i] / sum;
    double check = 0.0;
    for (const auto &kv : c.method_weights) check += kv.second;
    c.ratio_x = check;  // keep the 1e-9 sum rule exact
    c.seed = t;
    const AugmentPlan p = build_plan(make_ids(n), c);
    ASSERT_EQ(p.original_count(), n);
    const double aug = static_cast<double>(p.augmented_count());
    EXPECT_LE(std::abs(aug / n - c.ratio_x), 1.0 / n + 1e-12);
    const auto counts = p.method_counts();
    for (const auto &[m, w] : c.method_weights) {
      const double got = counts.count(m) ? static_cast<double>(counts.at(m)) : 0.0;
      EXPECT_LT(std::abs(got - w / c.ratio_x * aug), 1.0) << "trial " << t;
      EXPECT_LE(std::abs(got / aug - w / c.ratio_x), 1.0 / n + 1e-9);
    }
    // Each source: one original then its augmented slots.
    std::size_t per_source_max = 0, run = 0;
    for (const PlanEntry &e : p.entries) {
      run = e.is_original() ? 0 : run + 1;
      per_source_max = std::max(per_source_max, run);
    }
    EXPECT_LE(per_source_max, static_cast<std::size_t>(std::ceil(c.ratio_x)));
  }
}

TEST(BuildPlan, PureAndSeeded) {
  const auto ids = make_ids(30);
  MixConfig c = preset_config("proposed-3-9", 5);
  const AugmentPlan a = build_plan(ids, c);
  const AugmentPlan b = build_plan(ids, c);
  ASSERT_EQ(a.entries.size(), b.entries.size());
  std::set<std::uint64_t> seeds;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    EXPECT_EQ(a.entries[i].seed, b.entries[i].seed);
    EXPECT_EQ(a.entries[i].method, b.entries[i].method);
    seeds.insert(a.entries[i].seed);
  }
  EXPECT_EQ(seeds.size(), a.entries.size());
  c.seed = 6;
  EXPECT_NE(build_plan(ids, c).entries[0].seed, a.entries[0].seed);
}

class ExecuteTest : public ::testing::Test {
 protected:
  void SetUp() override {
    Waveform w;
    w.samples = testing::synth_vowel(8000, 16000, testing::standard_formants());
    src_ = dir_.path() / "utt0.wav";
    write_wav(src_, w);
  }
  testing::TempDir dir_{"exec"};
  fs::path src_;
};

TEST_F(ExecuteTest, OneOriginalOneSwp) {
  MixConfig c;
  c.ratio_x = 1.0;
  c.method_weights[Method::kLpcSwp] = 1.0;
  const AugmentPlan plan = build_plan({"utt0"}, c);
  ExecuteOptions o;
  o.output_root = dir_.path() / "out";
  o.log_factors = true;
  const Manifest m = execute_plan(plan, {{"utt0", src_}}, {}, o);
  ASSERT_EQ(m.rows.size(), 2u);
  EXPECT_EQ(m.failures, 0u);
  EXPECT_TRUE(fs::exists(o.output_root / "original/utt0.wav"));
  EXPECT_TRUE(fs::exists(o.output_root / "lpc_swp/utt0-lpc_swp-0.wav"));
  EXPECT_EQ(m.rows[1].factor_ref, "utt0-lpc_swp-0");
  std::ifstream man(o.output_root / "manifest.tsv");
  std::string line;
  int lines = 0;
  while (std::getline(man, line)) ++lines;
  EXPECT_EQ(lines, 3);
  EXPECT_TRUE(fs::exists(o.output_root / "factors.tsv"));
}

TEST_F(ExecuteTest, RerunIsByteIdentical) {
  const AugmentPlan plan = build_plan({"utt0"}, preset_config("proposed-3-10", 3));
  AugmentResources res;
  Waveform n;
  n.samples = testing::tone(4000, 16000, 911.0, 0.1);
  res.noise_pool.push_back(n);
  res.rir_pool.push_back(Waveform{{1.0, 0.3, 0.1}, 16000});
  ExecuteOptions a, b;
  a.output_root = dir_.path() / "a";
  b.output_root = dir_.path() / "b";
  a.log_factors = b.log_factors = true;
  b.jobs = 4;
  execute_plan(plan, {{"utt0", src_}}, res, a);
  execute_plan(plan, {{"utt0", src_}}, res, b);
  for (const auto &e : fs::recursive_directory_iterator(a.output_root)) {
    if (!e.is_regular_file()) continue;
    const fs::path rel = fs::relative(e.path(), a.output_root);
    EXPECT_EQ(slurp(e.path()), slurp(b.output_root / rel)) << rel;
  }
}

TEST_F(ExecuteTest, EmptyPoolFailsBeforeWrites) {
  MixConfig c;
  c.ratio_x = 1.0;
  c.method_weights[Method::kNoise] = 1.0;
  const AugmentPlan plan = build_plan({"utt0"}, c);
  ExecuteOptions o;
  o.output_root = dir_.path() / "never";
  EXPECT_THROW(execute_plan(plan, {{"utt0", src_}}, {}, o), ConfigError);
  EXPECT_FALSE(fs::exists(o.output_root));
}

TEST_F(ExecuteTest, MissingSourceIsRecorded) {
  MixConfig c;
  c.ratio_x = 1.0;
  c.method_weights[Method::kSpeed] = 1.0;
  const AugmentPlan plan = build_plan({"utt0", "ghost"}, c);
  ExecuteOptions o;
  o.output_root = dir_.path() / "out";
  auto prev = set_log_sink([](LogLevel, const std::string &) {});
  const Manifest m = execute_plan(
      plan, {{"utt0", src_}, {"ghost", dir_.path() / "ghost.wav"}}, {}, o);
  set_log_sink(prev);
  EXPECT_EQ(m.failures, 2u);
  std::size_t ok = 0;
  for (const ManifestRow &r : m.rows) ok += r.status == "ok" ? 1 : 0;
  EXPECT_EQ(ok, m.rows.size() - 2);
}

}  // namespace
}  // namespace childaug
