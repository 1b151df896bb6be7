// tests/formants_test.cc

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
#include <complex>

#include "childaug/audio_io.h"
#include "childaug/error.h"
#include "childaug/formants.h"
#include "childaug/lpc.h"
#include "test_util.h"

namespace childaug {
namespace {

using cd = std::complex<double>;
using testing::kPi;
constexpr double kT = 1.0 / 16000;

cd pole_at(double f_hz, double r) { return std::polar(r, 2.0 * kPi * f_hz * kT); }

TEST(Bandwidth, HundredHertz) {
  EXPECT_NEAR(bandwidth_from_radius(std::exp(-kPi * 100.0 / 16000.0), kT), 100.0, 1e-9);
}

TEST(Bandwidth, RadiusPointNineFive) {
  const double b = bandwidth_from_radius(0.95, kT);
  EXPECT_NEAR(b, -std::log(0.95) * 16000.0 / kPi, 1e-9);
  EXPECT_NEAR(b, 261.2, 0.05);
}

TEST(Bandwidth, ApproachesZeroNearUnitCircle) {
  EXPECT_LT(bandwidth_from_radius(1.0 - 1e-9, kT), 1e-4);
  EXPECT_GT(bandwidth_from_radius(1.0 - 1e-9, kT), 0.0);
}

TEST(Bandwidth, RoundTrip) {
  for (double r = 0.05; r < 1.0; r += 0.0371)
    EXPECT_NEAR(radius_from_bandwidth(bandwidth_from_radius(r, kT), kT), r, 1e-15);
}

TEST(Bandwidth, DomainErrors) {
  EXPECT_THROW(bandwidth_from_radius(1.0, kT), DomainError);
  EXPECT_THROW(bandwidth_from_radius(1.2, kT), DomainError);
  EXPECT_THROW(bandwidth_from_radius(0.0, kT), DomainError);
  EXPECT_THROW(bandwidth_from_radius(-0.5, kT), DomainError);
  EXPECT_THROW(bandwidth_from_radius(0.5, 0.0), DomainError);
}

PoleSet analyzed(const PoleSet &in) {
  return find_roots(poly_from_roots(in, kT));
}

TEST(PickFormants, TwoPairsAndRealPole) {
  PoleSet p;
  p.conjugate_pairs = {pole_at(1200, 0.96), pole_at(700, 0.97)};
  p.real_poles = {0.5};
  const auto f = pick_formants(analyzed(p), 16000);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0].k, 1);
  EXPECT_NEAR(f[0].center_freq_hz, 700.0, 1e-6);
  EXPECT_EQ(f[1].k, 2);
  EXPECT_NEAR(f[1].center_freq_hz, 1200.0, 1e-6);
}

TEST(PickFormants, WideBandwidthExcluded) {
  PoleSet p;
  p.conjugate_pairs = {pole_at(2000, 0.4)};
  EXPECT_GT(bandwidth_from_radius(0.4, kT), 4600.0);
  EXPECT_TRUE(pick_formants(p, 16000).empty());
}

TEST(PickFormants, EmptySet) { EXPECT_TRUE(pick_formants(PoleSet{}, 16000).empty()); }

TEST(PickFormants, FrequencyLimits) {
  PoleSet p;
  p.conjugate_pairs = {pole_at(60, 0.99), pole_at(7800, 0.99), pole_at(1000, 0.99)};
  const auto f = pick_formants(p, 16000);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_NEAR(f[0].center_freq_hz, 1000.0, 1e-9);
}

TEST(PickFormants, NarrowestFourOfLowestFive) {
  PoleSet p;
  // Lowest five candidates; the 1500 Hz pair is the widest and is dropped.
  p.conjugate_pairs = {pole_at(500, 0.98),  pole_at(1000, 0.97),
                       pole_at(1500, 0.90), pole_at(2500, 0.96),
                       pole_at(3500, 0.95), pole_at(4500, 0.99)};
  const auto f = pick_formants(p, 16000);
  ASSERT_EQ(f.size(), 4u);
  const double want[4] = {500, 1000, 2500, 3500};
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(f[i].k, i + 1);
    EXPECT_NEAR(f[i].center_freq_hz, want[i], 1e-9);
  }
}

TEST(PickFormants, RadiusMatchesBandwidth) {
  Waveform w;
  w.samples = testing::synth_vowel(8000, 16000, testing::standard_formants());
  for (const Frame &fr : frame_signal(w, FrameSpec{})) {
    const auto an = lpc_analyze(fr, LpcOptions{});
    ASSERT_TRUE(an);
    const auto f = pick_formants(find_roots(an->model), 16000);
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i > 0) EXPECT_GT(f[i].center_freq_hz, f[i - 1].center_freq_hz);
      EXPECT_EQ(f[i].k, static_cast<int>(i) + 1);
      const double r = std::exp(-kPi * f[i].bandwidth_hz * kT);
      EXPECT_NEAR(f[i].radius(), r, 1e-12 * r);
      EXPECT_GT(f[i].center_freq_hz, 0.0);
      EXPECT_LT(f[i].center_freq_hz, 8000.0);
    }
  }
}

TEST(PickFormants, RecoversSyntheticVowel) {
  const auto fm = std::vector<std::pair<double, double>>{
      {700, 80}, {1200, 120}, {2600, 160}, {3500, 200}};
  Waveform w;
  w.samples = testing::synth_vowel(16000, 16000, fm, testing::Excitation::kPulses);
  std::vector<std::vector<double>> found(4);
  std::size_t good = 0, total = 0;
  for (const Frame &fr : frame_signal(w, FrameSpec{})) {
    const auto an = lpc_analyze(fr, LpcOptions{});
    ASSERT_TRUE(an);
    const auto f = pick_formants(find_roots(an->model), 16000);
    ++total;
    if (f.size() != 4) continue;
    bool ok = true;
    for (int k = 0; k < 4; ++k) {
      found[k].push_back(f[k].center_freq_hz);
      ok = ok && std::abs(f[k].center_freq_hz - fm[k].first) <= 40.0;
    }
    good += ok ? 1 : 0;
  }
  EXPECT_GE(static_cast<double>(good) / total, 0.9);
  for (int k = 0; k < 4; ++k) {
    auto v = found[k];
    std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
    EXPECT_NEAR(v[v.size() / 2], fm[k].first, 40.0) << "F" << k + 1;
  }
}

}  // namespace
}  // namespace childaug
