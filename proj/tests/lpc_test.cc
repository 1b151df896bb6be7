// tests/lpc_test.cc

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
#include <chrono>
#include <complex>
#include <random>

#include "childaug/audio_io.h"
#include "childaug/error.h"
#include "childaug/lpc.h"
#include "childaug/spectrum.h"
#include "test_util.h"

namespace childaug {
namespace {

using cd = std::complex<double>;
using testing::kPi;

Frame make_frame(std::vector<double> x, int fs = 16000) {
  Frame f;
  f.samples = std::move(x);
  f.sample_rate_hz = fs;
  return f;
}

std::vector<double> white(std::size_t n, std::uint64_t seed, double sd = 0.1) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> g(0.0, sd);
  std::vector<double> x(n);
  for (double &v : x) v = g(gen);
  return x;
}

// Random stable predictor built from random poles.
std::vector<cd> random_stable_roots(int p, std::mt19937_64 &gen) {
  std::uniform_real_distribution<double> rad(0.1, 0.97), ang(0.05, kPi - 0.05),
      re(-0.95, 0.95);
  std::vector<cd> roots;
  while (static_cast<int>(roots.size()) + 2 <= p) {
    const cd z = std::polar(rad(gen), ang(gen));
    roots.push_back(z);
    roots.push_back(std::conj(z));
  }
  if (static_cast<int>(roots.size()) < p) roots.emplace_back(re(gen), 0.0);
  return roots;
}

// Independent expansion of prod (z - r) into a_1..a_p.
std::vector<double> expand(const std::vector<cd> &roots) {
  std::vector<cd> poly{1.0};
  for (const cd &r : roots) {
    std::vector<cd> next(poly.size() + 1, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] += poly[i];
      next[i + 1] -= r * poly[i];
    }
    poly = std::move(next);
  }
  std::vector<double> a(roots.size());
  for (std::size_t k = 1; k < poly.size(); ++k) a[k - 1] = -poly[k].real();
  return a;
}

TEST(LpcAnalyze, RecoversAr2) {
  const std::vector<double> a{1.0, -0.8};
  const auto x = testing::ar_filter(white(16000, 7, 0.05), a);
  LpcOptions opts;
  opts.order = 2;
  opts.preemphasis = 0.0;
  const auto an = lpc_analyze(make_frame(x), opts);
  ASSERT_TRUE(an);
  EXPECT_NEAR(an->model.coeffs[0], 1.0, 0.05);
  EXPECT_NEAR(an->model.coeffs[1], -0.8, 0.05);
}

TEST(LpcAnalyze, WhiteNoiseResidualKeepsEnergy) {
  LpcOptions opts;
  opts.order = 10;
  opts.preemphasis = 0.0;
  double ratio = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto x = white(400, 100 + t);
    const auto an = lpc_analyze(make_frame(x), opts);
    ASSERT_TRUE(an);
    const double ex = energy(x);
    const double er = energy(an->residual.samples);
    EXPECT_LE(er, ex * (1.0 + 1e-12));
    ratio += er / ex;
  }
  EXPECT_GT(ratio / 100.0, 0.8);
}

TEST(LpcAnalyze, ZeroFrameIsDegenerate) {
  EXPECT_FALSE(lpc_analyze(make_frame(std::vector<double>(400, 0.0)), LpcOptions{}));
  EXPECT_FALSE(lpc_analyze(make_frame(std::vector<double>(400, 1e-6)), LpcOptions{}));
}

TEST(LpcAnalyze, Errors) {
  EXPECT_THROW(lpc_analyze(make_frame(std::vector<double>(18, 0.1)), LpcOptions{}),
               DomainError);
  auto x = white(400, 1);
  x[5] = std::nan("");
  EXPECT_THROW(lpc_analyze(make_frame(x), LpcOptions{}), NumericError);
}

TEST(LpcAnalyze, DefaultOrderRule) {
  EXPECT_EQ(default_lpc_order(16000), 18);
  EXPECT_EQ(default_lpc_order(8000), 10);
}

TEST(LevinsonDurbin, MatchesNormalEquations) {
  std::mt19937_64 gen(9);
  for (int t = 0; t < 20; ++t) {
    const auto x = white(300, 500 + t);
    const int p = 2 + t % 10;
    const auto r = autocorrelation(x, p);
    const auto a = levinson_durbin(r);
    // Solve the Toeplitz system by Gaussian elimination.
    std::vector<std::vector<double>> m(p, std::vector<double>(p + 1));
    for (int i = 0; i < p; ++i) {
      for (int j = 0; j < p; ++j) m[i][j] = r[std::abs(i - j)];
      m[i][p] = r[i + 1];
    }
    for (int c = 0; c < p; ++c) {
      for (int i = c + 1; i < p; ++i) {
        const double f = m[i][c] / m[c][c];
        for (int j = c; j <= p; ++j) m[i][j] -= f * m[c][j];
      }
    }
    std::vector<double> sol(p);
    for (int i = p - 1; i >= 0; --i) {
      double s = m[i][p];
      for (int j = i + 1; j < p; ++j) s -= m[i][j] * sol[j];
      sol[i] = s / m[i][i];
    }
    for (int i = 0; i < p; ++i) EXPECT_NEAR(a[i], sol[i], 1e-9);
  }
}

TEST(LpcSynthesize, ImpulseResponseIsGeometric) {
  LpcModel m;
  m.coeffs = {0.5};
  std::vector<double> e(10, 0.0);
  e[0] = 1.0;
  const Frame y = lpc_synthesize(m, make_frame(e));
  for (int n = 0; n < 10; ++n) EXPECT_DOUBLE_EQ(y.samples[n], std::pow(0.5, n));
}

TEST(LpcSynthesize, ZeroResidualGivesZero) {
  LpcModel m;
  m.coeffs = {1.0, -0.5};
  m.preemphasis = 0.97;
  const Frame y = lpc_synthesize(m, make_frame(std::vector<double>(50, 0.0)));
  for (double v : y.samples) EXPECT_EQ(v, 0.0);
}

TEST(LpcSynthesize, UnstableModelThrows) {
  LpcModel m;
  m.coeffs = {0.0, -1.21};  // poles at +-1.1i
  EXPECT_THROW(lpc_synthesize(m, make_frame(std::vector<double>(10, 0.1))),
               StabilityError);
}

TEST(LpcSynthesize, AnalysisSynthesisIdentity) {
  Waveform w;
  w.samples = testing::synth_vowel(8000, 16000, testing::standard_formants(),
                                   testing::Excitation::kPulses);
  for (const Frame &f : frame_signal(w, FrameSpec{})) {
    const auto an = lpc_analyze(f, LpcOptions{});
    ASSERT_TRUE(an);
    const Frame y = lpc_synthesize(an->model, an->residual);
    for (std::size_t i = 0; i < f.size(); ++i)
      ASSERT_NEAR(y.samples[i], f.samples[i], 1e-9);
  }
}

TEST(LpcAnalyze, PredictorIsMinimumPhase) {
  std::mt19937_64 gen(21);
  for (int t = 0; t < 50; ++t) {
    std::vector<std::pair<double, double>> fm{
        {400.0 + 40.0 * (t % 10), 60.0 + t}, {1500.0 + 10.0 * t, 100.0},
        {2500, 150}, {3700, 200}};
    const auto x = testing::synth_vowel(400, 16000, fm, testing::Excitation::kNoise, t);
    Frame f = make_frame(x);
    const auto w = make_window(WindowType::kHann, 400);
    for (std::size_t i = 0; i < 400; ++i) f.samples[i] *= w[i];
    const auto an = lpc_analyze(f, LpcOptions{});
    ASSERT_TRUE(an);
    EXPECT_TRUE(find_roots(an->model).stable());
  }
}

TEST(FindRoots, DoubleRealRoot) {
  LpcModel m;
  m.coeffs = {1.0, -0.25};
  const PoleSet p = find_roots(m);
  ASSERT_EQ(p.order(), 2);
  // A double root is only determined to about sqrt(machine epsilon).
  for (const cd &z : p.all_roots()) EXPECT_NEAR(std::abs(z - 0.5), 0.0, 1e-7);
}

TEST(FindRoots, ImaginaryPair) {
  LpcModel m;
  m.coeffs = {0.0, -0.81};
  const PoleSet p = find_roots(m);
  ASSERT_EQ(p.conjugate_pairs.size(), 1u);
  EXPECT_TRUE(p.real_poles.empty());
  EXPECT_NEAR(std::abs(p.conjugate_pairs[0]), 0.9, 1e-12);
  EXPECT_NEAR(std::arg(p.conjugate_pairs[0]), kPi / 2, 1e-12);
}

TEST(FindRoots, FirstOrder) {
  LpcModel m;
  m.coeffs = {0.7};
  const PoleSet p = find_roots(m);
  ASSERT_EQ(p.real_poles.size(), 1u);
  EXPECT_NEAR(p.real_poles[0], 0.7, 1e-14);
}

TEST(FindRoots, ResidualAndCount) {
  std::mt19937_64 gen(31);
  for (int t = 0; t < 100; ++t) {
    const int p = 1 + t % 24;
    LpcModel m;
    m.coeffs = expand(random_stable_roots(p, gen));
    const PoleSet ps = find_roots(m);
    EXPECT_EQ(ps.order(), p);
    for (const cd &z : ps.all_roots()) {
      // Monic polynomial value z^p A(z).
      const cd v = predictor_polynomial(m.coeffs, z) * std::pow(z, p);
      EXPECT_LT(std::abs(v), 1e-8);
    }
    for (const cd &z : ps.conjugate_pairs) EXPECT_GT(z.imag(), 0.0);
  }
}

TEST(PolyFromRoots, ImaginaryPair) {
  PoleSet p;
  p.conjugate_pairs = {std::polar(0.9, kPi / 2)};
  const LpcModel m = poly_from_roots(p, 1.0 / 16000);
  ASSERT_EQ(m.coeffs.size(), 2u);
  EXPECT_NEAR(m.coeffs[0], 0.0, 1e-15);
  EXPECT_NEAR(m.coeffs[1], -0.81, 1e-15);
}

TEST(PolyFromRoots, EmptySet) {
  const LpcModel m = poly_from_roots(PoleSet{}, 1.0 / 16000);
  EXPECT_TRUE(m.coeffs.empty());
}

TEST(PolyFromRoots, RejectsBadPairs) {
  PoleSet p;
  p.conjugate_pairs = {cd(0.5, -0.2)};
  EXPECT_THROW(poly_from_roots(p, 1.0 / 16000), SymmetryError);
  const std::vector<cd> open{cd(0.5, 0.2)};
  EXPECT_THROW(coeffs_from_roots(open), SymmetryError);
}

TEST(PolyFromRoots, RoundTripRandomSets) {
  std::mt19937_64 gen(41);
  for (int t = 0; t < 300; ++t) {
    const int p = 1 + t % 24;
    const auto roots = random_stable_roots(p, gen);
    const auto a = expand(roots);
    LpcModel m;
    m.coeffs = a;
    const LpcModel back = poly_from_roots(find_roots(m), m.sample_period_s);
    ASSERT_EQ(back.coeffs.size(), a.size());
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(back.coeffs[k], a[k], 1e-6);
    // Roots recovered as well.
    const PoleSet again = find_roots(back);
    for (const cd &z : again.all_roots()) {
      double best = 1e9;
      for (const cd &r : roots) best = std::min(best, std::abs(z - r));
      EXPECT_LT(best, 1e-6);
    }
  }
}

TEST(Spectrum, EnvelopePeaksAtResonance) {
  const auto a = testing::resonator_coeffs({{1000.0, 50.0}}, 16000);
  const auto db = lpc_spectrum_db(a, 1.0, 513);
  const auto it = std::max_element(db.begin(), db.end());
  const double f = 8000.0 * static_cast<double>(it - db.begin()) / 512.0;
  EXPECT_NEAR(f, 1000.0, 16.0);
}

TEST(Spectrum, RfftRoundTrip) {
  const auto x = white(300, 77);
  const auto y = irfft(rfft(x, 512), 512);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(y[i], x[i], 1e-12);
  for (std::size_t i = x.size(); i < 512; ++i) EXPECT_NEAR(y[i], 0.0, 1e-12);
}

}  // namespace
}  // namespace childaug
