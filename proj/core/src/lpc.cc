// lpc.cc

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

#include "childaug/lpc.h"

#include <algorithm>
#include <cmath>

#include "childaug/error.h"

namespace childaug {

namespace {

// Step-down (backward Levinson) test: A(z) is minimum phase iff every
// reflection coefficient recovered from it has magnitude below one.
bool is_minimum_phase(std::span<const double> coeffs) {
  std::vector<double> a(coeffs.begin(), coeffs.end());
  for (std::size_t m = a.size(); m > 0; --m) {
    const double k = a[m - 1];
    if (!(std::abs(k) < 1.0)) return false;
    const double denom = 1.0 - k * k;
    std::vector<double> prev(m - 1);
    for (std::size_t i = 0; i + 1 < m; ++i)
      prev[i] = (a[i] + k * a[m - 2 - i]) / denom;
    a = std::move(prev);
  }
  return true;
}

}  // namespace

bool PoleSet::stable() const {
  return max_radius() < 1.0;
}

double PoleSet::max_radius() const {
  double r = 0.0;
  for (const auto &z : conjugate_pairs) r = std::max(r, std::abs(z));
  for (double x : real_poles) r = std::max(r, std::abs(x));
  return r;
}

std::vector<std::complex<double>> PoleSet::all_roots() const {
  std::vector<std::complex<double>> out;
  out.reserve(static_cast<std::size_t>(order()));
  for (const auto &z : conjugate_pairs) {
    out.push_back(z);
    out.push_back(std::conj(z));
  }
  for (double x : real_poles) out.emplace_back(x, 0.0);
  return out;
}

int default_lpc_order(int sample_rate_hz) {
  return static_cast<int>(std::lround(sample_rate_hz / 1000.0)) + 2;
}

std::vector<double> autocorrelation(std::span<const double> x,
                                    std::size_t max_lag) {
  std::vector<double> r(max_lag + 1, 0.0);
  for (std::size_t k = 0; k <= max_lag && k < x.size(); ++k) {
    double acc = 0.0;
    for (std::size_t n = 0; n + k < x.size(); ++n) acc += x[n] * x[n + k];
    r[k] = acc;
  }
  return r;
}

std::vector<double> levinson_durbin(std::span<const double> r,
                                    double *prediction_error,
                                    std::vector<double> *reflection) {
  if (r.empty()) throw DomainError("levinson_durbin: empty autocorrelation");
  const std::size_t p = r.size() - 1;
  std::vector<double> a(p, 0.0), tmp(p, 0.0);
  double err = r[0];
  if (reflection != nullptr) reflection->assign(p, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    if (!(err > 0.0)) break;  // perfectly predicted; higher terms stay zero
    double acc = r[i + 1];
    for (std::size_t j = 0; j < i; ++j) acc -= a[j] * r[i - j];
    const double k = acc / err;
    if (!std::isfinite(k)) throw NumericError("levinson_durbin: non-finite reflection");
    tmp = a;
    a[i] = k;
    for (std::size_t j = 0; j < i; ++j) a[j] = tmp[j] - k * tmp[i - 1 - j];
    err *= (1.0 - k * k);
    if (reflection != nullptr) (*reflection)[i] = k;
  }
  if (prediction_error != nullptr) *prediction_error = std::max(err, 0.0);
  return a;
}

std::vector<double> inverse_filter(std::span<const double> x,
                                   std::span<const double> coeffs) {
  std::vector<double> e(x.size());
  const std::size_t p = coeffs.size();
  for (std::size_t n = 0; n < x.size(); ++n) {
    double acc = x[n];
    const std::size_t kmax = std::min(p, n);
    for (std::size_t k = 1; k <= kmax; ++k) acc -= coeffs[k - 1] * x[n - k];
    e[n] = acc;
  }
  return e;
}

std::vector<double> all_pole_filter(std::span<const double> e,
                                    std::span<const double> coeffs) {
  std::vector<double> y(e.size());
  const std::size_t p = coeffs.size();
  for (std::size_t n = 0; n < e.size(); ++n) {
    double acc = e[n];
    const std::size_t kmax = std::min(p, n);
    for (std::size_t k = 1; k <= kmax; ++k) acc += coeffs[k - 1] * y[n - k];
    y[n] = acc;
  }
  return y;
}

std::optional<LpcAnalysis> lpc_analyze(const Frame &frame,
                                       const LpcOptions &opts) {
  if (opts.order < 1) throw DomainError("LPC order must be positive");
  const auto p = static_cast<std::size_t>(opts.order);
  if (frame.size() <= p)
    throw DomainError("frame of " + std::to_string(frame.size()) +
                      " samples is too short for order " +
                      std::to_string(opts.order));
  for (double v : frame.samples)
    if (!std::isfinite(v)) throw NumericError("non-finite sample in frame");

  const double mean_square =
      energy(frame.samples) / static_cast<double>(frame.size());
  if (mean_square < opts.silence_threshold) return std::nullopt;

  std::vector<double> x = frame.samples;
  if (opts.preemphasis != 0.0)
    for (std::size_t n = x.size(); n-- > 1;) x[n] -= opts.preemphasis * x[n - 1];

  std::vector<double> r = autocorrelation(x, p);
  for (double v : r)
    if (!std::isfinite(v)) throw NumericError("non-finite autocorrelation");
  // A -90 dB white-noise floor keeps the Toeplitz system strictly positive
  // definite, so the recursion cannot produce |k| >= 1 through rounding.
  r[0] *= 1.0 + 1e-9;

  double err = 0.0;
  LpcAnalysis out;
  out.model.coeffs = levinson_durbin(r, &err);
  out.model.gain = std::sqrt(err);
  out.model.sample_period_s = 1.0 / frame.sample_rate_hz;
  out.model.preemphasis = opts.preemphasis;
  out.residual.samples = inverse_filter(x, out.model.coeffs);
  out.residual.sample_rate_hz = frame.sample_rate_hz;
  out.residual.index = frame.index;
  return out;
}

Frame lpc_synthesize_unchecked(const LpcModel &model, const Frame &residual) {
  Frame out;
  out.sample_rate_hz = residual.sample_rate_hz;
  out.index = residual.index;
  out.samples = all_pole_filter(residual.samples, model.coeffs);
  if (model.preemphasis != 0.0)
    for (std::size_t n = 1; n < out.samples.size(); ++n)
      out.samples[n] += model.preemphasis * out.samples[n - 1];
  return out;
}

Frame lpc_synthesize(const LpcModel &model, const Frame &residual) {
  if (!is_minimum_phase(model.coeffs))
    throw StabilityError("synthesis filter has a pole on or outside the unit circle");
  return lpc_synthesize_unchecked(model, residual);
}

}  // namespace childaug
