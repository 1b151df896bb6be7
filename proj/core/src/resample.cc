// resample.cc

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

#include "childaug/resample.h"

#include <algorithm>
#include <cmath>

#include "childaug/error.h"

namespace childaug {

SincResampler::SincResampler(double step, double kaiser_beta)
    : step_(step), cutoff_(step > 1.0 ? 0.97 / step : 1.0) {
  if (!(step > 0.0) || !std::isfinite(step))
    throw DomainError("resampling step must be positive");
  const int half = kTaps / 2;
  const std::size_t n = static_cast<std::size_t>(kTaps) * kPhases + 1;
  table_.resize(n);
  const double norm = std::cyl_bessel_i(0.0, kaiser_beta);
  for (std::size_t i = 0; i < n; ++i) {
    const double x =
        static_cast<double>(i) / kPhases - static_cast<double>(half);
    const double u = x / half;
    const double win =
        std::cyl_bessel_i(0.0, kaiser_beta * std::sqrt(std::max(0.0, 1.0 - u * u))) /
        norm;
    const double arg = M_PI * x;
    const double sinc = std::abs(x) < 1e-12 ? 1.0 : std::sin(arg) / arg;
    table_[i] = sinc * win;
  }
}

double SincResampler::kernel(double offset) const {
  const double pos = (offset + kTaps / 2) * kPhases;
  if (pos <= 0.0 || pos >= static_cast<double>(table_.size() - 1)) return 0.0;
  const auto i = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(i);
  if (frac == 0.0) return table_[i];
  return table_[i] + frac * (table_[i + 1] - table_[i]);
}

std::vector<double> SincResampler::process(std::span<const double> input) const {
  const auto n_in = static_cast<long>(input.size());
  const auto n_out =
      static_cast<std::size_t>(std::floor(static_cast<double>(n_in) / step_ + 1e-9));
  std::vector<double> out(n_out, 0.0);
  // For step > 1 the kernel is stretched by 1/cutoff so that its passband
  // ends at the output Nyquist frequency.
  const double stretch = 1.0 / cutoff_;
  const long reach = static_cast<long>(std::ceil(kTaps / 2 * stretch));
  for (std::size_t n = 0; n < n_out; ++n) {
    const double p = static_cast<double>(n) * step_;
    const long center = static_cast<long>(std::floor(p));
    double acc = 0.0;
    for (long i = center - reach + 1; i <= center + reach; ++i) {
      if (i < 0 || i >= n_in) continue;
      acc += input[static_cast<std::size_t>(i)] *
             kernel((p - static_cast<double>(i)) / stretch);
    }
    out[n] = acc * cutoff_;
  }
  return out;
}

std::vector<double> resample_by_rate(std::span<const double> input,
                                     double rate) {
  return SincResampler(rate).process(input);
}

}  // namespace childaug
