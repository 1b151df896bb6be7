// time_scale.cc

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

// WSOLA time-scale modification and the pitch shifter built on it.

#include <algorithm>
#include <cmath>
#include <limits>

#include "childaug/error.h"
#include "childaug/resample.h"
#include "childaug/transforms.h"

namespace childaug {

namespace {

double sample_at(std::span<const double> x, long i) {
  return i >= 0 && i < static_cast<long>(x.size()) ? x[static_cast<std::size_t>(i)]
                                                   : 0.0;
}

}  // namespace

std::vector<double> wsola_stretch(std::span<const double> x,
                                  std::size_t output_length, int sample_rate_hz,
                                  const WsolaOptions &opts) {
  std::vector<double> out(output_length, 0.0);
  if (x.empty() || output_length == 0) return out;

  auto win_len = static_cast<std::size_t>(
      std::lround(opts.segment_ms * sample_rate_hz / 1000.0));
  win_len = std::max<std::size_t>(win_len & ~std::size_t{1}, 4);
  const std::size_t hop_out = win_len / 2;
  const long search = std::lround(opts.search_ms * sample_rate_hz / 1000.0);
  // Input advance per output hop.
  const double hop_in = static_cast<double>(hop_out) *
                        static_cast<double>(x.size()) /
                        static_cast<double>(output_length);

  const std::vector<double> window = make_window(WindowType::kHann, win_len);
  std::vector<double> norm(output_length + win_len, 0.0);
  std::vector<double> acc(output_length + win_len, 0.0);

  long prev_pos = 0;
  for (std::size_t m = 0;; ++m) {
    const std::size_t out_pos = m * hop_out;
    if (out_pos >= output_length) break;
    const long nominal = std::lround(static_cast<double>(m) * hop_in);
    long pos = nominal;
    if (m > 0) {
      // The natural continuation of the previous segment is the template;
      // search outward from offset 0 so ties prefer the nominal position.
      const long natural = prev_pos + static_cast<long>(hop_out);
      double best = -std::numeric_limits<double>::infinity();
      for (long step = 0; step <= 2 * search; ++step) {
        const long delta = (step % 2 == 0) ? step / 2 : -(step + 1) / 2;
        const long cand = nominal + delta;
        double xc = 0.0, ec = 0.0;
        for (std::size_t i = 0; i < win_len; ++i) {
          const double c = sample_at(x, cand + static_cast<long>(i));
          xc += c * sample_at(x, natural + static_cast<long>(i));
          ec += c * c;
        }
        const double score = ec > 0.0 ? xc / std::sqrt(ec) : 0.0;
        if (score > best + 1e-12) {
          best = score;
          pos = cand;
        }
      }
    }
    for (std::size_t i = 0; i < win_len; ++i) {
      // The first segment has a flat leading half so the output starts at
      // full weight.
      const double w = (m == 0 && i < hop_out) ? 1.0 : window[i];
      acc[out_pos + i] += w * sample_at(x, pos + static_cast<long>(i));
      norm[out_pos + i] += w;
    }
    prev_pos = pos;
  }
  for (std::size_t i = 0; i < output_length; ++i)
    out[i] = norm[i] > 1e-6 ? acc[i] / norm[i] : acc[i];
  return out;
}

Waveform pitch_modify(const Waveform &wave, double alpha,
                      const WsolaOptions &opts) {
  if (!(alpha > 0.0)) throw DomainError("pitch factor must be positive");
  Waveform out;
  out.sample_rate_hz = wave.sample_rate_hz;
  if (wave.empty()) return out;
  const std::vector<double> fast = resample_by_rate(wave.samples, alpha);
  out.samples = wsola_stretch(fast, wave.size(), wave.sample_rate_hz, opts);
  return out;
}

}  // namespace childaug
