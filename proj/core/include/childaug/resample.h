// childaug/resample.h

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

#ifndef CHILDAUG_RESAMPLE_H_
#define CHILDAUG_RESAMPLE_H_

#include <cstddef>
#include <span>
#include <vector>

namespace childaug {

/// Windowed-sinc interpolator with a tabulated (polyphase) Kaiser kernel.
///
/// Output sample n is the band-limited value of the input at position
/// n * step. For step > 1 the kernel cutoff is lowered to 0.97/step of Nyquist
/// so that decimation does not alias.
class SincResampler {
 public:
  static constexpr int kTaps = 64;
  static constexpr int kPhases = 512;

  explicit SincResampler(double step, double kaiser_beta = 8.6);

  double step() const { return step_; }

  /// Output length is floor(input.size() / step).
  std::vector<double> process(std::span<const double> input) const;

 private:
  double kernel(double offset) const;

  double step_;
  double cutoff_;
  // (kTaps * kPhases + 1) samples over offsets [-kTaps/2, kTaps/2].
  std::vector<double> table_;
};

/// Reads the input `rate` times faster: output length floor(N / rate).
std::vector<double> resample_by_rate(std::span<const double> input,
                                     double rate);

}  // namespace childaug

#endif  // CHILDAUG_RESAMPLE_H_
