// childaug/spectrum.h

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

#ifndef CHILDAUG_SPECTRUM_H_
#define CHILDAUG_SPECTRUM_H_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace childaug {

std::size_t next_pow2(std::size_t n);

/// Zero-padded real FFT; returns bins 0..nfft/2.
std::vector<std::complex<double>> rfft(std::span<const double> x,
                                       std::size_t nfft);

/// Inverse of rfft for an nfft-point transform.
std::vector<double> irfft(std::span<const std::complex<double>> half_spectrum,
                          std::size_t nfft);

/// Linear convolution via FFT, full length a.size() + b.size() - 1.
std::vector<double> fft_convolve(std::span<const double> a,
                                 std::span<const double> b);

/// 20*log10 |gain / A(e^{jw})| on n_points uniformly spaced w in [0, pi],
/// with A(z) = 1 - sum_k a_k z^-k.
std::vector<double> lpc_spectrum_db(std::span<const double> coeffs,
                                    double gain, std::size_t n_points);

}  // namespace childaug

#endif  // CHILDAUG_SPECTRUM_H_
