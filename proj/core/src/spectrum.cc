// spectrum.cc

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

#include "childaug/spectrum.h"

#include <cmath>

#include <unsupported/Eigen/FFT>

#include "childaug/error.h"

namespace childaug {

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::vector<std::complex<double>> rfft(std::span<const double> x,
                                       std::size_t nfft) {
  if (nfft < x.size()) throw ShapeError("rfft: nfft shorter than input");
  std::vector<double> buf(nfft, 0.0);
  std::copy(x.begin(), x.end(), buf.begin());
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  std::vector<std::complex<double>> out;
  fft.fwd(out, buf);
  out.resize(nfft / 2 + 1);
  return out;
}

std::vector<double> irfft(std::span<const std::complex<double>> half_spectrum,
                          std::size_t nfft) {
  if (half_spectrum.size() != nfft / 2 + 1)
    throw ShapeError("irfft: spectrum size does not match nfft");
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  std::vector<std::complex<double>> in(half_spectrum.begin(),
                                       half_spectrum.end());
  std::vector<double> out;
  fft.inv(out, in, static_cast<Eigen::Index>(nfft));
  return out;
}

std::vector<double> fft_convolve(std::span<const double> a,
                                 std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t n = a.size() + b.size() - 1;
  const std::size_t nfft = next_pow2(n);
  std::vector<std::complex<double>> fa = rfft(a, nfft);
  const std::vector<std::complex<double>> fb = rfft(b, nfft);
  for (std::size_t i = 0; i < fa.size(); ++i) fa[i] *= fb[i];
  std::vector<double> y = irfft(fa, nfft);
  y.resize(n);
  return y;
}

std::vector<double> lpc_spectrum_db(std::span<const double> coeffs,
                                    double gain, std::size_t n_points) {
  std::vector<double> out(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double w =
        n_points > 1 ? M_PI * static_cast<double>(i) / (n_points - 1) : 0.0;
    std::complex<double> a(1.0, 0.0);
    for (std::size_t k = 0; k < coeffs.size(); ++k)
      a -= coeffs[k] * std::polar(1.0, -w * static_cast<double>(k + 1));
    const double mag = std::abs(gain) / std::max(std::abs(a), 1e-300);
    out[i] = 20.0 * std::log10(std::max(mag, 1e-300));
  }
  return out;
}

}  // namespace childaug
