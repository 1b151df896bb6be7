// roots.cc

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

// Polynomial root finding for predictor polynomials and the inverse
// expansion. Roots are found with the Aberth-Ehrlich simultaneous iteration,
// which converges cubically for simple roots from a deterministic circle of
// starting points, then each root is Newton-polished individually.

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "childaug/error.h"
#include "childaug/lpc.h"
#include "childaug/log.h"

namespace childaug {

namespace {

using cd = std::complex<double>;

// Evaluates the monic polynomial z^n + c_1 z^{n-1} + ... + c_n and its
// derivative by Horner's rule.
void horner(std::span<const double> tail, cd z, cd *value, cd *deriv) {
  cd p(1.0, 0.0), dp(0.0, 0.0);
  for (double c : tail) {
    dp = dp * z + p;
    p = p * z + c;
  }
  *value = p;
  *deriv = dp;
}

// Extended-precision Horner for the final polish, so high orders keep
// their accuracy when the coefficients are large.
void horner_ext(std::span<const double> tail, std::complex<long double> z,
                std::complex<long double> *value,
                std::complex<long double> *deriv) {
  std::complex<long double> p(1.0L, 0.0L), dp(0.0L, 0.0L);
  for (double c : tail) {
    dp = dp * z + p;
    p = p * z + static_cast<long double>(c);
  }
  *value = p;
  *deriv = dp;
}

// Rounding-error scale of a Horner evaluation at |z|.
double horner_bound(std::span<const double> tail, double absz) {
  double b = 1.0;
  for (double c : tail) b = b * absz + std::abs(c);
  return b;
}

std::string describe(std::span<const double> tail) {
  std::ostringstream os;
  os.precision(17);
  os << "z^" << tail.size();
  for (std::size_t k = 0; k < tail.size(); ++k)
    os << " + (" << tail[k] << ")z^" << tail.size() - 1 - k;
  return os.str();
}

}  // namespace

std::complex<double> predictor_polynomial(std::span<const double> coeffs,
                                          std::complex<double> z) {
  // A(z) = 1 - sum a_k z^-k, evaluated in powers of w = 1/z.
  const cd w = 1.0 / z;
  cd acc(0.0, 0.0);
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = (acc - coeffs[k]) * w;
  return 1.0 + acc;
}

std::vector<std::complex<double>> polynomial_roots(
    std::span<const double> tail, const RootOptions &opts) {
  const std::size_t n = tail.size();
  std::vector<cd> z(n);
  if (n == 0) return z;
  for (double c : tail)
    if (!std::isfinite(c)) throw NumericError("non-finite polynomial coefficient");
  if (n == 1) {
    z[0] = cd(-tail[0], 0.0);
    return z;
  }

  // Starting circle: centered on the root centroid with a radius from the
  // Fujiwara-style bound; the angular offset avoids symmetric stalls on the
  // real axis.
  const double center = -tail[0] / static_cast<double>(n);
  double radius = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    radius = std::max(radius, std::pow(std::abs(tail[k]), 1.0 / (k + 1)));
  radius = std::max(radius, 1e-3);
  for (std::size_t j = 0; j < n; ++j)
    z[j] = cd(center, 0.0) +
           std::polar(radius, 2.0 * M_PI * static_cast<double>(j) / n + 0.4);

  std::vector<bool> done(n, false);
  int iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    bool all_done = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (done[j]) continue;
      cd p, dp;
      horner(tail, z[j], &p, &dp);
      if (std::abs(p) <= std::numeric_limits<double>::epsilon() *
                             horner_bound(tail, std::abs(z[j]))) {
        done[j] = true;
        continue;
      }
      const cd ratio = p / dp;
      cd sum(0.0, 0.0);
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) sum += 1.0 / (z[j] - z[k]);
      const cd step = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
        // Coincident estimates; nudge and retry next sweep.
        z[j] += cd(1e-8, 1e-8) * (1.0 + std::abs(z[j]));
        all_done = false;
        continue;
      }
      z[j] -= step;
      if (std::abs(step) <= opts.tolerance * (1.0 + std::abs(z[j])))
        done[j] = true;
      else
        all_done = false;
    }
    if (all_done) break;
  }

  // Newton polish in extended precision; keep a step only if it reduces
  // the residual.
  using ce = std::complex<long double>;
  for (std::size_t j = 0; j < n; ++j) {
    ce zj(z[j].real(), z[j].imag());
    for (int it = 0; it < 6; ++it) {
      ce p, dp;
      horner_ext(tail, zj, &p, &dp);
      if (std::abs(dp) == 0.0L) break;
      const ce cand = zj - p / dp;
      ce pc, dpc;
      horner_ext(tail, cand, &pc, &dpc);
      if (std::abs(pc) < std::abs(p))
        zj = cand;
      else
        break;
    }
    z[j] = cd(static_cast<double>(zj.real()), static_cast<double>(zj.imag()));
  }

  if (iter == opts.max_iterations) {
    // Multiple roots converge only linearly; accept them if the residual is
    // at rounding level, otherwise report the polynomial.
    for (std::size_t j = 0; j < n; ++j) {
      cd p, dp;
      horner(tail, z[j], &p, &dp);
      const double bound = horner_bound(tail, std::abs(z[j]));
      if (std::abs(p) > 1e-9 * bound) {
        log_message(LogLevel::kError,
                    "root finding failed for " + describe(tail));
        throw ConvergenceError("Aberth iteration did not converge in " +
                               std::to_string(opts.max_iterations) +
                               " iterations for " + describe(tail));
      }
    }
  }
  return z;
}

PoleSet find_roots(const LpcModel &model, const RootOptions &opts) {
  if (model.order() < 1) throw DomainError("find_roots: order must be >= 1");
  std::vector<double> tail(model.coeffs.size());
  for (std::size_t k = 0; k < tail.size(); ++k) tail[k] = -model.coeffs[k];
  std::vector<cd> roots = polynomial_roots(tail, opts);

  PoleSet out;
  std::vector<cd> upper, lower;
  for (const cd &z : roots) {
    const double tol = opts.real_tolerance * (1.0 + std::abs(z));
    if (std::abs(z.imag()) <= tol)
      out.real_poles.push_back(z.real());
    else if (z.imag() > 0)
      upper.push_back(z);
    else
      lower.push_back(z);
  }
  // Match each upper-half root with the nearest conjugate of a lower-half
  // one; the pair is stored as the symmetrized representative.
  std::vector<bool> used(lower.size(), false);
  std::vector<cd> unmatched;
  for (const cd &u : upper) {
    std::size_t best = lower.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < lower.size(); ++i) {
      if (used[i]) continue;
      const double d = std::abs(u - std::conj(lower[i]));
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    if (best == lower.size() || best_d > 1e-6 * (1.0 + std::abs(u))) {
      unmatched.push_back(u);
      continue;
    }
    used[best] = true;
    out.conjugate_pairs.push_back(0.5 * (u + std::conj(lower[best])));
  }
  for (std::size_t i = 0; i < lower.size(); ++i)
    if (!used[i]) unmatched.push_back(lower[i]);
  // Leftovers come from near-multiple real roots that split off the axis.
  for (const cd &z : unmatched) {
    if (std::abs(z.imag()) > 1e-4 * (1.0 + std::abs(z)))
      throw ConvergenceError("unpaired complex root for " + describe(tail));
    out.real_poles.push_back(z.real());
  }
  std::sort(out.conjugate_pairs.begin(), out.conjugate_pairs.end(),
            [](const cd &a, const cd &b) { return std::arg(a) < std::arg(b); });
  std::sort(out.real_poles.begin(), out.real_poles.end());
  return out;
}

std::vector<double> coeffs_from_roots(
    std::span<const std::complex<double>> roots) {
  // Conjugate closure: every complex root must have a partner.
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    const cd &z = roots[i];
    const double tol = 1e-10 * (1.0 + std::abs(z));
    if (std::abs(z.imag()) <= tol) {
      used[i] = true;
      continue;
    }
    bool found = false;
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (!used[j] && std::abs(roots[j] - std::conj(z)) <= 1e-9 * (1.0 + std::abs(z))) {
        used[j] = found = true;
        break;
      }
    }
    if (!found)
      throw SymmetryError("root set is not closed under conjugation");
    used[i] = true;
  }

  // prod (z - r) in complex arithmetic; poly[0] is the leading 1.
  std::vector<cd> poly{cd(1.0, 0.0)};
  for (const cd &r : roots) {
    poly.emplace_back(0.0, 0.0);
    for (std::size_t k = poly.size() - 1; k > 0; --k) poly[k] -= r * poly[k - 1];
  }
  std::vector<double> a(roots.size());
  for (std::size_t k = 1; k < poly.size(); ++k) {
    const double scale = 1.0 + std::abs(poly[k].real());
    if (std::abs(poly[k].imag()) > 1e-10 * scale)
      throw SymmetryError("expanded polynomial has an imaginary residue");
    a[k - 1] = -poly[k].real();
  }
  return a;
}

LpcModel poly_from_roots(const PoleSet &poles, double sample_period_s) {
  for (const cd &z : poles.conjugate_pairs)
    if (!(z.imag() > 0.0))
      throw SymmetryError("conjugate pair representative must have positive imaginary part");
  LpcModel m;
  m.sample_period_s = sample_period_s;
  // Real quadratics per pair keep the expansion exactly real; products are
  // accumulated in extended precision.
  std::vector<long double> poly{1.0L};
  auto multiply = [&poly](std::span<const long double> factor) {
    std::vector<long double> next(poly.size() + factor.size() - 1, 0.0L);
    for (std::size_t i = 0; i < poly.size(); ++i)
      for (std::size_t j = 0; j < factor.size(); ++j)
        next[i + j] += poly[i] * factor[j];
    poly = std::move(next);
  };
  for (const cd &z : poles.conjugate_pairs) {
    const long double re = z.real(), im = z.imag();
    const long double quad[3] = {1.0L, -2.0L * re, re * re + im * im};
    multiply(quad);
  }
  for (double x : poles.real_poles) {
    const long double lin[2] = {1.0L, -static_cast<long double>(x)};
    multiply(lin);
  }
  m.coeffs.resize(poly.size() - 1);
  for (std::size_t k = 1; k < poly.size(); ++k)
    m.coeffs[k - 1] = static_cast<double>(-poly[k]);
  return m;
}

}  // namespace childaug
