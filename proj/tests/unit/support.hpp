#pragma once

// Seeded generators for property tests and brute-force reference
// implementations that share no code with the library.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "wqpe/spectral_windows.hpp"
#include "wqpe/statevector.hpp"

namespace testing {

using wqpe::CMatrix;
using wqpe::Complex;
using wqpe::CVector;
using wqpe::RVector;

using LComplex = std::complex<long double>;
inline constexpr long double kPiL = 3.141592653589793238462643383279502884L;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }
  Complex cnormal() { return {normal(), normal()}; }

  CVector state(Eigen::Index dim) {
    CVector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = cnormal();
    return v / v.norm();
  }

  CMatrix hermitian(Eigen::Index dim) {
    CMatrix a(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
      for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = cnormal();
    return (a + a.adjoint()) / 2.0;
  }

  // Haar-ish unitary from the QR factor of a Gaussian matrix.
  CMatrix unitary(Eigen::Index dim) {
    CMatrix a(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
      for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = cnormal();
    Eigen::HouseholderQR<CMatrix> qr(a);
    return qr.householderQ() * CMatrix::Identity(dim, dim);
  }

 private:
  std::mt19937_64 rng_;
};

// Runs `body(gen, case)` for `cases` cases drawn from a single seeded stream.
template <class Body>
void for_all(int cases, std::uint64_t seed, Body body) {
  Gen gen(seed);
  for (int c = 0; c < cases; ++c) body(gen, c);
}

// (1/sqrt(M)) sum_x w(x) e^{-2 pi i x q / M} over x in [-M/2, M/2).
inline LComplex dft_window(wqpe::WindowKind kind, long double q, int m) {
  const long long dim = 1LL << m;
  const long double norm = 1.0L / std::sqrt(static_cast<long double>(dim));
  LComplex sum = 0;
  for (long long x = -dim / 2; x < dim / 2; ++x) {
    long double w = norm;
    if (kind == wqpe::WindowKind::Cosine) w *= std::sqrt(2.0L) * std::cos(kPiL * x / dim);
    const long double angle = -2.0L * kPiL * x * q / dim;
    sum += w * LComplex(std::cos(angle), std::sin(angle));
  }
  return sum * norm;
}

inline LComplex dft_cosine_plus(long double q, int m) {
  return (dft_window(wqpe::WindowKind::Cosine, q - 0.5L, m) + dft_window(wqpe::WindowKind::Cosine, q + 0.5L, m)) /
         std::sqrt(2.0L);
}

// Amplitude of outcome q for an eigenphase theta (turns), by direct summation
// over the ancilla basis states.
inline long double qpe_probability(wqpe::WindowKind kind, long double theta, long long q, int m) {
  const long long dim = 1LL << m;
  LComplex sum = 0;
  for (long long x = -dim / 2; x < dim / 2; ++x) {
    long double w = 1.0L / std::sqrt(static_cast<long double>(dim));
    if (kind == wqpe::WindowKind::Cosine) w *= std::sqrt(2.0L) * std::cos(kPiL * x / dim);
    const long double angle = 2.0L * kPiL * x * (theta - static_cast<long double>(q) / dim);
    sum += w * LComplex(std::cos(angle), std::sin(angle));
  }
  return std::norm(sum) / dim;
}

// Textbook DFT on centered labels with the requested sign.
inline CMatrix centered_dft(int m, int sign) {
  const long long dim = 1LL << m;
  CMatrix f(dim, dim);
  for (long long r = 0; r < dim; ++r) {
    const long long q = r < dim / 2 ? r : r - dim;
    for (long long c = 0; c < dim; ++c) {
      const long long x = c < dim / 2 ? c : c - dim;
      const long double angle = sign * 2.0L * kPiL * static_cast<long double>(x * q) / dim;
      f(r, c) = Complex(static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))) /
                std::sqrt(static_cast<double>(dim));
    }
  }
  return f;
}

// Ordinary least squares of y on x; returns slope and R^2.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (f.intercept + f.slope * x[i]);
    ss_res += e * e;
  }
  f.r2 = 1.0 - ss_res / syy;
  return f;
}

}  // namespace testing
