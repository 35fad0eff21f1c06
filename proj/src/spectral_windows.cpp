#include "wqpe/spectral_windows.hpp"

#include <cmath>

#include "wqpe/errors.hpp"

namespace wqpe {

namespace {

// Denominator arguments closer than this to an integer switch to the limit form.
constexpr double kSingularTol = 1e-8;

void check_filter_m(int m) {
  if (m < 1 || m > 30) throw RangeError("filter: m must lie in [1, 30], got " + std::to_string(m));
}

Complex cispi(double x) { return {detail::cospi(x), detail::sinpi(x)}; }

}  // namespace

namespace detail {

double sinpi(double x) {
  if (!std::isfinite(x)) return std::nan("");
  double r = x - 2.0 * std::nearbyint(0.5 * x);  // [-1, 1], exact
  if (r > 0.5) {
    r = 1.0 - r;
  } else if (r < -0.5) {
    r = -1.0 - r;
  }
  return std::sin(kPi * r);
}

double cospi(double x) {
  if (!std::isfinite(x)) return std::nan("");
  const double r = std::abs(x - 2.0 * std::nearbyint(0.5 * x));  // [0, 1]
  if (r < 0.25) return std::cos(kPi * r);
  return sinpi(0.5 - r);
}

double dirichlet(double x, double dim) {
  const double scaled = x / dim;
  const double j = std::nearbyint(scaled);
  if (std::abs(scaled - j) < kSingularTol) {
    // x = dim * j + eps: sin(pi x) = sin(pi eps) since dim * j is even, and
    // sin(pi x / dim) = (-1)^j sin(pi eps / dim).
    const double eps = x - dim * j;
    const double sign = std::fmod(std::abs(j), 2.0) == 1.0 ? -1.0 : 1.0;
    if (eps == 0.0) return sign;
    return sign * sinpi(eps) / (dim * sinpi(eps / dim));
  }
  return sinpi(x) / (dim * sinpi(scaled));
}

}  // namespace detail

using detail::cospi;
using detail::dirichlet;
using detail::sinpi;

std::string_view to_string(WindowKind kind) {
  return kind == WindowKind::Rectangular ? "rect" : "cos";
}

WindowKind parse_window_kind(std::string_view text) {
  if (text == "rect" || text == "rectangular") return WindowKind::Rectangular;
  if (text == "cos" || text == "cosine") return WindowKind::Cosine;
  throw RangeError("unknown window kind '" + std::string(text) + "'");
}

void WindowSpec::validate() const {
  if (m < 1 || m > 14) throw RangeError("WindowSpec: m must lie in [1, 14], got " + std::to_string(m));
}

CenteredSeries window_amplitudes(const WindowSpec& spec) {
  spec.validate();
  const std::size_t dim = std::size_t{1} << spec.m;
  const double dim_d = static_cast<double>(dim);
  const double norm = 1.0 / std::sqrt(dim_d);
  CenteredSeries out{spec.m, std::vector<Complex>(dim)};
  for (std::size_t i = 0; i < dim; ++i) {
    if (spec.kind == WindowKind::Rectangular) {
      out.values[i] = norm;
    } else {
      const double x = static_cast<double>(out.label(i));
      out.values[i] = std::sqrt(2.0) * cospi(x / dim_d) * norm;
    }
  }
  return out;
}

Complex filter_rect(double q, int m) {
  check_filter_m(m);
  const double dim = std::ldexp(1.0, m);
  return cispi(q / dim) * dirichlet(q, dim);
}

Complex filter_cosine(double q, int m) {
  check_filter_m(m);
  const double dim = std::ldexp(1.0, m);
  const double s = sinpi(1.0 / dim) / std::sqrt(2.0);
  const double below = sinpi((q - 0.5) / dim);
  const double above = sinpi((q + 0.5) / dim);
  // Put whichever denominator is nearer zero inside the Dirichlet ratio.
  if (std::abs(above) >= std::abs(below)) return s * dirichlet(q - 0.5, dim) / above;
  return -s * dirichlet(q + 0.5, dim) / below;
}

Complex filter_cosine_plus(double q, int m) {
  check_filter_m(m);
  if (m == 1) {
    return (filter_cosine(q - 0.5, m) + filter_cosine(q + 0.5, m)) / std::sqrt(2.0);
  }
  const double dim = std::ldexp(1.0, m);
  const double s = sinpi(1.0 / dim);
  const double c = s * s * cospi(q / dim);
  const double centre = sinpi(q / dim);
  const double left = sinpi((1.0 - q) / dim);
  const double right = sinpi((1.0 + q) / dim);
  const double a0 = std::abs(centre);
  const double a1 = std::abs(left);
  const double a2 = std::abs(right);
  if (a0 <= a1 && a0 <= a2) return c * dirichlet(q, dim) / (left * right);
  if (a1 <= a2) return c * dirichlet(q - 1.0, dim) / (centre * right);
  return -c * dirichlet(q + 1.0, dim) / (centre * left);
}

Complex measurement_filter(WindowKind kind, double q, int m) {
  return kind == WindowKind::Rectangular ? filter_rect(q, m) : filter_cosine(q, m);
}

Complex projection_filter(WindowKind kind, double q, int m) {
  return kind == WindowKind::Rectangular ? filter_rect(q, m) : filter_cosine_plus(q, m);
}

double bound_rect_tail(double q, int m) {
  check_filter_m(m);
  const double half = std::ldexp(1.0, m - 1);
  if (q == 0.0 || std::abs(q) > half) {
    throw RangeError("bound_rect_tail: requires 0 < |q| <= 2^{m-1}");
  }
  return 1.0 / (2.0 * std::abs(q));
}

double bound_cosine_plus_tail(double q) {
  const double a = std::abs(q);
  if (a == 0.0 || a == 1.0) throw RangeError("bound_cosine_plus_tail: q must not be 0 or +-1");
  return kPi * kPi / (8.0 * a * std::abs(a - 1.0) * (a + 1.0));
}

}  // namespace wqpe
