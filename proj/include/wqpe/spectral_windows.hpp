#pragma once

// Time-domain windows on an m-qubit ancilla register and their spectral
// filters, evaluated as continuous functions of the real offset q (in units
// of 1/2^m of a full phase turn).
//
//   G(q)  rectangular window:  e^{i pi q/2^m} sin(pi q) / (2^m sin(pi q/2^m))
//   F(q)  cosine window:       (G(q - 1/2) + G(q + 1/2)) / sqrt(2)   (real)
//   F+(q) binned cosine:       (F(q - 1/2) + F(q + 1/2)) / sqrt(2)   (real)
//
// All three are evaluated through product forms that avoid cancellation in the
// tails; removable singularities fall back to their analytic limits.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wqpe/statevector.hpp"

namespace wqpe {

enum class WindowKind { Rectangular, Cosine };

std::string_view to_string(WindowKind kind);
// Accepts "rect"/"rectangular" and "cos"/"cosine".
WindowKind parse_window_kind(std::string_view text);

struct WindowSpec {
  int m = 1;
  WindowKind kind = WindowKind::Rectangular;

  // Throws RangeError unless 1 <= m <= 14.
  void validate() const;
};

// Values indexed by the centered label, ascending: element i has label
// i - 2^{m-1}.
struct CenteredSeries {
  int m = 1;
  std::vector<Complex> values;

  std::int64_t label(std::size_t i) const { return static_cast<std::int64_t>(i) - (std::int64_t{1} << (m - 1)); }
  Complex at(std::int64_t label) const {
    return values.at(static_cast<std::size_t>(label + (std::int64_t{1} << (m - 1))));
  }
};

// Window amplitudes over x in [-2^{m-1}, 2^{m-1} - 1]:
// rectangular 1/sqrt(2^m), cosine sqrt(2) cos(pi x / 2^m) / sqrt(2^m).
CenteredSeries window_amplitudes(const WindowSpec& spec);

// Filters accept 1 <= m <= 30.
Complex filter_rect(double q, int m);
Complex filter_cosine(double q, int m);
Complex filter_cosine_plus(double q, int m);

// Outcome-amplitude filter of windowed phase estimation (G or F).
Complex measurement_filter(WindowKind kind, double q, int m);
// Post-selected projection filter used for state preparation (G or F+).
Complex projection_filter(WindowKind kind, double q, int m);

// Dirichlet bound 1/(2|q|) >= |G(q)|, for 0 < |q| <= 2^{m-1}.
double bound_rect_tail(double q, int m);
// pi^2 / (8 |q| |q-1| |q+1|) >= |F+(q)|, for |q| not in {0, 1}.
double bound_cosine_plus_tail(double q);

namespace detail {
// sin(pi x) and cos(pi x) with exact argument reduction.
double sinpi(double x);
double cospi(double x);
// sin(pi x) / (dim sin(pi x / dim)), with the limit at x = 0 (mod dim).
double dirichlet(double x, double dim);
}  // namespace detail

}  // namespace wqpe
