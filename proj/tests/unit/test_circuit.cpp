#include <doctest.h>

#include "support.hpp"
#include "wqpe/circuit.hpp"
#include "wqpe/errors.hpp"

using namespace wqpe;
using testing::for_all;
using testing::Gen;

namespace {

// Product state (1/sqrt M) prod_j (|0> + e^{i phi_j} |1>) on the ancilla, built
// directly from the bit pattern of each index.
CVector product_state(const std::vector<double>& phis) {
  const int m = static_cast<int>(phis.size());
  CVector v(Eigen::Index{1} << m);
  for (Eigen::Index y = 0; y < v.size(); ++y) {
    double angle = 0.0;
    for (int j = 0; j < m; ++j)
      if ((y >> j) & 1) angle += phis[static_cast<std::size_t>(j)];
    v[y] = std::polar(1.0 / std::sqrt(static_cast<double>(v.size())), angle);
  }
  return v;
}

}  // namespace

TEST_SUITE("circuit") {

TEST_CASE("property: gate-level QFT equals the centered DFT matrix") {
  for_all(12, 21, [](Gen& g, int) {
    const int m = g.integer(1, 6);
    std::vector<double> phis(static_cast<std::size_t>(m));
    Register reg(QuantumState(0), m);
    for (int j = 0; j < m; ++j) {
      phis[static_cast<std::size_t>(j)] = g.uniform(-3.0, 3.0);
      reg.hadamard(j);
      reg.phase(j, phis[static_cast<std::size_t>(j)]);
    }
    const CVector before = product_state(phis);
    CHECK((reg.amplitudes() - before).norm() < 1e-12);
    const bool inverse = g.integer(0, 1) == 1;
    reg.ancilla_qft(inverse);
    const CVector expect = testing::centered_dft(m, inverse ? +1 : -1) * before;
    CHECK((reg.amplitudes() - expect).norm() < 1e-11);
  });
}

TEST_CASE("controlled phase only touches |11>") {
  Register reg(QuantumState(0), 2);
  reg.hadamard(0);
  reg.hadamard(1);
  reg.controlled_phase(0, 1, 0.9);
  CHECK(std::abs(reg.amplitudes()[3] - std::polar(0.5, 0.9)) < 1e-15);
  CHECK(std::abs(reg.amplitudes()[1] - Complex(0.5, 0.0)) < 1e-15);
}

TEST_CASE("swap exchanges ancilla qubits") {
  Register reg(QuantumState(0), 3);
  reg.hadamard(0);
  reg.phase(0, 1.0);
  reg.swap(0, 2);
  CHECK(std::abs(reg.amplitudes()[4]) == doctest::Approx(std::sqrt(0.5)));
  CHECK(std::abs(reg.amplitudes()[1]) == doctest::Approx(0.0));
}

TEST_CASE("property: repeated and precomputed controlled powers agree") {
  for_all(8, 22, [](Gen& g, int) {
    const int n = g.integer(1, 3);
    const Eigen::Index dim = Eigen::Index{1} << n;
    const CMatrix u = g.unitary(dim);
    const QuantumState sys = QuantumState::from_amplitudes(g.state(dim));
    const int k = g.integer(1, 6);
    CMatrix uk = CMatrix::Identity(dim, dim);
    for (int i = 0; i < k; ++i) uk = u * uk;

    Register a(sys, 2), b(sys, 2);
    for (Register* r : {&a, &b}) {
      r->hadamard(0);
      r->hadamard(1);
    }
    a.controlled_repeat(1, u, k);
    b.controlled_apply(1, uk);
    CHECK((a.amplitudes() - b.amplitudes()).norm() < 1e-12);
    // Control 0 branch keeps the input system state.
    double pr = 0.0;
    const QuantumState untouched = a.postselect(0, pr);
    CHECK(pr == doctest::Approx(0.25));
    CHECK(phase_aligned_distance(untouched, sys) < 1e-12);
  });
}

TEST_CASE("marginal sums to one and postselection renormalizes") {
  Gen g(23);
  Register reg(QuantumState::from_amplitudes(g.state(4)), 3);
  for (int j = 0; j < 3; ++j) reg.hadamard(j);
  reg.controlled_repeat(2, g.unitary(4), 1);
  reg.ancilla_qft(false);
  const RVector marginal = reg.ancilla_marginal();
  CHECK(marginal.sum() == doctest::Approx(1.0).epsilon(1e-14));
  double pr = 0.0;
  const QuantumState s = reg.postselect(5, pr);
  CHECK(pr == doctest::Approx(marginal[5]));
  CHECK(s.norm() == doctest::Approx(1.0));
}

TEST_CASE("range and dimension errors") {
  Register reg(QuantumState(1), 2);
  CHECK_THROWS_AS(reg.hadamard(2), RangeError);
  CHECK_THROWS_AS(reg.controlled_repeat(0, CMatrix::Identity(4, 4), 1), DimensionError);
  double pr = 0.0;
  CHECK_THROWS_AS(reg.postselect(4, pr), RangeError);
  CHECK_THROWS_AS(reg.postselect(1, pr), FilteredToNothingError);
}

}
