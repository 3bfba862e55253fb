#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gyblink/linkinv.hpp"
#include "gyblink/so_n2.hpp"

using namespace gyblink;
using namespace gyblink::linkinv;
using braid::BraidWord;
using numkit::Complex;
using numkit::ComplexMatrix;

namespace {

bool close(Complex a, Complex b, double tol) { return std::abs(a - b) < tol; }

}  // namespace

TEST_CASE("unknot, unlink and kinked unknot") {
  for (int N : {3, 5, 7}) {
    const auto s = so_egyb(N);
    CHECK(close(t_invariant(s, BraidWord(1)), 4.0, 1e-12));
    CHECK(close(t_invariant(s, BraidWord(2)), 8.0, 1e-12));
    CHECK(close(t_invariant(s, BraidWord(2, {1})), 4.0, 1e-12));
    CHECK(close(t_invariant(s, BraidWord(2, {-1})), 4.0, 1e-12));
    CHECK(close(normalized_invariant(s, BraidWord(1), Normalization::Remark54), 1.0, 1e-12));
    CHECK(close(normalized_invariant(s, BraidWord(1), Normalization::Section2), 2.0, 1e-12));
    CHECK(close(normalized_invariant(s, BraidWord(2), Normalization::Section2), 4.0, 1e-12));
  }
}

TEST_CASE("framed values of one-crossing closures") {
  for (int N = 5; N <= 13; N += 2) {
    const auto s = so_egyb(N);
    // trace of -R_{+1}(N): four copies of -C and four of iS
    const double c = std::cos(std::numbers::pi / N), sn = std::sin(std::numbers::pi / N);
    CHECK(close(framed_invariant(s, BraidWord(2, {1})), Complex(-4 * c, 4 * sn), 1e-12));
    CHECK(close(framed_invariant(s, BraidWord(2, {-1})), Complex(-4 * c, -4 * sn), 1e-12));
    CHECK(close(framed_invariant(s, BraidWord(2)), 8.0, 1e-12));
  }
}

TEST_CASE("framed invariant picks up alpha under stabilization") {
  const auto s = so_egyb(7);
  const BraidWord w(3, {1, -2, 1, 1});
  const Complex f = framed_invariant(s, w);
  CHECK(close(framed_invariant(s, braid::markov_stabilize(w, 1)), s.enh().alpha * f, 1e-10));
  CHECK(close(framed_invariant(s, braid::markov_stabilize(w, -1)), f / s.enh().alpha, 1e-10));
}

TEST_CASE("evaluate fills the record") {
  const auto s = so_egyb(5);
  const BraidWord w(2, {1, 1, 1});
  const auto r = evaluate(s, w, Normalization::Framed);
  CHECK(r.writhe == 3);
  CHECK(r.strand_count == 2);
  CHECK(close(r.value, numkit::cpow(s.enh().alpha, 3) * t_invariant(s, w), 1e-12));
  CHECK(parse_normalization("section2") == Normalization::Section2);
  CHECK_THROWS_AS(parse_normalization("other"), std::invalid_argument);
}

TEST_CASE("dense and structured traces agree") {
  for (int N : {3, 9}) {
    const auto s = so_egyb(N);
    for (int n = 2; n <= 8; ++n) {
      const auto w = braid::random_word(n, 12, 100 + n);
      const Complex d = markov_trace(s, w, TraceMethod::Dense);
      const Complex st = markov_trace(s, w, TraceMethod::Structured);
      CHECK(close(d, st, 1e-11));
    }
  }
}

TEST_CASE("structured trace honours a diagonal mu") {
  std::vector<Complex> diag(8);
  for (int i = 0; i < 8; ++i) diag[i] = std::polar(1.0, 0.3 * i * i);
  const core::GybOperator r(core::GybType{2, 3, 1}, ComplexMatrix::diagonal(diag));
  const std::vector<Complex> mu{1.0, 2.0};
  const core::EgybOperator s(r, {ComplexMatrix::diagonal(mu), 1.0, 1.0});
  for (int n = 2; n <= 6; ++n) {
    const auto w = braid::random_word(n, 9, 7 * n);
    CHECK(close(markov_trace(s, w, TraceMethod::Dense), markov_trace(s, w, TraceMethod::Structured),
                1e-10));
  }
  // empty word on n strands: tr(mu)^{n+1}
  CHECK(close(markov_trace(s, BraidWord(4), TraceMethod::Structured), 243.0, 1e-10));
}

TEST_CASE("multiplicativity") {
  const auto s = so_egyb(5);
  const auto uu = multiplicativity_check(s, BraidWord(1), BraidWord(1));
  CHECK(uu.passed);
  CHECK(close(uu.lhs, 8.0, 1e-12));
  CHECK(close(uu.factor, 0.5, 1e-12));
  CHECK(close(uu.remark54_factor, 2.0, 1e-12));
  CHECK(multiplicativity_check(s, BraidWord(2, {1, 1, 1}), BraidWord(1)).passed);
  const auto rw = multiplicativity_check(s, braid::random_word(3, 8, 9), BraidWord(2, {1, 1}));
  CHECK(rw.passed);
  CHECK(close(rw.factor, 0.5, 1e-10));
}

TEST_CASE("Markov invariance") {
  for (int N : {3, 5, 9}) {
    const auto s = so_egyb(N);
    const auto t = markov_invariance_test(s, BraidWord(2, {1, 1, 1}), 20, 1);
    CHECK(t.passed);
    CHECK(t.max_deviation < 1e-8);
    CHECK(markov_invariance_test(s, BraidWord(3, {1, -2, 1, -2}), 20, 2).passed);
  }
  const auto s = so_egyb(5);
  CHECK(close(t_invariant(s, braid::markov_stabilize(BraidWord(1), 1)), t_invariant(s, BraidWord(1)),
              1e-12));
  const BraidWord w(3, {1, 2, -1, 2});
  const BraidWord g(3, {2, -1});
  CHECK(close(t_invariant(s, braid::markov_conjugate(w, g)), t_invariant(s, w), 1e-11));
}

TEST_CASE("skein operator identity") {
  for (int N = 3; N <= 13; N += 2) {
    const auto s = so_egyb(N);
    const auto r = skein_operator_check(s, N, so_eta(N));
    CHECK(r.passed);
    CHECK(r.residual < 1e-11);
    CHECK(close(r.trace_e, 4.0, 1e-11));
    CHECK(r.kink_residual < 1e-11);
    CHECK(r.spectrum.size() == 3);
    CHECK_FALSE(skein_operator_check(s, N, -so_eta(N)).passed);
  }
  // eigenvalue check at N = 5: lambda - 1/lambda = 2i sin(pi/5) (1 - e) with e = 2, 0, 0
  const double t = std::numbers::pi / 5;
  const Complex k(0.0, 2.0 * std::sin(t));
  const Complex l1 = -std::polar(1.0, t), l2 = std::polar(1.0, t), l3 = -std::polar(1.0, -t);
  CHECK(close(l1 - 1.0 / l1, -k, 1e-15));
  CHECK(close(l2 - 1.0 / l2, k, 1e-15));
  CHECK(close(l3 - 1.0 / l3, k, 1e-15));
  const auto s5 = skein_operator_check(so_egyb(5), 5, 1);
  CHECK(close(s5.unit_eigenvalue, l1, 1e-13));
}

TEST_CASE("closed-diagram skein quadruples") {
  for (int N = 3; N <= 13; N += 2) {
    const auto q = skein_quadruple_check(so_egyb(N), N, so_eta(N));
    CHECK(q.passed);
    CHECK(q.max_residual < 1e-10);
  }
  const auto q5 = skein_quadruple_check(so_egyb(5), 5, 1);
  const double sn = std::sin(std::numbers::pi / 5);
  CHECK(close(q5.rows[0].plus - q5.rows[0].minus, Complex(0.0, 8.0 * sn), 1e-12));
  CHECK(close(q5.rows[0].zero, 8.0, 1e-12));
  CHECK(close(q5.rows[0].infinity, 4.0, 1e-12));
}
