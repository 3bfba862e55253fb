#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "gyblink/linkinv.hpp"
#include "gyblink/skein_oracle.hpp"

using namespace gyblink;
using namespace gyblink::skein;
using braid::BraidWord;
using numkit::Complex;

namespace {

const DubrovnikParams generic{Complex(0.7, 0.4), Complex(-0.3, 1.1)};

bool close(Complex a, Complex b, double tol) { return std::abs(a - b) < tol; }

// closure of sigma_1^k: P_k = P_{k-2} + z (P_{k-1} - a^{-(k-1)}), P_0 = delta, P_1 = a
Complex two_braid(int k, const DubrovnikParams& p) {
  Complex prev = p.delta(), cur = p.a;
  if (k == 0) return prev;
  for (int j = 2; j <= k; ++j) {
    const Complex next = prev + p.z * (cur - numkit::cpow(p.a, -(j - 1)));
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

TEST_CASE("PD codes from braids") {
  const auto e = pd_from_braid(BraidWord(2));
  CHECK(e.crossing_count() == 0);
  CHECK(e.free_loops == 2);
  const auto t = pd_from_braid(BraidWord(2, {1, 1, 1}));
  CHECK(t.crossing_count() == 3);
  CHECK(component_count(t) == 1);
  const auto f = pd_from_braid(BraidWord(3, {1, -2, 1, -2}));
  CHECK(f.crossing_count() == 4);
  CHECK(component_count(f) == 1);
  CHECK(oriented_writhe(f) == 0);
  CHECK(component_count(pd_from_braid(BraidWord(4, {1, 1}))) == 4);
  CHECK_NOTHROW(validate(f));
}

TEST_CASE("diagram validation") {
  PlanarLinkDiagram virt;
  virt.crossings.push_back({{0, 1, 0, 1}, true});
  CHECK_THROWS_AS(validate_unoriented(virt), DiagramError);
  PlanarLinkDiagram thrice;
  thrice.crossings.push_back({{0, 0, 0, 1}, true});
  CHECK_THROWS_AS(validate_unoriented(thrice), DiagramError);
  PlanarLinkDiagram misoriented;
  misoriented.crossings.push_back({{0, 0, 1, 1}, true});
  CHECK_NOTHROW(validate_unoriented(misoriented));
  CHECK_THROWS_AS(validate(misoriented), DiagramError);
}

TEST_CASE("normalization and unlinks") {
  CHECK(close(dubrovnik(pd_from_braid(BraidWord(1)), generic), 1.0, 1e-14));
  const Complex delta = (generic.a - 1.0 / generic.a) / generic.z + 1.0;
  CHECK(close(dubrovnik(pd_from_braid(BraidWord(2)), generic), delta, 1e-14));
  CHECK(close(dubrovnik(pd_from_braid(BraidWord(3)), generic), delta * delta, 1e-14));
  // a kinked unknot is still the unknot after the writhe correction
  CHECK(close(dubrovnik(pd_from_braid(BraidWord(2, {1})), generic), 1.0, 1e-13));
  CHECK(close(dubrovnik_regular(pd_from_braid(BraidWord(2, {-1})), generic), 1.0 / generic.a, 1e-13));
}

TEST_CASE("trefoil and Hopf link against the two-braid recursion") {
  const auto p = generic;
  const Complex a = p.a, z = p.z, ai = 1.0 / p.a;
  const Complex delta = p.delta();
  const Complex p2 = delta + z * (a - ai);
  const Complex p3 = a + z * (p2 - ai * ai);
  CHECK(close(two_braid(3, p), p3, 1e-14));
  CHECK(close(dubrovnik(pd_from_braid(BraidWord(2, {1, 1, 1})), p), ai * ai * ai * p3, 1e-12));
  CHECK(close(dubrovnik(pd_from_braid(BraidWord(2, {1, 1})), p), ai * ai * p2, 1e-12));
  for (int k = 1; k <= 7; ++k) {
    std::vector<int> letters(static_cast<std::size_t>(k), 1);
    CHECK(close(dubrovnik_regular(pd_from_braid(BraidWord(2, letters)), p), two_braid(k, p), 1e-10));
  }
}

TEST_CASE("braid relations and Markov moves leave the value unchanged") {
  const Complex lhs = dubrovnik(pd_from_braid(BraidWord(3, {1, 2, 1, 1})), generic);
  const Complex rhs = dubrovnik(pd_from_braid(BraidWord(3, {2, 1, 2, 1})), generic);
  CHECK(close(lhs, rhs, 1e-11));
  const BraidWord w(3, {1, -2, 1, -2});
  const Complex f = dubrovnik(pd_from_braid(w), generic);
  CHECK(close(dubrovnik(pd_from_braid(braid::markov_conjugate(w, BraidWord(3, {2, 1}))), generic), f,
              1e-10));
  CHECK(close(dubrovnik(pd_from_braid(braid::markov_stabilize(w, -1)), generic), f, 1e-10));
}

TEST_CASE("selection rules agree") {
  const OracleOptions fwd{10, Selection::Forward};
  const OracleOptions rev{10, Selection::Reverse};
  const auto cat = braid::builtin_catalog();
  for (const auto& e : cat.entries()) {
    const auto d = pd_from_braid(e.word);
    CHECK(close(dubrovnik(d, generic, fwd), dubrovnik(d, generic, rev), 1e-11));
  }
  const auto big = pd_from_braid(BraidWord(4, {1, -2, 3, 1, -2, 3, 2, -1}));
  CHECK(close(dubrovnik(big, generic, fwd), dubrovnik(big, generic, rev), 1e-10));
}

TEST_CASE("mirror and disjoint union") {
  const DubrovnikParams flipped{1.0 / generic.a, -generic.z};
  const auto cat = braid::builtin_catalog();
  for (const auto& e : cat.entries()) {
    const auto d = pd_from_braid(e.word);
    CHECK(close(dubrovnik(mirror(d), generic), dubrovnik(d, flipped), 1e-11));
  }
  const auto t = pd_from_braid(BraidWord(2, {1, 1, 1}));
  const auto h = pd_from_braid(BraidWord(2, {1, 1}));
  CHECK(close(dubrovnik(disjoint_union(t, h), generic),
              generic.delta() * dubrovnik(t, generic) * dubrovnik(h, generic), 1e-10));
}

TEST_CASE("crossing bound") {
  const BraidWord w(2, std::vector<int>(11, 1));
  CHECK_THROWS_AS(dubrovnik(pd_from_braid(w), generic), CrossingBoundError);
  CHECK_NOTHROW(dubrovnik(pd_from_braid(w), generic, OracleOptions{12, Selection::Forward}));
}

TEST_CASE("PD text format") {
  const auto d = pd_from_braid(BraidWord(3, {1, -2, 1}));
  std::stringstream ss;
  write_pd(ss, d);
  CHECK(read_pd(ss) == d);
  std::istringstream bad("0 1 1 0 2\n");
  CHECK_THROWS_AS(read_pd(bad), DiagramError);
  std::istringstream loops("# just circles\nloops 2\n");
  const auto l = read_pd(loops);
  CHECK(l.free_loops == 2);
  CHECK(close(dubrovnik(l, generic), generic.delta(), 1e-14));
}

TEST_CASE("specialization parameters") {
  for (int N = 3; N <= 13; N += 2) {
    const Complex alpha = linkinv::so_alpha(N);
    const auto p = specialization_params(N, linkinv::so_eta(N), alpha);
    CHECK(close(p.delta(), 2.0, 1e-12));
    CHECK(std::abs(std::abs(p.a) - 1.0) < 1e-12);
    const auto other = specialization_params(N, -linkinv::so_eta(N), alpha);
    CHECK(close(other.delta(), 0.0, 1e-12));
  }
  // sin(4 pi/5) / sin(pi/5) + 1
  const auto p5 = specialization_params(5, 1, std::polar(1.0, 4 * std::numbers::pi / 5));
  CHECK(close(p5.delta(), 2.0, 1e-14));
  CHECK(close(linkinv::so_alpha(3), std::polar(1.0, -2 * std::numbers::pi / 3), 1e-12));
  CHECK_THROWS_AS(specialization_params(4, 1, 1.0), std::invalid_argument);
}

TEST_CASE("comparison with the link invariant") {
  const auto cat = braid::builtin_catalog();
  for (int N : {3, 5, 7}) {
    const auto s = linkinv::so_egyb(N);
    ArtifactSide side{s.enh().alpha, [&](const BraidWord& w) {
                        return linkinv::normalized_invariant(s, w, linkinv::Normalization::Remark54);
                      }};
    const auto rep = compare_invariants(N, cat.entries(), side);
    CHECK(rep.passed);
    CHECK(rep.exactly_one_sign);
    CHECK(rep.sign == linkinv::so_eta(N));
    CHECK(rep.max_deviation < 1e-8);
    CHECK(close(rep.artifact_unlink_factor, rep.delta, 1e-10));
    const auto forced = compare_invariants(N, cat.entries(), side, 1e-8, -rep.sign);
    CHECK_FALSE(forced.passed);
  }
}
