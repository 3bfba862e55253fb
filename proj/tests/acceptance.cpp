// One line per acceptance criterion; exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "gyblink/braid.hpp"
#include "gyblink/gybcore.hpp"
#include "gyblink/linkinv.hpp"
#include "gyblink/skein_oracle.hpp"
#include "gyblink/so_n2.hpp"

using namespace gyblink;
using braid::BraidWord;
using numkit::Complex;
using numkit::ComplexMatrix;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

struct Outcome {
  bool passed;
  std::string detail;
};

int failures = 0;

void run(int id, const std::string& title, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.passed) ++failures;
  std::cout << (o.passed ? "PASS" : "FAIL") << "  criterion " << id << ": " << title << " ("
            << o.detail << ")" << std::endl;
}

Outcome gybe_all() {
  const auto t0 = Clock::now();
  const numkit::ToleranceConfig tol{1e-10, 0.0};
  double worst = 0.0;
  bool ok = true;
  for (int N = 3; N <= 13; N += 2)
    for (int nu : {1, -1}) {
      const auto r = core::r_nu(N, nu);
      const auto g = core::check_gybe(r, tol);
      const auto f = core::check_far_commutativity(r, tol);
      worst = std::max({worst, g.residual, f.residual});
      ok = ok && g.passed && f.passed;
    }
  const double dt = seconds_since(t0);
  return {ok && worst < 1e-10 && dt < 1.0,
          "max residual " + sci(worst) + ", " + sci(dt) + " s for N=3..13, nu=+-1"};
}

Outcome synthesis() {
  double d3 = numkit::max_abs_diff(so_n2::build_gyb(3).matrix(), core::r_nu(3, -1).matrix());
  double d57 = 0.0;
  for (int N : {5, 7}) {
    d57 = std::max(d57, numkit::max_abs_diff(so_n2::build_gyb(N).matrix(),
                                             -1.0 * core::r_nu(N, 1).matrix()));
  }
  return {d3 < 1e-12 && d57 < 1e-12,
          "N=3 vs R_-1(3): " + sci(d3) + "; N=5,7 vs -R_+1(N): " + sci(d57)};
}

Outcome min_poly() {
  double cubic = 0.0, quad = 1e300;
  bool ok = true;
  for (int N = 3; N <= 13; N += 2) {
    const auto m = core::min_poly_check(N, 1e-12, 1e-3);
    cubic = std::max(cubic, m.cubic_residual);
    quad = std::min(quad, m.min_quadratic_residual);
    ok = ok && m.passed;
  }
  return {ok && cubic < 1e-12 && quad > 1e-3,
          "max cubic residual " + sci(cubic) + ", min quadratic residual " + sci(quad)};
}

Outcome enhancement() {
  double spread = 0.0, modulus = 0.0, to_theta = 0.0, cond = 0.0;
  bool ok = true;
  for (int N = 3; N <= 13; N += 2) {
    const auto r = so_n2::build_gyb(N);
    const Complex s00 = core::diag_channel_sum(r, 0, 0);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) spread = std::max(spread, std::abs(core::diag_channel_sum(r, i, j) - s00));
    modulus = std::max(modulus, std::abs(std::abs(s00) - 1.0));
    if (N >= 5) {
      to_theta = std::max(to_theta, std::abs(s00 - std::polar(1.0, std::numbers::pi * (N - 1) / N)));
    }
    const core::EgybOperator e(r, {ComplexMatrix::identity(2), s00, 1.0});
    const auto rep = core::check_enhancement(e, 4, {1e-12, 0.0});
    cond = std::max({cond, rep.residual, rep.inverse_residual});
    ok = ok && rep.passed;
  }
  return {ok && spread < 1e-12 && modulus < 1e-12 && to_theta < 1e-12,
          "channel-sum spread " + sci(spread) + ", ||alpha|-1| " + sci(modulus) +
              ", N>=5 distance to e^{i pi (N-1)/N} " + sci(to_theta) +
              ", R and R^-1 conditions " + sci(cond)};
}

Outcome markov() {
  const auto t0 = Clock::now();
  const auto cat = braid::load_catalog(std::string(GYBLINK_DATA_DIR) + "/catalog.txt");
  double worst = 0.0;
  int sequences = 0;
  for (int N : {3, 5, 7}) {
    const auto s = linkinv::so_egyb(N);
    std::uint64_t seed = 1000 * N;
    for (const auto& e : cat.entries()) {
      const auto rep = linkinv::markov_invariance_test(s, e.word, 100, seed++, 1e-8);
      worst = std::max(worst, rep.max_deviation);
      sequences += rep.trials;
    }
  }
  const double dt = seconds_since(t0);
  return {worst < 1e-8 && dt < 30.0, std::to_string(sequences) + " sequences over " +
                                         std::to_string(cat.size()) + " links, max deviation " +
                                         sci(worst) + ", " + sci(dt) + " s"};
}

Outcome unknot_values() {
  double dev = 0.0;
  for (int N = 3; N <= 13; N += 2) {
    const auto s = linkinv::so_egyb(N);
    dev = std::max(dev, std::abs(linkinv::t_invariant(s, BraidWord(1)) - 4.0));
    dev = std::max(dev, std::abs(linkinv::t_invariant(s, BraidWord(2)) - 8.0));
    dev = std::max(dev, std::abs(linkinv::normalized_invariant(
                                     s, BraidWord(1), linkinv::Normalization::Remark54) - 1.0));
  }
  return {dev < 1e-12, "max deviation " + sci(dev) + " over N=3..13"};
}

Outcome skein_operator() {
  double worst = 0.0, tr = 0.0;
  bool ok = true;
  for (int N = 3; N <= 13; N += 2) {
    const auto rep = linkinv::skein_operator_check(linkinv::so_egyb(N), N, N == 3 ? -1 : 1, 1e-11);
    worst = std::max(worst, rep.residual);
    tr = std::max(tr, std::abs(rep.trace_e - 4.0));
    ok = ok && rep.passed;
  }
  return {ok && worst < 1e-11, "max residual " + sci(worst) + ", |tr E - 4| " + sci(tr) +
                                   ", eta -1 at N=3 and +1 at N=5..13"};
}

Outcome quadruples() {
  double worst = 0.0, formula = 0.0;
  bool ok = true;
  for (int N = 3; N <= 13; N += 2) {
    const int eta = N == 3 ? -1 : 1;
    const auto s = linkinv::so_egyb(N);
    const auto rep = linkinv::skein_quadruple_check(s, N, eta, 1e-10);
    worst = std::max(worst, rep.max_residual);
    ok = ok && rep.passed;
    if (N >= 5) {
      const double t = std::numbers::pi / N;
      const Complex lhs = -4.0 * std::polar(1.0, -t) + 4.0 * std::polar(1.0, t);
      const Complex rhs = Complex(0.0, 2.0 * std::sin(t)) * (8.0 - 4.0);
      const Complex got = linkinv::framed_invariant(s, BraidWord(2, {1})) -
                          linkinv::framed_invariant(s, BraidWord(2, {-1}));
      formula = std::max({formula, std::abs(lhs - rhs), std::abs(got - lhs)});
    }
  }
  return {ok && worst < 1e-10 && formula < 1e-10,
          "max quadruple residual " + sci(worst) + ", B2 closed form " + sci(formula)};
}

Outcome oracle() {
  const auto builtin = braid::builtin_catalog();
  std::vector<braid::LinkSpec> links;
  for (const char* n : {"unknot", "hopf", "trefoil", "figure8"}) links.push_back(builtin.at(n));
  double worst = 0.0, delta = 0.0;
  bool ok = true;
  std::string signs;
  for (int N : {3, 5, 7}) {
    const auto s = linkinv::so_egyb(N);
    skein::ArtifactSide side{s.enh().alpha, [&](const BraidWord& w) {
                               return linkinv::normalized_invariant(
                                   s, w, linkinv::Normalization::Remark54);
                             }};
    const auto rep = skein::compare_invariants(N, links, side, 1e-8);
    worst = std::max(worst, rep.max_deviation);
    delta = std::max(delta, std::abs(rep.delta - 2.0));
    ok = ok && rep.passed && rep.exactly_one_sign;
    signs += (signs.empty() ? "" : ", ") + std::string("N=") + std::to_string(N) +
             (rep.sign > 0 ? ":+" : rep.sign < 0 ? ":-" : ":?");
  }
  return {ok && worst < 1e-8 && delta < 1e-12,
          "max deviation " + sci(worst) + ", |delta-2| " + sci(delta) + ", unique sign " + signs};
}

Outcome multiplicativity() {
  const auto s = linkinv::so_egyb(5);
  const std::pair<BraidWord, BraidWord> pairs[] = {
      {BraidWord(1), BraidWord(1)},
      {BraidWord(2, {1, 1, 1}), BraidWord(1)},
      {BraidWord(3, {1, -2, 1, -2}), BraidWord(2, {1, 1})},
  };
  double worst = 0.0;
  std::string r54;
  for (const auto& [a, b] : pairs) {
    const auto rep = linkinv::multiplicativity_check(s, a, b, 1e-10);
    worst = std::max(worst, std::abs(rep.factor - 0.5));
    r54 = numkit::to_string(rep.remark54_factor, 6);
  }
  return {worst < 1e-10,
          "max |factor - 1/2| " + sci(worst) + " on 3 pairs; the T_S/4 values multiply with factor " + r54};
}

Outcome performance() {
  const auto op = so_n2::build_gyb(5);
  const core::StructuredOperator so(op);
  double worst = 0.0;
  for (int n = 2; n <= 10; ++n) {
    const auto w = braid::random_word(n, 20, 500 + n);
    const auto dense = core::rep_matrix(op, w);
    std::vector<Complex> v(dense.cols());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::polar(1.0 / std::sqrt(double(v.size())), 0.37 * i);
    const auto expect = numkit::matvec(dense, v);
    for (int l : w.letters()) so.apply_letter(l, n, v);
    for (std::size_t i = 0; i < v.size(); ++i) worst = std::max(worst, std::abs(v[i] - expect[i]));
  }
  const auto s = linkinv::so_egyb(5);
  const auto w14 = braid::random_word(14, 20, 14);
  const auto t0 = Clock::now();
  const Complex tr = linkinv::markov_trace(s, w14, linkinv::TraceMethod::Structured);
  const double dt = seconds_since(t0);
  return {worst < 1e-12 && dt < 60.0 && std::isfinite(tr.real()),
          "n<=10 max difference " + sci(worst) + "; n=14 length-20 trace in " + sci(dt) + " s"};
}

}  // namespace

int main() {
  run(1, "gYBE and far-commutativity of R_nu(N)", gybe_all);
  run(2, "category synthesis reproduces R_-1(3) and -R_+1(5), -R_+1(7)", synthesis);
  run(3, "cubic minimal polynomial of -R_+1(N)", min_poly);
  run(4, "enhancement via channel sums", enhancement);
  run(5, "Markov invariance on the catalog", markov);
  run(6, "unknot and unlink values", unknot_values);
  run(7, "skein operator identity", skein_operator);
  run(8, "closed-diagram skein quadruples", quadruples);
  run(9, "agreement with the Dubrovnik oracle", oracle);
  run(10, "disjoint-union factor tr(mu)^(2m-k)", multiplicativity);
  run(11, "structured application and the n=14 trace", performance);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
