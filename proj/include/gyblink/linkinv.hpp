#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gyblink/braid.hpp"
#include "gyblink/gybcore.hpp"

namespace gyblink::linkinv {

using numkit::Complex;
using numkit::ComplexMatrix;
using numkit::ToleranceConfig;

enum class Normalization { Raw, Framed, Section2, Remark54 };
std::string to_string(Normalization n);
/// "raw", "framed", "section2", "remark54"; throws std::invalid_argument otherwise.
Normalization parse_normalization(std::string_view text);

enum class TraceMethod { Auto, Dense, Structured };

struct InvariantResult {
  Complex value;
  braid::BraidWord word;
  int writhe = 0;
  int strand_count = 1;
  Normalization normalization = Normalization::Raw;
};

/// One factor of a product acting on V^{(x)k+m(n-2)}: `op` (d^k x d^k) placed
/// at generator position `position` (shifted by m(position-1) factors).
struct Placement {
  int position = 1;
  const ComplexMatrix* op = nullptr;
};

/// tr(P_last ... P_first mu^{(x)factors}), dense evaluation. With no
/// placements and strands == 1 the space is V^{(x)k-m}.
Complex dense_trace(const core::GybType& ty, int strands, std::span<const Placement> product,
                    const ComplexMatrix& mu);

/// tr(rho_n(w) mu^{(x)factors}) using block application; needs a (d,3,1)
/// operator with the middle-coupling structure and a diagonal mu.
Complex structured_trace(const core::StructuredOperator& s, const braid::BraidWord& w,
                         std::span<const Complex> mu_diagonal);

/// Auto picks dense for n <= 6 and structured beyond when available.
Complex markov_trace(const core::EgybOperator& s, const braid::BraidWord& w,
                     TraceMethod method = TraceMethod::Auto);

/// beta^{-n} tr(rho_n(w) mu^{(x)...}); no writhe correction.
Complex framed_invariant(const core::EgybOperator& s, const braid::BraidWord& w,
                         TraceMethod method = TraceMethod::Auto);

/// alpha^{-w} beta^{-n} tr(rho_n(w) mu^{(x)...}).
Complex t_invariant(const core::EgybOperator& s, const braid::BraidWord& w,
                    TraceMethod method = TraceMethod::Auto);

/// Section2: tr(mu)^{2m-k} T_S.  Remark54: T_S / tr(mu)^{k-m}, which is
/// T_S / 4 for the SO(N)_2 family.
Complex normalized_invariant(const core::EgybOperator& s, const braid::BraidWord& w,
                             Normalization scheme, TraceMethod method = TraceMethod::Auto);

InvariantResult evaluate(const core::EgybOperator& s, const braid::BraidWord& w,
                         Normalization scheme, TraceMethod method = TraceMethod::Auto);

/// The enhanced operator (build_gyb(N), Id_2, alpha, 1) with alpha the
/// measured channel sum.
core::EgybOperator so_egyb(int N);
/// The channel sum of build_gyb(N) at (0,0).
Complex so_alpha(int N);
/// -1 for N = 3, +1 otherwise.
int so_eta(int N);

struct MultiplicativityReport {
  Complex lhs;       // T_S(a u b)
  Complex rhs;       // tr(mu)^{2m-k} T_S(a) T_S(b)
  Complex factor;    // T_S(a u b) / (T_S(a) T_S(b))
  Complex expected_factor;
  Complex remark54_factor;  // same ratio for the remark54 values
  double residual = 0.0;
  bool passed = false;
};

MultiplicativityReport multiplicativity_check(const core::EgybOperator& s,
                                              const braid::BraidWord& a,
                                              const braid::BraidWord& b, double tol = 1e-9);

struct MarkovReport {
  Complex base_value;
  int trials = 0;
  int max_strands_seen = 0;
  double max_deviation = 0.0;
  bool passed = false;
};

/// Each trial applies 1..moves_per_trial random conjugations/stabilizations
/// (keeping n <= max_strands) and compares T_S.
MarkovReport markov_invariance_test(const core::EgybOperator& s, const braid::BraidWord& w,
                                    int trials, std::uint64_t seed, double tol = 1e-8,
                                    int max_strands = 6, int moves_per_trial = 4);

struct SkeinOperatorReport {
  Complex unit_eigenvalue;
  std::vector<Complex> spectrum;
  ComplexMatrix e;  // 2 * projector onto the unit-channel eigenvalue
  Complex trace_e;
  double residual = 0.0;          // |R - R^{-1} - eta 2i sin(pi/N) (Id - E)|_max
  double kink_residual = 0.0;     // |R E - alpha^{-1} E|_max
  bool passed = false;
};

/// Distinct eigenvalues of a (d,3,1) structured operator from its blocks.
std::vector<Complex> structured_spectrum(const core::StructuredOperator& s, double cluster = 1e-9);

SkeinOperatorReport skein_operator_check(const core::EgybOperator& s, int N, int eta,
                                         double tol = 1e-11);

struct QuadrupleRow {
  std::string name;
  Complex plus, minus, zero, infinity;
  double residual = 0.0;
};

struct SkeinQuadrupleReport {
  std::vector<QuadrupleRow> rows;
  double max_residual = 0.0;
  bool passed = false;
};

/// Framed-invariant skein relation on the B_2 quadruple and at the first
/// crossing of the trefoil, D_infinity realized by inserting E.
SkeinQuadrupleReport skein_quadruple_check(const core::EgybOperator& s, int N, int eta,
                                           double tol = 1e-10);

}  // namespace gyblink::linkinv
