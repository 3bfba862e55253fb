#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gyblink/braid.hpp"
#include "gyblink/numkit.hpp"

namespace gyblink::core {

using numkit::Complex;
using numkit::ComplexMatrix;
using numkit::ToleranceConfig;

/// (d, k, m): R acts on V^{(x)k}, dim V = d, and consecutive braid
/// generators are shifted by m tensor factors.
struct GybType {
  int d = 2;
  int k = 3;
  int m = 1;

  void validate() const;
  /// Number of tensor factors of the n-strand representation space, k + m(n-2).
  int factors(int strands) const { return k + m * (strands - 2); }
  std::size_t rep_dimension(int strands) const;

  friend bool operator==(const GybType&, const GybType&) = default;
};

class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An invertible operator on V^{(x)k} tagged with its type. Operators whose
/// |det| falls below `det_tol` are rejected.
class GybOperator {
 public:
  GybOperator(GybType ty, ComplexMatrix matrix, double det_tol = 1e-10);

  const GybType& type() const { return ty_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  const ComplexMatrix& inverse() const { return inverse_; }
  bool is_unitary() const { return unitary_; }

 private:
  GybType ty_;
  ComplexMatrix matrix_;
  ComplexMatrix inverse_;
  bool unitary_ = false;
};

struct Enhancement {
  ComplexMatrix mu;
  Complex alpha{1.0, 0.0};
  Complex beta{1.0, 0.0};
};

/// A gYB-operator with enhancement data; mu^{(x)k} must commute with R.
class EgybOperator {
 public:
  EgybOperator(GybOperator op, Enhancement enh, const ToleranceConfig& tol = {});

  const GybOperator& op() const { return op_; }
  const Enhancement& enh() const { return enh_; }
  /// max |[mu^{(x)k}, R]| measured at construction
  double commutation_residual() const { return commutation_residual_; }
  bool mu_is_identity(double tol = 1e-14) const;
  bool mu_is_diagonal(double tol = 1e-14) const;

 private:
  GybOperator op_;
  Enhancement enh_;
  double commutation_residual_ = 0.0;
};

struct CheckReport {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

/// The 8x8 family R_nu(N) = block_1 (+) block_2 with C = cos(pi/N),
/// S = sin(pi/N); block_1 acts on basis vectors (0,i2,i3), block_2 on (1,i2,i3).
GybOperator r_nu(int N, int nu);
/// Same block layout with C = cos(theta), S = sin(theta).
GybOperator r_nu_theta(double theta, int nu);

/// (R (x) I_m)(I_m (x) R)(R (x) I_m) vs (I_m (x) R)(R (x) I_m)(I_m (x) R) on V^{(x)k+m}.
CheckReport check_gybe(const GybOperator& r, const ToleranceConfig& tol = {});

/// [R (x) I_m^{j-2}, I_m^{j-2} (x) R] for every j >= 4 whose shifted copies
/// still overlap; for (d,3,1) that is j = 4 alone.
CheckReport check_far_commutativity(const GybOperator& r, const ToleranceConfig& tol = {});

/// Dense R_i = I_m^{i-1} (x) R^{+-1} (x) I_m^{n-i-1}.
ComplexMatrix generator_matrix(const GybOperator& r, int i, int strands, bool inverse = false);

/// Applies `op` (acting on d^k) to tensor factors [offset, offset + k) of
/// every column of `target`, in place. `target` lives on V^{(x)total}.
void apply_local(const ComplexMatrix& op, int d, int offset, int total, ComplexMatrix& target);

/// rho_n(w); the first letter acts first (is the rightmost factor).
/// For n = 1 the image is the identity on V^{(x)k-m}.
ComplexMatrix rep_matrix(const GybOperator& r, const braid::BraidWord& w);

/// Per-(outer factor) block view of a (d,3,1) operator that acts diagonally on
/// its first and third tensor factors. Construction validates the structure.
class StructuredOperator {
 public:
  explicit StructuredOperator(const GybOperator& r, double tol = 1e-12);
  StructuredOperator(const ComplexMatrix& matrix, const ComplexMatrix& inverse, int d,
                     double tol = 1e-12);

  int d() const { return d_; }
  /// d x d block acting on the middle factor given outer digits (left, right).
  const ComplexMatrix& block(int left, int right, bool inverse = false) const;

  /// Applies R_position (or its inverse) to v in place; v lives on V^{(x)strands+1}.
  void apply(int position, int strands, std::span<Complex> v, bool inverse = false) const;
  void apply_letter(int letter, int strands, std::span<Complex> v) const;

  /// Register variant: factor f has dims[f] in {1, d}; a factor of size 1 is
  /// pinned to fixed[f]. The target factor `position` must be full.
  void apply_register(int position, std::span<const int> dims, std::span<const int> fixed,
                      std::span<Complex> v, bool inverse = false) const;

 private:
  int d_;
  std::vector<ComplexMatrix> blocks_;
  std::vector<ComplexMatrix> inverse_blocks_;
};

/// True when the operator has type (d,3,1) and acts diagonally on factors 1 and 3.
bool has_middle_coupling(const GybOperator& r, double tol = 1e-12);

/// Out-of-place structured application of R_position to v.
std::vector<Complex> apply_structured(const StructuredOperator& s, int position, int strands,
                                      std::span<const Complex> v);

/// sum_k R[(i,j,k),(i,j,k)] for a (d,3,1) operator.
Complex diag_channel_sum(const GybOperator& r, int i, int j);

struct EnhancementReport {
  enum class Method { ChannelSum, SpanningSet };
  Method method = Method::ChannelSum;
  double commutation_residual = 0.0;
  /// max deviation of Sp(R mu) - alpha beta mu on the tested entries
  double residual = 0.0;
  /// same for R^{-1} with alpha^{-1} beta
  double inverse_residual = 0.0;
  double tolerance = 0.0;
  /// spanning-set path only: (n, algebra dimension) per tested strand count
  std::vector<std::pair<int, std::size_t>> algebra_dimensions;
  bool passed = false;
  std::string detail;
};

/// Checks the enhancement conditions. With mu = Id on a (d,3,1) operator that
/// has the middle-coupling structure, uses the exact channel-sum criterion;
/// otherwise checks orthogonality of the test elements against a basis of
/// the algebra spanned by rho_n for 3 <= n <= n_max.
EnhancementReport check_enhancement(const EgybOperator& s, int n_max = 4,
                                    const ToleranceConfig& tol = {});

/// Forces the spanning-set path regardless of mu.
EnhancementReport check_enhancement_spanning(const EgybOperator& s, int n_max = 4,
                                             const ToleranceConfig& tol = {});

struct MinPolyReport {
  double cubic_residual = 0.0;
  /// smallest residual among the three monic quadratics built from pairs of eigenvalues
  double min_quadratic_residual = 0.0;
  bool passed = false;
};

/// R^3 + e^{-pi i/N} R^2 - e^{2 pi i/N} R - e^{pi i/N} Id at R = -R_{+1}(N).
MinPolyReport min_poly_check(int N, double tol = 1e-12, double quadratic_floor = 1e-3);

struct SpectrumReport {
  std::vector<Complex> eigenvalues;
  std::vector<int> multiplicities;
  /// max distance of a projector trace from its rounded multiplicity
  double rounding_residual = 0.0;
};

/// Multiplicities of each expected eigenvalue via spectral projectors.
/// Throws numkit::SpectrumMismatchError when the spectrum is not contained in `expected`.
SpectrumReport spectrum_check(const GybOperator& r, std::span<const Complex> expected,
                              const ToleranceConfig& tol = {});

/// Text format (see docs/formats.md):
///   gyb-operator
///   type <d> <k> <m>
///   <d^k lines of d^k "(re,im)" tokens>
void write_operator(std::ostream& out, const GybOperator& r);
GybOperator read_operator(std::istream& in);

}  // namespace gyblink::core
