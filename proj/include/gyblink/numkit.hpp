#pragma once

// Dense complex linear algebra used throughout gyblink.
//
// Multi-index convention: a basis vector (i1, ..., ik) of V^{(x)k} with
// dim V = d sits at flat index sum_t i_t * d^(k-t), so the last tensor
// factor is the fastest-varying one.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gyblink::numkit {

using Complex = std::complex<double>;

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SpectrumMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ToleranceConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;

  /// Throws std::invalid_argument unless both values are finite and >= 0.
  void validate() const;

  /// abs_tol + rel_tol * scale
  double bound(double scale) const { return abs_tol + rel_tol * scale; }
};

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  std::size_t size() const { return data_.size(); }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Complex> entries() { return data_; }
  std::span<const Complex> entries() const { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  Complex trace() const;
  double max_abs() const;
  double frobenius_norm() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, Complex s);

std::vector<Complex> matvec(const ComplexMatrix& a, std::span<const Complex> v);

/// Kronecker product: entry [(i*r+k),(j*s+l)] = a[i,j] * b[k,l].
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// kron of `count` copies of `a`; count == 0 gives the 1x1 identity.
ComplexMatrix kron_power(const ComplexMatrix& a, std::size_t count);

/// Returns k with d^k == n, if any.
std::optional<std::size_t> log_base(std::size_t n, std::size_t d);

/// Integer power d^e.
std::size_t ipow(std::size_t d, std::size_t e);

/// z^e by repeated squaring; z^0 = 1 for every z, negative e inverts.
Complex cpow(Complex z, int e);

/// Operator trace over the last m tensor factors of a matrix on V^{(x)k},
/// dim V = d. Preserves the total trace.
ComplexMatrix partial_trace_last(const ComplexMatrix& f, std::size_t d, std::size_t m);

/// tr(f^* g)
Complex trace_inner(const ComplexMatrix& f, const ComplexMatrix& g);

/// Spectral projectors by Lagrange interpolation:
/// P_l = prod_{u != l} (m - u Id) / (l - u). Verifies completeness,
/// idempotence and the eigen-equations against `tol`.
std::vector<ComplexMatrix> spectral_projectors(const ComplexMatrix& m,
                                               std::span<const Complex> eigenvalues,
                                               const ToleranceConfig& tol = {});

bool approx_eq(const ComplexMatrix& a, const ComplexMatrix& b, const ToleranceConfig& tol = {});

/// Largest entrywise |a - b|; shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// LU factorization with partial pivoting.
class LuDecomposition {
 public:
  explicit LuDecomposition(const ComplexMatrix& a);

  Complex determinant() const;
  /// Smallest |pivot| encountered; zero for an exactly singular input.
  double min_pivot() const { return min_pivot_; }
  ComplexMatrix solve(const ComplexMatrix& rhs) const;
  ComplexMatrix inverse() const;

 private:
  ComplexMatrix lu_;
  std::vector<std::size_t> perm_;
  int perm_sign_ = 1;
  double min_pivot_ = 0.0;
};

ComplexMatrix inverse(const ComplexMatrix& a);

std::string to_string(Complex z, int precision = 12);

}  // namespace gyblink::numkit
