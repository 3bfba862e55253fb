#include "gyblink/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace gyblink::numkit {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream os;
    os << what << ": shape mismatch " << a.rows() << "x" << a.cols() << " vs " << b.rows()
       << "x" << b.cols();
    throw ShapeError(os.str());
  }
}

void require_square(const ComplexMatrix& a, const char* what) {
  if (!a.is_square()) {
    throw ShapeError(std::string(what) + ": matrix is not square");
  }
}

}  // namespace

void ToleranceConfig::validate() const {
  if (!std::isfinite(abs_tol) || !std::isfinite(rel_tol) || abs_tol < 0 || rel_tol < 0) {
    throw std::invalid_argument("tolerances must be finite and non-negative");
  }
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw ShapeError("entry count does not match " + std::to_string(rows) + "x" +
                     std::to_string(cols));
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<Complex> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw ShapeError("ragged row list");
    data.insert(data.end(), row.begin(), row.end());
  }
  return ComplexMatrix(r, c, std::move(data));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

Complex ComplexMatrix::trace() const {
  require_square(*this, "trace");
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (auto& z : data_) z *= scalar;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("matrix product: inner dimensions " + std::to_string(a.cols()) + " and " +
                     std::to_string(b.rows()));
  }
  ComplexMatrix out(a.rows(), b.cols());
  const std::size_t n = b.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex* orow = &out(i, 0);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      const Complex* brow = &b(k, 0);
      for (std::size_t j = 0; j < n; ++j) orow[j] += aik * brow[j];
    }
  }
  return out;
}

std::vector<Complex> matvec(const ComplexMatrix& a, std::span<const Complex> v) {
  if (a.cols() != v.size()) throw ShapeError("matvec: vector length mismatch");
  std::vector<Complex> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t r = b.rows();
  const std::size_t s = b.cols();
  ComplexMatrix out(a.rows() * r, a.cols() * s);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < r; ++k)
        for (std::size_t l = 0; l < s; ++l) out(i * r + k, j * s + l) = aij * b(k, l);
    }
  return out;
}

ComplexMatrix kron_power(const ComplexMatrix& a, std::size_t count) {
  ComplexMatrix out = ComplexMatrix::identity(1);
  for (std::size_t i = 0; i < count; ++i) out = kron(out, a);
  return out;
}

std::optional<std::size_t> log_base(std::size_t n, std::size_t d) {
  if (d < 2 || n == 0) return std::nullopt;
  std::size_t k = 0;
  while (n % d == 0) {
    n /= d;
    ++k;
  }
  if (n != 1) return std::nullopt;
  return k;
}

Complex cpow(Complex z, int e) {
  if (e < 0) return 1.0 / cpow(z, -e);
  Complex out = 1.0;
  Complex base = z;
  for (unsigned u = static_cast<unsigned>(e); u; u >>= 1) {
    if (u & 1U) out *= base;
    base *= base;
  }
  return out;
}

std::size_t ipow(std::size_t d, std::size_t e) {
  std::size_t r = 1;
  while (e-- > 0) r *= d;
  return r;
}

ComplexMatrix partial_trace_last(const ComplexMatrix& f, std::size_t d, std::size_t m) {
  require_square(f, "partial_trace_last");
  const auto k = log_base(f.rows(), d);
  if (!k) {
    throw ShapeError("partial_trace_last: dimension " + std::to_string(f.rows()) +
                     " is not a power of " + std::to_string(d));
  }
  if (m == 0 || m >= *k) {
    throw ShapeError("partial_trace_last: need 0 < m < k (m=" + std::to_string(m) +
                     ", k=" + std::to_string(*k) + ")");
  }
  const std::size_t inner = ipow(d, m);
  const std::size_t outer = f.rows() / inner;
  ComplexMatrix out(outer, outer);
  for (std::size_t r = 0; r < outer; ++r)
    for (std::size_t c = 0; c < outer; ++c) {
      Complex s = 0.0;
      for (std::size_t t = 0; t < inner; ++t) s += f(r * inner + t, c * inner + t);
      out(r, c) = s;
    }
  return out;
}

Complex trace_inner(const ComplexMatrix& f, const ComplexMatrix& g) {
  require_same_shape(f, g, "trace_inner");
  require_square(f, "trace_inner");
  // tr(f^* g) = sum_{ij} conj(f_ij) g_ij
  Complex s = 0.0;
  const auto fe = f.entries();
  const auto ge = g.entries();
  for (std::size_t i = 0; i < fe.size(); ++i) s += std::conj(fe[i]) * ge[i];
  return s;
}

std::vector<ComplexMatrix> spectral_projectors(const ComplexMatrix& m,
                                               std::span<const Complex> eigenvalues,
                                               const ToleranceConfig& tol) {
  require_square(m, "spectral_projectors");
  tol.validate();
  if (eigenvalues.empty()) throw std::invalid_argument("spectral_projectors: empty spectrum");
  for (std::size_t i = 0; i < eigenvalues.size(); ++i)
    for (std::size_t j = i + 1; j < eigenvalues.size(); ++j)
      if (std::abs(eigenvalues[i] - eigenvalues[j]) <= tol.abs_tol) {
        throw std::invalid_argument("spectral_projectors: duplicate eigenvalue " +
                                    to_string(eigenvalues[i]));
      }

  const std::size_t n = m.rows();
  const ComplexMatrix id = ComplexMatrix::identity(n);
  std::vector<ComplexMatrix> out;
  out.reserve(eigenvalues.size());
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    ComplexMatrix p = id;
    for (std::size_t j = 0; j < eigenvalues.size(); ++j) {
      if (j == i) continue;
      ComplexMatrix factor = m - eigenvalues[j] * id;
      factor *= 1.0 / (eigenvalues[i] - eigenvalues[j]);
      p = p * factor;
    }
    out.push_back(std::move(p));
  }

  double scale = 1.0;
  for (const auto& p : out) scale = std::max(scale, p.max_abs());
  const double bound = tol.bound(scale);

  ComplexMatrix sum(n, n);
  double residual = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    sum += out[i];
    residual = std::max(residual, max_abs_diff(out[i] * out[i], out[i]));
    residual = std::max(residual, max_abs_diff(m * out[i], eigenvalues[i] * out[i]));
  }
  residual = std::max(residual, max_abs_diff(sum, id));
  if (!(residual <= bound)) {
    std::ostringstream os;
    os << "spectral_projectors: residual " << residual << " exceeds " << bound
       << "; the matrix spectrum is not contained in the given eigenvalues";
    throw SpectrumMismatchError(os.str());
  }
  return out;
}

bool approx_eq(const ComplexMatrix& a, const ComplexMatrix& b, const ToleranceConfig& tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  const double scale = std::max(a.max_abs(), b.max_abs());
  return max_abs_diff(a, b) <= tol.bound(scale);
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  const auto ae = a.entries();
  const auto be = b.entries();
  for (std::size_t i = 0; i < ae.size(); ++i) m = std::max(m, std::abs(ae[i] - be[i]));
  return m;
}

LuDecomposition::LuDecomposition(const ComplexMatrix& a) : lu_(a), perm_(a.rows()) {
  require_square(a, "LU");
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
  min_pivot_ = n == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    double best = std::abs(lu_(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(lu_(r, col)) > best) {
        best = std::abs(lu_(r, col));
        piv = r;
      }
    }
    min_pivot_ = std::min(min_pivot_, best);
    if (best == 0.0) continue;
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(lu_(piv, c), lu_(col, c));
      std::swap(perm_[piv], perm_[col]);
      perm_sign_ = -perm_sign_;
    }
    const Complex pivot = lu_(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex f = lu_(r, col) / pivot;
      lu_(r, col) = f;
      if (f == Complex{}) continue;
      for (std::size_t c = col + 1; c < n; ++c) lu_(r, c) -= f * lu_(col, c);
    }
  }
}

Complex LuDecomposition::determinant() const {
  Complex det = static_cast<double>(perm_sign_);
  for (std::size_t i = 0; i < lu_.rows(); ++i) det *= lu_(i, i);
  return det;
}

ComplexMatrix LuDecomposition::solve(const ComplexMatrix& rhs) const {
  const std::size_t n = lu_.rows();
  if (rhs.rows() != n) throw ShapeError("LU solve: right-hand side has wrong row count");
  if (min_pivot_ == 0.0) throw SingularMatrixError("LU solve: matrix is singular");
  ComplexMatrix x(n, rhs.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < rhs.cols(); ++c) x(i, c) = rhs(perm_[i], c);
  for (std::size_t c = 0; c < rhs.cols(); ++c) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) x(i, c) -= lu_(i, j) * x(j, c);
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t j = i + 1; j < n; ++j) x(i, c) -= lu_(i, j) * x(j, c);
      x(i, c) /= lu_(i, i);
    }
  }
  return x;
}

ComplexMatrix LuDecomposition::inverse() const {
  return solve(ComplexMatrix::identity(lu_.rows()));
}

ComplexMatrix inverse(const ComplexMatrix& a) { return LuDecomposition(a).inverse(); }

std::string to_string(Complex z, int precision) {
  std::ostringstream os;
  os << std::setprecision(precision) << z.real() << (z.imag() < 0 ? " - " : " + ")
     << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace gyblink::numkit
