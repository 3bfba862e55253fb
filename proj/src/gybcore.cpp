#include "gyblink/gybcore.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace gyblink::core {

using numkit::ipow;
using numkit::kron;
using numkit::max_abs_diff;

void GybType::validate() const {
  if (d < 2 || k < 2 || m < 1 || m >= k) {
    throw std::invalid_argument("invalid gYB type (" + std::to_string(d) + "," +
                                std::to_string(k) + "," + std::to_string(m) +
                                "): need d >= 2, k >= 2, 1 <= m < k");
  }
}

std::size_t GybType::rep_dimension(int strands) const {
  if (strands < 1) throw std::invalid_argument("strand count must be positive");
  return ipow(static_cast<std::size_t>(d), static_cast<std::size_t>(factors(strands)));
}

GybOperator::GybOperator(GybType ty, ComplexMatrix matrix, double det_tol)
    : ty_(ty), matrix_(std::move(matrix)) {
  ty_.validate();
  const std::size_t dim = ipow(static_cast<std::size_t>(ty_.d), static_cast<std::size_t>(ty_.k));
  if (matrix_.rows() != dim || matrix_.cols() != dim) {
    throw numkit::ShapeError("gYB operator of type (" + std::to_string(ty_.d) + "," +
                             std::to_string(ty_.k) + "," + std::to_string(ty_.m) + ") must be " +
                             std::to_string(dim) + "x" + std::to_string(dim));
  }
  const ComplexMatrix id = ComplexMatrix::identity(dim);
  const ComplexMatrix adj = matrix_.adjoint();
  if (max_abs_diff(adj * matrix_, id) <= 1e-12) {
    unitary_ = true;
    inverse_ = adj;
    return;
  }
  const numkit::LuDecomposition lu(matrix_);
  if (std::abs(lu.determinant()) <= det_tol || lu.min_pivot() == 0.0) {
    throw numkit::SingularMatrixError("gYB operator is not invertible (|det| = " +
                                      std::to_string(std::abs(lu.determinant())) + ")");
  }
  inverse_ = lu.inverse();
  if (max_abs_diff(matrix_ * inverse_, id) > 1e-8) {
    throw numkit::SingularMatrixError("gYB operator inverse is numerically unreliable");
  }
}

EgybOperator::EgybOperator(GybOperator op, Enhancement enh, const ToleranceConfig& tol)
    : op_(std::move(op)), enh_(std::move(enh)) {
  const auto d = static_cast<std::size_t>(op_.type().d);
  if (enh_.mu.rows() != d || enh_.mu.cols() != d) {
    throw numkit::ShapeError("mu must be " + std::to_string(d) + "x" + std::to_string(d));
  }
  if (enh_.alpha == Complex{} || enh_.beta == Complex{}) {
    throw std::invalid_argument("alpha and beta must be invertible");
  }
  const ComplexMatrix muk = numkit::kron_power(enh_.mu, static_cast<std::size_t>(op_.type().k));
  const ComplexMatrix& r = op_.matrix();
  commutation_residual_ = max_abs_diff(muk * r, r * muk);
  const double scale = std::max(1.0, muk.max_abs() * r.max_abs());
  if (commutation_residual_ > tol.bound(scale)) {
    throw std::invalid_argument("mu^(x)k does not commute with R (residual " +
                                std::to_string(commutation_residual_) + ")");
  }
}

bool EgybOperator::mu_is_identity(double tol) const {
  return max_abs_diff(enh_.mu, ComplexMatrix::identity(enh_.mu.rows())) <= tol;
}

bool EgybOperator::mu_is_diagonal(double tol) const {
  for (std::size_t i = 0; i < enh_.mu.rows(); ++i)
    for (std::size_t j = 0; j < enh_.mu.cols(); ++j)
      if (i != j && std::abs(enh_.mu(i, j)) > tol) return false;
  return true;
}

namespace {

void require_odd_n(int N) {
  if (N < 3 || N % 2 == 0) {
    throw std::invalid_argument("N must be an odd integer >= 3 (got " + std::to_string(N) + ")");
  }
}

ComplexMatrix identity_factors(int d, int count) {
  return ComplexMatrix::identity(ipow(static_cast<std::size_t>(d), static_cast<std::size_t>(count)));
}

}  // namespace

GybOperator r_nu_theta(double theta, int nu) {
  if (nu != 1 && nu != -1) throw std::invalid_argument("nu must be +1 or -1");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Complex nc = nu * c;
  const Complex is{0.0, s};
  const Complex mis{0.0, -s};
  const Complex z{};
  const ComplexMatrix b1 = ComplexMatrix::from_rows({
      {nc, z, is, z},
      {z, mis, z, c},
      {is, z, nc, z},
      {z, c, z, mis},
  });
  const ComplexMatrix b2 = ComplexMatrix::from_rows({
      {mis, z, c, z},
      {z, nc, z, is},
      {c, z, mis, z},
      {z, is, z, nc},
  });
  ComplexMatrix r(8, 8);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      r(i, j) = b1(i, j);
      r(i + 4, j + 4) = b2(i, j);
    }
  return GybOperator(GybType{2, 3, 1}, std::move(r));
}

GybOperator r_nu(int N, int nu) {
  require_odd_n(N);
  return r_nu_theta(std::numbers::pi / N, nu);
}

CheckReport check_gybe(const GybOperator& r, const ToleranceConfig& tol) {
  const auto& ty = r.type();
  const ComplexMatrix im = identity_factors(ty.d, ty.m);
  const ComplexMatrix a = kron(r.matrix(), im);
  const ComplexMatrix b = kron(im, r.matrix());
  const ComplexMatrix lhs = a * b * a;
  const ComplexMatrix rhs = b * a * b;
  CheckReport rep;
  rep.name = "gybe";
  rep.residual = max_abs_diff(lhs, rhs);
  rep.tolerance = tol.bound(std::max(lhs.max_abs(), rhs.max_abs()));
  rep.passed = rep.residual <= rep.tolerance;
  return rep;
}

CheckReport check_far_commutativity(const GybOperator& r, const ToleranceConfig& tol) {
  const auto& ty = r.type();
  CheckReport rep;
  rep.name = "far-commutativity";
  rep.passed = true;
  std::ostringstream detail;
  for (int j = 4; ty.m * (j - 2) < ty.k; ++j) {
    const ComplexMatrix shift = identity_factors(ty.d, ty.m * (j - 2));
    const ComplexMatrix a = kron(r.matrix(), shift);
    const ComplexMatrix b = kron(shift, r.matrix());
    const ComplexMatrix ab = a * b;
    const ComplexMatrix ba = b * a;
    const double res = max_abs_diff(ab, ba);
    const double bound = tol.bound(std::max(ab.max_abs(), ba.max_abs()));
    detail << "j=" << j << " residual " << res << "; ";
    rep.residual = std::max(rep.residual, res);
    rep.tolerance = std::max(rep.tolerance, bound);
    rep.passed = rep.passed && res <= bound;
  }
  if (rep.tolerance == 0.0) rep.tolerance = tol.abs_tol;
  rep.detail = detail.str();
  return rep;
}

ComplexMatrix generator_matrix(const GybOperator& r, int i, int strands, bool inverse) {
  const auto& ty = r.type();
  if (strands < 2 || i < 1 || i > strands - 1) {
    throw std::invalid_argument("generator index " + std::to_string(i) + " out of range for " +
                                std::to_string(strands) + " strands");
  }
  const ComplexMatrix left = identity_factors(ty.d, ty.m * (i - 1));
  const ComplexMatrix right = identity_factors(ty.d, ty.m * (strands - i - 1));
  return kron(kron(left, inverse ? r.inverse() : r.matrix()), right);
}

void apply_local(const ComplexMatrix& op, int d, int offset, int total, ComplexMatrix& target) {
  const auto k = numkit::log_base(op.rows(), static_cast<std::size_t>(d));
  if (!op.is_square() || !k || offset < 0 || offset + static_cast<int>(*k) > total) {
    throw numkit::ShapeError("apply_local: operator does not fit the tensor layout");
  }
  const std::size_t mid = op.rows();
  const std::size_t left = ipow(d, offset);
  const std::size_t right = ipow(d, total - offset - static_cast<int>(*k));
  if (target.rows() != left * mid * right) {
    throw numkit::ShapeError("apply_local: target row count does not match V^(x)total");
  }
  std::vector<std::size_t> rows(mid);
  std::vector<Complex> x(mid);
  for (std::size_t l = 0; l < left; ++l)
    for (std::size_t r = 0; r < right; ++r) {
      for (std::size_t j = 0; j < mid; ++j) rows[j] = (l * mid + j) * right + r;
      for (std::size_t c = 0; c < target.cols(); ++c) {
        for (std::size_t j = 0; j < mid; ++j) x[j] = target(rows[j], c);
        for (std::size_t i = 0; i < mid; ++i) {
          Complex s = 0.0;
          for (std::size_t j = 0; j < mid; ++j) s += op(i, j) * x[j];
          target(rows[i], c) = s;
        }
      }
    }
}

ComplexMatrix rep_matrix(const GybOperator& r, const braid::BraidWord& w) {
  const auto& ty = r.type();
  const int n = w.strands();
  ComplexMatrix out = ComplexMatrix::identity(ty.rep_dimension(n));
  const int total = ty.factors(n);
  for (int letter : w.letters()) {
    const int i = std::abs(letter);
    if (i < 1 || i > n - 1) throw std::invalid_argument("letter out of range");
    apply_local(letter > 0 ? r.matrix() : r.inverse(), ty.d, ty.m * (i - 1), total, out);
  }
  return out;
}

bool has_middle_coupling(const GybOperator& r, double tol) {
  const auto& ty = r.type();
  if (ty.k != 3 || ty.m != 1) return false;
  const int d = ty.d;
  const auto& mat = r.matrix();
  for (int j1 = 0; j1 < d; ++j1)
    for (int j2 = 0; j2 < d; ++j2)
      for (int j3 = 0; j3 < d; ++j3)
        for (int i1 = 0; i1 < d; ++i1)
          for (int i2 = 0; i2 < d; ++i2)
            for (int i3 = 0; i3 < d; ++i3) {
              if (i1 == j1 && i3 == j3) continue;
              const std::size_t row = (j1 * d + j2) * d + j3;
              const std::size_t col = (i1 * d + i2) * d + i3;
              if (std::abs(mat(row, col)) > tol) return false;
            }
  return true;
}

namespace {

std::vector<ComplexMatrix> extract_blocks(const ComplexMatrix& mat, int d, double tol) {
  std::vector<ComplexMatrix> blocks;
  blocks.reserve(static_cast<std::size_t>(d * d));
  for (int a = 0; a < d; ++a)
    for (int c = 0; c < d; ++c) {
      ComplexMatrix b(d, d);
      for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) b(j, i) = mat((a * d + j) * d + c, (a * d + i) * d + c);
      blocks.push_back(std::move(b));
    }
  // everything outside the blocks must vanish
  for (std::size_t row = 0; row < mat.rows(); ++row)
    for (std::size_t col = 0; col < mat.cols(); ++col) {
      const auto j1 = row / (d * d), j3 = row % d;
      const auto i1 = col / (d * d), i3 = col % d;
      if ((i1 != j1 || i3 != j3) && std::abs(mat(row, col)) > tol) {
        throw StructureError(
            "operator does not act diagonally on its first and third tensor factors");
      }
    }
  return blocks;
}

}  // namespace

StructuredOperator::StructuredOperator(const GybOperator& r, double tol)
    : d_(r.type().d) {
  if (r.type().k != 3 || r.type().m != 1) {
    throw StructureError("structured application needs a (d,3,1) operator");
  }
  blocks_ = extract_blocks(r.matrix(), d_, tol);
  inverse_blocks_ = extract_blocks(r.inverse(), d_, tol);
}

StructuredOperator::StructuredOperator(const ComplexMatrix& matrix, const ComplexMatrix& inverse,
                                       int d, double tol)
    : d_(d) {
  const std::size_t dim = ipow(d, 3);
  if (matrix.rows() != dim || matrix.cols() != dim || inverse.rows() != dim ||
      inverse.cols() != dim) {
    throw numkit::ShapeError("structured operator must act on V^(x)3");
  }
  blocks_ = extract_blocks(matrix, d_, tol);
  inverse_blocks_ = extract_blocks(inverse, d_, tol);
}

const ComplexMatrix& StructuredOperator::block(int left, int right, bool inverse) const {
  if (left < 0 || left >= d_ || right < 0 || right >= d_) {
    throw std::out_of_range("block digit out of range");
  }
  return (inverse ? inverse_blocks_ : blocks_)[static_cast<std::size_t>(left * d_ + right)];
}

void StructuredOperator::apply_register(int position, std::span<const int> dims,
                                        std::span<const int> fixed, std::span<Complex> v,
                                        bool inverse) const {
  const int nf = static_cast<int>(dims.size());
  if (position < 1 || position + 1 >= nf || dims[position] != d_) {
    throw std::invalid_argument("apply_register: bad target factor");
  }
  std::size_t hi = 1;
  for (int f = 0; f < position - 1; ++f) hi *= static_cast<std::size_t>(dims[f]);
  std::size_t lo = 1;
  for (int f = position + 2; f < nf; ++f) lo *= static_cast<std::size_t>(dims[f]);
  const auto da = static_cast<std::size_t>(dims[position - 1]);
  const auto dc = static_cast<std::size_t>(dims[position + 1]);
  const auto d = static_cast<std::size_t>(d_);
  if (hi * da * d * dc * lo != v.size()) {
    throw numkit::ShapeError("apply_register: vector length does not match the register");
  }
  const std::size_t mid_stride = dc * lo;
  const std::size_t a_stride = d * mid_stride;
  const std::size_t h_stride = da * a_stride;
  const auto& blocks = inverse ? inverse_blocks_ : blocks_;

  std::vector<Complex> x(d);
  for (std::size_t h = 0; h < hi; ++h)
    for (std::size_t a = 0; a < da; ++a) {
      const int a_digit = da == 1 ? fixed[position - 1] : static_cast<int>(a);
      for (std::size_t c = 0; c < dc; ++c) {
        const int c_digit = dc == 1 ? fixed[position + 1] : static_cast<int>(c);
        const ComplexMatrix& b = blocks[static_cast<std::size_t>(a_digit * d_ + c_digit)];
        Complex* base = v.data() + h * h_stride + a * a_stride + c * lo;
        if (d == 2) {
          const Complex b00 = b(0, 0), b01 = b(0, 1), b10 = b(1, 0), b11 = b(1, 1);
          Complex* p0 = base;
          Complex* p1 = base + mid_stride;
          for (std::size_t l = 0; l < lo; ++l) {
            const Complex x0 = p0[l];
            const Complex x1 = p1[l];
            p0[l] = b00 * x0 + b01 * x1;
            p1[l] = b10 * x0 + b11 * x1;
          }
        } else {
          for (std::size_t l = 0; l < lo; ++l) {
            for (std::size_t j = 0; j < d; ++j) x[j] = base[j * mid_stride + l];
            for (std::size_t i = 0; i < d; ++i) {
              Complex s = 0.0;
              for (std::size_t j = 0; j < d; ++j) s += b(i, j) * x[j];
              base[i * mid_stride + l] = s;
            }
          }
        }
      }
    }
}

void StructuredOperator::apply(int position, int strands, std::span<Complex> v,
                               bool inverse) const {
  if (position < 1 || position > strands - 1) {
    throw std::invalid_argument("generator position " + std::to_string(position) +
                                " out of range for " + std::to_string(strands) + " strands");
  }
  const std::vector<int> dims(static_cast<std::size_t>(strands + 1), d_);
  const std::vector<int> fixed(dims.size(), 0);
  apply_register(position, dims, fixed, v, inverse);
}

void StructuredOperator::apply_letter(int letter, int strands, std::span<Complex> v) const {
  apply(std::abs(letter), strands, v, letter < 0);
}

std::vector<Complex> apply_structured(const StructuredOperator& s, int position, int strands,
                                      std::span<const Complex> v) {
  std::vector<Complex> out(v.begin(), v.end());
  s.apply(position, strands, out);
  return out;
}

Complex diag_channel_sum(const GybOperator& r, int i, int j) {
  const auto& ty = r.type();
  if (ty.k != 3 || ty.m != 1) throw std::invalid_argument("channel sums need a (d,3,1) operator");
  const int d = ty.d;
  if (i < 0 || i >= d || j < 0 || j >= d) {
    throw std::out_of_range("channel index out of range");
  }
  Complex s = 0.0;
  for (int k = 0; k < d; ++k) {
    const std::size_t idx = (i * d + j) * d + k;
    s += r.matrix()(idx, idx);
  }
  return s;
}

namespace {

// Max over entries [(j1,j2),(i1,i2)] with j2 == i2 of |Sp_{3,1}(f) - c Id|.
double channel_deviation(const ComplexMatrix& f, int d, Complex c) {
  const ComplexMatrix sp = numkit::partial_trace_last(f, d, 1);
  double dev = 0.0;
  for (int j1 = 0; j1 < d; ++j1)
    for (int i1 = 0; i1 < d; ++i1)
      for (int x = 0; x < d; ++x) {
        const Complex expect = i1 == j1 ? c : Complex{};
        dev = std::max(dev, std::abs(sp(j1 * d + x, i1 * d + x) - expect));
      }
  return dev;
}

// Orthonormal basis (under the trace inner product) of the algebra generated
// by the braid generators on n strands.
std::vector<ComplexMatrix> algebra_basis(const GybOperator& r, int n) {
  const auto& ty = r.type();
  const std::size_t dim = ty.rep_dimension(n);
  std::vector<ComplexMatrix> gens;
  for (int i = 1; i <= n - 1; ++i) gens.push_back(generator_matrix(r, i, n));

  std::vector<ComplexMatrix> basis;
  auto try_add = [&](ComplexMatrix cand) -> bool {
    const double norm0 = cand.frobenius_norm();
    if (norm0 == 0.0) return false;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) {
        const Complex c = numkit::trace_inner(b, cand);
        auto ce = cand.entries();
        auto be = b.entries();
        for (std::size_t t = 0; t < ce.size(); ++t) ce[t] -= c * be[t];
      }
    const double norm = cand.frobenius_norm();
    if (norm <= 1e-9 * norm0) return false;
    cand *= 1.0 / norm;
    basis.push_back(std::move(cand));
    return true;
  };

  try_add(ComplexMatrix::identity(dim));
  std::size_t frontier_begin = 0;
  while (frontier_begin < basis.size()) {
    const std::size_t frontier_end = basis.size();
    for (std::size_t idx = frontier_begin; idx < frontier_end; ++idx)
      for (const auto& g : gens) try_add(g * basis[idx]);
    frontier_begin = frontier_end;
    if (basis.size() >= dim * dim) break;
  }
  return basis;
}

double projection_norm(const std::vector<ComplexMatrix>& basis, const ComplexMatrix& t) {
  double s = 0.0;
  for (const auto& b : basis) s += std::norm(numkit::trace_inner(b, t));
  return std::sqrt(s);
}

}  // namespace

EnhancementReport check_enhancement_spanning(const EgybOperator& s, int n_max,
                                             const ToleranceConfig& tol) {
  if (n_max < 3) throw std::invalid_argument("n_max must be at least 3");
  const auto& ty = s.op().type();
  const auto& enh = s.enh();
  EnhancementReport rep;
  rep.method = EnhancementReport::Method::SpanningSet;
  rep.commutation_residual = s.commutation_residual();

  const ComplexMatrix muk = numkit::kron_power(enh.mu, ty.k);
  const ComplexMatrix mukm = numkit::kron_power(enh.mu, ty.k - ty.m);
  const ComplexMatrix sp = numkit::partial_trace_last(s.op().matrix() * muk, ty.d, ty.m);
  const ComplexMatrix sp_inv = numkit::partial_trace_last(s.op().inverse() * muk, ty.d, ty.m);
  const ComplexMatrix core = sp - (enh.alpha * enh.beta) * mukm;
  const ComplexMatrix core_inv = sp_inv - (enh.beta / enh.alpha) * mukm;

  double scale = std::max(sp.frobenius_norm(), sp_inv.frobenius_norm());
  std::ostringstream detail;
  for (int n = 3; n <= n_max; ++n) {
    const auto basis = algebra_basis(s.op(), n);
    rep.algebra_dimensions.emplace_back(n, basis.size());
    const ComplexMatrix pad = numkit::kron_power(enh.mu, ty.m * (n - 1));
    const double pad_norm = pad.frobenius_norm();
    const double r1 = projection_norm(basis, kron(pad, core));
    const double r2 = projection_norm(basis, kron(pad, core_inv));
    rep.residual = std::max(rep.residual, r1);
    rep.inverse_residual = std::max(rep.inverse_residual, r2);
    rep.tolerance = std::max(rep.tolerance, tol.bound(scale * pad_norm));
    detail << "n=" << n << " algebra dim " << basis.size() << " residuals " << r1 << ", " << r2
           << "; ";
  }
  rep.passed = rep.residual <= rep.tolerance && rep.inverse_residual <= rep.tolerance;
  rep.detail = detail.str();
  return rep;
}

EnhancementReport check_enhancement(const EgybOperator& s, int n_max, const ToleranceConfig& tol) {
  if (n_max < 3) throw std::invalid_argument("n_max must be at least 3");
  const auto& op = s.op();
  if (!(s.mu_is_identity() && has_middle_coupling(op))) {
    return check_enhancement_spanning(s, n_max, tol);
  }
  const auto& enh = s.enh();
  const int d = op.type().d;
  EnhancementReport rep;
  rep.method = EnhancementReport::Method::ChannelSum;
  rep.commutation_residual = s.commutation_residual();
  rep.residual = channel_deviation(op.matrix(), d, enh.alpha * enh.beta);
  rep.inverse_residual = channel_deviation(op.inverse(), d, enh.beta / enh.alpha);
  rep.tolerance = tol.bound(std::max(std::abs(enh.alpha * enh.beta), 1.0));
  rep.passed = rep.residual <= rep.tolerance && rep.inverse_residual <= rep.tolerance;
  std::ostringstream detail;
  detail << "channel sums:";
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) detail << " (" << i << "," << j << ")=" << numkit::to_string(diag_channel_sum(op, i, j), 15);
  rep.detail = detail.str();
  return rep;
}

MinPolyReport min_poly_check(int N, double tol, double quadratic_floor) {
  require_odd_n(N);
  const ComplexMatrix r = -1.0 * r_nu(N, 1).matrix();
  const ComplexMatrix id = ComplexMatrix::identity(8);
  const double t = std::numbers::pi / N;
  const Complex e1 = std::polar(1.0, t);
  const Complex em1 = std::polar(1.0, -t);
  const Complex e2 = std::polar(1.0, 2 * t);
  const ComplexMatrix r2 = r * r;
  const ComplexMatrix r3 = r2 * r;
  const ComplexMatrix cubic = r3 + em1 * r2 - e2 * r - e1 * id;

  MinPolyReport rep;
  rep.cubic_residual = cubic.max_abs();
  const Complex roots[3] = {e1, -e1, -em1};
  rep.min_quadratic_residual = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      const ComplexMatrix q = (r - roots[a] * id) * (r - roots[b] * id);
      rep.min_quadratic_residual = std::min(rep.min_quadratic_residual, q.max_abs());
    }
  rep.passed = rep.cubic_residual <= tol && rep.min_quadratic_residual > quadratic_floor;
  return rep;
}

SpectrumReport spectrum_check(const GybOperator& r, std::span<const Complex> expected,
                              const ToleranceConfig& tol) {
  const auto projectors = numkit::spectral_projectors(r.matrix(), expected, tol);
  SpectrumReport rep;
  rep.eigenvalues.assign(expected.begin(), expected.end());
  for (const auto& p : projectors) {
    const Complex tr = p.trace();
    const double rounded = std::round(tr.real());
    rep.rounding_residual = std::max(rep.rounding_residual, std::abs(tr - Complex{rounded, 0.0}));
    rep.multiplicities.push_back(static_cast<int>(rounded));
  }
  if (rep.rounding_residual > 1e-6) {
    throw numkit::SpectrumMismatchError("projector traces are not integral (residual " +
                                        std::to_string(rep.rounding_residual) + ")");
  }
  return rep;
}

namespace {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw FormatError("invalid number '" + std::string(s) + "'");
  }
  return x;
}

}  // namespace

void write_operator(std::ostream& out, const GybOperator& r) {
  const auto& ty = r.type();
  out << "gyb-operator\n";
  out << "type " << ty.d << ' ' << ty.k << ' ' << ty.m << '\n';
  const auto& m = r.matrix();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << '(' << format_double(m(i, j).real()) << ',' << format_double(m(i, j).imag()) << ')';
    }
    out << '\n';
  }
}

GybOperator read_operator(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    lines.push_back(line);
  }
  if (lines.size() < 2 || lines[0].rfind("gyb-operator", 0) != 0) {
    throw FormatError("missing 'gyb-operator' header");
  }
  std::istringstream ts(lines[1]);
  std::string kw;
  GybType ty;
  if (!(ts >> kw >> ty.d >> ty.k >> ty.m) || kw != "type") {
    throw FormatError("expected 'type <d> <k> <m>'");
  }
  ty.validate();
  const std::size_t dim = ipow(ty.d, ty.k);
  if (lines.size() != dim + 2) {
    throw FormatError("expected " + std::to_string(dim) + " matrix rows, found " +
                      std::to_string(lines.size() - 2));
  }
  std::vector<Complex> entries;
  entries.reserve(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    std::istringstream rs(lines[i + 2]);
    std::string tok;
    std::size_t count = 0;
    while (rs >> tok) {
      if (tok.size() < 5 || tok.front() != '(' || tok.back() != ')') {
        throw FormatError("expected '(re,im)' token, got '" + tok + "'");
      }
      const auto comma = tok.find(',');
      if (comma == std::string::npos) throw FormatError("missing ',' in '" + tok + "'");
      const std::string_view body(tok);
      entries.emplace_back(parse_double(body.substr(1, comma - 1)),
                           parse_double(body.substr(comma + 1, tok.size() - comma - 2)));
      ++count;
    }
    if (count != dim) {
      throw FormatError("row " + std::to_string(i) + " has " + std::to_string(count) +
                        " entries, expected " + std::to_string(dim));
    }
  }
  return GybOperator(ty, ComplexMatrix(dim, dim, std::move(entries)));
}

}  // namespace gyblink::core
