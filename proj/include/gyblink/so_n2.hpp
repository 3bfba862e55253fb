#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gyblink/gybcore.hpp"

namespace gyblink::so_n2 {

using numkit::Complex;
using numkit::ComplexMatrix;

/// Simple objects of SO(N)_2, N = 2r + 1.
struct Label {
  enum class Tag { Unit, Z, X, Eps, EpsPrime };
  Tag tag = Tag::Unit;
  int index = 0;  // 1..r for X, 0 otherwise

  static Label unit() { return {Tag::Unit, 0}; }
  static Label z() { return {Tag::Z, 0}; }
  static Label x(int i) { return {Tag::X, i}; }
  static Label eps() { return {Tag::Eps, 0}; }
  static Label eps_prime() { return {Tag::EpsPrime, 0}; }

  friend bool operator==(const Label&, const Label&) = default;
  /// Order of the simple-object listing: Unit, Z, X_1..X_r, Eps, EpsPrime.
  friend bool operator<(const Label& a, const Label& b) {
    return a.tag != b.tag ? a.tag < b.tag : a.index < b.index;
  }
};

/// Throws std::invalid_argument for N not odd >= 3.
int rank_of(int N);
void validate(const Label& l, int N);
std::string to_string(const Label& l);
/// Accepts "1"/"unit", "Z", "X1".."Xr", "eps", "eps'"/"epsprime" (case-insensitive).
Label parse_label(std::string_view text, int N);
/// All simple objects in listing order.
std::vector<Label> simple_objects(int N);

/// Summands of a (x) b, sorted in listing order; the decomposition is multiplicity free.
std::vector<Label> fusion(const Label& a, const Label& b, int N);

/// X (x) l decomposes as the direct sum of L for every l in L.
bool check_gybe_object(const Label& x, const std::vector<Label>& L, int N);

struct CategoryData {
  int N = 0;
  int r = 0;
  /// braiding eigenvalues of c_{X1,X1} on the channels Unit, Z and X_{min(2, 2r-1)}
  Complex r_unit;
  Complex r_z;
  Complex r_x2;
  Label x2_channel;
  Complex twist;
  /// F^{X_i, X1, X1}_{X_j} indexed [i][j], 0 = Eps, 1 = EpsPrime
  std::array<std::array<ComplexMatrix, 2>, 2> f;

  Complex r_symbol(const Label& channel) const;
};

CategoryData category_data(int N);

/// Standard assembles F^{-1} diag(R) F; Mirror uses the complex-conjugate
/// braiding, F diag(conj R) F^{-1}.
enum class Chirality { Standard, Mirror };

/// Mirror for N = 3, Standard otherwise.
Chirality default_chirality(int N);
std::string to_string(Chirality c);

/// The 2x2 middle-factor block of R_{X1,L} for outer labels (i1, i3) in {Eps, EpsPrime}.
ComplexMatrix channel_block(const CategoryData& data, const Label& i1, const Label& i3,
                            Chirality chirality);

/// Channels X_k of X1 (x) X1 with i3 in i1 (x) X_k, in listing order.
std::vector<Label> admissible_channels(const Label& i1, const Label& i3, int N);

core::GybOperator build_gyb(int N, std::optional<Chirality> chirality = std::nullopt);

struct RnuComparison {
  int N = 0;
  int sign = 0;  // +1 / -1 overall factor of the best candidate
  int nu = 0;
  double deviation = 0.0;
  bool matched = false;
  /// deviation for each candidate (sign, nu) in order (+,+1), (+,-1), (-,+1), (-,-1)
  std::array<double, 4> candidate_deviations{};
};

/// Compares build_gyb(N) with +-R_nu(N) for both nu.
RnuComparison compare_with_rnu(int N, std::optional<Chirality> chirality = std::nullopt,
                               double tol = 1e-12);

/// Which of theta, theta^{-1}, -theta, -theta^{-1} (theta = twist of X1)
/// a given constant is, if any.
enum class TwistRelation { Theta, ThetaInverse, MinusTheta, MinusThetaInverse, None };
TwistRelation classify_against_twist(Complex alpha, int N, double tol = 1e-10);
std::string to_string(TwistRelation t);

}  // namespace gyblink::so_n2
