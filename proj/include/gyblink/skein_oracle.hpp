#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gyblink/braid.hpp"
#include "gyblink/numkit.hpp"

namespace gyblink::skein {

using numkit::Complex;

class DiagramError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class CrossingBoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Edges in counterclockwise order starting at the south-west corner
/// (SW, SE, NE, NW). The strand through slots 0 and 2 is over when
/// `first_pair_over`, otherwise the strand through slots 1 and 3 is.
struct Crossing {
  std::array<int, 4> edges{};
  bool first_pair_over = true;

  friend bool operator==(const Crossing&, const Crossing&) = default;
};

/// Oriented input convention: slots 0 and 1 carry the incoming edges, so a
/// crossing is positive exactly when `first_pair_over`.
struct PlanarLinkDiagram {
  std::vector<Crossing> crossings;
  int free_loops = 0;

  std::size_t crossing_count() const { return crossings.size(); }
  friend bool operator==(const PlanarLinkDiagram&, const PlanarLinkDiagram&) = default;
};

/// Every edge appears exactly twice; the edge data is a planar 4-valent map.
void validate_unoriented(const PlanarLinkDiagram& d);
/// validate_unoriented plus: every edge appears once in slots {0,1} and once in {2,3}.
void validate(const PlanarLinkDiagram& d);

/// Components, counting free loops.
int component_count(const PlanarLinkDiagram& d);
/// Sum of crossing signs under the oriented input convention.
int oriented_writhe(const PlanarLinkDiagram& d);

PlanarLinkDiagram pd_from_braid(const braid::BraidWord& w);
/// Switches every crossing.
PlanarLinkDiagram mirror(const PlanarLinkDiagram& d);
PlanarLinkDiagram disjoint_union(const PlanarLinkDiagram& a, const PlanarLinkDiagram& b);

/// Text format: one crossing per line `a b c d s` with s = +1 when the strand
/// a-c is over, -1 otherwise; optional `loops <k>`; '#' starts a comment.
PlanarLinkDiagram read_pd(std::istream& in);
PlanarLinkDiagram load_pd(const std::string& path);
void write_pd(std::ostream& out, const PlanarLinkDiagram& d);

struct DubrovnikParams {
  Complex a{1.0, 0.0};
  Complex z{1.0, 0.0};

  /// (a - a^{-1}) / z + 1, the value of the 2-component unlink.
  Complex delta() const;
  void validate() const;
};

enum class Selection { Forward, Reverse };

struct OracleOptions {
  std::size_t max_crossings = 10;
  /// Base points: Forward uses the smallest edge id of each component and
  /// orders components by it; Reverse the largest.
  Selection selection = Selection::Forward;
};

/// Regular-isotopy value: P(D+) - P(D-) = z (P(D0) - P(Dinf)),
/// P(kink) = a^{+-1} P, P(unknot) = 1.
Complex dubrovnik_regular(const PlanarLinkDiagram& d, const DubrovnikParams& p,
                          const OracleOptions& opts = {});

/// a^{-w(D)} P(D) with w the oriented writhe; needs an oriented diagram.
Complex dubrovnik(const PlanarLinkDiagram& d, const DubrovnikParams& p,
                  const OracleOptions& opts = {});

/// z = sign 2i sin(pi/N), a = alpha.
DubrovnikParams specialization_params(int N, int sign, Complex alpha);

struct OracleRow {
  std::string name;
  Complex artifact;
  Complex oracle_plus;
  Complex oracle_minus;
  double deviation_plus = 0.0;
  double deviation_minus = 0.0;
  /// deviation at the sign used for the comparison
  double deviation = 0.0;
  bool matched = false;
};

struct CompareReport {
  int N = 0;
  /// sign used: calibrated on the trefoil unless forced; 0 when calibration failed
  int sign = 0;
  bool forced = false;
  Complex alpha;
  Complex delta;  // oracle delta at `sign`
  /// artifact value of the 2-component unlink divided by that of the unknot
  Complex artifact_unlink_factor;
  std::vector<OracleRow> rows;
  double max_deviation = 0.0;
  /// the catalog agrees at `sign` and fails at the opposite sign
  bool exactly_one_sign = false;
  bool passed = false;
};

/// Artifact side supplied by the caller: remark54-normalized invariant per word.
struct ArtifactSide {
  Complex alpha;
  std::function<Complex(const braid::BraidWord&)> invariant;
};

CompareReport compare_invariants(int N, const std::vector<braid::LinkSpec>& links,
                                 const ArtifactSide& artifact, double tol = 1e-8,
                                 std::optional<int> forced_sign = std::nullopt,
                                 const OracleOptions& opts = {});

/// Same comparison for a user diagram against a precomputed artifact value.
OracleRow compare_diagram(const std::string& name, const PlanarLinkDiagram& d, Complex artifact,
                          int N, Complex alpha, int sign, double tol = 1e-8,
                          const OracleOptions& opts = {});

}  // namespace gyblink::skein
