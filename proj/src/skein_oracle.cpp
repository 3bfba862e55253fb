#include "gyblink/skein_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>

namespace gyblink::skein {

namespace {

struct Dart {
  int crossing;
  int slot;
};

/// edge id -> its two darts
std::map<int, std::vector<Dart>> occurrences(const std::vector<Crossing>& cs) {
  std::map<int, std::vector<Dart>> occ;
  for (int c = 0; c < static_cast<int>(cs.size()); ++c)
    for (int s = 0; s < 4; ++s) occ[cs[c].edges[s]].push_back({c, s});
  return occ;
}

Dart other_end(const std::map<int, std::vector<Dart>>& occ, const std::vector<Crossing>& cs,
               Dart d) {
  const auto& v = occ.at(cs[d.crossing].edges[d.slot]);
  return (v[0].crossing == d.crossing && v[0].slot == d.slot) ? v[1] : v[0];
}

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

void validate_unoriented(const PlanarLinkDiagram& d) {
  if (d.free_loops < 0) throw DiagramError("negative free loop count");
  const auto& cs = d.crossings;
  const auto occ = occurrences(cs);
  for (const auto& [edge, darts] : occ) {
    if (darts.size() != 2) {
      throw DiagramError("edge " + std::to_string(edge) + " appears " +
                         std::to_string(darts.size()) + " times; expected exactly 2");
    }
  }
  const int v = static_cast<int>(cs.size());
  if (v == 0) return;
  // faces of the 4-valent map are the orbits of (rotate after crossing an edge)
  std::vector<bool> seen(static_cast<std::size_t>(4 * v), false);
  int faces = 0;
  for (int start = 0; start < 4 * v; ++start) {
    if (seen[start]) continue;
    ++faces;
    int cur = start;
    while (!seen[cur]) {
      seen[cur] = true;
      const Dart o = other_end(occ, cs, {cur / 4, cur % 4});
      cur = o.crossing * 4 + (o.slot + 1) % 4;
    }
  }
  std::vector<int> parent(static_cast<std::size_t>(v));
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& [edge, darts] : occ) {
    parent[find_root(parent, darts[0].crossing)] = find_root(parent, darts[1].crossing);
  }
  int comps = 0;
  for (int c = 0; c < v; ++c)
    if (find_root(parent, c) == c) ++comps;
  if (v - 2 * v + faces != 2 * comps) {
    throw DiagramError("edge data does not describe a planar diagram (Euler characteristic " +
                       std::to_string(v - 2 * v + faces) + " for " + std::to_string(comps) +
                       " connected pieces)");
  }
}

void validate(const PlanarLinkDiagram& d) {
  validate_unoriented(d);
  std::map<int, std::pair<int, int>> in_out;
  for (const auto& c : d.crossings) {
    ++in_out[c.edges[0]].first;
    ++in_out[c.edges[1]].first;
    ++in_out[c.edges[2]].second;
    ++in_out[c.edges[3]].second;
  }
  for (const auto& [edge, io] : in_out) {
    if (io.first != 1 || io.second != 1) {
      throw DiagramError("edge " + std::to_string(edge) +
                         " must enter one crossing (slot 0/1) and leave another (slot 2/3)");
    }
  }
}

int component_count(const PlanarLinkDiagram& d) {
  const auto& cs = d.crossings;
  const auto occ = occurrences(cs);
  std::map<int, bool> used;
  int comps = 0;
  for (const auto& [edge, darts] : occ) {
    if (used[edge]) continue;
    ++comps;
    used[edge] = true;
    Dart cur = darts[0];
    while (true) {
      const Dart exit{cur.crossing, (cur.slot + 2) % 4};
      const int e = cs[exit.crossing].edges[exit.slot];
      if (used[e]) break;
      used[e] = true;
      cur = other_end(occ, cs, exit);
    }
  }
  return comps + d.free_loops;
}

int oriented_writhe(const PlanarLinkDiagram& d) {
  int w = 0;
  for (const auto& c : d.crossings) w += c.first_pair_over ? 1 : -1;
  return w;
}

PlanarLinkDiagram pd_from_braid(const braid::BraidWord& w) {
  const int n = w.strands();
  std::vector<int> cur(static_cast<std::size_t>(n));
  std::iota(cur.begin(), cur.end(), 0);
  int next_id = n;
  PlanarLinkDiagram d;
  for (int l : w.letters()) {
    const int i = std::abs(l) - 1;
    const int nw = next_id++;
    const int ne = next_id++;
    d.crossings.push_back({{cur[i], cur[i + 1], ne, nw}, l > 0});
    cur[i] = nw;
    cur[i + 1] = ne;
  }
  std::map<int, int> rename;
  for (int p = 0; p < n; ++p) {
    if (cur[p] == p) {
      ++d.free_loops;
    } else {
      rename[cur[p]] = p;
    }
  }
  for (auto& c : d.crossings)
    for (int& e : c.edges)
      if (auto it = rename.find(e); it != rename.end()) e = it->second;
  return d;
}

PlanarLinkDiagram mirror(const PlanarLinkDiagram& d) {
  PlanarLinkDiagram m = d;
  for (auto& c : m.crossings) c.first_pair_over = !c.first_pair_over;
  return m;
}

PlanarLinkDiagram disjoint_union(const PlanarLinkDiagram& a, const PlanarLinkDiagram& b) {
  int offset = 0;
  for (const auto& c : a.crossings)
    for (int e : c.edges) offset = std::max(offset, e + 1);
  PlanarLinkDiagram u = a;
  for (auto c : b.crossings) {
    for (int& e : c.edges) e += offset;
    u.crossings.push_back(c);
  }
  u.free_loops += b.free_loops;
  return u;
}

PlanarLinkDiagram read_pd(std::istream& in) {
  PlanarLinkDiagram d;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    const auto fail = [&](const std::string& why) {
      throw DiagramError("PD line " + std::to_string(lineno) + ": " + why);
    };
    if (first == "loops") {
      int k = -1;
      if (!(ls >> k) || k < 0) fail("expected 'loops <count>'");
      d.free_loops += k;
    } else {
      Crossing c;
      std::istringstream all(line);
      int s = 0;
      if (!(all >> c.edges[0] >> c.edges[1] >> c.edges[2] >> c.edges[3] >> s)) {
        fail("expected four edge ids and a sign");
      }
      if (s != 1 && s != -1) fail("sign must be +1 or -1");
      std::string extra;
      if (all >> extra) fail("trailing data '" + extra + "'");
      c.first_pair_over = s == 1;
      d.crossings.push_back(c);
    }
  }
  validate(d);
  return d;
}

PlanarLinkDiagram load_pd(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open PD file '" + path + "'");
  return read_pd(in);
}

void write_pd(std::ostream& out, const PlanarLinkDiagram& d) {
  for (const auto& c : d.crossings) {
    out << c.edges[0] << ' ' << c.edges[1] << ' ' << c.edges[2] << ' ' << c.edges[3] << ' '
        << (c.first_pair_over ? "+1" : "-1") << '\n';
  }
  if (d.free_loops) out << "loops " << d.free_loops << '\n';
}

Complex DubrovnikParams::delta() const { return (a - 1.0 / a) / z + 1.0; }

void DubrovnikParams::validate() const {
  if (a == Complex{} || z == Complex{}) throw std::invalid_argument("a and z must be nonzero");
}

namespace {

class Evaluator {
 public:
  Evaluator(const DubrovnikParams& p, Selection sel) : p_(p), sel_(sel), delta_(p.delta()) {}

  /// value of crossings plus `loops` extra free circles
  Complex eval(const std::vector<Crossing>& cs, int loops) {
    if (cs.empty()) {
      if (loops == 0) throw DiagramError("empty diagram");
      return numkit::cpow(delta_, loops - 1);
    }
    return numkit::cpow(delta_, loops) * core(cs);
  }

 private:
  Complex core(const std::vector<Crossing>& cs) {
    const auto key = encode(cs);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    Complex value;
    int leaf_writhe = 0;
    int comps = 0;
    const int bad = first_bad(cs, leaf_writhe, comps);
    if (bad < 0) {
      value = numkit::cpow(p_.a, leaf_writhe) * numkit::cpow(delta_, comps - 1);
    } else {
      std::vector<Crossing> switched = cs;
      switched[bad].first_pair_over = !switched[bad].first_pair_over;
      int loops03 = 0, loops01 = 0;
      const auto s03 = smooth(cs, bad, {0, 3}, {1, 2}, loops03);
      const auto s01 = smooth(cs, bad, {0, 1}, {2, 3}, loops01);
      const Complex diff = eval(s03, loops03) - eval(s01, loops01);
      const Complex sw = core(switched);
      value = cs[bad].first_pair_over ? sw + p_.z * diff : sw - p_.z * diff;
    }
    memo_.emplace(key, value);
    return value;
  }

  static std::vector<int> encode(const std::vector<Crossing>& cs) {
    std::map<int, int> relabel;
    std::vector<int> key;
    key.reserve(cs.size() * 5);
    for (const auto& c : cs) {
      for (int e : c.edges) {
        auto [it, inserted] = relabel.emplace(e, static_cast<int>(relabel.size()));
        key.push_back(it->second);
      }
      key.push_back(c.first_pair_over ? 1 : 0);
    }
    return key;
  }

  static std::vector<Crossing> smooth(const std::vector<Crossing>& cs, int at,
                                      std::pair<int, int> j1, std::pair<int, int> j2,
                                      int& loops) {
    const auto& x = cs[at];
    std::vector<Crossing> out;
    out.reserve(cs.size() - 1);
    for (int c = 0; c < static_cast<int>(cs.size()); ++c)
      if (c != at) out.push_back(cs[c]);
    std::pair<int, int> pending{x.edges[j2.first], x.edges[j2.second]};
    auto join = [&](int p, int q) {
      if (p == q) {
        ++loops;
        return;
      }
      for (auto& c : out)
        for (int& e : c.edges)
          if (e == q) e = p;
      if (pending.first == q) pending.first = p;
      if (pending.second == q) pending.second = p;
    };
    join(x.edges[j1.first], x.edges[j1.second]);
    join(pending.first, pending.second);
    return out;
  }

  /// Walks components from their base points; returns the first crossing met
  /// first on its under strand, or -1 with the writhe and component count.
  int first_bad(const std::vector<Crossing>& cs, int& writhe, int& comps) const {
    const auto occ = occurrences(cs);
    const int v = static_cast<int>(cs.size());
    std::vector<int> over_entry(v, -1), under_entry(v, -1);
    std::map<int, bool> used;
    comps = 0;
    while (true) {
      std::optional<int> base;
      for (const auto& [edge, darts] : occ) {
        if (used[edge]) continue;
        if (!base || (sel_ == Selection::Forward ? edge < *base : edge > *base)) base = edge;
      }
      if (!base) break;
      ++comps;
      const auto& darts = occ.at(*base);
      Dart cur = sel_ == Selection::Forward ? darts[0] : darts[1];
      used[*base] = true;
      while (true) {
        const auto& c = cs[cur.crossing];
        const bool over = ((cur.slot % 2) == 0) == c.first_pair_over;
        if (over_entry[cur.crossing] < 0 && under_entry[cur.crossing] < 0 && !over) {
          return cur.crossing;
        }
        (over ? over_entry : under_entry)[cur.crossing] = cur.slot;
        const Dart exit{cur.crossing, (cur.slot + 2) % 4};
        const int e = c.edges[exit.slot];
        if (used[e]) break;
        used[e] = true;
        cur = other_end(occ, cs, exit);
      }
    }
    static constexpr int pos[4][2] = {{-1, -1}, {1, -1}, {1, 1}, {-1, 1}};
    writhe = 0;
    for (int c = 0; c < v; ++c) {
      const int* po = pos[over_entry[c]];
      const int* pu = pos[under_entry[c]];
      // direction of travel is -pos(entry slot); the two sign flips cancel
      const int cross = po[0] * pu[1] - po[1] * pu[0];
      writhe += cross > 0 ? 1 : -1;
    }
    return -1;
  }

  DubrovnikParams p_;
  Selection sel_;
  Complex delta_;
  std::map<std::vector<int>, Complex> memo_;
};

}  // namespace

Complex dubrovnik_regular(const PlanarLinkDiagram& d, const DubrovnikParams& p,
                          const OracleOptions& opts) {
  p.validate();
  if (d.crossing_count() > opts.max_crossings) {
    throw CrossingBoundError("diagram has " + std::to_string(d.crossing_count()) +
                             " crossings; the oracle bound is " +
                             std::to_string(opts.max_crossings));
  }
  validate_unoriented(d);
  Evaluator ev(p, opts.selection);
  return ev.eval(d.crossings, d.free_loops);
}

Complex dubrovnik(const PlanarLinkDiagram& d, const DubrovnikParams& p,
                  const OracleOptions& opts) {
  validate(d);
  return numkit::cpow(p.a, -oriented_writhe(d)) * dubrovnik_regular(d, p, opts);
}

DubrovnikParams specialization_params(int N, int sign, Complex alpha) {
  if (N < 3 || N % 2 == 0) {
    throw std::invalid_argument("N must be an odd integer >= 3 (got " + std::to_string(N) + ")");
  }
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  return {alpha, Complex(0.0, 2.0 * sign * std::sin(std::numbers::pi / N))};
}

OracleRow compare_diagram(const std::string& name, const PlanarLinkDiagram& d, Complex artifact,
                          int N, Complex alpha, int sign, double tol, const OracleOptions& opts) {
  OracleRow row;
  row.name = name;
  row.artifact = artifact;
  row.oracle_plus = dubrovnik(d, specialization_params(N, 1, alpha), opts);
  row.oracle_minus = dubrovnik(d, specialization_params(N, -1, alpha), opts);
  row.deviation_plus = std::abs(artifact - row.oracle_plus);
  row.deviation_minus = std::abs(artifact - row.oracle_minus);
  row.deviation = sign > 0 ? row.deviation_plus : row.deviation_minus;
  row.matched = row.deviation <= tol;
  return row;
}

CompareReport compare_invariants(int N, const std::vector<braid::LinkSpec>& links,
                                 const ArtifactSide& artifact, double tol,
                                 std::optional<int> forced_sign, const OracleOptions& opts) {
  CompareReport rep;
  rep.N = N;
  rep.alpha = artifact.alpha;
  if (forced_sign) {
    if (*forced_sign != 1 && *forced_sign != -1) {
      throw std::invalid_argument("forced sign must be +1 or -1");
    }
    rep.sign = *forced_sign;
    rep.forced = true;
  } else {
    const braid::BraidWord trefoil(2, {1, 1, 1});
    const auto cal = compare_diagram("trefoil", pd_from_braid(trefoil),
                                     artifact.invariant(trefoil), N, artifact.alpha, 1, tol, opts);
    if (cal.deviation_plus <= tol && cal.deviation_minus > tol) rep.sign = 1;
    if (cal.deviation_minus <= tol && cal.deviation_plus > tol) rep.sign = -1;
  }
  rep.artifact_unlink_factor =
      artifact.invariant(braid::BraidWord(2)) / artifact.invariant(braid::BraidWord(1));
  if (rep.sign != 0) rep.delta = specialization_params(N, rep.sign, artifact.alpha).delta();

  bool all_at_sign = rep.sign != 0;
  bool all_at_other = rep.sign != 0;
  for (const auto& spec : links) {
    const std::string name = spec.name.value_or(braid::format_braid(spec.word));
    auto row = compare_diagram(name, pd_from_braid(spec.word), artifact.invariant(spec.word), N,
                               artifact.alpha, rep.sign == 0 ? 1 : rep.sign, tol, opts);
    if (rep.sign == 0) {
      row.deviation = std::min(row.deviation_plus, row.deviation_minus);
      row.matched = false;
    }
    const double other = rep.sign > 0 ? row.deviation_minus : row.deviation_plus;
    all_at_sign = all_at_sign && row.matched;
    all_at_other = all_at_other && other <= tol;
    rep.max_deviation = std::max(rep.max_deviation, row.deviation);
    rep.rows.push_back(std::move(row));
  }
  rep.exactly_one_sign = all_at_sign && !all_at_other;
  rep.passed = all_at_sign;
  return rep;
}

}  // namespace gyblink::skein
