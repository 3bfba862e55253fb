#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

#include "gyblink/braid.hpp"
#include "gyblink/gybcore.hpp"
#include "gyblink/linkinv.hpp"
#include "gyblink/numkit.hpp"
#include "gyblink/skein_oracle.hpp"
#include "gyblink/so_n2.hpp"

#ifndef GYBLINK_DEFAULT_CATALOG
#define GYBLINK_DEFAULT_CATALOG "data/catalog.txt"
#endif

namespace {

using gyblink::numkit::Complex;
using json = nlohmann::ordered_json;
namespace braid = gyblink::braid;
namespace core = gyblink::core;
namespace linkinv = gyblink::linkinv;
namespace skein = gyblink::skein;
namespace so_n2 = gyblink::so_n2;

constexpr int kUsageError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { Human, Structured };

struct Context {
  double tol = 1e-10;
  Format format = Format::Human;
  std::ostream& out = std::cout;
  bool ok = true;

  void record(const json& j, bool passed) {
    ok = ok && passed;
    if (format == Format::Structured) out << j.dump() << '\n';
  }
  bool human() const { return format == Format::Human; }
};

json cjson(Complex z) { return json::array({z.real(), z.imag()}); }

std::string cstr(Complex z, int precision = 12) {
  return gyblink::numkit::to_string(z, precision);
}

std::string sci(double x) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(2) << x;
  return s.str();
}

int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("invalid " + what + " '" + s + "'");
  }
}

/// "5", "3,5,7" or "3..13"; with `odd` every value must be odd >= 3.
std::vector<int> parse_values(const std::string& text, bool odd, const std::string& what) {
  std::vector<int> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const int lo = parse_int(text.substr(0, dots), what);
    const int hi = parse_int(text.substr(dots + 2), what);
    if (lo > hi) throw UsageError(what + " range must be ascending");
    if (odd && (lo % 2 == 0 || hi % 2 == 0)) throw UsageError(what + " range bounds must be odd");
    for (int v = lo; v <= hi; v += odd ? 2 : 1) out.push_back(v);
  } else {
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_int(tok, what));
  }
  if (out.empty()) throw UsageError("empty " + what + " list");
  for (int v : out) {
    if (odd && (v < 3 || v % 2 == 0)) {
      throw UsageError(what + " must be odd and >= 3 (got " + std::to_string(v) + ")");
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

braid::Catalog load_default_catalog() {
  std::string path = GYBLINK_DEFAULT_CATALOG;
  if (const char* env = std::getenv("GYBLINK_CATALOG"); env && *env) path = env;
  std::ifstream probe(path);
  if (!probe) return braid::builtin_catalog();
  return braid::read_catalog(probe);
}

// ---------------------------------------------------------------- verify

void verify_one(Context& ctx, int N) {
  const gyblink::numkit::ToleranceConfig tol{ctx.tol, 0.0};
  const auto op = so_n2::build_gyb(N);
  const auto chirality = so_n2::default_chirality(N);
  const auto s = linkinv::so_egyb(N);

  struct Row {
    std::string check;
    double residual;
    double tolerance;
    bool passed;
    std::string detail;
  };
  std::vector<Row> rows;

  const auto g = core::check_gybe(op, tol);
  rows.push_back({"gybe", g.residual, g.tolerance, g.passed, ""});
  const auto f = core::check_far_commutativity(op, tol);
  rows.push_back({"far-commutativity", f.residual, f.tolerance, f.passed, ""});

  const auto e = core::check_enhancement(s, 4, tol);
  const Complex alpha = s.enh().alpha;
  const auto rel = so_n2::classify_against_twist(alpha, N);
  rows.push_back({"enhancement", std::max(e.residual, e.inverse_residual), e.tolerance, e.passed,
                  "alpha=" + cstr(alpha) + " (" + so_n2::to_string(rel) + ")"});

  const auto mp = core::min_poly_check(N, ctx.tol);
  rows.push_back({"min-poly", mp.cubic_residual, ctx.tol, mp.passed,
                  "min quadratic residual " + sci(mp.min_quadratic_residual)});

  const auto data = so_n2::category_data(N);
  std::vector<Complex> expected{data.r_unit, data.r_z, data.r_x2};
  if (chirality == so_n2::Chirality::Mirror)
    for (auto& x : expected) x = std::conj(x);
  try {
    const auto sp = core::spectrum_check(op, expected, tol);
    std::string mult;
    for (int m : sp.multiplicities) mult += (mult.empty() ? "" : ",") + std::to_string(m);
    rows.push_back({"spectrum", sp.rounding_residual, 1e-6, true, "multiplicities " + mult});
  } catch (const gyblink::numkit::SpectrumMismatchError& ex) {
    rows.push_back({"spectrum", 1.0, 1e-6, false, ex.what()});
  }

  const auto cmp = so_n2::compare_with_rnu(N, std::nullopt, std::max(ctx.tol, 1e-12));
  const int want_sign = N == 3 ? 1 : -1;
  const int want_nu = N == 3 ? -1 : 1;
  const bool cmp_ok = cmp.matched && cmp.sign == want_sign && cmp.nu == want_nu;
  rows.push_back({"compare-rnu", cmp.deviation, std::max(ctx.tol, 1e-12), cmp_ok,
                  std::string(cmp.sign > 0 ? "+" : "-") + "R_" + (cmp.nu > 0 ? "+1" : "-1") +
                      (N >= 9 ? " (conjectural F-data)" : "")});

  const auto sk = linkinv::skein_operator_check(s, N, linkinv::so_eta(N), std::max(ctx.tol, 1e-11));
  rows.push_back({"skein-operator", sk.residual, std::max(ctx.tol, 1e-11), sk.passed,
                  "eta=" + std::to_string(linkinv::so_eta(N)) + " tr(E)=" + cstr(sk.trace_e, 6)});

  for (const auto& r : rows) {
    json j;
    j["command"] = "verify";
    j["N"] = N;
    j["chirality"] = so_n2::to_string(chirality);
    j["check"] = r.check;
    j["residual"] = r.residual;
    j["tolerance"] = r.tolerance;
    j["passed"] = r.passed;
    j["detail"] = r.detail;
    ctx.record(j, r.passed);
    if (ctx.human()) {
      ctx.out << std::setw(4) << N << "  " << std::left << std::setw(18) << r.check << std::right
              << std::setw(10) << sci(r.residual) << "  " << (r.passed ? "ok  " : "FAIL") << "  "
              << r.detail << '\n';
    }
  }
}

// ------------------------------------------------------------- invariant

struct LinkItem {
  std::string name;
  braid::BraidWord word;
};

void invariant_cmd(Context& ctx, const std::vector<int>& Ns, const std::vector<LinkItem>& links,
                   linkinv::Normalization scheme) {
  if (ctx.human()) {
    ctx.out << "   N  link              n  writhe  " << std::left << std::setw(35) << "raw T_S"
            << std::setw(35) << "framed" << linkinv::to_string(scheme) << std::right << '\n';
  }
  for (int N : Ns) {
    const auto s = linkinv::so_egyb(N);
    for (const auto& l : links) {
      const Complex raw = linkinv::t_invariant(s, l.word);
      const Complex framed = linkinv::framed_invariant(s, l.word);
      const Complex norm = linkinv::normalized_invariant(s, l.word, scheme);
      json j;
      j["command"] = "invariant";
      j["N"] = N;
      j["link"] = l.name;
      j["word"] = braid::format_braid(l.word);
      j["strands"] = l.word.strands();
      j["writhe"] = braid::writhe(l.word);
      j["scheme"] = linkinv::to_string(scheme);
      j["raw"] = cjson(raw);
      j["framed"] = cjson(framed);
      j["value"] = cjson(norm);
      ctx.record(j, true);
      if (ctx.human()) {
        ctx.out << std::setw(4) << N << "  " << std::left << std::setw(16) << l.name << std::right
                << std::setw(3) << l.word.strands() << std::setw(8) << braid::writhe(l.word)
                << "  " << std::left << std::setw(34) << cstr(raw) << ' ' << std::setw(34)
                << cstr(framed) << ' ' << cstr(norm) << std::right << '\n';
      }
    }
  }
}

// --------------------------------------------------------------- compare

void compare_cmd(Context& ctx, const std::vector<int>& Ns, const std::vector<LinkItem>& links,
                 std::optional<int> sign, double tol) {
  std::vector<braid::LinkSpec> specs;
  for (const auto& l : links) specs.push_back({l.word, l.name});
  if (ctx.human()) {
    ctx.out << "   N  link              artifact (remark54)                oracle"
               "                            deviation  sign\n";
  }
  for (int N : Ns) {
    const auto s = linkinv::so_egyb(N);
    skein::ArtifactSide side{s.enh().alpha, [&](const braid::BraidWord& w) {
                               return linkinv::normalized_invariant(
                                   s, w, linkinv::Normalization::Remark54);
                             }};
    const auto rep = skein::compare_invariants(N, specs, side, tol, sign);
    for (const auto& row : rep.rows) {
      const Complex oracle = rep.sign < 0 ? row.oracle_minus : row.oracle_plus;
      json j;
      j["command"] = "compare";
      j["N"] = N;
      j["link"] = row.name;
      j["artifact"] = cjson(row.artifact);
      j["oracle"] = cjson(oracle);
      j["deviation"] = row.deviation;
      j["deviation_plus"] = row.deviation_plus;
      j["deviation_minus"] = row.deviation_minus;
      j["sign"] = rep.sign;
      j["forced"] = rep.forced;
      j["passed"] = row.matched;
      ctx.record(j, row.matched);
      if (ctx.human()) {
        ctx.out << std::setw(4) << N << "  " << std::left << std::setw(16) << row.name
                << std::setw(34) << cstr(row.artifact) << ' ' << std::setw(34) << cstr(oracle)
                << std::right << std::setw(9) << sci(row.deviation) << "  "
                << (rep.sign > 0 ? "+" : rep.sign < 0 ? "-" : "?")
                << (row.matched ? "" : "  MISMATCH") << '\n';
      }
    }
    json summary;
    summary["command"] = "compare-summary";
    summary["N"] = N;
    summary["sign"] = rep.sign;
    summary["alpha"] = cjson(rep.alpha);
    summary["delta"] = cjson(rep.delta);
    summary["artifact_unlink_factor"] = cjson(rep.artifact_unlink_factor);
    summary["exactly_one_sign"] = rep.exactly_one_sign;
    summary["max_deviation"] = rep.max_deviation;
    summary["passed"] = rep.passed;
    ctx.record(summary, rep.passed);
    if (ctx.human()) {
      ctx.out << "      N=" << N << ": sign " << rep.sign << ", delta " << cstr(rep.delta, 6)
              << ", artifact unlink/unknot " << cstr(rep.artifact_unlink_factor, 6)
              << (rep.exactly_one_sign ? ", unique sign" : "") << '\n';
    }
  }
}

void compare_pd_cmd(Context& ctx, const std::vector<int>& Ns, const std::string& pd_path,
                    const std::optional<braid::BraidWord>& word, std::optional<int> sign,
                    double tol) {
  const auto d = skein::load_pd(pd_path);
  for (int N : Ns) {
    const auto s = linkinv::so_egyb(N);
    const Complex alpha = s.enh().alpha;
    const int use_sign = sign.value_or(linkinv::so_eta(N));
    if (word) {
      const Complex art =
          linkinv::normalized_invariant(s, *word, linkinv::Normalization::Remark54);
      const auto row = skein::compare_diagram(pd_path, d, art, N, alpha, use_sign, tol);
      json j;
      j["command"] = "compare";
      j["N"] = N;
      j["link"] = pd_path;
      j["artifact"] = cjson(art);
      j["oracle"] = cjson(use_sign > 0 ? row.oracle_plus : row.oracle_minus);
      j["deviation"] = row.deviation;
      j["sign"] = use_sign;
      j["passed"] = row.matched;
      ctx.record(j, row.matched);
      if (ctx.human()) {
        ctx.out << std::setw(4) << N << "  " << pd_path << "  artifact " << cstr(art)
                << "  oracle " << cstr(use_sign > 0 ? row.oracle_plus : row.oracle_minus)
                << "  deviation " << sci(row.deviation) << (row.matched ? "" : "  MISMATCH")
                << '\n';
      }
    } else {
      const Complex plus = skein::dubrovnik(d, skein::specialization_params(N, 1, alpha));
      const Complex minus = skein::dubrovnik(d, skein::specialization_params(N, -1, alpha));
      json j;
      j["command"] = "oracle";
      j["N"] = N;
      j["link"] = pd_path;
      j["oracle_plus"] = cjson(plus);
      j["oracle_minus"] = cjson(minus);
      ctx.record(j, true);
      if (ctx.human()) {
        ctx.out << std::setw(4) << N << "  " << pd_path << "  oracle(+) " << cstr(plus)
                << "  oracle(-) " << cstr(minus) << '\n';
      }
    }
  }
}

// ----------------------------------------------------------------- bench

void bench_cmd(Context& ctx, const core::GybOperator& op, const std::vector<int>& ns,
               std::size_t length, std::uint64_t seed, int dense_max, double tol) {
  const core::EgybOperator s(op, {gyblink::numkit::ComplexMatrix::identity(op.type().d), 1.0, 1.0});
  std::optional<int> crossover;
  if (ctx.human()) ctx.out << "   n        dim    dense [s]  structured [s]  |diff|\n";
  for (int n : ns) {
    if (n < 2) throw UsageError("bench needs n >= 2");
    const auto w = braid::random_word(n, length, seed + static_cast<std::uint64_t>(n));
    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();
    const Complex vs = linkinv::markov_trace(s, w, linkinv::TraceMethod::Structured);
    const double ts = std::chrono::duration<double>(clock::now() - t0).count();
    std::optional<double> td;
    double diff = 0.0;
    if (n <= dense_max) {
      t0 = clock::now();
      const Complex vd = linkinv::markov_trace(s, w, linkinv::TraceMethod::Dense);
      td = std::chrono::duration<double>(clock::now() - t0).count();
      diff = std::abs(vd - vs);
      if (!crossover && ts < *td) crossover = n;
    }
    const bool agree = diff <= tol * std::max(1.0, std::abs(vs));
    json j;
    j["command"] = "bench";
    j["n"] = n;
    j["dimension"] = op.type().rep_dimension(n);
    j["length"] = length;
    j["structured_seconds"] = ts;
    j["dense_seconds"] = td ? json(*td) : json(nullptr);
    j["difference"] = diff;
    j["trace"] = cjson(vs);
    j["passed"] = agree;
    ctx.record(j, agree);
    if (ctx.human()) {
      ctx.out << std::setw(4) << n << std::setw(11) << op.type().rep_dimension(n) << std::setw(13)
              << (td ? sci(*td) : std::string("skipped")) << std::setw(16) << sci(ts)
              << std::setw(10) << sci(diff) << (agree ? "" : "  DISAGREE") << '\n';
    }
  }
  if (ctx.human()) {
    if (crossover) {
      ctx.out << "structured faster from n = " << *crossover << '\n';
    } else {
      ctx.out << "no crossover in the measured range\n";
    }
  }
}

// --------------------------------------------------------------- catalog

void catalog_cmd(Context& ctx, const braid::Catalog& cat) {
  for (const auto& e : cat.entries()) {
    json j;
    j["command"] = "catalog";
    j["link"] = e.name.value_or("");
    j["strands"] = e.word.strands();
    j["word"] = braid::format_braid(e.word);
    j["components"] = braid::closure_components(e.word);
    j["writhe"] = braid::writhe(e.word);
    ctx.record(j, true);
    if (ctx.human()) {
      ctx.out << std::left << std::setw(16) << e.name.value_or("") << std::right << " B"
              << e.word.strands() << "  [" << braid::format_braid(e.word) << "]  components "
              << braid::closure_components(e.word) << "  writhe " << braid::writhe(e.word)
              << '\n';
    }
  }
}

std::vector<LinkItem> resolve_links(const braid::Catalog& cat, const std::vector<std::string>& names,
                                    const std::string& word_text) {
  std::vector<LinkItem> out;
  if (!word_text.empty()) {
    try {
      out.push_back({"word", braid::parse_braid(word_text)});
    } catch (const braid::ParseError& e) {
      throw UsageError(std::string("cannot parse --word: ") + e.what());
    }
  }
  for (const auto& n : names) {
    const auto* e = cat.find(n);
    if (!e) throw UsageError("unknown link '" + n + "'");
    out.push_back({n, e->word});
  }
  if (out.empty()) {
    for (const auto& e : cat.entries()) out.push_back({e.name.value_or("?"), e.word});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const LinkItem& a, const LinkItem& b) { return a.name < b.name; });
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gyblink: generalized Yang-Baxter operators and link invariants"};
  app.require_subcommand(1);

  std::string n_text;
  std::string word_text;
  std::string links_text;
  std::string scheme_text = "remark54";
  std::string format_text = "human";
  std::optional<double> tol_flag;
  std::uint64_t seed = 20240601;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", tol_flag, "absolute tolerance (default 1e-10, env GYBLINK_TOL)");
    sub->add_option("--format", format_text, "human or structured")
        ->check(CLI::IsMember({"human", "structured"}));
    sub->add_option("--seed", seed, "random seed");
  };

  auto* verify = app.add_subcommand("verify", "operator checks per N");
  verify->add_option("--N", n_text, "odd N: value, list 3,5,7 or range 3..13")->default_val("3..13");
  add_common(verify);

  auto* invariant = app.add_subcommand("invariant", "evaluate T_S on links");
  std::vector<std::string> invariant_names;
  invariant->add_option("--N", n_text, "odd N")->default_val("5");
  invariant->add_option("names", invariant_names, "catalog link names");
  invariant->add_option("--word", word_text, "braid word, e.g. \"1 -2 1 -2\"");
  invariant->add_option("--links", links_text, "comma-separated catalog names");
  invariant->add_option("--scheme", scheme_text, "raw, framed, section2 or remark54");
  add_common(invariant);

  auto* compare = app.add_subcommand("compare", "compare with the Dubrovnik oracle");
  std::optional<int> sign_flag;
  std::string pd_path;
  compare->add_option("--N", n_text, "odd N")->default_val("3,5,7");
  compare->add_option("--links", links_text, "comma-separated catalog names");
  compare->add_option("--word", word_text, "braid word (with --pd: the artifact side)");
  compare->add_option("--sign", sign_flag, "force the sign of z (+1 or -1)")
      ->check(CLI::IsMember({-1, 1}));
  compare->add_option("--pd", pd_path, "PD file for a user diagram");
  add_common(compare);

  auto* bench = app.add_subcommand("bench", "dense vs structured trace timings");
  std::string bench_n = "3..10";
  std::size_t bench_length = 20;
  int dense_max = 10;
  std::string operator_path;
  bench->add_option("--n", bench_n, "strand counts, e.g. 3..10")->default_val("3..10");
  bench->add_option("--N", n_text, "odd N of the SO(N)_2 operator")->default_val("5");
  bench->add_option("--length", bench_length, "random word length")->default_val(20);
  bench->add_option("--dense-max", dense_max, "largest n evaluated densely")->default_val(10);
  bench->add_option("--operator", operator_path, "operator file to benchmark instead");
  add_common(bench);

  auto* catalog = app.add_subcommand("catalog", "list the link catalog");
  add_common(catalog);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsageError;
  }

  Context ctx;
  try {
    ctx.format = format_text == "structured" ? Format::Structured : Format::Human;
    if (const char* env = std::getenv("GYBLINK_TOL"); env && *env) {
      try {
        ctx.tol = std::stod(env);
      } catch (const std::exception&) {
        throw UsageError(std::string("invalid GYBLINK_TOL '") + env + "'");
      }
    }
    if (tol_flag) ctx.tol = *tol_flag;
    if (!(ctx.tol > 0.0) || !std::isfinite(ctx.tol)) throw UsageError("tolerance must be positive");

    const auto cat = load_default_catalog();
    if (*verify) {
      const auto Ns = parse_values(n_text, true, "--N");
      if (ctx.human()) ctx.out << "   N  check               residual  status\n";
      for (int N : Ns) verify_one(ctx, N);
    } else if (*invariant) {
      const auto Ns = parse_values(n_text, true, "--N");
      auto names = invariant_names;
      for (const auto& n : split_names(links_text)) names.push_back(n);
      invariant_cmd(ctx, Ns, resolve_links(cat, names, word_text),
                    linkinv::parse_normalization(scheme_text));
    } else if (*compare) {
      const auto Ns = parse_values(n_text, true, "--N");
      const double tol = tol_flag ? ctx.tol : std::max(ctx.tol, 1e-8);
      if (!pd_path.empty()) {
        std::optional<braid::BraidWord> w;
        if (!word_text.empty()) w = braid::parse_braid(word_text);
        compare_pd_cmd(ctx, Ns, pd_path, w, sign_flag, tol);
      } else {
        compare_cmd(ctx, Ns, resolve_links(cat, split_names(links_text), word_text), sign_flag,
                    tol);
      }
    } else if (*bench) {
      const auto ns = parse_values(bench_n, false, "--n");
      if (!operator_path.empty()) {
        std::ifstream in(operator_path);
        if (!in) throw UsageError("cannot open operator file '" + operator_path + "'");
        const auto op = core::read_operator(in);
        if (!core::has_middle_coupling(op)) {
          std::cerr << "gyblink: refusing to benchmark: operator lacks the block structure "
                       "required by the structured path\n";
          return kUsageError;
        }
        bench_cmd(ctx, op, ns, bench_length, seed, dense_max, std::max(ctx.tol, 1e-12));
      } else {
        const auto Ns = parse_values(n_text, true, "--N");
        bench_cmd(ctx, so_n2::build_gyb(Ns.front()), ns, bench_length, seed, dense_max,
                  std::max(ctx.tol, 1e-12));
      }
    } else if (*catalog) {
      catalog_cmd(ctx, cat);
    }
  } catch (const UsageError& e) {
    std::cerr << "gyblink: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "gyblink: " << e.what() << '\n';
    return 1;
  }
  return ctx.ok ? 0 : 1;
}
