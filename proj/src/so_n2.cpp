#include "gyblink/so_n2.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gyblink::so_n2 {

using Tag = Label::Tag;

int rank_of(int N) {
  if (N < 3 || N % 2 == 0) {
    throw std::invalid_argument("N must be an odd integer >= 3 (got " + std::to_string(N) + ")");
  }
  return (N - 1) / 2;
}

void validate(const Label& l, int N) {
  const int r = rank_of(N);
  if (l.tag == Tag::X) {
    if (l.index < 1 || l.index > r) {
      throw std::invalid_argument("X index " + std::to_string(l.index) + " outside [1, " +
                                  std::to_string(r) + "]");
    }
  } else if (l.index != 0) {
    throw std::invalid_argument("only X labels carry an index");
  }
}

std::string to_string(const Label& l) {
  switch (l.tag) {
    case Tag::Unit: return "1";
    case Tag::Z: return "Z";
    case Tag::X: return "X" + std::to_string(l.index);
    case Tag::Eps: return "eps";
    case Tag::EpsPrime: return "eps'";
  }
  return "?";
}

Label parse_label(std::string_view text, int N) {
  std::string s;
  for (char c : text) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  Label l;
  if (s == "1" || s == "unit") {
    l = Label::unit();
  } else if (s == "z") {
    l = Label::z();
  } else if (s == "eps") {
    l = Label::eps();
  } else if (s == "eps'" || s == "epsprime") {
    l = Label::eps_prime();
  } else if (s.size() >= 2 && s[0] == 'x') {
    int i = 0;
    const auto [ptr, ec] = std::from_chars(s.data() + 1, s.data() + s.size(), i);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      throw std::invalid_argument("bad label '" + std::string(text) + "'");
    }
    l = Label::x(i);
  } else {
    throw std::invalid_argument("bad label '" + std::string(text) + "'");
  }
  validate(l, N);
  return l;
}

std::vector<Label> simple_objects(int N) {
  const int r = rank_of(N);
  std::vector<Label> out{Label::unit(), Label::z()};
  for (int i = 1; i <= r; ++i) out.push_back(Label::x(i));
  out.push_back(Label::eps());
  out.push_back(Label::eps_prime());
  return out;
}

namespace {

Label z_times(const Label& a) {
  switch (a.tag) {
    case Tag::Unit: return Label::z();
    case Tag::Z: return Label::unit();
    case Tag::X: return a;
    case Tag::Eps: return Label::eps_prime();
    case Tag::EpsPrime: return Label::eps();
  }
  return a;
}

bool is_spinor(const Label& a) { return a.tag == Tag::Eps || a.tag == Tag::EpsPrime; }

}  // namespace

std::vector<Label> fusion(const Label& a, const Label& b, int N) {
  validate(a, N);
  validate(b, N);
  const int r = rank_of(N);
  std::vector<Label> out;
  auto all_x = [&] {
    for (int i = 1; i <= r; ++i) out.push_back(Label::x(i));
  };

  if (a.tag == Tag::Unit) {
    out = {b};
  } else if (b.tag == Tag::Unit) {
    out = {a};
  } else if (a.tag == Tag::Z) {
    out = {z_times(b)};
  } else if (b.tag == Tag::Z) {
    out = {z_times(a)};
  } else if (is_spinor(a) && is_spinor(b)) {
    out.push_back(a.tag == b.tag ? Label::unit() : Label::z());
    all_x();
  } else if (is_spinor(a) || is_spinor(b)) {
    out = {Label::eps(), Label::eps_prime()};
  } else if (a.index == b.index) {
    const int i = a.index;
    out = {Label::unit(), Label::z(), Label::x(std::min(2 * i, 2 * r + 1 - 2 * i))};
  } else {
    const int i = std::min(a.index, b.index);
    const int j = std::max(a.index, b.index);
    out = {Label::x(j - i), Label::x(std::min(i + j, 2 * r + 1 - i - j))};
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool check_gybe_object(const Label& x, const std::vector<Label>& L, int N) {
  if (L.empty()) throw std::invalid_argument("label set must be nonempty");
  std::vector<Label> target = L;
  for (const auto& l : target) validate(l, N);
  std::sort(target.begin(), target.end());
  target.erase(std::unique(target.begin(), target.end()), target.end());
  for (const auto& l : target) {
    if (fusion(x, l, N) != target) return false;
  }
  return true;
}

Complex CategoryData::r_symbol(const Label& channel) const {
  if (channel.tag == Tag::Unit) return r_unit;
  if (channel.tag == Tag::Z) return r_z;
  if (channel == x2_channel) return r_x2;
  throw std::invalid_argument(to_string(channel) + " is not a channel of X1 (x) X1");
}

CategoryData category_data(int N) {
  CategoryData d;
  d.N = N;
  d.r = rank_of(N);
  const double pi = std::numbers::pi;
  d.r_unit = std::polar(1.0, pi * (N + 1) / N);
  d.r_z = std::polar(1.0, pi / N);
  d.r_x2 = std::polar(1.0, pi * (N - 1) / N);
  d.x2_channel = Label::x(std::min(2, 2 * d.r - 1));
  d.twist = std::polar(1.0, pi * (N - 1) / N);
  const double h = 1.0 / std::sqrt(2.0);
  const ComplexMatrix same = ComplexMatrix::from_rows({{h, h}, {h, -h}});
  const ComplexMatrix cross = ComplexMatrix::from_rows({{h, -h}, {h, h}});
  d.f[0][0] = same;
  d.f[1][1] = same;
  d.f[0][1] = cross;
  d.f[1][0] = cross;
  return d;
}

Chirality default_chirality(int N) { return N == 3 ? Chirality::Mirror : Chirality::Standard; }

std::string to_string(Chirality c) { return c == Chirality::Mirror ? "mirror" : "standard"; }

std::vector<Label> admissible_channels(const Label& i1, const Label& i3, int N) {
  std::vector<Label> out;
  for (const auto& k : fusion(Label::x(1), Label::x(1), N)) {
    const auto f = fusion(i1, k, N);
    if (std::find(f.begin(), f.end(), i3) != f.end()) out.push_back(k);
  }
  return out;
}

namespace {

int spinor_index(const Label& l) {
  if (l.tag == Tag::Eps) return 0;
  if (l.tag == Tag::EpsPrime) return 1;
  throw std::invalid_argument("outer labels must be eps or eps'");
}

}  // namespace

ComplexMatrix channel_block(const CategoryData& data, const Label& i1, const Label& i3,
                            Chirality chirality) {
  const auto channels = admissible_channels(i1, i3, data.N);
  if (channels.size() != 2) {
    throw std::logic_error("expected two admissible channels for (" + to_string(i1) + ", " +
                           to_string(i3) + ")");
  }
  const ComplexMatrix& f = data.f[spinor_index(i1)][spinor_index(i3)];
  const ComplexMatrix f_inv = numkit::inverse(f);
  std::vector<Complex> eig;
  for (const auto& k : channels) {
    const Complex v = data.r_symbol(k);
    eig.push_back(chirality == Chirality::Mirror ? std::conj(v) : v);
  }
  const ComplexMatrix diag = ComplexMatrix::diagonal(eig);
  return chirality == Chirality::Mirror ? f * diag * f_inv : f_inv * diag * f;
}

core::GybOperator build_gyb(int N, std::optional<Chirality> chirality) {
  const CategoryData data = category_data(N);
  const Chirality ch = chirality.value_or(default_chirality(N));
  const Label outer[2] = {Label::eps(), Label::eps_prime()};
  ComplexMatrix r(8, 8);
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c) {
      const ComplexMatrix b = channel_block(data, outer[a], outer[c], ch);
      for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i) r((a * 2 + j) * 2 + c, (a * 2 + i) * 2 + c) = b(j, i);
    }
  return core::GybOperator(core::GybType{2, 3, 1}, std::move(r));
}

RnuComparison compare_with_rnu(int N, std::optional<Chirality> chirality, double tol) {
  const auto built = build_gyb(N, chirality);
  RnuComparison rep;
  rep.N = N;
  rep.deviation = std::numeric_limits<double>::infinity();
  int idx = 0;
  for (int sign : {1, -1})
    for (int nu : {1, -1}) {
      const ComplexMatrix cand = static_cast<double>(sign) * core::r_nu(N, nu).matrix();
      const double dev = numkit::max_abs_diff(built.matrix(), cand);
      rep.candidate_deviations[idx++] = dev;
      if (dev < rep.deviation) {
        rep.deviation = dev;
        rep.sign = sign;
        rep.nu = nu;
      }
    }
  rep.matched = rep.deviation <= tol;
  return rep;
}

TwistRelation classify_against_twist(Complex alpha, int N, double tol) {
  const Complex theta = category_data(N).twist;
  if (std::abs(alpha - theta) <= tol) return TwistRelation::Theta;
  if (std::abs(alpha - 1.0 / theta) <= tol) return TwistRelation::ThetaInverse;
  if (std::abs(alpha + theta) <= tol) return TwistRelation::MinusTheta;
  if (std::abs(alpha + 1.0 / theta) <= tol) return TwistRelation::MinusThetaInverse;
  return TwistRelation::None;
}

std::string to_string(TwistRelation t) {
  switch (t) {
    case TwistRelation::Theta: return "theta";
    case TwistRelation::ThetaInverse: return "theta^-1";
    case TwistRelation::MinusTheta: return "-theta";
    case TwistRelation::MinusThetaInverse: return "-theta^-1";
    case TwistRelation::None: return "none";
  }
  return "none";
}

}  // namespace gyblink::so_n2
