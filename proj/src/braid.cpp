#include "gyblink/braid.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace gyblink::braid {

BraidWord::BraidWord(int strands, std::vector<int> letters)
    : strands_(strands), letters_(std::move(letters)) {
  if (strands_ < 1) throw std::invalid_argument("braid needs at least one strand");
  for (int l : letters_) {
    if (l == 0 || std::abs(l) > strands_ - 1) {
      throw std::invalid_argument("letter " + std::to_string(l) + " out of range for " +
                                  std::to_string(strands_) + " strands");
    }
  }
}

BraidWord BraidWord::inverse() const {
  std::vector<int> inv(letters_.rbegin(), letters_.rend());
  for (int& l : inv) l = -l;
  return BraidWord(strands_, std::move(inv));
}

BraidWord parse_braid(std::string_view text, std::optional<int> strands) {
  std::vector<int> letters;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    const std::string_view tok = text.substr(pos, end - pos);
    // from_chars rejects a leading '+', which we accept.
    const std::string_view digits = tok.front() == '+' ? tok.substr(1) : tok;
    int value = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || digits.empty()) {
      throw ParseError("not an integer: '" + std::string(tok) + "'");
    }
    if (value == 0) throw ParseError("0 is not a braid generator");
    letters.push_back(value);
    pos = end;
  }

  int max_index = 0;
  for (int l : letters) max_index = std::max(max_index, std::abs(l));
  const int n = strands.value_or(max_index + 1);
  if (n < 1) throw ParseError("strand count must be positive");
  if (max_index > n - 1) {
    throw ParseError("letter " + std::to_string(max_index) + " out of range for " +
                     std::to_string(n) + " strands");
  }
  return BraidWord(n, std::move(letters));
}

std::string format_braid(const BraidWord& w) {
  std::string out;
  for (std::size_t i = 0; i < w.letters().size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(w.letters()[i]);
  }
  return out;
}

int writhe(const BraidWord& w) {
  int s = 0;
  for (int l : w.letters()) s += l > 0 ? 1 : -1;
  return s;
}

int closure_components(const BraidWord& w) {
  const int n = w.strands();
  // perm[p] = final position of the strand starting at p
  std::vector<int> at(n);  // at[position] = strand currently there
  for (int p = 0; p < n; ++p) at[p] = p;
  for (int l : w.letters()) {
    const int i = std::abs(l) - 1;
    std::swap(at[i], at[i + 1]);
  }
  std::vector<int> perm(n);
  for (int p = 0; p < n; ++p) perm[at[p]] = p;
  std::vector<bool> seen(n, false);
  int cycles = 0;
  for (int p = 0; p < n; ++p) {
    if (seen[p]) continue;
    ++cycles;
    for (int q = p; !seen[q]; q = perm[q]) seen[q] = true;
  }
  return cycles;
}

BraidWord markov_conjugate(const BraidWord& w, const BraidWord& g) {
  if (w.strands() != g.strands()) {
    throw std::invalid_argument("markov_conjugate: strand counts differ (" +
                                std::to_string(w.strands()) + " vs " +
                                std::to_string(g.strands()) + ")");
  }
  std::vector<int> letters = g.inverse().letters();
  letters.insert(letters.end(), w.letters().begin(), w.letters().end());
  letters.insert(letters.end(), g.letters().begin(), g.letters().end());
  return BraidWord(w.strands(), std::move(letters));
}

BraidWord markov_stabilize(const BraidWord& w, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("stabilization sign must be +-1");
  std::vector<int> letters = w.letters();
  letters.push_back(sign * w.strands());
  return BraidWord(w.strands() + 1, std::move(letters));
}

BraidWord disjoint_union(const BraidWord& a, const BraidWord& b) {
  std::vector<int> letters = a.letters();
  for (int l : b.letters()) letters.push_back(l > 0 ? l + a.strands() : l - a.strands());
  return BraidWord(a.strands() + b.strands(), std::move(letters));
}

BraidWord random_word(int strands, std::size_t length, std::uint64_t seed) {
  if (length == 0) return BraidWord(std::max(strands, 1));
  if (strands < 2) throw std::invalid_argument("random_word: need at least 2 strands");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, 2 * (strands - 1) - 1);
  std::vector<int> letters(length);
  for (auto& l : letters) {
    const int r = pick(rng);
    l = r < strands - 1 ? r + 1 : -(r - (strands - 1) + 1);
  }
  return BraidWord(strands, std::move(letters));
}

void Catalog::add(LinkSpec spec) {
  if (spec.name && find(*spec.name)) {
    throw std::invalid_argument("duplicate catalog name '" + *spec.name + "'");
  }
  entries_.push_back(std::move(spec));
}

const LinkSpec* Catalog::find(std::string_view name) const {
  for (const auto& e : entries_)
    if (e.name && *e.name == name) return &e;
  return nullptr;
}

const LinkSpec& Catalog::at(std::string_view name) const {
  if (const auto* e = find(name)) return *e;
  throw std::out_of_range("unknown link '" + std::string(name) + "'");
}

Catalog builtin_catalog() {
  Catalog c;
  c.add({BraidWord(1), "unknot"});
  c.add({BraidWord(2), "unlink2"});
  c.add({BraidWord(2, {1, 1}), "hopf"});
  c.add({BraidWord(2, {1, 1, 1}), "trefoil"});
  c.add({BraidWord(3, {1, -2, 1, -2}), "figure8"});
  return c;
}

Catalog read_catalog(std::istream& in) {
  Catalog c;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string name;
    std::string strands_tok;
    ls >> name >> strands_tok;
    const auto fail = [&](const std::string& why) {
      throw ParseError("catalog line " + std::to_string(lineno) + ": " + why);
    };
    for (char ch : name) {
      if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-')) {
        fail("invalid name '" + name + "'");
      }
    }
    int strands = 0;
    const auto [ptr, ec] =
        std::from_chars(strands_tok.data(), strands_tok.data() + strands_tok.size(), strands);
    if (strands_tok.empty() || ec != std::errc{} || ptr != strands_tok.data() + strands_tok.size() ||
        strands < 1) {
      fail("missing or invalid strand count");
    }
    std::string rest;
    std::getline(ls, rest);
    try {
      c.add({parse_braid(rest, strands), name});
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }
  return c;
}

Catalog load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open catalog '" + path + "'");
  return read_catalog(in);
}

void write_catalog(std::ostream& out, const Catalog& catalog) {
  for (const auto& e : catalog.entries()) {
    if (!e.name) continue;
    out << *e.name << ' ' << e.word.strands();
    for (int l : e.word.letters()) out << ' ' << l;
    out << '\n';
  }
}

}  // namespace gyblink::braid
