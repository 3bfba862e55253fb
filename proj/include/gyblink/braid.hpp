#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gyblink::braid {

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A braid word on `strands` strands. Letter +i is sigma_i, -i its inverse,
/// with 1 <= |i| <= strands - 1. The empty word is the trivial braid.
class BraidWord {
 public:
  BraidWord() : strands_(1) {}
  explicit BraidWord(int strands, std::vector<int> letters = {});

  int strands() const { return strands_; }
  const std::vector<int>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  /// Reversed sequence with negated letters.
  BraidWord inverse() const;

  friend bool operator==(const BraidWord&, const BraidWord&) = default;

 private:
  int strands_;
  std::vector<int> letters_;
};

struct LinkSpec {
  BraidWord word;
  std::optional<std::string> name;
};

/// Parses whitespace-separated nonzero signed integers. When `strands` is
/// absent the strand count is max|letter| + 1.
BraidWord parse_braid(std::string_view text, std::optional<int> strands = std::nullopt);
std::string format_braid(const BraidWord& w);

/// Exponent sum, equal to the writhe of the closure diagram.
int writhe(const BraidWord& w);

/// Number of cycles of the braid's permutation = components of its closure.
int closure_components(const BraidWord& w);

/// g^{-1} w g
BraidWord markov_conjugate(const BraidWord& w, const BraidWord& g);

/// w sigma_n^{sign} on n + 1 strands.
BraidWord markov_stabilize(const BraidWord& w, int sign);

/// Places b to the right of a; b's letters are shifted by a.strands().
BraidWord disjoint_union(const BraidWord& a, const BraidWord& b);

/// Deterministic for a fixed seed; letters uniform over +-{1..strands-1}.
BraidWord random_word(int strands, std::size_t length, std::uint64_t seed);

/// Named links in insertion order; names are unique.
class Catalog {
 public:
  void add(LinkSpec spec);
  const LinkSpec* find(std::string_view name) const;
  const LinkSpec& at(std::string_view name) const;
  const std::vector<LinkSpec>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<LinkSpec> entries_;
};

/// unknot, unlink2, hopf, trefoil, figure8.
Catalog builtin_catalog();

/// Catalog text format: one `<name> <strands> [<letter> ...]` record per line;
/// blank lines and lines starting with '#' are ignored. See docs/formats.md.
Catalog read_catalog(std::istream& in);
Catalog load_catalog(const std::string& path);
void write_catalog(std::ostream& out, const Catalog& catalog);

}  // namespace gyblink::braid
