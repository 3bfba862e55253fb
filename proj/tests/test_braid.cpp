#include <doctest.h>

#include <sstream>

#include "gyblink/braid.hpp"

using namespace gyblink::braid;

TEST_CASE("parse and format") {
  const auto w = parse_braid("1 -2 +1 -2");
  CHECK(w.strands() == 3);
  CHECK(w.letters() == std::vector<int>{1, -2, 1, -2});
  CHECK(format_braid(w) == "1 -2 1 -2");
  CHECK(parse_braid("", 1).strands() == 1);
  CHECK(parse_braid("1", 4).strands() == 4);
  CHECK_THROWS_AS(parse_braid("1 0"), ParseError);
  CHECK_THROWS_AS(parse_braid("1 x"), ParseError);
  CHECK_THROWS_AS(parse_braid("3", 3), ParseError);
  CHECK_THROWS_AS(BraidWord(2, {2}), std::invalid_argument);
}

TEST_CASE("writhe and components") {
  CHECK(writhe(BraidWord(2, {1, 1, 1})) == 3);
  CHECK(writhe(BraidWord(3, {1, -2, 1, -2})) == 0);
  CHECK(closure_components(BraidWord(1)) == 1);
  CHECK(closure_components(BraidWord(2)) == 2);
  CHECK(closure_components(BraidWord(2, {1, 1})) == 2);
  CHECK(closure_components(BraidWord(2, {1, 1, 1})) == 1);
  CHECK(closure_components(BraidWord(3, {1, -2, 1, -2})) == 1);
  CHECK(closure_components(BraidWord(4, {1, 3})) == 2);
}

TEST_CASE("Markov moves") {
  const BraidWord w(3, {1, -2});
  const BraidWord g(3, {2, 2, -1});
  const auto c = markov_conjugate(w, g);
  CHECK(c.letters() == std::vector<int>{1, -2, -2, 1, -2, 2, 2, -1});
  CHECK(closure_components(c) == closure_components(w));
  CHECK_THROWS_AS(markov_conjugate(w, BraidWord(2)), std::invalid_argument);
  const auto s = markov_stabilize(w, -1);
  CHECK(s.strands() == 4);
  CHECK(s.letters().back() == -3);
  CHECK(closure_components(s) == closure_components(w));
  CHECK(w.inverse().letters() == std::vector<int>{2, -1});
}

TEST_CASE("disjoint union and random words") {
  const auto u = disjoint_union(BraidWord(2, {1, 1, 1}), BraidWord(3, {1, -2}));
  CHECK(u.strands() == 5);
  CHECK(u.letters() == std::vector<int>{1, 1, 1, 3, -4});
  CHECK(closure_components(u) == 2);
  const auto a = random_word(5, 30, 42);
  const auto b = random_word(5, 30, 42);
  CHECK(a == b);
  CHECK(a.length() == 30);
  CHECK_FALSE(random_word(5, 30, 43) == a);
}

TEST_CASE("catalog round trip") {
  const auto cat = builtin_catalog();
  CHECK(cat.at("trefoil").word.letters() == std::vector<int>{1, 1, 1});
  CHECK(cat.find("nothing") == nullptr);
  std::stringstream ss;
  write_catalog(ss, cat);
  const auto back = read_catalog(ss);
  REQUIRE(back.size() == cat.size());
  for (std::size_t i = 0; i < cat.size(); ++i) CHECK(back.entries()[i].word == cat.entries()[i].word);

  std::istringstream bad("# comment\n\nfoo 2 1 3\n");
  CHECK_THROWS_AS(read_catalog(bad), ParseError);
  std::istringstream dup("a 1\na 2\n");
  CHECK_THROWS_AS(read_catalog(dup), ParseError);
  Catalog c;
  c.add({BraidWord(1), "x"});
  CHECK_THROWS_AS(c.add({BraidWord(1), "x"}), std::invalid_argument);
}

TEST_CASE("shipped catalog parses") {
  const auto cat = load_catalog(std::string(GYBLINK_DATA_DIR) + "/catalog.txt");
  CHECK(cat.find("unknot"));
  CHECK(cat.find("hopf"));
  CHECK(cat.find("trefoil"));
  CHECK(cat.find("figure8"));
}
