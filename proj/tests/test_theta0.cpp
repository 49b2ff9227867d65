#include "gtest/gtest.h"
#include "infgpd/theta0.hpp"

using namespace infgpd;

namespace {

// Every map S -> T, found by choosing a top-cell image for each leg and
// keeping the choices the pairing accepts.
std::vector<Theta0Morphism> all_maps(const TableOfDimensions& s, const TableOfDimensions& t) {
  std::vector<Theta0Morphism> out;
  const GlobularSet& g = realization(t).carrier();
  std::vector<int> choice(s.width(), 0);
  while (true) {
    bool ok = true;
    for (int k = 0; k < s.width(); ++k)
      if (g.count(s.upper()[k]) == 0) ok = false;
    if (!ok) return out;
    std::vector<Theta0Morphism> comps;
    for (int k = 0; k < s.width(); ++k) comps.push_back(Theta0Morphism::from_cell(t, s.upper()[k], choice[k]));
    try {
      out.push_back(pair(comps, s));
    } catch (const PairingError&) {
    }
    int k = 0;
    while (k < s.width() && ++choice[k] == g.count(s.upper()[k])) choice[k++] = 0;
    if (k == s.width()) return out;
  }
}

const std::vector<TableOfDimensions>& sample_tables() {
  static const std::vector<TableOfDimensions> tables{
      TableOfDimensions::disk(0), TableOfDimensions::disk(1), TableOfDimensions::disk(2),
      TableOfDimensions({1, 1}, {0}), TableOfDimensions({2, 2}, {1}), TableOfDimensions({2, 1}, {0}),
      TableOfDimensions({1, 2, 1}, {0, 0}), TableOfDimensions({2, 2, 2}, {1, 0})};
  return tables;
}

}  // namespace

TEST(Theta0, MapsOutOfADiskAreCells) {
  for (const auto& t : sample_tables())
    for (int m = 0; m <= 2; ++m)
      EXPECT_EQ(static_cast<int>(all_maps(TableOfDimensions::disk(m), t).size()), realization(t).carrier().count(m));
}

TEST(Theta0, CategoryLaws) {
  const auto& tables = sample_tables();
  for (const auto& a : tables)
    for (const auto& b : tables) {
      auto ab = all_maps(a, b);
      for (const auto& f : ab) {
        EXPECT_EQ(compose(Theta0Morphism::identity(b), f), f);
        EXPECT_EQ(compose(f, Theta0Morphism::identity(a)), f);
      }
      if (ab.size() > 40) continue;
      for (const auto& c : {TableOfDimensions({1, 1}, {0}), TableOfDimensions::disk(2)}) {
        auto bc = all_maps(b, c);
        for (const auto& d : {TableOfDimensions::disk(1), TableOfDimensions({2, 1}, {0})}) {
          auto cd = all_maps(c, d);
          for (std::size_t i = 0; i < ab.size(); i += 3)
            for (std::size_t j = 0; j < bc.size(); j += 3)
              for (std::size_t k = 0; k < cd.size(); k += 3)
                EXPECT_EQ(compose(cd[k], compose(bc[j], ab[i])), compose(compose(cd[k], bc[j]), ab[i]));
        }
      }
    }
}

TEST(Theta0, PairingIsUniversal) {
  for (const auto& s : sample_tables()) {
    std::vector<Theta0Morphism> legs;
    for (int k = 0; k < s.width(); ++k) legs.push_back(Theta0Morphism::leg(s, k));
    EXPECT_EQ(pair(legs, s), Theta0Morphism::identity(s));
    for (const auto& t : sample_tables())
      for (const auto& f : all_maps(s, t)) {
        std::vector<Theta0Morphism> comps;
        for (int k = 0; k < s.width(); ++k) comps.push_back(compose(f, legs[k]));
        EXPECT_EQ(pair(comps, s), f);
      }
  }
}

TEST(Theta0, PairingReportsTheFailingGluing) {
  TableOfDimensions s({1, 1, 1}, {0, 0});
  TableOfDimensions t = TableOfDimensions::disk(1);
  auto top = Theta0Morphism::from_cell(t, 1, 0);
  try {
    pair({top, top, top}, s);
    FAIL();
  } catch (const PairingError& e) {
    EXPECT_EQ(e.k, 0);
    EXPECT_EQ(e.dim, 0);
  }
}

TEST(Theta0, GlobeFunctorIsFunctorial) {
  std::vector<CoglobularWord> words;
  for (int a = 0; a <= 3; ++a)
    for (int b = a; b <= 3; ++b)
      for (Side s : {Side::source, Side::target})
        if (a < b || s == Side::source) words.push_back(CoglobularWord::iterated(s, a, b));
  for (const auto& w : words) {
    for (const auto& v : words) {
      if (v.to != w.from) continue;
      EXPECT_EQ(globe_functor(compose_words(w, v)), compose(globe_functor(w), globe_functor(v)));
    }
  }
  EXPECT_EQ(globe_functor(CoglobularWord::identity(2)), Theta0Morphism::identity(TableOfDimensions::disk(2)));
  EXPECT_NE(globe_functor(CoglobularWord::letter(Side::source, 1)), globe_functor(CoglobularWord::letter(Side::target, 1)));
}

TEST(Theta0, RejectsNonGlobularMaps) {
  TableOfDimensions d1 = TableOfDimensions::disk(1);
  EXPECT_THROW(Theta0Morphism(d1, d1, {{1, 0}, {0}}), Error);
}
