#include <map>
#include <numeric>
#include <set>

#include "gtest/gtest.h"
#include "infgpd/globe.hpp"

using namespace infgpd;

namespace {

std::vector<TableOfDimensions> all_tables(int max_dim, int max_width) {
  std::vector<TableOfDimensions> out;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> frontier;
  for (int m = 0; m <= max_dim; ++m) frontier.push_back({{m}, {}});
  while (!frontier.empty()) {
    auto [up, lo] = frontier.back();
    frontier.pop_back();
    out.emplace_back(up, lo);
    if (static_cast<int>(up.size()) == max_width) continue;
    for (int g = 0; g < up.back(); ++g)
      for (int m = g + 1; m <= max_dim; ++m) {
        auto u = up, l = lo;
        u.push_back(m);
        l.push_back(g);
        frontier.push_back({u, l});
      }
  }
  return out;
}

// Pushout computed by brute force: every cell of every disk is a node, and
// the gluing maps are applied cell by cell.
struct UnionFind {
  std::vector<int> parent;
  int add() {
    parent.push_back(static_cast<int>(parent.size()));
    return parent.back();
  }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

struct Oracle {
  UnionFind uf;
  std::map<std::tuple<int, int, int>, int> node;  // (leg, d, local)
  std::vector<int> dim_of;
};

Oracle brute_pushout(const TableOfDimensions& t) {
  Oracle o;
  for (int k = 0; k < t.width(); ++k) {
    int m = t.upper()[k];
    for (int d = 0; d <= m; ++d)
      for (int l = 0; l < (d == m ? 1 : 2); ++l) {
        o.node[{k, d, l}] = o.uf.add();
        o.dim_of.push_back(d);
      }
  }
  // image of cell (d, l) of D_g under the side-word D_g -> D_m
  auto image = [](int g, int d, int l, Side s) { return std::make_pair(d, d < g ? l : (s == Side::source ? 0 : 1)); };
  for (int k = 0; k + 1 < t.width(); ++k) {
    int g = t.lower()[k];
    for (int d = 0; d <= g; ++d)
      for (int l = 0; l < (d == g ? 1 : 2); ++l) {
        auto [d1, l1] = image(g, d, l, Side::source);
        auto [d2, l2] = image(g, d, l, Side::target);
        o.uf.unite(o.node[{k, d1, l1}], o.node[{k + 1, d2, l2}]);
      }
  }
  return o;
}

}  // namespace

TEST(CoglobularWord, NormalFormDependsOnlyOnFirstLetter) {
  for (int from = 0; from <= 3; ++from)
    for (int len = 1; len <= 4; ++len)
      for (int mask = 0; mask < (1 << len); ++mask) {
        std::vector<Side> letters;
        for (int b = 0; b < len; ++b) letters.push_back((mask >> b) & 1 ? Side::target : Side::source);
        CoglobularWord w = CoglobularWord::from_letters(from, letters);
        EXPECT_EQ(w, CoglobularWord::iterated(letters[0], from, from + len));
        EXPECT_EQ(w.letters().size(), static_cast<std::size_t>(len));
      }
}

TEST(CoglobularWord, CompositionIsAssociativeWithIdentities) {
  std::vector<CoglobularWord> words;
  for (int a = 0; a <= 4; ++a)
    for (int b = a; b <= 4; ++b) {
      words.push_back(CoglobularWord::iterated(Side::source, a, b));
      if (a < b) words.push_back(CoglobularWord::iterated(Side::target, a, b));
    }
  for (const auto& w : words) {
    EXPECT_EQ(compose_words(CoglobularWord::identity(w.to), w), w);
    EXPECT_EQ(compose_words(w, CoglobularWord::identity(w.from)), w);
    for (const auto& v : words) {
      if (v.to != w.from) continue;
      for (const auto& u : words) {
        if (u.to != v.from) continue;
        EXPECT_EQ(compose_words(w, compose_words(v, u)), compose_words(compose_words(w, v), u));
      }
    }
  }
  EXPECT_THROW(compose_words(CoglobularWord::letter(Side::source, 3), CoglobularWord::letter(Side::source, 1)), Error);
}

TEST(CoglobularWord, GlobularRelations) {
  for (int i = 1; i <= 4; ++i)
    for (Side x : {Side::source, Side::target}) {
      auto lower = CoglobularWord::letter(x, i);
      EXPECT_EQ(compose_words(CoglobularWord::letter(Side::source, i + 1), lower),
                compose_words(CoglobularWord::letter(Side::target, i + 1), lower));
    }
}

TEST(Table, ValidationAndDimension) {
  EXPECT_THROW(TableOfDimensions({1, 1}, {1}), Error);
  EXPECT_THROW(TableOfDimensions({2, 0}, {0}), Error);
  EXPECT_THROW(TableOfDimensions({2, 2}, {}), Error);
  TableOfDimensions t({2, 3, 1}, {1, 0});
  EXPECT_EQ(t.dimension(), 3);
  EXPECT_EQ(t.width(), 3);
  EXPECT_EQ(t.str(), "D2 +1 D3 +0 D1");
}

TEST(Table, ParseRoundTrip) {
  for (const auto& t : all_tables(3, 3)) EXPECT_EQ(TableOfDimensions::parse(t.str()), t);
  EXPECT_THROW(TableOfDimensions::parse("D2 + D1"), Error);
  EXPECT_THROW(TableOfDimensions::parse("D1 +1 D1"), Error);
  EXPECT_THROW(TableOfDimensions::parse(""), Error);
}

TEST(RealizeSum, MatchesBruteForcePushout) {
  auto tables = all_tables(4, 4);
  EXPECT_GT(tables.size(), 200u);
  for (const auto& t : tables) {
    const SumRealization& r = realization(t);
    Oracle o = brute_pushout(t);
    std::vector<std::map<int, int>> classes(t.dimension() + 1);
    for (int v = 0; v < static_cast<int>(o.dim_of.size()); ++v) classes[o.dim_of[v]][o.uf.find(v)] = 0;
    for (int d = 0; d <= t.dimension(); ++d)
      EXPECT_EQ(r.carrier().count(d), static_cast<int>(classes[d].size())) << t.str() << " dim " << d;
    // same carrier cell exactly when the oracle identifies them
    std::map<int, int> class_to_cell;
    for (const auto& [key, v] : o.node) {
      auto [k, d, l] = key;
      int cell = r.leg_cell(k, d, l == 0 ? Side::source : Side::target);
      auto [it, fresh] = class_to_cell.emplace(o.uf.find(v), cell);
      EXPECT_EQ(it->second, cell) << t.str();
    }
    std::set<std::pair<int, int>> images;
    for (const auto& [cls, cell] : class_to_cell) images.insert({o.dim_of[cls], cell});
    EXPECT_EQ(images.size(), class_to_cell.size()) << t.str();
  }
}

TEST(RealizeSum, FrozenSmallCases) {
  const SumRealization& a = realization(TableOfDimensions({1, 1}, {0}));
  EXPECT_EQ(a.carrier().count(0), 3);
  EXPECT_EQ(a.carrier().count(1), 2);
  const SumRealization& b = realization(TableOfDimensions({2, 2}, {1}));
  EXPECT_EQ(b.carrier().count(0), 2);
  EXPECT_EQ(b.carrier().count(1), 3);
  EXPECT_EQ(b.carrier().count(2), 2);
}

TEST(RealizeSum, LowestLegPresentation) {
  const SumRealization& r = realization(TableOfDimensions({1, 1}, {0}));
  auto cells = disk_cells_as_words(r, 0);
  ASSERT_EQ(cells.size(), 3u);
  EXPECT_EQ(cells[0], (CellPresentation{0, CoglobularWord::iterated(Side::source, 0, 1)}));
  EXPECT_EQ(cells[1], (CellPresentation{0, CoglobularWord::iterated(Side::target, 0, 1)}));
  EXPECT_EQ(cells[2], (CellPresentation{1, CoglobularWord::iterated(Side::source, 0, 1)}));
  for (const auto& t : all_tables(3, 3)) {
    const SumRealization& s = realization(t);
    for (int d = 0; d <= t.dimension(); ++d)
      for (int c = 0; c < s.carrier().count(d); ++c) {
        const CellPresentation& p = s.presentation(d, c);
        EXPECT_EQ(s.apply_leg(p.leg, p.word), c);
        for (int k = 0; k < p.leg; ++k)
          for (int l = 0; l < 2 && d <= t.upper()[k]; ++l)
            EXPECT_NE(s.leg_cell(k, d, l ? Side::target : Side::source), c);
      }
  }
}

TEST(RealizeSum, SumsHaveTreeShape) {
  // every globular sum is contractible, so its Euler characteristic is 1
  for (const auto& t : all_tables(4, 4)) {
    const GlobularSet& g = realization(t).carrier();
    int euler = 0;
    for (int d = 0; d <= g.top(); ++d) euler += (d % 2 ? -1 : 1) * g.count(d);
    EXPECT_EQ(euler, 1) << t.str();
    EXPECT_FALSE(g.violation().has_value());
  }
}

TEST(GlobularSet, DegenerateAbove) {
  GlobularSet g({2, 1}, {{}, {0}}, {{}, {1}}, true);
  EXPECT_EQ(g.count(5), 1);
  EXPECT_EQ(g.source(3, 0), 0);
  EXPECT_EQ(g.iterated_face(Side::target, 4, 0, 0), 1);
  GlobularSet h({2, 1}, {{}, {0}}, {{}, {1}}, false);
  EXPECT_EQ(h.count(2), 0);
  EXPECT_THROW(GlobularSet({1, 1}, {{}, {2}}, {{}, {0}}, false), Error);
  EXPECT_THROW(GlobularSet({2, 2, 1}, {{}, {0, 0}, {0}}, {{}, {1, 0}, {1}}, false), Error);
}
