#include <gtest/gtest.h>

#include <memory>
#include <random>
#include <set>

#include "infgpd/dsl.hpp"
#include "infgpd/gpdmodel.hpp"
#include "infgpd/stdlib.hpp"

using namespace infgpd;

namespace {

std::vector<TableOfDimensions> tables_up_to(int width, int dim) {
  std::vector<TableOfDimensions> out;
  auto rec = [&](auto& self, std::vector<int> up, std::vector<int> low) -> void {
    out.emplace_back(up, low);
    if (static_cast<int>(up.size()) == width) return;
    for (int j = 0; j < up.back(); ++j)
      for (int m = j + 1; m <= dim; ++m) {
        auto u = up, l = low;
        l.push_back(j);
        u.push_back(m);
        self(self, u, l);
      }
  };
  for (int m = 0; m <= dim; ++m) rec(rec, {m}, {});
  return out;
}

// vertex group of the free groupoid on a connected graph by counting reduced loops of length <= 4
long reduced_loops(const Graph& g, int length) {
  // darts: edge e forwards (2e) or backwards (2e+1)
  std::vector<std::pair<int, int>> darts;
  for (auto [s, t] : g.edges) {
    darts.push_back({s, t});
    darts.push_back({t, s});
  }
  long count = 0;
  std::function<void(int, int, int)> walk = [&](int at, int last, int left) {
    if (left == 0) {
      count += at == 0;
      return;
    }
    for (int d = 0; d < static_cast<int>(darts.size()); ++d)
      if (darts[d].first == at && (last < 0 || (d ^ 1) != last)) walk(darts[d].second, d, left - 1);
  };
  walk(0, -1, length);
  return count;
}

const TowerInterpretation& interp3() {
  static TowerInterpretation k = interpret_tower(stdlib(3));
  return k;
}

}  // namespace

TEST(Groupoid, ValidatorsAndJson) {
  for (const auto& x : groupoid_corpus()) {
    EXPECT_FALSE(x.violation()) << x.name;
    FiniteGroupoid back = groupoid_from_json(groupoid_to_json(x));
    EXPECT_EQ(groupoid_to_json(back), groupoid_to_json(x));
  }
  FiniteGroupoid bad = group_groupoid(cyclic(3));
  bad.comp[1][1] = 1;
  EXPECT_NE(bad.violation()->find("associativity"), std::string::npos);
  EXPECT_THROW(groupoid_from_json(R"({"objects": 1, "arrows": [{"src": 0, "tgt": 0}, {"src": 0, "tgt": 0}],
      "compose": [[0,0,0],[0,1,1],[1,0,1],[1,1,1]], "inverse": [0,1]})"), Error);
  EXPECT_THROW(groupoid_from_json("{"), Error);
}

TEST(Groupoid, CorpusIsExhaustive) {
  auto corpus = groupoid_corpus();
  // iso types: connected pieces (1, G) for 14 groups, codiscrete2, codiscrete2 x Z2
  std::set<std::string> names;
  for (const auto& x : corpus) names.insert(x.name);
  EXPECT_EQ(names.size(), corpus.size());
  int small = 0;
  for (const auto& x : corpus) small += x.objects <= 3 && x.arrows() <= 8;
  // 16 connected, 28 with two pieces, 21 with three, counted by hand from group orders
  EXPECT_EQ(small, 65);
  EXPECT_EQ(corpus.size(), 68u);
  EXPECT_TRUE(names.count("S3"));
  EXPECT_TRUE(names.count("Z2+codiscrete2"));
  EXPECT_TRUE(names.count("1+1+Z2"));
}

TEST(Globe, DiagramValidates) {
  for (int n = 1; n <= 4; ++n) {
    auto d = globe_diagram(n);
    EXPECT_FALSE(d->violation()) << *d->violation();
  }
  auto d = globe_diagram(4);
  EXPECT_EQ(d->sphere[1].vertices, 2);  // S(0)
  EXPECT_TRUE(d->sphere[1].edges.empty());
  // S(1): two parallel edges, vertex groups free of rank one
  const Graph& s1 = d->sphere[2];
  EXPECT_EQ(s1.vertices, 2);
  EXPECT_EQ(s1.edges.size(), 2u);
  EXPECT_EQ(s1.cycle_rank(), 1);
  // a free group of rank one has exactly two reduced words of each positive length
  for (int len = 1; len <= 4; ++len) EXPECT_EQ(reduced_loops(s1, len), len % 2 == 0 ? 2 : 0);
  for (int k = 3; k <= 4; ++k) EXPECT_TRUE(d->sphere[k].contractible());
}

TEST(Globe, SumsAreThinAndContractible) {
  auto tables = tables_up_to(4, 4);
  EXPECT_GT(tables.size(), 300u);
  for (const auto& t : tables) {
    SumGraph s = sum_graph(t);
    EXPECT_TRUE(s.graph.contractible()) << t.str();
    // objects of the groupoid sum are the 0-cells of the globular sum
    EXPECT_EQ(s.graph.vertices, realization(t).carrier().count(0)) << t.str();
    for (int len = 1; len <= 4; ++len) EXPECT_EQ(reduced_loops(s.graph, len), 0) << t.str();
  }
}

TEST(Globe, LiftingIsTotalAndUnique) {
  auto tables = tables_up_to(4, 4);
  std::mt19937_64 rng(0);
  int checked = 0;
  while (checked < 200) {
    const TableOfDimensions& t = tables[std::uniform_int_distribution<std::size_t>(0, tables.size() - 1)(rng)];
    SumGraph s = sum_graph(t);
    int v = s.graph.vertices;
    int n = std::uniform_int_distribution<int>(0, 3)(rng);
    auto pick = [&] { return std::uniform_int_distribution<int>(0, v - 1)(rng); };
    ObjectPair f, g;
    if (n == 0) {
      int a = pick(), b = pick();
      f = {a, a};
      g = {b, b};
    } else {
      f = {pick(), pick()};
      g = f;
    }
    ObjectPair h = lifting_oracle(t, n, f, g);
    // brute force over all functors D(n+1) -> F(S), determined by object pairs
    int fillers = 0;
    for (int p = 0; p < v; ++p)
      for (int q = 0; q < v; ++q) {
        ObjectPair c{p, q};
        ObjectPair cs = n == 0 ? ObjectPair{p, p} : c, ct = n == 0 ? ObjectPair{q, q} : c;
        if (cs == f && ct == g) {
          ++fillers;
          EXPECT_EQ(c, h);
        }
      }
    EXPECT_EQ(fillers, 1) << t.str();
    ++checked;
  }
  // D1 glued to D1 at a point: composition sends the free arrow to the composite
  EXPECT_EQ(interp3().image[*interp3().tower->find("nabla1_0")], (ObjectPair{sum_graph(TableOfDimensions::parse("D1 +0 D1")).leg_source[1], sum_graph(TableOfDimensions::parse("D1 +0 D1")).leg_target[0]}));
  EXPECT_EQ(interp3().image[*interp3().tower->find("kappa0")], (ObjectPair{0, 0}));
}

TEST(Globe, InterpretationIsDeterministic) {
  auto a = interpret_tower(stdlib(3));
  auto b = interpret_tower(stdlib(3));
  ASSERT_EQ(a.image.size(), b.image.size());
  for (std::size_t h = 0; h < a.image.size(); ++h) EXPECT_EQ(a.image[h], b.image[h]);
  auto user = std::make_shared<const Tower>(load_tower(print_tower(*stdlib(2))));
  auto c = interpret_tower(user);
  for (GenId h = 0; h < user->size(); ++h) EXPECT_EQ(c.image[h], a.image[*a.tower->find(user->generator(h).name)]);
}

TEST(Fundamental, Examples) {
  const auto& k = interp3();
  auto b = bundle_of(*k.tower);
  Model pt = fundamental(point_groupoid(), k);
  EXPECT_TRUE(check_model(pt).ok());
  EXPECT_EQ(pt.count(0), 1);
  Model cd = fundamental(codiscrete_groupoid(2), k);
  EXPECT_TRUE(check_model(cd).ok());
  EXPECT_EQ(pi0(cd).size(), 1);
  EXPECT_EQ(pi_n(cd, b, 1, 1).order(), 1);
  Model z4 = fundamental(group_groupoid(cyclic(4)), k);
  EXPECT_TRUE(check_model(z4).ok());
  EXPECT_EQ(pi_n(z4, b, 1, 0).name, "Z4");
  EXPECT_EQ(pi_n(z4, b, 2, 0).order(), 1);
}

TEST(Fundamental, CompositionMatchesConcatenation) {
  const auto& k = interp3();
  GenId nabla = *k.tower->find("nabla1_0");
  for (const auto& x : {connected_groupoid(2, cyclic(2)), group_groupoid(symmetric(3)), codiscrete_groupoid(3)}) {
    Model m = fundamental(x, k);
    for (int g = 0; g < x.arrows(); ++g)
      for (int f = 0; f < x.arrows(); ++f)
        if (x.src[g] == x.tgt[f]) EXPECT_EQ(m.apply(nabla, {g, f}), x.compose(g, f));
  }
}

TEST(Quillen, PathObject) {
  auto p = path_object(point_groupoid());
  EXPECT_EQ(p->p.objects, 1);
  EXPECT_EQ(p->p.arrows(), 1);
  // Z2: objects are the two arrows, squares (a, s, t) number 2 * 2 * 2
  auto z2 = group_groupoid(cyclic(2));
  auto q = path_object(z2);
  EXPECT_EQ(q->p.objects, 2);
  EXPECT_EQ(q->p.arrows(), 8);
  for (const auto& x : groupoid_corpus()) {
    auto po = path_object(x);
    EXPECT_FALSE(po->r.violation());
    EXPECT_TRUE(is_equivalence(po->r)) << x.name;
    EXPECT_TRUE(injective_on_objects(po->r));
    EXPECT_TRUE(is_isofibration(*po));
  }
}

TEST(Quillen, LoopsAndPi1) {
  const auto& k = interp3();
  BasedGroupoid z3{group_groupoid(cyclic(3)), 0};
  BasedGroupoid om = loop(z3);
  EXPECT_EQ(om.x.objects, 3);
  EXPECT_EQ(om.x.arrows(), 3);
  EXPECT_EQ(om.x.component_count(), 3);
  QuillenPi1 q = quillen_pi1(z3, k);
  EXPECT_EQ(q.by_homotopy.name, "Z3");
  EXPECT_EQ(q.by_loops.name, "Z3");
  EXPECT_EQ(quillen_pi1({codiscrete_groupoid(2), 1}, k).by_homotopy.order(), 1);
  for (const auto& x : groupoid_corpus())
    for (int o = 0; o < x.objects; ++o) {
      EXPECT_EQ(quillen_pi(BasedGroupoid{x, o}, 2, k).order(), 1);
      EXPECT_EQ(quillen_pi(BasedGroupoid{x, o}, 3, k).order(), 1);
    }
}

TEST(Comparison, Examples) {
  const auto& k = interp3();
  ComparisonReport r = compare(disjoint_union(group_groupoid(cyclic(2)), group_groupoid(cyclic(3))), k);
  EXPECT_EQ(r.components, 2);
  EXPECT_EQ(r.pi1, (std::vector<std::string>{"Z2", "Z3"}));
}

TEST(Comparison, Naturality) {
  const auto& k = interp3();
  auto b = bundle_of(*k.tower);
  std::vector<FiniteGroupoid> xs = {group_groupoid(cyclic(2)), group_groupoid(cyclic(4)), codiscrete_groupoid(2),
                                    disjoint_union(point_groupoid(), group_groupoid(cyclic(2)))};
  std::vector<std::unique_ptr<Model>> models;
  for (const auto& x : xs) models.push_back(std::make_unique<Model>(fundamental(x, k)));
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j)
      for (const auto& f : all_functors(xs[i], xs[j])) {
        ModelMorphism m = fundamental_map(f, *models[i], *models[j]);
        ASSERT_FALSE(morphism_violation(m));
        HomotopyClasses c = pi0(*models[i]), d = pi0(*models[j]);
        std::vector<int> cx = xs[i].components(), cy = xs[j].components();
        for (int o = 0; o < xs[i].objects; ++o) EXPECT_EQ(d.class_of[m(0, o)], cy[f.on_objects[o]]);
        PiGroupoid p = pi_groupoid(*models[i], b, 1), q = pi_groupoid(*models[j], b, 1);
        for (int a = 0; a < xs[i].arrows(); ++a)
          EXPECT_EQ(q.classes.rep[q.classes.class_of[m(1, a)]], f.on_arrows[a]);
      }
}

TEST(Comparison, EquivalencesAreWeakEquivalences) {
  const auto& k = interp3();
  auto b = bundle_of(*k.tower);
  std::vector<FiniteGroupoid> xs;
  for (const auto& x : groupoid_corpus())
    if (x.arrows() <= 4) xs.push_back(x);
  EXPECT_EQ(xs.size(), 12u);
  std::vector<std::unique_ptr<Model>> models;
  for (const auto& x : xs) models.push_back(std::make_unique<Model>(fundamental(x, k)));
  int equivalences = 0, others = 0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j)
      for (const auto& f : all_functors(xs[i], xs[j])) {
        WeakEquivReport r = weak_equiv(fundamental_map(f, *models[i], *models[j]), b);
        bool e = is_equivalence(f);
        (e ? equivalences : others)++;
        for (int c = 0; c < 4; ++c) ASSERT_EQ(r.condition[c], e) << xs[i].name << " -> " << xs[j].name << "\n" << r.str();
      }
  EXPECT_GT(equivalences, 10);
  EXPECT_GT(others, 100);
}

namespace {

// every map of objects and arrows that respects boundaries, composition and identities
std::vector<GroupoidFunctor> brute_force_functors(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  std::vector<GroupoidFunctor> out;
  GroupoidFunctor f{&a, &b, std::vector<int>(a.objects), std::vector<int>(a.arrows())};
  std::function<void(int)> objects = [&](int o) {
    if (o < a.objects) {
      for (int p = 0; p < b.objects; ++p) {
        f.on_objects[o] = p;
        objects(o + 1);
      }
      return;
    }
    std::function<void(int)> arrows = [&](int g) {
      if (g < a.arrows()) {
        for (int h = 0; h < b.arrows(); ++h) {
          f.on_arrows[g] = h;
          arrows(g + 1);
        }
        return;
      }
      for (int x = 0; x < a.arrows(); ++x)
        if (b.src[f.on_arrows[x]] != f.on_objects[a.src[x]] || b.tgt[f.on_arrows[x]] != f.on_objects[a.tgt[x]]) return;
      for (int x = 0; x < a.arrows(); ++x) {
        for (int y = 0; y < a.arrows(); ++y)
          if (a.src[y] == a.tgt[x] && f.on_arrows[a.compose(y, x)] != b.compose(f.on_arrows[y], f.on_arrows[x])) return;
      }
      for (int o2 = 0; o2 < a.objects; ++o2)
        if (f.on_arrows[a.identity[o2]] != b.identity[f.on_objects[o2]]) return;
      out.push_back(f);
    };
    arrows(0);
  };
  objects(0);
  return out;
}

// composite functor g f on objects and arrows
GroupoidFunctor then(const GroupoidFunctor& f, const GroupoidFunctor& g) {
  GroupoidFunctor h{f.source, g.target, {}, {}};
  for (int o : f.on_objects) h.on_objects.push_back(g.on_objects[o]);
  for (int a : f.on_arrows) h.on_arrows.push_back(g.on_arrows[a]);
  return h;
}

// some natural isomorphism from the identity to h
bool iso_to_identity(const GroupoidFunctor& h) {
  const FiniteGroupoid& x = *h.source;
  std::vector<int> eta(x.objects);
  std::function<bool(int)> rec = [&](int o) {
    if (o == x.objects) {
      for (int a = 0; a < x.arrows(); ++a)
        if (x.compose(eta[x.tgt[a]], a) != x.compose(h.on_arrows[a], eta[x.src[a]])) return false;
      return true;
    }
    for (int c : x.hom(o, h.on_objects[o])) {
      eta[o] = c;
      if (rec(o + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

}  // namespace

TEST(Groupoid, FunctorsAndEquivalencesMatchBruteForce) {
  std::vector<FiniteGroupoid> xs;
  for (const auto& x : groupoid_corpus())
    if (x.arrows() <= 4) xs.push_back(x);
  int equivalences = 0;
  for (const auto& a : xs)
    for (const auto& b : xs) {
      auto fs = all_functors(a, b);
      auto brute = brute_force_functors(a, b);
      ASSERT_EQ(fs.size(), brute.size()) << a.name << " -> " << b.name;
      auto back = all_functors(b, a);
      for (const auto& f : fs) {
        bool quasi_inverse = false;
        for (const auto& g : back)
          if (iso_to_identity(then(f, g)) && iso_to_identity(then(g, f))) quasi_inverse = true;
        EXPECT_EQ(is_equivalence(f), quasi_inverse) << a.name << " -> " << b.name;
        equivalences += quasi_inverse;
      }
    }
  EXPECT_GT(equivalences, 10);
}
