#include <gtest/gtest.h>
#include <numeric>

#include "infgpd/dsl.hpp"
#include "infgpd/homotopy.hpp"
#include "infgpd/stdlib.hpp"
#include "support.hpp"

using namespace infgpd;

namespace {

CrossedModuleSpec doubling_xmod() { return trivial_action_crossed_module(cyclic(4), cyclic(4), {0, 2, 0, 2}); }

// brute force: a and b homotopic iff some (n+1)-cell goes from a to b
int brute_force_classes(const Model& m, int n) {
  std::vector<int> seen(m.count(n), 0);
  int k = 0;
  for (int a = 0; a < m.count(n); ++a) {
    if (seen[a]) continue;
    ++k;
    for (int b = 0; b < m.count(n); ++b)
      for (int c = 0; c < m.count(n + 1); ++c)
        if (m.carrier().source(n + 1, c) == a && m.carrier().target(n + 1, c) == b) seen[b] = 1;
  }
  return k;
}

}  // namespace

TEST(Homotopy, ClassesMatchBruteForce) {
  auto tower = stdlib(3);
  for (auto s : {kg1_structure(symmetric(3)), kan_structure(cyclic(4), 2), crossed_module_structure(doubling_xmod())}) {
    Model m = build_strict(s, tower);
    for (int n = 0; n <= 2; ++n) EXPECT_EQ(homotopy_classes(m, n).size(), brute_force_classes(m, n)) << s->name();
  }
}

TEST(Homotopy, HomotopicExamples) {
  auto tower = stdlib(3);
  Model m = build_strict(crossed_module_structure(doubling_xmod()), tower);
  EXPECT_TRUE(homotopic(m, 1, 0, 2));
  EXPECT_TRUE(homotopic(m, 1, 1, 3));
  EXPECT_FALSE(homotopic(m, 1, 0, 1));
  EXPECT_TRUE(homotopic(m, 0, 0, 0));
  EXPECT_THROW(homotopic(m, 2, 0, 1), Error);  // (0,0): 0 => 0 and (0,1): 0 => 2
}

TEST(Homotopy, FundamentalGroupOfKG1) {
  auto tower = stdlib(3);
  auto b = bundle_of(*tower);
  for (const FiniteGroup& g : small_groups()) {
    Model m = build_strict(kg1_structure(g), tower);
    FiniteGroup p = pi_n(m, b, 1, 0);
    EXPECT_TRUE(find_isomorphism(p, g).has_value()) << g.name;
    EXPECT_EQ(p.name, g.name);
    EXPECT_EQ(pi_n(m, b, 2, 0).order(), 1);
  }
}

TEST(Homotopy, EilenbergMacLane) {
  auto tower = stdlib(3);
  auto b = bundle_of(*tower);
  Model m = build_strict(kan_structure(cyclic(4), 2), tower);
  EXPECT_EQ(pi0(m).size(), 1);
  EXPECT_EQ(pi_n(m, b, 1, 0).order(), 1);
  EXPECT_EQ(pi_n(m, b, 2, 0).name, "Z4");
  EXPECT_THROW(pi_n(m, b, 3, 0), Error);
  Model d = build_strict(discrete_structure(3), tower);
  EXPECT_EQ(pi0(d).size(), 3);
  EXPECT_EQ(pi_n(d, b, 1, 2).order(), 1);
}

TEST(Homotopy, CrossedModuleGroups) {
  auto tower = stdlib(3);
  auto b = bundle_of(*tower);
  Model m = build_strict(crossed_module_structure(doubling_xmod()), tower);
  EXPECT_EQ(pi_n(m, b, 1, 0).name, "Z2");
  EXPECT_EQ(pi_n(m, b, 2, 0).name, "Z2");
  // pi_2 at a non-unit loop
  EXPECT_EQ(pi_n_at(m, b, 2, 1).name, "Z2");
}

TEST(Homotopy, DivisionInDimensionTwo) {
  auto tower = stdlib(3);
  auto b = bundle_of(*tower);
  Model m = build_strict(crossed_module_structure(doubling_xmod()), tower);
  // gamma = (1, 1): 1 => 3, whiskering along 0-cells
  int gamma = 4 * 1 + 1;
  for (int u = 0; u < 4; ++u)
    for (int v = 0; v < 4; ++v) {
      if (!homotopic(m, 1, u, v)) continue;
      Division d = divide(m, b, 2, 0, gamma, u, v);
      EXPECT_EQ(d.domain.size(), d.codomain.size());
      EXPECT_EQ(d.k.size(), d.domain.size());
      EXPECT_EQ(d.whiskered_u, (1 + u) % 4);
      EXPECT_TRUE(d.auto_lifts.size() == 2);
    }
}

TEST(Homotopy, DivisionInDimensionThree) {
  auto tower = stdlib(4);
  auto b = bundle_of(*tower);
  Model m = build_strict(kan_structure(cyclic(2), 3), tower);
  for (int i : {0, 1}) {
    for (int gamma = 0; gamma < m.count(3); ++gamma) {
      Division d = divide(m, b, 3, i, gamma, 0, 0);
      EXPECT_EQ(d.domain.size(), 2u);
      EXPECT_EQ(d.codomain.size(), 2u);
      EXPECT_EQ(d.auto_lifts.size(), i == 0 ? 4u : 2u);
      // whiskering by a nontrivial 3-cell shifts classes
      EXPECT_EQ(d.k.at(0) != 0, gamma == 1);
    }
  }
}

TEST(Homotopy, BaseChangeAndTransport) {
  auto tower = stdlib(3);
  auto b = bundle_of(*tower);
  Model m = build_strict(crossed_module_structure(doubling_xmod()), tower);
  for (int u = 0; u < 4; ++u) {
    GroupIso iso = base_change_iso(m, b, 2, u);
    EXPECT_EQ(iso.from.order(), 2);
    EXPECT_EQ(iso.to.order(), 2);
    EXPECT_TRUE(is_homomorphism(iso.from, iso.to, iso.map));
  }
  GroupIso t = transport(m, b, 1, 1);
  EXPECT_EQ(t.map, (std::vector<int>{0, 1}));
  Model s = build_strict(kg1_structure(symmetric(3)), tower);
  GroupIso c = transport(s, b, 1, 1);
  EXPECT_EQ(c.from.order(), 6);
  EXPECT_TRUE(is_homomorphism(c.from, c.to, c.map));
  GroupIso t2 = transport(m, b, 2, 1);
  EXPECT_EQ(t2.from.order(), 2);
}

TEST(Homotopy, TruncationBoundary) {
  auto tower = stdlib(2);
  auto b = bundle_of(*tower);
  Model m = build_strict(kg1_structure(cyclic(3)), tower);
  EXPECT_EQ(pi_n(m, b, 1, 0).name, "Z3");
  EXPECT_THROW(pi_n(m, b, 2, 0), Error);
  EXPECT_THROW(pi_groupoid(m, b, 2), Error);
}

// An alternative composition nabla' = boundary(a0) g h with a coherence 2-cell
// to the standard one; Pi_1 tables must not notice.
TEST(Homotopy, GroupoidIndependentOfChoices) {
  auto base = stdlib(3);
  std::string extra =
      "lift nabla1_0b : D1 -> D1 +0 D1 ; src = eps2 * s1 ; tgt = eps1 * t1\n"
      "lift mu : D2 -> D1 +0 D1 ; src = nabla1_0 ; tgt = nabla1_0b\n"
      "lift omega1_0b : D1 -> D1 ; src = t1 ; tgt = s1\n"
      "lift nu : D2 -> D1 ; src = omega1_0 ; tgt = omega1_0b\n";
  auto tower = std::make_shared<const Tower>(load_tower(print_tower(*base) + extra));
  PregroupoidBundle a = bundle_of(*tower);
  PregroupoidBundle alt = a;
  alt.nabla[{1, 0}] = *tower->find("nabla1_0b");
  alt.omega[{1, 0}] = *tower->find("omega1_0b");
  for (int shift : {0, 1}) {
    Model strict = build_strict(crossed_module_structure(doubling_xmod()), base);
    Model m(tower, strict.carrier());
    for (GenId h = 0; h < base->size(); ++h)
      for (const Cells& in : strict.inputs(*base->generator(h).target)) m.set(h, in, strict.apply(h, in));
    GenId nb = *tower->find("nabla1_0b"), mu = *tower->find("mu"), ob = *tower->find("omega1_0b"),
          nu = *tower->find("nu");
    for (int g = 0; g < 4; ++g) {
      for (int h = 0; h < 4; ++h) {
        m.set(nb, {g, h}, (g + h + 2 * shift) % 4);
        m.set(mu, {g, h}, 4 * ((g + h) % 4) + shift);
      }
      m.set(ob, {g}, (8 - g + 2 * shift) % 4);
      m.set(nu, {g}, 4 * ((4 - g) % 4) + shift);
    }
    ModelReport r = check_model(m);
    ASSERT_TRUE(r.ok()) << r.str();
    EXPECT_EQ(pi_groupoid(m, a, 1).table(), pi_groupoid(m, alt, 1).table()) << shift;
    EXPECT_EQ(pi_groupoid(m, a, 2).table(), pi_groupoid(m, alt, 2).table()) << shift;
  }
}

TEST(Homotopy, GroupoidCommutesWithRestriction) {
  auto a = stdlib(3);
  auto b = infgpd::testing::doubled_stdlib(3);
  std::vector<Term> assignment;
  for (GenId h = 0; h < a->size(); ++h) assignment.push_back(generator_term(*b, a->generator(h).name + "_b"));
  TowerFunctor f(a, b, assignment);
  auto bundle = bundle_of(*a);
  for (auto s : {kg1_structure(symmetric(3)), crossed_module_structure(doubling_xmod()), kan_structure(cyclic(2), 2)}) {
    Model mb = build_strict(s, b);
    Model ma = restrict(mb, f);
    for (int n : {1, 2}) {
      PiOps ops = pi_ops(*a, bundle, n);
      EXPECT_EQ(pi_groupoid(ma, ops, n).table(), pi_groupoid(mb, apply(f, ops), n).table()) << s->name();
    }
  }
}

namespace {

ModelMorphism identity_morphism(const std::shared_ptr<const Model>& m) {
  ModelMorphism f{m.get(), m.get(), {}};
  for (int d = 0; d <= m->carrier().top(); ++d) {
    std::vector<int> id(m->count(d));
    std::iota(id.begin(), id.end(), 0);
    f.cells.push_back(id);
  }
  return f;
}

// strict morphism given on 0-, 1- and 2-cells
ModelMorphism morphism(std::shared_ptr<const Model> s, std::shared_ptr<const Model> t, std::vector<std::vector<int>> cells) {
  return ModelMorphism{s.get(), t.get(), std::move(cells)};
}

}  // namespace

TEST(Homotopy, WeakEquivalenceSuite) {
  auto tower = stdlib(3);
  auto b = bundle_of(*tower);
  auto model = [&](std::shared_ptr<StrictStructure> s) { return std::make_shared<const Model>(build_strict(s, tower)); };
  auto z3 = model(kg1_structure(cyclic(3)));
  auto z2 = model(kg1_structure(cyclic(2)));
  auto z4 = model(kg1_structure(cyclic(4)));
  auto s3 = model(kg1_structure(symmetric(3)));
  auto pt = model(discrete_structure(1));
  auto two = model(discrete_structure(2));
  auto k4 = model(kan_structure(cyclic(4), 2));
  auto k2 = model(kan_structure(cyclic(2), 2));
  auto xm = model(crossed_module_structure(doubling_xmod()));

  struct Case {
    std::string name;
    ModelMorphism f;
    bool expected;
  };
  std::vector<Case> cases = {
      {"identity Z3", identity_morphism(z3), true},
      {"identity crossed module", identity_morphism(xm), true},
      {"negation on Z3", morphism(z3, z3, {{0}, {0, 2, 1}, {0, 2, 1}}), true},
      {"Z2 into Z4", morphism(z2, z4, {{0}, {0, 2}, {0, 2}}), false},
      {"Z4 onto Z2", morphism(z4, z2, {{0}, {0, 1, 0, 1}, {0, 1, 0, 1}}), false},
      {"S3 to the point", morphism(s3, pt, {{0}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}}), false},
      {"point into two points", morphism(pt, two, {{0}, {0}, {0}}), false},
      {"two points to the point", morphism(two, pt, {{0, 0}, {0, 0}, {0, 0}}), false},
      {"K(Z4,2) mod 2", morphism(k4, k2, {{0}, {0}, {0, 1, 0, 1}}), false},
  };
  for (const auto& c : cases) {
    WeakEquivReport r = weak_equiv(c.f, b);
    EXPECT_TRUE(r.consistent()) << c.name;
    for (int k = 0; k < 4; ++k) EXPECT_EQ(r.condition[k], c.expected) << c.name << " condition " << k + 1 << "\n" << r.str();
  }
}
