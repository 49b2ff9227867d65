#include "infgpd/stdlib.hpp"

namespace infgpd {

namespace {

class Builder {
 public:
  explicit Builder(Tower& t) : t_(t) {}

  Term gen(const std::string& name) const { return generator_term(t_, name); }
  Term cmp(const Term& g, const Term& f) const { return compose(t_, g, f); }
  Term cmp(const Term& h, const Term& g, const Term& f) const { return cmp(h, cmp(g, f)); }
  Term tup(const std::vector<Term>& cs, const TableOfDimensions& src) const { return tuple(t_, cs, src); }
  static Term e(const TableOfDimensions& t, int k) { return eps(t, k - 1); }
  static Term sig(int i) { return word_term(CoglobularWord::letter(Side::source, i)); }
  static Term tau(int i) { return word_term(CoglobularWord::letter(Side::target, i)); }
  static Term id(int i) { return identity_term(TableOfDimensions::disk(i)); }
  Term legs(const TableOfDimensions& target, const std::vector<int>& ks, int i, int j) const {
    return legs_tuple(t_, target, ks, i, j);
  }

  Term nabla(int i, int j) const { return gen("nabla" + std::to_string(i) + "_" + std::to_string(j)); }
  Term omega(int i, int j) const { return gen("omega" + std::to_string(i) + "_" + std::to_string(j)); }
  Term kappa(int i) const { return gen("kappa" + std::to_string(i)); }
  Term alpha(int i) const { return gen("alpha" + std::to_string(i)); }

  void lift(const std::string& name, const Term& f, const Term& g) { t_.declare_lift(name, f, g); }

  void nabla_gen(int i, int j) {
    TableOfDimensions T = uniform_sum(i, j, 2);
    std::string name = "nabla" + std::to_string(i) + "_" + std::to_string(j);
    if (j == i - 1) {
      lift(name, cmp(e(T, 2), sig(i)), cmp(e(T, 1), tau(i)));
      return;
    }
    TableOfDimensions V = uniform_sum(i - 1, j, 2);
    Term f = cmp(tup({cmp(e(T, 1), sig(i)), cmp(e(T, 2), sig(i))}, V), nabla(i - 1, j));
    Term g = cmp(tup({cmp(e(T, 1), tau(i)), cmp(e(T, 2), tau(i))}, V), nabla(i - 1, j));
    lift(name, f, g);
  }

  void kappa_gen(int i) { lift("kappa" + std::to_string(i), id(i), id(i)); }

  void omega_gen(int i, int j) {
    std::string name = "omega" + std::to_string(i) + "_" + std::to_string(j);
    if (j == i - 1) {
      lift(name, tau(i), sig(i));
      return;
    }
    lift(name, cmp(sig(i), omega(i - 1, j)), cmp(tau(i), omega(i - 1, j)));
  }

  // (nabla + D) and friends: maps out of D_i +j D_i into the 3-fold sum
  Term nabla_left(int i, int j, int width) const {
    TableOfDimensions T = uniform_sum(i, j, width);
    TableOfDimensions P = uniform_sum(i, j, width - 1);
    std::vector<Term> cs{cmp(legs(T, {1, 2}, i, j), nabla(i, j))};
    for (int k = 3; k <= width; ++k) cs.push_back(e(T, k));
    return tup(cs, P);
  }
  Term nabla_right(int i, int j, int width) const {
    TableOfDimensions T = uniform_sum(i, j, width);
    TableOfDimensions P = uniform_sum(i, j, width - 1);
    std::vector<Term> cs;
    for (int k = 1; k <= width - 2; ++k) cs.push_back(e(T, k));
    cs.push_back(cmp(legs(T, {width - 1, width}, i, j), nabla(i, j)));
    return tup(cs, P);
  }
  Term nabla_middle4(int i, int j) const {
    TableOfDimensions T = uniform_sum(i, j, 4);
    return tup({e(T, 1), cmp(legs(T, {2, 3}, i, j), nabla(i, j)), e(T, 4)}, uniform_sum(i, j, 3));
  }

  void alpha_gen(int i) {
    Term n = nabla(i, i - 1);
    lift("alpha" + std::to_string(i), cmp(nabla_left(i, i - 1, 3), n), cmp(nabla_right(i, i - 1, 3), n));
  }

  void unit_inverse_gens(int i) {
    TableOfDimensions T2 = uniform_sum(i, i - 1, 2);
    Term n = nabla(i, i - 1);
    Term sk = cmp(sig(i), kappa(i - 1));
    Term tk = cmp(tau(i), kappa(i - 1));
    std::string s = std::to_string(i);
    lift("lambda" + s, cmp(tup({tk, id(i)}, T2), n), id(i));
    lift("rho" + s, cmp(tup({id(i), sk}, T2), n), id(i));
    lift("delta" + s, cmp(tup({id(i), omega(i, i - 1)}, T2), n), tk);
    lift("gamma" + s, cmp(tup({omega(i, i - 1), id(i)}, T2), n), sk);
  }

  void pentagon_gen(int i) {
    TableOfDimensions S4 = uniform_sum(i, i - 1, 4);
    Term a = alpha(i);
    Term n1 = nabla(i + 1, i);
    Term n2 = nabla(i + 1, i - 1);
    Term c2 = cmp(tup({cmp(nabla_right(i, i - 1, 4), a), cmp(nabla_left(i, i - 1, 4), a)}, uniform_sum(i + 1, i, 2)), n1);
    TableOfDimensions W = uniform_sum(i + 1, i - 1, 2);
    Term A = cmp(tup({cmp(e(S4, 1), kappa(i)), cmp(legs(S4, {2, 3, 4}, i, i - 1), a)}, W), n2);
    Term B = cmp(nabla_middle4(i, i - 1), a);
    Term C = cmp(tup({cmp(legs(S4, {1, 2, 3}, i, i - 1), a), cmp(e(S4, 4), kappa(i))}, W), n2);
    TableOfDimensions U3 = uniform_sum(i + 1, i, 3);
    Term split = tup({cmp(legs(U3, {1, 2}, i + 1, i), n1), e(U3, 3)}, uniform_sum(i + 1, i, 2));
    Term c3 = cmp(tup({A, B, C}, U3), split, n1);
    lift("pi" + std::to_string(i), c3, c2);
  }

  void exchange_gen(int i) {
    TableOfDimensions T({i, i, i, i}, {i - 1, i - 2, i - 1});
    TableOfDimensions V = uniform_sum(i, i - 2, 2);
    TableOfDimensions T2 = uniform_sum(i, i - 1, 2);
    Term nv = nabla(i, i - 2);
    Term nh = nabla(i, i - 1);
    Term f = cmp(tup({cmp(tup({e(T, 1), e(T, 3)}, V), nv), cmp(tup({e(T, 2), e(T, 4)}, V), nv)}, T2), nh);
    Term g = cmp(tup({cmp(tup({e(T, 1), e(T, 2)}, T2), nh), cmp(tup({e(T, 3), e(T, 4)}, T2), nh)}, V), nv);
    lift("exch" + std::to_string(i), f, g);
  }

  void nu_gen(int i) {
    TableOfDimensions T2 = uniform_sum(i, i - 1, 2);
    TableOfDimensions W = uniform_sum(i + 1, i - 1, 2);
    std::string s = std::to_string(i);
    Term k = kappa(i);
    Term d2 = cmp(tup({cmp(tup({cmp(e(T2, 1), k), cmp(e(T2, 2), gen("lambda" + s))}, W), nabla(i + 1, i - 1)),
                       cmp(tup({e(T2, 1), cmp(e(T2, 1), sig(i), kappa(i - 1)), e(T2, 2)}, uniform_sum(i, i - 1, 3)),
                           alpha(i))},
                      uniform_sum(i + 1, i, 2)),
                  nabla(i + 1, i));
    Term d1 = cmp(tup({cmp(e(T2, 1), gen("rho" + s)), cmp(e(T2, 2), k)}, W), nabla(i + 1, i - 1));
    lift("nu" + s, d2, d1);
  }

 private:
  Tower& t_;
};

}  // namespace

GenId PregroupoidBundle::nabla_at(int i, int j) const {
  auto it = nabla.find({i, j});
  if (it == nabla.end()) throw Error("tower has no composition D" + std::to_string(i) + " -> D" + std::to_string(i) + " +" + std::to_string(j) + " D" + std::to_string(i));
  return it->second;
}

GenId PregroupoidBundle::kappa_at(int i) const {
  auto it = kappa.find(i);
  if (it == kappa.end()) throw Error("tower has no unit in dimension " + std::to_string(i));
  return it->second;
}

GenId PregroupoidBundle::omega_at(int i, int j) const {
  auto it = omega.find({i, j});
  if (it == omega.end()) throw Error("tower has no inverse omega" + std::to_string(i) + "_" + std::to_string(j));
  return it->second;
}

bool PregroupoidBundle::complete_up_to(int n) const {
  for (int i = 1; i <= n; ++i) {
    if (!kappa.count(i - 1)) return false;
    for (int j = 0; j < i; ++j)
      if (!nabla.count({i, j}) || !omega.count({i, j})) return false;
  }
  return true;
}

TableOfDimensions uniform_sum(int i, int j, int width) {
  return TableOfDimensions(std::vector<int>(width, i), std::vector<int>(width - 1, j));
}

Term legs_tuple(const Tower& tower, const TableOfDimensions& target, const std::vector<int>& legs, int i, int j) {
  std::vector<Term> cs;
  for (int k : legs) cs.push_back(eps(target, k - 1));
  return tuple(tower, cs, uniform_sum(i, j, static_cast<int>(legs.size())));
}

std::pair<Term, Term> role_boundary(const Tower& tower, const Role& r, GenId inner) {
  auto sig = [](int i) { return word_term(CoglobularWord::letter(Side::source, i)); };
  auto tau = [](int i) { return word_term(CoglobularWord::letter(Side::target, i)); };
  int i = r.i, j = r.j;
  switch (r.kind) {
    case Role::Kind::kappa: {
      Term id = identity_term(TableOfDimensions::disk(i));
      return {id, id};
    }
    case Role::Kind::omega:
      if (j == i - 1) return {tau(i), sig(i)};
      return {compose(tower, sig(i), generator_term(tower, inner)), compose(tower, tau(i), generator_term(tower, inner))};
    case Role::Kind::nabla: {
      TableOfDimensions T = uniform_sum(i, j, 2);
      if (j == i - 1) return {compose(tower, eps(T, 1), sig(i)), compose(tower, eps(T, 0), tau(i))};
      TableOfDimensions V = uniform_sum(i - 1, j, 2);
      Term n = generator_term(tower, inner);
      Term f = compose(tower, tuple(tower, {compose(tower, eps(T, 0), sig(i)), compose(tower, eps(T, 1), sig(i))}, V), n);
      Term g = compose(tower, tuple(tower, {compose(tower, eps(T, 0), tau(i)), compose(tower, eps(T, 1), tau(i))}, V), n);
      return {f, g};
    }
  }
  throw Error("unknown role");
}

std::vector<std::optional<Role>> classify(const Tower& tower) {
  std::vector<std::optional<Role>> roles(tower.size());
  for (GenId h = 0; h < tower.size(); ++h) {
    const LiftGenerator& g = tower.generator(h);
    const TableOfDimensions& T = *g.target;
    Term f = as_term(g.src), t = as_term(g.tgt);
    std::vector<std::pair<Role, GenId>> candidates;
    auto with_inner = [&](Role r, Role::Kind inner_kind) {
      if (r.j == r.i - 1) {
        candidates.push_back({r, -1});
        return;
      }
      for (GenId u = 0; u < h; ++u)
        if (roles[u] && *roles[u] == Role{inner_kind, r.i - 1, r.j}) candidates.push_back({r, u});
    };
    if (T.is_disk() && T.upper()[0] == g.dim - 1) candidates.push_back({{Role::Kind::kappa, g.dim - 1, 0}, -1});
    if (T.is_disk() && T.upper()[0] == g.dim)
      for (int j = 0; j < g.dim; ++j) with_inner({Role::Kind::omega, g.dim, j}, Role::Kind::omega);
    if (T.width() == 2 && T.upper()[0] == g.dim && T.upper()[1] == g.dim)
      with_inner({Role::Kind::nabla, g.dim, T.lower()[0]}, Role::Kind::nabla);
    for (const auto& [r, inner] : candidates) {
      auto expected = role_boundary(tower, r, inner);
      if (expected.first == f && expected.second == t) {
        roles[h] = r;
        break;
      }
    }
  }
  return roles;
}

PregroupoidBundle bundle_of(const Tower& tower) {
  PregroupoidBundle b;
  auto roles = classify(tower);
  for (GenId h = 0; h < tower.size(); ++h) {
    if (!roles[h]) continue;
    const Role& r = *roles[h];
    if (r.kind == Role::Kind::kappa) b.kappa.emplace(r.i, h);
    if (r.kind == Role::Kind::omega) b.omega.emplace(std::make_pair(r.i, r.j), h);
    if (r.kind == Role::Kind::nabla) b.nabla.emplace(std::make_pair(r.i, r.j), h);
  }
  return b;
}

std::shared_ptr<const Tower> stdlib(int N) {
  auto tower = std::make_shared<Tower>(N);
  Builder b(*tower);
  for (int d = 1; d <= N; ++d) {
    for (int j = d - 1; j >= 0; --j) b.nabla_gen(d, j);
    b.kappa_gen(d - 1);
    for (int j = d - 1; j >= 0; --j) b.omega_gen(d, j);
    int i = d - 1;
    if (i >= 1) {
      b.alpha_gen(i);
      b.unit_inverse_gens(i);
    }
    if (i >= 2) b.exchange_gen(i);
    if (d - 2 >= 1) {
      b.pentagon_gen(d - 2);
      b.nu_gen(d - 2);
    }
  }
  return tower;
}

}  // namespace infgpd
