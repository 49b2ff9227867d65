#include "infgpd/homotopy.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

namespace infgpd {

namespace {

std::string cell_name(int d, int c) { return std::to_string(d) + "-cell " + std::to_string(c); }

int find(std::vector<int>& parent, int a) {
  while (parent[a] != a) a = parent[a] = parent[parent[a]];
  return a;
}

HomotopyClasses classes_from_edges(int n, int count, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> parent(count);
  std::iota(parent.begin(), parent.end(), 0);
  for (auto [a, b] : edges) parent[find(parent, a)] = find(parent, b);
  HomotopyClasses h;
  h.n = n;
  h.class_of.assign(count, -1);
  std::vector<int> root_class(count, -1);
  for (int c = 0; c < count; ++c) {
    int r = find(parent, c);
    if (root_class[r] == -1) {
      root_class[r] = h.size();
      h.rep.push_back(c);
    }
    h.class_of[c] = root_class[r];
  }
  return h;
}

void require_cell(const Model& m, int d, int c) {
  if (c < 0 || c >= m.count(d)) throw Error("no " + cell_name(d, c) + " in the model");
}

void require_groups(const Model& m, int n) {
  int top = m.tower().truncation();
  if (n < 1) throw Error("Pi_n needs n >= 1");
  if (n >= top)
    throw Error("pi_" + std::to_string(n) + " needs operations of dimension " + std::to_string(n + 1) +
                " but the tower stops at " + std::to_string(top));
}

// a *^n_j b, b applied first
int comp(const Model& m, const PregroupoidBundle& b, int n, int j, int x, int y) {
  return m.apply(b.nabla_at(n, j), {x, y});
}

int inv(const Model& m, const PregroupoidBundle& b, int n, int j, int x) { return m.apply(b.omega_at(n, j), {x}); }

int face(const Model& m, Side s, int from, int to, int c) { return m.carrier().iterated_face(s, from, to, c); }

}  // namespace

bool homotopic(const Model& m, int n, int a, int b) {
  require_cell(m, n, a);
  require_cell(m, n, b);
  if (n > m.tower().truncation()) throw Error("homotopy of " + std::to_string(n) + "-cells lies above the truncation");
  if (n > 0 && (m.carrier().source(n, a) != m.carrier().source(n, b) || m.carrier().target(n, a) != m.carrier().target(n, b)))
    throw Error(cell_name(n, a) + " and " + cell_name(n, b) + " are not parallel");
  for (int c = 0; c < m.count(n + 1); ++c)
    if (m.carrier().source(n + 1, c) == a && m.carrier().target(n + 1, c) == b) return true;
  return false;
}

HomotopyClasses homotopy_classes(const Model& m, int n) {
  if (n > m.tower().truncation()) throw Error("homotopy of " + std::to_string(n) + "-cells lies above the truncation");
  std::set<std::pair<int, int>> edges;
  for (int c = 0; c < m.count(n + 1); ++c) edges.insert({m.carrier().source(n + 1, c), m.carrier().target(n + 1, c)});
  HomotopyClasses h = classes_from_edges(n, m.count(n), {edges.begin(), edges.end()});
  // the relation itself must already be an equivalence relation
  std::vector<long> sizes(h.size(), 0);
  for (int c : h.class_of) ++sizes[c];
  long pairs = 0;
  for (long s : sizes) pairs += s * s;
  if (pairs != static_cast<long>(edges.size())) {
    for (int a = 0; a < m.count(n); ++a)
      for (int b = 0; b < m.count(n); ++b)
        if (h.class_of[a] == h.class_of[b] && !edges.count({a, b}))
          throw Error("homotopy of " + std::to_string(n) + "-cells is not an equivalence relation: no cell from " +
                      std::to_string(a) + " to " + std::to_string(b));
  }
  return h;
}

HomotopyClasses pi0(const Model& m) {
  std::vector<std::pair<int, int>> edges;
  for (int c = 0; c < m.count(1); ++c) edges.push_back({m.carrier().source(1, c), m.carrier().target(1, c)});
  return classes_from_edges(0, m.count(0), edges);
}

PiOps pi_ops(const Tower& tower, const PregroupoidBundle& b, int n) {
  return {generator_term(tower, b.nabla_at(n, n - 1)), generator_term(tower, b.kappa_at(n - 1)),
          generator_term(tower, b.omega_at(n, n - 1))};
}

PiOps apply(const TowerFunctor& f, const PiOps& ops) {
  return {f.apply(ops.compose), f.apply(ops.unit), f.apply(ops.inverse)};
}

std::vector<int> PiGroupoid::hom(int u, int v) const {
  std::vector<int> out;
  for (int c = 0; c < classes.size(); ++c)
    if (src[c] == u && tgt[c] == v) out.push_back(c);
  return out;
}

FiniteGroup PiGroupoid::vertex_group(int u) const {
  std::vector<int> elems = hom(u, u);
  std::map<int, int> index;
  for (int k = 0; k < static_cast<int>(elems.size()); ++k) index[elems[k]] = k;
  FiniteGroup g;
  g.mul.assign(elems.size(), std::vector<int>(elems.size()));
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b) g.mul[a][b] = index.at(compose.at({elems[a], elems[b]}));
  g.unit = index.at(unit[u]);
  g.name = recognize(g);
  return g;
}

std::string PiGroupoid::table() const {
  std::ostringstream out;
  out << "Pi_" << n << ": " << objects << " objects, " << classes.size() << " classes\n";
  for (int c = 0; c < classes.size(); ++c)
    out << "class " << c << " rep " << classes.rep[c] << " : " << src[c] << " -> " << tgt[c] << " inverse "
        << inverse[c] << "\n";
  for (int u = 0; u < objects; ++u) out << "unit " << u << " = " << unit[u] << "\n";
  for (const auto& [gf, h] : compose) out << gf.first << " * " << gf.second << " = " << h << "\n";
  return out.str();
}

PiGroupoid pi_groupoid(const Model& m, const PiOps& ops, int n) {
  require_groups(m, n);
  const GlobularSet& x = m.carrier();
  PiGroupoid p;
  p.n = n;
  p.objects = m.count(n - 1);
  p.classes = homotopy_classes(m, n);
  const HomotopyClasses& h = p.classes;
  for (int c : h.rep) {
    p.src.push_back(x.source(n, c));
    p.tgt.push_back(x.target(n, c));
  }
  auto cls = [&](int cell) { return h.class_of.at(cell); };
  auto fail = [&](const std::string& what) { throw Error("Pi_" + std::to_string(n) + " is not a groupoid: " + what); };

  // composition must respect homotopy
  for (const Cells& in : m.inputs(uniform_sum(n, n - 1, 2))) {
    int r = m.eval(ops.compose.node(), in);
    if (x.source(n, r) != x.source(n, in[1]) || x.target(n, r) != x.target(n, in[0]))
      fail("composite of " + std::to_string(in[0]) + " and " + std::to_string(in[1]) + " has the wrong boundary");
    auto key = std::make_pair(cls(in[0]), cls(in[1]));
    auto [it, fresh] = p.compose.emplace(key, cls(r));
    if (!fresh && it->second != cls(r))
      fail("composition is not compatible with homotopy at " + std::to_string(in[0]) + " * " + std::to_string(in[1]));
  }
  for (int u = 0; u < p.objects; ++u) {
    int e = m.eval(ops.unit.node(), {u});
    if (x.source(n, e) != u || x.target(n, e) != u) fail("unit at " + std::to_string(u) + " is not a loop");
    p.unit.push_back(cls(e));
  }
  p.inverse.assign(h.size(), -1);
  for (int a = 0; a < m.count(n); ++a) {
    int r = cls(m.eval(ops.inverse.node(), {a}));
    if (p.inverse[cls(a)] == -1) p.inverse[cls(a)] = r;
    if (p.inverse[cls(a)] != r) fail("inverse is not compatible with homotopy at " + std::to_string(a));
  }
  auto at = [&](int g, int f) { return p.compose.at({g, f}); };
  for (int f = 0; f < h.size(); ++f) {
    if (at(p.unit[p.tgt[f]], f) != f || at(f, p.unit[p.src[f]]) != f) fail("unit law fails at class " + std::to_string(f));
    if (at(p.inverse[f], f) != p.unit[p.src[f]] || at(f, p.inverse[f]) != p.unit[p.tgt[f]])
      fail("inverse law fails at class " + std::to_string(f));
  }
  for (int f = 0; f < h.size(); ++f)
    for (int g = 0; g < h.size(); ++g) {
      if (p.src[g] != p.tgt[f]) continue;
      for (int k = 0; k < h.size(); ++k) {
        if (p.src[k] != p.tgt[g]) continue;
        if (at(at(k, g), f) != at(k, at(g, f)))
          fail("associativity fails at classes (" + std::to_string(k) + ", " + std::to_string(g) + ", " +
               std::to_string(f) + ")");
      }
    }
  return p;
}

PiGroupoid pi_groupoid(const Model& m, const PregroupoidBundle& b, int n) {
  require_groups(m, n);
  return pi_groupoid(m, pi_ops(m.tower(), b, n), n);
}

int iterated_unit(const Model& m, const PregroupoidBundle& b, int cell, int from, int to) {
  for (int d = from; d < to; ++d) cell = m.apply(b.kappa_at(d), {cell});
  return cell;
}

FiniteGroup pi_n_at(const Model& m, const PregroupoidBundle& b, int n, int u) {
  require_groups(m, n);
  require_cell(m, n - 1, u);
  FiniteGroup g = pi_groupoid(m, b, n).vertex_group(u);
  if (n >= 2 && !g.is_abelian())
    throw Error("pi_" + std::to_string(n) + " at " + cell_name(n - 1, u) + " is not abelian");
  return g;
}

FiniteGroup pi_n(const Model& m, const PregroupoidBundle& b, int n, int x) {
  require_cell(m, 0, x);
  if (n == 0) {
    FiniteGroup g = trivial_group();
    g.name = "set of " + std::to_string(pi0(m).size()) + " components";
    return g;
  }
  require_groups(m, n);
  return pi_n_at(m, b, n, iterated_unit(m, b, x, 0, n - 1));
}

namespace {

// Morphisms D_{n-1} -> Sigma and the correction liftings, per tower and bundle.
struct DivisionTerms {
  std::shared_ptr<const Tower> tower;
  std::vector<Term> c, d;  // index j - (i + 2), into Sigma
  std::vector<std::string> names;
};

Term comp_term(const Tower& t, const PregroupoidBundle& b, int m, int j, const Term& x, const Term& y) {
  Term pair = tuple(t, {x, y}, uniform_sum(m, j, 2));
  return compose(t, pair, generator_term(t, b.nabla_at(m, j)));
}

Term inv_term(const Tower& t, const PregroupoidBundle& b, int m, int j, const Term& x) {
  return compose(t, x, generator_term(t, b.omega_at(m, j)));
}

// x o kappa_{from} o ... o kappa_{to-1}
Term unit_term(const Tower& t, const PregroupoidBundle& b, const Term& x, int from, int to) {
  Term r = x;
  for (int d = from; d < to; ++d) r = compose(t, r, generator_term(t, b.kappa_at(d)));
  return r;
}

// inclusion of D_k +_i D_k into Sigma along iterated s or t faces
Term truncation_inclusion(const Tower& t, const TableOfDimensions& sigma, int k, int i, Side s) {
  int top = sigma.upper()[0];
  Term w = word_term(CoglobularWord::iterated(s, k, top));
  return tuple(t, {compose(t, eps(sigma, 0), w), compose(t, eps(sigma, 1), w)}, uniform_sum(k, i, 2));
}

NodePtr refactor(const NodePtr& n, const TableOfDimensions* target, const std::vector<std::map<int, int>>& preimage) {
  if (n->is_cell()) {
    auto it = preimage[n->dim()].find(n->cell());
    if (it == preimage[n->dim()].end()) throw Error("term does not factor through the truncation");
    return Node::make_cell(target, n->dim(), it->second);
  }
  std::vector<NodePtr> args;
  for (const auto& a : n->args()) args.push_back(refactor(a, target, preimage));
  return Node::make_apply(n->gen(), n->dim(), target, args);
}

// the term p' with inclusion o p' = p
Term factor_through(const Tower& t, const Term& p, const Term& inclusion) {
  auto theta = as_theta0(inclusion);
  if (!theta) throw Error("inclusion is not a map of globular sums");
  const TableOfDimensions& small = theta->source();
  std::vector<std::map<int, int>> preimage(small.dimension() + 1);
  const GlobularSet& cells = realization(small).carrier();
  for (int d = 0; d <= small.dimension(); ++d)
    for (int c = 0; c < cells.count(d); ++c) preimage[d][(*theta)(d, c)] = c;
  Term r = as_term(refactor(p.node(), intern(small), preimage));
  if (!(compose(t, inclusion, r) == p)) throw Error("factorization through the truncation does not commute");
  return r;
}

std::string bundle_key(const PregroupoidBundle& b) {
  std::ostringstream out;
  for (const auto& [k, v] : b.nabla) out << k.first << "," << k.second << ":" << v << ";";
  for (const auto& [k, v] : b.kappa) out << k << ":" << v << ";";
  for (const auto& [k, v] : b.omega) out << k.first << "," << k.second << ":" << v << ";";
  return out.str();
}

const DivisionTerms& division_terms(const std::shared_ptr<const Tower>& base, const PregroupoidBundle& b, int n, int i) {
  static std::mutex mu;
  static std::map<std::tuple<const Tower*, int, int, std::string>, std::pair<std::weak_ptr<const Tower>, DivisionTerms>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(base.get(), n, i, bundle_key(b));
  auto it = cache.find(key);
  if (it != cache.end() && it->second.first.lock() == base) return it->second.second;

  auto tower = std::make_shared<Tower>(*base);
  const Tower& t = *tower;
  TableOfDimensions sigma = uniform_sum(n - 1, i, 2);
  Term e1 = eps(sigma, 0), e2 = eps(sigma, 1);
  DivisionTerms out;
  // S_{i+2} = omega(u') * (u' * u)
  Term s = comp_term(t, b, n - 1, i, inv_term(t, b, n - 1, i, e1), comp_term(t, b, n - 1, i, e1, e2));
  std::string prefix = "auto." + std::to_string(n) + "." + std::to_string(i) + ".";
  auto fresh = [&](const std::string& stem) {
    std::string name = prefix + stem;
    for (int k = 1; t.find(name); ++k) name = prefix + stem + "." + std::to_string(k);
    return name;
  };
  for (int j = i + 2; j <= n; ++j) {
    Term ws = word_term(CoglobularWord::iterated(Side::source, j - 1, n - 1));
    Term wt = word_term(CoglobularWord::iterated(Side::target, j - 1, n - 1));
    Term inc_s = truncation_inclusion(t, sigma, j - 1, i, Side::source);
    Term inc_t = truncation_inclusion(t, sigma, j - 1, i, Side::target);
    Term c_minus = factor_through(t, compose(t, e2, ws), inc_s);
    Term c_plus = factor_through(t, compose(t, s, ws), inc_s);
    Term d_minus = factor_through(t, compose(t, s, wt), inc_t);
    Term d_plus = factor_through(t, compose(t, e2, wt), inc_t);
    std::string cn = fresh("C" + std::to_string(j)), dn = fresh("D" + std::to_string(j));
    GenId cg = tower->declare_lift(cn, c_minus, c_plus);
    GenId dg = tower->declare_lift(dn, d_minus, d_plus);
    out.names.push_back(cn);
    out.names.push_back(dn);
    Term cj = compose(t, inc_s, generator_term(t, cg));
    Term dj = compose(t, inc_t, generator_term(t, dg));
    out.c.push_back(cj);
    out.d.push_back(dj);
    if (j < n)
      s = comp_term(t, b, n - 1, j - 1, unit_term(t, b, dj, j, n - 1),
                    comp_term(t, b, n - 1, j - 1, s, unit_term(t, b, cj, j, n - 1)));
  }
  out.tower = tower;
  auto& slot = cache[key];
  slot = {base, std::move(out)};
  return slot.second;
}

std::vector<int> classes_between(const Model& m, const HomotopyClasses& h, int n, int u, int v) {
  std::vector<int> out;
  for (int c = 0; c < h.size(); ++c)
    if (m.carrier().source(n, h.rep[c]) == u && m.carrier().target(n, h.rep[c]) == v) out.push_back(c);
  return out;
}

}  // namespace

Division divide(const Model& m, const PregroupoidBundle& b, int n, int i, int gamma, int u, int v) {
  if (n < 2 || i < 0 || i >= n - 1)
    throw Error("division needs n >= 2 and 0 <= i < n - 1, got n = " + std::to_string(n) + ", i = " + std::to_string(i));
  if (n > m.tower().truncation()) throw Error("division in dimension " + std::to_string(n) + " lies above the truncation");
  require_cell(m, n, gamma);
  require_cell(m, n - 1, u);
  require_cell(m, n - 1, v);
  const GlobularSet& x = m.carrier();
  if (n >= 2 && (x.source(n - 1, u) != x.source(n - 1, v) || x.target(n - 1, u) != x.target(n - 1, v)))
    throw Error("u and v are not parallel");
  int gi = face(m, Side::source, n, i, gamma);
  if (gi != face(m, Side::target, n - 1, i, u) || gi != face(m, Side::target, n - 1, i, v))
    throw Error("the " + std::to_string(i) + "-source of gamma is not the " + std::to_string(i) + "-target of u and v");

  const DivisionTerms& terms = division_terms(m.tower_ptr(), b, n, i);
  Model ext = m.extended(terms.tower);

  Division r;
  r.n = n;
  r.i = i;
  r.gamma = gamma;
  r.u = u;
  r.v = v;
  r.u_prime = x.source(n, gamma);
  r.v_prime = x.target(n, gamma);
  r.whiskered_u = comp(m, b, n - 1, i, r.u_prime, u);
  r.whiskered_v = comp(m, b, n - 1, i, r.v_prime, v);
  r.auto_lifts = terms.names;
  r.tower = terms.tower;

  std::vector<int> cs, ds;
  for (std::size_t k = 0; k < terms.c.size(); ++k) {
    cs.push_back(ext.eval(terms.c[k].node(), {r.u_prime, u}));
    ds.push_back(ext.eval(terms.d[k].node(), {r.v_prime, v}));
  }
  auto K = [&](int alpha) { return comp(m, b, n, i, gamma, alpha); };
  int gamma_inv = inv(m, b, n, i, gamma);
  auto L = [&](int beta) {
    int a = comp(m, b, n, i, gamma_inv, beta);
    for (int j = i + 2; j <= n; ++j) {
      int c = iterated_unit(m, b, cs[j - i - 2], j, n), d = iterated_unit(m, b, ds[j - i - 2], j, n);
      a = comp(m, b, n, j - 1, d, comp(m, b, n, j - 1, a, c));
    }
    return a;
  };

  HomotopyClasses h = homotopy_classes(m, n);
  r.domain = classes_between(m, h, n, u, v);
  r.codomain = classes_between(m, h, n, r.whiskered_u, r.whiskered_v);
  auto record = [&](std::map<int, int>& map, int from, int to, const char* name) {
    auto [it, fresh] = map.emplace(h.class_of[from], h.class_of[to]);
    if (!fresh && it->second != h.class_of[to])
      throw Error(std::string(name) + " does not respect homotopy at " + cell_name(n, from));
  };
  for (int a = 0; a < m.count(n); ++a) {
    if (x.source(n, a) == u && x.target(n, a) == v) {
      int ka = K(a);
      if (x.source(n, ka) != r.whiskered_u || x.target(n, ka) != r.whiskered_v) throw Error("K has the wrong boundary");
      record(r.k, a, ka, "K");
    }
    if (x.source(n, a) == r.whiskered_u && x.target(n, a) == r.whiskered_v) {
      int la = L(a);
      if (x.source(n, la) != u || x.target(n, la) != v)
        throw Error("L(" + std::to_string(a) + ") goes from " + std::to_string(x.source(n, la)) + " to " +
                    std::to_string(x.target(n, la)) + " instead of " + std::to_string(u) + " to " + std::to_string(v));
      record(r.l, a, la, "L");
    }
  }
  for (int c : r.domain)
    if (r.l.at(r.k.at(c)) != c) throw Error("L o K is not the identity at class " + std::to_string(c));
  for (int c : r.codomain)
    if (r.k.at(r.l.at(c)) != c) throw Error("K o L is not the identity at class " + std::to_string(c));
  return r;
}

namespace {

// class map of a cell operation between two hom-sets, checked bijective
std::map<int, int> class_bijection(const Model& m, const HomotopyClasses& h, int n, int u, int v, int u2, int v2,
                                   const std::function<int(int)>& op, const char* what) {
  std::map<int, int> out;
  const GlobularSet& x = m.carrier();
  for (int a = 0; a < m.count(n); ++a) {
    if (x.source(n, a) != u || x.target(n, a) != v) continue;
    int r = op(a);
    if (x.source(n, r) != u2 || x.target(n, r) != v2) throw Error(std::string(what) + " has the wrong boundary");
    auto [it, fresh] = out.emplace(h.class_of[a], h.class_of[r]);
    if (!fresh && it->second != h.class_of[r]) throw Error(std::string(what) + " does not respect homotopy");
  }
  std::set<int> image;
  for (auto [a, r] : out) image.insert(r);
  if (image.size() != out.size() || image.size() != classes_between(m, h, n, u2, v2).size())
    throw Error(std::string(what) + " is not a bijection on classes");
  return out;
}

std::map<int, int> invert(const std::map<int, int>& f) {
  std::map<int, int> g;
  for (auto [a, b] : f) g[b] = a;
  return g;
}

GroupIso as_group_iso(const Model& m, const PregroupoidBundle& b, int n, int from_cell, int to_cell,
                      const std::map<int, int>& on_classes) {
  PiGroupoid p = pi_groupoid(m, b, n);
  GroupIso iso{p.vertex_group(from_cell), p.vertex_group(to_cell), {}};
  std::vector<int> from = p.hom(from_cell, from_cell), to = p.hom(to_cell, to_cell);
  for (int c : from) iso.map.push_back(static_cast<int>(std::find(to.begin(), to.end(), on_classes.at(c)) - to.begin()));
  if (!is_homomorphism(iso.from, iso.to, iso.map)) throw Error("base change is not a group homomorphism");
  return iso;
}

// pi_n(G, u) -> pi_n(G, y) for y the 0-target of u, through iota(y) *_0 u
std::map<int, int> dual_base_change(const Model& m, const PregroupoidBundle& b, const HomotopyClasses& h, int n, int u,
                                    int& y_unit) {
  int y = face(m, Side::target, n - 1, 0, u);
  y_unit = iterated_unit(m, b, y, 0, n - 1);
  int w = comp(m, b, n - 1, 0, y_unit, u);
  int ky = iterated_unit(m, b, y, 0, n);
  Division d = divide(m, b, n, 0, ky, u, u);
  std::map<int, int> left = d.k;  // beta -> kappa(y) *_0 beta
  int ku = iterated_unit(m, b, u, n - 1, n);
  auto right = class_bijection(m, h, n, y_unit, y_unit, w, w, [&](int beta) { return comp(m, b, n, 0, beta, ku); },
                               "right whiskering");
  std::map<int, int> r;
  auto back = invert(right);
  for (auto [c, k] : left) r[c] = back.at(k);
  return r;
}

}  // namespace

GroupIso base_change_iso(const Model& m, const PregroupoidBundle& b, int n, int u) {
  require_groups(m, n);
  require_cell(m, n - 1, u);
  if (n == 1) {
    PiGroupoid p = pi_groupoid(m, b, 1);
    GroupIso iso{p.vertex_group(u), p.vertex_group(u), {}};
    for (int k = 0; k < iso.from.order(); ++k) iso.map.push_back(k);
    return iso;
  }
  int x = face(m, Side::source, n - 1, 0, u);
  int xu = iterated_unit(m, b, x, 0, n - 1);
  int kx = iterated_unit(m, b, x, 0, n);
  int w = comp(m, b, n - 1, 0, u, xu);
  HomotopyClasses h = homotopy_classes(m, n);
  // alpha -> alpha *_0 kappa(x)
  auto k1 = class_bijection(m, h, n, u, u, w, w, [&](int a) { return comp(m, b, n, 0, a, kx); }, "right whiskering");
  // beta -> kappa(u) *_0 beta, inverted by the division lemma
  int ku = iterated_unit(m, b, u, n - 1, n);
  Division d = divide(m, b, n, 0, ku, xu, xu);
  std::map<int, int> on_classes;
  for (auto [a, k] : k1) on_classes[a] = d.l.at(k);
  return as_group_iso(m, b, n, u, xu, on_classes);
}

GroupIso transport(const Model& m, const PregroupoidBundle& b, int n, int arrow) {
  require_groups(m, n);
  require_cell(m, 1, arrow);
  int x = m.carrier().source(1, arrow), y = m.carrier().target(1, arrow);
  PiGroupoid p1 = pi_groupoid(m, b, 1);
  if (n == 1) {
    int a = p1.classes.class_of[arrow];
    std::map<int, int> on_classes;
    for (int c : p1.hom(x, x)) on_classes[c] = p1.compose.at({p1.compose.at({a, c}), p1.inverse[a]});
    PiGroupoid p = pi_groupoid(m, b, 1);
    GroupIso iso{p.vertex_group(x), p.vertex_group(y), {}};
    std::vector<int> from = p.hom(x, x), to = p.hom(y, y);
    for (int c : from) iso.map.push_back(static_cast<int>(std::find(to.begin(), to.end(), on_classes.at(c)) - to.begin()));
    if (!is_homomorphism(iso.from, iso.to, iso.map)) throw Error("transport is not a group homomorphism");
    return iso;
  }
  int u = iterated_unit(m, b, arrow, 1, n - 1);
  GroupIso to_x = base_change_iso(m, b, n, u);
  HomotopyClasses h = homotopy_classes(m, n);
  int y_unit = 0;
  auto to_y = dual_base_change(m, b, h, n, u, y_unit);
  PiGroupoid p = pi_groupoid(m, b, n);
  int xu = iterated_unit(m, b, x, 0, n - 1);
  std::vector<int> at_u = p.hom(u, u), at_x = p.hom(xu, xu);
  std::map<int, int> on_classes;
  for (std::size_t k = 0; k < at_u.size(); ++k) on_classes[at_x[to_x.map[k]]] = to_y.at(at_u[k]);
  GroupIso iso{p.vertex_group(xu), p.vertex_group(y_unit), {}};
  std::vector<int> to = p.hom(y_unit, y_unit);
  for (int c : p.hom(xu, xu)) iso.map.push_back(static_cast<int>(std::find(to.begin(), to.end(), on_classes.at(c)) - to.begin()));
  if (!is_homomorphism(iso.from, iso.to, iso.map)) throw Error("transport is not a group homomorphism");
  return iso;
}

bool WeakEquivReport::consistent() const {
  return condition[0] == condition[1] && condition[1] == condition[2] && condition[2] == condition[3];
}

std::string WeakEquivReport::str() const {
  std::ostringstream out;
  for (int k = 0; k < 4; ++k) {
    out << "condition " << k + 1 << ": " << (condition[k] ? "true" : "false");
    if (!notes[k].empty()) out << " (" << notes[k].front() << ")";
    out << "\n";
  }
  out << (consistent() ? "conditions agree" : "conditions DISAGREE") << "\n";
  return out.str();
}

WeakEquivReport weak_equiv(const ModelMorphism& f, const PregroupoidBundle& b) {
  if (auto v = morphism_violation(f)) throw Error("invalid morphism: " + *v);
  const Model& g = *f.source;
  const Model& hm = *f.target;
  int top = g.tower().truncation();
  if (top < 1) throw Error("weak equivalences need a tower of dimension at least 1");
  WeakEquivReport r;
  auto note = [&](int k, const std::string& s) {
    r.notes[k].push_back(s);
  };

  // pi_0
  HomotopyClasses c0 = pi0(g), d0 = pi0(hm);
  std::map<int, int> map0;
  bool pi0_injective = true;
  for (int a = 0; a < g.count(0); ++a) {
    auto [it, fresh] = map0.emplace(c0.class_of[a], d0.class_of[f(0, a)]);
    (void)it;
    (void)fresh;
  }
  std::set<int> hit;
  for (auto [a, b2] : map0) {
    if (!hit.insert(b2).second) pi0_injective = false;
  }
  bool pi0_surjective = static_cast<int>(hit.size()) == d0.size();

  // class maps per dimension n on hom-sets between parallel (n-1)-cells
  std::vector<HomotopyClasses> cg(top + 1), ch(top + 1);
  for (int n = 1; n <= top; ++n) {
    cg[n] = homotopy_classes(g, n);
    ch[n] = homotopy_classes(hm, n);
  }
  // (injective, surjective) of pi_n(G, u, v) -> pi_n(H, fu, fv)
  auto hom_map = [&](int n, int u, int v) {
    std::map<int, int> cls;
    for (int a = 0; a < g.count(n); ++a)
      if (g.carrier().source(n, a) == u && g.carrier().target(n, a) == v) cls.emplace(cg[n].class_of[a], ch[n].class_of[f(n, a)]);
    std::set<int> image;
    for (auto [a, b2] : cls) image.insert(b2);
    int fu = f(n - 1, u), fv = f(n - 1, v);
    std::set<int> all;
    for (int a = 0; a < hm.count(n); ++a)
      if (hm.carrier().source(n, a) == fu && hm.carrier().target(n, a) == fv) all.insert(ch[n].class_of[a]);
    return std::make_pair(image.size() == cls.size(), image.size() == all.size());
  };
  auto parallel_cells = [&](int d, int u, int v) {
    return d == 0 || (g.carrier().source(d, u) == g.carrier().source(d, v) && g.carrier().target(d, u) == g.carrier().target(d, v));
  };

  // (1) pi_0 bijective and pi_n(G, x) isomorphic for every object x
  r.condition[0] = pi0_injective && pi0_surjective;
  if (!r.condition[0]) note(0, "pi_0 is not a bijection");
  for (int n = 1; n <= top && r.condition[0]; ++n)
    for (int x = 0; x < g.count(0); ++x) {
      int u = iterated_unit(g, b, x, 0, n - 1);
      auto [inj, sur] = hom_map(n, u, u);
      if (!(inj && sur)) {
        r.condition[0] = false;
        note(0, "pi_" + std::to_string(n) + " at object " + std::to_string(x) + (inj ? " is not surjective" : " is not injective"));
        break;
      }
    }
  // (2) the same at every (n-1)-cell
  r.condition[1] = pi0_injective && pi0_surjective;
  if (!r.condition[1]) note(1, "pi_0 is not a bijection");
  for (int n = 1; n <= top && r.condition[1]; ++n)
    for (int u = 0; u < g.count(n - 1); ++u) {
      auto [inj, sur] = hom_map(n, u, u);
      if (!(inj && sur)) {
        r.condition[1] = false;
        note(1, "pi_" + std::to_string(n) + " at " + cell_name(n - 1, u) + (inj ? " is not surjective" : " is not injective"));
        break;
      }
    }
  // (3) Pi_1 equivalence and bijections on all hom-sets; (4) full, essentially surjective, surjections
  bool faithful = true, full = true;
  for (int a = 0; a < g.count(0); ++a)
    for (int c = 0; c < g.count(0); ++c) {
      auto [inj, sur] = hom_map(1, a, c);
      faithful = faithful && inj;
      full = full && sur;
    }
  r.condition[2] = faithful && full && pi0_surjective;
  r.condition[3] = full && pi0_surjective;
  if (!faithful) note(2, "Pi_1 is not faithful");
  if (!full) {
    note(2, "Pi_1 is not full");
    note(3, "Pi_1 is not full");
  }
  if (!pi0_surjective) {
    note(2, "Pi_1 is not essentially surjective");
    note(3, "Pi_1 is not essentially surjective");
  }
  for (int n = 2; n <= top; ++n)
    for (int u = 0; u < g.count(n - 1); ++u)
      for (int v = 0; v < g.count(n - 1); ++v) {
        if (!parallel_cells(n - 1, u, v)) continue;
        if (!r.condition[2] && !r.condition[3]) break;
        auto [inj, sur] = hom_map(n, u, v);
        std::string where = "pi_" + std::to_string(n) + "(" + std::to_string(u) + ", " + std::to_string(v) + ")";
        if (r.condition[2] && !(inj && sur)) {
          r.condition[2] = false;
          note(2, where + " is not a bijection");
        }
        if (r.condition[3] && !sur) {
          r.condition[3] = false;
          note(3, where + " is not a surjection");
        }
      }
  if (!r.consistent()) throw Error("weak equivalence conditions disagree:\n" + r.str());
  return r;
}

}  // namespace infgpd
