#include "infgpd/rewrite.hpp"

#include <algorithm>
#include <set>

namespace infgpd {

RawFactor RawFactor::letter(Side s, int dim) {
  RawFactor f;
  f.kind = Kind::letter;
  f.side = s;
  f.index = dim;
  f.src = intern(TableOfDimensions::disk(dim - 1));
  f.tgt = intern(TableOfDimensions::disk(dim));
  return f;
}

RawFactor RawFactor::leg(const TableOfDimensions& t, int k1) {
  RawFactor f;
  f.kind = Kind::eps;
  f.index = k1;
  f.src = intern(TableOfDimensions::disk(t.upper()[k1 - 1]));
  f.tgt = intern(t);
  return f;
}

RawFactor RawFactor::identity(const TableOfDimensions& t) {
  RawFactor f;
  f.kind = Kind::id;
  f.src = f.tgt = intern(t);
  return f;
}

RawFactor RawFactor::generator(const Tower& tower, GenId h) {
  const LiftGenerator& g = tower.generator(h);
  RawFactor f;
  f.kind = Kind::gen;
  f.gen = h;
  f.src = intern(TableOfDimensions::disk(g.dim));
  f.tgt = g.target;
  return f;
}

RawFactor RawFactor::tuple(std::vector<RawChain> items, const TableOfDimensions& src) {
  RawFactor f;
  f.kind = Kind::tuple;
  f.src = intern(src);
  f.tgt = items.front().target();
  f.items = std::move(items);
  return f;
}

bool operator==(const RawFactor& a, const RawFactor& b) {
  return a.kind == b.kind && a.side == b.side && a.index == b.index && a.gen == b.gen && a.src == b.src &&
         a.tgt == b.tgt && a.items == b.items;
}

bool operator==(const RawChain& a, const RawChain& b) { return a.factors == b.factors; }

RawChain concat(const RawChain& outer, const RawChain& inner) {
  if (outer.source() != inner.target()) throw Error("raw composite is ill-typed");
  RawChain out = outer;
  out.factors.insert(out.factors.end(), inner.factors.begin(), inner.factors.end());
  return out;
}

std::string print_raw(const Tower& tower, const RawChain& c) {
  std::string out;
  for (const auto& f : c.factors) {
    if (!out.empty()) out += " * ";
    switch (f.kind) {
      case RawFactor::Kind::letter: out += side_char(f.side) + std::to_string(f.index); break;
      case RawFactor::Kind::eps: out += "eps" + std::to_string(f.index); break;
      case RawFactor::Kind::id: out += "id"; break;
      case RawFactor::Kind::gen: out += tower.generator(f.gen).name; break;
      case RawFactor::Kind::tuple: {
        out += "[";
        for (std::size_t i = 0; i < f.items.size(); ++i) out += (i ? "; " : "") + print_raw(tower, f.items[i]);
        out += "]";
      }
    }
  }
  return out;
}

bool well_typed(const RawChain& c) {
  if (c.factors.empty()) return false;
  for (std::size_t p = 0; p < c.factors.size(); ++p) {
    const RawFactor& f = c.factors[p];
    if (p + 1 < c.factors.size() && f.src != c.factors[p + 1].tgt) return false;
    if (f.kind == RawFactor::Kind::tuple) {
      if (static_cast<int>(f.items.size()) != f.src->width()) return false;
      for (int k = 0; k < f.src->width(); ++k) {
        const RawChain& it = f.items[k];
        if (!well_typed(it) || it.target() != f.tgt || *it.source() != TableOfDimensions::disk(f.src->upper()[k]))
          return false;
      }
    }
  }
  return true;
}

Term evaluate(const Tower& tower, const RawChain& c) {
  std::optional<Term> acc;
  for (std::size_t p = c.factors.size(); p-- > 0;) {
    const RawFactor& f = c.factors[p];
    Term t;
    switch (f.kind) {
      case RawFactor::Kind::letter: t = word_term(CoglobularWord::letter(f.side, f.index)); break;
      case RawFactor::Kind::eps: t = eps(*f.tgt, f.index - 1); break;
      case RawFactor::Kind::id: t = identity_term(*f.tgt); break;
      case RawFactor::Kind::gen: t = generator_term(tower, f.gen); break;
      case RawFactor::Kind::tuple: {
        std::vector<Term> comps;
        for (const auto& it : f.items) comps.push_back(evaluate(tower, it));
        t = tuple(tower, comps, *f.src);
      }
    }
    acc = acc ? compose(tower, t, *acc) : t;
  }
  return *acc;
}

namespace {

void push_letters(RawChain& c, const CoglobularWord& w) {
  for (int d = w.to; d > w.from; --d) c.factors.push_back(RawFactor::letter(w.side, d));
}

bool identity_args(const NodePtr& n, const LiftGenerator& g) {
  if (n->target_ptr() != g.target) return false;
  const SumRealization& r = realization(*g.target);
  for (std::size_t k = 0; k < n->args().size(); ++k) {
    const NodePtr& a = n->args()[k];
    if (!a->is_cell() || a->cell() != r.leg_top(static_cast<int>(k))) return false;
  }
  return true;
}

}  // namespace

RawChain readback(const Tower& tower, const NodePtr& n) {
  RawChain c;
  if (n->is_cell()) {
    const CellPresentation& p = realization(n->target()).presentation(n->dim(), n->cell());
    if (n->target().is_disk()) {
      if (p.word.is_identity()) c.factors.push_back(RawFactor::identity(n->target()));
      push_letters(c, p.word);
    } else {
      c.factors.push_back(RawFactor::leg(n->target(), p.leg + 1));
      push_letters(c, p.word);
    }
    return c;
  }
  const LiftGenerator& g = tower.generator(n->gen());
  if (!identity_args(n, g)) {
    if (g.target->is_disk()) {
      c = readback(tower, n->args()[0]);
    } else {
      std::vector<RawChain> items;
      for (const auto& a : n->args()) items.push_back(readback(tower, a));
      c.factors.push_back(RawFactor::tuple(std::move(items), *g.target));
    }
  }
  c.factors.push_back(RawFactor::generator(tower, n->gen()));
  return c;
}

RawChain readback(const Tower& tower, const Term& t) {
  if (t.is_disk()) return readback(tower, t.node());
  std::vector<RawChain> items;
  for (const auto& n : t.legs) items.push_back(readback(tower, n));
  RawChain c;
  c.factors.push_back(RawFactor::tuple(std::move(items), *t.source));
  return c;
}

RewriteEngine::RewriteEngine(const Tower& tower) : tower_(tower) {
  for (GenId h = 0; h < tower.size(); ++h) {
    const LiftGenerator& g = tower.generator(h);
    src_.push_back(readback(tower, g.src));
    tgt_.push_back(readback(tower, g.tgt));
    weights_.push_back(std::max(size(src_.back()), size(tgt_.back())));
  }
}

long RewriteEngine::size(const RawChain& c) const {
  long s = 0;
  for (const auto& f : c.factors) {
    if (f.kind == RawFactor::Kind::gen) {
      s += 1 + weights_[f.gen];
    } else if (f.kind == RawFactor::Kind::tuple) {
      s += 1;
      for (const auto& it : f.items) s += size(it);
    } else {
      s += 1;
    }
  }
  return s;
}

bool RewriteEngine::step_here(RawChain& c, std::size_t p) const {
  using K = RawFactor::Kind;
  auto& fs = c.factors;
  RawFactor& f = fs[p];
  auto splice = [&](std::size_t from, std::size_t count, const std::vector<RawFactor>& with) {
    fs.erase(fs.begin() + static_cast<long>(from), fs.begin() + static_cast<long>(from + count));
    fs.insert(fs.begin() + static_cast<long>(from), with.begin(), with.end());
  };

  if (f.kind == K::id && fs.size() > 1) {
    fs.erase(fs.begin() + static_cast<long>(p));
    return true;
  }
  if (f.kind == K::eps && f.tgt->is_disk()) {
    fs[p] = RawFactor::identity(*f.tgt);
    return true;
  }
  if (f.kind == K::tuple && f.items.size() == 1) {
    std::vector<RawFactor> inner = f.items[0].factors;
    splice(p, 1, inner);
    return true;
  }
  if (f.kind == K::tuple && f.src == f.tgt) {
    bool eta = true;
    for (std::size_t k = 0; k < f.items.size(); ++k) {
      const auto& it = f.items[k].factors;
      if (it.size() != 1 || it[0].kind != K::eps || it[0].index != static_cast<int>(k) + 1) eta = false;
    }
    if (eta) {
      fs[p] = RawFactor::identity(*f.src);
      return true;
    }
  }
  if (p + 1 < fs.size()) {
    RawFactor& n = fs[p + 1];
    if (f.kind == K::gen && n.kind == K::letter && n.index == tower_.generator(f.gen).dim) {
      std::vector<RawFactor> face = (n.side == Side::source ? src_ : tgt_)[f.gen].factors;
      splice(p, 2, face);
      return true;
    }
    if (f.kind == K::letter && n.kind == K::letter && f.side != n.side) {
      f.side = n.side;
      return true;
    }
    if (f.kind == K::tuple && n.kind == K::eps) {
      std::vector<RawFactor> comp = f.items[n.index - 1].factors;
      splice(p, 2, comp);
      return true;
    }
    if (n.kind == K::tuple) {
      std::vector<RawChain> items;
      for (const auto& it : n.items) {
        RawChain x;
        x.factors.push_back(f);
        x.factors.insert(x.factors.end(), it.factors.begin(), it.factors.end());
        items.push_back(std::move(x));
      }
      RawFactor t = RawFactor::tuple(std::move(items), *n.src);
      splice(p, 2, {t});
      return true;
    }
  }
  if (f.kind == K::eps && f.index >= 2) {
    std::size_t q = p + 1;
    while (q < fs.size() && fs[q].kind == K::letter) ++q;
    if (q == p + 1) return false;
    Side x = fs[q - 1].side;
    for (std::size_t r = p + 1; r < q; ++r)
      if (fs[r].side != x) return false;
    int b = fs[q - 1].index - 1;
    int leg = f.index - 1;  // 0-based
    int g = f.tgt->lower()[leg - 1];
    if (b < g || (b == g && x == Side::target)) {
      Side nx = b < g ? x : Side::source;
      const TableOfDimensions& T = *f.tgt;
      std::vector<RawFactor> with{RawFactor::leg(T, f.index - 1)};
      for (int d = T.upper()[leg - 1]; d > b; --d) with.push_back(RawFactor::letter(nx, d));
      splice(p, q - p, with);
      return true;
    }
  }
  return false;
}

bool RewriteEngine::step(RawChain& c, Strategy s) const {
  std::size_t n = c.factors.size();
  if (s == Strategy::leftmost_innermost) {
    for (std::size_t p = 0; p < n; ++p)
      if (c.factors[p].kind == RawFactor::Kind::tuple)
        for (auto& it : c.factors[p].items)
          if (step(it, s)) return true;
    for (std::size_t p = 0; p < n; ++p)
      if (step_here(c, p)) return true;
    return false;
  }
  for (std::size_t p = n; p-- > 0;)
    if (step_here(c, p)) return true;
  for (std::size_t p = n; p-- > 0;)
    if (c.factors[p].kind == RawFactor::Kind::tuple)
      for (std::size_t k = c.factors[p].items.size(); k-- > 0;)
        if (step(c.factors[p].items[k], s)) return true;
  return false;
}

RewriteResult RewriteEngine::normalize(RawChain c, Strategy s, long max_steps) const {
  RewriteResult r;
  while (step(c, s)) {
    if (++r.steps > max_steps) throw Error("rewriting exceeded " + std::to_string(max_steps) + " steps");
  }
  r.normal = std::move(c);
  return r;
}

TermSampler::TermSampler(const Tower& tower, std::uint64_t seed) : tower_(tower), rng_(seed) {
  std::set<TableOfDimensions> seen;
  for (int m = 0; m <= tower.truncation(); ++m) seen.insert(TableOfDimensions::disk(m));
  for (const auto& g : tower.generators()) seen.insert(*g.target);
  for (int i = 1; i <= tower.truncation(); ++i)
    for (int j = 0; j < i; ++j) seen.insert(TableOfDimensions({i, i}, {j}));
  tables_.assign(seen.begin(), seen.end());
}

std::optional<NodePtr> TermSampler::normal_node(int m, const TableOfDimensions& t, int depth) {
  const TableOfDimensions* tp = intern(t);
  int cells = realization(t).carrier().count(m);
  std::vector<GenId> gens;
  for (GenId h = 0; h < tower_.size(); ++h)
    if (tower_.generator(h).dim == m) gens.push_back(h);
  for (int attempt = 0; attempt < 6; ++attempt) {
    if (cells > 0 && (depth <= 0 || gens.empty() || coin(0.4))) return Node::make_cell(tp, m, uniform(cells));
    if (gens.empty() || depth <= 0) return std::nullopt;
    GenId h = gens[uniform(static_cast<int>(gens.size()))];
    auto args = normal_morphism(*tower_.generator(h).target, t, depth - 1);
    if (args) return Node::make_apply(h, m, tp, args->legs);
  }
  return std::nullopt;
}

std::optional<Term> TermSampler::normal_morphism(const TableOfDimensions& s, const TableOfDimensions& t, int depth) {
  const TableOfDimensions* tp = intern(t);
  Term out{intern(s), tp, {}};
  for (int k = 0; k < s.width(); ++k) {
    int m = s.upper()[k];
    auto matches = [&](const NodePtr& cand) {
      if (k == 0) return true;
      int g = s.lower()[k - 1];
      NodePtr left = precompose_word(tower_, out.legs[k - 1], CoglobularWord::iterated(Side::source, g, s.upper()[k - 1]));
      NodePtr right = precompose_word(tower_, cand, CoglobularWord::iterated(Side::target, g, m));
      return node_equal(left, right);
    };
    std::optional<NodePtr> chosen;
    for (int attempt = 0; attempt < 8 && !chosen; ++attempt) {
      auto cand = normal_node(m, t, depth);
      if (cand && matches(*cand)) chosen = cand;
    }
    if (!chosen) {
      std::vector<NodePtr> ok;
      for (int c = 0; c < realization(t).carrier().count(m); ++c) {
        NodePtr cand = Node::make_cell(tp, m, c);
        if (matches(cand)) ok.push_back(cand);
      }
      if (ok.empty()) return std::nullopt;
      chosen = ok[uniform(static_cast<int>(ok.size()))];
    }
    out.legs.push_back(*chosen);
  }
  return out;
}

RawChain TermSampler::cell_chain(const TableOfDimensions& t, int m, int cell) {
  const SumRealization& r = realization(t);
  std::vector<CellPresentation> options;
  for (int k = 0; k < t.width(); ++k) {
    int up = t.upper()[k];
    if (up < m) continue;
    if (up == m) {
      if (r.leg_top(k) == cell) options.push_back({k, CoglobularWord::identity(m)});
      continue;
    }
    for (Side s : {Side::source, Side::target})
      if (r.leg_cell(k, m, s) == cell) options.push_back({k, CoglobularWord::iterated(s, m, up)});
  }
  const CellPresentation& p = options[uniform(static_cast<int>(options.size()))];
  RawChain c;
  if (!t.is_disk() || coin(0.3)) c.factors.push_back(RawFactor::leg(t, p.leg + 1));
  for (int d = p.word.to; d > p.word.from; --d) {
    Side s = d == p.word.from + 1 ? p.word.side : (coin(0.5) ? Side::source : Side::target);
    c.factors.push_back(RawFactor::letter(s, d));
  }
  if (c.factors.empty()) c.factors.push_back(RawFactor::identity(t));
  return c;
}

RawChain TermSampler::expand(const NodePtr& n, int depth) {
  const TableOfDimensions& t = n->target();
  RawChain c;
  if (n->is_cell()) {
    c = cell_chain(t, n->dim(), n->cell());
    if (depth > 0 && !t.is_disk() && c.factors.front().kind == RawFactor::Kind::eps && coin(0.25)) {
      std::vector<RawChain> items;
      Term id = identity_term(t);
      for (const auto& leg : id.legs) items.push_back(expand(leg, depth - 1));
      c.factors.insert(c.factors.begin(), RawFactor::tuple(std::move(items), t));
    }
  } else {
    const LiftGenerator& g = tower_.generator(n->gen());
    if (g.target->is_disk()) {
      c = expand(n->args()[0], depth - 1);
    } else {
      std::vector<RawChain> items;
      for (const auto& a : n->args()) items.push_back(expand(a, depth - 1));
      c.factors.push_back(RawFactor::tuple(std::move(items), *g.target));
    }
    c.factors.push_back(RawFactor::generator(tower_, n->gen()));
  }
  if (coin(0.1)) {
    std::size_t at = static_cast<std::size_t>(uniform(static_cast<int>(c.factors.size()) + 1));
    const TableOfDimensions* ty = at < c.factors.size() ? c.factors[at].tgt : c.source();
    c.factors.insert(c.factors.begin() + static_cast<long>(at), RawFactor::identity(*ty));
  }
  return c;
}

std::optional<RawChain> TermSampler::raw_disk(int m, const TableOfDimensions& t, int depth) {
  for (int attempt = 0; attempt < 10; ++attempt) {
    int option = depth > 0 ? uniform(3) : 0;
    if (option == 0) {
      auto n = normal_node(m, t, depth);
      if (n) return expand(*n, depth);
    } else if (option == 1) {
      const TableOfDimensions& u = tables_[uniform(static_cast<int>(tables_.size()))];
      auto inner = raw_disk(m, u, depth - 1);
      if (!inner) continue;
      auto outer = raw_morphism(u, t, depth - 1);
      if (outer) return concat(*outer, *inner);
    } else {
      std::vector<GenId> gens;
      for (GenId h = 0; h < tower_.size(); ++h)
        if (tower_.generator(h).dim == m + 1) gens.push_back(h);
      if (gens.empty()) continue;
      GenId h = gens[uniform(static_cast<int>(gens.size()))];
      auto outer = raw_morphism(*tower_.generator(h).target, t, depth - 1);
      if (!outer) continue;
      RawChain c = *outer;
      c.factors.push_back(RawFactor::generator(tower_, h));
      c.factors.push_back(RawFactor::letter(coin(0.5) ? Side::source : Side::target, m + 1));
      return c;
    }
  }
  return std::nullopt;
}

std::optional<RawChain> TermSampler::raw_morphism(const TableOfDimensions& s, const TableOfDimensions& t, int depth) {
  if (s.is_disk()) return raw_disk(s.upper()[0], t, depth);
  if (depth > 0 && coin(0.3)) {
    const TableOfDimensions& u = tables_[uniform(static_cast<int>(tables_.size()))];
    auto inner = raw_morphism(s, u, depth - 1);
    if (inner) {
      auto outer = raw_morphism(u, t, depth - 1);
      if (outer) return concat(*outer, *inner);
    }
  }
  auto nm = normal_morphism(s, t, depth);
  if (!nm) return std::nullopt;
  std::vector<RawChain> items;
  for (const auto& leg : nm->legs) items.push_back(expand(leg, depth));
  RawChain c;
  c.factors.push_back(RawFactor::tuple(std::move(items), s));
  return c;
}

RawChain TermSampler::sample(int depth) {
  while (true) {
    const TableOfDimensions& t = tables_[uniform(static_cast<int>(tables_.size()))];
    int m = uniform(tower_.truncation());
    auto c = raw_disk(m, t, depth);
    if (c) return *c;
  }
}

}  // namespace infgpd
