#include "infgpd/term.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <regex>

namespace infgpd {

namespace {

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

const TableOfDimensions* disk_ptr(int m) { return intern(TableOfDimensions::disk(m)); }

}  // namespace

Node::Node(Kind kind, int dim, const TableOfDimensions* target, int cell, GenId gen, std::vector<NodePtr> args)
    : kind_(kind), dim_(dim), target_(target), cell_(cell), gen_(gen), args_(std::move(args)) {
  std::size_t h = mix(static_cast<std::size_t>(kind_), std::hash<const void*>{}(target_));
  h = mix(h, static_cast<std::size_t>(dim_));
  if (kind_ == Kind::cell) {
    h = mix(h, static_cast<std::size_t>(cell_));
  } else {
    h = mix(h, static_cast<std::size_t>(gen_));
    for (const auto& a : args_) h = mix(h, a->hash());
  }
  hash_ = h;
}

NodePtr Node::make_cell(const TableOfDimensions* target, int dim, int cell) {
  if (cell < 0 || cell >= realization(*target).carrier().count(dim)) throw Error("no such cell in " + target->str());
  return std::make_shared<const Node>(Kind::cell, dim, target, cell, -1, std::vector<NodePtr>{});
}

NodePtr Node::make_apply(GenId gen, int dim, const TableOfDimensions* target, std::vector<NodePtr> args) {
  return std::make_shared<const Node>(Kind::apply, dim, target, -1, gen, std::move(args));
}

bool node_equal(const NodePtr& a, const NodePtr& b) {
  if (a == b) return true;
  if (a->hash() != b->hash() || a->kind() != b->kind() || a->dim() != b->dim() || a->target_ptr() != b->target_ptr())
    return false;
  if (a->is_cell()) return a->cell() == b->cell();
  if (a->gen() != b->gen() || a->args().size() != b->args().size()) return false;
  for (std::size_t i = 0; i < a->args().size(); ++i)
    if (!node_equal(a->args()[i], b->args()[i])) return false;
  return true;
}

const NodePtr& Term::node() const {
  if (!is_disk()) throw Error("term source is not a disk");
  return legs[0];
}

bool operator==(const Term& a, const Term& b) {
  if (a.source != b.source || a.target != b.target || a.legs.size() != b.legs.size()) return false;
  for (std::size_t i = 0; i < a.legs.size(); ++i)
    if (!node_equal(a.legs[i], b.legs[i])) return false;
  return true;
}

Term as_term(const NodePtr& n) { return Term{disk_ptr(n->dim()), n->target_ptr(), {n}}; }

Tower::Tower(int truncation) : truncation_(truncation) {
  if (truncation < 1) throw Error("truncation must be at least 1");
}

const LiftGenerator& Tower::generator(GenId h) const {
  if (h < 0 || h >= size()) throw Error("unknown generator id " + std::to_string(h));
  return gens_[h];
}

std::optional<GenId> Tower::find(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

int Tower::max_level() const {
  int m = 0;
  for (const auto& g : gens_) m = std::max(m, g.level);
  return m;
}

bool is_reserved_name(const std::string& name) {
  static const std::regex reserved("(s|t|eps|D)[0-9]+|id|dim|lift|src|tgt");
  return std::regex_match(name, reserved);
}

bool is_valid_name(const std::string& name) {
  static const std::regex ident("[A-Za-z_][A-Za-z0-9_.]*");
  return std::regex_match(name, ident) && !is_reserved_name(name);
}

GenId Tower::declare_lift(const std::string& name, const Term& f, const Term& g) {
  if (!is_valid_name(name)) throw Error("invalid generator name '" + name + "'");
  if (by_name_.count(name)) throw Error("generator '" + name + "' is already declared");
  Verdict v = admissible(*this, f, g);
  if (!v) throw Error("lift '" + name + "' is not admissible: " + v.reason);
  std::set<GenId> used;
  collect_generators(f.node(), used);
  collect_generators(g.node(), used);
  int level = 0;
  for (GenId u : used) level = std::max(level, gens_[u].level);
  LiftGenerator gen{name, f.dim() + 1, f.target, f.node(), g.node(), level + 1};
  gens_.push_back(std::move(gen));
  by_name_[name] = size() - 1;
  return size() - 1;
}

bool operator==(const Tower& a, const Tower& b) {
  if (a.truncation_ != b.truncation_ || a.size() != b.size()) return false;
  for (int i = 0; i < a.size(); ++i) {
    const auto& x = a.gens_[i];
    const auto& y = b.gens_[i];
    if (x.name != y.name || x.dim != y.dim || x.target != y.target || x.level != y.level ||
        !node_equal(x.src, y.src) || !node_equal(x.tgt, y.tgt))
      return false;
  }
  return true;
}

Term cell_term(const TableOfDimensions& t, int m, int cell) {
  const TableOfDimensions* tp = intern(t);
  return Term{disk_ptr(m), tp, {Node::make_cell(tp, m, cell)}};
}

Term identity_term(const TableOfDimensions& t) {
  const TableOfDimensions* tp = intern(t);
  const SumRealization& r = realization(t);
  Term out{tp, tp, {}};
  for (int k = 0; k < t.width(); ++k) out.legs.push_back(Node::make_cell(tp, t.upper()[k], r.leg_top(k)));
  return out;
}

Term eps(const TableOfDimensions& t, int k) {
  if (k < 0 || k >= t.width()) throw Error("no leg " + std::to_string(k + 1) + " in " + t.str());
  return cell_term(t, t.upper()[k], realization(t).leg_top(k));
}

Term word_term(const CoglobularWord& w) {
  TableOfDimensions t = TableOfDimensions::disk(w.to);
  return cell_term(t, w.from, realization(t).leg_cell(0, w.from, w.side));
}

Term generator_term(const Tower& tower, GenId h) {
  const LiftGenerator& g = tower.generator(h);
  Term id = identity_term(*g.target);
  return Term{disk_ptr(g.dim), g.target, {Node::make_apply(h, g.dim, g.target, id.legs)}};
}

Term generator_term(const Tower& tower, const std::string& name) {
  auto h = tower.find(name);
  if (!h) throw Error("unknown generator '" + name + "'");
  return generator_term(tower, *h);
}

Term from_theta0(const Theta0Morphism& f) {
  const TableOfDimensions& s = f.source();
  const SumRealization& r = realization(s);
  const TableOfDimensions* tp = intern(f.target());
  Term out{intern(s), tp, {}};
  for (int k = 0; k < s.width(); ++k) {
    int m = s.upper()[k];
    out.legs.push_back(Node::make_cell(tp, m, f(m, r.leg_top(k))));
  }
  return out;
}

std::optional<Theta0Morphism> as_theta0(const Term& t) {
  std::vector<Theta0Morphism> comps;
  for (const auto& n : t.legs) {
    if (!n->is_cell()) return std::nullopt;
    comps.push_back(Theta0Morphism::from_cell(*t.target, n->dim(), n->cell()));
  }
  return pair(comps, *t.source);
}

NodePtr precompose_word(const Tower& tower, const NodePtr& t, const CoglobularWord& w) {
  if (w.to != t->dim()) throw Error("word does not land in the source of the term");
  if (w.is_identity()) return t;
  if (t->is_cell()) {
    int c = realization(t->target()).carrier().iterated_face(w.side, w.to, w.from, t->cell());
    return Node::make_cell(t->target_ptr(), w.from, c);
  }
  const LiftGenerator& g = tower.generator(t->gen());
  const NodePtr& face = w.side == Side::source ? g.src : g.tgt;
  NodePtr inner = precompose_word(tower, face, CoglobularWord::iterated(w.side, w.from, w.to - 1));
  return subst(tower, inner, Term{g.target, t->target_ptr(), t->args()});
}

NodePtr subst(const Tower& tower, const NodePtr& t, const Term& tup) {
  if (t->target_ptr() != tup.source) throw Error("substitution source mismatch");
  if (t->is_cell()) {
    const CellPresentation& p = realization(t->target()).presentation(t->dim(), t->cell());
    return precompose_word(tower, tup.legs[p.leg], p.word);
  }
  std::vector<NodePtr> args;
  args.reserve(t->args().size());
  for (const auto& a : t->args()) args.push_back(subst(tower, a, tup));
  return Node::make_apply(t->gen(), t->dim(), tup.target, std::move(args));
}

Term compose(const Tower& tower, const Term& g, const Term& f) {
  if (f.target != g.source)
    throw Error("cannot compose: " + f.target->str() + " does not match " + g.source->str());
  Term out{f.source, g.target, {}};
  for (const auto& n : f.legs) out.legs.push_back(subst(tower, n, g));
  return out;
}

Term tuple(const Tower& tower, const std::vector<Term>& components, const TableOfDimensions& source) {
  if (static_cast<int>(components.size()) != source.width()) throw Error("tuple needs one component per leg of " + source.str());
  const auto& up = source.upper();
  const auto& lo = source.lower();
  for (int k = 0; k < source.width(); ++k) {
    if (!components[k].is_disk() || components[k].dim() != up[k])
      throw PairingError(k, up[k], "tuple component " + std::to_string(k + 1) + " must have source D" + std::to_string(up[k]));
    if (components[k].target != components[0].target) throw Error("tuple components disagree on the target");
  }
  for (int k = 0; k + 1 < source.width(); ++k) {
    int g = lo[k];
    NodePtr left = precompose_word(tower, components[k].node(), CoglobularWord::iterated(Side::source, g, up[k]));
    NodePtr right = precompose_word(tower, components[k + 1].node(), CoglobularWord::iterated(Side::target, g, up[k + 1]));
    if (!node_equal(left, right))
      throw PairingError(k, g, "tuple components " + std::to_string(k + 1) + " and " + std::to_string(k + 2) +
                                   " do not match in dimension " + std::to_string(g));
  }
  Term out{intern(source), components[0].target, {}};
  for (const auto& c : components) out.legs.push_back(c.node());
  return out;
}

Term glob_source(const Tower& tower, const Term& t) {
  if (t.dim() == 0) throw Error("a 0-dimensional term has no source");
  return as_term(precompose_word(tower, t.node(), CoglobularWord::letter(Side::source, t.dim())));
}

Term glob_target(const Tower& tower, const Term& t) {
  if (t.dim() == 0) throw Error("a 0-dimensional term has no target");
  return as_term(precompose_word(tower, t.node(), CoglobularWord::letter(Side::target, t.dim())));
}

bool parallel(const Tower& tower, const Term& f, const Term& g) {
  if (!f.is_disk() || !g.is_disk() || f.dim() != g.dim() || f.target != g.target) return false;
  if (f.dim() == 0) return true;
  return glob_source(tower, f) == glob_source(tower, g) && glob_target(tower, f) == glob_target(tower, g);
}

Verdict admissible(const Tower& tower, const Term& f, const Term& g) {
  if (!f.is_disk() || !g.is_disk()) return {false, "source is not a disk"};
  if (f.dim() != g.dim()) return {false, "source dimensions differ"};
  if (f.target != g.target) return {false, "targets differ"};
  int n = f.dim();
  if (n + 1 > tower.truncation())
    return {false, "lift dimension " + std::to_string(n + 1) + " exceeds truncation " + std::to_string(tower.truncation())};
  if (f.target->dimension() > n + 1) return {false, "dimension of target exceeds n+1"};
  if (!parallel(tower, f, g)) return {false, "not parallel"};
  return {};
}

void collect_generators(const NodePtr& n, std::set<GenId>& out) {
  if (n->is_cell()) return;
  out.insert(n->gen());
  for (const auto& a : n->args()) collect_generators(a, out);
}

TowerFunctor::TowerFunctor(std::shared_ptr<const Tower> source, std::shared_ptr<const Tower> target,
                           std::vector<Term> assignment)
    : source_(std::move(source)), target_(std::move(target)), assignment_(std::move(assignment)) {
  if (static_cast<int>(assignment_.size()) != source_->size()) throw Error("functor needs one term per generator");
  for (GenId h = 0; h < source_->size(); ++h) {
    const LiftGenerator& g = source_->generator(h);
    const Term& a = assignment_[h];
    if (!a.is_disk() || a.dim() != g.dim || a.target != g.target)
      throw Error("functor image of '" + g.name + "' has the wrong type");
    if (!(glob_source(*target_, a) == as_term(apply(g.src))))
      throw Error("functor image of '" + g.name + "' violates the source equation");
    if (!(glob_target(*target_, a) == as_term(apply(g.tgt))))
      throw Error("functor image of '" + g.name + "' violates the target equation");
  }
}

NodePtr TowerFunctor::apply(const NodePtr& n) const {
  if (n->is_cell()) return n;
  std::vector<NodePtr> args;
  for (const auto& a : n->args()) args.push_back(apply(a));
  const LiftGenerator& g = source_->generator(n->gen());
  return subst(*target_, assignment_[n->gen()].node(), Term{g.target, n->target_ptr(), std::move(args)});
}

Term TowerFunctor::apply(const Term& t) const {
  Term out{t.source, t.target, {}};
  for (const auto& n : t.legs) out.legs.push_back(apply(n));
  return out;
}

TowerFunctor identity_functor(std::shared_ptr<const Tower> tower) {
  std::vector<Term> a;
  for (GenId h = 0; h < tower->size(); ++h) a.push_back(generator_term(*tower, h));
  return TowerFunctor(tower, tower, std::move(a));
}

}  // namespace infgpd
