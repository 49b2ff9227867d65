#include "infgpd/model.hpp"

#include <json.hpp>
#include <sstream>

namespace infgpd {

using nlohmann::json;

namespace {

std::string cells_str(const Cells& c) {
  std::string s = "(";
  for (std::size_t k = 0; k < c.size(); ++k) s += (k ? ", " : "") + std::to_string(c[k]);
  return s + ")";
}

// cell of leg k+1 must agree with leg k along the gluing dimension
bool glues(const GlobularSet& x, const TableOfDimensions& t, int k, int left, int right) {
  int j = t.lower()[k];
  return x.iterated_face(Side::source, t.upper()[k], j, left) ==
         x.iterated_face(Side::target, t.upper()[k + 1], j, right);
}

}  // namespace

std::size_t CellsHash::operator()(const Cells& c) const {
  std::size_t h = c.size();
  for (int x : c) h = h * 1000003u ^ static_cast<std::size_t>(x);
  return h;
}

std::vector<Cells> fiber_product(const GlobularSet& x, const TableOfDimensions& t) {
  std::vector<Cells> out;
  Cells cur(t.width());
  auto rec = [&](auto& self, int k) -> void {
    if (k == t.width()) {
      out.push_back(cur);
      return;
    }
    for (int c = 0; c < x.count(t.upper()[k]); ++c) {
      if (k > 0 && !glues(x, t, k - 1, cur[k - 1], c)) continue;
      cur[k] = c;
      self(self, k + 1);
    }
  };
  rec(rec, 0);
  return out;
}

bool in_fiber_product(const GlobularSet& x, const TableOfDimensions& t, const Cells& c) {
  if (static_cast<int>(c.size()) != t.width()) return false;
  for (int k = 0; k < t.width(); ++k)
    if (c[k] < 0 || c[k] >= x.count(t.upper()[k])) return false;
  for (int k = 0; k + 1 < t.width(); ++k)
    if (!glues(x, t, k, c[k], c[k + 1])) return false;
  return true;
}

Model::Model(std::shared_ptr<const Tower> tower, GlobularSet carrier)
    : tower_(std::move(tower)), carrier_(std::move(carrier)), interp_(tower_->size()) {
  if (auto v = carrier_.violation()) throw Error("model carrier: " + *v);
}

const std::vector<Cells>& Model::inputs(const TableOfDimensions& t) const {
  auto it = inputs_.find(t);
  if (it == inputs_.end()) it = inputs_.emplace(t, fiber_product(carrier_, t)).first;
  return it->second;
}

void Model::set(GenId h, const Cells& input, int output) { interp_.at(h)[input] = output; }

std::optional<int> Model::lookup(GenId h, const Cells& input) const {
  const auto& table = interp_.at(h);
  auto it = table.find(input);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

int Model::apply(GenId h, const Cells& input) const {
  if (auto r = lookup(h, input)) return *r;
  const LiftGenerator& g = tower_->generator(h);
  if (!is_input(*g.target, input))
    throw Error("input " + cells_str(input) + " of " + g.name + " is not in the fiber product over " + g.target->str());
  throw Error("generator " + g.name + " is not interpreted on " + cells_str(input));
}

bool Model::interpreted(GenId h) const {
  const LiftGenerator& g = tower_->generator(h);
  return interp_[h].size() == inputs(*g.target).size();
}

int Model::eval(const NodePtr& n, const Cells& c) const {
  const TableOfDimensions& t = n->target();
  if (n->is_cell()) {
    const CellPresentation& p = realization(t).presentation(n->dim(), n->cell());
    return carrier_.iterated_face(p.word.side, t.upper()[p.leg], n->dim(), c.at(p.leg));
  }
  Cells args;
  args.reserve(n->args().size());
  for (const auto& a : n->args()) args.push_back(eval(a, c));
  return apply(n->gen(), args);
}

Cells Model::eval(const Term& t, const Cells& c) const {
  Cells out;
  for (const auto& leg : t.legs) out.push_back(eval(leg, c));
  return out;
}

void Model::fill() {
  for (GenId h = 0; h < tower_->size(); ++h) {
    if (interpreted(h)) continue;
    if (!filler_) throw Error("generator " + tower_->generator(h).name + " has no interpretation");
    for (const Cells& in : inputs(*tower_->generator(h).target))
      if (!lookup(h, in)) set(h, in, filler_(*this, h, in));
  }
}

Model Model::extended(std::shared_ptr<const Tower> bigger) const {
  if (bigger->size() < tower_->size() || bigger->truncation() != tower_->truncation())
    throw Error("extension tower does not contain the model's tower");
  for (GenId h = 0; h < tower_->size(); ++h)
    if (bigger->generator(h).name != tower_->generator(h).name)
      throw Error("extension tower does not contain the model's tower");
  Model m(std::move(bigger), carrier_);
  for (GenId h = 0; h < tower_->size(); ++h) m.interp_[h] = interp_[h];
  m.filler_ = filler_;
  m.fill();
  return m;
}

std::string ModelReport::str() const {
  std::ostringstream out;
  if (ok()) {
    out << "model ok (" << checked << " equations checked)\n";
    return out.str();
  }
  for (const auto& v : violations) out << v.generator << " at " << cells_str(v.input) << ": " << v.message << "\n";
  return out.str();
}

ModelReport check_model(const Model& m, std::size_t max_violations) {
  ModelReport report;
  const Tower& tower = m.tower();
  const GlobularSet& x = m.carrier();
  auto add = [&](const LiftGenerator& g, const Cells& in, std::string msg) {
    if (report.violations.size() < max_violations) report.violations.push_back({g.name, in, std::move(msg)});
  };
  for (GenId h = 0; h < tower.size(); ++h) {
    const LiftGenerator& g = tower.generator(h);
    for (const Cells& in : m.inputs(*g.target)) {
      auto out = m.lookup(h, in);
      if (!out) {
        add(g, in, "no interpretation");
        continue;
      }
      if (*out < 0 || *out >= x.count(g.dim)) {
        add(g, in, "output " + std::to_string(*out) + " is not a " + std::to_string(g.dim) + "-cell");
        continue;
      }
      ++report.checked;
      try {
        int want_s = m.eval(g.src, in), want_t = m.eval(g.tgt, in);
        int got_s = x.source(g.dim, *out), got_t = x.target(g.dim, *out);
        if (got_s != want_s)
          add(g, in, "source of " + std::to_string(*out) + " is " + std::to_string(got_s) + ", equation requires " +
                         std::to_string(want_s));
        if (got_t != want_t)
          add(g, in, "target of " + std::to_string(*out) + " is " + std::to_string(got_t) + ", equation requires " +
                         std::to_string(want_t));
      } catch (const Error& e) {
        add(g, in, e.what());
      }
    }
  }
  return report;
}

namespace {

class Discrete : public StrictStructure {
 public:
  explicit Discrete(int k) : k_(k) {
    if (k < 1) throw Error("a discrete model needs at least one point");
  }
  std::string name() const override { return "Discrete(" + std::to_string(k_) + ")"; }
  GlobularSet carrier() const override { return GlobularSet({k_}, {{}}, {{}}, true); }
  int compose(int, int, int a, int) const override { return a; }
  int unit(int, int c) const override { return c; }
  int inverse(int, int, int a) const override { return a; }

 private:
  int k_;
};

class KG1 : public StrictStructure {
 public:
  explicit KG1(FiniteGroup g) : g_(std::move(g)) {}
  std::string name() const override { return "KG1(" + g_.name + ")"; }
  GlobularSet carrier() const override {
    int n = g_.order();
    return GlobularSet({1, n}, {{}, std::vector<int>(n, 0)}, {{}, std::vector<int>(n, 0)}, true);
  }
  int compose(int, int j, int a, int b) const override { return j == 0 ? g_.op(a, b) : a; }
  int unit(int d, int c) const override { return d == 0 ? g_.unit : c; }
  int inverse(int, int j, int a) const override { return j == 0 ? g_.inverse(a) : a; }

 private:
  FiniteGroup g_;
};

class KAn : public StrictStructure {
 public:
  KAn(FiniteGroup a, int n) : a_(std::move(a)), n_(n) {
    if (!a_.is_abelian()) throw Error("KAn needs an abelian group, " + a_.name + " is not");
    if (n < 2) throw Error("KAn needs n >= 2");
  }
  std::string name() const override { return "KAn(" + a_.name + ", " + std::to_string(n_) + ")"; }
  GlobularSet carrier() const override {
    std::vector<int> counts(n_ + 1, 1);
    counts[n_] = a_.order();
    std::vector<std::vector<int>> faces(n_ + 1);
    for (int d = 1; d <= n_; ++d) faces[d].assign(counts[d], 0);
    return GlobularSet(counts, faces, faces, true);
  }
  int compose(int m, int j, int a, int b) const override {
    if (m < n_) return 0;
    return j < n_ ? a_.op(a, b) : a;
  }
  int unit(int d, int c) const override {
    if (d < n_ - 1) return 0;
    return d == n_ - 1 ? a_.unit : c;
  }
  int inverse(int m, int j, int a) const override {
    if (m < n_) return 0;
    return j < n_ ? a_.inverse(a) : a;
  }
  void check_tower(const Tower& t) const override {
    if (n_ >= t.truncation())
      throw Error("KAn(" + a_.name + ", " + std::to_string(n_) + ") needs n below the truncation " +
                  std::to_string(t.truncation()));
  }

 private:
  FiniteGroup a_;
  int n_;
};

// 2-cell (g, a): g => boundary(a) g, numbered g * |A| + a
class CrossedModule : public StrictStructure {
 public:
  explicit CrossedModule(CrossedModuleSpec spec) : s_(std::move(spec)) {
    if (auto v = s_.violation()) throw Error("crossed module: " + *v);
  }
  std::string name() const override { return "CrossedModule(" + s_.a.name + " -> " + s_.g.name + ")"; }
  GlobularSet carrier() const override {
    int ng = s_.g.order(), na = s_.a.order();
    std::vector<int> src2, tgt2;
    for (int g = 0; g < ng; ++g)
      for (int a = 0; a < na; ++a) {
        src2.push_back(g);
        tgt2.push_back(s_.g.op(s_.boundary[a], g));
      }
    return GlobularSet({1, ng, ng * na}, {{}, std::vector<int>(ng, 0), src2}, {{}, std::vector<int>(ng, 0), tgt2},
                       true);
  }
  int compose(int n, int j, int x, int y) const override {
    if (n == 1) return s_.g.op(x, y);
    int na = s_.a.order();
    int g2 = x / na, a2 = x % na, g1 = y / na, a1 = y % na;
    if (j == 0) return cell(s_.g.op(g2, g1), s_.a.op(a2, s_.action[g2][a1]));
    if (j == 1) return cell(g1, s_.a.op(a2, a1));
    return x;
  }
  int unit(int d, int c) const override {
    if (d == 0) return s_.g.unit;
    if (d == 1) return cell(c, s_.a.unit);
    return c;
  }
  int inverse(int n, int j, int x) const override {
    if (n == 1) return s_.g.inverse(x);
    int na = s_.a.order();
    int g = x / na, a = x % na;
    if (j == 0) {
      int gi = s_.g.inverse(g);
      return cell(gi, s_.action[gi][s_.a.inverse(a)]);
    }
    if (j == 1) return cell(s_.g.op(s_.boundary[a], g), s_.a.inverse(a));
    return x;
  }
  std::string filler_hint() const override {
    return "; a crossed-module model only interprets such a lifting when both sides agree, otherwise a section of "
           "the boundary map would be needed";
  }

 private:
  int cell(int g, int a) const { return g * s_.a.order() + a; }
  CrossedModuleSpec s_;
};

struct RoleCache {
  const Tower* tower = nullptr;
  std::vector<std::optional<Role>> roles;
};

}  // namespace

std::optional<std::string> CrossedModuleSpec::violation() const {
  if (auto v = g.violation()) return "G: " + *v;
  if (auto v = a.violation()) return "A: " + *v;
  int ng = g.order(), na = a.order();
  if (static_cast<int>(boundary.size()) != na) return "boundary has the wrong size";
  for (int x : boundary)
    if (x < 0 || x >= ng) return "boundary value out of range";
  if (!is_homomorphism(a, g, boundary)) return "boundary is not a homomorphism";
  if (static_cast<int>(action.size()) != ng) return "action has the wrong size";
  for (int x = 0; x < ng; ++x) {
    if (static_cast<int>(action[x].size()) != na) return "action has the wrong size";
    for (int y : action[x])
      if (y < 0 || y >= na) return "action value out of range";
    if (!is_homomorphism(a, a, action[x])) return "g . - is not an endomorphism of A for g = " + std::to_string(x);
  }
  for (int y = 0; y < na; ++y)
    if (action[g.unit][y] != y) return "the unit of G acts nontrivially";
  for (int x1 = 0; x1 < ng; ++x1)
    for (int x2 = 0; x2 < ng; ++x2)
      for (int y = 0; y < na; ++y)
        if (action[g.op(x1, x2)][y] != action[x1][action[x2][y]]) return "the action is not associative";
  for (int x = 0; x < ng; ++x)
    for (int y = 0; y < na; ++y)
      if (boundary[action[x][y]] != g.op(g.op(x, boundary[y]), g.inverse(x)))
        return "boundary is not equivariant at (" + std::to_string(x) + ", " + std::to_string(y) + ")";
  for (int y = 0; y < na; ++y)
    for (int z = 0; z < na; ++z)
      if (action[boundary[y]][z] != a.op(a.op(y, z), a.inverse(y)))
        return "Peiffer identity fails at (" + std::to_string(y) + ", " + std::to_string(z) + ")";
  return std::nullopt;
}

std::shared_ptr<StrictStructure> discrete_structure(int points) { return std::make_shared<Discrete>(points); }
std::shared_ptr<StrictStructure> kg1_structure(const FiniteGroup& g) { return std::make_shared<KG1>(g); }
std::shared_ptr<StrictStructure> kan_structure(const FiniteGroup& a, int n) { return std::make_shared<KAn>(a, n); }
std::shared_ptr<StrictStructure> crossed_module_structure(const CrossedModuleSpec& spec) {
  return std::make_shared<CrossedModule>(spec);
}

CrossedModuleSpec trivial_action_crossed_module(const FiniteGroup& g, const FiniteGroup& a, std::vector<int> boundary) {
  CrossedModuleSpec s{g, a, std::move(boundary), {}};
  for (int x = 0; x < g.order(); ++x) {
    std::vector<int> row(a.order());
    for (int y = 0; y < a.order(); ++y) row[y] = y;
    s.action.push_back(row);
  }
  return s;
}

CrossedModuleSpec parse_crossed_module(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw Error(std::string("crossed module file: ") + e.what());
  }
  try {
    FiniteGroup g = parse_group(j.at("G").get<std::string>());
    FiniteGroup a = parse_group(j.at("A").get<std::string>());
    CrossedModuleSpec s = trivial_action_crossed_module(g, a, j.at("boundary").get<std::vector<int>>());
    if (j.contains("action") && !j["action"].is_null()) s.action = j["action"].get<std::vector<std::vector<int>>>();
    if (auto v = s.violation()) throw Error("crossed module: " + *v);
    return s;
  } catch (const json::exception& e) {
    throw Error(std::string("crossed module file: ") + e.what());
  }
}

Filler strict_filler(std::shared_ptr<const StrictStructure> s) {
  auto cache = std::make_shared<RoleCache>();
  return [s, cache](const Model& m, GenId h, const Cells& in) -> int {
    const Tower& tower = m.tower();
    if (cache->tower != &tower || static_cast<int>(cache->roles.size()) != tower.size()) {
      cache->roles = classify(tower);
      cache->tower = &tower;
    }
    const LiftGenerator& g = tower.generator(h);
    if (const auto& r = cache->roles[h]) {
      switch (r->kind) {
        case Role::Kind::nabla:
          return s->compose(r->i, r->j, in[0], in[1]);
        case Role::Kind::kappa:
          return s->unit(r->i, in[0]);
        case Role::Kind::omega:
          return s->inverse(r->i, r->j, in[0]);
      }
    }
    int a = m.eval(g.src, in), b = m.eval(g.tgt, in);
    if (a != b)
      throw Error("generator " + g.name + " cannot be filled by a unit in " + s->name() + ": on input " +
                  cells_str(in) + " its source is " + std::to_string(a) + " and its target " + std::to_string(b) +
                  s->filler_hint());
    return s->unit(g.dim - 1, a);
  };
}

Model build_strict(std::shared_ptr<const StrictStructure> s, std::shared_ptr<const Tower> tower) {
  s->check_tower(*tower);
  Model m(std::move(tower), s->carrier());
  m.set_filler(strict_filler(s));
  m.fill();
  return m;
}

Model restrict(const Model& m, const TowerFunctor& f) {
  if (&f.target() != &m.tower()) throw Error("restriction along a functor into a different tower");
  const auto& source = f.source_ptr();
  Model r(source, m.carrier());
  for (GenId h = 0; h < source->size(); ++h) {
    const Term& image = f.image(h);
    for (const Cells& in : r.inputs(*source->generator(h).target)) r.set(h, in, m.eval(image.node(), in));
  }
  return r;
}

std::string model_to_json(const Model& m) {
  const GlobularSet& x = m.carrier();
  json j;
  j["dimension"] = x.top();
  json cells = json::array();
  for (int d = 0; d <= x.top(); ++d) {
    json row = json::array();
    for (int c = 0; c < x.count(d); ++c)
      row.push_back(d == 0 ? json::object() : json{{"src", x.source(d, c)}, {"tgt", x.target(d, c)}});
    cells.push_back(row);
  }
  j["cells"] = cells;
  json interp = json::object();
  for (GenId h = 0; h < m.tower().size(); ++h) {
    const LiftGenerator& g = m.tower().generator(h);
    json rows = json::array();
    for (const Cells& in : m.inputs(*g.target))
      if (auto out = m.lookup(h, in)) rows.push_back(json{{"in", in}, {"out", *out}});
    interp[g.name] = rows;
  }
  j["interp"] = interp;
  return j.dump(1);
}

Model model_from_json(const std::string& text, std::shared_ptr<const Tower> tower) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("model file: ") + e.what());
  }
  try {
    int top = j.at("dimension").get<int>();
    const json& cells = j.at("cells");
    if (top < 0 || static_cast<int>(cells.size()) != top + 1)
      throw Error("model file: cells must list dimensions 0 to " + std::to_string(top));
    std::vector<int> counts;
    std::vector<std::vector<int>> src(top + 1), tgt(top + 1);
    for (int d = 0; d <= top; ++d) {
      counts.push_back(static_cast<int>(cells[d].size()));
      if (d == 0) continue;
      for (const json& c : cells[d]) {
        int s = c.at("src").get<int>(), t = c.at("tgt").get<int>();
        if (s < 0 || s >= counts[d - 1] || t < 0 || t >= counts[d - 1])
          throw Error("model file: face of a " + std::to_string(d) + "-cell out of range");
        src[d].push_back(s);
        tgt[d].push_back(t);
      }
    }
    Model m(tower, GlobularSet(counts, src, tgt, true));
    const json& interp = j.at("interp");
    for (auto it = interp.begin(); it != interp.end(); ++it) {
      auto h = tower->find(it.key());
      if (!h) throw Error("model file: unknown generator '" + it.key() + "'");
      const LiftGenerator& g = tower->generator(*h);
      for (const json& row : it.value()) {
        Cells in = row.at("in").get<Cells>();
        if (!m.is_input(*g.target, in))
          throw Error("model file: input " + cells_str(in) + " of " + g.name + " is not in the fiber product");
        m.set(*h, in, row.at("out").get<int>());
      }
    }
    return m;
  } catch (const json::exception& e) {
    throw Error(std::string("model file: ") + e.what());
  }
}

int ModelMorphism::operator()(int d, int c) const {
  const auto& row = d < static_cast<int>(cells.size()) ? cells[d] : cells.back();
  return row.at(c);
}

std::optional<std::string> morphism_violation(const ModelMorphism& f) {
  const Model& a = *f.source;
  const Model& b = *f.target;
  if (&a.tower() != &b.tower() && !(a.tower() == b.tower())) return "models over different towers";
  int n = a.tower().truncation();
  for (int d = 0; d <= n; ++d)
    for (int c = 0; c < a.count(d); ++c) {
      int img = f(d, c);
      if (img < 0 || img >= b.count(d)) return "image of " + std::to_string(d) + "-cell " + std::to_string(c) + " out of range";
      if (d == 0) continue;
      for (Side s : {Side::source, Side::target})
        if (f(d - 1, a.carrier().face(s, d, c)) != b.carrier().face(s, d, img))
          return std::string(s == Side::source ? "source" : "target") + " of " + std::to_string(d) + "-cell " +
                 std::to_string(c) + " is not preserved";
    }
  const Tower& t = a.tower();
  for (GenId h = 0; h < t.size(); ++h) {
    const LiftGenerator& g = t.generator(h);
    for (const Cells& in : a.inputs(*g.target)) {
      Cells img(in.size());
      for (std::size_t k = 0; k < in.size(); ++k) img[k] = f(g.target->upper()[k], in[k]);
      if (f(g.dim, a.apply(h, in)) != b.apply(h, img))
        return "not natural for " + g.name + " at " + cells_str(in);
    }
  }
  return std::nullopt;
}

}  // namespace infgpd
