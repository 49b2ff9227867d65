#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "infgpd/group.hpp"
#include "infgpd/stdlib.hpp"
#include "infgpd/term.hpp"

namespace infgpd {

// One cell per leg of a table.
using Cells = std::vector<int>;

struct CellsHash {
  std::size_t operator()(const Cells& c) const;
};

// Elements of the iterated fiber product of a globular set over a table.
std::vector<Cells> fiber_product(const GlobularSet& x, const TableOfDimensions& t);
bool in_fiber_product(const GlobularSet& x, const TableOfDimensions& t, const Cells& c);

class Model;

/// Interprets generators that are added to a model's tower after
/// construction, and generators of a strict model.
using Filler = std::function<int(const Model& m, GenId h, const Cells& input)>;

/// Presheaf on a tower: a finite carrier and one finite table per generator.
class Model {
 public:
  Model(std::shared_ptr<const Tower> tower, GlobularSet carrier);

  const Tower& tower() const { return *tower_; }
  const std::shared_ptr<const Tower>& tower_ptr() const { return tower_; }
  const GlobularSet& carrier() const { return carrier_; }
  int count(int d) const { return carrier_.count(d); }

  const std::vector<Cells>& inputs(const TableOfDimensions& t) const;
  bool is_input(const TableOfDimensions& t, const Cells& c) const { return in_fiber_product(carrier_, t, c); }

  void set(GenId h, const Cells& input, int output);
  std::optional<int> lookup(GenId h, const Cells& input) const;
  int apply(GenId h, const Cells& input) const;
  bool interpreted(GenId h) const;
  // number of table rows of h
  int rows(GenId h) const { return static_cast<int>(interp_[h].size()); }

  int eval(const NodePtr& n, const Cells& c) const;
  Cells eval(const Term& t, const Cells& c) const;

  void set_filler(Filler f) { filler_ = std::move(f); }
  const Filler& filler() const { return filler_; }
  // Interpret every generator without a table using the filler.
  void fill();
  // Same model over a larger tower; new generators go through the filler.
  Model extended(std::shared_ptr<const Tower> bigger) const;

 private:
  std::shared_ptr<const Tower> tower_;
  GlobularSet carrier_;
  std::vector<std::unordered_map<Cells, int, CellsHash>> interp_;
  Filler filler_;
  mutable std::map<TableOfDimensions, std::vector<Cells>> inputs_;
};

struct ModelViolation {
  std::string generator;
  Cells input;
  std::string message;
};

struct ModelReport {
  std::vector<ModelViolation> violations;
  long checked = 0;
  bool ok() const { return violations.empty(); }
  std::string str() const;
};

ModelReport check_model(const Model& m, std::size_t max_violations = 20);

/// Strict structures with cells degenerate above their top dimension.
/// compose(n, j, a, b) is a *_j b for n-cells, b applied first.
class StrictStructure {
 public:
  virtual ~StrictStructure() = default;
  virtual std::string name() const = 0;
  virtual GlobularSet carrier() const = 0;
  virtual int compose(int n, int j, int a, int b) const = 0;
  virtual int unit(int d, int c) const = 0;  // (d+1)-cell on the d-cell c
  virtual int inverse(int n, int j, int a) const = 0;
  // explanation when a non-structural generator cannot be unit-filled
  virtual std::string filler_hint() const { return ""; }
  // throws when the structure cannot be a model of the given tower
  virtual void check_tower(const Tower&) const {}
};

struct CrossedModuleSpec {
  FiniteGroup g;
  FiniteGroup a;
  std::vector<int> boundary;             // A -> G
  std::vector<std::vector<int>> action;  // action[g][a] = g . a
  std::optional<std::string> violation() const;
};

std::shared_ptr<StrictStructure> discrete_structure(int points);
std::shared_ptr<StrictStructure> kg1_structure(const FiniteGroup& g);
std::shared_ptr<StrictStructure> kan_structure(const FiniteGroup& a, int n);
std::shared_ptr<StrictStructure> crossed_module_structure(const CrossedModuleSpec& spec);

CrossedModuleSpec trivial_action_crossed_module(const FiniteGroup& g, const FiniteGroup& a, std::vector<int> boundary);
CrossedModuleSpec parse_crossed_module(const std::string& json_text);

// Filler of a strict structure: structural generators found by classify()
// get the strict operations, every other generator a unit cell guarded by an
// equality check.
Filler strict_filler(std::shared_ptr<const StrictStructure> s);
Model build_strict(std::shared_ptr<const StrictStructure> s, std::shared_ptr<const Tower> tower);

Model restrict(const Model& m, const TowerFunctor& f);

// JSON with fields dimension, cells and interp; generators are named.
std::string model_to_json(const Model& m);
Model model_from_json(const std::string& text, std::shared_ptr<const Tower> tower);

/// Map of carriers between two models over the same tower.
struct ModelMorphism {
  const Model* source = nullptr;
  const Model* target = nullptr;
  std::vector<std::vector<int>> cells;  // per dimension; the last entry repeats upwards
  int operator()(int d, int c) const;
};

// first failure of face compatibility or of naturality, if any
std::optional<std::string> morphism_violation(const ModelMorphism& f);

}  // namespace infgpd
