#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "infgpd/globe.hpp"
#include "infgpd/theta0.hpp"

namespace infgpd {

using GenId = int;
class Tower;
class Node;
using NodePtr = std::shared_ptr<const Node>;

/// Normal form of a morphism D_m -> T of the free tower: either a cell of T
/// or a generator h followed by a tuple S_h -> T.
class Node {
 public:
  enum class Kind { cell, apply };

  static NodePtr make_cell(const TableOfDimensions* target, int dim, int cell);
  static NodePtr make_apply(GenId gen, int dim, const TableOfDimensions* target, std::vector<NodePtr> args);

  Kind kind() const { return kind_; }
  bool is_cell() const { return kind_ == Kind::cell; }
  int dim() const { return dim_; }
  const TableOfDimensions& target() const { return *target_; }
  const TableOfDimensions* target_ptr() const { return target_; }
  int cell() const { return cell_; }
  GenId gen() const { return gen_; }
  const std::vector<NodePtr>& args() const { return args_; }
  std::size_t hash() const { return hash_; }

  Node(Kind kind, int dim, const TableOfDimensions* target, int cell, GenId gen, std::vector<NodePtr> args);

 private:
  Kind kind_;
  int dim_;
  const TableOfDimensions* target_;
  int cell_ = -1;
  GenId gen_ = -1;
  std::vector<NodePtr> args_;
  std::size_t hash_ = 0;
};

bool node_equal(const NodePtr& a, const NodePtr& b);

/// Morphism S -> T of the free tower: one normal form per leg of S.
struct Term {
  const TableOfDimensions* source = nullptr;
  const TableOfDimensions* target = nullptr;
  std::vector<NodePtr> legs;

  bool is_disk() const { return source->is_disk(); }
  const NodePtr& node() const;
  int dim() const { return source->dimension(); }
  friend bool operator==(const Term& a, const Term& b);
};

Term as_term(const NodePtr& n);

struct LiftGenerator {
  std::string name;
  int dim = 0;  // source disk dimension n+1
  const TableOfDimensions* target = nullptr;
  NodePtr src;  // D_n -> target
  NodePtr tgt;
  int level = 0;
};

struct Verdict {
  bool ok = true;
  std::string reason;
  explicit operator bool() const { return ok; }
};

/// Truncated tower of free extensions, stored as its generators.
class Tower {
 public:
  explicit Tower(int truncation);

  int truncation() const { return truncation_; }
  int size() const { return static_cast<int>(gens_.size()); }
  const LiftGenerator& generator(GenId h) const;
  const std::vector<LiftGenerator>& generators() const { return gens_; }
  std::optional<GenId> find(const std::string& name) const;
  int max_level() const;

  GenId declare_lift(const std::string& name, const Term& f, const Term& g);

  friend bool operator==(const Tower& a, const Tower& b);

 private:
  int truncation_;
  std::vector<LiftGenerator> gens_;
  std::unordered_map<std::string, GenId> by_name_;
};

bool is_reserved_name(const std::string& name);
bool is_valid_name(const std::string& name);

Term identity_term(const TableOfDimensions& t);
Term eps(const TableOfDimensions& t, int k);  // 0-based leg
Term word_term(const CoglobularWord& w);
Term cell_term(const TableOfDimensions& t, int m, int cell);
Term generator_term(const Tower& tower, GenId h);
Term generator_term(const Tower& tower, const std::string& name);
Term from_theta0(const Theta0Morphism& f);
std::optional<Theta0Morphism> as_theta0(const Term& t);

NodePtr precompose_word(const Tower& tower, const NodePtr& t, const CoglobularWord& w);
NodePtr subst(const Tower& tower, const NodePtr& t, const Term& tuple);
Term compose(const Tower& tower, const Term& g, const Term& f);
// components are disk terms into a common target
Term tuple(const Tower& tower, const std::vector<Term>& components, const TableOfDimensions& source);

Term glob_source(const Tower& tower, const Term& t);
Term glob_target(const Tower& tower, const Term& t);
bool parallel(const Tower& tower, const Term& f, const Term& g);
Verdict admissible(const Tower& tower, const Term& f, const Term& g);

void collect_generators(const NodePtr& n, std::set<GenId>& out);

/// Assignment of a term of `target` to every generator of `source`.
class TowerFunctor {
 public:
  TowerFunctor(std::shared_ptr<const Tower> source, std::shared_ptr<const Tower> target, std::vector<Term> assignment);

  const Tower& source() const { return *source_; }
  const std::shared_ptr<const Tower>& source_ptr() const { return source_; }
  const Tower& target() const { return *target_; }
  NodePtr apply(const NodePtr& n) const;
  Term apply(const Term& t) const;
  const Term& image(GenId h) const { return assignment_[h]; }

 private:
  std::shared_ptr<const Tower> source_;
  std::shared_ptr<const Tower> target_;
  std::vector<Term> assignment_;
};

TowerFunctor identity_functor(std::shared_ptr<const Tower> tower);

}  // namespace infgpd
