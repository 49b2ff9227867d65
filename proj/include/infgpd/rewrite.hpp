#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "infgpd/term.hpp"

namespace infgpd {

struct RawChain;

/// One factor of a raw composite, with its type.
struct RawFactor {
  enum class Kind { letter, eps, id, gen, tuple };
  Kind kind = Kind::id;
  Side side = Side::source;  // letter
  int index = 0;             // letter dimension, or 1-based leg
  GenId gen = -1;
  const TableOfDimensions* src = nullptr;
  const TableOfDimensions* tgt = nullptr;
  std::vector<RawChain> items;  // tuple components

  static RawFactor letter(Side s, int dim);
  static RawFactor leg(const TableOfDimensions& t, int k1);
  static RawFactor identity(const TableOfDimensions& t);
  static RawFactor generator(const Tower& tower, GenId h);
  static RawFactor tuple(std::vector<RawChain> items, const TableOfDimensions& src);
};

/// Unevaluated composite; factors.front() is applied last.
struct RawChain {
  std::vector<RawFactor> factors;

  const TableOfDimensions* source() const { return factors.back().src; }
  const TableOfDimensions* target() const { return factors.front().tgt; }
};

bool operator==(const RawFactor& a, const RawFactor& b);
bool operator==(const RawChain& a, const RawChain& b);

RawChain concat(const RawChain& outer, const RawChain& inner);
std::string print_raw(const Tower& tower, const RawChain& c);
// well-typedness of adjacent factors and tuple components
bool well_typed(const RawChain& c);

// Direct evaluation into normal form.
Term evaluate(const Tower& tower, const RawChain& c);
// Normal form written back as a raw composite.
RawChain readback(const Tower& tower, const NodePtr& n);
RawChain readback(const Tower& tower, const Term& t);

enum class Strategy { leftmost_innermost, rightmost_outermost };

struct RewriteResult {
  RawChain normal;
  long steps = 0;
};

class RewriteEngine {
 public:
  explicit RewriteEngine(const Tower& tower);

  RewriteResult normalize(RawChain c, Strategy s, long max_steps = 1000000) const;
  // generator-weighted size; a generator weighs 1 plus the size of its larger face
  long size(const RawChain& c) const;
  long generator_weight(GenId h) const { return weights_[h]; }

 private:
  bool step(RawChain& c, Strategy s) const;
  bool step_here(RawChain& c, std::size_t p) const;

  const Tower& tower_;
  std::vector<RawChain> src_, tgt_;
  std::vector<long> weights_;
};

/// Random well-typed raw terms over a tower.
class TermSampler {
 public:
  TermSampler(const Tower& tower, std::uint64_t seed);

  std::optional<NodePtr> normal_node(int m, const TableOfDimensions& t, int depth);
  std::optional<Term> normal_morphism(const TableOfDimensions& s, const TableOfDimensions& t, int depth);
  // raw composite evaluating to the given normal form
  RawChain expand(const NodePtr& n, int depth);
  std::optional<RawChain> raw_disk(int m, const TableOfDimensions& t, int depth);
  std::optional<RawChain> raw_morphism(const TableOfDimensions& s, const TableOfDimensions& t, int depth);
  // a random raw term out of some disk into some table
  RawChain sample(int depth = 3);

 private:
  int uniform(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }
  RawChain cell_chain(const TableOfDimensions& t, int m, int cell);

  const Tower& tower_;
  std::mt19937_64 rng_;
  std::vector<TableOfDimensions> tables_;
};

}  // namespace infgpd
