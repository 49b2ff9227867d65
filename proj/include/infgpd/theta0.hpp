#pragma once

#include <vector>

#include "infgpd/globe.hpp"

namespace infgpd {

/// Map of globular sums, stored as the underlying map of carriers.
class Theta0Morphism {
 public:
  Theta0Morphism(const TableOfDimensions& source, const TableOfDimensions& target,
                 std::vector<std::vector<int>> cells);

  static Theta0Morphism identity(const TableOfDimensions& t);
  // cocone leg k (0-based)
  static Theta0Morphism leg(const TableOfDimensions& t, int k);
  // D_m -> target classifying an m-cell
  static Theta0Morphism from_cell(const TableOfDimensions& target, int m, int cell);

  const TableOfDimensions& source() const { return *source_; }
  const TableOfDimensions& target() const { return *target_; }
  int operator()(int d, int c) const { return cells_[d][c]; }
  // image of the top cell when the source is a disk
  int top_image() const;

  friend bool operator==(const Theta0Morphism& a, const Theta0Morphism& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.cells_ == b.cells_;
  }

 private:
  const TableOfDimensions* source_;
  const TableOfDimensions* target_;
  std::vector<std::vector<int>> cells_;
};

class PairingError : public Error {
 public:
  PairingError(int k, int dim, const std::string& what) : Error(what), k(k), dim(dim) {}
  int k;    // 0-based index of the left leg of the failing gluing
  int dim;  // gluing dimension
};

Theta0Morphism compose(const Theta0Morphism& g, const Theta0Morphism& f);
Theta0Morphism pair(const std::vector<Theta0Morphism>& components, const TableOfDimensions& source);
Theta0Morphism globe_functor(const CoglobularWord& w);

}  // namespace infgpd
