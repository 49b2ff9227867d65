#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "infgpd/term.hpp"

namespace infgpd {

/// Generators of a tower that behave like the composition, unit and
/// inverse operations of a pregroupoid.
struct Role {
  enum class Kind { nabla, kappa, omega };
  Kind kind;
  int i = 0;
  int j = 0;  // unused for kappa
  friend bool operator==(const Role&, const Role&) = default;
};

struct PregroupoidBundle {
  std::map<std::pair<int, int>, GenId> nabla;  // (i, j): D_i -> D_i +j D_i
  std::map<int, GenId> kappa;                  // i: D_{i+1} -> D_i
  std::map<std::pair<int, int>, GenId> omega;  // (i, j): D_i -> D_i

  GenId nabla_at(int i, int j) const;
  GenId kappa_at(int i) const;
  GenId omega_at(int i, int j) const;
  bool complete_up_to(int n) const;
};

// Recognise pregroupoid generators by the shape of their boundary; a generator
// gets a role when its boundary is the one prescribed for that role in terms
// of earlier generators with roles.
std::vector<std::optional<Role>> classify(const Tower& tower);
PregroupoidBundle bundle_of(const Tower& tower);

// Boundary terms prescribed for a role; `inner` is the lower-dimensional
// generator of the same kind used by the codimension > 1 cases.
std::pair<Term, Term> role_boundary(const Tower& tower, const Role& r, GenId inner = -1);

std::shared_ptr<const Tower> stdlib(int N);

// Builders shared by the standard library and the tests.
TableOfDimensions uniform_sum(int i, int j, int width);
// tuple of cocone legs of `target` (1-based indices) out of a uniform sum
Term legs_tuple(const Tower& tower, const TableOfDimensions& target, const std::vector<int>& legs, int i, int j);

}  // namespace infgpd
