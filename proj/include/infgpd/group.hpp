#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace infgpd {

/// Finite group given by its multiplication table.
struct FiniteGroup {
  std::string name;
  std::vector<std::vector<int>> mul;  // mul[a][b] = a b
  int unit = 0;

  int order() const { return static_cast<int>(mul.size()); }
  int op(int a, int b) const { return mul[a][b]; }
  int inverse(int a) const;
  int element_order(int a) const;
  bool is_abelian() const;
  // first violated group law, if any
  std::optional<std::string> violation() const;
};

FiniteGroup trivial_group();
FiniteGroup cyclic(int n);
FiniteGroup dihedral(int n);  // order 2n
FiniteGroup symmetric(int n);
FiniteGroup alternating(int n);
FiniteGroup quaternion();
FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b);

// "1", "Z3", "S3", "A4", "D4", "Q8", "K4", "Z2xZ4"
FiniteGroup parse_group(std::string_view text);

bool is_homomorphism(const FiniteGroup& g, const FiniteGroup& h, const std::vector<int>& f);
std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& g, const FiniteGroup& h);
// catalogue name of the isomorphism class, or "order k group"
std::string recognize(const FiniteGroup& g);
// one group of each isomorphism type of order at most 8
std::vector<FiniteGroup> small_groups();

}  // namespace infgpd
