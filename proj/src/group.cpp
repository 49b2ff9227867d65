#include "infgpd/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "infgpd/globe.hpp"

namespace infgpd {

namespace {

FiniteGroup from_elements(std::string name, const std::vector<std::vector<int>>& elems,
                          const std::vector<int>& unit_elem, auto op) {
  std::map<std::vector<int>, int> index;
  for (int k = 0; k < static_cast<int>(elems.size()); ++k) index[elems[k]] = k;
  FiniteGroup g;
  g.name = std::move(name);
  int n = static_cast<int>(elems.size());
  g.mul.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.mul[a][b] = index.at(op(elems[a], elems[b]));
  g.unit = index.at(unit_elem);
  return g;
}

std::vector<std::vector<int>> permutations(int n, bool even_only) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    int inversions = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) inversions += p[a] > p[b];
    if (!even_only || inversions % 2 == 0) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// (p q)(x) = p(q(x))
std::vector<int> perm_compose(const std::vector<int>& p, const std::vector<int>& q) {
  std::vector<int> r(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) r[x] = p[q[x]];
  return r;
}

std::vector<int> order_profile(const FiniteGroup& g) {
  std::vector<int> p;
  for (int a = 0; a < g.order(); ++a) p.push_back(g.element_order(a));
  std::sort(p.begin(), p.end());
  return p;
}

}  // namespace

int FiniteGroup::inverse(int a) const {
  for (int b = 0; b < order(); ++b)
    if (mul[a][b] == unit) return b;
  throw Error("element without inverse");
}

int FiniteGroup::element_order(int a) const {
  int k = 1;
  for (int x = a; x != unit; x = mul[x][a]) ++k;
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order(); ++a)
    for (int b = 0; b < a; ++b)
      if (mul[a][b] != mul[b][a]) return false;
  return true;
}

std::optional<std::string> FiniteGroup::violation() const {
  int n = order();
  if (n == 0) return "empty group";
  for (const auto& row : mul)
    if (static_cast<int>(row.size()) != n) return "table is not square";
  for (const auto& row : mul)
    for (int x : row)
      if (x < 0 || x >= n) return "product out of range";
  for (int a = 0; a < n; ++a)
    if (mul[unit][a] != a || mul[a][unit] != a) return "unit law fails at " + std::to_string(a);
  for (int a = 0; a < n; ++a) {
    bool found = false;
    for (int b = 0; b < n; ++b) found = found || (mul[a][b] == unit && mul[b][a] == unit);
    if (!found) return "no inverse for " + std::to_string(a);
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mul[mul[a][b]][c] != mul[a][mul[b][c]])
          return "associativity fails at (" + std::to_string(a) + ", " + std::to_string(b) + ", " +
                 std::to_string(c) + ")";
  return std::nullopt;
}

FiniteGroup trivial_group() { return cyclic(1); }

FiniteGroup cyclic(int n) {
  if (n < 1) throw Error("cyclic group of order " + std::to_string(n));
  FiniteGroup g;
  g.name = n == 1 ? "1" : "Z" + std::to_string(n);
  g.mul.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.mul[a][b] = (a + b) % n;
  return g;
}

FiniteGroup dihedral(int n) {
  // elements (r, s): rotation r, reflection flag s; symmetries of the n-gon
  std::vector<std::vector<int>> elems;
  for (int s = 0; s < 2; ++s)
    for (int r = 0; r < n; ++r) elems.push_back({r, s});
  auto op = [n](const std::vector<int>& a, const std::vector<int>& b) {
    int r = a[1] ? (a[0] - b[0] + n) % n : (a[0] + b[0]) % n;
    return std::vector<int>{r, a[1] ^ b[1]};
  };
  return from_elements("D" + std::to_string(n), elems, {0, 0}, op);
}

FiniteGroup symmetric(int n) {
  auto elems = permutations(n, false);
  std::vector<int> id(n);
  std::iota(id.begin(), id.end(), 0);
  return from_elements("S" + std::to_string(n), elems, id, perm_compose);
}

FiniteGroup alternating(int n) {
  auto elems = permutations(n, true);
  std::vector<int> id(n);
  std::iota(id.begin(), id.end(), 0);
  return from_elements("A" + std::to_string(n), elems, id, perm_compose);
}

FiniteGroup quaternion() {
  // ±1, ±i, ±j, ±k as (sign, unit index)
  static const int table[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  std::vector<std::vector<int>> elems;
  for (int s = 0; s < 2; ++s)
    for (int u = 0; u < 4; ++u) elems.push_back({s, u});
  auto op = [](const std::vector<int>& a, const std::vector<int>& b) {
    return std::vector<int>{a[0] ^ b[0] ^ sign[a[1]][b[1]], table[a[1]][b[1]]};
  };
  return from_elements("Q8", elems, {0, 0}, op);
}

FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b) {
  FiniteGroup g;
  g.name = a.name + "x" + b.name;
  int m = b.order(), n = a.order() * m;
  g.mul.assign(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) g.mul[x][y] = a.op(x / m, y / m) * m + b.op(x % m, y % m);
  g.unit = a.unit * m + b.unit;
  return g;
}

FiniteGroup parse_group(std::string_view text) {
  std::string s(text);
  auto x = s.find('x');
  if (x != std::string::npos) {
    FiniteGroup g = product(parse_group(s.substr(0, x)), parse_group(s.substr(x + 1)));
    g.name = s;
    return g;
  }
  if (s == "1") return trivial_group();
  if (s == "Q8") return quaternion();
  if (s == "K4" || s == "V4") {
    FiniteGroup g = product(cyclic(2), cyclic(2));
    g.name = s;
    return g;
  }
  if (s.size() < 2) throw Error("unknown group '" + s + "'");
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(s.substr(1), &used);
    if (used != s.size() - 1) throw Error("");
  } catch (...) {
    throw Error("unknown group '" + s + "'");
  }
  if (n < 1) throw Error("unknown group '" + s + "'");
  switch (s[0]) {
    case 'Z':
    case 'C':
      return cyclic(n);
    case 'S':
      if (n <= 5) return symmetric(n);
      break;
    case 'A':
      if (n <= 5) return alternating(n);
      break;
    case 'D':
      if (n >= 2) return dihedral(n);
      break;
  }
  throw Error("unknown group '" + s + "'");
}

bool is_homomorphism(const FiniteGroup& g, const FiniteGroup& h, const std::vector<int>& f) {
  if (static_cast<int>(f.size()) != g.order()) return false;
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      if (f[g.op(a, b)] != h.op(f[a], f[b])) return false;
  return true;
}

std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& g, const FiniteGroup& h) {
  if (g.order() != h.order() || g.is_abelian() != h.is_abelian() || order_profile(g) != order_profile(h))
    return std::nullopt;
  int n = g.order();
  // greedy generating set of g
  std::vector<int> gens;
  std::vector<bool> in_sub(n, false);
  in_sub[g.unit] = true;
  auto close = [&] {
    bool grew = true;
    while (grew) {
      grew = false;
      for (int a = 0; a < n; ++a)
        if (in_sub[a])
          for (int s : gens)
            if (!in_sub[g.op(a, s)]) in_sub[g.op(a, s)] = grew = true;
    }
  };
  for (int a = 0; a < n; ++a)
    if (!in_sub[a]) {
      gens.push_back(a);
      close();
    }
  std::vector<int> images(gens.size());
  std::vector<int> f;
  auto extend = [&]() -> bool {
    f.assign(n, -1);
    f[g.unit] = h.unit;
    std::vector<int> queue{g.unit};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      int a = queue[q];
      for (std::size_t k = 0; k < gens.size(); ++k) {
        int b = g.op(a, gens[k]);
        int fb = h.op(f[a], images[k]);
        if (f[b] == -1) {
          f[b] = fb;
          queue.push_back(b);
        } else if (f[b] != fb) {
          return false;
        }
      }
    }
    std::vector<bool> hit(n, false);
    for (int x : f) {
      if (hit[x]) return false;
      hit[x] = true;
    }
    return is_homomorphism(g, h, f);
  };
  auto search = [&](auto& self, std::size_t k) -> bool {
    if (k == gens.size()) return extend();
    for (int y = 0; y < n; ++y) {
      if (h.element_order(y) != g.element_order(gens[k])) continue;
      images[k] = y;
      if (self(self, k + 1)) return true;
    }
    return false;
  };
  if (search(search, 0)) return f;
  return std::nullopt;
}

std::vector<FiniteGroup> small_groups() {
  std::vector<FiniteGroup> out;
  for (const char* s : {"1", "Z2", "Z3", "Z4", "K4", "Z5", "Z6", "S3", "Z7", "Z8", "Z2xZ4", "Z2xZ2xZ2", "D4", "Q8"})
    out.push_back(parse_group(s));
  return out;
}

std::string recognize(const FiniteGroup& g) {
  static const std::vector<FiniteGroup> catalogue = [] {
    std::vector<FiniteGroup> c = small_groups();
    for (int n = 9; n <= 24; ++n) c.push_back(cyclic(n));
    for (const char* s : {"Z3xZ3", "D5", "Z2xZ6", "D6", "A4", "S4", "Z2xZ2xZ3", "Z2xZ8", "Z4xZ4", "Z2xZ2xZ4", "D8"})
      c.push_back(parse_group(s));
    return c;
  }();
  for (const auto& c : catalogue)
    if (c.order() == g.order() && find_isomorphism(g, c)) return c.name;
  return "order " + std::to_string(g.order()) + " group";
}

}  // namespace infgpd
