#include "infgpd/gpdmodel.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

namespace infgpd {

namespace {

int find_root(std::vector<int>& parent, int a) {
  while (parent[a] != a) a = parent[a] = parent[parent[a]];
  return a;
}

// classes numbered by smallest member
std::vector<int> number_classes(std::vector<int>& parent) {
  std::vector<int> out(parent.size()), id(parent.size(), -1);
  int next = 0;
  for (std::size_t v = 0; v < parent.size(); ++v) {
    int r = find_root(parent, static_cast<int>(v));
    if (id[r] == -1) id[r] = next++;
    out[v] = id[r];
  }
  return out;
}

int class_count(const std::vector<int>& classes) {
  return classes.empty() ? 0 : *std::max_element(classes.begin(), classes.end()) + 1;
}

}  // namespace

int FiniteGroupoid::compose(int g, int f) const {
  int h = comp.at(g).at(f);
  if (h < 0) throw Error("arrows " + std::to_string(g) + " and " + std::to_string(f) + " are not composable");
  return h;
}

std::vector<int> FiniteGroupoid::hom(int x, int y) const {
  std::vector<int> out;
  for (int a = 0; a < arrows(); ++a)
    if (src[a] == x && tgt[a] == y) out.push_back(a);
  return out;
}

FiniteGroup FiniteGroupoid::vertex_group(int x) const {
  std::vector<int> elems = hom(x, x);
  std::map<int, int> index;
  for (std::size_t k = 0; k < elems.size(); ++k) index[elems[k]] = static_cast<int>(k);
  FiniteGroup g;
  g.mul.assign(elems.size(), std::vector<int>(elems.size()));
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b) g.mul[a][b] = index.at(compose(elems[a], elems[b]));
  g.unit = index.at(identity[x]);
  g.name = recognize(g);
  return g;
}

std::vector<int> FiniteGroupoid::components() const {
  std::vector<int> parent(objects);
  std::iota(parent.begin(), parent.end(), 0);
  for (int a = 0; a < arrows(); ++a) parent[find_root(parent, src[a])] = find_root(parent, tgt[a]);
  return number_classes(parent);
}

int FiniteGroupoid::component_count() const { return class_count(components()); }

std::optional<std::string> FiniteGroupoid::violation() const {
  int n = arrows();
  if (objects < 0) return "negative object count";
  if (static_cast<int>(tgt.size()) != n || static_cast<int>(inverse.size()) != n ||
      static_cast<int>(comp.size()) != n || static_cast<int>(identity.size()) != objects)
    return std::string("table sizes do not match the arrow and object counts");
  for (int a = 0; a < n; ++a) {
    if (src[a] < 0 || src[a] >= objects || tgt[a] < 0 || tgt[a] >= objects)
      return "arrow " + std::to_string(a) + " has an endpoint out of range";
    if (static_cast<int>(comp[a].size()) != n) return "composition row " + std::to_string(a) + " has the wrong length";
  }
  for (int g = 0; g < n; ++g)
    for (int f = 0; f < n; ++f) {
      int h = comp[g][f];
      if ((src[g] == tgt[f]) != (h >= 0))
        return "composite of " + std::to_string(g) + " after " + std::to_string(f) +
               (h >= 0 ? " is defined but they are not composable" : " is missing");
      if (h >= n) return "composite of " + std::to_string(g) + " after " + std::to_string(f) + " is out of range";
      if (h >= 0 && (src[h] != src[f] || tgt[h] != tgt[g]))
        return "composite of " + std::to_string(g) + " after " + std::to_string(f) + " has the wrong endpoints";
    }
  for (int x = 0; x < objects; ++x) {
    int e = identity[x];
    if (e < 0 || e >= n || src[e] != x || tgt[e] != x) return "identity of object " + std::to_string(x) + " is not a loop at it";
    for (int f = 0; f < n; ++f) {
      if (tgt[f] == x && comp[e][f] != f) return "left unit law fails for arrow " + std::to_string(f);
      if (src[f] == x && comp[f][e] != f) return "right unit law fails for arrow " + std::to_string(f);
    }
  }
  for (int h = 0; h < n; ++h)
    for (int g = 0; g < n; ++g) {
      if (src[h] != tgt[g]) continue;
      for (int f = 0; f < n; ++f)
        if (src[g] == tgt[f] && comp[comp[h][g]][f] != comp[h][comp[g][f]])
          return "associativity fails at (" + std::to_string(h) + ", " + std::to_string(g) + ", " + std::to_string(f) + ")";
    }
  for (int f = 0; f < n; ++f) {
    int g = inverse[f];
    if (g < 0 || g >= n || src[g] != tgt[f] || tgt[g] != src[f]) return "inverse of " + std::to_string(f) + " has the wrong endpoints";
    if (comp[g][f] != identity[src[f]] || comp[f][g] != identity[tgt[f]]) return "inverse law fails for arrow " + std::to_string(f);
  }
  return std::nullopt;
}

FiniteGroupoid connected_groupoid(int k, const FiniteGroup& g) {
  // arrow (x, y, a) at index (x k + y) |G| + a
  FiniteGroupoid x;
  int m = g.order();
  x.objects = k;
  int n = k * k * m;
  x.src.resize(n);
  x.tgt.resize(n);
  x.inverse.resize(n);
  x.comp.assign(n, std::vector<int>(n, -1));
  auto id = [&](int s, int t, int a) { return (s * k + t) * m + a; };
  for (int s = 0; s < k; ++s)
    for (int t = 0; t < k; ++t)
      for (int a = 0; a < m; ++a) {
        x.src[id(s, t, a)] = s;
        x.tgt[id(s, t, a)] = t;
        x.inverse[id(s, t, a)] = id(t, s, g.inverse(a));
        for (int u = 0; u < k; ++u)
          for (int b = 0; b < m; ++b) x.comp[id(t, u, b)][id(s, t, a)] = id(s, u, g.op(b, a));
      }
  for (int s = 0; s < k; ++s) x.identity.push_back(id(s, s, g.unit));
  x.name = k == 1 ? g.name : (g.order() == 1 ? "codiscrete" + std::to_string(k) : g.name + "xcodiscrete" + std::to_string(k));
  return x;
}

FiniteGroupoid point_groupoid() {
  FiniteGroupoid x = connected_groupoid(1, trivial_group());
  x.name = "point";
  return x;
}

FiniteGroupoid codiscrete_groupoid(int k) {
  FiniteGroupoid x = connected_groupoid(k, trivial_group());
  x.name = "codiscrete" + std::to_string(k);
  return x;
}

FiniteGroupoid group_groupoid(const FiniteGroup& g) { return connected_groupoid(1, g); }

FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  FiniteGroupoid x;
  int na = a.arrows(), nb = b.arrows();
  x.name = a.name.empty() ? b.name : (b.name.empty() ? a.name : a.name + "+" + b.name);
  x.objects = a.objects + b.objects;
  x.comp.assign(na + nb, std::vector<int>(na + nb, -1));
  for (int f = 0; f < na; ++f) {
    x.src.push_back(a.src[f]);
    x.tgt.push_back(a.tgt[f]);
    x.inverse.push_back(a.inverse[f]);
    for (int g = 0; g < na; ++g) x.comp[g][f] = a.comp[g][f];
  }
  for (int f = 0; f < nb; ++f) {
    x.src.push_back(b.src[f] + a.objects);
    x.tgt.push_back(b.tgt[f] + a.objects);
    x.inverse.push_back(b.inverse[f] + na);
    for (int g = 0; g < nb; ++g) x.comp[g + na][f + na] = b.comp[g][f] < 0 ? -1 : b.comp[g][f] + na;
  }
  x.identity = a.identity;
  for (int e : b.identity) x.identity.push_back(e + na);
  return x;
}

FiniteGroupoid discrete_groupoid(int k) {
  FiniteGroupoid x;
  for (int i = 0; i < k; ++i) x = disjoint_union(x, point_groupoid());
  x.name = "discrete" + std::to_string(k);
  return x;
}

FiniteGroupoid groupoid_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("groupoid file is not JSON: ") + e.what());
  }
  FiniteGroupoid x;
  try {
    x.name = j.value("name", "");
    x.objects = j.at("objects").get<int>();
    for (const auto& a : j.at("arrows")) {
      x.src.push_back(a.at("src").get<int>());
      x.tgt.push_back(a.at("tgt").get<int>());
    }
    int n = x.arrows();
    x.comp.assign(n, std::vector<int>(n, -1));
    for (const auto& row : j.at("compose")) {
      int g = row.at(0).get<int>(), f = row.at(1).get<int>(), h = row.at(2).get<int>();
      if (g < 0 || g >= n || f < 0 || f >= n) throw Error("compose entry names an unknown arrow");
      x.comp[g][f] = h;
    }
    x.inverse = j.at("inverse").get<std::vector<int>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed groupoid: ") + e.what());
  }
  // identities are the idempotent loops
  x.identity.assign(x.objects, -1);
  for (int a = 0; a < x.arrows(); ++a)
    if (x.src[a] == x.tgt[a] && x.src[a] >= 0 && x.src[a] < x.objects && x.comp[a][a] == a) x.identity[x.src[a]] = a;
  if (auto v = x.violation()) throw Error("not a groupoid: " + *v);
  return x;
}

std::string groupoid_to_json(const FiniteGroupoid& x) {
  nlohmann::json j;
  if (!x.name.empty()) j["name"] = x.name;
  j["objects"] = x.objects;
  j["arrows"] = nlohmann::json::array();
  for (int a = 0; a < x.arrows(); ++a) j["arrows"].push_back({{"src", x.src[a]}, {"tgt", x.tgt[a]}});
  j["compose"] = nlohmann::json::array();
  for (int g = 0; g < x.arrows(); ++g)
    for (int f = 0; f < x.arrows(); ++f)
      if (x.comp[g][f] >= 0) j["compose"].push_back({g, f, x.comp[g][f]});
  j["inverse"] = x.inverse;
  return j.dump();
}

std::optional<std::string> GroupoidFunctor::violation() const {
  const FiniteGroupoid& a = *source;
  const FiniteGroupoid& b = *target;
  if (static_cast<int>(on_objects.size()) != a.objects || static_cast<int>(on_arrows.size()) != a.arrows())
    return std::string("functor tables have the wrong size");
  for (int x : on_objects)
    if (x < 0 || x >= b.objects) return std::string("object image out of range");
  for (int f = 0; f < a.arrows(); ++f) {
    int g = on_arrows[f];
    if (g < 0 || g >= b.arrows()) return "image of arrow " + std::to_string(f) + " out of range";
    if (b.src[g] != on_objects[a.src[f]] || b.tgt[g] != on_objects[a.tgt[f]])
      return "image of arrow " + std::to_string(f) + " has the wrong endpoints";
  }
  for (int x = 0; x < a.objects; ++x)
    if (on_arrows[a.identity[x]] != b.identity[on_objects[x]]) return "identity of " + std::to_string(x) + " is not preserved";
  for (int g = 0; g < a.arrows(); ++g)
    for (int f = 0; f < a.arrows(); ++f)
      if (a.comp[g][f] >= 0 && on_arrows[a.comp[g][f]] != b.compose(on_arrows[g], on_arrows[f]))
        return "composite of " + std::to_string(g) + " after " + std::to_string(f) + " is not preserved";
  return std::nullopt;
}

GroupoidFunctor identity_functor(const FiniteGroupoid& x) {
  GroupoidFunctor f{&x, &x, std::vector<int>(x.objects), std::vector<int>(x.arrows())};
  std::iota(f.on_objects.begin(), f.on_objects.end(), 0);
  std::iota(f.on_arrows.begin(), f.on_arrows.end(), 0);
  return f;
}

bool injective_on_objects(const GroupoidFunctor& f) {
  std::set<int> seen(f.on_objects.begin(), f.on_objects.end());
  return seen.size() == f.on_objects.size();
}

bool fully_faithful(const GroupoidFunctor& f) {
  const FiniteGroupoid& a = *f.source;
  for (int x = 0; x < a.objects; ++x)
    for (int y = 0; y < a.objects; ++y) {
      std::set<int> image;
      std::vector<int> h = a.hom(x, y);
      for (int g : h) image.insert(f.on_arrows[g]);
      if (image.size() != h.size() || image.size() != f.target->hom(f.on_objects[x], f.on_objects[y]).size()) return false;
    }
  return true;
}

bool essentially_surjective(const GroupoidFunctor& f) {
  std::vector<int> comp = f.target->components();
  std::set<int> hit;
  for (int x : f.on_objects) hit.insert(comp[x]);
  return static_cast<int>(hit.size()) == class_count(comp);
}

bool is_equivalence(const GroupoidFunctor& f) { return fully_faithful(f) && essentially_surjective(f); }

std::vector<GroupoidFunctor> all_functors(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  std::vector<GroupoidFunctor> out;
  GroupoidFunctor f{&a, &b, std::vector<int>(a.objects, 0), std::vector<int>(a.arrows(), -1)};
  std::function<void(int)> arrows = [&](int k) {
    if (k == a.arrows()) {
      if (!f.violation()) out.push_back(f);
      return;
    }
    for (int g : b.hom(f.on_objects[a.src[k]], f.on_objects[a.tgt[k]])) {
      f.on_arrows[k] = g;
      bool ok = true;
      for (int j = 0; j <= k && ok; ++j) {
        int c1 = a.comp[k][j], c2 = a.comp[j][k];
        if (c1 >= 0 && c1 <= k && f.on_arrows[c1] != b.compose(g, f.on_arrows[j])) ok = false;
        if (c2 >= 0 && c2 <= k && f.on_arrows[c2] != b.compose(f.on_arrows[j], g)) ok = false;
      }
      if (ok) arrows(k + 1);
    }
    f.on_arrows[k] = -1;
  };
  std::function<void(int)> objects = [&](int k) {
    if (k == a.objects) return arrows(0);
    for (int y = 0; y < b.objects; ++y) {
      f.on_objects[k] = y;
      objects(k + 1);
    }
  };
  objects(0);
  return out;
}

int Graph::components() const {
  std::vector<int> parent(vertices);
  std::iota(parent.begin(), parent.end(), 0);
  for (auto [s, t] : edges) parent[find_root(parent, s)] = find_root(parent, t);
  return class_count(number_classes(parent));
}

std::optional<std::string> PresentedFunctor::violation() const {
  if (static_cast<int>(on_vertices.size()) != source->vertices || on_edges.size() != source->edges.size())
    return std::string("functor tables have the wrong size");
  for (std::size_t e = 0; e < on_edges.size(); ++e) {
    int a = on_edges[e];
    if (a < 0 || a >= target->arrows()) return "image of edge " + std::to_string(e) + " out of range";
    if (target->src[a] != on_vertices[source->edges[e].first] || target->tgt[a] != on_vertices[source->edges[e].second])
      return "image of edge " + std::to_string(e) + " has the wrong endpoints";
  }
  return std::nullopt;
}

GraphPushout pushout(const Graph& a, const Graph& b, const Graph& c, const std::vector<int>& av,
                     const std::vector<int>& ae, const std::vector<int>& bv, const std::vector<int>& be) {
  int nv = b.vertices + c.vertices;
  int ne = static_cast<int>(b.edges.size() + c.edges.size());
  std::vector<int> vp(nv), ep(ne);
  std::iota(vp.begin(), vp.end(), 0);
  std::iota(ep.begin(), ep.end(), 0);
  for (int v = 0; v < a.vertices; ++v) vp[find_root(vp, av[v])] = find_root(vp, b.vertices + bv[v]);
  for (std::size_t e = 0; e < a.edges.size(); ++e)
    ep[find_root(ep, ae[e])] = find_root(ep, static_cast<int>(b.edges.size()) + be[e]);
  std::vector<int> vclass = number_classes(vp), eclass = number_classes(ep);
  GraphPushout r;
  r.graph.vertices = class_count(vclass);
  r.graph.edges.assign(class_count(eclass), {-1, -1});
  auto add_edges = [&](const Graph& g, int voff, int eoff) {
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      std::pair<int, int> ends{vclass[voff + g.edges[e].first], vclass[voff + g.edges[e].second]};
      auto& slot = r.graph.edges[eclass[eoff + e]];
      if (slot.first >= 0 && slot != ends) throw Error("pushout identifies edges with different endpoints");
      slot = ends;
    }
  };
  add_edges(b, 0, 0);
  add_edges(c, b.vertices, static_cast<int>(b.edges.size()));
  for (int v = 0; v < b.vertices; ++v) r.left_vertices.push_back(vclass[v]);
  for (int v = 0; v < c.vertices; ++v) r.right_vertices.push_back(vclass[b.vertices + v]);
  for (std::size_t e = 0; e < b.edges.size(); ++e) r.left_edges.push_back(eclass[e]);
  for (std::size_t e = 0; e < c.edges.size(); ++e) r.right_edges.push_back(eclass[b.edges.size() + e]);
  return r;
}

namespace {

Graph disk_graph(int n) { return n == 0 ? Graph{1, {}} : Graph{2, {{0, 1}}}; }

// graph map D(j) -> D(m) of the iterated face on side s
std::pair<std::vector<int>, std::vector<int>> face_map(int j, int m, Side s) {
  if (j == 0) return {{m == 0 ? 0 : (s == Side::source ? 0 : 1)}, {}};
  return {{0, 1}, {0}};
}

GroupoidFunctor compose_functors(const GroupoidFunctor& g, const GroupoidFunctor& f) {
  GroupoidFunctor h{f.source, g.target, {}, {}};
  for (int x : f.on_objects) h.on_objects.push_back(g.on_objects[x]);
  for (int a : f.on_arrows) h.on_arrows.push_back(g.on_arrows[a]);
  return h;
}

bool same_functor(const GroupoidFunctor& a, const GroupoidFunctor& b) {
  return a.on_objects == b.on_objects && a.on_arrows == b.on_arrows;
}

}  // namespace

std::shared_ptr<const GlobeDiagram> globe_diagram(int n) {
  if (n < 1) throw Error("the globe diagram needs N >= 1");
  auto out = std::make_shared<GlobeDiagram>();
  GlobeDiagram& d = *out;
  d.n = n;
  for (int k = 0; k <= n; ++k) {
    d.disk.push_back(k == 0 ? point_groupoid() : codiscrete_groupoid(2));
    d.disk.back().name = "D" + std::to_string(k);
    d.disk_graph.push_back(disk_graph(k));
  }
  d.sphere.push_back(Graph{0, {}});
  d.boundary_inclusion.emplace_back();
  d.collapse.emplace_back();
  d.sigma.emplace_back();
  d.tau.emplace_back();
  // graph maps i_k: S(k-1) -> D(k)
  std::vector<std::pair<std::vector<int>, std::vector<int>>> inclusion(1);
  for (int k = 1; k <= n; ++k) {
    const FiniteGroupoid& dk = d.disk[k];
    const FiniteGroupoid& dl = d.disk[k - 1];
    GroupoidFunctor s{&dl, &dk, {}, {}}, t{&dl, &dk, {}, {}};
    if (k == 1) {
      s = {&dl, &dk, {0}, {dk.identity[0]}};
      t = {&dl, &dk, {1}, {dk.identity[1]}};
    } else {
      s = identity_functor(dl);
      s.target = &dk;
      t = s;
    }
    d.sigma.push_back(s);
    d.tau.push_back(t);
    GroupoidFunctor p{&dk, &dl, std::vector<int>(dk.objects), std::vector<int>(dk.arrows())};
    if (k > 1) {
      std::iota(p.on_objects.begin(), p.on_objects.end(), 0);
      std::iota(p.on_arrows.begin(), p.on_arrows.end(), 0);
    }
    d.collapse.push_back(p);
    // S(k-1) is D(k-1) glued to itself along S(k-2); i_k restricts to sigma and tau
    const Graph& prev = d.sphere[k - 1];
    const auto& inc = inclusion[k - 1];
    Graph dg = d.disk_graph[k - 1];
    GraphPushout s_k = pushout(prev, dg, dg, inc.first, inc.second, inc.first, inc.second);
    std::vector<int> iv(s_k.graph.vertices, -1), ie(s_k.graph.edges.size(), -1);
    auto [sv, se] = face_map(k - 1, k, Side::source);
    auto [tv, te] = face_map(k - 1, k, Side::target);
    for (int v = 0; v < dg.vertices; ++v) {
      iv[s_k.left_vertices[v]] = sv[v];
      iv[s_k.right_vertices[v]] = tv[v];
    }
    for (std::size_t e = 0; e < dg.edges.size(); ++e) {
      ie[s_k.left_edges[e]] = se[e];
      ie[s_k.right_edges[e]] = te[e];
    }
    inclusion.push_back({iv, ie});
    d.sphere.push_back(s_k.graph);
    PresentedFunctor i{nullptr, &dk, iv, {}};
    for (std::size_t e = 0; e < ie.size(); ++e) i.on_edges.push_back(dk.hom(0, 1).at(0));
    d.boundary_inclusion.push_back(i);
  }
  for (int k = 1; k <= n; ++k) d.boundary_inclusion[k].source = &d.sphere[k];
  return out;
}

std::optional<std::string> GlobeDiagram::violation() const {
  FiniteGroupoid pt = point_groupoid();
  for (int k = 0; k <= n; ++k) {
    if (auto v = disk[k].violation()) return "D" + std::to_string(k) + ": " + *v;
    GroupoidFunctor to_point{&disk[k], &pt, std::vector<int>(disk[k].objects, 0), std::vector<int>(disk[k].arrows(), 0)};
    if (!is_equivalence(to_point)) return "D" + std::to_string(k) + " is not weakly contractible";
  }
  for (int k = 1; k <= n; ++k) {
    std::string at = std::to_string(k);
    for (const GroupoidFunctor* f : {&sigma[k], &tau[k], &collapse[k]})
      if (auto v = f->violation()) return "structure map at " + at + ": " + *v;
    if (auto v = boundary_inclusion[k].violation()) return "i_" + at + ": " + *v;
    std::set<int> image(boundary_inclusion[k].on_vertices.begin(), boundary_inclusion[k].on_vertices.end());
    if (image.size() != boundary_inclusion[k].on_vertices.size()) return "i_" + at + " is not a cofibration";
    if (!is_equivalence(collapse[k])) return "p_" + at + " is not a weak equivalence";
    GroupoidFunctor id = identity_functor(disk[k - 1]);
    if (!same_functor(compose_functors(collapse[k], sigma[k]), id) || !same_functor(compose_functors(collapse[k], tau[k]), id))
      return "p_" + at + " does not retract the two faces";
    if (k >= 2) {
      for (const GroupoidFunctor* x : {&sigma[k - 1], &tau[k - 1]})
        if (!same_functor(compose_functors(sigma[k], *x), compose_functors(tau[k], *x)))
          return "coglobular relation fails at " + at;
    }
  }
  return std::nullopt;
}

SumGraph sum_graph(const TableOfDimensions& t) {
  SumGraph s;
  int m0 = t.upper()[0];
  s.graph = disk_graph(m0);
  s.leg_source.push_back(0);
  s.leg_target.push_back(m0 == 0 ? 0 : 1);
  s.leg_edge.push_back(m0 == 0 ? -1 : 0);
  for (int k = 1; k < t.width(); ++k) {
    int j = t.lower()[k - 1], m = t.upper()[k];
    Graph dj = disk_graph(j), dm = disk_graph(m);
    // D(j) into the sum through leg k-1's source face, into D(m) through its target face
    auto [fv, fe] = face_map(j, t.upper()[k - 1], Side::source);
    auto [gv, ge] = face_map(j, m, Side::target);
    std::vector<int> av, ae;
    for (int v : fv) av.push_back(v == 0 ? s.leg_source[k - 1] : s.leg_target[k - 1]);
    for (int e : fe) ae.push_back(s.leg_edge[k - 1] + e);
    GraphPushout p = pushout(dj, s.graph, dm, av, ae, gv, ge);
    for (auto* v : {&s.leg_source, &s.leg_target})
      for (int& x : *v) x = p.left_vertices[x];
    for (int& e : s.leg_edge)
      if (e >= 0) e = p.left_edges[e];
    s.leg_source.push_back(p.right_vertices[0]);
    s.leg_target.push_back(p.right_vertices[m == 0 ? 0 : 1]);
    s.leg_edge.push_back(m == 0 ? -1 : p.right_edges[0]);
    s.graph = p.graph;
  }
  return s;
}

namespace {

struct SumData {
  SumGraph g;
  std::vector<int> vertex_of_zero_cell;  // realization 0-cell -> vertex
};

const SumData& sum_data(const TableOfDimensions& t) {
  static std::mutex mu;
  static std::map<TableOfDimensions, SumData> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(t);
  if (it != cache.end()) return it->second;
  SumData d;
  d.g = sum_graph(t);
  const SumRealization& r = realization(t);
  d.vertex_of_zero_cell.assign(r.carrier().count(0), -1);
  for (int k = 0; k < t.width(); ++k)
    for (Side s : {Side::source, Side::target}) {
      int v = s == Side::source ? d.g.leg_source[k] : d.g.leg_target[k];
      int& slot = d.vertex_of_zero_cell[r.leg_cell(k, 0, s)];
      if (slot >= 0 && slot != v) throw Error("sum graph disagrees with the realization of " + t.str());
      slot = v;
    }
  if (static_cast<int>(d.vertex_of_zero_cell.size()) != d.g.graph.vertices)
    throw Error("sum graph of " + t.str() + " has a different number of objects than the realization");
  if (!d.g.graph.contractible()) throw Error("globular sum " + t.str() + " is not thin and contractible");
  return cache.emplace(t, std::move(d)).first->second;
}

}  // namespace

ObjectPair lifting_oracle(const TableOfDimensions& s, int n, ObjectPair f, ObjectPair g) {
  const SumData& d = sum_data(s);
  int v = d.g.graph.vertices;
  for (int x : {f.p, f.q, g.p, g.q})
    if (x < 0 || x >= v) throw Error("functor into " + s.str() + " names an unknown object");
  if (n == 0) {
    if (f.p != f.q || g.p != g.q) throw Error("functors from D0 pick a single object");
    return {f.p, g.p};
  }
  // parallel functors out of D(n), n >= 1, agree on objects; thinness makes them equal
  if (!(f == g)) throw Error("pair of functors from D" + std::to_string(n) + " into " + s.str() + " is not parallel");
  return f;
}

ObjectPair interpret(const TowerInterpretation& k, const NodePtr& n) {
  const TableOfDimensions& t = n->target();
  const SumData& d = sum_data(t);
  if (n->is_cell()) {
    const GlobularSet& x = realization(t).carrier();
    int c = n->cell(), dim = n->dim();
    int a = dim == 0 ? c : x.iterated_face(Side::source, dim, 0, c);
    int b = dim == 0 ? c : x.iterated_face(Side::target, dim, 0, c);
    return {d.vertex_of_zero_cell[a], d.vertex_of_zero_cell[b]};
  }
  const LiftGenerator& g = k.tower->generator(n->gen());
  const SumData& inner = sum_data(*g.target);
  std::vector<ObjectPair> args;
  for (const NodePtr& a : n->args()) args.push_back(interpret(k, a));
  auto image = [&](int v) {
    for (int leg = 0; leg < g.target->width(); ++leg) {
      if (inner.g.leg_source[leg] == v) return args[leg].p;
      if (inner.g.leg_target[leg] == v) return args[leg].q;
    }
    throw Error("object of a sum outside every leg");
  };
  ObjectPair h = k.image.at(n->gen());
  return {image(h.p), image(h.q)};
}

TowerInterpretation interpret_tower(std::shared_ptr<const Tower> tower) {
  TowerInterpretation k;
  k.tower = std::move(tower);
  for (GenId h = 0; h < k.tower->size(); ++h) {
    const LiftGenerator& g = k.tower->generator(h);
    int n = g.dim - 1;
    ObjectPair f = interpret(k, g.src), t = interpret(k, g.tgt);
    ObjectPair r = lifting_oracle(*g.target, n, f, t);
    // the filler restricts to the pair along sigma and tau
    ObjectPair rs = g.dim == 1 ? ObjectPair{r.p, r.p} : r;
    ObjectPair rt = g.dim == 1 ? ObjectPair{r.q, r.q} : r;
    if (!(rs == f) || !(rt == t)) throw Error("interpretation of " + g.name + " does not restrict to its boundary");
    k.image.push_back(r);
  }
  return k;
}

namespace {

// arrow of X from the image of p to the image of q, along the tree of a thin sum
int path_arrow(const FiniteGroupoid& x, const Graph& g, const std::vector<int>& on_vertices,
               const std::vector<int>& on_edges, int p, int q) {
  std::vector<int> via(g.vertices, -2), arrow(g.vertices, -1);
  std::deque<int> queue{p};
  via[p] = -1;
  arrow[p] = x.identity[on_vertices[p]];
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      auto [s, t] = g.edges[e];
      int a = on_edges[e];
      if (s == v && via[t] == -2) {
        via[t] = static_cast<int>(e);
        arrow[t] = x.compose(a, arrow[v]);
        queue.push_back(t);
      } else if (t == v && via[s] == -2) {
        via[s] = static_cast<int>(e);
        arrow[s] = x.compose(x.inverse[a], arrow[v]);
        queue.push_back(s);
      }
    }
  }
  if (via[q] == -2) throw Error("no path between objects of a globular sum");
  return arrow[q];
}

// object images and edge images of the functor F(S_h) -> X given by input cells
int apply_generator(const FiniteGroupoid& x, const TowerInterpretation& k, GenId h, const Cells& in) {
  const LiftGenerator& g = k.tower->generator(h);
  const SumData& d = sum_data(*g.target);
  std::vector<int> on_vertices(d.g.graph.vertices, -1), on_edges(d.g.graph.edges.size(), -1);
  for (int leg = 0; leg < g.target->width(); ++leg) {
    bool object = g.target->upper()[leg] == 0;
    int c = in.at(leg);
    int s = object ? c : x.src[c], t = object ? c : x.tgt[c];
    for (auto [v, want] : {std::pair{d.g.leg_source[leg], s}, std::pair{d.g.leg_target[leg], t}}) {
      if (on_vertices[v] >= 0 && on_vertices[v] != want) throw Error("input of " + g.name + " is not a functor");
      on_vertices[v] = want;
    }
    if (!object) {
      int& e = on_edges[d.g.leg_edge[leg]];
      if (e >= 0 && e != c) throw Error("input of " + g.name + " is not a functor");
      e = c;
    }
  }
  ObjectPair r = k.image.at(h);
  return path_arrow(x, d.g.graph, on_vertices, on_edges, r.p, r.q);
}

}  // namespace

Model fundamental(const FiniteGroupoid& x, const TowerInterpretation& k) {
  if (auto v = x.violation()) throw Error("not a groupoid: " + *v);
  GlobularSet carrier({x.objects, x.arrows()}, {{}, x.src}, {{}, x.tgt}, true);
  Model m(k.tower, carrier);
  auto shared = std::make_shared<FiniteGroupoid>(x);
  // towers extended later are interpreted on first use
  auto interp = std::make_shared<TowerInterpretation>(k);
  m.set_filler([shared, interp](const Model& model, GenId h, const Cells& in) {
    if (interp->tower != model.tower_ptr()) *interp = interpret_tower(model.tower_ptr());
    return apply_generator(*shared, *interp, h, in);
  });
  m.fill();
  return m;
}

ModelMorphism fundamental_map(const GroupoidFunctor& f, const Model& source, const Model& target) {
  return ModelMorphism{&source, &target, {f.on_objects, f.on_arrows}};
}

std::shared_ptr<const PathObject> path_object(const FiniteGroupoid& x) {
  auto out = std::make_shared<PathObject>();
  PathObject& po = *out;
  FiniteGroupoid& p = po.p;
  p.name = "P(" + x.name + ")";
  p.objects = x.arrows();
  // morphism (a, s, t): a -> t a s^-1
  std::map<std::tuple<int, int, int>, int> index;
  std::vector<std::tuple<int, int, int>> squares;
  for (int a = 0; a < x.arrows(); ++a)
    for (int s = 0; s < x.arrows(); ++s) {
      if (x.src[s] != x.src[a]) continue;
      for (int t = 0; t < x.arrows(); ++t) {
        if (x.src[t] != x.tgt[a]) continue;
        index[{a, s, t}] = static_cast<int>(squares.size());
        squares.push_back({a, s, t});
      }
    }
  int n = static_cast<int>(squares.size());
  p.comp.assign(n, std::vector<int>(n, -1));
  for (auto [a, s, t] : squares) {
    p.src.push_back(a);
    p.tgt.push_back(x.compose(x.compose(t, a), x.inverse[s]));
  }
  for (int g = 0; g < n; ++g) {
    auto [b, s2, t2] = squares[g];
    for (int f = 0; f < n; ++f) {
      auto [a, s, t] = squares[f];
      if (p.tgt[f] == b) p.comp[g][f] = index.at({a, x.compose(s2, s), x.compose(t2, t)});
    }
  }
  for (auto [a, s, t] : squares) p.inverse.push_back(index.at({x.compose(x.compose(t, a), x.inverse[s]), x.inverse[s], x.inverse[t]}));
  for (int a = 0; a < x.arrows(); ++a) p.identity.push_back(index.at({a, x.identity[x.src[a]], x.identity[x.tgt[a]]}));
  if (auto v = p.violation()) throw Error("path object is not a groupoid: " + *v);
  po.r = {&x, &po.p, {}, {}};
  for (int o = 0; o < x.objects; ++o) po.r.on_objects.push_back(x.identity[o]);
  for (int f = 0; f < x.arrows(); ++f) po.r.on_arrows.push_back(index.at({x.identity[x.src[f]], f, f}));
  po.p0 = {&po.p, &x, {}, {}};
  po.p1 = {&po.p, &x, {}, {}};
  for (int a = 0; a < x.arrows(); ++a) {
    po.p0.on_objects.push_back(x.src[a]);
    po.p1.on_objects.push_back(x.tgt[a]);
  }
  for (auto [a, s, t] : squares) {
    po.p0.on_arrows.push_back(s);
    po.p1.on_arrows.push_back(t);
  }
  return out;
}

bool is_isofibration(const PathObject& po) {
  const FiniteGroupoid& x = *po.p0.target;
  // every pair of arrows out of (p0 a, p1 a) lifts to an arrow out of a
  for (int a = 0; a < po.p.objects; ++a)
    for (int s = 0; s < x.arrows(); ++s)
      for (int t = 0; t < x.arrows(); ++t) {
        if (x.src[s] != po.p0.on_objects[a] || x.src[t] != po.p1.on_objects[a]) continue;
        bool found = false;
        for (int f = 0; f < po.p.arrows() && !found; ++f)
          found = po.p.src[f] == a && po.p0.on_arrows[f] == s && po.p1.on_arrows[f] == t;
        if (!found) return false;
      }
  return true;
}

BasedGroupoid loop(const BasedGroupoid& bx) {
  const FiniteGroupoid& x = bx.x;
  auto pop = path_object(x);
  const PathObject& po = *pop;
  int e = x.identity.at(bx.base);
  // objects over (base, base), arrows over (id, id)
  std::vector<int> objects, arrows;
  std::map<int, int> obj_index, arr_index;
  for (int a = 0; a < po.p.objects; ++a)
    if (po.p0.on_objects[a] == bx.base && po.p1.on_objects[a] == bx.base) {
      obj_index[a] = static_cast<int>(objects.size());
      objects.push_back(a);
    }
  for (int f = 0; f < po.p.arrows(); ++f)
    if (po.p0.on_arrows[f] == e && po.p1.on_arrows[f] == e && obj_index.count(po.p.src[f])) {
      arr_index[f] = static_cast<int>(arrows.size());
      arrows.push_back(f);
    }
  BasedGroupoid out;
  FiniteGroupoid& o = out.x;
  o.name = "loops(" + x.name + ")";
  o.objects = static_cast<int>(objects.size());
  int n = static_cast<int>(arrows.size());
  o.comp.assign(n, std::vector<int>(n, -1));
  for (int f : arrows) {
    o.src.push_back(obj_index.at(po.p.src[f]));
    o.tgt.push_back(obj_index.at(po.p.tgt[f]));
    o.inverse.push_back(arr_index.at(po.p.inverse[f]));
  }
  for (int g = 0; g < n; ++g)
    for (int f = 0; f < n; ++f) {
      int c = po.p.comp[arrows[g]][arrows[f]];
      if (c >= 0) o.comp[g][f] = arr_index.at(c);
    }
  for (int a : objects) o.identity.push_back(arr_index.at(po.p.identity[a]));
  if (auto v = o.violation()) throw Error("loop object is not a groupoid: " + *v);
  out.base = obj_index.at(e);
  return out;
}

QuillenPi1 quillen_pi1(const BasedGroupoid& bx, const TowerInterpretation& k) {
  const FiniteGroupoid& x = bx.x;
  int base = bx.base;
  auto diagram = globe_diagram(2);
  const GlobeDiagram& d = *diagram;
  // functors D(1) -> X with both ends at the base point
  std::vector<int> loops;
  for (const GroupoidFunctor& f : all_functors(d.disk[1], x))
    if (f.on_objects[0] == base && f.on_objects[1] == base) loops.push_back(f.on_arrows[1]);
  std::sort(loops.begin(), loops.end());
  std::map<int, int> pos;
  for (std::size_t i = 0; i < loops.size(); ++i) pos[loops[i]] = static_cast<int>(i);
  // left homotopies rel endpoints: functors D(2) -> X restricted along i_2
  std::vector<int> parent(loops.size());
  std::iota(parent.begin(), parent.end(), 0);
  const PresentedFunctor& i2 = d.boundary_inclusion[2];
  for (const GroupoidFunctor& h : all_functors(d.disk[2], x)) {
    std::vector<int> on_edges;
    for (int e : i2.on_edges) on_edges.push_back(h.on_arrows[e]);
    if (on_edges.size() != 2 || !pos.count(on_edges[0]) || !pos.count(on_edges[1])) continue;
    parent[find_root(parent, pos[on_edges[0]])] = find_root(parent, pos[on_edges[1]]);
  }
  std::vector<int> cls = number_classes(parent);
  int classes = class_count(cls);
  std::vector<int> rep(classes, -1);
  for (std::size_t i = 0; i < loops.size(); ++i)
    if (rep[cls[i]] < 0) rep[cls[i]] = loops[i];
  // composition through the interpreted composition of the tower
  PregroupoidBundle b = bundle_of(*k.tower);
  GenId nabla = b.nabla_at(1, 0);
  QuillenPi1 r;
  FiniteGroup& g = r.by_homotopy;
  g.mul.assign(classes, std::vector<int>(classes));
  for (int u = 0; u < classes; ++u)
    for (int v = 0; v < classes; ++v) {
      int prod = apply_generator(x, k, nabla, {rep[u], rep[v]});
      g.mul[u][v] = cls[pos.at(prod)];
    }
  g.unit = cls[pos.at(x.identity[base])];
  if (auto v = g.violation()) throw Error("homotopy classes of loops do not form a group: " + *v);
  g.name = recognize(g);

  BasedGroupoid om = loop(bx);
  std::vector<int> comp = om.x.components();
  int nc = class_count(comp);
  // objects of the loop object are loops of X; compose them in X
  std::vector<int> loop_arrow;
  for (int a = 0; a < x.arrows(); ++a)
    if (x.src[a] == base && x.tgt[a] == base) loop_arrow.push_back(a);
  std::map<int, int> obj_of_arrow;
  for (std::size_t i = 0; i < loop_arrow.size(); ++i) obj_of_arrow[loop_arrow[i]] = static_cast<int>(i);
  if (static_cast<int>(loop_arrow.size()) != om.x.objects) throw Error("loop object has the wrong objects");
  std::vector<int> crep(nc, -1);
  for (int o = 0; o < om.x.objects; ++o)
    if (crep[comp[o]] < 0) crep[comp[o]] = loop_arrow[o];
  FiniteGroup& l = r.by_loops;
  l.mul.assign(nc, std::vector<int>(nc));
  for (int u = 0; u < nc; ++u)
    for (int v = 0; v < nc; ++v) l.mul[u][v] = comp[obj_of_arrow.at(x.compose(crep[u], crep[v]))];
  l.unit = comp[om.base];
  if (auto v = l.violation()) throw Error("components of the loop object do not form a group: " + *v);
  l.name = recognize(l);

  for (int c = 0; c < classes; ++c) r.loop_of_class.push_back(comp[obj_of_arrow.at(rep[c])]);
  std::set<int> image(r.loop_of_class.begin(), r.loop_of_class.end());
  if (static_cast<int>(image.size()) != classes || classes != nc)
    throw Error("pi_1 by homotopy classes and by loop components have different sizes");
  if (!is_homomorphism(g, l, r.loop_of_class)) throw Error("pi_1 by homotopy classes and by loop components disagree");
  return r;
}

FiniteGroup quillen_pi(const BasedGroupoid& x, int n, const TowerInterpretation& k) {
  if (n < 0) throw Error("negative homotopy degree");
  if (n == 0) {
    FiniteGroup g = trivial_group();
    g.name = "set of " + std::to_string(x.x.component_count()) + " components";
    return g;
  }
  if (n == 1) return quillen_pi1(x, k).by_homotopy;
  return quillen_pi(loop(x), n - 1, k);
}

std::string ComparisonReport::str() const {
  std::ostringstream out;
  for (const auto& l : lines) out << l << "\n";
  return out.str();
}

ComparisonReport compare(const FiniteGroupoid& x, const TowerInterpretation& k) {
  int top = k.tower->truncation();
  if (top < 2) throw Error("the comparison needs a tower of dimension at least 2");
  Model pi = fundamental(x, k);
  ModelReport mr = check_model(pi);
  if (!mr.ok()) throw Error("fundamental model fails its equations:\n" + mr.str());
  PregroupoidBundle b = bundle_of(*k.tower);
  ComparisonReport r;
  auto fail = [&](const std::string& what) { throw Error(x.name + ": " + what); };

  HomotopyClasses c0 = pi0(pi);
  std::vector<int> comps = x.components();
  if (c0.class_of != comps) fail("0-cells are homotopic exactly when objects are isomorphic fails");
  r.components = c0.size();
  BasedGroupoid based{x, 0};
  if (x.objects > 0) {
    FiniteGroup q0 = quillen_pi(based, 0, k);
    if (q0.name != "set of " + std::to_string(r.components) + " components") fail("pi_0 sides disagree");
  }
  r.lines.push_back("pi_0 = " + std::to_string(r.components));

  PiGroupoid p1 = pi_groupoid(pi, b, 1);
  for (int o = 0; o < x.objects; ++o) {
    FiniteGroup g = pi_n(pi, b, 1, o);
    FiniteGroup aut = x.vertex_group(o);
    // canonical map: the class of a loop 1-cell goes to that arrow
    std::vector<int> classes = p1.hom(o, o), arrows = x.hom(o, o);
    std::vector<int> map;
    for (int c : classes) {
      int a = p1.classes.rep[c];
      map.push_back(static_cast<int>(std::find(arrows.begin(), arrows.end(), a) - arrows.begin()));
    }
    if (g.order() != aut.order() || !is_homomorphism(g, aut, map)) fail("pi_1 at " + std::to_string(o) + " is not Aut");
    QuillenPi1 q = quillen_pi1({x, o}, k);
    if (!find_isomorphism(q.by_homotopy, g)) fail("Quillen pi_1 at " + std::to_string(o) + " differs");
    r.pi1.push_back(g.name);
    std::string line = "pi_1(" + std::to_string(o) + ") = " + g.name;
    for (int n = 2; n <= top; ++n) {
      int size;
      if (n < top) {
        size = pi_n(pi, b, n, o).order();
      } else {
        // set of classes at the truncation, through degenerate cells above it
        HomotopyClasses h = homotopy_classes(pi, n);
        int u = iterated_unit(pi, b, o, 0, n - 1);
        std::set<int> loops;
        for (int a = 0; a < pi.count(n); ++a)
          if (pi.carrier().source(n, a) == u && pi.carrier().target(n, a) == u) loops.insert(h.class_of[a]);
        size = static_cast<int>(loops.size());
      }
      if (size != 1) fail("pi_" + std::to_string(n) + " at " + std::to_string(o) + " is not trivial");
      if (quillen_pi({x, o}, n, k).order() != 1) fail("Quillen pi_" + std::to_string(n) + " is not trivial");
      line += ", pi_" + std::to_string(n) + " = 1";
    }
    r.lines.push_back(line);
  }
  return r;
}

std::vector<FiniteGroupoid> groupoid_corpus() {
  std::vector<std::pair<int, FiniteGroup>> kinds;  // connected types with at most 8 arrows
  for (const FiniteGroup& g : small_groups()) kinds.push_back({1, g});
  kinds.push_back({2, trivial_group()});
  kinds.push_back({2, cyclic(2)});
  std::vector<FiniteGroupoid> out;
  std::function<void(std::size_t, int, int, FiniteGroupoid, int)> rec = [&](std::size_t from, int objects, int arrows,
                                                                            FiniteGroupoid acc, int parts) {
    if (parts > 0) out.push_back(acc);
    for (std::size_t i = from; i < kinds.size(); ++i) {
      auto [k, g] = kinds[i];
      int a = k * k * g.order();
      if (objects + k > 3 || arrows + a > 8) continue;
      rec(i, objects + k, arrows + a, disjoint_union(acc, connected_groupoid(k, g)), parts + 1);
    }
  };
  rec(0, 0, 0, FiniteGroupoid{}, 0);
  out.push_back(codiscrete_groupoid(3));
  out.push_back(connected_groupoid(2, cyclic(3)));
  out.push_back(disjoint_union(codiscrete_groupoid(2), group_groupoid(symmetric(3))));
  return out;
}

}  // namespace infgpd
