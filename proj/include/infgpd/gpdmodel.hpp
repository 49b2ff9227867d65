#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "infgpd/group.hpp"
#include "infgpd/homotopy.hpp"
#include "infgpd/model.hpp"

namespace infgpd {

/// Finite groupoid with arrows numbered 0..arrows-1.
struct FiniteGroupoid {
  std::string name;
  int objects = 0;
  std::vector<int> src, tgt;
  std::vector<std::vector<int>> comp;  // comp[g][f] = g after f, or -1
  std::vector<int> identity;           // per object
  std::vector<int> inverse;            // per arrow

  int arrows() const { return static_cast<int>(src.size()); }
  int compose(int g, int f) const;
  std::vector<int> hom(int x, int y) const;
  FiniteGroup vertex_group(int x) const;
  // connected components of the objects, numbered by smallest member
  std::vector<int> components() const;
  int component_count() const;
  std::optional<std::string> violation() const;
};

FiniteGroupoid point_groupoid();
FiniteGroupoid discrete_groupoid(int k);
FiniteGroupoid codiscrete_groupoid(int k);
FiniteGroupoid group_groupoid(const FiniteGroup& g);
// codiscrete(k) x G
FiniteGroupoid connected_groupoid(int k, const FiniteGroup& g);
FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b);

// JSON with objects, arrows [{src, tgt}], compose [[g, f, g after f]...], inverse
FiniteGroupoid groupoid_from_json(const std::string& text);
std::string groupoid_to_json(const FiniteGroupoid& x);

struct GroupoidFunctor {
  const FiniteGroupoid* source = nullptr;
  const FiniteGroupoid* target = nullptr;
  std::vector<int> on_objects, on_arrows;
  std::optional<std::string> violation() const;
};

GroupoidFunctor identity_functor(const FiniteGroupoid& x);
bool injective_on_objects(const GroupoidFunctor& f);
bool fully_faithful(const GroupoidFunctor& f);
bool essentially_surjective(const GroupoidFunctor& f);
bool is_equivalence(const GroupoidFunctor& f);
// every functor between two small groupoids, by backtracking
std::vector<GroupoidFunctor> all_functors(const FiniteGroupoid& a, const FiniteGroupoid& b);

/// Finite directed graph; the free groupoid on it presents a groupoid
/// that may be infinite.
struct Graph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;
  int components() const;
  // rank of the free vertex groups
  int cycle_rank() const { return static_cast<int>(edges.size()) - vertices + components(); }
  bool thin() const { return cycle_rank() == 0; }
  bool contractible() const { return thin() && components() == 1; }
};

// Functor from the free groupoid on a graph: vertex images and edge images.
struct PresentedFunctor {
  const Graph* source = nullptr;
  const FiniteGroupoid* target = nullptr;
  std::vector<int> on_vertices, on_edges;
  std::optional<std::string> violation() const;
};

// vertex and edge identifications of a pushout of graphs
struct GraphPushout {
  Graph graph;
  std::vector<int> left_vertices, left_edges, right_vertices, right_edges;
};

GraphPushout pushout(const Graph& a, const Graph& b, const Graph& c, const std::vector<int>& av,
                     const std::vector<int>& ae, const std::vector<int>& bv, const std::vector<int>& be);

/// D(n) for n <= N: the point and then the codiscrete groupoid on two objects.
struct GlobeDiagram {
  GlobeDiagram() = default;
  GlobeDiagram(const GlobeDiagram&) = delete;
  GlobeDiagram& operator=(const GlobeDiagram&) = delete;
  int n = 0;
  std::vector<FiniteGroupoid> disk;  // D(0..N)
  std::vector<Graph> disk_graph;     // presentations of D(n)
  std::vector<Graph> sphere;         // S(-1..N-1), index n for S(n-1)
  // i_n: S(n-1) -> D(n) and p_n: D(n) -> D(n-1), index n
  std::vector<PresentedFunctor> boundary_inclusion;
  std::vector<GroupoidFunctor> collapse;
  std::vector<GroupoidFunctor> sigma, tau;  // D(n-1) -> D(n), index n
  std::optional<std::string> violation() const;
};

// shared because the structure maps point into the diagram
std::shared_ptr<const GlobeDiagram> globe_diagram(int n);

// realization of a globular sum of D(n)'s, as a graph whose vertices are
// the 0-cells of the sum
struct SumGraph {
  Graph graph;
  std::vector<int> leg_source, leg_target;  // vertex per leg, equal for D(0) legs
  std::vector<int> leg_edge;                // -1 for D(0) legs
};

SumGraph sum_graph(const TableOfDimensions& t);

// Images of disks in a thin sum are pairs of objects: source and target.
struct ObjectPair {
  int p = 0, q = 0;
  friend bool operator==(const ObjectPair&, const ObjectPair&) = default;
};

// The unique functor D(n+1) -> F(S) filling an admissible pair of functors
// D(n) -> F(S), given by object pairs.
ObjectPair lifting_oracle(const TableOfDimensions& s, int n, ObjectPair f, ObjectPair g);

struct TowerInterpretation {
  std::shared_ptr<const Tower> tower;
  std::vector<ObjectPair> image;  // per generator, in its target sum
};

TowerInterpretation interpret_tower(std::shared_ptr<const Tower> tower);
ObjectPair interpret(const TowerInterpretation& k, const NodePtr& n);

/// Fundamental infinity-groupoid: cells are functors from the disks.
Model fundamental(const FiniteGroupoid& x, const TowerInterpretation& k);
ModelMorphism fundamental_map(const GroupoidFunctor& f, const Model& source, const Model& target);

struct PathObject {
  PathObject() = default;
  PathObject(const PathObject&) = delete;
  PathObject& operator=(const PathObject&) = delete;
  FiniteGroupoid p;
  GroupoidFunctor r, p0, p1;
};

// arrow groupoid: objects are arrows, morphisms commutative squares
std::shared_ptr<const PathObject> path_object(const FiniteGroupoid& x);
bool is_isofibration(const PathObject& po);

struct BasedGroupoid {
  FiniteGroupoid x;
  int base = 0;
};

// pullback of P along the base point
BasedGroupoid loop(const BasedGroupoid& x);

struct QuillenPi1 {
  FiniteGroup by_homotopy;  // classes of functors D(1) -> X at the base point
  FiniteGroup by_loops;     // components of the loop object
  std::vector<int> loop_of_class;  // class -> component of the loop object
};

QuillenPi1 quillen_pi1(const BasedGroupoid& x, const TowerInterpretation& k);
// pi_n through iterated loop objects; pi_0 as a trivial group named after the count
FiniteGroup quillen_pi(const BasedGroupoid& x, int n, const TowerInterpretation& k);

struct ComparisonReport {
  int components = 0;
  std::vector<std::string> pi1;  // per object
  std::vector<std::string> lines;
  std::string str() const;
};

// Both sides of the comparison; any disagreement throws.
ComparisonReport compare(const FiniteGroupoid& x, const TowerInterpretation& k);

// all groupoids with at most 3 objects and 8 arrows up to isomorphism, plus named examples
std::vector<FiniteGroupoid> groupoid_corpus();

}  // namespace infgpd
