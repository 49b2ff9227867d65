#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "infgpd/group.hpp"
#include "infgpd/model.hpp"
#include "infgpd/stdlib.hpp"

namespace infgpd {

// true iff some (n+1)-cell goes from a to b
bool homotopic(const Model& m, int n, int a, int b);

/// n-cells of a model up to homotopy. Classes are numbered by their
/// smallest member, so the numbering does not depend on any choice.
struct HomotopyClasses {
  int n = 0;
  std::vector<int> class_of;  // per n-cell
  std::vector<int> rep;       // smallest member of each class
  int size() const { return static_cast<int>(rep.size()); }
};

HomotopyClasses homotopy_classes(const Model& m, int n);

// Composition, unit and inverse used to build the groupoid of n-cells.
struct PiOps {
  Term compose;  // D_n -> D_n +_{n-1} D_n
  Term unit;     // D_n -> D_{n-1}
  Term inverse;  // D_n -> D_n
};

PiOps pi_ops(const Tower& tower, const PregroupoidBundle& b, int n);
PiOps apply(const TowerFunctor& f, const PiOps& ops);

/// Groupoid whose objects are the (n-1)-cells and whose arrows are the
/// homotopy classes of n-cells.
struct PiGroupoid {
  int n = 1;
  int objects = 0;
  HomotopyClasses classes;
  std::vector<int> src, tgt;                  // per class
  std::map<std::pair<int, int>, int> compose;  // (g, f) -> g after f
  std::vector<int> unit;                       // per object
  std::vector<int> inverse;                    // per class

  std::vector<int> hom(int u, int v) const;
  FiniteGroup vertex_group(int u) const;
  // canonical text of the whole structure
  std::string table() const;
};

PiGroupoid pi_groupoid(const Model& m, const PiOps& ops, int n);
PiGroupoid pi_groupoid(const Model& m, const PregroupoidBundle& b, int n);

// connected components of the 0-cells
HomotopyClasses pi0(const Model& m);
int iterated_unit(const Model& m, const PregroupoidBundle& b, int cell, int from, int to);
// pi_n(G, x) for a 0-cell x; refused at and above the truncation
FiniteGroup pi_n(const Model& m, const PregroupoidBundle& b, int n, int x);
// pi_n(G, u) for an (n-1)-cell u
FiniteGroup pi_n_at(const Model& m, const PregroupoidBundle& b, int n, int u);

/// Division lemma: whiskering by gamma and its constructed inverse on classes.
struct Division {
  int n = 0, i = 0;
  int gamma = 0, u = 0, v = 0, u_prime = 0, v_prime = 0;
  int whiskered_u = 0, whiskered_v = 0;  // u' *_i u and v' *_i v
  std::vector<int> domain;               // classes of n-cells u -> v
  std::vector<int> codomain;             // classes of n-cells u' * u -> v' * v
  std::map<int, int> k, l;               // on classes
  std::vector<std::string> auto_lifts;   // correction liftings used by L
  std::shared_ptr<const Tower> tower;    // tower extended by the correction liftings
};

Division divide(const Model& m, const PregroupoidBundle& b, int n, int i, int gamma, int u, int v);

struct GroupIso {
  FiniteGroup from, to;
  std::vector<int> map;
};

// pi_n(G, u) -> pi_n(G, x) for x the 0-source of u
GroupIso base_change_iso(const Model& m, const PregroupoidBundle& b, int n, int u);
// pi_n(G, x) -> pi_n(G, y) induced by a 1-cell x -> y
GroupIso transport(const Model& m, const PregroupoidBundle& b, int n, int arrow);

struct WeakEquivReport {
  bool condition[4] = {false, false, false, false};
  std::vector<std::string> notes[4];  // first reasons for failure
  bool consistent() const;
  std::string str() const;
};

// The four characterisations of weak equivalences, evaluated in every
// dimension up to the truncation; disagreement is an error.
WeakEquivReport weak_equiv(const ModelMorphism& f, const PregroupoidBundle& b);

}  // namespace infgpd
