#include "infgpd/theta0.hpp"

namespace infgpd {

Theta0Morphism::Theta0Morphism(const TableOfDimensions& source, const TableOfDimensions& target,
                               std::vector<std::vector<int>> cells)
    : source_(intern(source)), target_(intern(target)), cells_(std::move(cells)) {
  const GlobularSet& s = realization(source).carrier();
  const GlobularSet& t = realization(target).carrier();
  if (static_cast<int>(cells_.size()) != s.top() + 1) throw Error("theta0 map has wrong number of dimensions");
  for (int d = 0; d <= s.top(); ++d) {
    if (static_cast<int>(cells_[d].size()) != s.count(d)) throw Error("theta0 map has wrong number of cells");
    for (int c = 0; c < s.count(d); ++c) {
      int x = cells_[d][c];
      if (x < 0 || x >= t.count(d)) throw Error("theta0 map sends a cell outside the target");
      if (d > 0 && (t.source(d, x) != cells_[d - 1][s.source(d, c)] || t.target(d, x) != cells_[d - 1][s.target(d, c)]))
        throw Error("theta0 map does not commute with faces in dimension " + std::to_string(d));
    }
  }
}

Theta0Morphism Theta0Morphism::identity(const TableOfDimensions& t) {
  const GlobularSet& g = realization(t).carrier();
  std::vector<std::vector<int>> cells(g.top() + 1);
  for (int d = 0; d <= g.top(); ++d)
    for (int c = 0; c < g.count(d); ++c) cells[d].push_back(c);
  return Theta0Morphism(t, t, std::move(cells));
}

Theta0Morphism Theta0Morphism::from_cell(const TableOfDimensions& target, int m, int cell) {
  const GlobularSet& g = realization(target).carrier();
  if (cell < 0 || cell >= g.count(m)) throw Error("no such cell");
  std::vector<std::vector<int>> cells(m + 1);
  cells[m] = {cell};
  for (int d = m - 1; d >= 0; --d)
    cells[d] = {g.iterated_face(Side::source, m, d, cell), g.iterated_face(Side::target, m, d, cell)};
  return Theta0Morphism(TableOfDimensions::disk(m), target, std::move(cells));
}

Theta0Morphism Theta0Morphism::leg(const TableOfDimensions& t, int k) {
  if (k < 0 || k >= t.width()) throw Error("no such leg");
  return from_cell(t, t.upper()[k], realization(t).leg_top(k));
}

int Theta0Morphism::top_image() const {
  if (!source_->is_disk()) throw Error("source is not a disk");
  return cells_.back()[0];
}

Theta0Morphism compose(const Theta0Morphism& g, const Theta0Morphism& f) {
  if (f.target() != g.source()) throw Error("theta0 maps are not composable");
  const GlobularSet& s = realization(f.source()).carrier();
  std::vector<std::vector<int>> cells(s.top() + 1);
  for (int d = 0; d <= s.top(); ++d)
    for (int c = 0; c < s.count(d); ++c) cells[d].push_back(g(d, f(d, c)));
  return Theta0Morphism(f.source(), g.target(), std::move(cells));
}

Theta0Morphism pair(const std::vector<Theta0Morphism>& components, const TableOfDimensions& source) {
  if (static_cast<int>(components.size()) != source.width()) throw Error("pairing needs one component per leg");
  const auto& up = source.upper();
  const auto& lo = source.lower();
  for (int k = 0; k < source.width(); ++k) {
    if (components[k].source() != TableOfDimensions::disk(up[k])) throw Error("pairing component has the wrong source disk");
    if (components[k].target() != components[0].target()) throw Error("pairing components disagree on the target");
  }
  for (int k = 0; k + 1 < source.width(); ++k) {
    int g = lo[k];
    int left = components[k](g, disk_local(up[k], g, Side::source));
    int right = components[k + 1](g, disk_local(up[k + 1], g, Side::target));
    if (left != right)
      throw PairingError(k, g, "pairing components " + std::to_string(k + 1) + " and " + std::to_string(k + 2) +
                                   " disagree in dimension " + std::to_string(g));
  }
  const SumRealization& r = realization(source);
  const GlobularSet& s = r.carrier();
  std::vector<std::vector<int>> cells(s.top() + 1);
  for (int d = 0; d <= s.top(); ++d)
    for (int c = 0; c < s.count(d); ++c) {
      const CellPresentation& p = r.presentation(d, c);
      cells[d].push_back(components[p.leg](d, disk_local(up[p.leg], d, p.word.side)));
    }
  return Theta0Morphism(source, components[0].target(), std::move(cells));
}

Theta0Morphism globe_functor(const CoglobularWord& w) {
  const TableOfDimensions target = TableOfDimensions::disk(w.to);
  return Theta0Morphism::from_cell(target, w.from, realization(target).leg_cell(0, w.from, w.side));
}

}  // namespace infgpd
