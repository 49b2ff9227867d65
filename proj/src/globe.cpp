#include "infgpd/globe.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <set>

namespace infgpd {

CoglobularWord CoglobularWord::letter(Side s, int dim) {
  if (dim < 1) throw Error("letter dimension must be at least 1");
  return {dim - 1, dim, s};
}

CoglobularWord CoglobularWord::iterated(Side s, int from, int to) {
  if (from > to || from < 0) throw Error("invalid coglobular word endpoints");
  if (from == to) return identity(from);
  return {from, to, s};
}

CoglobularWord CoglobularWord::from_letters(int from, const std::vector<Side>& letters) {
  if (letters.empty()) return identity(from);
  return {from, from + static_cast<int>(letters.size()), letters.front()};
}

std::vector<Side> CoglobularWord::letters() const {
  return std::vector<Side>(static_cast<std::size_t>(to - from), side);
}

std::string CoglobularWord::str() const {
  if (is_identity()) return "id";
  std::string out;
  for (int d = to; d > from; --d) {
    if (!out.empty()) out += " * ";
    out += side_char(side);
    out += std::to_string(d);
  }
  return out;
}

CoglobularWord compose_words(const CoglobularWord& w2, const CoglobularWord& w1) {
  if (w1.to != w2.from) throw Error("coglobular words are not composable");
  if (w1.is_identity()) return w2;
  if (w2.is_identity()) return w1;
  return {w1.from, w2.to, w1.side};
}

TableOfDimensions::TableOfDimensions(std::vector<int> upper, std::vector<int> lower)
    : upper_(std::move(upper)), lower_(std::move(lower)) {
  if (upper_.empty()) throw Error("table of dimensions needs at least one disk");
  if (lower_.size() + 1 != upper_.size()) throw Error("table needs one gluing dimension between consecutive disks");
  for (int u : upper_)
    if (u < 0) throw Error("negative disk dimension");
  for (std::size_t k = 0; k < lower_.size(); ++k) {
    if (lower_[k] < 0) throw Error("negative gluing dimension");
    if (!(upper_[k] > lower_[k] && upper_[k + 1] > lower_[k]))
      throw Error("gluing dimension " + std::to_string(lower_[k]) + " must be below both neighbouring disks");
  }
}

int TableOfDimensions::dimension() const { return *std::max_element(upper_.begin(), upper_.end()); }

std::string TableOfDimensions::str() const {
  std::string out = "D" + std::to_string(upper_[0]);
  for (std::size_t k = 0; k < lower_.size(); ++k)
    out += " +" + std::to_string(lower_[k]) + " D" + std::to_string(upper_[k + 1]);
  return out;
}

TableOfDimensions TableOfDimensions::parse(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto number = [&]() -> int {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) throw Error("expected a number at offset " + std::to_string(start));
    return std::stoi(std::string(text.substr(start, pos - start)));
  };
  std::vector<int> upper, lower;
  skip();
  if (pos >= text.size() || text[pos] != 'D') throw Error("expected 'D' at offset " + std::to_string(pos));
  ++pos;
  upper.push_back(number());
  skip();
  while (pos < text.size()) {
    if (text[pos] != '+') throw Error("expected '+' at offset " + std::to_string(pos));
    ++pos;
    lower.push_back(number());
    skip();
    if (pos >= text.size() || text[pos] != 'D') throw Error("expected 'D' at offset " + std::to_string(pos));
    ++pos;
    upper.push_back(number());
    skip();
  }
  return TableOfDimensions(std::move(upper), std::move(lower));
}

const TableOfDimensions* intern(const TableOfDimensions& t) {
  static std::mutex mu;
  static std::set<TableOfDimensions> pool;
  std::lock_guard<std::mutex> lock(mu);
  return &*pool.insert(t).first;
}

GlobularSet::GlobularSet(std::vector<int> counts, std::vector<std::vector<int>> src,
                         std::vector<std::vector<int>> tgt, bool degenerate_above)
    : counts_(std::move(counts)), src_(std::move(src)), tgt_(std::move(tgt)), degenerate_above_(degenerate_above) {
  if (counts_.empty()) throw Error("globular set needs dimension 0");
  src_.resize(counts_.size());
  tgt_.resize(counts_.size());
  for (std::size_t d = 1; d < counts_.size(); ++d) {
    if (src_[d].size() != static_cast<std::size_t>(counts_[d]) || tgt_[d].size() != static_cast<std::size_t>(counts_[d]))
      throw Error("face table size mismatch in dimension " + std::to_string(d));
    for (int c = 0; c < counts_[d]; ++c)
      if (src_[d][c] < 0 || src_[d][c] >= counts_[d - 1] || tgt_[d][c] < 0 || tgt_[d][c] >= counts_[d - 1])
        throw Error("face out of range in dimension " + std::to_string(d));
  }
  if (auto v = violation()) throw Error(*v);
}

int GlobularSet::count(int d) const {
  if (d < 0) return 0;
  if (d <= top()) return counts_[d];
  return degenerate_above_ ? counts_.back() : 0;
}

int GlobularSet::face(Side s, int d, int c) const {
  if (d < 1 || c < 0 || c >= count(d)) throw Error("face of a nonexistent cell");
  if (d > top()) return c;
  return s == Side::source ? src_[d][c] : tgt_[d][c];
}

int GlobularSet::iterated_face(Side s, int from, int to, int c) const {
  for (int d = from; d > to; --d) c = face(s, d, c);
  return c;
}

std::optional<std::string> GlobularSet::violation() const {
  for (int d = 2; d <= top(); ++d)
    for (int c = 0; c < counts_[d]; ++c) {
      int ss = src_[d - 1][src_[d][c]], st = src_[d - 1][tgt_[d][c]];
      int ts = tgt_[d - 1][src_[d][c]], tt = tgt_[d - 1][tgt_[d][c]];
      if (ss != st || ts != tt)
        return "globular relation fails at " + std::to_string(d) + "-cell " + std::to_string(c);
    }
  return std::nullopt;
}

SumRealization::SumRealization(const TableOfDimensions& table) : table_(table) {
  const auto& up = table.upper();
  const auto& lo = table.lower();
  int dim = table.dimension();
  std::vector<int> counts(dim + 1, 0);
  std::vector<std::vector<int>> src(dim + 1), tgt(dim + 1);
  owner_.assign(dim + 1, {});
  legs_.resize(up.size());
  for (int k = 0; k < table.width(); ++k) {
    int m = up[k];
    legs_[k].resize(m + 1);
    for (int d = 0; d <= m; ++d) {
      int locals = d == m ? 1 : 2;
      legs_[k][d].resize(locals);
      for (int l = 0; l < locals; ++l) {
        Side s = l == 0 ? Side::source : Side::target;
        if (k > 0 && d < lo[k - 1]) {
          legs_[k][d][l] = legs_[k - 1][d][l];
          continue;
        }
        if (k > 0 && d == lo[k - 1] && s == Side::target) {
          legs_[k][d][l] = legs_[k - 1][d][0];
          continue;
        }
        int id = counts[d]++;
        legs_[k][d][l] = id;
        if (d > 0) {
          src[d].push_back(legs_[k][d - 1][0]);
          tgt[d].push_back(legs_[k][d - 1][1]);
        }
        CoglobularWord w = d == m ? CoglobularWord::identity(m) : CoglobularWord::iterated(s, d, m);
        owner_[d].push_back({k, w});
      }
    }
  }
  carrier_ = GlobularSet(std::move(counts), std::move(src), std::move(tgt), false);
}

int SumRealization::leg_cell(int k, int d, Side s) const {
  if (k < 0 || k >= table_.width() || d < 0 || d > table_.upper()[k]) throw Error("leg cell out of range");
  return legs_[k][d][disk_local(table_.upper()[k], d, s)];
}

int SumRealization::leg_top(int k) const { return leg_cell(k, table_.upper()[k], Side::source); }

int SumRealization::apply_leg(int k, const CoglobularWord& w) const {
  if (k < 0 || k >= table_.width() || w.to != table_.upper()[k]) throw Error("word does not land in the leg");
  return leg_cell(k, w.from, w.side);
}

SumRealization realize_sum(const TableOfDimensions& table) { return SumRealization(table); }

const SumRealization& realization(const TableOfDimensions& table) {
  static std::mutex mu;
  static std::map<TableOfDimensions, std::unique_ptr<SumRealization>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(table);
  if (it == cache.end()) it = cache.emplace(table, std::make_unique<SumRealization>(table)).first;
  return *it->second;
}

std::vector<CellPresentation> disk_cells_as_words(const SumRealization& r, int m) {
  std::vector<CellPresentation> out;
  for (int c = 0; c < r.carrier().count(m); ++c) out.push_back(r.presentation(m, c));
  return out;
}

}  // namespace infgpd
