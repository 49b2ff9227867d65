#pragma once

#include <compare>
#include <cstdint>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace infgpd {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Side : std::uint8_t { source, target };

inline char side_char(Side s) { return s == Side::source ? 's' : 't'; }

/// Map D_from -> D_to of the globe category. For from < to there are exactly
/// two such maps; each is determined by the first-applied letter.
struct CoglobularWord {
  int from = 0;
  int to = 0;
  Side side = Side::source;

  static CoglobularWord identity(int d) { return {d, d, Side::source}; }
  // s_dim or t_dim : D_{dim-1} -> D_dim
  static CoglobularWord letter(Side s, int dim);
  static CoglobularWord iterated(Side s, int from, int to);
  // letters[0] is applied first
  static CoglobularWord from_letters(int from, const std::vector<Side>& letters);

  bool is_identity() const { return from == to; }
  std::vector<Side> letters() const;
  std::string str() const;

  friend bool operator==(const CoglobularWord&, const CoglobularWord&) = default;
  friend auto operator<=>(const CoglobularWord&, const CoglobularWord&) = default;
};

// w2 after w1
CoglobularWord compose_words(const CoglobularWord& w2, const CoglobularWord& w1);

class TableOfDimensions {
 public:
  TableOfDimensions() : upper_{0} {}
  TableOfDimensions(std::vector<int> upper, std::vector<int> lower);

  static TableOfDimensions disk(int m) { return TableOfDimensions({m}, {}); }
  // "D2 +1 D2 +0 D1"
  static TableOfDimensions parse(std::string_view text);

  const std::vector<int>& upper() const { return upper_; }
  const std::vector<int>& lower() const { return lower_; }
  int width() const { return static_cast<int>(upper_.size()); }
  int dimension() const;
  bool is_disk() const { return upper_.size() == 1; }
  std::string str() const;

  friend bool operator==(const TableOfDimensions&, const TableOfDimensions&) = default;
  friend auto operator<=>(const TableOfDimensions&, const TableOfDimensions&) = default;

 private:
  std::vector<int> upper_;
  std::vector<int> lower_;
};

// Stable address for a table; equal tables share one address.
const TableOfDimensions* intern(const TableOfDimensions& t);

/// Finite globular set. Cells are numbered per dimension. When
/// degenerate_above is set, every dimension above top repeats the top cells
/// with identity faces; otherwise there are no cells above top.
class GlobularSet {
 public:
  GlobularSet() = default;
  GlobularSet(std::vector<int> counts, std::vector<std::vector<int>> src,
              std::vector<std::vector<int>> tgt, bool degenerate_above);

  int top() const { return static_cast<int>(counts_.size()) - 1; }
  bool degenerate_above() const { return degenerate_above_; }
  int count(int d) const;
  int source(int d, int c) const { return face(Side::source, d, c); }
  int target(int d, int c) const { return face(Side::target, d, c); }
  int face(Side s, int d, int c) const;
  // iterated face from dimension `from` down to `to`
  int iterated_face(Side s, int from, int to, int c) const;

  // first violated relation, if any
  std::optional<std::string> violation() const;

  friend bool operator==(const GlobularSet&, const GlobularSet&) = default;

 private:
  std::vector<int> counts_;
  std::vector<std::vector<int>> src_;
  std::vector<std::vector<int>> tgt_;
  bool degenerate_above_ = false;
};

struct CellPresentation {
  int leg = 0;  // 0-based
  CoglobularWord word;
  friend bool operator==(const CellPresentation&, const CellPresentation&) = default;
};

/// Colimit of the globular-sum diagram of a table, as a globular set
/// together with the leg maps.
class SumRealization {
 public:
  explicit SumRealization(const TableOfDimensions& table);

  const TableOfDimensions& table() const { return table_; }
  const GlobularSet& carrier() const { return carrier_; }
  // carrier id of cell (d, s) of leg k; for d == upper[k] the side is ignored
  int leg_cell(int k, int d, Side s) const;
  int leg_top(int k) const;
  int apply_leg(int k, const CoglobularWord& w) const;
  // presentation through the lowest leg containing the cell
  const CellPresentation& presentation(int d, int c) const { return owner_[d][c]; }

 private:
  TableOfDimensions table_;
  GlobularSet carrier_;
  std::vector<std::vector<std::vector<int>>> legs_;  // [k][d][local]
  std::vector<std::vector<CellPresentation>> owner_;
};

// index of cell (d, s) inside the disk D_m
inline int disk_local(int m, int d, Side s) { return d == m ? 0 : (s == Side::source ? 0 : 1); }

SumRealization realize_sum(const TableOfDimensions& table);
// memoized; references stay valid for the program lifetime
const SumRealization& realization(const TableOfDimensions& table);
std::vector<CellPresentation> disk_cells_as_words(const SumRealization& r, int m);

}  // namespace infgpd
