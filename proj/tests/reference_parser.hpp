#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "infgpd/dsl.hpp"

namespace infgpd::testing {

// Character-level recursive descent over the script grammar; nullopt on any
// syntax error.
class ReferenceParser {
 public:
  static std::optional<Script> script(const std::string& text) {
    Script out;
    bool have_dim = false;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string::npos) end = text.size();
      ReferenceParser p(text.substr(start, end - start));
      start = end + 1;
      p.skip();
      if (p.done()) continue;
      auto head = p.ident();
      if (!head) return std::nullopt;
      if (*head == "dim") {
        auto n = p.number();
        if (have_dim || !n || *n < 1) return std::nullopt;
        out.dim = *n;
        have_dim = true;
      } else if (*head == "lift") {
        if (!have_dim) return std::nullopt;
        auto l = p.lift();
        if (!l) return std::nullopt;
        out.lifts.push_back(*l);
      } else {
        return std::nullopt;
      }
      p.skip();
      if (!p.done()) return std::nullopt;
    }
    if (!have_dim) return std::nullopt;
    return out;
  }

  static std::optional<Syntax> term(const std::string& text) {
    ReferenceParser p(text);
    auto c = p.chain();
    p.skip();
    if (!c || !p.done()) return std::nullopt;
    return c;
  }

 private:
  explicit ReferenceParser(std::string s) : s_(std::move(s)) {}

  bool done() const { return i_ >= s_.size(); }

  void skip() {
    while (!done()) {
      if (s_[i_] == '#') {
        i_ = s_.size();
      } else if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        ++i_;
      } else {
        break;
      }
    }
  }

  bool punct(const std::string& p) {
    skip();
    if (s_.compare(i_, p.size(), p) != 0) return false;
    i_ += p.size();
    return true;
  }

  bool peek_punct(char c) {
    skip();
    return !done() && s_[i_] == c;
  }

  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.'; }

  std::optional<std::string> ident() {
    skip();
    if (done() || !ident_start(s_[i_])) return std::nullopt;
    std::size_t b = i_;
    while (!done() && ident_char(s_[i_])) ++i_;
    return s_.substr(b, i_ - b);
  }

  // digits of at most six characters, not followed by a letter
  static std::optional<int> small_number(const std::string& digits) {
    if (digits.empty() || digits.size() > 6) return std::nullopt;
    for (char c : digits)
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    return std::stoi(digits);
  }

  std::optional<int> number() {
    skip();
    std::size_t b = i_;
    while (!done() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (!done() && ident_start(s_[i_])) return std::nullopt;
    return small_number(s_.substr(b, i_ - b));
  }

  // "<prefix><digits>" exactly
  static std::optional<int> suffixed(const std::string& word, const std::string& prefix) {
    if (word.size() <= prefix.size() || word.compare(0, prefix.size(), prefix) != 0) return std::nullopt;
    std::string rest = word.substr(prefix.size());
    for (char c : rest)
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    if (rest.size() > 6) return -1;
    return std::stoi(rest);
  }

  static bool reserved(const std::string& w) {
    for (const char* p : {"s", "t", "eps", "D"})
      if (suffixed(w, p)) return true;
    return w == "id" || w == "dim" || w == "lift" || w == "src" || w == "tgt";
  }

  std::optional<int> disk() {
    auto w = ident();
    if (!w) return std::nullopt;
    auto d = suffixed(*w, "D");
    if (!d || *d < 0) return std::nullopt;
    return d;
  }

  std::optional<TableOfDimensions> table() {
    std::vector<int> up, low;
    auto d = disk();
    if (!d) return std::nullopt;
    up.push_back(*d);
    while (peek_punct('+')) {
      punct("+");
      auto j = number();
      auto m = disk();
      if (!j || !m) return std::nullopt;
      low.push_back(*j);
      up.push_back(*m);
    }
    for (std::size_t k = 0; k < low.size(); ++k)
      if (!(low[k] < up[k] && low[k] < up[k + 1])) return std::nullopt;
    return TableOfDimensions(up, low);
  }

  std::optional<ScriptLift> lift() {
    ScriptLift l;
    auto name = ident();
    if (!name || reserved(*name)) return std::nullopt;
    l.name = *name;
    if (!punct(":")) return std::nullopt;
    auto d = disk();
    if (!d || *d < 1) return std::nullopt;
    l.dim = *d;
    if (!punct("->")) return std::nullopt;
    auto t = table();
    if (!t) return std::nullopt;
    l.target = *t;
    if (!punct(";") || ident() != "src" || !punct("=")) return std::nullopt;
    auto s = chain();
    if (!s) return std::nullopt;
    l.src = *s;
    if (!punct(";") || ident() != "tgt" || !punct("=")) return std::nullopt;
    auto g = chain();
    if (!g) return std::nullopt;
    l.tgt = *g;
    return l;
  }

  std::optional<Syntax> chain() {
    Syntax s;
    do {
      auto f = factor();
      if (!f) return std::nullopt;
      s.factors.push_back(*f);
    } while (punct("*"));
    return s;
  }

  std::optional<Syntax::Factor> factor() {
    using K = Syntax::Factor::Kind;
    Syntax::Factor f;
    if (punct("[")) {
      f.kind = K::tuple;
      do {
        auto c = chain();
        if (!c) return std::nullopt;
        f.items.push_back(*c);
      } while (punct(";"));
      if (!punct("]")) return std::nullopt;
      return f;
    }
    if (punct("(")) {
      f.kind = K::group;
      auto c = chain();
      if (!c || !punct(")")) return std::nullopt;
      f.items.push_back(*c);
      return f;
    }
    auto w = ident();
    if (!w) return std::nullopt;
    for (auto [prefix, side] : {std::pair{"s", Side::source}, std::pair{"t", Side::target}})
      if (auto d = suffixed(*w, prefix)) {
        if (*d < 1) return std::nullopt;
        f.kind = K::letter;
        f.side = side;
        f.index = *d;
        return f;
      }
    if (auto d = suffixed(*w, "eps")) {
      if (*d < 1) return std::nullopt;
      f.kind = K::eps;
      f.index = *d;
      return f;
    }
    if (*w == "id") {
      f.kind = K::id;
      return f;
    }
    if (reserved(*w)) return std::nullopt;
    f.kind = K::name;
    f.name = *w;
    return f;
  }

  std::string s_;
  std::size_t i_ = 0;
};

}  // namespace infgpd::testing
