#include "infgpd/dsl.hpp"

#include <cctype>
#include <regex>
#include <sstream>

namespace infgpd {

namespace {

std::string at(SourcePos p) { return "line " + std::to_string(p.line) + ", column " + std::to_string(p.col); }

enum class Tok { ident, number, star, lbrack, rbrack, semi, lparen, rparen, colon, equals, arrow, plus, end };

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::ident: return "identifier";
    case Tok::number: return "number";
    case Tok::star: return "'*'";
    case Tok::lbrack: return "'['";
    case Tok::rbrack: return "']'";
    case Tok::semi: return "';'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::colon: return "':'";
    case Tok::equals: return "'='";
    case Tok::arrow: return "'->'";
    case Tok::plus: return "'+'";
    case Tok::end: return "end of input";
  }
  return "?";
}

std::vector<Token> lex(std::string_view text, SourcePos origin) {
  std::vector<Token> out;
  SourcePos p = origin;
  std::size_t i = 0;
  auto advance = [&] {
    if (text[i] == '\n') {
      ++p.line;
      p.col = 1;
    } else {
      ++p.col;
    }
    ++i;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance();
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    SourcePos start = p;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string s;
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_' || text[i] == '.')) {
        s += text[i];
        advance();
      }
      out.push_back({Tok::ident, s, start});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string s;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        s += text[i];
        advance();
      }
      if (i < text.size() && (std::isalpha(static_cast<unsigned char>(text[i])) || text[i] == '_'))
        throw ParseError(p, "unexpected character '" + std::string(1, text[i]) + "' after number");
      if (s.size() > 6) throw ParseError(start, "number too large");
      out.push_back({Tok::number, s, start});
      continue;
    }
    Tok k;
    switch (c) {
      case '*': k = Tok::star; break;
      case '[': k = Tok::lbrack; break;
      case ']': k = Tok::rbrack; break;
      case ';': k = Tok::semi; break;
      case '(': k = Tok::lparen; break;
      case ')': k = Tok::rparen; break;
      case ':': k = Tok::colon; break;
      case '=': k = Tok::equals; break;
      case '+': k = Tok::plus; break;
      case '-':
        advance();
        if (i >= text.size() || text[i] != '>') throw ParseError(start, "expected '->'");
        advance();
        out.push_back({Tok::arrow, "->", start});
        continue;
      default:
        throw ParseError(start, "unexpected character '" + std::string(1, c) + "'");
    }
    advance();
    out.push_back({k, std::string(1, c), start});
  }
  out.push_back({Tok::end, "", p});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek() const { return toks_[i_]; }
  Token take() { return toks_[i_++]; }
  bool at_end() const { return peek().kind == Tok::end; }

  Token expect(Tok k, const char* what = nullptr) {
    if (peek().kind != k)
      throw ParseError(peek().pos, std::string("expected ") + (what ? what : tok_name(k)) + ", found " + describe(peek()));
    return take();
  }

  static std::string describe(const Token& t) {
    if (t.kind == Tok::end) return "end of input";
    return "'" + t.text + "'";
  }

  Syntax chain() {
    Syntax s;
    s.pos = peek().pos;
    s.factors.push_back(factor());
    while (peek().kind == Tok::star) {
      take();
      s.factors.push_back(factor());
    }
    return s;
  }

  Syntax::Factor factor() {
    static const std::regex letter("([st])([0-9]+)");
    static const std::regex leg("eps([0-9]+)");
    Syntax::Factor f;
    f.pos = peek().pos;
    if (peek().kind == Tok::lbrack) {
      take();
      f.kind = Syntax::Factor::Kind::tuple;
      f.items.push_back(chain());
      while (peek().kind == Tok::semi) {
        take();
        f.items.push_back(chain());
      }
      expect(Tok::rbrack);
      return f;
    }
    if (peek().kind == Tok::lparen) {
      take();
      f.kind = Syntax::Factor::Kind::group;
      f.items.push_back(chain());
      expect(Tok::rparen);
      return f;
    }
    Token t = expect(Tok::ident, "a term");
    std::smatch m;
    if (std::regex_match(t.text, m, letter)) {
      f.kind = Syntax::Factor::Kind::letter;
      f.side = m[1] == "s" ? Side::source : Side::target;
      if (m[2].length() > 6) throw ParseError(t.pos, "number too large");
      f.index = std::stoi(m[2]);
      if (f.index < 1) throw ParseError(t.pos, "letters start at dimension 1");
      return f;
    }
    if (std::regex_match(t.text, m, leg)) {
      f.kind = Syntax::Factor::Kind::eps;
      if (m[1].length() > 6) throw ParseError(t.pos, "number too large");
      f.index = std::stoi(m[1]);
      if (f.index < 1) throw ParseError(t.pos, "legs are numbered from 1");
      return f;
    }
    if (t.text == "id") {
      f.kind = Syntax::Factor::Kind::id;
      return f;
    }
    if (!is_valid_name(t.text)) throw ParseError(t.pos, "'" + t.text + "' cannot name a generator");
    f.kind = Syntax::Factor::Kind::name;
    f.name = t.text;
    return f;
  }

  TableOfDimensions table() {
    std::vector<int> upper, lower;
    upper.push_back(disk());
    while (peek().kind == Tok::plus) {
      take();
      lower.push_back(std::stoi(expect(Tok::number).text));
      upper.push_back(disk());
    }
    SourcePos pos = peek().pos;
    try {
      return TableOfDimensions(upper, lower);
    } catch (const Error& e) {
      throw ParseError(pos, e.what());
    }
  }

  int disk() {
    static const std::regex d("D([0-9]+)");
    Token t = expect(Tok::ident, "a disk 'D<n>'");
    std::smatch m;
    if (!std::regex_match(t.text, m, d) || m[1].length() > 6) throw ParseError(t.pos, "expected a disk 'D<n>', found '" + t.text + "'");
    return std::stoi(m[1]);
  }

  void keyword(const char* kw) {
    Token t = expect(Tok::ident, (std::string("'") + kw + "'").c_str());
    if (t.text != kw) throw ParseError(t.pos, std::string("expected '") + kw + "', found '" + t.text + "'");
  }

 private:
  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

using OptTable = std::optional<TableOfDimensions>;

void unify(OptTable& slot, const TableOfDimensions& value, SourcePos pos) {
  if (!slot) {
    slot = value;
  } else if (*slot != value) {
    throw CheckError(pos, "type mismatch: " + slot->str() + " against " + value.str());
  }
}

class Elaborator {
 public:
  explicit Elaborator(const Tower& tower) : tower_(tower) {}

  Term chain(const Syntax& s, OptTable target, OptTable source) {
    std::size_t n = s.factors.size();
    std::vector<OptTable> src(n), tgt(n);
    if (target) tgt[0] = target;
    if (source) src[n - 1] = source;
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < n; ++i) {
        OptTable before_s = src[i], before_t = tgt[i];
        intrinsic(s.factors[i], src[i], tgt[i]);
        if (i + 1 < n) {
          if (src[i]) unify(tgt[i + 1], *src[i], s.factors[i + 1].pos);
          if (tgt[i + 1]) unify(src[i], *tgt[i + 1], s.factors[i].pos);
        }
        if (src[i] != before_s || tgt[i] != before_t) changed = true;
      }
    }
    std::optional<Term> acc;
    for (std::size_t j = n; j-- > 0;) {
      const auto& f = s.factors[j];
      if (!tgt[j]) throw CheckError(f.pos, "cannot infer the target of this factor");
      if (!src[j]) throw CheckError(f.pos, "cannot infer the source of this factor; compose it with a morphism");
      Term t = build(f, *tgt[j], *src[j]);
      acc = acc ? compose(tower_, t, *acc) : t;
    }
    return *acc;
  }

 private:
  void intrinsic(const Syntax::Factor& f, OptTable& src, OptTable& tgt) {
    using K = Syntax::Factor::Kind;
    switch (f.kind) {
      case K::letter:
        unify(src, TableOfDimensions::disk(f.index - 1), f.pos);
        unify(tgt, TableOfDimensions::disk(f.index), f.pos);
        break;
      case K::name: {
        auto h = tower_.find(f.name);
        if (!h) throw CheckError(f.pos, "unknown generator '" + f.name + "'");
        const LiftGenerator& g = tower_.generator(*h);
        unify(src, TableOfDimensions::disk(g.dim), f.pos);
        unify(tgt, *g.target, f.pos);
        break;
      }
      case K::eps:
        if (tgt) {
          if (f.index > tgt->width()) throw CheckError(f.pos, "no leg " + std::to_string(f.index) + " in " + tgt->str());
          unify(src, TableOfDimensions::disk(tgt->upper()[f.index - 1]), f.pos);
        }
        break;
      case K::id:
        if (tgt) unify(src, *tgt, f.pos);
        if (src) unify(tgt, *src, f.pos);
        break;
      case K::tuple:
        if (!tgt) {
          for (const auto& c : f.items) {
            try {
              Term t = chain(c, std::nullopt, std::nullopt);
              tgt = *t.target;
              break;
            } catch (const CheckError&) {
            }
          }
        }
        break;
      case K::group:
        if (!src || !tgt) {
          try {
            Term t = chain(f.items[0], tgt, src);
            unify(src, *t.source, f.pos);
            unify(tgt, *t.target, f.pos);
          } catch (const CheckError&) {
            if (src && tgt) throw;
          }
        }
        break;
    }
  }

  Term build(const Syntax::Factor& f, const TableOfDimensions& tgt, const TableOfDimensions& src) {
    using K = Syntax::Factor::Kind;
    switch (f.kind) {
      case K::letter:
        return word_term(CoglobularWord::letter(f.side, f.index));
      case K::name:
        return generator_term(tower_, f.name);
      case K::eps:
        return eps(tgt, f.index - 1);
      case K::id:
        return identity_term(tgt);
      case K::group:
        return chain(f.items[0], tgt, src);
      case K::tuple: {
        if (static_cast<int>(f.items.size()) != src.width())
          throw CheckError(f.pos, "tuple has " + std::to_string(f.items.size()) + " components but its source " +
                                      src.str() + " has " + std::to_string(src.width()) + " legs");
        std::vector<Term> comps;
        for (int k = 0; k < src.width(); ++k)
          comps.push_back(chain(f.items[k], tgt, TableOfDimensions::disk(src.upper()[k])));
        try {
          return tuple(tower_, comps, src);
        } catch (const PairingError& e) {
          throw CheckError(f.items[e.k + 1].pos, e.what());
        }
      }
    }
    throw CheckError(f.pos, "unknown factor");
  }

  const Tower& tower_;
};

bool identity_args(const NodePtr& n, const LiftGenerator& g) {
  if (n->target_ptr() != g.target) return false;
  const SumRealization& r = realization(*g.target);
  for (std::size_t k = 0; k < n->args().size(); ++k) {
    const NodePtr& a = n->args()[k];
    if (!a->is_cell() || a->cell() != r.leg_top(static_cast<int>(k)) || a->dim() != g.target->upper()[k]) return false;
  }
  return true;
}

}  // namespace

ParseError::ParseError(SourcePos pos, const std::string& msg) : Error(at(pos) + ": " + msg), pos(pos) {}
CheckError::CheckError(SourcePos pos, const std::string& msg) : Error(at(pos) + ": " + msg), pos(pos) {}

bool operator==(const Syntax::Factor& a, const Syntax::Factor& b) {
  return a.kind == b.kind && a.side == b.side && a.index == b.index && a.name == b.name && a.items == b.items;
}

bool operator==(const Syntax& a, const Syntax& b) { return a.factors == b.factors; }

Syntax parse_term(std::string_view text, SourcePos origin) {
  Parser p(lex(text, origin));
  Syntax s = p.chain();
  if (!p.at_end()) throw ParseError(p.peek().pos, "unexpected " + Parser::describe(p.peek()) + " after term");
  return s;
}

Term elaborate(const Tower& tower, const Syntax& syntax, const std::optional<TableOfDimensions>& target,
               const std::optional<TableOfDimensions>& source) {
  return Elaborator(tower).chain(syntax, target, source);
}

Term parse_and_elaborate(const Tower& tower, std::string_view text, const std::optional<TableOfDimensions>& target) {
  return elaborate(tower, parse_term(text), target);
}

std::string print_node(const Tower& tower, const NodePtr& n) {
  if (n->is_cell()) {
    const CellPresentation& p = realization(n->target()).presentation(n->dim(), n->cell());
    if (n->target().is_disk()) return p.word.str();
    std::string out = "eps" + std::to_string(p.leg + 1);
    if (!p.word.is_identity()) out += " * " + p.word.str();
    return out;
  }
  const LiftGenerator& g = tower.generator(n->gen());
  if (identity_args(n, g)) return g.name;
  if (g.target->is_disk()) return print_node(tower, n->args()[0]) + " * " + g.name;
  std::string out = "[";
  for (std::size_t k = 0; k < n->args().size(); ++k) {
    if (k) out += "; ";
    out += print_node(tower, n->args()[k]);
  }
  return out + "] * " + g.name;
}

std::string print_term(const Tower& tower, const Term& t) {
  if (t.is_disk()) return print_node(tower, t.node());
  std::string out = "[";
  for (std::size_t k = 0; k < t.legs.size(); ++k) {
    if (k) out += "; ";
    out += print_node(tower, t.legs[k]);
  }
  return out + "]";
}

Script parse_script(std::string_view text) {
  Script script;
  bool have_dim = false;
  std::size_t line_start = 0;
  int line_no = 1;
  while (line_start <= text.size()) {
    std::size_t end = text.find('\n', line_start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(line_start, end - line_start);
    Parser p(lex(line, {line_no, 1}));
    if (!p.at_end()) {
      Token head = p.expect(Tok::ident, "'dim' or 'lift'");
      if (head.text == "dim") {
        if (have_dim) throw ParseError(head.pos, "duplicate 'dim' line");
        Token n = p.expect(Tok::number);
        script.dim = std::stoi(n.text);
        if (script.dim < 1) throw ParseError(n.pos, "dimension must be at least 1");
        have_dim = true;
      } else if (head.text == "lift") {
        if (!have_dim) throw ParseError(head.pos, "'dim' must come before the first lift");
        ScriptLift l;
        l.pos = head.pos;
        Token name = p.expect(Tok::ident, "a generator name");
        if (!is_valid_name(name.text)) throw ParseError(name.pos, "'" + name.text + "' cannot name a generator");
        l.name = name.text;
        p.expect(Tok::colon);
        SourcePos dpos = p.peek().pos;
        l.dim = p.disk();
        if (l.dim < 1) throw ParseError(dpos, "a lift has dimension at least 1");
        p.expect(Tok::arrow);
        l.target = p.table();
        p.expect(Tok::semi);
        p.keyword("src");
        p.expect(Tok::equals);
        l.src = p.chain();
        p.expect(Tok::semi);
        p.keyword("tgt");
        p.expect(Tok::equals);
        l.tgt = p.chain();
        script.lifts.push_back(std::move(l));
      } else {
        throw ParseError(head.pos, "expected 'dim' or 'lift', found '" + head.text + "'");
      }
      if (!p.at_end()) throw ParseError(p.peek().pos, "unexpected " + Parser::describe(p.peek()) + " at end of line");
    }
    line_start = end + 1;
    ++line_no;
  }
  if (!have_dim) throw ParseError({line_no - 1, 1}, "missing 'dim' line");
  return script;
}

Tower build_tower(const Script& script) {
  Tower tower(script.dim);
  for (const auto& l : script.lifts) {
    TableOfDimensions src_disk = TableOfDimensions::disk(l.dim - 1);
    Term f = elaborate(tower, l.src, l.target, src_disk);
    Term g = elaborate(tower, l.tgt, l.target, src_disk);
    try {
      tower.declare_lift(l.name, f, g);
    } catch (const CheckError&) {
      throw;
    } catch (const Error& e) {
      throw CheckError(l.pos, e.what());
    }
  }
  return tower;
}

Tower load_tower(std::string_view text) { return build_tower(parse_script(text)); }

std::string print_tower(const Tower& tower) {
  std::ostringstream out;
  out << "dim " << tower.truncation() << "\n";
  for (const auto& g : tower.generators()) {
    out << "lift " << g.name << " : D" << g.dim << " -> " << g.target->str() << " ; src = " << print_node(tower, g.src)
        << " ; tgt = " << print_node(tower, g.tgt) << "\n";
  }
  return out.str();
}

}  // namespace infgpd
