#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "infgpd/term.hpp"

namespace infgpd {

struct SourcePos {
  int line = 1;
  int col = 1;
};

// Malformed text.
class ParseError : public Error {
 public:
  ParseError(SourcePos pos, const std::string& msg);
  SourcePos pos;
};

// Well-formed text that fails typing or admissibility.
class CheckError : public Error {
 public:
  CheckError(SourcePos pos, const std::string& msg);
  SourcePos pos;
};

/// Composite f1 * f2 * ... * fk; fk is applied first.
struct Syntax {
  struct Factor {
    enum class Kind { letter, eps, id, name, tuple, group };
    Kind kind = Kind::name;
    Side side = Side::source;  // letter
    int index = 0;             // letter dimension or 1-based leg
    std::string name;
    std::vector<Syntax> items;  // tuple components, or the grouped chain
    SourcePos pos;
  };
  std::vector<Factor> factors;
  SourcePos pos;
};

bool operator==(const Syntax& a, const Syntax& b);
bool operator==(const Syntax::Factor& a, const Syntax::Factor& b);

Syntax parse_term(std::string_view text, SourcePos origin = {});
Term elaborate(const Tower& tower, const Syntax& syntax, const std::optional<TableOfDimensions>& target = std::nullopt,
               const std::optional<TableOfDimensions>& source = std::nullopt);
Term parse_and_elaborate(const Tower& tower, std::string_view text,
                         const std::optional<TableOfDimensions>& target = std::nullopt);

std::string print_node(const Tower& tower, const NodePtr& n);
std::string print_term(const Tower& tower, const Term& t);

struct ScriptLift {
  std::string name;
  int dim = 0;
  TableOfDimensions target;
  Syntax src;
  Syntax tgt;
  SourcePos pos;
};

struct Script {
  int dim = 0;
  std::vector<ScriptLift> lifts;
};

Script parse_script(std::string_view text);
Tower build_tower(const Script& script);
Tower load_tower(std::string_view text);
std::string print_tower(const Tower& tower);

}  // namespace infgpd
