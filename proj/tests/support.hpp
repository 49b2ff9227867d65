#pragma once

#include <memory>
#include <string>

#include "infgpd/dsl.hpp"
#include "infgpd/model.hpp"
#include "infgpd/rewrite.hpp"
#include "infgpd/stdlib.hpp"

namespace infgpd::testing {

// Presheaf action of a raw composite, factor by factor, without normalizing.
inline Cells eval_raw(const Model& m, const RawChain& chain, const Cells& input) {
  Cells c = input;
  for (const RawFactor& f : chain.factors) {
    switch (f.kind) {
      case RawFactor::Kind::letter:
        c = {m.carrier().face(f.side, f.index, c.at(0))};
        break;
      case RawFactor::Kind::eps:
        c = {c.at(f.index - 1)};
        break;
      case RawFactor::Kind::id:
        break;
      case RawFactor::Kind::gen:
        c = {m.apply(f.gen, c)};
        break;
      case RawFactor::Kind::tuple: {
        Cells out;
        for (const RawChain& item : f.items) out.push_back(eval_raw(m, item, c).at(0));
        c = out;
        break;
      }
    }
  }
  return c;
}

inline std::string rename_all(const std::string& text, const std::string& from, const std::string& to) {
  std::string out;
  for (std::size_t pos = 0;;) {
    std::size_t at = text.find(from, pos);
    out += text.substr(pos, at == std::string::npos ? std::string::npos : at - pos);
    if (at == std::string::npos) break;
    out += to;
    pos = at + from.size();
  }
  return out;
}

// stdlib(n) followed by a second copy whose generators carry the suffix _b
inline std::shared_ptr<const Tower> doubled_stdlib(int n) {
  auto a = stdlib(n);
  std::string script = print_tower(*a);
  std::string copy;
  std::size_t body = script.find('\n') + 1;
  std::string lifts = script.substr(body);
  for (GenId h = a->size() - 1; h >= 0; --h) {
    const std::string& name = a->generator(h).name;
    lifts = rename_all(lifts, name + " ", name + "_b ");
    lifts = rename_all(lifts, name + ";", name + "_b;");
    lifts = rename_all(lifts, name + "]", name + "_b]");
    lifts = rename_all(lifts, name + "\n", name + "_b\n");
  }
  return std::make_shared<const Tower>(load_tower(script + lifts));
}

}  // namespace infgpd::testing
