#include "infgpd/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

#include "infgpd/dsl.hpp"
#include "infgpd/gpdmodel.hpp"
#include "infgpd/homotopy.hpp"
#include "infgpd/model.hpp"
#include "infgpd/stdlib.hpp"

namespace infgpd {

namespace {

using nlohmann::json;

// exit codes carried by exceptions
struct Failure {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& message) { throw Failure{code, message}; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(exit_file, path + ": cannot read file");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string position(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

// JSON syntax is checked here so that malformed files exit as parse errors
void check_json_syntax(const std::string& path, const std::string& text) {
  try {
    json parsed = json::parse(text);
    (void)parsed;
  } catch (const json::parse_error& e) {
    std::string what = e.what();
    std::size_t cut = what.find("syntax error");
    fail(exit_parse, path + ": " + position(text, e.byte == 0 ? 0 : e.byte - 1) + ": " +
                         (cut == std::string::npos ? what : what.substr(cut)));
  }
}

std::shared_ptr<const Tower> load_tower_file(const std::string& path) {
  std::string text = read_file(path);
  try {
    return std::make_shared<const Tower>(load_tower(text));
  } catch (const ParseError& e) {
    fail(exit_parse, path + ": " + e.what());
  } catch (const CheckError& e) {
    fail(exit_check, path + ": " + e.what());
  } catch (const Error& e) {
    fail(exit_check, path + ": " + e.what());
  }
}

std::shared_ptr<StrictStructure> builtin(const std::string& kind, const std::string& arg) {
  try {
    if (kind == "kg1") return kg1_structure(parse_group(arg));
    if (kind == "discrete") return discrete_structure(std::stoi(arg));
    if (kind == "kan") {
      std::size_t comma = arg.find(',');
      if (comma == std::string::npos) fail(exit_parse, "--kan expects GROUP,N");
      return kan_structure(parse_group(arg.substr(0, comma)), std::stoi(arg.substr(comma + 1)));
    }
    if (kind == "xmod") {
      std::string text = read_file(arg);
      check_json_syntax(arg, text);
      return crossed_module_structure(parse_crossed_module(text));
    }
  } catch (const std::invalid_argument&) {
    fail(exit_parse, "--" + kind + ": expected a number in '" + arg + "'");
  }
  fail(exit_parse, "unknown model kind '" + kind + "'");
}

// a model file, or kind:argument for a builtin structure
Model load_model(const std::string& spec, const std::shared_ptr<const Tower>& tower) {
  std::size_t colon = spec.find(':');
  std::string kind = colon == std::string::npos ? "" : spec.substr(0, colon);
  try {
    if (kind == "kg1" || kind == "kan" || kind == "discrete" || kind == "xmod")
      return build_strict(builtin(kind, spec.substr(colon + 1)), tower);
    std::string text = read_file(spec);
    check_json_syntax(spec, text);
    return model_from_json(text, tower);
  } catch (const Error& e) {
    fail(exit_check, spec + ": " + e.what());
  }
}

struct Globals {
  std::string format = "text";
  unsigned seed = 0;
  int dim = 3;
};

void emit(std::ostream& out, const Globals& g, const std::string& text, const json& data) {
  if (g.format == "json")
    out << data.dump(2) << "\n";
  else
    out << text;
}

std::string group_line(int n, const FiniteGroup& g) {
  std::ostringstream s;
  s << "pi_" << n << " = " << g.name << " (order " << g.order() << ", " << (g.is_abelian() ? "abelian" : "nonabelian")
    << ")\n";
  return s.str();
}

json group_json(int n, const FiniteGroup& g) {
  return {{"n", n}, {"group", g.name}, {"order", g.order()}, {"abelian", g.is_abelian()}, {"table", g.mul}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite models of weak infinity-groupoids", "infgpd"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", g.seed, "seed for randomized checks");
  app.add_option("--dim", g.dim, "truncation dimension");

  std::string tower_path, model_spec, out_path, term_text, src_text, tgt_text, target_text, file_path;
  std::string kg1, kan, discrete, xmod;
  int n = 1, i = 0, x = 0, gamma = 0, u = 0, v = 0;
  std::optional<int> base;

  auto add_model_flags = [&](CLI::App* c) {
    c->add_option("model", model_spec, "model file or kind:arg");
    c->add_option("--kg1", kg1, "KG1 of a group");
    c->add_option("--kan", kan, "K(A, n) as GROUP,N");
    c->add_option("--discrete", discrete, "discrete model on k points");
    c->add_option("--xmod", xmod, "crossed module file");
  };

  auto* check = app.add_subcommand("check", "parse and validate a tower script");
  check->add_option("tower", tower_path)->required();
  auto* lib = app.add_subcommand("stdlib", "emit the standard library as a tower script");
  lib->add_option("--out", out_path);
  auto* normalize = app.add_subcommand("normalize", "print the normal form of a term");
  normalize->add_option("tower", tower_path)->required();
  normalize->add_option("--term", term_text)->required();
  normalize->add_option("--target", target_text, "target table such as 'D1 +0 D1'");
  auto* adm = app.add_subcommand("admissible", "decide admissibility of a pair");
  adm->add_option("tower", tower_path)->required();
  adm->add_option("--src", src_text)->required();
  adm->add_option("--tgt", tgt_text)->required();
  adm->add_option("--target", target_text, "target table such as 'D1 +0 D1'");
  auto* mcheck = app.add_subcommand("model-check", "check the equations of a model");
  mcheck->add_option("tower", tower_path)->required();
  add_model_flags(mcheck);
  auto* pi = app.add_subcommand("pi", "homotopy group of a model");
  pi->add_option("tower", tower_path)->required();
  add_model_flags(pi);
  pi->add_option("--n", n);
  pi->add_option("--base", base, "base cell of dimension n-1");
  auto* weq = app.add_subcommand("weq", "weak equivalence report for a morphism");
  weq->add_option("tower", tower_path)->required();
  weq->add_option("morphism", file_path)->required();
  auto* fund = app.add_subcommand("fundamental", "fundamental model of a groupoid and the comparison");
  fund->add_option("groupoid", file_path)->required();
  auto* gpi = app.add_subcommand("gpd-pi", "homotopy groups of a groupoid through loop objects");
  gpi->add_option("groupoid", file_path)->required();
  gpi->add_option("--x", x);
  gpi->add_option("--n", n);
  auto* div = app.add_subcommand("divide", "division lemma with L o K verification");
  div->add_option("tower", tower_path)->required();
  add_model_flags(div);
  div->add_option("--n", n)->required();
  div->add_option("--i", i)->required();
  div->add_option("--gamma", gamma)->required();
  div->add_option("--u", u)->required();
  div->add_option("--v", v)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "usage: " << e.what() << "\n";
    return exit_parse;
  }

  auto model_from_flags = [&](const std::shared_ptr<const Tower>& tower) {
    int given = !model_spec.empty() + !kg1.empty() + !kan.empty() + !discrete.empty() + !xmod.empty();
    if (given != 1) fail(exit_parse, "give exactly one model: a file, --kg1, --kan, --discrete or --xmod");
    if (!kg1.empty()) return load_model("kg1:" + kg1, tower);
    if (!kan.empty()) return load_model("kan:" + kan, tower);
    if (!discrete.empty()) return load_model("discrete:" + discrete, tower);
    if (!xmod.empty()) return load_model("xmod:" + xmod, tower);
    return load_model(model_spec, tower);
  };
  auto target = [&]() -> std::optional<TableOfDimensions> {
    if (target_text.empty()) return std::nullopt;
    try {
      return TableOfDimensions::parse(target_text);
    } catch (const Error& e) {
      fail(exit_parse, std::string("--target: ") + e.what());
    }
  };
  auto term = [&](const Tower& tower, const std::string& text, const char* what) {
    try {
      return parse_and_elaborate(tower, text, target());
    } catch (const ParseError& e) {
      fail(exit_parse, std::string(what) + ": " + e.what());
    } catch (const Error& e) {
      fail(exit_check, std::string(what) + ": " + e.what());
    }
  };

  try {
    if (*check) {
      auto tower = load_tower_file(tower_path);
      int levels = tower->max_level();
      std::ostringstream s;
      s << tower->size() << " generators, levels 1-" << levels << ", all admissible\n";
      emit(out, g, s.str(), {{"generators", tower->size()}, {"levels", levels}, {"admissible", true}});
    } else if (*lib) {
      if (g.dim < 1) fail(exit_check, "--dim must be at least 1");
      std::string text = print_tower(*stdlib(g.dim));
      if (out_path.empty()) {
        out << text;
      } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) fail(exit_file, out_path + ": cannot write file");
        f << text;
      }
    } else if (*normalize) {
      auto tower = load_tower_file(tower_path);
      Term t = term(*tower, term_text, "--term");
      std::string printed = print_term(*tower, t);
      emit(out, g, printed + "\n", {{"normal_form", printed}, {"target", t.target->str()}});
    } else if (*adm) {
      auto tower = load_tower_file(tower_path);
      Term f = term(*tower, src_text, "--src"), h = term(*tower, tgt_text, "--tgt");
      Verdict verdict = admissible(*tower, f, h);
      emit(out, g, verdict ? "admissible\n" : "not admissible: " + verdict.reason + "\n",
           {{"admissible", verdict.ok}, {"reason", verdict.reason}});
      return verdict ? exit_ok : exit_check;
    } else if (*mcheck) {
      auto tower = load_tower_file(tower_path);
      Model m = model_from_flags(tower);
      ModelReport r = check_model(m);
      json data{{"ok", r.ok()}, {"checked", r.checked}, {"violations", json::array()}};
      for (const auto& viol : r.violations)
        data["violations"].push_back({{"generator", viol.generator}, {"input", viol.input}, {"message", viol.message}});
      emit(out, g, r.str(), data);
      return r.ok() ? exit_ok : exit_check;
    } else if (*pi) {
      auto tower = load_tower_file(tower_path);
      Model m = model_from_flags(tower);
      PregroupoidBundle b = bundle_of(*tower);
      if (n == 0) {
        int k = pi0(m).size();
        emit(out, g, "pi_0 = " + std::to_string(k) + " components\n", {{"n", 0}, {"components", k}});
      } else {
        FiniteGroup group = base ? pi_n_at(m, b, n, *base) : pi_n(m, b, n, 0);
        emit(out, g, group_line(n, group), group_json(n, group));
      }
    } else if (*weq) {
      auto tower = load_tower_file(tower_path);
      std::string text = read_file(file_path);
      check_json_syntax(file_path, text);
      json j = json::parse(text);
      std::vector<std::vector<int>> cells;
      std::string source_spec, target_spec;
      try {
        source_spec = j.at("source").get<std::string>();
        target_spec = j.at("target").get<std::string>();
        cells = j.at("cells").get<std::vector<std::vector<int>>>();
      } catch (const json::exception& e) {
        fail(exit_check, file_path + ": malformed morphism: " + e.what());
      }
      Model s = load_model(source_spec, tower), t = load_model(target_spec, tower);
      WeakEquivReport r = weak_equiv(ModelMorphism{&s, &t, cells}, bundle_of(*tower));
      json data{{"conditions", {r.condition[0], r.condition[1], r.condition[2], r.condition[3]}},
                {"weak_equivalence", r.condition[0]}};
      emit(out, g, r.str(), data);
    } else if (*fund) {
      std::string text = read_file(file_path);
      check_json_syntax(file_path, text);
      FiniteGroupoid xg = groupoid_from_json(text);
      TowerInterpretation k = interpret_tower(stdlib(g.dim));
      ComparisonReport r = compare(xg, k);
      emit(out, g, r.str() + "comparison holds\n", {{"components", r.components}, {"pi_1", r.pi1}, {"lines", r.lines}});
    } else if (*gpi) {
      std::string text = read_file(file_path);
      check_json_syntax(file_path, text);
      FiniteGroupoid xg = groupoid_from_json(text);
      if (x < 0 || x >= xg.objects) fail(exit_check, "--x: no object " + std::to_string(x));
      TowerInterpretation k = interpret_tower(stdlib(std::max(g.dim, 2)));
      if (n == 0) {
        int c = xg.component_count();
        emit(out, g, "pi_0 = " + std::to_string(c) + " components\n", {{"n", 0}, {"components", c}});
      } else {
        FiniteGroup group = quillen_pi({xg, x}, n, k);
        emit(out, g, group_line(n, group), group_json(n, group));
      }
    } else if (*div) {
      auto tower = load_tower_file(tower_path);
      Model m = model_from_flags(tower);
      Division d = divide(m, bundle_of(*tower), n, i, gamma, u, v);
      std::ostringstream s;
      s << "K: classes of " << u << " -> " << v << " to classes of " << d.whiskered_u << " -> " << d.whiskered_v << "\n";
      for (auto [a, b] : d.k) s << "  K(" << a << ") = " << b << "\n";
      for (auto [a, b] : d.l) s << "  L(" << a << ") = " << b << "\n";
      s << "correction liftings: " << d.auto_lifts.size() << "\n";
      s << "L o K = id and K o L = id on " << d.domain.size() << " classes\n";
      json data{{"k", d.k}, {"l", d.l}, {"auto_lifts", d.auto_lifts}, {"classes", d.domain.size()}, {"verified", true}};
      emit(out, g, s.str(), data);
    }
  } catch (const Failure& f) {
    err << f.message << "\n";
    return f.code;
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return exit_parse;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_check;
  }
  return exit_ok;
}

}  // namespace infgpd
