// Command-line front end. Exit codes: 0 success, 1 validation failure,
// 2 search budget exhausted.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "reebcat/interleave.hpp"
#include "reebcat/io.hpp"

using namespace reebcat;

namespace {

constexpr int kInvalid = 1;
constexpr int kBudget = 2;

struct Failure {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{kInvalid, "cannot read " + path};
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Failure{kInvalid, "cannot write " + path};
  out << text;
}

GraphRef load_graph(const std::string& path) {
  try {
    RGraph g = parse_rgraph(read_file(path));
    auto report = validate(g);
    if (!report.ok()) throw Failure{kInvalid, path + ": invalid graph\n" + report.describe()};
    return share(std::move(g));
  } catch (const ParseError& e) {
    throw Failure{kInvalid, path + ": " + e.what()};
  }
}

Rational number(const std::string& text, const char* what) {
  try {
    return parse_rational(text);
  } catch (const ParseError&) {
    throw Failure{kInvalid, std::string("bad ") + what + " '" + text + "'"};
  }
}

std::optional<Rational> bound(const std::string& text) {
  if (text == "-inf" || text == "inf" || text == "+inf") return std::nullopt;
  return number(text, "interval bound");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reeb graphs, smoothings and interleavings"};
  app.require_subcommand(1);

  std::string file;
  std::string file2;
  std::string out_path;

  auto* validate_cmd = app.add_subcommand("validate", "Check an R-graph document");
  validate_cmd->add_option("FILE", file)->required();
  bool print = false;
  validate_cmd->add_flag("--print", print, "Write the normalized document instead of a summary");

  auto* reeb_cmd = app.add_subcommand("reeb", "Reeb graph of a scalar field on a 2-complex");
  reeb_cmd->add_option("FIELD_FILE", file)->required();
  reeb_cmd->add_option("-o,--output", out_path);

  std::string eps_text;
  std::string algo = "sweep";
  std::string zeta_path;
  bool minimal = false;
  auto* smooth_cmd = app.add_subcommand("smooth", "eps-smoothing of an R-graph");
  smooth_cmd->add_option("FILE", file)->required();
  smooth_cmd->add_option("--epsilon", eps_text)->required();
  smooth_cmd->add_option("--algo", algo)->check(CLI::IsMember({"sweep", "naive"}));
  smooth_cmd->add_option("--emit-zeta", zeta_path, "Write the canonical map to this file");
  smooth_cmd->add_flag("--reduce", minimal, "Drop regular levels (zeta is then not emitted)");
  smooth_cmd->add_option("-o,--output", out_path);

  std::string interval_text;
  auto* eval_cmd = app.add_subcommand("cosheaf-eval", "Evaluate the Reeb cosheaf on an open interval");
  eval_cmd->add_option("FILE", file)->required();
  eval_cmd->add_option("--interval", interval_text, "LO,HI with -inf and inf allowed")->required();

  std::string alpha_path;
  std::string beta_path;
  auto* check_cmd = app.add_subcommand("check-interleave", "Verify an eps-interleaving");
  check_cmd->add_option("F", file)->required();
  check_cmd->add_option("G", file2)->required();
  check_cmd->add_option("--epsilon", eps_text)->required();
  check_cmd->add_option("--alpha", alpha_path, "Map F -> U_eps G")->required();
  check_cmd->add_option("--beta", beta_path, "Map G -> U_eps F")->required();

  std::string tol_text;
  std::size_t budget = kDefaultSearchBudget;
  auto* distance_cmd = app.add_subcommand("distance", "Bracket the interleaving distance");
  distance_cmd->add_option("F", file)->required();
  distance_cmd->add_option("G", file2)->required();
  distance_cmd->add_option("--tol", tol_text)->required();
  distance_cmd->add_option("--budget", budget, "Search nodes per probe");
  distance_cmd->add_option("--emit-alpha", alpha_path, "Write alpha of the witness");
  distance_cmd->add_option("--emit-beta", beta_path, "Write beta of the witness");

  bool flat = false;
  auto* dot_cmd = app.add_subcommand("export-dot", "Graphviz rendering");
  dot_cmd->add_option("FILE", file)->required();
  dot_cmd->add_flag("--no-rank", flat, "Omit same-rank hints");
  dot_cmd->add_option("-o,--output", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate_cmd) {
      GraphRef g = load_graph(file);
      if (print) {
        std::cout << emit_rgraph(*g);
        return 0;
      }
      std::cout << "valid: " << g->num_vertices() << " vertices, " << g->num_edges() << " edges, "
                << g->num_levels() << " levels\n";
    } else if (*reeb_cmd) {
      ScalarField2 k;
      try {
        k = parse_field(read_file(file));
      } catch (const ParseError& e) {
        throw Failure{kInvalid, file + ": " + e.what()};
      }
      write_output(out_path, emit_rgraph(reeb_of_complex(k).graph));
    } else if (*smooth_cmd) {
      GraphRef g = load_graph(file);
      const Rational eps = number(eps_text, "epsilon");
      if (eps < Rational(0)) throw Failure{kInvalid, "epsilon must be non-negative"};
      SmoothingResult u = algo == "naive" ? smooth_naive(g, eps) : smooth_sweep(g, eps);
      write_output(out_path, emit_rgraph(minimal ? reduce(*u.smoothed).coarse : *u.smoothed));
      if (!zeta_path.empty()) write_output(zeta_path, emit_morphism(u.zeta));
    } else if (*eval_cmd) {
      GraphRef g = load_graph(file);
      const auto comma = interval_text.find(',');
      if (comma == std::string::npos) throw Failure{kInvalid, "interval must be LO,HI"};
      Interval i{bound(interval_text.substr(0, comma)), bound(interval_text.substr(comma + 1)), false};
      if (i.lo && i.hi && !(*i.lo < *i.hi)) i = Interval::none();
      const Cosheaf f = reeb_cosheaf(*g);
      std::cout << describe(evaluate(f, i), f);
    } else if (*check_cmd) {
      GraphRef f = load_graph(file);
      GraphRef g = load_graph(file2);
      const Rational eps = number(eps_text, "epsilon");
      if (eps < Rational(0)) throw Failure{kInvalid, "epsilon must be non-negative"};
      SettingRef s = make_setting(f, g, eps);
      Certificate c;
      try {
        c = Certificate{s, parse_morphism(read_file(alpha_path), f, s->ug.smoothed),
                        parse_morphism(read_file(beta_path), g, s->uf.smoothed)};
      } catch (const ParseError& e) {
        throw Failure{kInvalid, e.what()};
      }
      auto v = verify_certificate(c);
      if (!v.ok) throw Failure{kInvalid, "not an interleaving: " + v.diagnostic.value_or("")};
      std::cout << "ok: " << eps << "-interleaving verified\n";
    } else if (*distance_cmd) {
      GraphRef f = load_graph(file);
      GraphRef g = load_graph(file2);
      const Rational tol = number(tol_text, "tolerance");
      if (!(Rational(0) < tol)) throw Failure{kInvalid, "tolerance must be positive"};
      DistanceBracket b = distance_bracket(f, g, tol, budget);
      if (b.infinite) {
        std::cout << "infinite\n";
        return 0;
      }
      std::cout << "[" << b.lower << ", " << b.upper << "]\n";
      for (const Probe& p : b.transcript) {
        std::cout << "  eps " << p.eps << ": " << to_string(p.status) << " (" << p.nodes << " nodes)\n";
      }
      if (b.witness) {
        if (!alpha_path.empty()) write_output(alpha_path, emit_morphism(b.witness->alpha));
        if (!beta_path.empty()) write_output(beta_path, emit_morphism(b.witness->beta));
      }
      if (b.unknown_gaps) throw Failure{kBudget, "search budget exhausted; bracket has unknown gaps"};
    } else if (*dot_cmd) {
      write_output(out_path, export_dot(*load_graph(file), {!flat}));
    }
  } catch (const Failure& f) {
    std::cerr << f.message << '\n';
    return f.code;
  } catch (const ResourceLimitError& e) {
    std::cerr << e.what() << '\n';
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return 0;
}
