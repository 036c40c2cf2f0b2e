#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ggt/errors.hpp"
#include "ggt/json_io.hpp"

using namespace ggt;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPropertyViolated = 1;
constexpr int kExitInputError = 2;
constexpr int kExitBudgetExceeded = 3;

struct Project {
  std::unique_ptr<AmalgamContext> ctx;
  std::vector<AmalgamWord> relators;
  Rational lambda = Rational(1, 6);
  int radius = 4;
  int max_loop_len = 12;
  int step_budget = 100000;
  size_t vertex_budget = 200000;
  std::optional<std::pair<int, int>> grid;  // control complex for `scan`
};

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what());
  }
  return j;
}

Project load_project(const std::string& path) {
  Json j = load_json(path);
  Project p;
  try {
    FiniteGroup A = group_from_json(j.at("A"));
    FiniteGroup B = group_from_json(j.at("B"));
    FiniteGroup C = group_from_json(j.at("C"));
    p.ctx = std::make_unique<AmalgamContext>(std::move(A), std::move(B), std::move(C),
                                             j.at("iotaA").get<std::vector<int>>(),
                                             j.at("iotaB").get<std::vector<int>>());
    if (j.contains("relators"))
      for (const Json& r : j.at("relators")) {
        if (r.is_string())
          p.relators.push_back(parse_word(*p.ctx, r.get<std::string>()));
        else
          p.relators.push_back(word_from_json(*p.ctx, r));
      }
    if (j.contains("lambda")) p.lambda = rat_parse(j.at("lambda").get<std::string>());
    if (j.contains("radius")) p.radius = j.at("radius").get<int>();
    if (j.contains("max_loop_len")) p.max_loop_len = j.at("max_loop_len").get<int>();
    if (j.contains("step_budget")) p.step_budget = j.at("step_budget").get<int>();
    if (j.contains("vertex_budget")) p.vertex_budget = j.at("vertex_budget").get<size_t>();
    if (j.contains("grid")) {
      auto g = j.at("grid").get<std::vector<int>>();
      if (g.size() != 2) throw ParseError("\"grid\" must be [width, height]");
      p.grid = {g[0], g[1]};
    }
  } catch (const Json::exception& e) {
    throw ParseError(std::string("project file: ") + e.what());
  }
  return p;
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Small-cancellation quotients of amalgamated free products: "
               "normal forms, Dehn's algorithm, coset graphs and exact filling norms"};
  app.require_subcommand(1);

  std::string project_path;
  app.add_option("-p,--project", project_path, "project JSON file")->required();
  int workers = 1;
  app.add_option("-w,--workers", workers, "parallelism cap for scans (results are "
                                          "schedule-independent)")
      ->check(CLI::PositiveNumber);

  std::string word_text;
  CLI::App* c_reduce = app.add_subcommand("reduce", "normal form of a word");
  c_reduce->add_option("word", word_text, "word such as \"A3 B1 A2\"")->required();

  app.add_subcommand("symmetrize", "closure of the relators under inversion, cyclic "
                                   "shifts and edge-subgroup conjugation");
  app.add_subcommand("check-smallcancel", "C'(lambda) report for the symmetrized relators");
  app.add_subcommand("build-tree", "Bass-Serre tree ball");
  app.add_subcommand("build-quotient", "quotient coset-graph ball");
  app.add_subcommand("build-complex", "presentation complex ball");
  app.add_subcommand("check-c6", "boundary-arc small cancellation check of the complex ball");
  app.add_subcommand("delta", "four-point hyperbolicity constant of the quotient ball");
  app.add_subcommand("zero-dim", "filling norms of vertex differences vs distances");

  std::string chain_path;
  CLI::App* c_fill = app.add_subcommand("fill", "exact minimal filling of a chain");
  c_fill->add_option("chain", chain_path, "JSON file {\"complex\": ..., \"chain\": ...}")
      ->required();

  std::string csv_path;
  CLI::App* c_scan = app.add_subcommand("scan", "isoperimetric ratios of short loops");
  c_scan->add_option("--csv", csv_path, "also write the per-length table as CSV");

  std::string homotopy_path;
  CLI::App* c_hom = app.add_subcommand("homotopy-check", "verify a chain-homotopy identity");
  c_hom->add_option("data", homotopy_path, "JSON file with f, g, h, Dsrc, Ddst families")
      ->required();

  CLI11_PARSE(app, argc, argv);
  CLI::App* cmd = app.get_subcommands().front();

  try {
    Project p = load_project(project_path);
    const AmalgamContext& ctx = *p.ctx;
    auto symmetrized = [&] { return symmetrize(ctx, p.relators); };

    if (cmd == c_reduce) {
      AmalgamWord w = normal_form(ctx, parse_word(ctx, word_text));
      Json out;
      out["word"] = word_to_json(w);
      out["text"] = format_word(ctx, w);
      out["trivial"] = w.empty();
      print_json(out);
      return kExitOk;
    }
    if (cmd->get_name() == "symmetrize") {
      SymmetrizedSet R = symmetrized();
      Json out;
      Json rel = Json::array();
      for (const AmalgamWord& r : R.relators) rel.push_back(word_to_json(r));
      out["relators"] = rel;
      out["count"] = R.relators.size();
      out["min_length"] = R.min_length;
      out["max_length"] = R.max_length;
      print_json(out);
      return kExitOk;
    }
    if (cmd->get_name() == "check-smallcancel") {
      SymmetrizedSet R = symmetrized();
      CancellationReport rep = check_cprime(R, p.lambda);
      print_json(cancellation_report_to_json(ctx, R, rep));
      return rep.satisfied ? kExitOk : kExitPropertyViolated;
    }
    if (cmd->get_name() == "build-tree") {
      print_json(graph_ball_to_json(ctx, bass_serre_ball(ctx, p.radius, p.vertex_budget)));
      return kExitOk;
    }
    if (cmd->get_name() == "build-quotient") {
      print_json(graph_ball_to_json(
          ctx, cayley_abels_ball(ctx, symmetrized(), p.radius, p.vertex_budget)));
      return kExitOk;
    }
    if (cmd->get_name() == "build-complex") {
      print_json(presentation_ball_to_json(
          ctx, presentation_complex_ball(ctx, symmetrized(), p.radius, p.vertex_budget)));
      return kExitOk;
    }
    if (cmd->get_name() == "check-c6") {
      C6Report rep =
          check_c6_complex(presentation_complex_ball(ctx, symmetrized(), p.radius, p.vertex_budget));
      print_json(c6_report_to_json(rep));
      return rep.satisfied ? kExitOk : kExitPropertyViolated;
    }
    if (cmd->get_name() == "delta") {
      GraphBall b = cayley_abels_ball(ctx, symmetrized(), p.radius, p.vertex_budget);
      Json out;
      out["delta"] = rat_to_string(four_point_delta(b));
      out["vertices"] = b.graph.num_vertices;
      print_json(out);
      return kExitOk;
    }
    if (cmd->get_name() == "zero-dim") {
      GraphBall b = cayley_abels_ball(ctx, symmetrized(), p.radius, p.vertex_budget);
      print_json(distortion_table_to_json(zero_dim_distortion(b, b.base)));
      return kExitOk;
    }
    if (cmd == c_fill) {
      Json j = load_json(chain_path);
      TwoComplexBall X = complex_from_json(j.at("complex"));
      RationalChain c = chain_from_json(j.at("chain"));
      try {
        FillingResult res = filling_norm(X, c);
        Json out = filling_result_to_json(res);
        out["infeasible"] = false;
        out["certificate_verified"] = verify_filling_certificate(X, c, res);
        print_json(out);
        return kExitOk;
      } catch (const Infeasible&) {
        print_json(Json{{"infeasible", true}});
        return kExitOk;
      }
    }
    if (cmd == c_scan) {
      TwoComplexBall X = p.grid
                             ? make_grid_complex(p.grid->first, p.grid->second)
                             : presentation_complex_ball(ctx, symmetrized(), p.radius,
                                                         p.vertex_budget)
                                   .complex;
      IsoperimetricScanReport rep = isoperimetric_scan(X, p.max_loop_len);
      print_json(scan_report_to_json(rep));
      if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        out << scan_report_to_csv(rep);
      }
      return kExitOk;
    }
    if (cmd == c_hom) {
      HomotopyData d = homotopy_data_from_json(load_json(homotopy_path));
      try {
        Rational c = chain_homotopy_check(d);
        print_json(Json{{"verified", true}, {"constant", rat_to_string(c)}});
        return kExitOk;
      } catch (const HomotopyIdentityFails& e) {
        print_json(Json{{"verified", false},
                        {"degree", e.degree},
                        {"column", e.column},
                        {"error", e.what()}});
        return kExitPropertyViolated;
      } catch (const NotChainMap& e) {
        print_json(Json{{"verified", false}, {"error", e.what()}});
        return kExitPropertyViolated;
      }
    }
    std::cerr << "unknown command\n";
    return kExitInputError;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const StepBudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudgetExceeded;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudgetExceeded;
  } catch (const Error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  }
}
