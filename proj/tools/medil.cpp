// medil: dependency graphs, minimum edge clique covers and minimal causal
// models from the command line.
//
// Exit codes: 0 ok, 1 bad input, 2 solver budget exceeded, 3 internal error.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "medil/analysis.hpp"
#include "medil/ecc.hpp"
#include "medil/errors.hpp"
#include "medil/independence.hpp"
#include "medil/io.hpp"
#include "medil/mcm.hpp"
#include "medil/pipeline.hpp"
#include "medil/reference.hpp"

namespace {

using namespace medil;
using io::json;

struct Globals {
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string format = "text";
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Writes to `path`, or stdout when it is empty or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Where --threads 0 means "all cores" for the modules.
IndependenceTestOptions test_options(const Globals& g, double dcorr_threshold, double p_threshold,
                                     std::size_t permutations, bool strict) {
  IndependenceTestOptions o;
  o.dcorr_threshold = dcorr_threshold;
  o.p_threshold = p_threshold;
  o.num_permutations = permutations;
  o.seed = g.seed;
  o.rule = strict ? PValueRule::Exceeds : PValueRule::AtLeast;
  o.threads = g.threads;
  return o;
}

SolverBudget solver_budget(std::optional<double> seconds, std::optional<std::uint64_t> nodes) {
  SolverBudget b;
  if (seconds) b.time_limit = std::chrono::milliseconds(static_cast<std::int64_t>(*seconds * 1000));
  b.node_limit = nodes;
  return b;
}

std::string report_text(const IndependenceTestReport& r, const Globals& g) {
  if (g.format == "json") return dump(io::to_json(r));
  std::ostringstream out;
  io::write_report_csv(out, r);
  return out.str();
}

void write_model_outputs(const MeDILCausalModel& m, const std::string& out_path,
                         const std::string& dot_path) {
  emit(out_path, dump(io::to_json(m)));
  if (!dot_path.empty()) {
    std::ostringstream dot;
    io::write_dot(dot, m);
    emit(dot_path, dot.str());
  }
}

std::string stats_text(const MeDILCausalModel& m, const Globals& g) {
  if (g.format == "json") return dump(io::stats_json(m));
  std::vector<std::string> mnames, lnames;
  for (std::size_t b = 0; b < m.num_measurements(); ++b) mnames.push_back(m.measurement_name(b));
  for (std::size_t a = 0; a < m.num_latents(); ++a) lnames.push_back(m.latent_name(a));
  std::ostringstream out;
  out << "# indegree histogram\n";
  io::write_histogram_csv(out, indegree_histogram(m), "indegree");
  out << "\n# outdegree histogram\n";
  io::write_histogram_csv(out, outdegree_histogram(m), "outdegree");
  out << "\n# shared latents\n";
  io::write_matrix_csv(out, shared_latents_matrix(m), mnames);
  out << "\n# shared measurements\n";
  io::write_matrix_csv(out, shared_measurements_matrix(m), lnames);
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimal MeDIL causal models from measurement data"};
  app.require_subcommand(1);
  Globals globals;
  app.add_option("--seed", globals.seed, "Random seed")->capture_default_str();
  app.add_option("--threads", globals.threads, "Worker threads, 0 = all cores (results do not depend on it)")
      ->capture_default_str();
  app.add_option("--format", globals.format, "Report/stats output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  // Shared independence-test flags.
  double dcorr_threshold = 0.1, p_threshold = 0.1;
  std::size_t permutations = 1000;
  bool strict = false, header = false;
  auto add_test_flags = [&](CLI::App* cmd) {
    cmd->add_option("--dcorr-threshold", dcorr_threshold,
                    "Independent only if dCorr is below this")
        ->capture_default_str();
    cmd->add_option("--p-threshold", p_threshold,
                    "Independent only if the p-value is above this")
        ->capture_default_str();
    cmd->add_option("--permutations", permutations, "Permutations per pair")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--strict-pvalue", strict,
                  "Count only permutations with strictly larger dCorr (default counts ties)");
    cmd->add_flag("--header", header, "Sample file starts with a row of column labels");
  };

  std::optional<double> budget_seconds;
  std::optional<std::uint64_t> node_limit;
  std::string objective_name = "clique";
  auto add_solver_flags = [&](CLI::App* cmd) {
    cmd->add_option("--objective", objective_name, "clique (fewest latents) or assignment (fewest edges)")
        ->check(CLI::IsMember({"clique", "assignment"}))
        ->capture_default_str();
    cmd->add_option("--budget", budget_seconds, "Solver time limit in seconds (default: none)");
    cmd->add_option("--node-limit", node_limit, "Solver search-node limit (default: none)");
  };

  std::string input, output, report_path, dot_path, from = "auto";

  auto* udg = app.add_subcommand("udg", "Estimate the dependency graph from samples");
  udg->add_option("samples", input, "Sample file (CSV)")->required();
  udg->add_option("-o,--output", output, "Edge list output (default: stdout)");
  udg->add_option("--report", report_path, "Per-pair test report output");
  add_test_flags(udg);

  auto* ecc = app.add_subcommand("ecc", "Minimum edge clique cover of a dependency graph");
  ecc->add_option("graph", input, "Graph file (edge list or dense 0/1 CSV)")->required();
  ecc->add_option("-o,--output", output, "Cover document output (default: stdout)");
  add_solver_flags(ecc);

  auto* mcm = app.add_subcommand("mcm", "Build the minimal causal model");
  mcm->add_option("input", input, "Samples, graph or cover document")->required();
  mcm->add_option("--from", from, "Input kind; auto: '{' means cover, 'n' header means graph, else samples")
      ->check(CLI::IsMember({"auto", "samples", "udg", "cover"}))
      ->capture_default_str();
  mcm->add_option("-o,--output", output, "Model document output (default: stdout)");
  mcm->add_option("--dot", dot_path, "Also write a Graphviz rendering here");
  mcm->add_option("--report", report_path, "Per-pair test report output (sample input only)");
  add_test_flags(mcm);
  add_solver_flags(mcm);

  auto* stats = app.add_subcommand("stats", "Degree histograms and shared-count matrices");
  stats->add_option("model", input, "Model document")->required();
  stats->add_option("-o,--output", output, "Output (default: stdout)");

  std::string structure = "four", link = "linear";
  std::size_t num_samples = 2000;
  double weight = 1.0, noise = 0.1;
  bool no_header = false;
  auto* sim = app.add_subcommand("simulate", "Draw samples from a linear-Gaussian model");
  sim->add_option("--structure", structure,
                  "four (4 measurements, 2 latents), cycle (6-cycle with a chord, 7 latents) or a model document")
      ->capture_default_str();
  sim->add_option("-n,--samples", num_samples, "Number of observations")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));
  sim->add_option("--link", link, "linear or quadratic (latent enters squared)")
      ->check(CLI::IsMember({"linear", "quadratic"}))
      ->capture_default_str();
  sim->add_option("--weight", weight, "Coefficient on every edge")->capture_default_str();
  sim->add_option("--noise", noise, "Noise standard deviation")->capture_default_str();
  sim->add_flag("--no-header", no_header, "Omit the label row");
  sim->add_option("-o,--output", output, "Sample file output (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*udg) {
      std::istringstream in(slurp(input));
      auto samples = io::read_samples(in, header);
      auto [g, report] =
          estimate_udg(samples, test_options(globals, dcorr_threshold, p_threshold, permutations, strict));
      std::ostringstream out;
      io::write_graph(out, g);
      emit(output, out.str());
      if (!report_path.empty()) emit(report_path, report_text(report, globals));
    } else if (*ecc) {
      std::istringstream in(slurp(input));
      auto g = io::read_graph(in);
      auto cover = min_ecc(g, io::parse_objective(objective_name), solver_budget(budget_seconds, node_limit));
      if (!verify_cover(g, cover).ok()) throw InvariantViolation("solver returned an invalid cover");
      emit(output, dump(io::to_json(cover, g.num_vertices())));
    } else if (*mcm) {
      const std::string text = slurp(input);
      std::string kind = from;
      if (kind == "auto") {
        std::istringstream probe(text);
        std::string tok;
        while (probe >> tok && tok.front() == '#') probe.ignore(1 << 30, '\n');
        kind = tok.rfind('{', 0) == 0 ? "cover" : tok == "n" ? "udg" : "samples";
      }
      std::istringstream in(text);
      const auto objective = io::parse_objective(objective_name);
      const auto budget = solver_budget(budget_seconds, node_limit);
      MeDILCausalModel model;
      if (kind == "cover") {
        const auto doc = io::parse_json(in);
        auto cover = io::cover_from_json(doc);
        model = build_mcm(cover, io::cover_num_vertices(doc, cover));
      } else if (kind == "udg") {
        auto g = io::read_graph(in);
        model = build_mcm(min_ecc(g, objective, budget), g.num_vertices());
      } else {
        auto samples = io::read_samples(in, header);
        auto res = run_pipeline(samples, objective,
                                test_options(globals, dcorr_threshold, p_threshold, permutations, strict),
                                budget);
        if (!report_path.empty()) emit(report_path, report_text(res.report, globals));
        model = std::move(res.model);
      }
      if (!validate_mcm(model).ok()) throw InvariantViolation("built model violates the structural constraints");
      write_model_outputs(model, output, dot_path);
    } else if (*stats) {
      std::istringstream in(slurp(input));
      auto model = io::model_from_json(io::parse_json(in));
      emit(output, stats_text(model, globals));
    } else if (*sim) {
      MeDILCausalModel s;
      if (structure == "four" || structure == "cycle") {
        s = reference::by_name(structure);
      } else {
        std::istringstream in(slurp(structure));
        s = io::model_from_json(io::parse_json(in));
      }
      auto model = SyntheticModel::uniform(s, weight, noise,
                                           link == "quadratic" ? Link::Quadratic : Link::Linear);
      auto samples = simulate(model, num_samples, globals.seed, globals.threads ? globals.threads : 1);
      std::ostringstream out;
      io::write_samples(out, samples, !no_header);
      emit(output, out.str());
    }
  } catch (const InputError& e) {
    std::cerr << "medil: " << e.what() << '\n';
    return 1;
  } catch (const BudgetExceeded& e) {
    std::cerr << "medil: " << e.what() << " (best cover " << e.upper_bound() << ", proven lower bound "
              << e.lower_bound() << ")\n";
    return 2;
  } catch (const InvariantViolation& e) {
    std::cerr << "medil: internal error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "medil: internal error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
