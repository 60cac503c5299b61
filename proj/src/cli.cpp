#include "ctcp/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <vector>

#include "ctcp/errors.hpp"
#include "ctcp/instance.hpp"
#include "ctcp/lpsolve.hpp"
#include "ctcp/rounding.hpp"
#include "ctcp/verify.hpp"
#include "text_format.hpp"

namespace ctcp::cli {
namespace {

struct Config {
  std::string input = "-";
  std::string output = "-";
  double alpha = kDefaultAlpha;
  EuclideanParams random;
  int k = 3;
  double eps = 0.1;
  std::string name;
  bool header = false;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

Instance read_input(const std::string& path, std::istream& in) {
  if (path == "-") return parse_instance(in);
  std::ifstream file(path);
  if (!file) throw UsageError("cannot open input file '" + path + "'");
  return parse_instance(file);
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw UsageError("--alpha must lie in (0, 1]");
}

int dispatch(const std::string& command, const Config& cfg, std::istream& in, std::ostream& out) {
  if (command == "gen-random") {
    write_instance(out, gen_random_euclidean(cfg.random));
    return kExitOk;
  }
  if (command == "gen-gap") {
    write_instance(out, gen_gap(cfg.k, cfg.eps));
    return kExitOk;
  }

  const Instance inst = read_input(cfg.input, in);
  if (command == "validate") {
    const ValidationReport report = validate(inst);
    out << format_validation(report);
    return report.ok ? kExitOk : kExitInvalid;
  }
  if (command == "lp") {
    out << format_lp_solution(solve_lp(inst));
    return kExitOk;
  }
  if (command == "solve") {
    check_alpha(cfg.alpha);
    out << format_solution(inst, solve(inst, cfg.alpha));
    return kExitOk;
  }
  if (command == "oracle") {
    if (auto report = validate(inst); !report.ok) {
      throw InvalidInstance("instance failed validation:\n" + format_validation(report));
    }
    const std::size_t n = inst.vertex_count();
    out << "lp_greedy " << detail::fixed6(solve_lp(inst, {.validate = false}).objective) << '\n';
    if (n <= 10) {
      out << "lp_oracle " << detail::fixed6(solve_lp_oracle(inst)) << '\n';
    } else {
      out << "lp_oracle skipped (n > 10)\n";
    }
    if (n <= kBruteForceMaxVertices) {
      out << "brute_force " << detail::fixed6(brute_force_opt(inst).cost) << '\n';
    } else {
      out << "brute_force skipped (n > " << kBruteForceMaxVertices << ")\n";
    }
    return kExitOk;
  }
  if (command == "report") {
    check_alpha(cfg.alpha);
    const std::string name = !cfg.name.empty() ? cfg.name : (cfg.input == "-" ? "stdin" : cfg.input);
    if (cfg.header) out << csv_header() << '\n';
    out << csv_row(name, inst.vertex_count(), ratio_report(inst, cfg.alpha)) << '\n';
    return kExitOk;
  }
  throw UsageError("unknown subcommand '" + command + "'");
}

}  // namespace

int run(std::span<const std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Capacitated tree cover with edge loads: LP solver, rounding and oracles", "ctcp"};
  app.require_subcommand(1, 1);
  app.add_option("-o,--output", cfg.output, "Output path, '-' for standard output");

  auto* validate_cmd = app.add_subcommand("validate", "Check an instance against all preconditions");
  validate_cmd->add_option("file", cfg.input, "CTCP-v1 instance, '-' for standard input")->required();

  auto* random_cmd = app.add_subcommand("gen-random", "Random Euclidean instance in the unit square");
  random_cmd->add_option("--seed", cfg.random.seed)->required();
  random_cmd->add_option("--n", cfg.random.n)->required();
  random_cmd->add_option("--gamma", cfg.random.gamma, "Facility opening cost")->capture_default_str();
  random_cmd->add_option("--load-scale", cfg.random.load_scale, "u = load_scale * c")->capture_default_str();
  random_cmd->add_option("--b-max", cfg.random.b_max, "Vertex loads uniform in [0, b_max]")->capture_default_str();

  auto* gap_cmd = app.add_subcommand("gen-gap", "k-star integrality gap instance");
  gap_cmd->add_option("--k", cfg.k)->required();
  gap_cmd->add_option("--eps", cfg.eps)->required();

  auto* lp_cmd = app.add_subcommand("lp", "Solve the LP relaxation");
  lp_cmd->add_option("file", cfg.input)->required();

  auto* solve_cmd = app.add_subcommand("solve", "Round and split into a feasible tree cover");
  solve_cmd->add_option("file", cfg.input)->required();
  solve_cmd->add_option("--alpha", cfg.alpha, "Rounding threshold in (0, 1]")->capture_default_str();

  auto* oracle_cmd = app.add_subcommand("oracle", "Exact LP value (n <= 10) and brute-force optimum (n <= 7)");
  oracle_cmd->add_option("file", cfg.input)->required();

  auto* report_cmd = app.add_subcommand("report", "One CSV row of LP, algorithm and optimum values");
  report_cmd->add_option("file", cfg.input)->required();
  report_cmd->add_option("--alpha", cfg.alpha)->capture_default_str();
  report_cmd->add_option("--name", cfg.name, "Instance label in the CSV row (default: the path)");
  report_cmd->add_flag("--header", cfg.header, "Print the CSV header first");

  std::vector<const char*> argv{"ctcp"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  std::unique_ptr<std::ofstream> file;
  std::ostream* sink = &out;
  if (cfg.output != "-") {
    file = std::make_unique<std::ofstream>(cfg.output);
    if (!*file) {
      err << "error: cannot open output file '" << cfg.output << "'\n";
      return kExitUsage;
    }
    sink = file.get();
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return dispatch(command, cfg, in, *sink);
  } catch (const SyntaxError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const InvalidInstance& e) {
    err << "error: " << e.what();
    return kExitInvalid;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace ctcp::cli
