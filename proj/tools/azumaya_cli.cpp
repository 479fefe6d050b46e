#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "azumaya/suites.hpp"

using namespace azumaya;

namespace {

struct Output {
  bool json = false;
  bool comparable = false;
  std::map<Status, std::size_t> tally;

  void operator()(const CheckReport& r) {
    ++tally[r.status];
    if (json) {
      std::cout << (comparable ? comparable_json(r) : to_json(r)).dump() << '\n';
    } else {
      std::cout << to_string(r.status) << "  " << r.check << "  " << r.subject;
      if (!r.witness.is_null()) std::cout << "  witness=" << r.witness.dump();
      std::cout << '\n';
    }
    std::cout.flush();
  }

  int finish(const std::vector<CheckReport>& reports) const {
    const int code = exit_code_for(reports);
    std::cerr << reports.size() << " reports:";
    for (const auto& [s, n] : tally) std::cerr << ' ' << to_string(s) << '=' << n;
    std::cerr << "; exit " << code << '\n';
    return code;
  }
};

Json read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config_text(ss.str());
  } catch (const Error& e) {
    std::string msg = e.what();
    const std::string prefix = "ParseError: ";
    if (msg.starts_with(prefix)) msg.erase(0, prefix.size());
    throw Error(ErrorCode::ParseError, path + ": " + msg);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Azumaya algebra checks over finite commutative rings"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  Limits limits;
  Output out;
  std::uint64_t budget = 100000;

  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--seed", seed, "Root seed for sampled checks");
  app.add_flag("--json", out.json, "Newline-delimited JSON reports on stdout");
  app.add_flag("--no-timing", out.comparable, "Leave timing_ms out of JSON reports");
  app.add_option("--max-tuples", limits.max_tuples, "Cap for exhaustive identity sweeps");
  app.add_option("--max-elements", limits.max_elements, "Cap for exhaustive element scans");
  app.fallthrough();

  auto* construct = app.add_subcommand("construct", "Validate a config and echo canonical forms");
  std::string check_name;
  auto* check = app.add_subcommand("check", "Run the config's checks, or only those with the given name");
  check->add_option("name", check_name, "Check name or kind");
  std::string suite_name;
  auto* suite = app.add_subcommand("suite", "Run a built-in suite");
  suite->add_option("name", suite_name, "Suite name, \"theorem41\" or \"all\"")->required();
  auto* search = app.add_subcommand("search", "Randomized searches");
  auto* counter = search->add_subcommand("counterexample", "Look for center-preservation failures over non-reduced targets");
  counter->add_option("--budget", budget, "Candidates per search");
  search->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    std::vector<CheckReport> reports;
    auto emit = [&](const CheckReport& r) { out(r); };
    if (*construct || *check) {
      if (config_path.empty()) throw Error(ErrorCode::ValidationError, "--config is required");
      const Workspace ws = load_workspace(read_config(config_path), limits);
      if (*construct) {
        std::cout << (out.json ? canonical_json(ws).dump() : canonical_json(ws).dump(2)) << '\n';
        for (const auto& name : ws.claimed_verified) {
          const auto& f = ws.homs.at(name);
          if (f.verified()) continue;
          CheckReport r;
          r.check = "verify_hom";
          r.subject = name + ": " + f.label;
          r.status = Status::Fail;
          r.witness = f.witness;
          reports.push_back(r);
          std::cerr << "hom " << name << " is claimed verified but refuted: " << f.witness.dump() << '\n';
        }
        return exit_code_for(reports);
      }
      const auto only = check->count("name") ? std::optional<std::string>(check_name) : std::nullopt;
      reports = run_workspace(ws, seed, limits, only, emit);
    } else if (*suite) {
      reports = run_suite(suite_name, seed, limits, emit);
    } else if (*counter) {
      if (!seed) throw Error(ErrorCode::ValidationError, "search counterexample is sampled and needs --seed");
      if (!config_path.empty()) {
        const Workspace ws = load_workspace(read_config(config_path), limits);
        for (const auto& c : ws.checks)
          if (c.kind != "counterexample_search") throw Error(ErrorCode::ValidationError, "/checks: search configs may only hold counterexample_search checks");
        reports = run_workspace(ws, seed, limits, std::nullopt, emit);
      } else {
        reports = default_counterexample_searches(*seed, budget);
        for (const auto& r : reports) out(r);
      }
    }
    return out.finish(reports);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}
