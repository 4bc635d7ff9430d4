// capgraph: command-line front end over the scenario runner.
//
//   capgraph <command> <sub> [--config PATH] [--out DIR] [--tol KEY=VAL] [--KEY VAL ...]
//   capgraph batch [--jobs N] [--out DIR] CONFIG...
//
// Exit codes: 0 pass, 1 verification/feasibility failure, 2 config error.
#include <atomic>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "capgraph/capgraph.hpp"

namespace {

using capgraph::Config;

const std::vector<std::pair<std::string, std::string>> kCommands = {
    {"params", "check"},   {"params", "menu"},     {"params", "perturb"},
    {"exact", "eval"},     {"exact", "residual"},  {"exact", "ode"},
    {"solve", "slab"},     {"solve", "radial"},    {"verify", "kato"},
    {"verify", "boundary"}, {"verify", "picone"},  {"verify", "poincare"},
    {"verify", "jacobi"},  {"verify", "gradient-bound"}, {"parabolic", "check"}};

void usage(std::ostream& os) {
  os << "usage: capgraph <command> <sub> [options]\n"
        "       capgraph batch [--jobs N] [--out DIR] CONFIG...\n\n"
        "commands:\n"
        "  params  check|menu|perturb     parameter admissibility machinery\n"
        "  exact   eval|residual|ode      one-variable capillary profiles\n"
        "  solve   slab|radial            prescribed mean curvature BVPs\n"
        "  verify  kato|boundary|picone|poincare|jacobi|gradient-bound\n"
        "  parabolic check                volume-growth criteria\n\n"
        "options:\n"
        "  --config PATH   load scenario inputs from an INI config\n"
        "  --out DIR       output directory for artifacts (default: out)\n"
        "  --tol KEY=VAL   override a named tolerance\n"
        "  --KEY VAL       set scenario input KEY (overrides the config)\n";
}

struct CliError {
  std::string msg;
};

int run_single(std::vector<std::string> args) {
  const std::string command = args[0];
  const std::string sub = args[1];
  bool known = false;
  for (const auto& kv : kCommands) known = known || (kv.first == command && kv.second == sub);
  if (!known) throw CliError{"unknown subcommand: " + command + " " + sub};

  std::string config_path, out_dir = "out";
  std::vector<std::pair<std::string, std::string>> inputs, tols;
  for (size_t k = 2; k < args.size(); ++k) {
    const std::string& a = args[k];
    if (a.rfind("--", 0) != 0) throw CliError{"expected a --flag, got: " + a};
    if (k + 1 >= args.size()) throw CliError{"flag needs a value: " + a};
    const std::string val = args[++k];
    const std::string key = a.substr(2);
    if (key == "config")
      config_path = val;
    else if (key == "out")
      out_dir = val;
    else if (key == "tol") {
      const size_t eq = val.find('=');
      if (eq == std::string::npos) throw CliError{"--tol expects KEY=VAL, got: " + val};
      tols.emplace_back(val.substr(0, eq), val.substr(eq + 1));
    } else
      inputs.emplace_back(key, val);
  }

  Config cfg;
  if (!config_path.empty()) {
    cfg = capgraph::load_config(config_path);
    if (cfg.has("scenario", "command") &&
        (cfg.get("scenario", "command") != command || cfg.get("scenario", "sub") != sub))
      throw CliError{config_path + ": scenario is '" + cfg.get("scenario", "command") + " " +
                     cfg.get("scenario", "sub") + "', invoked as '" + command + " " + sub + "'"};
  } else {
    cfg.source = "<cli>";
  }
  cfg.data["scenario"]["command"] = command;
  cfg.data["scenario"]["sub"] = sub;
  for (const auto& kv : inputs) cfg.data[command][kv.first] = kv.second;
  for (const auto& kv : tols) cfg.data["tolerances"][kv.first] = kv.second;

  const int code = capgraph::run_scenario(cfg, out_dir);
  std::cout << command << " " << sub << ": " << (code == 0 ? "pass" : "FAIL") << "\n";
  return code;
}

int run_batch(const std::vector<std::string>& args) {
  int jobs = 1;
  std::string out_dir = "out";
  std::vector<std::string> configs;
  for (size_t k = 1; k < args.size(); ++k) {
    if (args[k] == "--jobs") {
      if (k + 1 >= args.size()) throw CliError{"--jobs needs a value"};
      jobs = std::stoi(args[++k]);
      if (jobs < 1) throw CliError{"--jobs must be >= 1"};
    } else if (args[k] == "--out") {
      if (k + 1 >= args.size()) throw CliError{"--out needs a value"};
      out_dir = args[++k];
    } else if (args[k].rfind("--", 0) == 0) {
      throw CliError{"unknown batch flag: " + args[k]};
    } else {
      configs.push_back(args[k]);
    }
  }
  if (configs.empty()) throw CliError{"batch: no config files given"};

  std::vector<int> codes(configs.size(), 2);
  std::vector<std::string> notes(configs.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t k = next.fetch_add(1); k < configs.size(); k = next.fetch_add(1)) {
      const std::string stem = std::filesystem::path(configs[k]).stem().string();
      const std::string dir = (std::filesystem::path(out_dir) / stem).string();
      try {
        const Config cfg = capgraph::load_config(configs[k]);
        codes[k] = capgraph::run_scenario(cfg, dir);
      } catch (const capgraph::convergence_error& e) {
        codes[k] = 1;
        notes[k] = e.what();
      } catch (const std::exception& e) {
        codes[k] = 2;
        notes[k] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int k = 0; k < std::min<int>(jobs, static_cast<int>(configs.size())); ++k)
    pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  int worst = 0;
  for (size_t k = 0; k < configs.size(); ++k) {
    worst = std::max(worst, codes[k]);
    std::cout << configs[k] << ": " << (codes[k] == 0 ? "pass" : "FAIL")
              << (notes[k].empty() ? "" : " (" + notes[k] + ")") << "\n";
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    if (args.empty()) {
      usage(std::cerr);
      return 2;
    }
    if (args[0] == "--help" || args[0] == "help") {
      usage(std::cout);
      return 0;
    }
    if (args[0] == "batch") return run_batch(args);
    if (args.size() < 2) {
      usage(std::cerr);
      return 2;
    }
    return run_single(args);
  } catch (const CliError& e) {
    std::cerr << "capgraph: " << e.msg << "\n";
    return 2;
  } catch (const capgraph::convergence_error& e) {
    std::cerr << "capgraph: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "capgraph: " << e.what() << "\n";
    return 2;
  }
}
