// hukit: verification suites for hyperbolic unitary groups over finite form
// rings. Usage: hukit <suite> --ring <file> --n <int> [--seed <u64>]
// [--samples <int>] [--cap <int>] [--mode exact|necessary] [--out <file>]
// Exit codes: 0 all checks pass, 1 at least one failure, 2 usage/config error.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "hu/ringspec.hpp"
#include "hu/suites.hpp"

int main(int argc, char** argv) {
  CLI::App app{"verification suites for hyperbolic unitary groups over finite "
               "form rings"};
  app.require_subcommand(1);

  std::string ring_path, out_path, mode = "exact";
  int n = 3, samples = 50;
  std::uint64_t cap = hu::kDefaultCap;
  std::uint64_t seed = 0;
  bool seed_given = false, timing = false;

  std::vector<CLI::App*> subs;
  for (const std::string& name : hu::suite_names()) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " suite");
    sub->add_option("--ring", ring_path, "ring spec file")->required();
    sub->add_option("--n", n, "half-rank (>= 3)");
    sub->add_option("--seed", seed, "seed for randomized checks")
        ->each([&](const std::string&) { seed_given = true; });
    sub->add_option("--samples", samples, "sample count for randomized checks");
    sub->add_option("--cap", cap, "closure/enumeration element cap");
    sub->add_option("--mode", mode, "exact | necessary")
        ->check(CLI::IsMember({"exact", "necessary"}));
    sub->add_option("--out", out_path, "write the JSON report here");
    sub->add_flag("--timing", timing, "record wall-clock ms per check");
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  hu::SuiteConfig cfg;
  cfg.suite = app.get_subcommands().front()->get_name();
  cfg.n = n;
  cfg.samples = samples;
  cfg.cap = static_cast<std::size_t>(cap);
  cfg.exact_mode = mode == "exact";
  cfg.timing = timing;
  if (seed_given) cfg.seed = seed;

  try {
    cfg.ring = hu::load_ring_spec_file(ring_path);
    cfg.ring_echo = ring_path;
    hu::Report rep = hu::run_suite(cfg);
    std::string json = rep.to_json();
    if (!out_path.empty()) {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) {
        std::cerr << "cannot write report to " << out_path << "\n";
        return 2;
      }
      out << json;
    } else {
      std::cout << json;
    }
    std::cerr << cfg.suite << ": " << rep.passed() << " pass, " << rep.failed()
              << " fail, " << rep.skipped() << " skip\n";
    for (const hu::CheckRecord& c : rep.checks)
      if (c.status == "fail")
        std::cerr << "  FAIL " << c.name
                  << (c.witness.empty() ? "" : ": " + c.witness) << "\n";
    return rep.exit_code();
  } catch (const hu::SpecParseError& e) {
    std::cerr << "ring spec error: " << e.what() << "\n";
    return 2;
  } catch (const hu::ValidationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
