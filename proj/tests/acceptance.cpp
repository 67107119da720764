// Acceptance runner: one PASS/FAIL line per criterion.
//
//   acceptance                 run all criteria
//   acceptance --criterion N   run one; exit status reflects it alone

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gpal/acceptance.hpp"
#include "gpal/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "criterion id")
      ->check(CLI::Range(1, gpal::acceptance::kCriteria));
  CLI11_PARSE(app, argc, argv);

  gpal::acceptance::Options options;
  options.cli = [](const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::istringstream none;
    return gpal::cli::run(args, out, err, none);
  };

  int failed = 0;
  for (int id = 1; id <= gpal::acceptance::kCriteria; ++id) {
    if (only != 0 && id != only) continue;
    const auto r = gpal::acceptance::run_criterion(id, options);
    std::cout << gpal::acceptance::format_result(r) << std::flush;
    failed += r.passed ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
