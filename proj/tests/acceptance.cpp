#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "nearspace/verify.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Runs every acceptance criterion and prints one PASS/FAIL line each."};
  nearspace::verify::Options opt;
  std::string fixtures;
  app.add_flag("--slow", opt.slow, "include brute_count at n = 4");
  app.add_option("--fixtures", fixtures, "reference tables JSON (default: embedded copy)");
  app.add_option("--jobs", opt.jobs, "worker threads")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  if (!fixtures.empty()) {
    std::ifstream in(fixtures);
    if (!in) {
      std::cerr << "cannot open " << fixtures << "\n";
      return 2;
    }
    opt.tables = nlohmann::json::parse(in);
  }
  return nearspace::verify::run_all(opt, std::cout) ? 0 : 1;
}
