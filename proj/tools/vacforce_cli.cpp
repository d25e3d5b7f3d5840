// Command-line front end: config-driven force sweeps, the acceptance
// suite, and the config schema.
//
// Exit codes: 0 success, 1 validation/parse error, 2 numerical
// non-convergence, 3 internal assertion.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vacforce/acceptance.hpp"
#include "vacforce/errors.hpp"
#include "vacforce/scenario.hpp"
#include "vacforce/table.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw vacforce::ConfigError("cannot open config file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw vacforce::ConfigError("cannot open output file '" + out_path + "'");
  }
  out << text;
}

bool table_fully_converged(const vacforce::ResultTable& table) {
  for (const auto& row : table.rows()) {
    if (!row.force.converged) return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vacforce — vacuum forces on slabs and atoms in planar "
               "magnetodielectric cavities"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  auto* run = app.add_subcommand("run", "run a scenario sweep from a config file");
  run->add_option("config", config_path, "JSON scenario file")->required();
  run->add_option("--out", out_path, "write output to a file instead of stdout");
  run->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "human"}));

  std::vector<std::string> check_names;
  auto* validate = app.add_subcommand(
      "validate", "run the built-in validation checks (all by default)");
  validate->add_option("names", check_names, "subset of checks to run");

  auto* schema = app.add_subcommand("schema", "print the config schema");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      const vacforce::ScenarioConfig config =
          vacforce::parse_config(read_file(config_path));
      const vacforce::ResultTable table = vacforce::run_sweep(config);
      write_output(vacforce::emit_table(table,
                                        format == "csv"
                                            ? vacforce::TableFormat::Csv
                                            : vacforce::TableFormat::Human),
                   out_path);
      if (!table_fully_converged(table)) {
        std::cerr << "warning: some rows did not converge\n";
        return 2;
      }
      return 0;
    }
    if (validate->parsed()) {
      return vacforce::run_acceptance(check_names, std::cout);
    }
    if (schema->parsed()) {
      std::cout << vacforce::config_schema_text();
      return 0;
    }
  } catch (const vacforce::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const vacforce::NonConvergedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
