#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "halfbloch/cli/commands.hpp"

int main(int argc, char** argv) {
  using halfbloch::cli::Format;

  CLI::App app{"Bloch spectra and root functions of -Delta + q for half-lattice potentials"};
  std::string command;
  std::string config_path;
  std::string out_path;
  std::string format_name = "json";
  app.add_option("command", command, "classify | bloch | oracle | multiplicity | fermi")
      ->required()
      ->check(CLI::IsMember({"classify", "bloch", "oracle", "multiplicity", "fermi"}));
  app.add_option("--config", config_path, "JSON problem description")->required();
  app.add_option("--out", out_path, "write the report here instead of stdout");
  app.add_option("--format", format_name, "json or csv (csv: oracle matrix, fermi points)")
      ->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : halfbloch::cli::kExitParse;
  }

  const Format format = format_name == "csv" ? Format::Csv : Format::Json;
  if (format == Format::Csv && command != "oracle" && command != "fermi") {
    std::cerr << "error: --format csv is available for oracle and fermi only\n";
    return halfbloch::cli::kExitParse;
  }

  const auto result = halfbloch::cli::run_command_file(command, config_path, format);
  if (!result.output.empty()) {
    if (out_path.empty()) {
      std::cout << result.output;
    } else {
      std::ofstream out(out_path);
      if (!out) {
        std::cerr << "error: cannot write " << out_path << '\n';
        return halfbloch::cli::kExitFailure;
      }
      out << result.output;
    }
  }
  if (result.exit_code != 0) std::cerr << "error: " << result.error << '\n';
  return result.exit_code;
}
