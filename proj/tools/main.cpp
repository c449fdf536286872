// roughcone: batch front end for cone validation, rough-convergence analysis
// and the theorem suites. See README.md for the config format.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "roughcone/error.hpp"
#include "roughcone/run.hpp"

using namespace roughcone;

namespace {

struct Options {
  std::string config;
  std::string out;
  std::string trace;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> horizon;
  bool quiet = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int execute(Command command, const Options& opt) {
  RunConfig config = parse_config(read_file(opt.config), command);
  apply_overrides(config, opt.seed, opt.horizon);
  const RunResult result = run(config);
  if (!opt.out.empty()) {
    std::ofstream out(opt.out, std::ios::binary);
    out << result.report.dump(2) << '\n';
    if (!out) throw std::ios_base::failure("cannot write report '" + opt.out + "'");
  }
  if (!opt.trace.empty()) {
    std::ofstream out(opt.trace, std::ios::binary);
    emit_trace(config, out);
    if (!out) throw std::ios_base::failure("cannot write trace '" + opt.trace + "'");
  }
  if (!opt.quiet) {
    for (const auto& line : result.summary) std::cout << line << '\n';
    std::cout << "exit status " << result.exit_status << '\n';
  }
  return result.exit_status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cone orders, cone metrics and rough convergence at desk scale"};
  app.require_subcommand(1);
  Options opt;
  std::optional<Command> chosen;

  for (int k = 0; k <= static_cast<int>(Command::Search); ++k) {
    const auto command = static_cast<Command>(k);
    auto* sub = app.add_subcommand(to_string(command));
    sub->add_option("--config", opt.config, "JSON config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "write the JSON report here");
    sub->add_option("--trace", opt.trace, "write a CSV trace here (analyze, limset)");
    sub->add_option("--seed", opt.seed, "override the config seed");
    sub->add_option("--horizon", opt.horizon, "override the verification horizon");
    sub->add_flag("--quiet", opt.quiet, "no summary on standard output");
    sub->callback([&chosen, command] { chosen = command; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  try {
    return execute(*chosen, opt);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternalError;
  }
}
