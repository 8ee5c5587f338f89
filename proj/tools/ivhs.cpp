#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ivhs/cli/run.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ivhs::ConfigError("cannot read input file `" + path + "`");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace ivhs::cli;

  CLI::App app{"Infinitesimal Torelli and Jacobian-ring checks with exact arithmetic"};
  std::string command, input, format, domain, cache_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  bool no_cache = false;
  app.add_option("command", command, "hilbert | slp | socle | genus | ideal-sections | torelli")->required();
  app.add_option("--input", input, "JSON config file")->required();
  app.add_option("--format", format, "json | text");
  app.add_option("--seed", seed, "seed for random instances and Lefschetz candidates");
  app.add_option("--trials", trials, "number of random Lefschetz candidates");
  app.add_option("--domain", domain, "full | adjoint");
  app.add_flag("--no-cache", no_cache, "bypass the result cache");
  app.add_option("--cache-dir", cache_dir, "cache directory (default $IVHS_CACHE_DIR or ~/.cache/ivhs)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  OutputFormat out_format = OutputFormat::json;
  RunConfig cfg;
  try {
    cfg = parse_config(read_file(input));
    cfg.command = parse_command(command);
    out_format = format.empty() ? cfg.output : parse_format(format);
    if (seed) cfg.seed = *seed;
    if (trials) cfg.options.trials = *trials;
    if (!domain.empty()) cfg.options.domain = ivhs::parse_domain(domain);
  } catch (const ivhs::Error& e) {
    std::cerr << "ivhs: " << e.kind() << ": " << e.what() << "\n";
    std::cout << emit(error_report(command, e), format == "text" ? OutputFormat::text : OutputFormat::json);
    return 1;
  }

  const Report report = run_cached(cfg, {!no_cache, resolve_cache_dir(cache_dir)});
  std::cout << emit(report, out_format);
  if (report.has_error())
    std::cerr << "ivhs: " << report.body["error"]["kind"].get<std::string>() << ": "
              << report.body["error"]["message"].get<std::string>() << "\n";
  return report.exit_code();
}
