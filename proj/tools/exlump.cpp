#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "exlump/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact linear lumping of polynomial ODE models"};
  app.require_subcommand(1);
  app.set_version_flag("--version", exlump::kVersion);

  exlump::ReportConfig cfg;
  std::string format = "text";
  bool no_curry = false;
  auto* reduce = app.add_subcommand("reduce", "Compute a maximal chain of lumpings for one model");
  reduce->add_option("file", cfg.input, "Model file (.ode block format or plain x' = ... lines)")->required();
  reduce->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  reduce->add_option("--seed", cfg.seed, "Random seed");
  reduce->add_flag("--no-curry", no_curry, "Keep parameters symbolic instead of turning them into states");
  reduce->add_option("--max-tower-height", cfg.limits.max_tower_height, "Maximum number of field extensions")
      ->check(CLI::PositiveNumber);
  reduce->add_option("--max-extension-degree", cfg.limits.max_extension_degree,
                     "Maximum absolute degree of an extension field")
      ->check(CLI::PositiveNumber);
  reduce->add_flag("--stats", cfg.stats, "Report wall-clock timings per phase");

  std::string dir, csv;
  std::uint64_t bench_seed = 0;
  auto* bench = app.add_subcommand("benchmark", "Reduce every model in a directory and aggregate by dimension");
  bench->add_option("dir", dir, "Directory of model files")->required();
  bench->add_option("--csv", csv, "Also write the table as CSV");
  bench->add_option("--seed", bench_seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (*reduce) {
    cfg.curry = !no_curry;
    cfg.format = format == "json" ? exlump::Format::Json : exlump::Format::Text;
    const exlump::ReduceOutput out = exlump::run_reduce(cfg);
    std::cout << out.out;
    std::cerr << out.err;
    return out.exit_code;
  }

  exlump::BenchmarkResult result;
  try {
    result = exlump::benchmark(dir, bench_seed);
  } catch (const exlump::IoError& e) {
    std::cerr << e.what() << "\n";
    return 4;
  }
  for (const auto& f : result.failures) std::cerr << f << "\n";
  std::cout << exlump::benchmark_table(result);
  if (!csv.empty()) {
    std::ofstream os(csv);
    if (!os) {
      std::cerr << "cannot write " << csv << "\n";
      return 4;
    }
    os << exlump::benchmark_csv(result);
  }
  return 0;
}
