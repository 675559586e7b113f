#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "siolab/error.hpp"
#include "siolab/harness/config.hpp"
#include "siolab/harness/experiments.hpp"

namespace h = siolab::harness;

namespace {

h::ExperimentConfig load(const std::string& path, const std::vector<std::string>& overrides) {
  auto tree = h::load_config_file(path);
  for (const auto& o : overrides) h::apply_override(tree, o);
  return h::ExperimentConfig::from_json(tree);
}

void print_summary(const h::ExperimentReport& rep) {
  for (const auto& r : rep.summary)
    std::printf("%-5s %s  %s: measured %.6g %s %.6g%s%s\n", r.criterion.c_str(), r.passed ? "PASS" : "FAIL",
                r.name.c_str(), r.measured, r.comparison.c_str(), r.threshold, r.note.empty() ? "" : "  ",
                r.note.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"siolab: singular integral operators on discretized boundaries"};
  app.require_subcommand(1);

  std::string config_path, out_dir, report_path, kind = "convergence", plot_out;
  std::vector<std::string> overrides;
  bool quiet = false;

  auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("config", config_path, "Config file")->required();
  run->add_option("--set", overrides, "Override a config leaf, e.g. --set params.tolerance=1e-7");
  run->add_option("--out", out_dir, "Output directory (default: output_dir from the config)");
  run->add_flag("-q,--quiet", quiet, "Print only the overall verdict");

  auto* plot = app.add_subcommand("plot", "Render an SVG plot from a report.json");
  plot->add_option("report", report_path, "report.json written by 'run'")->required();
  plot->add_option("--kind", kind, "convergence | modulus_fit | field_heatmap");
  plot->add_option("-o,--output", plot_out, "Output file (default: stdout)");

  auto* list = app.add_subcommand("list-experiments", "List experiment names");

  auto* validate = app.add_subcommand("validate", "Check a config file without running it");
  validate->add_option("config", config_path, "Config file")->required();
  validate->add_option("--set", overrides, "Override a config leaf");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*list) {
      for (const auto& n : h::experiment_names()) std::printf("%s\n", n.c_str());
      return 0;
    }
    if (*validate) {
      const auto cfg = load(config_path, overrides);
      std::printf("ok: %s\n", cfg.experiment.c_str());
      return 0;
    }
    if (*run) {
      const auto cfg = load(config_path, overrides);
      const auto rep = h::run(cfg);
      const auto written = h::write_artifacts(rep, out_dir.empty() ? cfg.output_dir : out_dir);
      if (!quiet) {
        print_summary(rep);
        for (const auto& p : written) std::printf("wrote %s\n", p.c_str());
      }
      std::printf("%s: %s\n", rep.experiment.c_str(), rep.passed() ? "all rules passed" : "some rules failed");
      return rep.passed() ? 0 : 2;
    }
    if (*plot) {
      std::ifstream in(report_path);
      if (!in) throw siolab::Error("io", "cannot open '" + report_path + "'");
      const auto rep = h::ExperimentReport::from_json(nlohmann::json::parse(in));
      const auto svg = h::plot(rep, kind);
      if (plot_out.empty()) {
        std::cout << svg;
      } else {
        std::ofstream out(plot_out, std::ios::binary);
        if (!out) throw siolab::Error("io", "cannot write '" + plot_out + "'");
        out << svg;
      }
      return 0;
    }
  } catch (const siolab::Error& e) {
    std::fprintf(stderr, "error [%s]: %s\n", e.kind().c_str(), e.what());
    return e.kind() == "spec" || e.kind() == "dimension" || e.kind() == "io" || e.kind() == "empty" ? 1 : 2;
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "error [json]: %s\n", e.what());
    return 1;
  }
  return 1;
}
