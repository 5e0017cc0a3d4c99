// Copyright 2026 The otreg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Talks to the library only through otreg.h.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "otreg/otreg.h"

namespace {

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(otreg_status st, const char* what) {
  if (st != OTREG_SUCCESS) {
    throw CliError(std::string(what) + ": " + otreg_status_string(st) + ": " + otreg_last_error());
  }
}

// Takes ownership of a library-allocated string.
std::string take(char* s) {
  std::string out(s);
  otreg_string_free(s);
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CliError("cannot write " + path);
  out << content;
  if (!out) throw CliError("write failed for " + path);
}

void run_simulate(const std::string& config, const std::string& out_path, std::optional<std::uint64_t> seed) {
  otreg_scenario* cfg = nullptr;
  check(otreg_scenario_load(config.c_str(), &cfg), "loading config");
  if (seed) otreg_scenario_set_seed(cfg, *seed);
  otreg_dataset* data = nullptr;
  const otreg_status st = otreg_simulate(cfg, &data);
  otreg_scenario_destroy(cfg);
  check(st, "simulate");
  const otreg_status saved = otreg_dataset_save(data, out_path.c_str());
  otreg_dataset_destroy(data);
  check(saved, "writing dataset");
}

void run_fit(const std::string& input, const std::string& output, bool no_clamp) {
  otreg_dataset* data = nullptr;
  check(otreg_dataset_load(input.c_str(), &data), "loading dataset");
  otreg_map* map = nullptr;
  const otreg_status st = otreg_fit(data, no_clamp ? 0 : 1, &map);
  otreg_dataset_destroy(data);
  check(st, "fit");
  char* json = nullptr;
  const otreg_status js = otreg_map_to_json(map, &json);
  otreg_map_destroy(map);
  check(js, "serializing map");
  write_file(output, take(json) + "\n");
}

void run_rate(const std::string& config, const std::string& out_path, const std::string& plot,
              std::optional<std::size_t> workers) {
  otreg_scenario* cfg = nullptr;
  check(otreg_scenario_load(config.c_str(), &cfg), "loading config");
  if (workers) otreg_scenario_set_workers(cfg, *workers);
  otreg_rate_table* table = nullptr;
  const otreg_status st = otreg_rate_experiment(cfg, &table);
  otreg_scenario_destroy(cfg);
  check(st, "rate experiment");

  char* csv = nullptr;
  char* svg = nullptr;
  otreg_status cs = otreg_rate_table_to_csv(table, &csv);
  otreg_status ss = plot.empty() ? OTREG_SUCCESS : otreg_rate_table_to_svg(table, &svg);
  double slope = 0, slope_se = 0, intercept = 0;
  int degenerate = 0;
  otreg_rate_table_slope(table, &slope, &slope_se, &intercept, &degenerate);
  otreg_rate_table_destroy(table);
  check(cs, "formatting csv");
  write_file(out_path, take(csv));
  if (!plot.empty()) {
    check(ss, "formatting svg");
    write_file(plot, take(svg));
  }
  if (degenerate) {
    std::cerr << "rate: degenerate risk curve, no slope fitted\n";
  } else {
    std::printf("slope %.6f (stderr %.6f)\n", slope, slope_se);
  }
}

void run_packing(int k, double h, double frac, std::uint64_t seed, const std::string& out_path) {
  otreg_packing* fam = nullptr;
  check(otreg_packing_create(k, h, frac, seed, &fam), "packing");
  std::size_t size = 0;
  double min_dist = 0, log_card = 0;
  otreg_packing_size(fam, &size);
  otreg_packing_summary(fam, &min_dist, &log_card);
  char* json = nullptr;
  const otreg_status js = otreg_packing_to_json(fam, &json);
  otreg_packing_destroy(fam);
  check(js, "serializing packing");
  write_file(out_path, take(json) + "\n");
  std::printf("members %zu  log_cardinality %.6f  min_pairwise_dist %.12g\n", size, log_card, min_dist);
}

void run_fano(double delta, double eps, double K, double c, double m) {
  double value = 0;
  check(otreg_fano_bound(delta, eps, K, c, m, &value), "fano");
  std::printf("%.12g\n", value);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal transport distribution-on-distribution regression toolkit"};
  app.require_subcommand(1);

  std::string config, out, input, output, plot;
  std::uint64_t seed = 0;
  bool no_clamp = false;

  auto* sim = app.add_subcommand("simulate", "Draw a dataset from a scenario config");
  sim->add_option("--config", config, "Scenario JSON")->required()->check(CLI::ExistingFile);
  sim->add_option("--out", out, "Dataset JSON to write")->required();
  auto* sim_seed = sim->add_option("--seed", seed, "Override the config seed");

  auto* fit = app.add_subcommand("fit", "Fit the least-squares transport map");
  fit->add_option("--input", input, "Dataset JSON")->required()->check(CLI::ExistingFile);
  fit->add_option("--output", output, "Map JSON to write")->required();
  fit->add_flag("--no-clamp", no_clamp, "Do not clip fitted values to the domain");

  std::size_t workers = 0;
  auto* rate = app.add_subcommand("rate", "Monte Carlo risk curve and log-log slope");
  rate->add_option("--config", config, "Scenario JSON with an N list and R")->required()->check(CLI::ExistingFile);
  rate->add_option("--out", out, "CSV to write")->required();
  rate->add_option("--plot", plot, "Optional SVG log-log plot");
  auto* rate_workers = rate->add_option("--workers", workers, "Worker threads (0 = all cores)");

  int k = 0;
  double h = 0, frac = 0.25;
  auto* pack = app.add_subcommand("packing", "Staircase packing family of monotone maps");
  pack->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
  pack->add_option("--k", k, "Number of bins")->required();
  pack->add_option("--h", h, "Step height, at most 1/k")->required();
  pack->add_option("--seed", seed, "Selection seed")->required();
  pack->add_option("--out", out, "Family JSON to write")->required();
  pack->add_option("--hamming-frac", frac, "Minimum Hamming distance as a fraction of k");

  double delta = 0, eps = 0, K = 0, c = 0, klm = 1.0;
  auto* fano = app.add_subcommand("fano", "Evaluate the Fano lower bound");
  fano->add_option("--delta", delta, "Separation scale")->required();
  fano->add_option("--epsilon", eps, "Covering scale")->required();
  fano->add_option("--K", K, "Bracketing entropy constant")->required();
  fano->add_option("--c", c, "Packing entropy constant")->required();
  fano->add_option("--kl-multiplier", klm, "Sample-size factor on the KL term");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) {
      run_simulate(config, out, *sim_seed ? std::optional(seed) : std::nullopt);
    } else if (*fit) {
      run_fit(input, output, no_clamp);
    } else if (*rate) {
      run_rate(config, out, plot, *rate_workers ? std::optional(workers) : std::nullopt);
    } else if (*pack) {
      run_packing(k, h, frac, seed, out);
    } else if (*fano) {
      run_fano(delta, eps, K, c, klm);
    }
  } catch (const std::exception& e) {
    std::cerr << "otreg: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
