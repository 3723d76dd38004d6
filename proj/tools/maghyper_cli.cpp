/* Copyright 2026 The maghyper Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License. */

// Command-line front end. Talks to the library only through maghyper.h.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "maghyper/maghyper.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitValidation = 2;
constexpr const char* kThreadsEnv = "MAGHYPER_NUM_THREADS";

// Raised for bad user input detected before the library is called.
struct UsageError {
  std::string message;
};

// Raised when the library reports a failure.
struct ApiError {
  mh_status status;
  std::string message;
};

void check(mh_status status, const std::string& context) {
  if (status != MH_OK) throw ApiError{status, context + ": " + mh_last_error()};
}

int exit_code_for(mh_status status) {
  return status == MH_ERR_INVALID_ARGUMENT || status == MH_ERR_PARSE ? kExitValidation : kExitRuntime;
}

// Owns a string returned by the library.
struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { mh_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

template <typename T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  ~Handle() { Free(ptr); }
};

using HypergraphHandle = Handle<mh_hypergraph, mh_hypergraph_free>;
using TransitionHandle = Handle<mh_transition, mh_transition_free>;
using LaplacianHandle = Handle<mh_laplacian, mh_laplacian_free>;

int threads_from_env() {
  const char* raw = std::getenv(kThreadsEnv);
  if (raw == nullptr || *raw == '\0') return 0;
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (*end != '\0' || value < 1 || value > 4096)
    throw UsageError{std::string(kThreadsEnv) + " must be a positive integer, got '" + raw + "'"};
  return static_cast<int>(value);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError{"cannot open " + path};
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void require_file(const std::string& path) {
  if (!std::filesystem::is_regular_file(path)) throw UsageError{"no such file: " + path};
}

// Flags shared by `train` and `baseline`.
struct TrainFlags {
  std::string hypergraph, features, labels;
  bool drop_singletons = false;
  bool planted = false;
  std::string edvw;
  std::string charge;
  std::vector<std::int64_t> hidden;
  std::optional<std::int64_t> epochs, splits;
  std::optional<double> learning_rate, charge_learning_rate, weight_decay, train_fraction;
  std::optional<std::uint64_t> seed;
  std::string out;
};

void add_train_flags(CLI::App* cmd, TrainFlags& f, bool with_charge) {
  cmd->add_option("--hypergraph", f.hypergraph, "Line-JSON hypergraph file");
  cmd->add_option("--features", f.features, "Features CSV: id,x1,...,xf");
  cmd->add_option("--labels", f.labels, "Labels CSV: id,class");
  cmd->add_flag("--drop-singleton-edges", f.drop_singletons, "Remove hyperedges with one vertex after loading");
  cmd->add_flag("--planted", f.planted,
                "Use the default planted hypergraph instead of files (see `generate`)");
  cmd->add_option("--edvw", f.edvw, "Vertex weights: file (default), degree or uniform")
      ->check(CLI::IsMember({"file", "degree", "uniform"}));
  if (with_charge)
    cmd->add_option("--charge", f.charge, "Charge: 'matrix' (learned Q, default) or 'q=<float>' (fixed scalar)");
  cmd->add_option("--hidden", f.hidden, "Hidden widths, one per layer, comma separated (default 128,128)")
      ->delimiter(',');
  cmd->add_option("--epochs", f.epochs, "Training epochs (default 200)");
  cmd->add_option("--lr", f.learning_rate, "Adam learning rate (default 0.001)");
  if (with_charge)
    cmd->add_option("--charge-lr", f.charge_learning_rate,
                    "Adam learning rate for Q entries; 0 means --lr (default 0)");
  cmd->add_option("--weight-decay", f.weight_decay, "L2 coefficient on weight matrices (default 0.0005)");
  cmd->add_option("--splits", f.splits, "Number of random train/test splits (default 10)");
  cmd->add_option("--train-fraction", f.train_fraction, "Fraction of labeled vertices used for training (default 0.8)");
  cmd->add_option("--seed", f.seed, "Seed for splits and initialization (default 0)");
  cmd->add_option("--out", f.out, "Directory for report.json and history.csv");
}

json train_config(const TrainFlags& f, const std::string& model) {
  json j;
  const bool any_path = !f.hypergraph.empty() || !f.features.empty() || !f.labels.empty();
  if (f.planted && any_path) throw UsageError{"--planted excludes --hypergraph, --features and --labels"};
  if (f.planted) {
    j["generator"] = json::object();
  } else {
    if (f.hypergraph.empty() || f.features.empty() || f.labels.empty())
      throw UsageError{"--hypergraph, --features and --labels are required (or pass --planted)"};
    for (const auto* path : {&f.hypergraph, &f.features, &f.labels}) require_file(*path);
    j["data"] = {{"hypergraph", f.hypergraph},
                 {"features", f.features},
                 {"labels", f.labels},
                 {"drop_singleton_edges", f.drop_singletons}};
  }
  j["model"] = model;
  if (!f.edvw.empty()) j["edvw"] = f.edvw;
  if (!f.charge.empty()) j["charge"] = f.charge;
  if (!f.hidden.empty()) j["hidden"] = f.hidden;
  if (f.epochs) j["epochs"] = *f.epochs;
  if (f.learning_rate) j["learning_rate"] = *f.learning_rate;
  if (f.charge_learning_rate) j["charge_learning_rate"] = *f.charge_learning_rate;
  if (f.weight_decay) j["weight_decay"] = *f.weight_decay;
  if (f.splits) j["n_splits"] = *f.splits;
  if (f.train_fraction) j["train_fraction"] = *f.train_fraction;
  if (f.seed) j["seed"] = *f.seed;
  if (!f.out.empty()) j["out"] = f.out;
  return j;
}

int run_config(const std::string& config, int threads) {
  OwnedString report;
  check(mh_experiment_run(config.c_str(), threads, &report.ptr), "experiment failed");
  std::cout << report.str() << "\n";
  return kExitOk;
}

// Flags shared by `walk` and `laplacian`.
struct WalkFlags {
  std::string hypergraph;
  bool drop_singletons = false;
  std::string walk = "edvw";
  std::string edvw = "file";
  std::string out;
};

void add_walk_flags(CLI::App* cmd, WalkFlags& f) {
  cmd->add_option("--hypergraph", f.hypergraph, "Line-JSON hypergraph file")->required();
  cmd->add_flag("--drop-singleton-edges", f.drop_singletons, "Remove hyperedges with one vertex after loading");
  cmd->add_option("--walk", f.walk, "Random walk: edvw (default) or zhou")->check(CLI::IsMember({"edvw", "zhou"}));
  cmd->add_option("--edvw", f.edvw, "Vertex weights for the edvw walk: file (default), degree or uniform")
      ->check(CLI::IsMember({"file", "degree", "uniform"}));
}

void build_walk(const WalkFlags& f, HypergraphHandle& graph, TransitionHandle& p) {
  require_file(f.hypergraph);
  check(mh_hypergraph_load(f.hypergraph.c_str(), f.drop_singletons ? 1 : 0, &graph.ptr), "cannot load hypergraph");
  const mh_walk walk = f.walk == "zhou" ? MH_WALK_ZHOU : MH_WALK_EDVW;
  const mh_edvw_source source = f.edvw == "degree" ? MH_EDVW_DEGREE
                                : f.edvw == "uniform" ? MH_EDVW_UNIFORM
                                                      : MH_EDVW_FILE;
  check(mh_transition_build(graph.ptr, walk, source, &p.ptr), "cannot build transition matrix");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maghyper: magnetic Laplacians and complex convolutional networks on hypergraphs with "
               "edge-dependent vertex weights.\n\nEnvironment: MAGHYPER_NUM_THREADS sets how many splits train "
               "concurrently (default: the config value, else 1).\nExit codes: 0 success, 2 invalid input, "
               "1 runtime failure."};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(mh_version()));

  TrainFlags train_flags;
  auto* train = app.add_subcommand("train", "Train the magnetic network over random splits and print a JSON report");
  add_train_flags(train, train_flags, true);

  TrainFlags baseline_flags;
  std::string method;
  auto* baseline = app.add_subcommand("baseline", "Run a graph-reduction baseline with the same protocol as train");
  add_train_flags(baseline, baseline_flags, false);
  baseline->add_option("--method", method, "hgnn, hgnn-star, gcn or spectral")
      ->required()
      ->check(CLI::IsMember({"hgnn", "hgnn-star", "gcn", "spectral"}));

  WalkFlags walk_flags;
  double tol = 1e-10;
  bool skip_hitting = false;
  auto* walk = app.add_subcommand("walk", "Report stationarity, reversibility and hitting times of a hypergraph walk");
  add_walk_flags(walk, walk_flags);
  walk->add_option("--tol", tol, "Detailed-balance tolerance (default 1e-10)")->check(CLI::NonNegativeNumber);
  walk->add_flag("--no-hitting-times", skip_hitting, "Skip the dense hitting-time solve");
  walk->add_option("--out", walk_flags.out, "Write the transition matrix as coordinate text");

  WalkFlags lap_flags;
  double q = 0.25;
  std::string form = "normalized";
  int n_eigs = 10;
  auto* laplacian = app.add_subcommand("laplacian", "Build a magnetic Laplacian and report lambda_max and its smallest eigenvalues");
  add_walk_flags(laplacian, lap_flags);
  laplacian->add_option("--q", q, "Scalar charge (default 0.25)")->check(CLI::NonNegativeNumber);
  laplacian->add_option("--form", form, "normalized (default) or unnormalized")
      ->check(CLI::IsMember({"normalized", "unnormalized"}));
  laplacian->add_option("--eigenvalues", n_eigs, "How many smallest eigenvalues to print (default 10)")
      ->check(CLI::NonNegativeNumber);
  laplacian->add_option("--out", lap_flags.out, "Write the Laplacian as complex coordinate text");

  std::string gen_out, gen_config;
  json gen;
  auto* generate = app.add_subcommand("generate", "Write a planted hypergraph, features and labels to a directory");
  generate->add_option("--out", gen_out, "Output directory")->required();
  generate->add_option("--config", gen_config, "JSON file of generator settings; flags below override it");
  struct GenInt { const char* flag; const char* key; const char* help; std::optional<std::int64_t> value; };
  struct GenReal { const char* flag; const char* key; const char* help; std::optional<double> value; };
  std::vector<GenInt> gen_ints = {
      {"--n", "n", "Vertices (default 400)", {}},
      {"--classes", "n_classes", "Classes (default 2)", {}},
      {"--edges-per-class", "edges_per_class", "Hyperedges seeded per class (default 3000)", {}},
      {"--edge-size-min", "edge_size_min", "Smallest hyperedge (default 3)", {}},
      {"--edge-size-max", "edge_size_max", "Largest hyperedge (default 5)", {}},
      {"--feature-dim", "feature_dim", "Feature columns (default 4)", {}},
  };
  std::vector<GenReal> gen_reals = {
      {"--p-within", "p_within", "Probability a member comes from the seed class (default 0.5)", {}},
      {"--p-noise", "p_noise", "Probability a hyperedge is uniformly random (default 0)", {}},
      {"--direction-signal", "direction_signal", "EDVW skew strength in [0, 1]; 0 gives uniform weights (default 0.8)", {}},
      {"--skew", "skew", "Log-weight of owner-class members at full signal (default 8)", {}},
      {"--feature-signal", "feature_signal", "Class indicator added to Gaussian features (default 0.55)", {}},
  };
  std::optional<std::uint64_t> gen_seed;
  for (auto& o : gen_ints) generate->add_option(o.flag, o.value, o.help);
  for (auto& o : gen_reals) generate->add_option(o.flag, o.value, o.help);
  generate->add_option("--seed", gen_seed, "Generator seed (default 0)");

  std::string exp_config, exp_out;
  auto* experiment = app.add_subcommand("experiment", "Run an experiment described by a JSON config file");
  experiment->add_option("--config", exp_config, "Experiment config JSON (see README)")->required();
  experiment->add_option("--out", exp_out, "Override the config's output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    const int threads = threads_from_env();
    if (train->parsed()) return run_config(train_config(train_flags, "hmn").dump(), threads);
    if (baseline->parsed()) return run_config(train_config(baseline_flags, method).dump(), threads);
    if (experiment->parsed()) {
      json config;
      try {
        config = json::parse(read_file(exp_config));
      } catch (const json::exception& e) {
        throw UsageError{exp_config + " is not valid JSON: " + e.what()};
      }
      if (!exp_out.empty()) config["out"] = exp_out;
      return run_config(config.dump(), threads);
    }
    if (walk->parsed()) {
      HypergraphHandle graph;
      TransitionHandle p;
      build_walk(walk_flags, graph, p);
      if (!walk_flags.out.empty()) check(mh_transition_save(p.ptr, walk_flags.out.c_str()), "cannot save matrix");
      OwnedString report;
      check(mh_walk_report(p.ptr, tol, skip_hitting ? 0 : 1, &report.ptr), "walk diagnostics failed");
      std::cout << report.str() << "\n";
      return kExitOk;
    }
    if (laplacian->parsed()) {
      HypergraphHandle graph;
      TransitionHandle p;
      build_walk(lap_flags, graph, p);
      LaplacianHandle l;
      const auto f = form == "unnormalized" ? MH_LAPLACIAN_UNNORMALIZED : MH_LAPLACIAN_NORMALIZED;
      check(mh_laplacian_build(p.ptr, q, f, &l.ptr), "cannot build Laplacian");
      if (!lap_flags.out.empty()) check(mh_laplacian_save(l.ptr, lap_flags.out.c_str()), "cannot save matrix");
      OwnedString report;
      check(mh_laplacian_report(l.ptr, n_eigs, &report.ptr), "spectrum failed");
      std::cout << report.str() << "\n";
      return kExitOk;
    }
    if (generate->parsed()) {
      if (!gen_config.empty()) {
        try {
          gen = json::parse(read_file(gen_config));
        } catch (const json::exception& e) {
          throw UsageError{gen_config + " is not valid JSON: " + e.what()};
        }
        if (!gen.is_object()) throw UsageError{gen_config + " must hold a JSON object"};
      } else {
        gen = json::object();
      }
      for (const auto& o : gen_ints)
        if (o.value) gen[o.key] = *o.value;
      for (const auto& o : gen_reals)
        if (o.value) gen[o.key] = *o.value;
      if (gen_seed) gen["seed"] = *gen_seed;
      OwnedString summary;
      check(mh_generate(gen.dump().c_str(), gen_out.c_str(), &summary.ptr), "generation failed");
      std::cout << summary.str() << "\n";
      return kExitOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitValidation;
  } catch (const ApiError& e) {
    std::cerr << "error: " << e.message << "\n";
    return exit_code_for(e.status);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitRuntime;
}
