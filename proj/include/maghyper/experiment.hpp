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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maghyper/generator.hpp"
#include "maghyper/io.hpp"
#include "maghyper/network.hpp"
#include "maghyper/random_walk.hpp"

namespace maghyper {

enum class ModelKind { kMagnetic, kHgnn, kHgnnStar, kGcn, kSpectral };
enum class EdvwSource { kFile, kDegree, kUniform };

struct ExperimentConfig {
  // Either all three paths or a generator.
  std::string hypergraph_path;
  std::string features_path;
  std::string labels_path;
  bool drop_singleton_edges = false;
  std::optional<GeneratorConfig> generator;

  EdvwSource edvw = EdvwSource::kFile;
  ModelKind model = ModelKind::kMagnetic;
  ModelConfig model_config;  // n_classes is taken from the data
  Index n_splits = 10;
  double train_fraction = 0.8;
  std::uint64_t seed = 0;
  std::string out_dir;  // empty: write nothing
  int threads = 1;      // concurrent splits

  void validate() const;
  std::string to_json() const;
  /// Accepts the keys written by to_json(); unknown keys are rejected.
  static ExperimentConfig from_json(const std::string& text);
};

struct ExperimentReport {
  std::vector<double> per_split_accuracy;
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
  double wall_clock_seconds = 0.0;
  std::vector<std::vector<EpochRecord>> history;  // empty for spectral clustering
  std::string history_csv_path;
  std::string config_json;
  std::string version;

  std::string to_json() const;
};

/// The EDVW matrix selected by `source`, normalized for walk construction.
EdvwMatrix select_edvw(const HypergraphData& data, EdvwSource source);

/// Loads or generates the dataset named by the config.
Dataset materialize(const ExperimentConfig& config);

/// Trains and evaluates one model per split. Split s uses the RNG stream
/// (seed, s) for its train/test partition and weight initialization, so the
/// report does not depend on `threads`. Writes report.json and history.csv
/// into out_dir when it is set.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Writes hypergraph.jsonl, features.csv and labels.csv under `dir`.
void save_planted(const PlantedHypergraph& data, const std::string& dir);

const char* version_string();

ModelKind parse_model_kind(const std::string& name);
EdvwSource parse_edvw_source(const std::string& name);
/// Generator settings as a JSON object; missing keys keep their defaults and
/// unknown keys are rejected.
GeneratorConfig generator_config_from_json(const std::string& text);
std::string generator_config_to_json(const GeneratorConfig& config);

/// "matrix" or "q=<float>".
void parse_charge(const std::string& text, ModelConfig& config);

}  // namespace maghyper
