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

#include "maghyper/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <numeric>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "maghyper/baselines.hpp"

namespace maghyper {
namespace {

using nlohmann::json;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

const char* model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::kMagnetic: return "hmn";
    case ModelKind::kHgnn: return "hgnn";
    case ModelKind::kHgnnStar: return "hgnn-star";
    case ModelKind::kGcn: return "gcn";
    case ModelKind::kSpectral: return "spectral";
  }
  return "";
}

const char* edvw_name(EdvwSource source) {
  switch (source) {
    case EdvwSource::kFile: return "file";
    case EdvwSource::kDegree: return "degree";
    case EdvwSource::kUniform: return "uniform";
  }
  return "";
}

std::string charge_name(const ModelConfig& c) {
  if (c.charge_mode == ChargeMode::kMatrix) return "matrix";
  char buf[40];
  std::snprintf(buf, sizeof buf, "q=%.17g", c.charge);
  return buf;
}

json generator_json(const GeneratorConfig& g) {
  return {{"n", g.n},
          {"n_classes", g.n_classes},
          {"edges_per_class", g.edges_per_class},
          {"edge_size_min", g.edge_size_min},
          {"edge_size_max", g.edge_size_max},
          {"p_within", g.p_within},
          {"p_noise", g.p_noise},
          {"direction_signal", g.direction_signal},
          {"skew", g.skew},
          {"feature_dim", g.feature_dim},
          {"feature_signal", g.feature_signal},
          {"seed", g.seed}};
}

template <typename T>
void read_key(const json& obj, const char* key, T& out) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    fail(ErrorCode::kInvalidArgument, std::string("config key \"") + key + "\" has the wrong type");
  }
}

void reject_unknown(const json& obj, std::initializer_list<const char*> keys, const char* where) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* k : keys) known = known || item.key() == k;
    if (!known) fail(ErrorCode::kInvalidArgument, std::string("unknown key \"") + item.key() + "\" in " + where);
  }
}

GeneratorConfig generator_from(const json& j) {
  require(j.is_object(), "\"generator\" must be an object");
  reject_unknown(j, {"n", "n_classes", "edges_per_class", "edge_size_min", "edge_size_max", "p_within",
                     "p_noise", "direction_signal", "skew", "feature_dim", "feature_signal", "seed"},
                 "generator");
  GeneratorConfig g;
  read_key(j, "n", g.n);
  read_key(j, "n_classes", g.n_classes);
  read_key(j, "edges_per_class", g.edges_per_class);
  read_key(j, "edge_size_min", g.edge_size_min);
  read_key(j, "edge_size_max", g.edge_size_max);
  read_key(j, "p_within", g.p_within);
  read_key(j, "p_noise", g.p_noise);
  read_key(j, "direction_signal", g.direction_signal);
  read_key(j, "skew", g.skew);
  read_key(j, "feature_dim", g.feature_dim);
  read_key(j, "feature_signal", g.feature_signal);
  read_key(j, "seed", g.seed);
  return g;
}

struct SplitOutcome {
  double accuracy = 0.0;
  std::vector<EpochRecord> history;
};

std::string history_csv(const std::vector<std::vector<EpochRecord>>& history) {
  std::ostringstream out;
  out << "split,epoch,loss,train_accuracy,test_accuracy\n";
  char buf[160];
  for (std::size_t s = 0; s < history.size(); ++s)
    for (const auto& r : history[s]) {
      std::snprintf(buf, sizeof buf, "%zu,%lld,%.17g,%.17g,%.17g\n", s, static_cast<long long>(r.epoch), r.loss,
                    r.train_accuracy, r.test_accuracy);
      out << buf;
    }
  return out.str();
}

}  // namespace

const char* version_string() { return MAGHYPER_VERSION; }

ModelKind parse_model_kind(const std::string& name) {
  for (auto k : {ModelKind::kMagnetic, ModelKind::kHgnn, ModelKind::kHgnnStar, ModelKind::kGcn, ModelKind::kSpectral})
    if (name == model_name(k)) return k;
  fail(ErrorCode::kInvalidArgument, "unknown model '" + name + "' (hmn, hgnn, hgnn-star, gcn, spectral)");
}

EdvwSource parse_edvw_source(const std::string& name) {
  for (auto s : {EdvwSource::kFile, EdvwSource::kDegree, EdvwSource::kUniform})
    if (name == edvw_name(s)) return s;
  fail(ErrorCode::kInvalidArgument, "unknown EDVW source '" + name + "' (file, degree, uniform)");
}

GeneratorConfig generator_config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::kParse, std::string("generator settings are not valid JSON: ") + e.what());
  }
  return generator_from(j);
}

std::string generator_config_to_json(const GeneratorConfig& config) { return generator_json(config).dump(2); }

void parse_charge(const std::string& text, ModelConfig& config) {
  if (text == "matrix") {
    config.charge_mode = ChargeMode::kMatrix;
    return;
  }
  if (text.rfind("q=", 0) == 0) {
    std::size_t used = 0;
    double q = 0.0;
    try {
      q = std::stod(text.substr(2), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used > 0 && used == text.size() - 2 && std::isfinite(q) && q >= 0.0) {
      config.charge_mode = ChargeMode::kScalar;
      config.charge = q;
      return;
    }
  }
  fail(ErrorCode::kInvalidArgument, "charge must be \"matrix\" or \"q=<nonnegative float>\", got '" + text + "'");
}

void ExperimentConfig::validate() const {
  if (generator) {
    generator->validate();
    require(hypergraph_path.empty() && features_path.empty() && labels_path.empty(),
            "give either data paths or a generator, not both");
  } else {
    require(!hypergraph_path.empty() && !features_path.empty() && !labels_path.empty(),
            "hypergraph, features and labels paths are required");
    for (const auto* p : {&hypergraph_path, &features_path, &labels_path})
      require(std::filesystem::exists(*p), "no such file: " + *p);
  }
  require(n_splits >= 1, "n_splits must be at least 1");
  require(train_fraction > 0.0 && train_fraction < 1.0, "train_fraction must lie in (0, 1)");
  require(threads >= 1, "threads must be at least 1");
  ModelConfig m = model_config;
  m.n_classes = std::max<Index>(m.n_classes, 2);
  m.validate();
}

std::string ExperimentConfig::to_json() const {
  json j;
  if (generator) {
    j["generator"] = generator_json(*generator);
  } else {
    j["data"] = {{"hypergraph", hypergraph_path},
                 {"features", features_path},
                 {"labels", labels_path},
                 {"drop_singleton_edges", drop_singleton_edges}};
  }
  j["edvw"] = edvw_name(edvw);
  j["model"] = model_name(model);
  j["charge"] = charge_name(model_config);
  j["hidden"] = model_config.hidden_dims;
  j["epochs"] = model_config.epochs;
  j["learning_rate"] = model_config.learning_rate;
  j["charge_learning_rate"] = model_config.charge_learning_rate;
  j["weight_decay"] = model_config.weight_decay;
  j["n_splits"] = n_splits;
  j["train_fraction"] = train_fraction;
  j["seed"] = seed;
  j["out"] = out_dir;
  j["threads"] = threads;
  return j.dump(2);
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::kParse, std::string("config is not valid JSON: ") + e.what());
  }
  require(j.is_object(), "config must be a JSON object");
  reject_unknown(j, {"data", "generator", "edvw", "model", "charge", "hidden", "epochs", "learning_rate",
                     "charge_learning_rate", "weight_decay", "n_splits", "train_fraction", "seed", "out", "threads"},
                 "config");
  ExperimentConfig c;
  if (j.contains("data")) {
    const auto& d = j["data"];
    require(d.is_object(), "\"data\" must be an object");
    reject_unknown(d, {"hypergraph", "features", "labels", "drop_singleton_edges"}, "data");
    read_key(d, "hypergraph", c.hypergraph_path);
    read_key(d, "features", c.features_path);
    read_key(d, "labels", c.labels_path);
    read_key(d, "drop_singleton_edges", c.drop_singleton_edges);
  }
  if (j.contains("generator")) c.generator = generator_from(j["generator"]);
  std::string s;
  if (j.contains("edvw")) {
    read_key(j, "edvw", s);
    c.edvw = parse_edvw_source(s);
  }
  if (j.contains("model")) {
    read_key(j, "model", s);
    c.model = parse_model_kind(s);
  }
  if (j.contains("charge")) {
    read_key(j, "charge", s);
    parse_charge(s, c.model_config);
  }
  read_key(j, "hidden", c.model_config.hidden_dims);
  read_key(j, "epochs", c.model_config.epochs);
  read_key(j, "learning_rate", c.model_config.learning_rate);
  read_key(j, "charge_learning_rate", c.model_config.charge_learning_rate);
  read_key(j, "weight_decay", c.model_config.weight_decay);
  read_key(j, "n_splits", c.n_splits);
  read_key(j, "train_fraction", c.train_fraction);
  read_key(j, "seed", c.seed);
  read_key(j, "out", c.out_dir);
  read_key(j, "threads", c.threads);
  return c;
}

std::string ExperimentReport::to_json() const {
  json j;
  j["per_split_accuracy"] = per_split_accuracy;
  j["mean"] = mean;
  j["std"] = std;
  j["history_csv_path"] = history_csv_path;
  j["wall_clock_seconds"] = wall_clock_seconds;
  j["config"] = config_json.empty() ? json::object() : json::parse(config_json);
  j["version"] = version;
  return j.dump(2);
}

EdvwMatrix select_edvw(const HypergraphData& data, EdvwSource source) {
  switch (source) {
    case EdvwSource::kFile:
      if (!data.edvw) fail(ErrorCode::kInvalidArgument, "hypergraph carries no EDVW values");
      return data.edvw->normalize(data.graph);
    case EdvwSource::kDegree:
      return degree_edvw(data.graph).normalize(data.graph);
    case EdvwSource::kUniform:
      return uniform_edvw(data.graph);
  }
  fail(ErrorCode::kInvalidArgument, "unknown EDVW source");
}

Dataset materialize(const ExperimentConfig& config) {
  if (!config.generator)
    return load_dataset(config.hypergraph_path, config.features_path, config.labels_path,
                        config.drop_singleton_edges);
  PlantedHypergraph planted = generate_planted_hypergraph(*config.generator);
  Dataset data;
  const Index n = planted.graph.num_vertices();
  for (Index v = 0; v < n; ++v) data.hypergraph.vertex_ids.push_back(std::to_string(v));
  for (Index e = 0; e < planted.graph.num_edges(); ++e) data.hypergraph.edge_ids.push_back("e" + std::to_string(e));
  data.hypergraph.graph = std::move(planted.graph);
  data.hypergraph.edvw = std::move(planted.edvw);
  if (config.drop_singleton_edges) data.hypergraph = data.hypergraph.without_singleton_edges();
  data.features = std::move(planted.features);
  for (Index c = 0; c < config.generator->n_classes; ++c) data.labels.classes.push_back("c" + std::to_string(c));
  data.labels.labels = std::move(planted.labels);
  return data;
}

void save_planted(const PlantedHypergraph& planted, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::kIo, "cannot create " + dir + ": " + ec.message());
  HypergraphData data;
  data.graph = planted.graph;
  data.edvw = planted.edvw;
  for (Index v = 0; v < planted.graph.num_vertices(); ++v) data.vertex_ids.push_back(std::to_string(v));
  for (Index e = 0; e < planted.graph.num_edges(); ++e) data.edge_ids.push_back("e" + std::to_string(e));
  save_hypergraph(dir + "/hypergraph.jsonl", data);
  save_features(dir + "/features.csv", planted.features, data.vertex_ids);
  LabelData labels;
  int n_classes = 0;
  for (int y : planted.labels) n_classes = std::max(n_classes, y + 1);
  for (int c = 0; c < n_classes; ++c) labels.classes.push_back("c" + std::to_string(c));
  labels.labels = planted.labels;
  save_labels(dir + "/labels.csv", labels, data.vertex_ids);
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  config.validate();
  const Dataset data = materialize(config);
  const auto& graph = data.hypergraph.graph;
  const int n_classes = data.labels.num_classes();
  require(n_classes >= 2, "at least two classes are required");
  ModelConfig model_config = config.model_config;
  model_config.n_classes = n_classes;
  model_config.validate();

  SparseMatrix op;
  switch (config.model) {
    case ModelKind::kMagnetic:
      op = edvw_transition(graph, select_edvw(data.hypergraph, config.edvw)).values;
      break;
    case ModelKind::kHgnn:
      op = zhou_laplacian(graph).propagation;
      break;
    case ModelKind::kHgnnStar:
      op = hgnn_star_laplacian(graph, select_edvw(data.hypergraph, config.edvw)).propagation;
      break;
    case ModelKind::kGcn:
      op = clique_gcn_propagator(graph).propagation;
      break;
    case ModelKind::kSpectral:
      op = clique_expansion(graph);
      break;
  }

  const auto n_splits = static_cast<std::size_t>(config.n_splits);
  std::vector<SplitOutcome> outcomes(n_splits);
  std::vector<std::exception_ptr> errors(n_splits);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t s = next++; s < n_splits; s = next++) {
      try {
        const SplitMask split = random_split(data.labels.labels, config.train_fraction, config.seed, s);
        ModelConfig mc = model_config;
        mc.seed = splitmix64(config.seed ^ splitmix64(s));
        if (config.model == ModelKind::kSpectral) {
          outcomes[s].accuracy =
              spectral_clustering_majority(op, n_classes, data.labels.labels, split.train, mc.seed).accuracy;
        } else if (config.model == ModelKind::kMagnetic) {
          TrainResult r = train(MagneticNetwork(op, mc), data.features, data.labels.labels, split);
          outcomes[s] = {r.test_accuracy, std::move(r.history)};
        } else {
          TrainResult r = train(RealNetwork(op, mc), data.features, data.labels.labels, split);
          outcomes[s] = {r.test_accuracy, std::move(r.history)};
        }
      } catch (...) {
        errors[s] = std::current_exception();
      }
    }
  };
  const auto n_threads = std::min<std::size_t>(static_cast<std::size_t>(config.threads), n_splits);
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (std::size_t s = 0; s < n_splits; ++s) {
    if (!errors[s]) continue;
    try {
      std::rethrow_exception(errors[s]);
    } catch (const Error& e) {
      fail(e.code(), "split " + std::to_string(s) + ": " + e.what());
    } catch (const std::exception& e) {
      fail(ErrorCode::kNumerical, "split " + std::to_string(s) + ": " + e.what());
    }
  }

  ExperimentReport report;
  for (auto& o : outcomes) {
    report.per_split_accuracy.push_back(o.accuracy);
    report.history.push_back(std::move(o.history));
  }
  const double k = static_cast<double>(n_splits);
  report.mean = std::accumulate(report.per_split_accuracy.begin(), report.per_split_accuracy.end(), 0.0) / k;
  double var = 0.0;
  for (double a : report.per_split_accuracy) var += (a - report.mean) * (a - report.mean);
  report.std = std::sqrt(var / k);
  report.config_json = config.to_json();
  report.version = version_string();

  if (!config.out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(config.out_dir, ec);
    if (ec) fail(ErrorCode::kIo, "cannot create " + config.out_dir + ": " + ec.message());
    report.history_csv_path = (std::filesystem::path(config.out_dir) / "history.csv").string();
    write_text(report.history_csv_path, history_csv(report.history));
  }
  report.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!config.out_dir.empty())
    write_text((std::filesystem::path(config.out_dir) / "report.json").string(), report.to_json());
  return report;
}

}  // namespace maghyper
