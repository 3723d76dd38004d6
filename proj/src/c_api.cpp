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

#include "maghyper/maghyper.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "maghyper/experiment.hpp"
#include "maghyper/generator.hpp"
#include "maghyper/io.hpp"
#include "maghyper/magnetic.hpp"
#include "maghyper/random_walk.hpp"

struct mh_hypergraph {
  maghyper::HypergraphData data;
};

struct mh_transition {
  maghyper::TransitionMatrix p;
};

struct mh_laplacian {
  maghyper::MagneticLaplacian l;
};

namespace {

using maghyper::ErrorCode;
using maghyper::Index;
using nlohmann::json;

thread_local std::string last_error;

mh_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return MH_ERR_INVALID_ARGUMENT;
    case ErrorCode::kParse: return MH_ERR_PARSE;
    case ErrorCode::kIo: return MH_ERR_IO;
    case ErrorCode::kNumerical: return MH_ERR_NUMERICAL;
  }
  return MH_ERR_INTERNAL;
}

// Runs `body`, translating exceptions into a status and the thread-local
// error message.
template <typename F>
mh_status guarded(F&& body) {
  try {
    body();
    return MH_OK;
  } catch (const maghyper::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return MH_ERR_INTERNAL;
}

void check_arg(const void* ptr, const char* name) {
  if (ptr == nullptr) maghyper::fail(ErrorCode::kInvalidArgument, std::string(name) + " must not be NULL");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

maghyper::EdvwSource edvw_source(mh_edvw_source s) {
  switch (s) {
    case MH_EDVW_FILE: return maghyper::EdvwSource::kFile;
    case MH_EDVW_DEGREE: return maghyper::EdvwSource::kDegree;
    case MH_EDVW_UNIFORM: return maghyper::EdvwSource::kUniform;
  }
  maghyper::fail(ErrorCode::kInvalidArgument, "unknown EDVW source");
}

}  // namespace

extern "C" {

const char* mh_version(void) { return maghyper::version_string(); }

const char* mh_last_error(void) { return last_error.c_str(); }

const char* mh_status_name(mh_status status) {
  switch (status) {
    case MH_OK: return "ok";
    case MH_ERR_INVALID_ARGUMENT: return "invalid argument";
    case MH_ERR_PARSE: return "parse error";
    case MH_ERR_IO: return "i/o error";
    case MH_ERR_NUMERICAL: return "numerical error";
    case MH_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void mh_string_free(char* s) { std::free(s); }

mh_status mh_hypergraph_load(const char* path, int drop_singleton_edges, mh_hypergraph** out) {
  return guarded([&] {
    check_arg(path, "path");
    check_arg(out, "out");
    *out = nullptr;
    auto data = maghyper::load_hypergraph(path);
    if (drop_singleton_edges) data = data.without_singleton_edges();
    *out = new mh_hypergraph{std::move(data)};
  });
}

mh_status mh_hypergraph_create(int64_t n_vertices, int64_t n_edges, const int64_t* offsets,
                               const int64_t* members, const double* weights, const double* edvw,
                               mh_hypergraph** out) {
  return guarded([&] {
    check_arg(out, "out");
    *out = nullptr;
    maghyper::require(n_vertices >= 0 && n_edges >= 0, "sizes must be nonnegative");
    if (n_edges > 0) {
      check_arg(offsets, "offsets");
      check_arg(members, "members");
    }
    std::vector<std::vector<Index>> edges(static_cast<std::size_t>(n_edges));
    std::vector<std::vector<double>> gamma(edvw ? edges.size() : 0);
    for (int64_t e = 0; e < n_edges; ++e) {
      const int64_t begin = offsets[e];
      const int64_t end = offsets[e + 1];
      maghyper::require(begin >= 0 && end >= begin, "offsets must be nondecreasing from 0");
      // The hypergraph stores sorted members, so EDVW values follow the sort.
      std::vector<std::pair<Index, double>> rows;
      for (int64_t k = begin; k < end; ++k) rows.emplace_back(members[k], edvw ? edvw[k] : 1.0);
      std::sort(rows.begin(), rows.end());
      for (const auto& [v, g] : rows) {
        edges[static_cast<std::size_t>(e)].push_back(v);
        if (edvw) gamma[static_cast<std::size_t>(e)].push_back(g);
      }
    }
    std::span<const double> w;
    if (weights) w = std::span<const double>(weights, static_cast<std::size_t>(n_edges));
    maghyper::HypergraphData data;
    data.graph = maghyper::Hypergraph(n_vertices, std::move(edges), w);
    if (edvw) data.edvw = maghyper::EdvwMatrix::from_edge_lists(data.graph, gamma);
    for (int64_t v = 0; v < n_vertices; ++v) data.vertex_ids.push_back(std::to_string(v));
    for (int64_t e = 0; e < n_edges; ++e) data.edge_ids.push_back("e" + std::to_string(e));
    *out = new mh_hypergraph{std::move(data)};
  });
}

mh_status mh_hypergraph_save(const mh_hypergraph* graph, const char* path) {
  return guarded([&] {
    check_arg(graph, "graph");
    check_arg(path, "path");
    maghyper::save_hypergraph(path, graph->data);
  });
}

mh_status mh_hypergraph_size(const mh_hypergraph* graph, int64_t* n_vertices, int64_t* n_edges) {
  return guarded([&] {
    check_arg(graph, "graph");
    if (n_vertices) *n_vertices = graph->data.graph.num_vertices();
    if (n_edges) *n_edges = graph->data.graph.num_edges();
  });
}

void mh_hypergraph_free(mh_hypergraph* graph) { delete graph; }

mh_status mh_transition_build(const mh_hypergraph* graph, mh_walk walk, mh_edvw_source edvw,
                              mh_transition** out) {
  return guarded([&] {
    check_arg(graph, "graph");
    check_arg(out, "out");
    *out = nullptr;
    maghyper::TransitionMatrix p;
    switch (walk) {
      case MH_WALK_ZHOU:
        p = maghyper::zhou_transition(graph->data.graph);
        break;
      case MH_WALK_EDVW:
        p = maghyper::edvw_transition(graph->data.graph, maghyper::select_edvw(graph->data, edvw_source(edvw)));
        break;
      default:
        maghyper::fail(ErrorCode::kInvalidArgument, "unknown walk kind");
    }
    *out = new mh_transition{std::move(p)};
  });
}

mh_status mh_transition_size(const mh_transition* p, int64_t* n) {
  return guarded([&] {
    check_arg(p, "p");
    check_arg(n, "n");
    *n = p->p.size();
  });
}

mh_status mh_transition_dense(const mh_transition* p, double* out) {
  return guarded([&] {
    check_arg(p, "p");
    check_arg(out, "out");
    const Index n = p->p.size();
    std::fill(out, out + n * n, 0.0);
    const auto& m = p->p.values;
    for (Index r = 0; r < m.outerSize(); ++r)
      for (maghyper::SparseMatrix::InnerIterator it(m, r); it; ++it) out[r * n + it.col()] = it.value();
  });
}

mh_status mh_transition_save(const mh_transition* p, const char* path) {
  return guarded([&] {
    check_arg(p, "p");
    check_arg(path, "path");
    maghyper::save_coo(path, p->p.values);
  });
}

mh_status mh_walk_report(const mh_transition* p, double tol, int with_hitting_times, char** out) {
  return guarded([&] {
    check_arg(p, "p");
    check_arg(out, "json");
    *out = nullptr;
    maghyper::require(tol >= 0.0, "tolerance must be nonnegative");
    json j;
    j["n"] = p->p.size();
    const bool irreducible = maghyper::is_irreducible(p->p.values);
    j["irreducible"] = irreducible;
    if (!irreducible) {
      *out = copy_string(j.dump(2));
      return;
    }
    j["period"] = maghyper::chain_period(p->p.values);
    maghyper::StationaryOptions options;
    options.allow_lazy = true;
    const auto pi = maghyper::stationary_distribution(p->p, options);
    j["stationary_residual"] = pi.residual;
    j["used_lazy_chain"] = pi.used_lazy_chain;
    const auto rev = maghyper::is_reversible(p->p, pi.values, tol);
    j["detailed_balance_residual"] = rev.residual;
    j["reversible"] = rev.reversible;
    if (with_hitting_times) j["max_hitting_time"] = maghyper::hitting_times(p->p).maxCoeff();
    *out = copy_string(j.dump(2));
  });
}

void mh_transition_free(mh_transition* p) { delete p; }

mh_status mh_laplacian_build(const mh_transition* p, double q, mh_laplacian_form form, mh_laplacian** out) {
  return guarded([&] {
    check_arg(p, "p");
    check_arg(out, "out");
    *out = nullptr;
    maghyper::require(q >= 0.0, "charge q must be nonnegative");
    maghyper::LaplacianForm f = maghyper::LaplacianForm::kNormalized;
    if (form == MH_LAPLACIAN_UNNORMALIZED)
      f = maghyper::LaplacianForm::kUnnormalized;
    else if (form != MH_LAPLACIAN_NORMALIZED)
      maghyper::fail(ErrorCode::kInvalidArgument, "unknown Laplacian form");
    *out = new mh_laplacian{maghyper::magnetic_laplacian(p->p.values, maghyper::ChargeParams::scalar(q), f, true)};
  });
}

mh_status mh_laplacian_save(const mh_laplacian* l, const char* path) {
  return guarded([&] {
    check_arg(l, "l");
    check_arg(path, "path");
    maghyper::save_coo(path, l->l.laplacian);
  });
}

mh_status mh_laplacian_report(const mh_laplacian* l, int n_smallest, char** out) {
  return guarded([&] {
    check_arg(l, "l");
    check_arg(out, "json");
    *out = nullptr;
    maghyper::require(n_smallest >= 0, "n_smallest must be nonnegative");
    json j;
    j["n"] = l->l.size();
    j["form"] = l->l.form == maghyper::LaplacianForm::kNormalized ? "normalized" : "unnormalized";
    j["lambda_max"] = l->l.lambda_max.value_or(0.0);
    std::vector<double> smallest;
    if (n_smallest > 0) {
      const auto spectrum = maghyper::spectral_decomposition(l->l);
      const Index k = std::min<Index>(n_smallest, spectrum.values.size());
      smallest.assign(spectrum.values.data(), spectrum.values.data() + k);
    }
    j["smallest_eigenvalues"] = smallest;
    *out = copy_string(j.dump(2));
  });
}

void mh_laplacian_free(mh_laplacian* l) { delete l; }

mh_status mh_generate(const char* generator_json, const char* out_dir, char** summary) {
  return guarded([&] {
    check_arg(generator_json, "generator_json");
    check_arg(out_dir, "out_dir");
    if (summary) *summary = nullptr;
    const auto config = maghyper::generator_config_from_json(generator_json);
    const auto planted = maghyper::generate_planted_hypergraph(config);
    maghyper::save_planted(planted, out_dir);
    if (!summary) return;
    json j;
    j["n_vertices"] = planted.graph.num_vertices();
    j["n_edges"] = planted.graph.num_edges();
    j["feature_dim"] = planted.features.cols();
    j["out"] = out_dir;
    j["generator"] = json::parse(maghyper::generator_config_to_json(config));
    *summary = copy_string(j.dump(2));
  });
}

mh_status mh_experiment_run(const char* config_json, int threads_override, char** report) {
  return guarded([&] {
    check_arg(config_json, "config_json");
    check_arg(report, "report");
    *report = nullptr;
    auto config = maghyper::ExperimentConfig::from_json(config_json);
    if (threads_override > 0) config.threads = threads_override;
    *report = copy_string(maghyper::run_experiment(config).to_json());
  });
}

}  // extern "C"
