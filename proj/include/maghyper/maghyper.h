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

/* Stable C interface to the maghyper library.
 *
 * Every fallible call returns an mh_status. On failure the thread-local
 * message from mh_last_error() describes the cause; it stays valid until the
 * next failing call on the same thread. Handles are opaque and owned by the
 * caller, who releases them with the matching *_free function (NULL is
 * accepted). Strings returned through char** are released with
 * mh_string_free. */

#ifndef MAGHYPER_MAGHYPER_H_
#define MAGHYPER_MAGHYPER_H_

#include <stdint.h>

#if defined(_WIN32)
#define MH_API __declspec(dllexport)
#else
#define MH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mh_status {
  MH_OK = 0,
  MH_ERR_INVALID_ARGUMENT = 1, /* input violates a documented precondition */
  MH_ERR_PARSE = 2,            /* malformed file or JSON content */
  MH_ERR_IO = 3,               /* file could not be read or written */
  MH_ERR_NUMERICAL = 4,        /* solver failure or non-finite values */
  MH_ERR_INTERNAL = 5          /* unexpected failure, e.g. out of memory */
} mh_status;

typedef enum mh_walk {
  MH_WALK_ZHOU = 0, /* uniform member selection, ignores EDVW */
  MH_WALK_EDVW = 1  /* member selection proportional to EDVW */
} mh_walk;

typedef enum mh_edvw_source {
  MH_EDVW_FILE = 0,   /* weights stored with the hypergraph */
  MH_EDVW_DEGREE = 1, /* vertex degree over edge degree sum */
  MH_EDVW_UNIFORM = 2 /* all ones */
} mh_edvw_source;

typedef enum mh_laplacian_form {
  MH_LAPLACIAN_NORMALIZED = 0,
  MH_LAPLACIAN_UNNORMALIZED = 1
} mh_laplacian_form;

typedef struct mh_hypergraph mh_hypergraph;
typedef struct mh_transition mh_transition;
typedef struct mh_laplacian mh_laplacian;

MH_API const char* mh_version(void);
MH_API const char* mh_last_error(void);
MH_API const char* mh_status_name(mh_status status);
MH_API void mh_string_free(char* s);

/* Hypergraphs. */

/* Reads the line-JSON hypergraph format, optionally dropping edges of size 1. */
MH_API mh_status mh_hypergraph_load(const char* path, int drop_singleton_edges, mh_hypergraph** out);

/* Builds from CSR-style edge lists: edge e holds vertices
 * members[offsets[e] .. offsets[e + 1]). `weights` (length n_edges) and
 * `edvw` (parallel to `members`) may be NULL. */
MH_API mh_status mh_hypergraph_create(int64_t n_vertices, int64_t n_edges, const int64_t* offsets,
                                      const int64_t* members, const double* weights, const double* edvw,
                                      mh_hypergraph** out);
MH_API mh_status mh_hypergraph_save(const mh_hypergraph* graph, const char* path);
MH_API mh_status mh_hypergraph_size(const mh_hypergraph* graph, int64_t* n_vertices, int64_t* n_edges);
MH_API void mh_hypergraph_free(mh_hypergraph* graph);

/* Random walks. */

MH_API mh_status mh_transition_build(const mh_hypergraph* graph, mh_walk walk, mh_edvw_source edvw,
                                     mh_transition** out);
MH_API mh_status mh_transition_size(const mh_transition* p, int64_t* n);
/* Dense row-major copy into `out`, which must hold n * n doubles. */
MH_API mh_status mh_transition_dense(const mh_transition* p, double* out);
/* Coordinate text file, see the README for the layout. */
MH_API mh_status mh_transition_save(const mh_transition* p, const char* path);
/* JSON object with the stationary distribution residual, the detailed
 * balance residual and verdict at `tol`, the period, and the largest expected
 * hitting time (omitted when `with_hitting_times` is 0). */
MH_API mh_status mh_walk_report(const mh_transition* p, double tol, int with_hitting_times, char** json);
MH_API void mh_transition_free(mh_transition* p);

/* Magnetic Laplacians with a scalar charge q >= 0. */

MH_API mh_status mh_laplacian_build(const mh_transition* p, double q, mh_laplacian_form form,
                                    mh_laplacian** out);
/* Coordinate text file with real and imaginary parts. */
MH_API mh_status mh_laplacian_save(const mh_laplacian* l, const char* path);
/* JSON object with lambda_max and the `n_smallest` smallest eigenvalues. */
MH_API mh_status mh_laplacian_report(const mh_laplacian* l, int n_smallest, char** json);
MH_API void mh_laplacian_free(mh_laplacian* l);

/* Data generation and experiments. */

/* Samples the planted hypergraph described by `generator_json` (an object of
 * generator settings; "{}" uses the defaults) and writes hypergraph.jsonl,
 * features.csv and labels.csv into `out_dir`. `summary` (may be NULL)
 * receives a JSON object with sizes and the settings used. */
MH_API mh_status mh_generate(const char* generator_json, const char* out_dir, char** summary);

/* Runs every split of the experiment described by `config_json` and returns
 * the report as JSON. `threads_override` > 0 replaces the configured split
 * concurrency. */
MH_API mh_status mh_experiment_run(const char* config_json, int threads_override, char** report);

#ifdef __cplusplus
}
#endif

#endif /* MAGHYPER_MAGHYPER_H_ */
