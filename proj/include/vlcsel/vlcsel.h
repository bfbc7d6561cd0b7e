// SPDX-License-Identifier: Apache-2.0
//
// vlcsel: joint LED selection and precoding for multi-cell VLC networks
// Copyright (C) 2026 The vlcsel authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

/* C interface to vlcsel. Every object is an opaque handle released by its
 * matching _free function. Functions return a vlcsel_status; on failure
 * vlcsel_last_error() describes the cause (per thread, valid until the next
 * call on that thread). Strings returned through char** are owned by the
 * caller and released with vlcsel_string_free. */

#ifndef VLCSEL_H
#define VLCSEL_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define VLCSEL_API __declspec(dllexport)
#else
#define VLCSEL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vlcsel_status
{
    VLCSEL_OK = 0,
    VLCSEL_ERR_ARGUMENT = 1,         /* null pointer, bad buffer size, unknown name */
    VLCSEL_ERR_PARSE = 2,            /* malformed configuration text */
    VLCSEL_ERR_INVALID_SCENARIO = 3, /* a field breaks its documented range */
    VLCSEL_ERR_DOMAIN = 4,
    VLCSEL_ERR_INFEASIBLE = 5,
    VLCSEL_ERR_SINGULAR = 6,
    VLCSEL_ERR_IO = 7,
    VLCSEL_ERR_INTERNAL = 8
} vlcsel_status;

typedef struct vlcsel_scenario vlcsel_scenario;
typedef struct vlcsel_result vlcsel_result;
typedef struct vlcsel_plan vlcsel_plan;

typedef struct vlcsel_metrics
{
    double sum_rate; /* FR-1 sum-rate, bit/s/Hz */
    double mbe;      /* FR-1 MBE including the duty cycle */
    double cv;       /* CV(RMSE) of the lighting */
    double lux_min;
    double lux_max;
    double bias_current;
    double headroom;
    int iterations;
    int converged;
    size_t num_cells;
    size_t active_leds;
} vlcsel_metrics;

typedef void (*vlcsel_log_fn)(int level, const char *line, void *user);

VLCSEL_API const char *vlcsel_version(void);
VLCSEL_API const char *vlcsel_last_error(void);
VLCSEL_API const char *vlcsel_status_name(vlcsel_status status);
VLCSEL_API void vlcsel_string_free(char *s);

/* Scenarios */
VLCSEL_API vlcsel_status vlcsel_scenario_parse(const char *json_text, vlcsel_scenario **out);
VLCSEL_API vlcsel_status vlcsel_scenario_load(const char *path, vlcsel_scenario **out);
/* Default room with an n_leds grid and n_users random users. */
VLCSEL_API vlcsel_status vlcsel_scenario_default(size_t n_leds, size_t n_users, uint64_t seed,
                                                 vlcsel_scenario **out);
VLCSEL_API void vlcsel_scenario_free(vlcsel_scenario *s);
VLCSEL_API vlcsel_status vlcsel_scenario_counts(const vlcsel_scenario *s, size_t *n_leds, size_t *n_users);
VLCSEL_API vlcsel_status vlcsel_scenario_set_dimming(vlcsel_scenario *s, double eta);
/* Redraws the users (same count) and reseeds the solver. */
VLCSEL_API vlcsel_status vlcsel_scenario_reseed(vlcsel_scenario *s, uint64_t seed);
VLCSEL_API vlcsel_status vlcsel_scenario_to_json(const vlcsel_scenario *s, char **out);

/* Single runs. scheme is one of "tasp-hd", "tasp-hd-up", "ad", "dd". */
VLCSEL_API vlcsel_status vlcsel_run(const vlcsel_scenario *s, const char *scheme, vlcsel_result **out);
VLCSEL_API void vlcsel_result_free(vlcsel_result *r);
VLCSEL_API vlcsel_status vlcsel_result_metrics(const vlcsel_result *r, vlcsel_metrics *out);
/* MBE under FR-n; n must be 1 or the cell count. */
VLCSEL_API vlcsel_status vlcsel_result_mbe(const vlcsel_result *r, int reuse, double *out);
VLCSEL_API vlcsel_status vlcsel_result_json(const vlcsel_result *r, char **out);
/* Writes n_leds illumination weights (see vlcsel_scenario_counts). */
VLCSEL_API vlcsel_status vlcsel_result_led_weights(const vlcsel_result *r, double *buf, size_t len);
VLCSEL_API vlcsel_status vlcsel_result_rate_trace(const vlcsel_result *r, double *buf, size_t len,
                                                  size_t *count);

/* x,y,lux CSV over the sample lattice. weights has n_leds entries. */
VLCSEL_API vlcsel_status vlcsel_illuminance_map(const vlcsel_scenario *s, const double *weights, size_t len,
                                                const char *path);

/* Experiment sweeps */
VLCSEL_API vlcsel_status vlcsel_plan_create(vlcsel_plan **out);
VLCSEL_API void vlcsel_plan_free(vlcsel_plan *p);
VLCSEL_API vlcsel_status vlcsel_plan_set_scenario_path(vlcsel_plan *p, const char *path);
VLCSEL_API vlcsel_status vlcsel_plan_add_scheme(vlcsel_plan *p, const char *scheme);
VLCSEL_API vlcsel_status vlcsel_plan_add_dimming(vlcsel_plan *p, double eta);
/* 0 selects one frequency group per cell. FR-1 alone until the first call. */
VLCSEL_API vlcsel_status vlcsel_plan_add_fr(vlcsel_plan *p, int reuse);
VLCSEL_API vlcsel_status vlcsel_plan_add_seed(vlcsel_plan *p, uint64_t seed);
VLCSEL_API vlcsel_status vlcsel_plan_set_output_dir(vlcsel_plan *p, const char *dir);
VLCSEL_API vlcsel_status vlcsel_plan_set_workers(vlcsel_plan *p, unsigned workers);
VLCSEL_API vlcsel_status vlcsel_plan_set_verbosity(vlcsel_plan *p, int verbosity);
VLCSEL_API vlcsel_status vlcsel_plan_set_redraw_users(vlcsel_plan *p, int redraw);
/* exit_code receives 0 (ok), 1 (run failures) or 2 (invalid input). A nonzero
 * exit code leaves the per-run diagnostics in vlcsel_last_error(). */
VLCSEL_API vlcsel_status vlcsel_experiment_run(const vlcsel_plan *p, vlcsel_log_fn log, void *user,
                                               int *exit_code);

#ifdef __cplusplus
}
#endif

#endif /* VLCSEL_H */
