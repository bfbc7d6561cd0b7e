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

#include "vlcsel/vlcsel.h"
#include "vlcsel/error.hpp"
#include "vlcsel/harness.hpp"
#include "vlcsel/orchestrator.hpp"
#include "vlcsel/scenario.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct vlcsel_scenario
{
    vlcsel::Scenario s;
};

struct vlcsel_result
{
    vlcsel::Scenario s; // instance the result was computed on
    vlcsel::RunResult r;
};

struct vlcsel_plan
{
    vlcsel::ExperimentPlan p;
    bool fr_set = false; // the first add_fr replaces the FR-1 default
};

namespace
{

thread_local std::string last_error;

vlcsel_status fail(vlcsel_status code, std::string msg)
{
    last_error = std::move(msg);
    return code;
}

// Runs f and maps exceptions onto status codes.
template <class F> vlcsel_status guarded(F &&f)
{
    try
    {
        last_error.clear();
        f();
        return VLCSEL_OK;
    }
    catch (const vlcsel::ParseError &e)
    {
        return fail(VLCSEL_ERR_PARSE, e.what());
    }
    catch (const vlcsel::InvalidScenario &e)
    {
        return fail(VLCSEL_ERR_INVALID_SCENARIO, e.what());
    }
    catch (const vlcsel::DomainError &e)
    {
        return fail(VLCSEL_ERR_DOMAIN, e.what());
    }
    catch (const vlcsel::Infeasible &e)
    {
        return fail(VLCSEL_ERR_INFEASIBLE, e.what());
    }
    catch (const vlcsel::SingularChannel &e)
    {
        return fail(VLCSEL_ERR_SINGULAR, e.what());
    }
    catch (const vlcsel::IoError &e)
    {
        return fail(VLCSEL_ERR_IO, e.what());
    }
    catch (const std::bad_alloc &)
    {
        return fail(VLCSEL_ERR_INTERNAL, "out of memory");
    }
    catch (const std::exception &e)
    {
        return fail(VLCSEL_ERR_INTERNAL, e.what());
    }
    catch (...)
    {
        return fail(VLCSEL_ERR_INTERNAL, "unknown exception");
    }
}

#define REQUIRE_ARG(x)                                                                                                 \
    do                                                                                                                 \
    {                                                                                                                  \
        if (!(x))                                                                                                      \
            return fail(VLCSEL_ERR_ARGUMENT, #x " is null");                                                           \
    } while (0)

char *dup_string(const std::string &s)
{
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (!out)
        throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

} // namespace

extern "C" {

const char *vlcsel_version(void)
{
    return "1.0.0";
}

const char *vlcsel_last_error(void)
{
    return last_error.c_str();
}

const char *vlcsel_status_name(vlcsel_status status)
{
    switch (status)
    {
    case VLCSEL_OK:
        return "ok";
    case VLCSEL_ERR_ARGUMENT:
        return "invalid argument";
    case VLCSEL_ERR_PARSE:
        return "parse error";
    case VLCSEL_ERR_INVALID_SCENARIO:
        return "invalid scenario";
    case VLCSEL_ERR_DOMAIN:
        return "domain error";
    case VLCSEL_ERR_INFEASIBLE:
        return "infeasible";
    case VLCSEL_ERR_SINGULAR:
        return "singular channel";
    case VLCSEL_ERR_IO:
        return "i/o error";
    case VLCSEL_ERR_INTERNAL:
        return "internal error";
    }
    return "unknown status";
}

void vlcsel_string_free(char *s)
{
    std::free(s);
}

vlcsel_status vlcsel_scenario_parse(const char *json_text, vlcsel_scenario **out)
{
    REQUIRE_ARG(json_text);
    REQUIRE_ARG(out);
    *out = nullptr;
    return guarded([&] { *out = new vlcsel_scenario{vlcsel::load_scenario(json_text)}; });
}

vlcsel_status vlcsel_scenario_load(const char *path, vlcsel_scenario **out)
{
    REQUIRE_ARG(path);
    REQUIRE_ARG(out);
    *out = nullptr;
    return guarded([&] { *out = new vlcsel_scenario{vlcsel::load_scenario_file(path)}; });
}

vlcsel_status vlcsel_scenario_default(size_t n_leds, size_t n_users, uint64_t seed, vlcsel_scenario **out)
{
    REQUIRE_ARG(out);
    *out = nullptr;
    return guarded([&] {
        vlcsel::Scenario s;
        s.led_positions = vlcsel::led_grid(n_leds, vlcsel::kDefaultLedArraySpan, vlcsel::kDefaultLedHeight);
        s = vlcsel::with_random_users(s, n_users, seed);
        vlcsel::validate(s);
        *out = new vlcsel_scenario{std::move(s)};
    });
}

void vlcsel_scenario_free(vlcsel_scenario *s)
{
    delete s;
}

vlcsel_status vlcsel_scenario_counts(const vlcsel_scenario *s, size_t *n_leds, size_t *n_users)
{
    REQUIRE_ARG(s);
    if (n_leds)
        *n_leds = s->s.num_leds();
    if (n_users)
        *n_users = s->s.num_users();
    return VLCSEL_OK;
}

vlcsel_status vlcsel_scenario_set_dimming(vlcsel_scenario *s, double eta)
{
    REQUIRE_ARG(s);
    return guarded([&] {
        vlcsel::Scenario next = s->s;
        next.dimming_target = eta;
        vlcsel::validate(next);
        s->s = std::move(next);
    });
}

vlcsel_status vlcsel_scenario_reseed(vlcsel_scenario *s, uint64_t seed)
{
    REQUIRE_ARG(s);
    return guarded([&] { s->s = vlcsel::with_random_users(s->s, s->s.num_users(), seed); });
}

vlcsel_status vlcsel_scenario_to_json(const vlcsel_scenario *s, char **out)
{
    REQUIRE_ARG(s);
    REQUIRE_ARG(out);
    *out = nullptr;
    return guarded([&] { *out = dup_string(vlcsel::serialize_scenario(s->s)); });
}

vlcsel_status vlcsel_run(const vlcsel_scenario *s, const char *scheme, vlcsel_result **out)
{
    REQUIRE_ARG(s);
    REQUIRE_ARG(scheme);
    REQUIRE_ARG(out);
    *out = nullptr;
    vlcsel::Scheme sc{};
    try
    {
        sc = vlcsel::parse_scheme(scheme);
    }
    catch (const vlcsel::Error &e)
    {
        return fail(VLCSEL_ERR_ARGUMENT, e.what());
    }
    return guarded([&] { *out = new vlcsel_result{s->s, vlcsel::run_scheme(sc, s->s)}; });
}

void vlcsel_result_free(vlcsel_result *r)
{
    delete r;
}

vlcsel_status vlcsel_result_metrics(const vlcsel_result *r, vlcsel_metrics *out)
{
    REQUIRE_ARG(r);
    REQUIRE_ARG(out);
    const auto &x = r->r;
    out->sum_rate = x.sum_rate;
    out->mbe = x.mbe;
    out->cv = x.cv;
    out->lux_min = x.lux_min;
    out->lux_max = x.lux_max;
    out->bias_current = x.dimming.bias;
    out->headroom = x.dimming.headroom;
    out->iterations = x.iterations;
    out->converged = x.converged ? 1 : 0;
    out->num_cells = x.links.size();
    out->active_leds = static_cast<size_t>(x.selection.active().size());
    return VLCSEL_OK;
}

vlcsel_status vlcsel_result_mbe(const vlcsel_result *r, int reuse, double *out)
{
    REQUIRE_ARG(r);
    REQUIRE_ARG(out);
    return guarded([&] { *out = vlcsel::evaluate_fr(r->r, r->s, reuse); });
}

vlcsel_status vlcsel_result_json(const vlcsel_result *r, char **out)
{
    REQUIRE_ARG(r);
    REQUIRE_ARG(out);
    *out = nullptr;
    return guarded([&] { *out = dup_string(vlcsel::run_result_json(r->r)); });
}

vlcsel_status vlcsel_result_led_weights(const vlcsel_result *r, double *buf, size_t len)
{
    REQUIRE_ARG(r);
    REQUIRE_ARG(buf);
    const auto w = r->r.led_weights();
    if (len != w.size())
        return fail(VLCSEL_ERR_ARGUMENT, "buffer holds " + std::to_string(len) + " values, need " +
                                             std::to_string(w.size()));
    std::copy(w.begin(), w.end(), buf);
    return VLCSEL_OK;
}

vlcsel_status vlcsel_result_rate_trace(const vlcsel_result *r, double *buf, size_t len, size_t *count)
{
    REQUIRE_ARG(r);
    REQUIRE_ARG(count);
    const auto &t = r->r.rate_trace;
    *count = t.size();
    if (buf)
        std::copy_n(t.begin(), std::min(len, t.size()), buf);
    return VLCSEL_OK;
}

vlcsel_status vlcsel_illuminance_map(const vlcsel_scenario *s, const double *weights, size_t len, const char *path)
{
    REQUIRE_ARG(s);
    REQUIRE_ARG(weights || len == 0);
    REQUIRE_ARG(path);
    return guarded([&] { vlcsel::emit_illuminance_map(s->s, std::vector<double>(weights, weights + len), path); });
}

vlcsel_status vlcsel_plan_create(vlcsel_plan **out)
{
    REQUIRE_ARG(out);
    *out = nullptr;
    return guarded([&] { *out = new vlcsel_plan{}; });
}

void vlcsel_plan_free(vlcsel_plan *p)
{
    delete p;
}

vlcsel_status vlcsel_plan_set_scenario_path(vlcsel_plan *p, const char *path)
{
    REQUIRE_ARG(p);
    REQUIRE_ARG(path);
    p->p.scenario_path = path;
    return VLCSEL_OK;
}

vlcsel_status vlcsel_plan_add_scheme(vlcsel_plan *p, const char *scheme)
{
    REQUIRE_ARG(p);
    REQUIRE_ARG(scheme);
    try
    {
        p->p.schemes.push_back(vlcsel::parse_scheme(scheme));
    }
    catch (const vlcsel::Error &e)
    {
        return fail(VLCSEL_ERR_ARGUMENT, e.what());
    }
    return VLCSEL_OK;
}

vlcsel_status vlcsel_plan_add_dimming(vlcsel_plan *p, double eta)
{
    REQUIRE_ARG(p);
    if (!(eta > 0.0 && eta <= 1.0))
        return fail(VLCSEL_ERR_ARGUMENT, "dimming level " + std::to_string(eta) + " outside (0, 1]");
    p->p.dimming_levels.push_back(eta);
    return VLCSEL_OK;
}

vlcsel_status vlcsel_plan_add_fr(vlcsel_plan *p, int reuse)
{
    REQUIRE_ARG(p);
    if (reuse < 0)
        return fail(VLCSEL_ERR_ARGUMENT, "reuse factor must be >= 0");
    if (!p->fr_set)
        p->p.fr_modes.clear();
    p->fr_set = true;
    p->p.fr_modes.push_back(reuse);
    return VLCSEL_OK;
}

vlcsel_status vlcsel_plan_add_seed(vlcsel_plan *p, uint64_t seed)
{
    REQUIRE_ARG(p);
    p->p.seeds.push_back(seed);
    return VLCSEL_OK;
}

vlcsel_status vlcsel_plan_set_output_dir(vlcsel_plan *p, const char *dir)
{
    REQUIRE_ARG(p);
    REQUIRE_ARG(dir);
    p->p.output_dir = dir;
    return VLCSEL_OK;
}

vlcsel_status vlcsel_plan_set_workers(vlcsel_plan *p, unsigned workers)
{
    REQUIRE_ARG(p);
    p->p.workers = workers;
    return VLCSEL_OK;
}

vlcsel_status vlcsel_plan_set_verbosity(vlcsel_plan *p, int verbosity)
{
    REQUIRE_ARG(p);
    p->p.verbosity = verbosity;
    return VLCSEL_OK;
}

vlcsel_status vlcsel_plan_set_redraw_users(vlcsel_plan *p, int redraw)
{
    REQUIRE_ARG(p);
    p->p.redraw_users = redraw != 0;
    return VLCSEL_OK;
}

vlcsel_status vlcsel_experiment_run(const vlcsel_plan *p, vlcsel_log_fn log, void *user, int *exit_code)
{
    REQUIRE_ARG(p);
    REQUIRE_ARG(exit_code);
    return guarded([&] {
        vlcsel::LogSink sink;
        if (log)
            sink = [log, user](int level, const std::string &line) { log(level, line.c_str(), user); };
        const auto outcome = vlcsel::run_experiment(p->p, sink);
        *exit_code = outcome.exit_code;
        if (outcome.exit_code != vlcsel::kExitOk)
        {
            std::string msg;
            for (const auto &d : outcome.diagnostics)
                msg += (msg.empty() ? "" : "\n") + d;
            last_error = msg;
        }
    });
}

} // extern "C"
