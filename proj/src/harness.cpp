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

#include "vlcsel/harness.hpp"
#include "vlcsel/error.hpp"
#include "vlcsel/illumination.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <unistd.h>

namespace vlcsel
{

namespace
{

std::string num(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

template <class T> T parse_field(std::string_view s, std::string_view name, std::size_t line)
{
    T v{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw ParseError("metrics line " + std::to_string(line) + ": bad " + std::string(name) + " '" +
                         std::string(s) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view line, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true)
    {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

Scenario default_scenario()
{
    Scenario s;
    s.led_positions = led_grid(64, kDefaultLedArraySpan, kDefaultLedHeight);
    s.user_positions = place_users_random(s, 16, s.solver.rng_seed);
    return s;
}

std::string run_file_name(Scheme scheme, double eta, std::uint64_t seed)
{
    return scheme_name(scheme) + "_eta" + num(eta) + "_seed" + std::to_string(seed) + ".json";
}

struct Job
{
    Scheme scheme;
    double eta;
    std::uint64_t seed;
};

struct JobResult
{
    std::vector<MetricsRow> rows;
    std::vector<std::string> notes;
    std::string json;
    bool failed = false;
};

JobResult run_job(const Scenario &base, const ExperimentPlan &plan, const Job &job)
{
    using nlohmann::json;
    JobResult out;
    json doc;
    try
    {
        const Scenario s = scenario_for_run(base, job.eta, job.seed, plan.redraw_users);
        const RunResult r = run_scheme(job.scheme, s);
        doc = json::parse(run_result_json(r, -1));
        json fr = json::object();
        const int nc = static_cast<int>(r.links.size());
        for (int mode : plan.fr_modes)
        {
            const int n = mode == kReusePerCell ? nc : mode;
            if (n != 1 && n != nc)
            {
                out.notes.push_back(scheme_name(job.scheme) + " eta=" + num(job.eta) + " seed=" +
                                    std::to_string(job.seed) + ": FR-" + std::to_string(n) + " skipped, " +
                                    std::to_string(nc) + " cells");
                continue;
            }
            MetricsRow row;
            row.scheme = scheme_name(job.scheme);
            row.eta = job.eta;
            row.n_t = s.num_leds();
            row.n_r = s.num_users();
            row.fr = n;
            row.seed = job.seed;
            row.mbe = evaluate_fr(r, s, n);
            row.cv = r.cv;
            row.sum_rate = r.sum_rate;
            row.iterations = r.iterations;
            fr["FR-" + std::to_string(n)] = row.mbe;
            out.rows.push_back(row);
        }
        doc["seed"] = job.seed;
        doc["n_t_total"] = s.num_leds();
        doc["n_r"] = s.num_users();
        doc["num_cells"] = nc;
        doc["mbe"] = fr;
    }
    catch (const std::exception &e)
    {
        out.failed = true;
        out.rows.clear();
        out.notes.push_back(scheme_name(job.scheme) + " eta=" + num(job.eta) + " seed=" + std::to_string(job.seed) +
                            ": " + e.what());
        doc = {{"scheme", scheme_name(job.scheme)}, {"eta", job.eta}, {"seed", job.seed}, {"error", e.what()}};
    }
    out.json = doc.dump(2) + "\n";
    return out;
}

} // namespace

void validate(const ExperimentPlan &plan)
{
    if (plan.schemes.empty())
        throw InvalidScenario("schemes", "at least one scheme is required");
    if (plan.dimming_levels.empty())
        throw InvalidScenario("dimming_levels", "at least one level is required");
    if (plan.seeds.empty())
        throw InvalidScenario("seeds", "at least one seed is required");
    if (plan.fr_modes.empty())
        throw InvalidScenario("fr_modes", "at least one FR mode is required");
    for (double eta : plan.dimming_levels)
        if (!(eta > 0.0 && eta <= 1.0))
            throw InvalidScenario("dimming_levels", "level " + num(eta) + " outside (0, 1]");
    for (int n : plan.fr_modes)
        if (n < 0)
            throw InvalidScenario("fr_modes", "reuse factor must be positive");
    if (plan.output_dir.empty())
        throw InvalidScenario("output_dir", "must be set");
}

std::string metrics_csv_header()
{
    return "scheme,eta,N_T,N_R,FR,seed,MBE,CV,R,iterations";
}

std::string format_metrics_row(const MetricsRow &r)
{
    std::string out = r.scheme;
    out += ',' + num(r.eta) + ',' + std::to_string(r.n_t) + ',' + std::to_string(r.n_r) + ',' +
           std::to_string(r.fr) + ',' + std::to_string(r.seed) + ',' + num(r.mbe) + ',' + num(r.cv) + ',' +
           num(r.sum_rate) + ',' + std::to_string(r.iterations);
    return out;
}

std::string metrics_csv(const std::vector<MetricsRow> &rows)
{
    std::string out = metrics_csv_header() + "\n";
    for (const auto &r : rows)
        out += format_metrics_row(r) + "\n";
    return out;
}

std::vector<MetricsRow> parse_metrics_csv(std::string_view text)
{
    std::vector<MetricsRow> rows;
    std::size_t line_no = 0;
    bool header = false;
    for (auto line : split(text, '\n'))
    {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line.empty())
            continue;
        if (!header)
        {
            if (line != metrics_csv_header())
                throw ParseError("metrics header mismatch: '" + std::string(line) + "'");
            header = true;
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() != 10)
            throw ParseError("metrics line " + std::to_string(line_no) + ": expected 10 fields, got " +
                             std::to_string(f.size()));
        MetricsRow r;
        r.scheme = std::string(f[0]);
        parse_scheme(r.scheme);
        r.eta = parse_field<double>(f[1], "eta", line_no);
        r.n_t = parse_field<std::size_t>(f[2], "N_T", line_no);
        r.n_r = parse_field<std::size_t>(f[3], "N_R", line_no);
        r.fr = parse_field<int>(f[4], "FR", line_no);
        r.seed = parse_field<std::uint64_t>(f[5], "seed", line_no);
        r.mbe = parse_field<double>(f[6], "MBE", line_no);
        r.cv = parse_field<double>(f[7], "CV", line_no);
        r.sum_rate = parse_field<double>(f[8], "R", line_no);
        r.iterations = parse_field<int>(f[9], "iterations", line_no);
        rows.push_back(std::move(r));
    }
    if (!header)
        throw ParseError("metrics file has no header");
    return rows;
}

Scenario scenario_for_run(const Scenario &base, double eta, std::uint64_t seed, bool redraw_users)
{
    Scenario s = redraw_users ? with_random_users(base, base.num_users(), seed) : base;
    s.solver.rng_seed = seed;
    s.dimming_target = eta;
    validate(s);
    return s;
}

void write_file_atomic(const std::string &path, std::string_view content)
{
    static std::atomic<unsigned long> counter{0};
    const std::string tmp =
        path + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter.fetch_add(1));
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            throw IoError("cannot open " + tmp + " for writing");
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        f.flush();
        if (!f)
        {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw IoError("write to " + tmp + " failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
    {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot rename " + tmp + " to " + path);
    }
}

std::string illuminance_map_csv(const Scenario &scenario, const std::vector<double> &led_weights)
{
    if (led_weights.size() != scenario.num_leds())
        throw DomainError("expected " + std::to_string(scenario.num_leds()) + " LED weights, got " +
                          std::to_string(led_weights.size()));
    const IlluminanceField field = build_field(scenario);
    const Eigen::VectorXd lux = point_totals(field, led_weights);
    std::string out = "x,y,lux\n";
    for (std::size_t k = 0; k < field.num_points(); ++k)
        out += num(field.points[k].x) + ',' + num(field.points[k].y) + ',' + num(lux(static_cast<Eigen::Index>(k))) +
               '\n';
    return out;
}

void emit_illuminance_map(const Scenario &scenario, const std::vector<double> &led_weights, const std::string &path)
{
    write_file_atomic(path, illuminance_map_csv(scenario, led_weights));
}

ExperimentOutcome run_experiment(const ExperimentPlan &plan, const LogSink &log)
{
    ExperimentOutcome outcome;
    auto say = [&](int level, const std::string &line) {
        if (log && level <= plan.verbosity)
            log(level, line);
    };

    Scenario base;
    try
    {
        validate(plan);
        if (plan.scenario)
            base = *plan.scenario;
        else if (!plan.scenario_path.empty())
            base = load_scenario_file(plan.scenario_path);
        else
            base = default_scenario();
        validate(base);
        std::filesystem::create_directories(plan.output_dir);
    }
    catch (const IoError &e)
    {
        outcome.exit_code = kExitInvalidInput;
        outcome.diagnostics.push_back(e.what());
        return outcome;
    }
    catch (const std::filesystem::filesystem_error &e)
    {
        outcome.exit_code = kExitRunFailure;
        outcome.diagnostics.push_back(e.what());
        return outcome;
    }
    catch (const Error &e)
    {
        outcome.exit_code = kExitInvalidInput;
        outcome.diagnostics.push_back(e.what());
        return outcome;
    }

    std::vector<Job> jobs;
    for (Scheme sc : plan.schemes)
        for (double eta : plan.dimming_levels)
            for (auto seed : plan.seeds)
                jobs.push_back({sc, eta, seed});

    std::vector<JobResult> results(jobs.size());
    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1))
        {
            results[i] = run_job(base, plan, jobs[i]);
            std::lock_guard lock(log_mutex);
            const auto &j = jobs[i];
            std::string line = scheme_name(j.scheme) + " eta=" + num(j.eta) + " seed=" + std::to_string(j.seed);
            if (results[i].failed)
                say(0, line + " FAILED: " + results[i].notes.back());
            else if (!results[i].rows.empty())
                say(1, line + " MBE(FR-" + std::to_string(results[i].rows.front().fr) +
                           ")=" + num(results[i].rows.front().mbe));
            else
                say(1, line + " done");
        }
    };
    unsigned n_workers = plan.workers ? plan.workers : std::max(1u, std::thread::hardware_concurrency());
    n_workers = static_cast<unsigned>(std::min<std::size_t>(n_workers, jobs.size()));
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < n_workers; ++w)
        pool.emplace_back(worker);
    worker();
    for (auto &t : pool)
        t.join();

    try
    {
        const std::filesystem::path dir(plan.output_dir);
        for (std::size_t i = 0; i < jobs.size(); ++i)
        {
            auto &r = results[i];
            ++outcome.runs;
            if (r.failed)
                ++outcome.failures;
            for (auto &n : r.notes)
            {
                say(2, n);
                outcome.diagnostics.push_back(std::move(n));
            }
            outcome.rows.insert(outcome.rows.end(), r.rows.begin(), r.rows.end());
            write_file_atomic((dir / run_file_name(jobs[i].scheme, jobs[i].eta, jobs[i].seed)).string(), r.json);
        }
        write_file_atomic((dir / "metrics.csv").string(), metrics_csv(outcome.rows));
    }
    catch (const Error &e)
    {
        outcome.diagnostics.push_back(e.what());
        outcome.exit_code = kExitRunFailure;
        return outcome;
    }
    outcome.exit_code = outcome.failures ? kExitRunFailure : kExitOk;
    return outcome;
}

} // namespace vlcsel
