// Copyright 2026 The xcqaoa developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Every computation goes through the xcqaoa C API;
// this file only handles flags, files and artifact assembly.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "xcqaoa.h"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct CommandError {
    int exit_code;
    std::string message;
};

[[noreturn]] void fail(int exit_code, const std::string& message) {
    throw CommandError{exit_code, message};
}

// Maps API failures onto the CLI exit-code contract: validation/parse/limit
// problems are usage errors, everything else is a runtime failure.
void check(xcq_status status) {
    if (status == XCQ_OK) {
        return;
    }
    const int code = (status == XCQ_ERROR_INVALID_ARGUMENT || status == XCQ_ERROR_PARSE ||
                      status == XCQ_ERROR_LIMIT)
                         ? kExitUsage
                         : kExitRuntime;
    fail(code, xcq_last_error());
}

struct StringDeleter {
    void operator()(char* s) const { xcq_string_free(s); }
};
using ApiString = std::unique_ptr<char, StringDeleter>;

struct BufferDeleter {
    void operator()(void* p) const { xcq_buffer_free(p); }
};
template <typename T>
using ApiBuffer = std::unique_ptr<T[], BufferDeleter>;

struct InstanceDeleter {
    void operator()(xcq_instance* p) const { xcq_instance_free(p); }
};
using Instance = std::unique_ptr<xcq_instance, InstanceDeleter>;

struct IsingDeleter {
    void operator()(xcq_ising* p) const { xcq_ising_free(p); }
};
using Ising = std::unique_ptr<xcq_ising, IsingDeleter>;

struct StateDeleter {
    void operator()(xcq_state* p) const { xcq_state_free(p); }
};
using State = std::unique_ptr<xcq_state, StateDeleter>;

struct TraceDeleter {
    void operator()(xcq_trace* p) const { xcq_trace_free(p); }
};
using Trace = std::unique_ptr<xcq_trace, TraceDeleter>;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(kExitUsage, "cannot open " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Composes in memory first so a failure never leaves a partial file behind.
void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (out) {
        out << content;
        out.flush();
    }
    if (!out) {
        std::error_code ec;
        std::filesystem::remove(path, ec);
        fail(kExitRuntime, "cannot write " + path);
    }
}

std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string bitstring_text(std::uint64_t x, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i) {
        if ((x >> i) & 1ull) {
            s[static_cast<std::size_t>(i)] = '1';
        }
    }
    return s;
}

// One echo line per artifact; fixed key order keeps reruns byte-identical.
class ConfigEcho {
  public:
    explicit ConfigEcho(std::string command) : line_("# xcqaoa " + std::move(command)) {}

    ConfigEcho& add(const std::string& key, const std::string& value) {
        line_ += ' ';
        line_ += key;
        line_ += '=';
        line_ += value;
        return *this;
    }
    ConfigEcho& add(const std::string& key, std::int64_t value) {
        return add(key, std::to_string(value));
    }
    ConfigEcho& add(const std::string& key, std::uint64_t value) {
        return add(key, std::to_string(value));
    }
    ConfigEcho& add(const std::string& key, int value) {
        return add(key, std::to_string(value));
    }
    ConfigEcho& add(const std::string& key, double value) {
        return add(key, format_double(value));
    }

    std::string line() const { return line_ + "\n"; }

  private:
    std::string line_;
};

Instance load_instance(const std::string& path) {
    const std::string text = read_file(path);
    xcq_instance* raw = nullptr;
    check(xcq_instance_parse(text.c_str(), &raw));
    return Instance(raw);
}

Ising build_ising(const xcq_instance* inst) {
    xcq_ising* raw = nullptr;
    check(xcq_ising_build(inst, &raw));
    return Ising(raw);
}

std::vector<std::uint64_t> load_solutions(const xcq_instance* inst, int oracle_limit) {
    uint64_t* raw = nullptr;
    size_t count = 0;
    check(xcq_instance_solution_masks(inst, oracle_limit, &raw, &count));
    ApiBuffer<uint64_t> owner(raw);
    return {raw, raw + count};
}

Trace load_trace_file(const std::string& path) {
    std::string text = read_file(path);
    // Artifact files may carry leading config-echo lines.
    std::size_t pos = 0;
    while (pos < text.size() && text[pos] == '#') {
        pos = text.find('\n', pos);
        if (pos == std::string::npos) {
            break;
        }
        ++pos;
    }
    xcq_trace* raw = nullptr;
    check(xcq_trace_parse(text.c_str() + std::min(pos, text.size()), &raw));
    return Trace(raw);
}

struct TraceLevel {
    int p = 0;
    std::vector<double> gammas;
    std::vector<double> betas;
    double e = 0.0;
    double f = 0.0;
};

std::vector<TraceLevel> trace_levels(const xcq_trace* trace) {
    std::vector<TraceLevel> levels(static_cast<std::size_t>(xcq_trace_size(trace)));
    for (std::size_t i = 0; i < levels.size(); ++i) {
        TraceLevel& level = levels[i];
        check(xcq_trace_entry(trace, static_cast<int>(i), &level.p, &level.e, &level.f,
                              nullptr, nullptr));
        level.gammas.resize(static_cast<std::size_t>(level.p));
        level.betas.resize(static_cast<std::size_t>(level.p));
        check(xcq_trace_params(trace, static_cast<int>(i), level.gammas.data(),
                               level.betas.data()));
    }
    return levels;
}

// Shared per-command knobs.
struct CommonFlags {
    std::string instance_path;
    std::string output_path;
    int oracle_limit = 30;
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    std::uint64_t seed = 1;
};

void apply_max_qubits_flag(int max_qubits) {
    if (max_qubits > 0) {
        check(xcq_set_max_qubits(max_qubits));
    }
}

// Runs the warm-started pipeline used by optimize/noise/tts when no trace
// file is supplied.
Trace run_pipeline(const xcq_ising* model, const std::vector<std::uint64_t>& sols,
                   int p_max, int n_starts, std::uint64_t seed, int threads) {
    xcq_trace* raw = nullptr;
    check(xcq_interp_pipeline(model, sols.data(), sols.size(), p_max, n_starts, seed,
                              threads, &raw));
    return Trace(raw);
}

/* ---- subcommands -------------------------------------------------------- */

int cmd_generate(int flights, int routes, int planted, std::uint64_t seed,
                 const std::string& output) {
    xcq_instance* raw = nullptr;
    check(xcq_instance_generate(flights, routes, planted, seed, &raw));
    Instance inst(raw);

    ApiString json([&] {
        char* s = nullptr;
        check(xcq_instance_to_json(inst.get(), &s));
        return s;
    }());
    write_output(output, std::string(json.get()) + "\n");

    uint64_t* known = nullptr;
    size_t n_known = 0;
    check(xcq_instance_known_solutions(inst.get(), &known, &n_known));
    ApiBuffer<uint64_t> owner(known);
    double mean = 0.0, stddev = 0.0;
    check(xcq_instance_graph_stats(inst.get(), &mean, &stddev, nullptr));
    std::cerr << "generated " << routes << " routes over " << flights
              << " flights (seed " << seed << ")\n";
    if (n_known == 1) {
        std::cerr << "planted solution: " << bitstring_text(known[0], routes) << "\n";
    }
    std::cerr << "valency mean " << format_double(mean) << ", std "
              << format_double(stddev) << "\n";
    return 0;
}

int cmd_info(const CommonFlags& flags) {
    Instance inst = load_instance(flags.instance_path);
    const int n = xcq_instance_n_routes(inst.get());

    double mean = 0.0, stddev = 0.0;
    size_t edges = 0;
    check(xcq_instance_graph_stats(inst.get(), &mean, &stddev, &edges));

    nlohmann::ordered_json doc;
    doc["n_routes"] = n;
    doc["n_flights"] = xcq_instance_n_flights(inst.get());
    doc["edges"] = edges;
    doc["valency_mean"] = mean;
    doc["valency_std"] = stddev;
    if (n <= flags.oracle_limit) {
        uint64_t* sols = nullptr;
        size_t count = 0;
        check(xcq_instance_solve(inst.get(), flags.oracle_limit, &sols, &count));
        ApiBuffer<uint64_t> owner(sols);
        doc["solutions"] = count;
        auto list = nlohmann::ordered_json::array();
        for (size_t i = 0; i < count; ++i) {
            list.push_back(bitstring_text(sols[i], n));
        }
        doc["solution_bitstrings"] = std::move(list);
    }
    uint64_t* known = nullptr;
    size_t n_known = 0;
    check(xcq_instance_known_solutions(inst.get(), &known, &n_known));
    xcq_buffer_free(known);
    doc["known_solutions"] = n_known;
    write_output(flags.output_path, doc.dump(2) + "\n");
    return 0;
}

int cmd_ising_dump(const CommonFlags& flags) {
    Instance inst = load_instance(flags.instance_path);
    Ising model = build_ising(inst.get());
    ApiString json([&] {
        char* s = nullptr;
        check(xcq_ising_to_json(model.get(), &s));
        return s;
    }());
    write_output(flags.output_path, std::string(json.get()) + "\n");
    return 0;
}

int cmd_landscape(const CommonFlags& flags, int resolution) {
    Instance inst = load_instance(flags.instance_path);
    Ising model = build_ising(inst.get());
    const auto sols = load_solutions(inst.get(), flags.oracle_limit);

    ApiString csv([&] {
        char* s = nullptr;
        check(xcq_landscape_csv(model.get(), sols.data(), sols.size(), resolution,
                                flags.threads, &s));
        return s;
    }());
    const std::string echo = ConfigEcho("landscape")
                                 .add("instance", flags.instance_path)
                                 .add("resolution", resolution)
                                 .add("oracle-limit", flags.oracle_limit)
                                 .add("threads", flags.threads)
                                 .line();
    write_output(flags.output_path, echo + csv.get());
    return 0;
}

int cmd_optimize(const CommonFlags& flags, int p_max, const std::string& strategy,
                 int n_starts) {
    Instance inst = load_instance(flags.instance_path);
    Ising model = build_ising(inst.get());
    const auto sols = load_solutions(inst.get(), flags.oracle_limit);

    std::string trace_json;
    if (strategy == "interp") {
        Trace trace = run_pipeline(model.get(), sols, p_max, n_starts, flags.seed,
                                   flags.threads);
        ApiString json([&] {
            char* s = nullptr;
            check(xcq_trace_to_json(trace.get(), &s));
            return s;
        }());
        trace_json = json.get();
    } else if (strategy == "multistart") {
        // Independent multistart per level; level p draws from seed + p.
        nlohmann::ordered_json combined = nlohmann::ordered_json::array();
        for (int p = 1; p <= p_max; ++p) {
            xcq_trace* raw = nullptr;
            check(xcq_multistart(model.get(), sols.data(), sols.size(), p, n_starts,
                                 flags.seed + static_cast<std::uint64_t>(p), flags.threads,
                                 &raw));
            Trace level(raw);
            ApiString json([&] {
                char* s = nullptr;
                check(xcq_trace_to_json(level.get(), &s));
                return s;
            }());
            combined.push_back(nlohmann::ordered_json::parse(json.get())[0]);
        }
        trace_json = combined.dump();
    } else {
        fail(kExitUsage, "unknown strategy \"" + strategy + "\"");
    }

    const std::string echo = ConfigEcho("optimize")
                                 .add("instance", flags.instance_path)
                                 .add("p-max", p_max)
                                 .add("strategy", strategy)
                                 .add("starts", n_starts)
                                 .add("seed", flags.seed)
                                 .add("oracle-limit", flags.oracle_limit)
                                 .add("threads", flags.threads)
                                 .line();
    write_output(flags.output_path, echo + trace_json + "\n");
    return 0;
}

int cmd_sample(const CommonFlags& flags, std::uint64_t shots,
               const std::vector<double>& gammas, const std::vector<double>& betas,
               const std::string& trace_path, int level) {
    Instance inst = load_instance(flags.instance_path);
    Ising model = build_ising(inst.get());
    const int n = xcq_instance_n_routes(inst.get());

    std::vector<double> g = gammas;
    std::vector<double> b = betas;
    int used_level = 0;
    if (!trace_path.empty()) {
        if (!g.empty() || !b.empty()) {
            fail(kExitUsage, "--trace and explicit --gammas/--betas are mutually exclusive");
        }
        Trace trace = load_trace_file(trace_path);
        const auto levels = trace_levels(trace.get());
        if (levels.empty()) {
            fail(kExitUsage, "trace file has no levels");
        }
        std::size_t pick = 0;
        if (level > 0) {
            pick = levels.size();
            for (std::size_t i = 0; i < levels.size(); ++i) {
                if (levels[i].p == level) {
                    pick = i;
                    break;
                }
            }
            if (pick == levels.size()) {
                fail(kExitUsage, "trace has no level p=" + std::to_string(level));
            }
        } else {
            for (std::size_t i = 1; i < levels.size(); ++i) {
                if (levels[i].f > levels[pick].f) {
                    pick = i;
                }
            }
        }
        g = levels[pick].gammas;
        b = levels[pick].betas;
        used_level = levels[pick].p;
        std::cerr << "sampling level p=" << used_level << " (F="
                  << format_double(levels[pick].f) << ")\n";
    } else if (g.empty() || g.size() != b.size()) {
        fail(kExitUsage, "provide --trace or matching --gammas/--betas lists");
    }

    State state([&] {
        xcq_state* raw = nullptr;
        check(xcq_run_qaoa(model.get(), g.data(), b.data(), static_cast<int>(g.size()),
                           &raw));
        return raw;
    }());
    ApiBuffer<uint64_t> draws([&] {
        uint64_t* raw = nullptr;
        check(xcq_state_sample(state.get(), shots, flags.seed, &raw));
        return raw;
    }());

    ConfigEcho echo("sample");
    echo.add("instance", flags.instance_path).add("shots", shots).add("seed", flags.seed);
    if (!trace_path.empty()) {
        echo.add("trace", trace_path).add("level", used_level);
    } else {
        auto join = [](const std::vector<double>& v) {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i) {
                s += (i == 0 ? "" : ",") + format_double(v[i]);
            }
            return s;
        };
        echo.add("gammas", join(g)).add("betas", join(b));
    }
    std::string body = echo.line();
    for (std::uint64_t k = 0; k < shots; ++k) {
        body += bitstring_text(draws[k], n);
        body += '\n';
    }
    write_output(flags.output_path, body);
    return 0;
}

int cmd_noise(const CommonFlags& flags, double eta, std::uint64_t trajectories,
              const std::string& placement, const std::string& trace_path, int p_max,
              int n_starts) {
    Instance inst = load_instance(flags.instance_path);
    Ising model = build_ising(inst.get());
    const auto sols = load_solutions(inst.get(), flags.oracle_limit);

    Trace trace = trace_path.empty()
                      ? run_pipeline(model.get(), sols, p_max, n_starts, flags.seed,
                                     flags.threads)
                      : load_trace_file(trace_path);
    const auto levels = trace_levels(trace.get());
    const int per_layer_only = placement == "layer" ? 1 : 0;

    ConfigEcho echo("noise");
    echo.add("instance", flags.instance_path)
        .add("eta", eta)
        .add("trajectories", trajectories)
        .add("placement", placement)
        .add("seed", flags.seed);
    if (trace_path.empty()) {
        echo.add("p-max", p_max).add("starts", n_starts);
    } else {
        echo.add("trace", trace_path);
    }
    echo.add("oracle-limit", flags.oracle_limit).add("threads", flags.threads);
    std::string body = echo.line();
    body += "p,F_noiseless,F_noisy,std_error\n";
    for (const auto& level : levels) {
        double mean = 0.0, std_error = 0.0;
        check(xcq_run_noisy(model.get(), level.gammas.data(), level.betas.data(), level.p,
                            eta, trajectories, flags.seed, per_layer_only, sols.data(),
                            sols.size(), flags.threads, &mean, &std_error));
        body += std::to_string(level.p);
        body += ',';
        body += format_double(level.f);
        body += ',';
        body += format_double(mean);
        body += ',';
        body += format_double(std_error);
        body += '\n';
    }
    write_output(flags.output_path, body);
    return 0;
}

int cmd_anneal(const CommonFlags& flags, double total_time, double dt, bool no_check) {
    Instance inst = load_instance(flags.instance_path);
    Ising model = build_ising(inst.get());
    const auto sols = load_solutions(inst.get(), flags.oracle_limit);

    double f_gs = 0.0, refined = 0.0;
    int converged = 0;
    check(xcq_anneal(model.get(), sols.data(), sols.size(), total_time, dt, no_check ? 0 : 1,
                     &f_gs, &refined, &converged));

    nlohmann::ordered_json doc;
    doc["T"] = total_time;
    doc["dt"] = dt;
    doc["F_gs"] = f_gs;
    if (!no_check) {
        doc["F_gs_refined"] = refined;
        doc["converged"] = converged != 0;
    }
    const std::string echo = ConfigEcho("anneal")
                                 .add("instance", flags.instance_path)
                                 .add("T", total_time)
                                 .add("dt", dt)
                                 .add("convergence-check", no_check ? 0 : 1)
                                 .add("oracle-limit", flags.oracle_limit)
                                 .line();
    write_output(flags.output_path, echo + doc.dump() + "\n");
    return 0;
}

int cmd_tts(const CommonFlags& flags, const std::string& trace_path, int p_max,
            int n_starts, double p_d, std::vector<double> t_grid, double dt,
            const std::string& sweep_csv_path) {
    Instance inst = load_instance(flags.instance_path);
    Ising model = build_ising(inst.get());
    const auto sols = load_solutions(inst.get(), flags.oracle_limit);

    Trace trace = trace_path.empty()
                      ? run_pipeline(model.get(), sols, p_max, n_starts, flags.seed,
                                     flags.threads)
                      : load_trace_file(trace_path);

    ApiString qaoa_report([&] {
        char* s = nullptr;
        check(xcq_tts_qaoa(trace.get(), p_d, &s));
        return s;
    }());

    char* qa_report_raw = nullptr;
    char* sweep_raw = nullptr;
    check(xcq_tts_qa(model.get(), sols.data(), sols.size(),
                     t_grid.empty() ? nullptr : t_grid.data(), t_grid.size(), p_d, dt,
                     flags.threads, &qa_report_raw, &sweep_raw));
    ApiString qa_report(qa_report_raw);
    ApiString sweep(sweep_raw);

    ConfigEcho echo("tts");
    echo.add("instance", flags.instance_path);
    if (trace_path.empty()) {
        echo.add("p-max", p_max).add("starts", n_starts).add("seed", flags.seed);
    } else {
        echo.add("trace", trace_path);
    }
    echo.add("p-d", p_d).add("dt", dt);
    if (!t_grid.empty()) {
        std::string grid_text;
        for (std::size_t i = 0; i < t_grid.size(); ++i) {
            grid_text += (i == 0 ? "" : ",") + format_double(t_grid[i]);
        }
        echo.add("t-grid", grid_text);
    }
    echo.add("oracle-limit", flags.oracle_limit).add("threads", flags.threads);

    nlohmann::ordered_json doc;
    doc["qaoa"] = nlohmann::ordered_json::parse(qaoa_report.get());
    doc["qa"] = nlohmann::ordered_json::parse(qa_report.get());
    write_output(flags.output_path, echo.line() + doc.dump(2) + "\n");
    if (!sweep_csv_path.empty()) {
        write_output(sweep_csv_path, echo.line() + sweep.get());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Cover via QAOA state-vector simulation"};
    app.require_subcommand(1);

    // The environment can raise or lower the register cap; an explicit flag
    // wins over the environment.
    if (const char* env = std::getenv("QAOA_MAX_QUBITS")) {
        int value = 0;
        const auto res = std::from_chars(env, env + std::string(env).size(), value);
        if (res.ec != std::errc() || value < 1) {
            std::cerr << "error: QAOA_MAX_QUBITS must be a positive integer\n";
            return kExitUsage;
        }
        if (xcq_set_max_qubits(value) != XCQ_OK) {
            std::cerr << "error: " << xcq_last_error() << "\n";
            return kExitUsage;
        }
    }
    int max_qubits_flag = 0;

    CommonFlags flags;
    auto add_common = [&](CLI::App* cmd, bool needs_instance = true) {
        if (needs_instance) {
            cmd->add_option("-i,--instance", flags.instance_path, "instance JSON file")
                ->required();
            cmd->add_option("--oracle-limit", flags.oracle_limit,
                            "largest route count solved exactly")
                ->check(CLI::PositiveNumber);
        }
        cmd->add_option("-o,--output", flags.output_path, "output path (default stdout)");
        cmd->add_option("--threads", flags.threads, "worker thread cap")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--max-qubits", max_qubits_flag,
                        "override the simulator register cap");
    };

    // generate
    int gen_flights = 0, gen_routes = 0, gen_planted = 0;
    auto* generate = app.add_subcommand("generate", "emit a planted-solution instance");
    generate->add_option("--flights", gen_flights, "number of flights")->required();
    generate->add_option("--routes", gen_routes, "number of routes (qubits)")->required();
    generate->add_option("--planted", gen_planted, "routes in the planted solution")
        ->required();
    generate->add_option("--seed", flags.seed, "generator seed");
    add_common(generate, false);

    // info
    auto* info = app.add_subcommand("info", "instance summary: size, valency, solutions");
    add_common(info);

    // ising-dump
    auto* ising_dump =
        app.add_subcommand("ising-dump", "emit the Ising reduction (J, h, offset) as JSON");
    add_common(ising_dump);

    // landscape
    int resolution = 64;
    auto* landscape =
        app.add_subcommand("landscape", "p=1 grid scan of E and F over [0,pi]^2");
    landscape->add_option("-r,--resolution", resolution, "grid points per axis")
        ->check(CLI::Range(2, 4096));
    add_common(landscape);

    // optimize
    int p_max = 10, n_starts = 100;
    std::string strategy = "interp";
    auto* optimize = app.add_subcommand("optimize", "variational optimization trace");
    optimize->add_option("--p-max", p_max, "largest level")->check(CLI::PositiveNumber);
    optimize->add_option("--strategy", strategy, "interp or multistart")
        ->check(CLI::IsMember({"interp", "multistart"}));
    optimize->add_option("--starts", n_starts, "multistart count")
        ->check(CLI::PositiveNumber);
    optimize->add_option("--seed", flags.seed, "optimizer seed");
    add_common(optimize);

    // sample
    std::uint64_t shots = 100;
    std::vector<double> gammas, betas;
    std::string trace_path;
    int sample_level = 0;
    auto* sample_cmd = app.add_subcommand("sample", "measure an optimized state");
    sample_cmd->add_option("--shots", shots, "measurement count")->check(CLI::PositiveNumber);
    sample_cmd->add_option("--seed", flags.seed, "sampler seed");
    sample_cmd->add_option("--gammas", gammas, "comma-separated gamma list")->delimiter(',');
    sample_cmd->add_option("--betas", betas, "comma-separated beta list")->delimiter(',');
    sample_cmd->add_option("--trace", trace_path, "take parameters from a trace file");
    sample_cmd->add_option("--level", sample_level,
                           "trace level to sample (default: best F)");
    add_common(sample_cmd);

    // noise
    double eta = 0.01;
    std::uint64_t trajectories = 2000;
    std::string placement = "half";
    int noise_p_max = 10, noise_starts = 100;
    auto* noise = app.add_subcommand("noise", "success probability under depolarizing noise");
    noise->add_option("--eta", eta, "error probability per qubit per round")
        ->check(CLI::Range(0.0, 1.0));
    noise->add_option("--trajectories", trajectories, "Monte-Carlo trajectories")
        ->check(CLI::PositiveNumber);
    noise->add_option("--placement", placement,
                      "noise rounds: half (after each half-layer) or layer")
        ->check(CLI::IsMember({"half", "layer"}));
    noise->add_option("--trace", trace_path, "trace file with optimized parameters");
    noise->add_option("--p-max", noise_p_max, "pipeline depth when no trace is given");
    noise->add_option("--starts", noise_starts, "pipeline multistart count");
    noise->add_option("--seed", flags.seed, "noise seed");
    add_common(noise);

    // anneal
    double total_time = 10.0, dt = 0.05;
    bool no_check = false;
    auto* anneal_cmd = app.add_subcommand("anneal", "quantum annealing ground-state overlap");
    anneal_cmd->add_option("-T,--total-time", total_time, "annealing time")->required();
    anneal_cmd->add_option("--dt", dt, "integrator step");
    anneal_cmd->add_flag("--no-convergence-check", no_check, "skip the dt/2 re-run");
    add_common(anneal_cmd);

    // tts
    double p_d = 0.99;
    std::vector<double> t_grid;
    std::string sweep_csv_path;
    int tts_p_max = 10, tts_starts = 100;
    auto* tts = app.add_subcommand("tts", "time to solution, QAOA vs quantum annealing");
    tts->add_option("--trace", trace_path, "trace file with optimized parameters");
    tts->add_option("--p-d", p_d, "target cumulative success probability");
    tts->add_option("--t-grid", t_grid, "annealing times (default log grid)")
        ->delimiter(',');
    tts->add_option("--dt", dt, "integrator step");
    tts->add_option("--sweep-csv", sweep_csv_path, "write the QA sweep CSV here");
    tts->add_option("--p-max", tts_p_max, "pipeline depth when no trace is given");
    tts->add_option("--starts", tts_starts, "pipeline multistart count");
    tts->add_option("--seed", flags.seed, "pipeline seed");
    add_common(tts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        apply_max_qubits_flag(max_qubits_flag);
        if (generate->parsed()) {
            return cmd_generate(gen_flights, gen_routes, gen_planted, flags.seed,
                                flags.output_path);
        }
        if (info->parsed()) {
            return cmd_info(flags);
        }
        if (ising_dump->parsed()) {
            return cmd_ising_dump(flags);
        }
        if (landscape->parsed()) {
            return cmd_landscape(flags, resolution);
        }
        if (optimize->parsed()) {
            return cmd_optimize(flags, p_max, strategy, n_starts);
        }
        if (sample_cmd->parsed()) {
            return cmd_sample(flags, shots, gammas, betas, trace_path, sample_level);
        }
        if (noise->parsed()) {
            return cmd_noise(flags, eta, trajectories, placement, trace_path, noise_p_max,
                             noise_starts);
        }
        if (anneal_cmd->parsed()) {
            return cmd_anneal(flags, total_time, dt, no_check);
        }
        if (tts->parsed()) {
            return cmd_tts(flags, trace_path, tts_p_max, tts_starts, p_d, t_grid, dt,
                           sweep_csv_path);
        }
    } catch (const CommandError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}
