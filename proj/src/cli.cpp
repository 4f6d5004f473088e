// Copyright 2026 The QAC Engine Authors
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

#include "qac/cli.hpp"

#include <unistd.h>

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "qac/bench.hpp"
#include "qac/bma.hpp"
#include "qac/control.hpp"
#include "qac/errors.hpp"
#include "qac/lang.hpp"
#include "qac/osc.hpp"
#include "qac/qasm.hpp"
#include "qac/sampling.hpp"
#include "qac/statevector.hpp"
#include "qac/text.hpp"

namespace qac::cli {

namespace {

struct Globals {
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> shots;
    bool quiet = false;
};

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

LogSink make_sink(std::ostream &err, bool quiet) {
    return [&err, quiet](const LogEvent &e) {
        if (e.severity == Severity::Info && quiet)
            return;
        err << (e.severity == Severity::Info ? "[qac:info] " : "[qac:error] ") << e.text << '\n';
    };
}

std::string read_file(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw IoError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void print_outputs(const std::vector<lang::Output> &outputs, std::ostream &out) {
    for (const auto &o : outputs)
        out << lang::format_output(o) << '\n';
}

void print_circuit_result(const QuantumCircuit &circuit, const Globals &g, std::ostream &out) {
    if (!circuit.has_measurement()) {
        const auto sv = run_statevector(circuit);
        out << "statevector";
        for (const auto &a : sv.amplitudes())
            out << ' ' << text::format_number(a.real()) << ' ' << text::format_number(a.imag());
        out << '\n';
        return;
    }
    out << "counts " << format_counts_pairs(sample_counts(circuit, g.shots.value_or(1024), g.seed)) << '\n';
}

lang::Session make_session(const Globals &g, std::ostream &err) {
    lang::Session session(make_sink(err, g.quiet));
    session.registry().set_console_output(!g.quiet);
    session.registry().set_default_seed(g.seed);
    return session;
}

int cmd_run(const std::string &target, const Globals &g, std::ostream &out, std::ostream &err) {
    if (!std::filesystem::exists(target)) {
        // Not a file: try it as a minified circuit.
        lang::MinifiedCircuit m;
        try {
            m = lang::parse_minified(std::string_view(target));
        } catch (const Error &) {
            throw IoError("'" + target + "' is neither a file nor a minified circuit");
        }
        print_circuit_result(lang::expand(m), g, out);
        return kOk;
    }
    const std::string body = read_file(target);
    const auto ext = std::filesystem::path(target).extension().string();
    if (ext == ".qasm" || text::trim(body).starts_with("OPENQASM")) {
        print_circuit_result(qasm::parse_qasm(body, std::filesystem::path(target).stem().string()), g, out);
        return kOk;
    }
    if (ext == ".min") {
        print_circuit_result(lang::expand(lang::parse_minified(std::string_view(body))), g, out);
        return kOk;
    }
    lang::Session session = make_session(g, err);
    const auto result = session.run_script(body);
    print_outputs(result.outputs, out);
    return result.errors == 0 ? kOk : kRuntimeError;
}

int cmd_repl(const Globals &g, std::istream &in, std::ostream &out, std::ostream &err) {
    lang::Session session = make_session(g, err);
    const bool interactive = &in == &std::cin && ::isatty(STDIN_FILENO);
    std::string line;
    for (;;) {
        if (interactive)
            out << "qac> " << std::flush;
        if (!std::getline(in, line))
            break;
        const auto trimmed = text::trim(line);
        if (trimmed.empty() || trimmed.starts_with('#'))
            continue;
        if (trimmed == "quit" || trimmed == "exit")
            break;
        try {
            print_outputs(session.execute_line(line), out);
        } catch (const Error &) {
            // Already logged by the session.
        }
    }
    return kOk;
}

std::atomic<bool> g_interrupted{false};

extern "C" void on_signal(int) { g_interrupted = true; }

} // namespace

int cli_dispatch(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err) {
    CLI::App app{"qac: quantum circuit engine for music and sound work", "qac"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    std::optional<std::uint64_t> seed_opt, shots_opt;
    app.add_option("--seed", seed_opt, "RNG seed (default: $QAC_SEED, else entropy)");
    app.add_option("--shots", shots_opt, "Shots per circuit")->check(CLI::PositiveNumber);
    app.add_flag("--quiet,-q", g.quiet, "Suppress info logging");

    auto *repl = app.add_subcommand("repl", "Interactive command language");

    std::string run_target;
    auto *run = app.add_subcommand("run", "Run a command script, a QASM file or a minified circuit");
    run->add_option("target", run_target, "Script path, .qasm path, .min path or minified text")->required();

    std::string table_path, start_label;
    std::size_t loops = 0;
    std::uint32_t period_ms = 150;
    bool realtime = false;
    auto *bma = app.add_subcommand("bma", "Generate a note sequence from a transition table");
    bma->add_option("--table", table_path, "Transition table JSON")->required();
    bma->add_option("--start", start_label, "Starting label")->required();
    bma->add_option("--loops", loops, "Number of notes")->required();
    bma->add_option("--period-ms", period_ms, "Note period")->capture_default_str();
    bma->add_flag("--realtime", realtime, "Emit events at the note period");

    std::uint16_t port = 7001, reply_port = 7002;
    bool reply_to_source = false;
    std::uint64_t run_for_ms = 0;
    auto *serve = app.add_subcommand("serve", "OSC service over UDP");
    serve->add_option("--port", port, "Listen port")->capture_default_str();
    serve->add_option("--reply-port", reply_port, "Reply port on the sender's host")->capture_default_str();
    serve->add_flag("--reply-to-source", reply_to_source, "Reply to the request's source port");
    serve->add_option("--for-ms", run_for_ms, "Stop after this many ms (0 runs until interrupted)")->capture_default_str();

    std::vector<std::uint64_t> bench_shots;
    std::size_t repetitions = 5;
    std::string csv_path, bench_qasm;
    auto *bench = app.add_subcommand("bench", "Shots-scaling benchmark");
    bench->add_option("--shots", bench_shots, "Comma-separated shots levels")->delimiter(',')->required();
    bench->add_option("--repetitions", repetitions, "Timed runs per level")->capture_default_str();
    bench->add_option("--csv", csv_path, "CSV output path");
    bench->add_option("--qasm", bench_qasm, "QASM circuit instead of the built-in h+measure");

    std::size_t super_qubits = 0;
    std::uint32_t ramp_ms = 0;
    std::size_t triggers = 1;
    auto *super = app.add_subcommand("super", "Superposition knob: sample targets and ramp midpoints");
    super->add_option("--qubits", super_qubits, "Register size")->required();
    super->add_option("--ramp", ramp_ms, "Ramp length in ms")->capture_default_str();
    super->add_option("--triggers", triggers, "Number of triggers")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        g.seed = seed_opt;
        g.shots = shots_opt;
        if (!g.seed) {
            if (const char *env = std::getenv("QAC_SEED")) {
                const auto v = text::parse_integer(env);
                if (!v || *v < 0)
                    throw UsageError(std::string("QAC_SEED must be a non-negative integer, got '") + env + "'");
                g.seed = static_cast<std::uint64_t>(*v);
            }
        }
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError &e) {
        err << "qac: " << e.what() << "\n" << app.help();
        return kUsageError;
    } catch (const UsageError &e) {
        err << "qac: " << e.what() << "\n";
        return kUsageError;
    }

    try {
        if (*repl)
            return cmd_repl(g, in, out, err);
        if (*run)
            return cmd_run(run_target, g, out, err);
        if (*bma) {
            const auto table = bma::load_table(table_path);
            bma::SequencerConfig cfg;
            cfg.start_label = start_label;
            cfg.num_loops = loops;
            cfg.period_ms = period_ms;
            cfg.shots = g.shots.value_or(100);
            cfg.seed = g.seed;
            cfg.realtime = realtime;
            const auto result = bma::run_sequencer(table, cfg, [&](const bma::NoteEvent &e) {
                out << bma::format_event(e) << '\n';
                if (realtime)
                    out.flush();
            });
            if (result.error_kind) {
                err << "[qac:error] " << result.error_message << '\n';
                return kRuntimeError;
            }
            return kOk;
        }
        if (*serve) {
            osc::ServiceConfig cfg;
            cfg.listen_port = port;
            cfg.reply_port = reply_port;
            cfg.reply_to_source = reply_to_source;
            cfg.default_shots = g.shots.value_or(1024);
            cfg.seed = g.seed;
            osc::OscService service(cfg, make_sink(err, g.quiet));
            out << "listening on " << cfg.host << ":" << service.port() << std::endl;
            g_interrupted = false;
            auto old_int = std::signal(SIGINT, on_signal);
            auto old_term = std::signal(SIGTERM, on_signal);
            const auto t0 = std::chrono::steady_clock::now();
            while (!g_interrupted) {
                std::this_thread::sleep_for(std::chrono::milliseconds(20));
                if (run_for_ms > 0 && std::chrono::steady_clock::now() - t0 >= std::chrono::milliseconds(run_for_ms))
                    break;
            }
            std::signal(SIGINT, old_int);
            std::signal(SIGTERM, old_term);
            return kOk;
        }
        if (*bench) {
            bench::BenchSpec spec;
            spec.qasm_path = bench_qasm;
            spec.shots_list = bench_shots;
            spec.repetitions = repetitions;
            spec.csv_path = csv_path;
            spec.seed = g.seed;
            const auto rows = bench::run_bench(spec);
            out << bench::format_csv(rows);
            return kOk;
        }
        if (*super) {
            control::SuperpositionDevice dev(super_qubits, ramp_ms, g.shots.value_or(1024), g.seed);
            for (std::size_t i = 0; i < triggers; ++i) {
                const auto r = dev.trigger();
                out << r.ket << ' ' << text::format_number(r.target);
                if (ramp_ms > 0)
                    out << ' ' << text::format_number(dev.step_interpolation(ramp_ms / 2)) << ' '
                        << text::format_number(dev.step_interpolation(ramp_ms));
                out << '\n';
            }
            return kOk;
        }
    } catch (const ArgumentError &e) {
        err << "qac: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception &e) {
        err << "[qac:error] " << e.what() << '\n';
        return kRuntimeError;
    }
    return kUsageError;
}

} // namespace qac::cli
