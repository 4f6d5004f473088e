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

#include "qac/lang.hpp"

#include <cctype>

#include "qac/errors.hpp"
#include "qac/text.hpp"

namespace qac::lang {

std::vector<std::string> split_message_groups(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string_view::npos)
            comma = text.size();
        auto segment = qac::text::trim(text.substr(start, comma - start));
        if (!segment.empty())
            out.emplace_back(segment);
        start = comma + 1;
    }
    return out;
}

namespace {

using qac::text::Token;

[[noreturn]] void fail(const std::string &message, const Token &token) {
    throw ParseError(message, token.text, 0, token.column);
}

[[noreturn]] void fail_at_end(const std::string &message, std::string_view line) {
    throw ParseError(message, "", 0, line.size() + 1);
}

std::int64_t integer_at(const Token &token, const char *what) {
    auto v = qac::text::parse_integer(token.text);
    if (!v)
        fail(std::string("expected ") + what + ", got '" + token.text + "'", token);
    return *v;
}

bool flag_at(const Token &token, const char *what) {
    if (token.text == "0")
        return false;
    if (token.text == "1")
        return true;
    fail(std::string(what) + " must be 0 or 1, got '" + token.text + "'", token);
}

void expect_count(const std::vector<Token> &toks, std::size_t max) {
    if (toks.size() > max)
        fail("unexpected token '" + toks[max].text + "'", toks[max]);
}

Payload parse_create_circuits(const std::vector<Token> &toks, std::string_view line) {
    CreateCircuits cc;
    std::size_t i = 1;
    if (toks.size() < 3)
        fail_at_end("QuantumCircuit expects <name> <num_qubits> [<num_clbits>]", line);
    while (i < toks.size()) {
        const Token &name = toks[i];
        if (qac::text::parse_number(name.text))
            fail("expected a circuit name, got '" + name.text + "'", name);
        if (i + 1 >= toks.size())
            fail_at_end("QuantumCircuit '" + name.text + "' is missing its qubit count", line);
        CircuitSpec spec{name.text, integer_at(toks[i + 1], "a qubit count"), std::nullopt};
        i += 2;
        if (i < toks.size() && qac::text::parse_integer(toks[i].text)) {
            spec.num_clbits = *qac::text::parse_integer(toks[i].text);
            ++i;
        }
        cc.specs.push_back(std::move(spec));
    }
    return cc;
}

Payload parse_simulator(const std::vector<Token> &toks, std::string_view line) {
    if (toks.size() < 4)
        fail_at_end("Simulator expects <name> <circuit> <shots> [<sim_update>]", line);
    expect_count(toks, 5);
    CreateSimulator cs{toks[1].text, toks[2].text, integer_at(toks[3], "a shot count"), false};
    if (toks.size() == 5)
        cs.sim_update = flag_at(toks[4], "sim_update");
    return cs;
}

Payload parse_set(const std::vector<Token> &toks, std::string_view line) {
    if (toks.size() < 3)
        fail_at_end("set expects <attribute> <value>", line);
    expect_count(toks, 3);
    SetAttribute sa;
    if (toks[1].text == "console_output") {
        sa.name = SetAttribute::Name::ConsoleOutput;
        sa.value = flag_at(toks[2], "console_output") ? 1 : 0;
    } else if (toks[1].text == "seed") {
        sa.name = SetAttribute::Name::Seed;
        sa.value = integer_at(toks[2], "an integer seed");
        if (sa.value < 0)
            fail("seed must be non-negative", toks[2]);
    } else {
        fail("unknown attribute '" + toks[1].text + "'", toks[1]);
    }
    return sa;
}

std::optional<RetrieveWhat> retrieval(std::string_view token) {
    if (token == "get_counts")
        return RetrieveWhat::Counts;
    if (token == "get_memory")
        return RetrieveWhat::Memory;
    if (token == "get_statevector")
        return RetrieveWhat::Statevector;
    if (token == "get_qasm")
        return RetrieveWhat::Qasm;
    if (token == "get_qiskit")
        return RetrieveWhat::Qiskit;
    return std::nullopt;
}

Verb verb_of(const Payload &p) {
    return static_cast<Verb>(p.index());
}

} // namespace

Command parse_command(std::string_view line) {
    const auto toks = qac::text::tokenize(line);
    if (toks.empty())
        fail_at_end("empty message", line);

    Payload payload;
    const std::string &head = toks[0].text;
    if (head == "QuantumCircuit") {
        payload = parse_create_circuits(toks, line);
    } else if (head == "Simulator") {
        payload = parse_simulator(toks, line);
    } else if (head == "set") {
        payload = parse_set(toks, line);
    } else {
        if (toks.size() < 2)
            fail_at_end("'" + head + "' needs a method or gate", line);
        const Token &method = toks[1];
        if (method.text == "add") {
            if (toks.size() < 3)
                fail_at_end("add expects a source circuit", line);
            expect_count(toks, 3);
            payload = Compose{head, toks[2].text};
        } else if (auto what = retrieval(method.text)) {
            expect_count(toks, 3);
            bool textbox = false;
            if (toks.size() == 3) {
                if (toks[2].text != "textbox")
                    fail("unexpected token '" + toks[2].text + "'", toks[2]);
                textbox = true;
            }
            payload = Retrieve{head, *what, textbox};
        } else if (gate_from_token(method.text)) {
            AppendGate ag{head, method.text, {}};
            for (std::size_t i = 2; i < toks.size(); ++i) {
                auto v = qac::text::parse_number(toks[i].text);
                if (!v)
                    fail("expected a number, got '" + toks[i].text + "'", toks[i]);
                ag.args.push_back(*v);
            }
            payload = std::move(ag);
        } else {
            fail("unknown method or gate '" + method.text + "'", method);
        }
    }

    Command cmd{verb_of(payload), std::move(payload), {}};
    cmd.words.reserve(toks.size());
    for (const auto &t : toks)
        cmd.words.push_back(t.text);
    return cmd;
}

std::string render_command(const Command &command) {
    std::string out;
    for (const auto &w : command.words) {
        if (!out.empty())
            out += ' ';
        out += w;
    }
    return out;
}

// -- minified notation -------------------------------------------------------

namespace {

GateOp parse_minified_token(const std::string &token, std::size_t column, std::size_t num_qubits) {
    std::size_t i = 0;
    while (i < token.size() && std::islower(static_cast<unsigned char>(token[i])))
        ++i;
    const std::string name = token.substr(0, i);
    auto kind = gate_from_token(name);
    if (name.empty() || !kind || *kind == GateKind::Unitary || *kind == GateKind::Measure)
        throw ParseError("malformed minified gate '" + token + "'", token, 0, column);

    GateOp op;
    op.kind = *kind;
    if (is_parameterized(*kind)) {
        const auto close = token.find(')', i);
        if (i >= token.size() || token[i] != '(' || close == std::string::npos)
            throw ParseError("'" + name + "' needs an angle in parentheses", token, 0, column);
        auto angle = qac::text::parse_number(std::string_view(token).substr(i + 1, close - i - 1));
        if (!angle)
            throw ParseError("bad angle in '" + token + "'", token, 0, column);
        op.angle = *angle;
        i = close + 1;
    }
    const std::size_t digits = token.size() - i;
    if (digits != gate_arity(*kind))
        throw ParseError("'" + name + "' takes " + std::to_string(gate_arity(*kind)) +
                             " qubit digit(s) in '" + token + "'",
                         token, 0, column);
    for (; i < token.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(token[i])))
            throw ParseError("malformed minified gate '" + token + "'", token, 0, column);
        const auto q = static_cast<std::size_t>(token[i] - '0');
        if (q >= num_qubits)
            throw RangeError("qubit " + std::to_string(q) + " in '" + token +
                             "' is outside of range for " + std::to_string(num_qubits) + " qubit(s)");
        op.qubits.push_back(q);
    }
    try {
        op.validate();
    } catch (const ArgumentError &e) {
        throw ParseError(e.what(), token, 0, column);
    }
    return op;
}

} // namespace

MinifiedCircuit parse_minified(std::span<const std::string> spec) {
    if (spec.empty())
        throw ParseError("minified circuit needs a qubit count", "", 0, 1);
    auto n = qac::text::parse_integer(spec[0]);
    if (!n || *n < 1)
        throw ParseError("minified circuit must start with a positive qubit count", spec[0], 0, 1);
    if (*n > static_cast<std::int64_t>(kMaxQubits))
        throw RangeError("minified circuit asks for " + spec[0] + " qubits; the limit is " +
                         std::to_string(kMaxQubits));
    MinifiedCircuit out;
    out.num_qubits = static_cast<std::size_t>(*n);
    for (std::size_t i = 1; i < spec.size(); ++i) {
        out.ops.push_back(parse_minified_token(spec[i], i + 1, out.num_qubits));
        out.tokens.push_back(spec[i]);
    }
    return out;
}

MinifiedCircuit parse_minified(std::string_view text) {
    std::string normalized(text);
    for (char &c : normalized)
        if (c == ',')
            c = ' ';
    std::vector<std::string> parts;
    for (auto &t : qac::text::tokenize(normalized))
        parts.push_back(std::move(t.text));
    return parse_minified(parts);
}

QuantumCircuit expand(const MinifiedCircuit &minified, std::string name) {
    QuantumCircuit c(std::move(name), minified.num_qubits, minified.num_qubits);
    for (const auto &op : minified.ops)
        c.append(op);
    for (std::size_t q = 0; q < minified.num_qubits; ++q)
        c.append(gates::measure(q, q));
    return c;
}

// -- execution ---------------------------------------------------------------

std::string format_output(const Output &output) {
    if (output.textbox) {
        std::string out = "--- " + output.selector + " ---\n";
        for (const auto &item : output.items) {
            out += item;
            if (!item.empty() && item.back() != '\n')
                out += '\n';
        }
        return out + "--- end ---";
    }
    std::string out = output.selector;
    for (const auto &item : output.items)
        out += ' ' + item;
    return out;
}

namespace {

std::vector<Output> text_outputs(const std::string &selector, const std::string &body, bool textbox) {
    if (textbox)
        return {Output{selector, {body}, true}};
    std::vector<Output> out;
    std::size_t start = 0;
    while (start < body.size()) {
        auto nl = body.find('\n', start);
        if (nl == std::string::npos)
            nl = body.size();
        out.push_back(Output{selector, {body.substr(start, nl - start)}, false});
        start = nl + 1;
    }
    return out;
}

} // namespace

std::vector<Output> Session::execute(const Command &command) {
    std::vector<Output> out;
    std::visit(
        [&](const auto &p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, CreateCircuits>) {
                registry_.create_circuits(p.specs);
            } else if constexpr (std::is_same_v<T, AppendGate>) {
                registry_.append_gate(p.circuit, p.gate, p.args);
            } else if constexpr (std::is_same_v<T, Compose>) {
                registry_.compose_circuits(p.dst, p.src);
            } else if constexpr (std::is_same_v<T, CreateSimulator>) {
                registry_.create_simulator(p.name, p.circuit, p.shots, p.sim_update);
            } else if constexpr (std::is_same_v<T, SetAttribute>) {
                if (p.name == SetAttribute::Name::ConsoleOutput)
                    registry_.set_console_output(p.value != 0);
                else
                    registry_.set_default_seed(static_cast<std::uint64_t>(p.value));
            } else {
                switch (p.what) {
                case RetrieveWhat::Counts: {
                    Output o{"counts", {}, p.textbox};
                    for (const auto &[key, n] : registry_.get_counts(p.simulator).entries) {
                        o.items.push_back(key);
                        o.items.push_back(std::to_string(n));
                    }
                    out.push_back(std::move(o));
                    break;
                }
                case RetrieveWhat::Memory:
                    out.push_back(Output{"memory", registry_.get_memory(p.simulator).records, p.textbox});
                    break;
                case RetrieveWhat::Statevector: {
                    Output o{"statevector", {}, p.textbox};
                    const auto sv = registry_.get_statevector(p.simulator);
                    for (const auto &a : sv.amplitudes()) {
                        o.items.push_back(qac::text::format_number(a.real()));
                        o.items.push_back(qac::text::format_number(a.imag()));
                    }
                    out.push_back(std::move(o));
                    break;
                }
                case RetrieveWhat::Qasm:
                    out = text_outputs("qasm", registry_.get_qasm(p.simulator), p.textbox);
                    break;
                case RetrieveWhat::Qiskit:
                    out = text_outputs("qiskit", registry_.get_qiskit(p.simulator), p.textbox);
                    break;
                }
            }
        },
        command.payload);
    return out;
}

std::vector<Output> Session::execute_line(std::string_view line) {
    std::vector<Output> out;
    for (const auto &message : split_message_groups(line)) {
        Command cmd = [&] {
            try {
                return parse_command(message);
            } catch (const ParseError &e) {
                registry_.log_error(e.what());
                throw;
            }
        }();
        for (auto &o : execute(cmd))
            out.push_back(std::move(o));
    }
    return out;
}

Session::ScriptResult Session::run_script(std::string_view script, bool stop_on_error) {
    ScriptResult result;
    std::size_t start = 0;
    while (start < script.size()) {
        auto nl = script.find('\n', start);
        if (nl == std::string_view::npos)
            nl = script.size();
        std::string_view line = script.substr(start, nl - start);
        start = nl + 1;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        if (qac::text::trim(line).empty())
            continue;
        try {
            for (auto &o : execute_line(line))
                result.outputs.push_back(std::move(o));
        } catch (const Error &) {
            ++result.errors;
            if (stop_on_error)
                break;
        }
    }
    return result;
}

} // namespace qac::lang
