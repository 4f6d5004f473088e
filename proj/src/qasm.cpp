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

#include "qac/qasm.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

#include "qac/errors.hpp"
#include "qac/text.hpp"

namespace qac::qasm {

// ---------------------------------------------------------------- emission

namespace {

std::string qasm_name(GateKind kind) {
    if (kind == GateKind::CCCX)
        return "c3x";
    return std::string(gate_token(kind));
}

} // namespace

std::string emit_qasm(const QuantumCircuit &circuit) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\n"
        << "include \"qelib1.inc\";\n"
        << "qreg q[" << circuit.num_qubits() << "];\n";
    if (circuit.num_clbits() > 0)
        out << "creg c[" << circuit.num_clbits() << "];\n";
    for (const auto &op : circuit.ops()) {
        if (op.kind == GateKind::Unitary)
            throw UnsupportedExportError(
                "OpenQASM 2.0 has no arbitrary-matrix statement; use get_qiskit to export circuits "
                "with unitary gates");
        if (op.kind == GateKind::Measure) {
            out << "measure q[" << op.qubits[0] << "] -> c[" << *op.clbit << "];\n";
            continue;
        }
        out << qasm_name(op.kind);
        if (op.angle)
            out << '(' << text::format_number(*op.angle) << ')';
        out << ' ';
        for (std::size_t i = 0; i < op.qubits.size(); ++i)
            out << (i ? "," : "") << "q[" << op.qubits[i] << ']';
        out << ";\n";
    }
    return out.str();
}

// ----------------------------------------------------------------- parsing

namespace {

enum class Tok { Ident, Number, String, Symbol, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space_and_comments();
            if (pos_ >= src_.size()) {
                out.push_back({Tok::End, "", line_, col_});
                return out;
            }
            const std::size_t line = line_, col = col_;
            const char c = src_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t start = pos_;
                while (pos_ < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                    advance();
                out.push_back({Tok::Ident, std::string(src_.substr(start, pos_ - start)), line, col});
            } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                std::size_t start = pos_;
                while (pos_ < src_.size() &&
                       (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.'))
                    advance();
                if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
                    advance();
                    if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-'))
                        advance();
                    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                        advance();
                }
                out.push_back({Tok::Number, std::string(src_.substr(start, pos_ - start)), line, col});
            } else if (c == '"') {
                advance();
                std::size_t start = pos_;
                while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n')
                    advance();
                if (pos_ >= src_.size() || src_[pos_] != '"')
                    throw ParseError("unterminated string", "\"", line, col);
                std::string s(src_.substr(start, pos_ - start));
                advance();
                out.push_back({Tok::String, std::move(s), line, col});
            } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
                advance();
                advance();
                out.push_back({Tok::Symbol, "->", line, col});
            } else if (std::string_view("[](),;+-*/^{}").find(c) != std::string_view::npos) {
                advance();
                out.push_back({Tok::Symbol, std::string(1, c), line, col});
            } else {
                throw ParseError("unexpected character", std::string(1, c), line, col);
            }
        }
    }

  private:
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_space_and_comments() {
        while (pos_ < src_.size()) {
            if (std::isspace(static_cast<unsigned char>(src_[pos_]))) {
                advance();
            } else if (src_.substr(pos_, 2) == "//") {
                while (pos_ < src_.size() && src_[pos_] != '\n')
                    advance();
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

struct Register {
    std::string name;
    std::size_t size = 0;
};

struct Operand {
    const Register *reg;
    std::optional<std::size_t> index; // empty: whole register
    const Token *at;
};

class Parser {
  public:
    Parser(std::vector<Token> tokens, std::string name)
        : toks_(std::move(tokens)), name_(std::move(name)) {}

    QuantumCircuit run() {
        parse_header();
        while (peek().kind != Tok::End)
            statement();
        if (!circuit_)
            throw ParseError("no qreg declared", "", peek().line, peek().column);
        return std::move(*circuit_);
    }

  private:
    const Token &peek() const { return toks_[pos_]; }
    const Token &next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }

    [[noreturn]] void fail(const std::string &msg, const Token &t) const {
        throw ParseError(msg, t.text, t.line, t.column);
    }

    bool accept(std::string_view sym) {
        if (peek().kind == Tok::Symbol && peek().text == sym) {
            next();
            return true;
        }
        return false;
    }

    void expect(std::string_view sym) {
        if (!accept(sym))
            fail("expected '" + std::string(sym) + "'", peek());
    }

    const Token &expect_kind(Tok kind, const char *what) {
        if (peek().kind != kind)
            fail(std::string("expected ") + what, peek());
        return next();
    }

    std::size_t expect_size() {
        const Token &t = expect_kind(Tok::Number, "an integer");
        auto v = text::parse_integer(t.text);
        if (!v || *v < 0)
            fail("expected a non-negative integer", t);
        return static_cast<std::size_t>(*v);
    }

    void parse_header() {
        const Token &kw = peek();
        if (kw.kind != Tok::Ident || kw.text != "OPENQASM")
            fail("expected 'OPENQASM 2.0;' header", kw);
        next();
        const Token &ver = expect_kind(Tok::Number, "a version number");
        auto v = text::parse_number(ver.text);
        if (!v || *v != 2.0)
            fail("only OpenQASM 2.0 is supported", ver);
        expect(";");
    }

    void statement() {
        const Token &t = peek();
        if (t.kind != Tok::Ident)
            fail("expected a statement", t);
        if (t.text == "include") {
            next();
            const Token &file = expect_kind(Tok::String, "an include file name");
            if (file.text != "qelib1.inc")
                fail("only qelib1.inc can be included", file);
            expect(";");
        } else if (t.text == "qreg" || t.text == "creg") {
            declaration();
        } else if (t.text == "measure") {
            next();
            measure(t);
        } else if (t.text == "barrier") {
            next();
            while (peek().kind != Tok::End && !accept(";"))
                next();
        } else if (t.text == "gate" || t.text == "opaque" || t.text == "if" || t.text == "reset" ||
                   t.text == "OPENQASM") {
            fail("unsupported statement '" + t.text + "'", t);
        } else {
            gate();
        }
    }

    void declaration() {
        const Token &kw = next();
        const bool quantum = kw.text == "qreg";
        const Token &name = expect_kind(Tok::Ident, "a register name");
        expect("[");
        const Token &size_tok = peek();
        const std::size_t size = expect_size();
        expect("]");
        expect(";");
        Register &slot = quantum ? qreg_ : creg_;
        if (!slot.name.empty())
            fail("only one " + kw.text + " is supported", kw);
        if (circuit_ && !quantum && !circuit_->ops().empty())
            fail("creg must be declared before the first operation", kw);
        if (quantum && size > kMaxQubits)
            throw RangeError("line " + std::to_string(size_tok.line) + ": qreg of " +
                             std::to_string(size) + " qubits exceeds the engine cap of " +
                             std::to_string(kMaxQubits));
        if (quantum && size == 0)
            fail("qreg must have at least one qubit", size_tok);
        if (!quantum && size > kMaxClbits)
            throw RangeError("line " + std::to_string(size_tok.line) + ": creg of " +
                             std::to_string(size) + " bits exceeds the engine cap of " +
                             std::to_string(kMaxClbits));
        slot.name = name.text;
        slot.size = size;
        rebuild_circuit();
    }

    void rebuild_circuit() {
        if (qreg_.name.empty())
            return;
        circuit_.emplace(name_, qreg_.size, creg_.size);
    }

    Operand operand(const Register &expected_reg, const char *what) {
        const Token &name = expect_kind(Tok::Ident, what);
        const Register *reg = nullptr;
        if (name.text == qreg_.name && !qreg_.name.empty())
            reg = &qreg_;
        else if (name.text == creg_.name && !creg_.name.empty())
            reg = &creg_;
        if (reg == nullptr)
            fail("undeclared register '" + name.text + "'", name);
        if (reg != &expected_reg)
            fail(std::string("expected ") + what, name);
        Operand out{reg, std::nullopt, &name};
        if (accept("[")) {
            const Token &idx_tok = peek();
            out.index = expect_size();
            expect("]");
            if (*out.index >= reg->size)
                throw RangeError("line " + std::to_string(idx_tok.line) + ", column " +
                                 std::to_string(idx_tok.column) + ": index " +
                                 std::to_string(*out.index) + " is outside of range for " +
                                 reg->name + "[" + std::to_string(reg->size) + "]");
        }
        return out;
    }

    void append(GateOp op, const Token &at) {
        try {
            circuit_->append(std::move(op));
        } catch (const RangeError &) {
            throw;
        } catch (const Error &e) {
            fail(e.what(), at);
        }
    }

    void require_qreg(const Token &at) {
        if (!circuit_)
            fail("operation before qreg declaration", at);
    }

    void measure(const Token &kw) {
        require_qreg(kw);
        if (creg_.name.empty())
            fail("measurement without a creg", kw);
        Operand q = operand(qreg_, "a quantum register");
        expect("->");
        Operand c = operand(creg_, "a classical register");
        expect(";");
        if (q.index.has_value() != c.index.has_value())
            fail("measure must map a bit to a bit or a register to a register", kw);
        if (q.index) {
            append(gates::measure(*q.index, *c.index), kw);
            return;
        }
        if (qreg_.size != creg_.size)
            fail("register sizes differ in whole-register measure", kw);
        for (std::size_t i = 0; i < qreg_.size; ++i)
            append(gates::measure(i, i), kw);
    }

    // expression grammar: sum := product (('+'|'-') product)*
    double expression() {
        double v = product();
        for (;;) {
            if (accept("+"))
                v += product();
            else if (accept("-"))
                v -= product();
            else
                return v;
        }
    }

    double product() {
        double v = unary();
        for (;;) {
            if (accept("*")) {
                v *= unary();
            } else if (peek().kind == Tok::Symbol && peek().text == "/") {
                const Token &op = next();
                const double d = unary();
                if (d == 0.0)
                    fail("division by zero", op);
                v /= d;
            } else {
                return v;
            }
        }
    }

    double unary() {
        if (accept("-"))
            return -unary();
        if (accept("+"))
            return unary();
        double base = primary();
        if (accept("^"))
            return std::pow(base, unary());
        return base;
    }

    double primary() {
        const Token &t = peek();
        if (t.kind == Tok::Number) {
            next();
            auto v = text::parse_number(t.text);
            if (!v)
                fail("malformed number", t);
            return *v;
        }
        if (t.kind == Tok::Ident) {
            next();
            if (t.text == "pi")
                return std::numbers::pi;
            double (*fn)(double) = nullptr;
            if (t.text == "sin") fn = [](double x) { return std::sin(x); };
            else if (t.text == "cos") fn = [](double x) { return std::cos(x); };
            else if (t.text == "tan") fn = [](double x) { return std::tan(x); };
            else if (t.text == "exp") fn = [](double x) { return std::exp(x); };
            else if (t.text == "ln") fn = [](double x) { return std::log(x); };
            else if (t.text == "sqrt") fn = [](double x) { return std::sqrt(x); };
            if (fn == nullptr)
                fail("unknown identifier '" + t.text + "' in expression", t);
            expect("(");
            const double arg = expression();
            expect(")");
            const double v = fn(arg);
            if (!std::isfinite(v))
                fail("expression is not finite", t);
            return v;
        }
        if (accept("(")) {
            const double v = expression();
            expect(")");
            return v;
        }
        fail("expected an expression", t);
    }

    void gate() {
        const Token &name = next();
        std::optional<GateKind> kind;
        if (name.text == "c3x" || name.text == "cccx")
            kind = GateKind::CCCX;
        else if (name.text != "m" && name.text != "unitary")
            kind = gate_from_token(name.text);
        if (!kind)
            fail("unsupported gate '" + name.text + "'", name);
        require_qreg(name);

        std::vector<double> params;
        if (accept("(")) {
            if (!accept(")")) {
                params.push_back(expression());
                while (accept(","))
                    params.push_back(expression());
                expect(")");
            }
        }
        const std::size_t want_params = is_parameterized(*kind) ? 1 : 0;
        if (params.size() != want_params)
            fail(name.text + " takes " + std::to_string(want_params) + " parameter(s)", name);

        std::vector<Operand> args;
        args.push_back(operand(qreg_, "a qubit"));
        while (accept(","))
            args.push_back(operand(qreg_, "a qubit"));
        expect(";");
        if (args.size() != gate_arity(*kind))
            fail(name.text + " expects " + std::to_string(gate_arity(*kind)) + " qubit argument(s)",
                 name);

        auto make = [&](std::vector<std::size_t> qubits) {
            GateOp op{*kind, std::move(qubits), {}, {}, {}};
            if (want_params)
                op.angle = params[0];
            return op;
        };
        if (args.size() == 1 && !args[0].index) {
            for (std::size_t i = 0; i < qreg_.size; ++i)
                append(make({i}), name);
            return;
        }
        std::vector<std::size_t> qubits;
        for (const auto &a : args) {
            if (!a.index)
                fail("register broadcast is only supported for single-qubit gates", *a.at);
            qubits.push_back(*a.index);
        }
        append(make(std::move(qubits)), name);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::string name_;
    Register qreg_;
    Register creg_;
    std::optional<QuantumCircuit> circuit_;
};

} // namespace

QuantumCircuit parse_qasm(std::string_view text, std::string name) {
    return Parser(Lexer(text).run(), std::move(name)).run();
}

// ------------------------------------------------------- framework script

namespace {

std::string python_complex(const Complex &z) {
    if (z.imag() == 0.0)
        return text::format_number(z.real());
    return "complex(" + text::format_number(z.real()) + ", " + text::format_number(z.imag()) + ")";
}

std::string python_qubit_list(const std::vector<std::size_t> &qubits) {
    std::string out = "[";
    for (std::size_t i = 0; i < qubits.size(); ++i)
        out += (i ? ", " : "") + std::to_string(qubits[i]);
    return out + "]";
}

} // namespace

std::string emit_framework_code(const QuantumCircuit &circuit, std::uint64_t shots) {
    const bool sample = circuit.has_measurement();
    std::ostringstream out;
    out << "from qiskit import QuantumCircuit";
    if (sample)
        out << ", transpile\nfrom qiskit_aer import AerSimulator\n";
    else
        out << "\nfrom qiskit.quantum_info import Statevector\n";
    out << "\nqc = QuantumCircuit(" << circuit.num_qubits();
    if (circuit.num_clbits() > 0)
        out << ", " << circuit.num_clbits();
    out << ")\n";

    for (const auto &op : circuit.ops()) {
        const auto &q = op.qubits;
        switch (op.kind) {
        case GateKind::Measure:
            out << "qc.measure(" << q[0] << ", " << *op.clbit << ")\n";
            break;
        case GateKind::CCCX:
            out << "qc.mcx([" << q[0] << ", " << q[1] << ", " << q[2] << "], " << q[3] << ")\n";
            break;
        case GateKind::Unitary: {
            const auto &m = *op.matrix;
            out << "qc.unitary([";
            for (std::size_t r = 0; r < m.dim(); ++r) {
                out << (r ? ",\n            [" : "[");
                for (std::size_t c = 0; c < m.dim(); ++c)
                    out << (c ? ", " : "") << python_complex(m(r, c));
                out << ']';
            }
            out << "], " << python_qubit_list(q) << ", label=\"unitary\")\n";
            break;
        }
        default:
            out << "qc." << gate_token(op.kind) << '(';
            if (op.angle)
                out << text::format_number(*op.angle) << ", ";
            for (std::size_t i = 0; i < q.size(); ++i)
                out << (i ? ", " : "") << q[i];
            out << ")\n";
            break;
        }
    }

    if (sample) {
        out << "\nsimulator = AerSimulator()\n"
            << "result = simulator.run(transpile(qc, simulator), shots=" << shots << ").result()\n"
            << "print(result.get_counts(qc))\n";
    } else {
        out << "\nprint(Statevector(qc))\n";
    }
    return out.str();
}

} // namespace qac::qasm
