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

#include "qac/osc.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <bit>
#include <cerrno>
#include <chrono>
#include <cstring>

#include "qac/errors.hpp"
#include "qac/qasm.hpp"
#include "qac/text.hpp"

namespace qac::osc {

// -- codec --------------------------------------------------------------------

namespace {

bool same_argument(const Argument &a, const Argument &b) {
    if (a.index() != b.index())
        return false;
    if (const float *fa = std::get_if<float>(&a))
        return std::bit_cast<std::uint32_t>(*fa) == std::bit_cast<std::uint32_t>(std::get<float>(b));
    return a == b;
}

std::size_t padded(std::size_t n) { return (n + 3) & ~std::size_t{3}; }

void put_u32(std::vector<std::uint8_t> &out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

void put_string(std::vector<std::uint8_t> &out, const std::string &s) {
    if (s.find('\0') != std::string::npos)
        throw ArgumentError("OSC strings cannot contain NUL bytes");
    out.insert(out.end(), s.begin(), s.end());
    const std::size_t total = padded(s.size() + 1);
    out.insert(out.end(), total - s.size(), 0);
}

class Reader {
  public:
    explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    [[nodiscard]] bool done() const { return pos_ == bytes_.size(); }

    std::string string(const char *what) {
        std::size_t end = pos_;
        while (end < bytes_.size() && bytes_[end] != 0)
            ++end;
        if (end == bytes_.size())
            throw WireError(std::string("unterminated ") + what);
        std::string s(bytes_.begin() + static_cast<std::ptrdiff_t>(pos_),
                      bytes_.begin() + static_cast<std::ptrdiff_t>(end));
        const std::size_t next = pos_ + padded(s.size() + 1);
        if (next > bytes_.size())
            throw WireError(std::string("truncated padding after ") + what);
        for (std::size_t i = end; i < next; ++i)
            if (bytes_[i] != 0)
                throw WireError(std::string("non-zero padding after ") + what);
        pos_ = next;
        return s;
    }

    std::uint32_t u32(const char *what) {
        if (bytes_.size() - pos_ < 4)
            throw WireError(std::string("truncated ") + what);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v = (v << 8) | bytes_[pos_++];
        return v;
    }

    Blob blob() {
        const auto size = static_cast<std::int32_t>(u32("blob size"));
        if (size < 0 || static_cast<std::size_t>(size) > bytes_.size() - pos_)
            throw WireError("blob size " + std::to_string(size) + " exceeds the packet");
        Blob b;
        b.bytes.assign(bytes_.begin() + static_cast<std::ptrdiff_t>(pos_),
                       bytes_.begin() + static_cast<std::ptrdiff_t>(pos_ + static_cast<std::size_t>(size)));
        const std::size_t next = pos_ + padded(static_cast<std::size_t>(size));
        if (next > bytes_.size())
            throw WireError("truncated blob padding");
        for (std::size_t i = pos_ + static_cast<std::size_t>(size); i < next; ++i)
            if (bytes_[i] != 0)
                throw WireError("non-zero blob padding");
        pos_ = next;
        return b;
    }

  private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

} // namespace

bool Message::operator==(const Message &other) const {
    if (address != other.address || args.size() != other.args.size())
        return false;
    for (std::size_t i = 0; i < args.size(); ++i)
        if (!same_argument(args[i], other.args[i]))
            return false;
    return true;
}

std::vector<std::uint8_t> encode_osc(const Message &message) {
    if (message.address.empty() || message.address[0] != '/')
        throw ArgumentError("OSC address must start with '/': '" + message.address + "'");
    std::vector<std::uint8_t> out;
    put_string(out, message.address);
    std::string tags = ",";
    for (const auto &a : message.args)
        tags += "ifsb"[a.index()];
    put_string(out, tags);
    for (const auto &a : message.args) {
        std::visit(
            [&](const auto &v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, std::int32_t>) {
                    put_u32(out, static_cast<std::uint32_t>(v));
                } else if constexpr (std::is_same_v<T, float>) {
                    put_u32(out, std::bit_cast<std::uint32_t>(v));
                } else if constexpr (std::is_same_v<T, std::string>) {
                    put_string(out, v);
                } else {
                    if (v.bytes.size() > 0x7fffffff)
                        throw ArgumentError("OSC blob too large");
                    put_u32(out, static_cast<std::uint32_t>(v.bytes.size()));
                    out.insert(out.end(), v.bytes.begin(), v.bytes.end());
                    out.insert(out.end(), padded(v.bytes.size()) - v.bytes.size(), 0);
                }
            },
            a);
    }
    return out;
}

Message decode_osc(std::span<const std::uint8_t> packet) {
    if (packet.empty() || packet.size() % 4 != 0)
        throw WireError("OSC packet size " + std::to_string(packet.size()) + " is not a positive multiple of 4");
    Reader r(packet);
    Message m;
    m.address = r.string("address");
    if (m.address == "#bundle")
        throw WireError("OSC bundles are not supported");
    if (m.address.empty() || m.address[0] != '/')
        throw WireError("OSC address must start with '/'");
    if (r.done())
        throw WireError("missing OSC type tag string");
    const std::string tags = r.string("type tags");
    if (tags.empty() || tags[0] != ',')
        throw WireError("OSC type tags must start with ','");
    for (std::size_t i = 1; i < tags.size(); ++i) {
        switch (tags[i]) {
        case 'i':
            m.args.emplace_back(static_cast<std::int32_t>(r.u32("int32")));
            break;
        case 'f':
            m.args.emplace_back(std::bit_cast<float>(r.u32("float32")));
            break;
        case 's':
            m.args.emplace_back(r.string("string"));
            break;
        case 'b':
            m.args.emplace_back(r.blob());
            break;
        default:
            throw WireError(std::string("unsupported OSC type tag '") + tags[i] + "'");
        }
    }
    if (!r.done())
        throw WireError("trailing bytes after OSC arguments");
    return m;
}

// -- socket ---------------------------------------------------------------------

namespace {

sockaddr_in resolve(const std::string &host, std::uint16_t port) {
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (inet_pton(AF_INET, host.c_str(), &addr.sin_addr) == 1)
        return addr;
    addrinfo hints{};
    hints.ai_family = AF_INET;
    hints.ai_socktype = SOCK_DGRAM;
    addrinfo *res = nullptr;
    if (getaddrinfo(host.c_str(), nullptr, &hints, &res) != 0 || !res)
        throw IoError("cannot resolve host '" + host + "'");
    addr.sin_addr = reinterpret_cast<sockaddr_in *>(res->ai_addr)->sin_addr;
    freeaddrinfo(res);
    return addr;
}

std::string errno_text() { return std::strerror(errno); }

} // namespace

UdpSocket::UdpSocket(std::uint16_t port, const std::string &host) {
    fd_ = ::socket(AF_INET, SOCK_DGRAM, 0);
    if (fd_ < 0)
        throw IoError("cannot open UDP socket: " + errno_text());
    const sockaddr_in addr = resolve(host, port);
    if (::bind(fd_, reinterpret_cast<const sockaddr *>(&addr), sizeof addr) != 0) {
        const std::string why = errno_text();
        ::close(fd_);
        fd_ = -1;
        throw IoError("cannot bind UDP " + host + ":" + std::to_string(port) + ": " + why);
    }
}

UdpSocket::~UdpSocket() {
    if (fd_ >= 0)
        ::close(fd_);
}

UdpSocket::UdpSocket(UdpSocket &&other) noexcept : fd_(std::exchange(other.fd_, -1)) {}

UdpSocket &UdpSocket::operator=(UdpSocket &&other) noexcept {
    if (this != &other) {
        if (fd_ >= 0)
            ::close(fd_);
        fd_ = std::exchange(other.fd_, -1);
    }
    return *this;
}

std::uint16_t UdpSocket::local_port() const {
    sockaddr_in addr{};
    socklen_t len = sizeof addr;
    if (::getsockname(fd_, reinterpret_cast<sockaddr *>(&addr), &len) != 0)
        throw IoError("getsockname failed: " + errno_text());
    return ntohs(addr.sin_port);
}

void UdpSocket::send_to(std::span<const std::uint8_t> bytes, const Endpoint &to) const {
    const sockaddr_in addr = resolve(to.host, to.port);
    const auto sent = ::sendto(fd_, bytes.data(), bytes.size(), 0, reinterpret_cast<const sockaddr *>(&addr),
                               sizeof addr);
    if (sent < 0 || static_cast<std::size_t>(sent) != bytes.size())
        throw IoError("UDP send to " + to.host + ":" + std::to_string(to.port) + " failed: " + errno_text());
}

std::optional<Datagram> UdpSocket::receive(int timeout_ms) const {
    pollfd p{fd_, POLLIN, 0};
    const int ready = ::poll(&p, 1, timeout_ms);
    if (ready <= 0)
        return std::nullopt;
    Datagram d;
    d.bytes.resize(65536);
    sockaddr_in from{};
    socklen_t len = sizeof from;
    const auto n = ::recvfrom(fd_, d.bytes.data(), d.bytes.size(), 0, reinterpret_cast<sockaddr *>(&from), &len);
    if (n < 0)
        return std::nullopt;
    d.bytes.resize(static_cast<std::size_t>(n));
    char host[INET_ADDRSTRLEN] = {};
    inet_ntop(AF_INET, &from.sin_addr, host, sizeof host);
    d.from = {host, ntohs(from.sin_port)};
    return d;
}

// -- service --------------------------------------------------------------------

namespace {

const ServiceConfig &validated(const ServiceConfig &c) {
    if (c.default_shots == 0)
        throw ArgumentError("default_shots must be positive");
    if (!c.reply_to_source && c.reply_port == 0)
        throw ArgumentError("a reply port is required unless replies go to the source port");
    if (!c.reply_to_source && c.listen_port != 0 && c.listen_port == c.reply_port)
        throw ArgumentError("listen and reply ports must differ");
    if (c.queue_capacity == 0)
        throw ArgumentError("queue capacity must be positive");
    return c;
}

Message error_message(const std::string &text) { return {"/error", {text}}; }

} // namespace

OscService::OscService(ServiceConfig config, LogSink sink)
    : config_(validated(config)), sink_(std::move(sink)), socket_(config_.listen_port, config_.host),
      stream_(Rng::from_optional(config_.seed)), session_(sink_) {
    receiver_ = std::thread([this] { receive_loop(); });
    worker_ = std::thread([this] { work_loop(); });
    info("OSC service listening on " + config_.host + ":" + std::to_string(port()));
}

OscService::~OscService() { stop(); }

void OscService::stop() {
    running_ = false;
    queue_cv_.notify_all();
    if (receiver_.joinable())
        receiver_.join();
    if (worker_.joinable())
        worker_.join();
}

void OscService::info(const std::string &text) const {
    if (sink_)
        sink_({Severity::Info, text});
}

Endpoint OscService::reply_target(const Endpoint &from) const {
    return config_.reply_to_source ? from : Endpoint{from.host, config_.reply_port};
}

void OscService::receive_loop() {
    while (running_) {
        auto d = socket_.receive(50);
        if (!d)
            continue;
        std::lock_guard lock(queue_mutex_);
        if (queue_.size() >= config_.queue_capacity) {
            const Datagram dropped = std::move(queue_.front());
            queue_.pop_front();
            try {
                socket_.send(error_message("request dropped: the queue is full"), reply_target(dropped.from));
            } catch (const Error &) {
            }
        }
        queue_.push_back(std::move(*d));
        queue_cv_.notify_one();
    }
}

void OscService::work_loop() {
    for (;;) {
        Datagram d;
        {
            std::unique_lock lock(queue_mutex_);
            queue_cv_.wait(lock, [this] { return !queue_.empty() || !running_; });
            if (!running_)
                return;
            d = std::move(queue_.front());
            queue_.pop_front();
        }
        std::vector<Message> replies;
        if (d.bytes.size() > config_.max_payload) {
            replies.push_back(error_message("payload of " + std::to_string(d.bytes.size()) +
                                            " bytes exceeds the limit of " + std::to_string(config_.max_payload)));
        } else {
            try {
                replies = handle(decode_osc(d.bytes));
            } catch (const WireError &e) {
                replies.push_back(error_message(std::string("malformed packet: ") + e.what()));
            }
        }
        const Endpoint to = reply_target(d.from);
        for (const auto &r : replies) {
            try {
                socket_.send(r, to);
            } catch (const Error &e) {
                if (sink_)
                    sink_({Severity::Error, e.what()});
            }
        }
    }
}

std::vector<Message> OscService::handle(const Message &request) {
    std::lock_guard lock(handle_mutex_);
    std::vector<Message> out;
    auto fail = [&](const std::string &text) {
        if (sink_)
            sink_({Severity::Error, text});
        out.push_back(error_message(text));
        return out;
    };

    if (request.address == "/QuantumCircuit") {
        if (request.args.empty() || request.args.size() > 2 || !std::holds_alternative<std::string>(request.args[0]))
            return fail("/QuantumCircuit expects <qasm:string> [<shots:int32>]");
        std::uint64_t shots = config_.default_shots;
        if (request.args.size() == 2) {
            const auto *s = std::get_if<std::int32_t>(&request.args[1]);
            if (!s || *s <= 0)
                return fail("shots must be a positive int32");
            shots = static_cast<std::uint64_t>(*s);
        }
        out.push_back({"/info", {std::string("received circuit, ") + std::to_string(shots) + " shots"}});
        try {
            const auto circuit = qasm::parse_qasm(std::get<std::string>(request.args[0]), "osc");
            ShotSampler sampler(circuit);
            Rng fresh = Rng::from_optional(config_.seed);
            Rng &rng = config_.seed ? fresh : stream_;
            const auto counts = sampler.counts(shots, rng);
            info("OSC request: " + std::to_string(circuit.num_qubits()) + " qubit(s), " + std::to_string(shots) +
                 " shots");
            out.push_back({"/counts", {format_counts_pairs(counts)}});
        } catch (const Error &e) {
            return fail(e.what());
        }
        return out;
    }

    if (request.address == "/command") {
        if (request.args.size() != 1 || !std::holds_alternative<std::string>(request.args[0]))
            return fail("/command expects <message:string>");
        try {
            for (const auto &o : session_.execute_line(std::get<std::string>(request.args[0]))) {
                std::string joined;
                for (const auto &item : o.items) {
                    if (!joined.empty())
                        joined += ' ';
                    joined += item;
                }
                out.push_back({"/" + o.selector, {joined}});
            }
        } catch (const Error &e) {
            out.push_back(error_message(e.what()));
        }
        return out;
    }

    return fail("unknown OSC address '" + request.address + "'");
}

// -- client ---------------------------------------------------------------------

Counts parse_counts_pairs(const std::string &pairs) {
    const auto toks = text::tokenize(pairs);
    if (toks.size() % 2 != 0)
        throw WireError("counts string has an odd number of items");
    Counts c;
    for (std::size_t i = 0; i < toks.size(); i += 2) {
        const auto &key = toks[i].text;
        if (key.find_first_not_of("01") != std::string::npos)
            throw WireError("'" + key + "' is not a bitstring");
        auto n = text::parse_integer(toks[i + 1].text);
        if (!n || *n < 0)
            throw WireError("'" + toks[i + 1].text + "' is not a count");
        c.entries[key] += static_cast<std::uint64_t>(*n);
        c.shots += static_cast<std::uint64_t>(*n);
    }
    return c;
}

Counts client_request(const Endpoint &service, const std::string &qasm, std::optional<std::int32_t> shots,
                      int timeout_ms, std::uint16_t local_port) {
    UdpSocket sock(local_port, "0.0.0.0");
    Message req{"/QuantumCircuit", {qasm}};
    if (shots)
        req.args.emplace_back(*shots);
    sock.send(req, service);

    using clock = std::chrono::steady_clock;
    const auto deadline = clock::now() + std::chrono::milliseconds(timeout_ms);
    for (;;) {
        const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - clock::now()).count();
        if (left <= 0)
            break;
        auto d = sock.receive(static_cast<int>(left));
        if (!d)
            break;
        const Message reply = decode_osc(d->bytes);
        const auto *text = reply.args.empty() ? nullptr : std::get_if<std::string>(&reply.args[0]);
        if (reply.address == "/info")
            continue;
        if (reply.address == "/error")
            throw RemoteError("service error: " + (text ? *text : std::string("(no text)")));
        if (reply.address == "/counts") {
            if (!text)
                throw WireError("/counts reply without a string argument");
            return parse_counts_pairs(*text);
        }
        throw WireError("unexpected reply address '" + reply.address + "'");
    }
    throw TimeoutError("no reply from " + service.host + ":" + std::to_string(service.port) + " within " +
                       std::to_string(timeout_ms) + " ms");
}

} // namespace qac::osc
