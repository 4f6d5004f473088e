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

/**
 * @file
 * Open Sound Control 1.0 over UDP: message codec, socket, circuit service
 * and a blocking client.
 *
 * Service protocol:
 *   in:  /QuantumCircuit <qasm:s> [<shots:i>]
 *   out: /info <text:s> ... then /counts <"state count state count ...":s>
 *        or /error <text:s>
 *   in:  /command <session message:s>
 *   out: /<selector> <items joined by spaces:s> per output, or /error
 *
 * Bundles are not supported; only single messages.
 */

#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "qac/lang.hpp"
#include "qac/registry.hpp"
#include "qac/sampling.hpp"

namespace qac::osc {

struct Blob {
    std::vector<std::uint8_t> bytes;
    bool operator==(const Blob &) const = default;
};

using Argument = std::variant<std::int32_t, float, std::string, Blob>;

struct Message {
    std::string address;
    std::vector<Argument> args;

    /// Floats compare by bit pattern, so NaN payloads round-trip as equal.
    bool operator==(const Message &other) const;
};

/// ArgumentError for an address without a leading '/' or strings with NUL.
[[nodiscard]] std::vector<std::uint8_t> encode_osc(const Message &message);

/// WireError on bad alignment, padding, type tags or truncation.
[[nodiscard]] Message decode_osc(std::span<const std::uint8_t> packet);

struct Endpoint {
    std::string host = "127.0.0.1";
    std::uint16_t port = 0;

    bool operator==(const Endpoint &) const = default;
};

struct Datagram {
    std::vector<std::uint8_t> bytes;
    Endpoint from;
};

/// IPv4 UDP socket, closed on destruction.
class UdpSocket {
  public:
    /// Port 0 picks an ephemeral port. IoError if binding fails.
    explicit UdpSocket(std::uint16_t port = 0, const std::string &host = "127.0.0.1");
    ~UdpSocket();
    UdpSocket(const UdpSocket &) = delete;
    UdpSocket &operator=(const UdpSocket &) = delete;
    UdpSocket(UdpSocket &&other) noexcept;
    UdpSocket &operator=(UdpSocket &&other) noexcept;

    [[nodiscard]] std::uint16_t local_port() const;

    void send_to(std::span<const std::uint8_t> bytes, const Endpoint &to) const;
    void send(const Message &message, const Endpoint &to) const { send_to(encode_osc(message), to); }

    /// Waits up to `timeout_ms`; nullopt on timeout.
    [[nodiscard]] std::optional<Datagram> receive(int timeout_ms) const;

  private:
    int fd_ = -1;
};

struct ServiceConfig {
    std::string host = "127.0.0.1";
    std::uint16_t listen_port = 0;
    /// Fixed reply port on the sender's host; ignored with reply_to_source.
    std::uint16_t reply_port = 0;
    bool reply_to_source = false;
    std::uint64_t default_shots = 1024;
    std::size_t max_payload = 65507;
    /// Each request samples from a fresh stream with this seed when set.
    std::optional<std::uint64_t> seed;
    std::size_t queue_capacity = 64;
};

/// Background UDP service; runs until stop() or destruction.
class OscService {
  public:
    /// ArgumentError for an invalid config (equal ports, zero shots, no
    /// reply port without reply_to_source). IoError if the port is taken.
    explicit OscService(ServiceConfig config, LogSink sink = stderr_log_sink());
    ~OscService();
    OscService(const OscService &) = delete;
    OscService &operator=(const OscService &) = delete;

    [[nodiscard]] std::uint16_t port() const { return socket_.local_port(); }
    void stop();

    /// Replies for one request, without any networking. Exposed for tests.
    std::vector<Message> handle(const Message &request);

  private:
    void receive_loop();
    void work_loop();
    void info(const std::string &text) const;
    Endpoint reply_target(const Endpoint &from) const;

    ServiceConfig config_;
    LogSink sink_;
    UdpSocket socket_;
    std::mutex handle_mutex_; // guards stream_ and session_
    Rng stream_;
    lang::Session session_;

    std::mutex queue_mutex_;
    std::condition_variable queue_cv_;
    std::deque<Datagram> queue_;
    std::atomic<bool> running_{true};
    std::thread receiver_;
    std::thread worker_;
};

/// Sends one circuit and waits for /counts, skipping /info. Binds an
/// ephemeral port unless `local_port` is given. Throws TimeoutError,
/// WireError for unreadable replies and RemoteError for /error replies.
[[nodiscard]] Counts client_request(const Endpoint &service, const std::string &qasm,
                                    std::optional<std::int32_t> shots, int timeout_ms,
                                    std::uint16_t local_port = 0);

/// Parses "state count state count ..." back into Counts.
[[nodiscard]] Counts parse_counts_pairs(const std::string &pairs);

} // namespace qac::osc
