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

#include <algorithm>
#include <chrono>
#include <random>

#include "gtest/gtest.h"

#include "qac/errors.hpp"
#include "qac/osc.hpp"

using namespace qac;
using namespace qac::osc;

namespace {

const char *kBell = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\ncreg c[2];\n"
                    "h q[0];\ncx q[0],q[1];\nmeasure q[0] -> c[0];\nmeasure q[1] -> c[1];\n";

LogSink quiet() {
    return [](const LogEvent &) {};
}

// Independent byte-level encoder used as the oracle for the codec.
std::vector<std::uint8_t> oracle_bytes(const std::string &address, const std::string &tags,
                                       const std::vector<std::vector<std::uint8_t>> &payloads) {
    std::vector<std::uint8_t> out;
    auto str = [&](const std::string &s) {
        for (char c : s)
            out.push_back(static_cast<std::uint8_t>(c));
        do
            out.push_back(0);
        while (out.size() % 4);
    };
    str(address);
    str(tags);
    for (const auto &p : payloads)
        out.insert(out.end(), p.begin(), p.end());
    return out;
}

std::string random_text(std::mt19937_64 &g, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<int> ch(1, 126);
    std::string s(len(g), 'x');
    for (auto &c : s)
        c = static_cast<char>(ch(g));
    return s;
}

Message random_message(std::mt19937_64 &g) {
    Message m{"/" + random_text(g, 12), {}};
    std::uniform_int_distribution<int> kind(0, 3), count(0, 6);
    const int n = count(g);
    for (int i = 0; i < n; ++i) {
        switch (kind(g)) {
        case 0:
            m.args.emplace_back(static_cast<std::int32_t>(g()));
            break;
        case 1:
            m.args.emplace_back(std::bit_cast<float>(static_cast<std::uint32_t>(g())));
            break;
        case 2:
            m.args.emplace_back(random_text(g, 20));
            break;
        default: {
            Blob b;
            b.bytes.resize(g() % 9);
            for (auto &x : b.bytes)
                x = static_cast<std::uint8_t>(g());
            m.args.emplace_back(b);
        }
        }
    }
    return m;
}

} // namespace

TEST(OscCodec, MatchesHandBuiltBytes) {
    Message m{"/counts", {std::int32_t{-2}, 1.0f, std::string("00 1"), Blob{{1, 2, 3, 4, 5}}}};
    const auto expected = oracle_bytes("/counts", ",ifsb",
                                       {{0xff, 0xff, 0xff, 0xfe},
                                        {0x3f, 0x80, 0x00, 0x00},
                                        {'0', '0', ' ', '1', 0, 0, 0, 0},
                                        {0, 0, 0, 5, 1, 2, 3, 4, 5, 0, 0, 0}});
    EXPECT_EQ(encode_osc(m), expected);
    EXPECT_EQ(decode_osc(expected), m);
}

TEST(OscCodec, StringPaddingAtBoundary) {
    // "/abc" is 4 bytes and needs a full 4-byte NUL pad.
    const auto b = encode_osc({"/abc", {}});
    EXPECT_EQ(b.size(), 12u);
    EXPECT_EQ(b[4], 0);
    EXPECT_EQ(b[7], 0);
}

TEST(OscCodec, RandomRoundTrip) {
    std::mt19937_64 g(7);
    for (int i = 0; i < 2000; ++i) {
        const Message m = random_message(g);
        const auto bytes = encode_osc(m);
        ASSERT_EQ(bytes.size() % 4, 0u);
        const Message back = decode_osc(bytes);
        ASSERT_EQ(back, m);
        ASSERT_EQ(encode_osc(back), bytes);
    }
}

TEST(OscCodec, MalformedPacketsRaiseWireError) {
    const auto good = encode_osc({"/x", {std::int32_t{3}, std::string("ab")}});
    std::vector<std::vector<std::uint8_t>> bad;
    bad.push_back({});
    bad.emplace_back(good.begin(), good.end() - 1);          // misaligned
    bad.emplace_back(good.begin(), good.end() - 4);          // truncated string
    bad.push_back(good);
    bad.back().push_back(0), bad.back().push_back(0), bad.back().push_back(0), bad.back().push_back(0);
    bad.push_back(oracle_bytes("x", ",", {}));                // no leading slash
    bad.push_back(oracle_bytes("/x", "i", {{0, 0, 0, 1}}));  // tags without comma
    bad.push_back(oracle_bytes("/x", ",d", {{0, 0, 0, 1, 0, 0, 0, 0}}));
    bad.push_back(oracle_bytes("/x", ",i", {}));
    bad.push_back(oracle_bytes("#bundle", ",", {}));
    bad.push_back(oracle_bytes("/x", ",b", {{0, 0, 0, 9, 1, 2, 3, 4}}));
    bad.push_back({'/', 'x', 0, 1, ',', 0, 0, 0});            // non-zero padding
    bad.push_back({'/', 'x', 'y', 'z'});                      // unterminated
    bad.push_back({'/', 'x', 0, 0});                          // missing type tags
    for (std::size_t i = 0; i < bad.size(); ++i)
        EXPECT_THROW((void)decode_osc(bad[i]), WireError) << "case " << i;
}

TEST(OscCodec, RandomCorruptionNeverCrashes) {
    std::mt19937_64 g(99);
    for (int i = 0; i < 3000; ++i) {
        auto bytes = encode_osc(random_message(g));
        bytes[g() % bytes.size()] ^= static_cast<std::uint8_t>(1u << (g() % 8));
        try {
            const Message m = decode_osc(bytes);
            EXPECT_EQ(encode_osc(m), bytes);
        } catch (const WireError &) {
        }
    }
}

TEST(OscCodec, EncodeRejectsBadInput) {
    EXPECT_THROW((void)encode_osc({"nope", {}}), ArgumentError);
    EXPECT_THROW((void)encode_osc({"/x", {std::string("a\0b", 3)}}), ArgumentError);
}

TEST(OscService, ConfigValidation) {
    ServiceConfig c;
    EXPECT_THROW(OscService(c, quiet()), ArgumentError); // no reply port
    c.listen_port = 9100;
    c.reply_port = 9100;
    EXPECT_THROW(OscService(c, quiet()), ArgumentError);
    c.reply_to_source = true;
    c.default_shots = 0;
    EXPECT_THROW(OscService(c, quiet()), ArgumentError);
}

TEST(OscService, HandleWithoutNetwork) {
    ServiceConfig c;
    c.reply_to_source = true;
    c.seed = 5;
    OscService svc(c, quiet());
    auto replies = svc.handle({"/QuantumCircuit", {std::string(kBell), std::int32_t{100}}});
    ASSERT_GE(replies.size(), 2u);
    EXPECT_EQ(replies.front().address, "/info");
    EXPECT_EQ(replies.back().address, "/counts");
    const Counts counts = parse_counts_pairs(std::get<std::string>(replies.back().args[0]));
    EXPECT_EQ(counts.shots, 100u);
    for (const auto &[k, v] : counts.entries)
        EXPECT_TRUE(k == "00" || k == "11") << k;

    // Seeded service: identical requests give identical replies.
    EXPECT_EQ(svc.handle({"/QuantumCircuit", {std::string(kBell), std::int32_t{100}}}), replies);

    auto err = svc.handle({"/QuantumCircuit", {std::string("OPENQASM 2.0;\nqreg q[1];\nfoo q[0];\n")}});
    ASSERT_EQ(err.back().address, "/error");
    EXPECT_NE(std::get<std::string>(err.back().args[0]).find("line 3"), std::string::npos)
        << std::get<std::string>(err.back().args[0]);

    EXPECT_EQ(svc.handle({"/QuantumCircuit", {std::string(kBell), std::int32_t{0}}}).back().address, "/error");
    EXPECT_EQ(svc.handle({"/QuantumCircuit", {std::int32_t{1}}}).back().address, "/error");
    EXPECT_EQ(svc.handle({"/nowhere", {}}).back().address, "/error");

    auto cmd = svc.handle({"/command", {std::string("QuantumCircuit qc 1 1")}});
    EXPECT_TRUE(cmd.empty() || cmd.back().address != "/error");
    svc.handle({"/command", {std::string("qc h 0, qc m 0 0")}});
    svc.handle({"/command", {std::string("Simulator sim qc 10")}});
    auto got = svc.handle({"/command", {std::string("sim get_counts")}});
    ASSERT_EQ(got.size(), 1u);
    EXPECT_EQ(got[0].address, "/counts");
    EXPECT_EQ(parse_counts_pairs(std::get<std::string>(got[0].args[0])).shots, 10u);
    EXPECT_EQ(svc.handle({"/command", {std::string("nosuch get_counts")}}).back().address, "/error");
}

TEST(OscLoopback, BellCountsAndErrors) {
    ServiceConfig c;
    c.reply_to_source = true;
    OscService svc(c, quiet());
    const Endpoint ep{"127.0.0.1", svc.port()};

    const Counts counts = client_request(ep, kBell, 1024, 2000);
    EXPECT_EQ(counts.shots, 1024u);
    std::uint64_t sum = 0;
    for (const auto &[k, v] : counts.entries) {
        EXPECT_TRUE(k == "00" || k == "11") << k;
        sum += v;
    }
    EXPECT_EQ(sum, 1024u);

    EXPECT_EQ(client_request(ep, kBell, std::nullopt, 2000).shots, 1024u);
    EXPECT_EQ(client_request(ep, kBell, 1, 2000).shots, 1u);

    try {
        (void)client_request(ep, "OPENQASM 2.0;\nqreg q[2];\ncx q[0];\n", 10, 2000);
        FAIL() << "expected RemoteError";
    } catch (const RemoteError &e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }

    // Malformed datagram still gets an /error reply.
    UdpSocket raw;
    const std::vector<std::uint8_t> junk{'/', 'x', 0};
    raw.send_to(junk, ep);
    auto reply = raw.receive(2000);
    ASSERT_TRUE(reply.has_value());
    EXPECT_EQ(decode_osc(reply->bytes).address, "/error");
}

TEST(OscLoopback, FixedReplyPort) {
    UdpSocket probe;
    const std::uint16_t reply_port = probe.local_port();
    probe = UdpSocket(); // release the port number for the client
    ServiceConfig c;
    c.reply_port = reply_port;
    OscService svc(c, quiet());
    const Counts counts = client_request({"127.0.0.1", svc.port()}, kBell, 64, 2000, reply_port);
    EXPECT_EQ(counts.shots, 64u);
}

TEST(OscLoopback, DeadPortTimesOut) {
    std::uint16_t dead;
    {
        UdpSocket s;
        dead = s.local_port();
    }
    const auto t0 = std::chrono::steady_clock::now();
    EXPECT_THROW((void)client_request({"127.0.0.1", dead}, kBell, 10, 200), TimeoutError);
    EXPECT_LT(std::chrono::steady_clock::now() - t0, std::chrono::seconds(2));
}

TEST(OscLoopback, MedianLatencyUnderFiftyMs) {
    ServiceConfig c;
    c.reply_to_source = true;
    OscService svc(c, quiet());
    const Endpoint ep{"127.0.0.1", svc.port()};
    std::vector<double> ms;
    for (int i = 0; i < 21; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        (void)client_request(ep, kBell, 1024, 2000);
        ms.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
    }
    std::nth_element(ms.begin(), ms.begin() + 10, ms.end());
    EXPECT_LT(ms[10], 50.0);
}

TEST(OscLoopback, ConcurrentClientsAllAnswered) {
    ServiceConfig c;
    c.reply_to_source = true;
    OscService svc(c, quiet());
    const Endpoint ep{"127.0.0.1", svc.port()};
    std::vector<std::thread> clients;
    std::atomic<int> ok{0};
    for (int i = 0; i < 8; ++i)
        clients.emplace_back([&, i] {
            if (client_request(ep, kBell, 10 + i, 3000).shots == static_cast<std::uint64_t>(10 + i))
                ++ok;
        });
    for (auto &t : clients)
        t.join();
    EXPECT_EQ(ok.load(), 8);
}

TEST(OscClient, ParseCountsPairs) {
    const Counts c = parse_counts_pairs("00 61 11 66");
    EXPECT_EQ(c.shots, 127u);
    EXPECT_EQ(c.entries.at("11"), 66u);
    EXPECT_THROW((void)parse_counts_pairs("00"), WireError);
    EXPECT_THROW((void)parse_counts_pairs("0a 1"), WireError);
    EXPECT_THROW((void)parse_counts_pairs("00 -1"), WireError);
}
