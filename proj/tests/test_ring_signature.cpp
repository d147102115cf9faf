#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "ringvote/errors.hpp"
#include "ringvote/ring_signature.hpp"
#include "ringvote/rng.hpp"
#include "support/reference.hpp"

using namespace ringvote;
using ringvote::testing::load_vectors;
using ringvote::testing::reference_mul;

namespace {

struct RingFixture {
    std::vector<KeyPair> keys;
    Ring ring;
};

RingFixture make_ring(size_t n, RandomSource& rng) {
    RingFixture f;
    std::vector<GroupPoint> members;
    for (size_t i = 0; i < n; i++) {
        f.keys.push_back(KeyPair::generate(rng));
        members.push_back(f.keys.back().public_key);
    }
    f.ring = Ring::of(std::move(members));
    return f;
}

Bytes message(std::string_view s) {
    auto b = as_bytes(s);
    return Bytes(b.begin(), b.end());
}

}  // namespace

TEST_CASE("key image matches the frozen oracle vector") {
    auto v = load_vectors(RINGVOTE_VECTORS_FILE);
    Scalar secret = Scalar::decode(from_hex(v.at("image_secret")));
    KeyPair kp = KeyPair::from_secret(secret);
    CHECK(to_hex(kp.public_key.bytes()) == v.at("image_public"));
    CHECK(to_hex(key_image(kp).bytes()) == v.at("image_value"));
}

TEST_CASE("key image is deterministic, per-key, and oracle-consistent") {
    SeededRandom rng(1);
    KeyPair a = KeyPair::generate(rng);
    KeyPair b = KeyPair::generate(rng);
    CHECK(key_image(a) == key_image(a));
    CHECK_FALSE(key_image(a) == key_image(b));
    CHECK(key_image(a) == reference_mul(a.secret, hash_to_point(a.public_key.bytes())));
}

TEST_CASE("sign/verify round trip across sizes and signer indices") {
    SeededRandom rng(2);
    for (size_t n : {1u, 2u, 3u, 5u, 8u}) {
        RingFixture f = make_ring(n, rng);
        for (size_t s = 0; s < n; s++) {
            auto msg = message("ballot bytes");
            RingSignature sig = ring_sign(msg, f.ring, s, f.keys[s], rng);
            CHECK(ring_verify(msg, f.ring, sig));
            CHECK(sig.key_image == key_image(f.keys[s]));
        }
    }
}

TEST_CASE("verification fails on any perturbation") {
    SeededRandom rng(3);
    RingFixture f = make_ring(4, rng);
    auto msg = message("the message");
    RingSignature sig = ring_sign(msg, f.ring, 2, f.keys[2], rng);
    REQUIRE(ring_verify(msg, f.ring, sig));

    SUBCASE("flipped message byte") {
        Bytes bad = msg;
        bad[0] ^= 0x01;
        CHECK_FALSE(ring_verify(bad, f.ring, sig));
    }
    SUBCASE("c_0 incremented") {
        RingSignature bad = sig;
        bad.c[0] = bad.c[0] + Scalar::from_u64(1);
        CHECK_FALSE(ring_verify(msg, f.ring, bad));
    }
    SUBCASE("r perturbed") {
        RingSignature bad = sig;
        bad.r[3] = bad.r[3] + Scalar::from_u64(1);
        CHECK_FALSE(ring_verify(msg, f.ring, bad));
    }
    SUBCASE("key image replaced") {
        RingSignature bad = sig;
        bad.key_image = bad.key_image + GroupPoint::base();
        CHECK_FALSE(ring_verify(msg, f.ring, bad));
    }
}

TEST_CASE("same key in two rings and messages keeps one key image") {
    SeededRandom rng(4);
    KeyPair voter = KeyPair::generate(rng);
    RingFixture a = make_ring(3, rng);
    RingFixture b = make_ring(5, rng);
    a.ring.members[1] = voter.public_key;
    b.ring.members[4] = voter.public_key;
    auto m1 = message("first");
    auto m2 = message("second");
    RingSignature s1 = ring_sign(m1, a.ring, 1, voter, rng);
    RingSignature s2 = ring_sign(m2, b.ring, 4, voter, rng);
    CHECK(ring_verify(m1, a.ring, s1));
    CHECK(ring_verify(m2, b.ring, s2));
    CHECK(s1.key_image == s2.key_image);  // linkability: exact point equality
}

TEST_CASE("signer anonymity at the wire level: equal sizes for any signer") {
    SeededRandom rng(5);
    RingFixture f = make_ring(6, rng);
    auto msg = message("size check");
    size_t expected = 32 + 2 + 2 * 32 * 6;
    for (size_t s = 0; s < 6; s++) {
        RingSignature sig = ring_sign(msg, f.ring, s, f.keys[s], rng);
        CHECK(sig.encode().size() == expected);
        CHECK(ring_verify(msg, f.ring, sig));
    }
}

TEST_CASE("ring order is part of the challenge") {
    SeededRandom rng(6);
    RingFixture f = make_ring(3, rng);
    auto msg = message("order matters");
    RingSignature sig = ring_sign(msg, f.ring, 0, f.keys[0], rng);

    Ring permuted = Ring::of({f.ring.members[1], f.ring.members[0], f.ring.members[2]});
    RingSignature permuted_sig = sig;
    std::swap(permuted_sig.c[0], permuted_sig.c[1]);
    std::swap(permuted_sig.r[0], permuted_sig.r[1]);
    CHECK_FALSE(ring_verify(msg, permuted, permuted_sig));
}

TEST_CASE("argument validation") {
    SeededRandom rng(7);
    RingFixture f = make_ring(3, rng);
    auto msg = message("args");

    CHECK_THROWS_AS(ring_sign(msg, f.ring, 3, f.keys[0], rng), std::invalid_argument);
    CHECK_THROWS_AS(ring_sign(msg, f.ring, 0, f.keys[1], rng), std::invalid_argument);
    CHECK_THROWS_AS(Ring::of({}), std::invalid_argument);
    CHECK_THROWS_AS(Ring::of({f.ring.members[0], f.ring.members[0]}), std::invalid_argument);

    // length mismatch is an error, not false
    RingSignature sig = ring_sign(msg, f.ring, 0, f.keys[0], rng);
    Ring bigger = Ring::of({f.ring.members[0], f.ring.members[1], f.ring.members[2],
                            KeyPair::generate(rng).public_key});
    CHECK_THROWS_AS(ring_verify(msg, bigger, sig), std::invalid_argument);
}

TEST_CASE("wire format round trip") {
    SeededRandom rng(8);
    RingFixture f = make_ring(5, rng);
    auto msg = message("wire");
    RingSignature sig = ring_sign(msg, f.ring, 2, f.keys[2], rng);

    Bytes wire = sig.encode();
    CHECK(wire.size() == 32 + 2 + 2 * 32 * 5);
    RingSignature back = RingSignature::decode(wire);
    CHECK(back == sig);
    CHECK(ring_verify(msg, f.ring, back));

    Bytes truncated(wire.begin(), wire.end() - 1);
    CHECK_THROWS_AS(RingSignature::decode(truncated), DecodeError);
    Bytes trailing = wire;
    trailing.push_back(0);
    CHECK_THROWS_AS(RingSignature::decode(trailing), DecodeError);
}

TEST_CASE("seeded signing replays byte-identically") {
    SeededRandom keys_rng(9);
    RingFixture f = make_ring(4, keys_rng);
    auto msg = message("replay");
    SeededRandom r1(10), r2(10);
    RingSignature s1 = ring_sign(msg, f.ring, 1, f.keys[1], r1);
    RingSignature s2 = ring_sign(msg, f.ring, 1, f.keys[1], r2);
    CHECK(s1.encode() == s2.encode());
}
