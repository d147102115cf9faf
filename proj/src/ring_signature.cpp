#include "ringvote/ring_signature.hpp"

#include <stdexcept>
#include <unordered_set>

#include "ringvote/errors.hpp"

namespace ringvote {

namespace {

// Challenge input: message length-prefixed, then all L then all R in ring
// order. Frozen; sign and verify depend on it byte for byte.
Scalar challenge(std::span<const uint8_t> message,
                 std::span<const GroupPoint> l_points,
                 std::span<const GroupPoint> r_points) {
    ByteWriter w;
    w.u64(message.size());
    w.raw(message);
    for (const auto& p : l_points) w.raw(p.bytes());
    for (const auto& p : r_points) w.raw(p.bytes());
    return hash_to_scalar(w.bytes());
}

std::string hex_key(const GroupPoint& p) { return to_hex(p.bytes()); }

}  // namespace

Ring Ring::of(std::vector<GroupPoint> members) {
    if (members.empty()) throw std::invalid_argument("ring must be nonempty");
    std::unordered_set<std::string> seen;
    for (const auto& m : members) {
        if (!seen.insert(hex_key(m)).second)
            throw std::invalid_argument("ring contains duplicate public keys");
    }
    return Ring{std::move(members)};
}

Bytes RingSignature::encode() const {
    ByteWriter w;
    encode_to(w);
    return w.take();
}

void RingSignature::encode_to(ByteWriter& w) const {
    if (c.size() != r.size()) throw DecodeError("signature vector lengths differ");
    if (c.size() > 0xffff) throw DecodeError("ring too large for wire format");
    w.raw(key_image.bytes());
    w.u16(static_cast<uint16_t>(c.size()));
    for (const auto& s : c) w.raw(s.bytes());
    for (const auto& s : r) w.raw(s.bytes());
}

RingSignature RingSignature::decode(std::span<const uint8_t> in) {
    ByteReader rd(in);
    RingSignature sig = decode_from(rd);
    rd.expect_end();
    return sig;
}

RingSignature RingSignature::decode_from(ByteReader& rd) {
    RingSignature sig;
    sig.key_image = GroupPoint::decode(rd.raw(32));
    if (sig.key_image.is_identity()) throw DecodeError("key image must not be the identity");
    size_t n = rd.u16();
    if (n == 0) throw DecodeError("signature over empty ring");
    sig.c.reserve(n);
    sig.r.reserve(n);
    for (size_t i = 0; i < n; i++) sig.c.push_back(Scalar::decode(rd.raw(32)));
    for (size_t i = 0; i < n; i++) sig.r.push_back(Scalar::decode(rd.raw(32)));
    return sig;
}

GroupPoint key_image(const KeyPair& keypair) {
    return keypair.secret * hash_to_point(keypair.public_key.bytes());
}

RingSignature ring_sign(std::span<const uint8_t> message, const Ring& ring,
                        size_t signer_index, const KeyPair& keypair,
                        RandomSource& rng) {
    const size_t n = ring.size();
    if (signer_index >= n) throw std::invalid_argument("signer index out of range");
    if (!(ring.members[signer_index] == keypair.public_key))
        throw std::invalid_argument("keypair does not match ring slot");

    const GroupPoint image = key_image(keypair);

    RingSignature sig;
    sig.key_image = image;
    sig.c.resize(n);
    sig.r.resize(n);

    std::vector<GroupPoint> l_points(n), r_points(n);
    Scalar q_signer;
    Scalar c_others;  // sum of c_i over i != signer
    for (size_t i = 0; i < n; i++) {
        const Scalar q = Scalar::random(rng);
        const GroupPoint hp = hash_to_point(ring.members[i].bytes());
        if (i == signer_index) {
            q_signer = q;
            l_points[i] = GroupPoint::mul_base(q);
            r_points[i] = q * hp;
        } else {
            const Scalar w = Scalar::random(rng);
            sig.c[i] = w;
            sig.r[i] = q;
            l_points[i] = GroupPoint::mul_base(q) + w * ring.members[i];
            r_points[i] = q * hp + w * image;
            c_others = c_others + w;
        }
    }

    const Scalar c = challenge(message, l_points, r_points);
    sig.c[signer_index] = c - c_others;
    sig.r[signer_index] = q_signer - sig.c[signer_index] * keypair.secret;
    return sig;
}

bool ring_verify(std::span<const uint8_t> message, const Ring& ring,
                 const RingSignature& sig) {
    const size_t n = ring.size();
    if (sig.c.size() != n || sig.r.size() != n)
        throw std::invalid_argument("signature vector lengths do not match ring");

    std::vector<GroupPoint> l_points(n), r_points(n);
    Scalar c_sum;
    for (size_t i = 0; i < n; i++) {
        const GroupPoint hp = hash_to_point(ring.members[i].bytes());
        l_points[i] = GroupPoint::mul_base(sig.r[i]) + sig.c[i] * ring.members[i];
        r_points[i] = sig.r[i] * hp + sig.c[i] * sig.key_image;
        c_sum = c_sum + sig.c[i];
    }
    return c_sum == challenge(message, l_points, r_points);
}

}  // namespace ringvote
