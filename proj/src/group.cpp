#include "ringvote/group.hpp"

#include <sodium.h>

#include <cstring>
#include <mutex>

#include "ringvote/errors.hpp"

namespace ringvote {

namespace {

// l, little-endian
constexpr std::array<uint8_t, 32> kOrder = {
    0xed, 0xd3, 0xf5, 0x5c, 0x1a, 0x63, 0x12, 0x58, 0xd6, 0x9c, 0xf7,
    0xa2, 0xde, 0xf9, 0xde, 0x14, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00,
    0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x10};

// field prime p = 2^255 - 19, little-endian
constexpr std::array<uint8_t, 32> kFieldPrime = {
    0xed, 0xff, 0xff, 0xff, 0xff, 0xff, 0xff, 0xff, 0xff, 0xff, 0xff,
    0xff, 0xff, 0xff, 0xff, 0xff, 0xff, 0xff, 0xff, 0xff, 0xff, 0xff,
    0xff, 0xff, 0xff, 0xff, 0xff, 0xff, 0xff, 0xff, 0xff, 0x7f};

// little-endian a < b
bool lt_le(std::span<const uint8_t, 32> a, std::span<const uint8_t, 32> b) {
    for (int i = 31; i >= 0; i--) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

void ensure_sodium() {
    static std::once_flag once;
    std::call_once(once, [] {
        if (sodium_init() < 0) throw Error("libsodium initialization failed");
    });
}

}  // namespace

Scalar Scalar::from_u64(uint64_t v) {
    Scalar s;
    for (int i = 0; i < 8; i++) s.bytes_[i] = static_cast<uint8_t>(v >> (8 * i));
    return s;
}

Scalar Scalar::reduce_wide(std::span<const uint8_t, 64> wide) {
    ensure_sodium();
    Scalar s;
    crypto_core_ed25519_scalar_reduce(s.bytes_.data(), wide.data());
    return s;
}

Scalar Scalar::decode(std::span<const uint8_t> in) {
    if (in.size() != 32) throw DecodeError("scalar encoding must be 32 bytes");
    std::array<uint8_t, 32> b;
    std::copy(in.begin(), in.end(), b.begin());
    if (!lt_le(b, kOrder)) throw DecodeError("non-canonical scalar (value >= group order)");
    Scalar s;
    s.bytes_ = b;
    return s;
}

Scalar Scalar::random(RandomSource& rng) {
    std::array<uint8_t, 64> wide;
    rng.fill(wide);
    return reduce_wide(wide);
}

Scalar Scalar::random_nonzero(RandomSource& rng) {
    for (;;) {
        Scalar s = random(rng);
        if (!s.is_zero()) return s;
    }
}

Scalar Scalar::operator+(const Scalar& o) const {
    ensure_sodium();
    Scalar r;
    crypto_core_ed25519_scalar_add(r.bytes_.data(), bytes_.data(), o.bytes_.data());
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
    ensure_sodium();
    Scalar r;
    crypto_core_ed25519_scalar_sub(r.bytes_.data(), bytes_.data(), o.bytes_.data());
    return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
    ensure_sodium();
    Scalar r;
    crypto_core_ed25519_scalar_mul(r.bytes_.data(), bytes_.data(), o.bytes_.data());
    return r;
}

Scalar Scalar::negated() const {
    ensure_sodium();
    Scalar r;
    crypto_core_ed25519_scalar_negate(r.bytes_.data(), bytes_.data());
    return r;
}

bool Scalar::is_zero() const {
    uint8_t acc = 0;
    for (uint8_t b : bytes_) acc |= b;
    return acc == 0;
}

const std::array<uint8_t, 32>& GroupPoint::identity_bytes() {
    static const std::array<uint8_t, 32> id = {1};  // (0, 1)
    return id;
}

GroupPoint GroupPoint::identity() { return GroupPoint(identity_bytes()); }

GroupPoint GroupPoint::base() { return mul_base(Scalar::from_u64(1)); }

GroupPoint GroupPoint::decode(std::span<const uint8_t> in) {
    ensure_sodium();
    if (in.size() != 32) throw DecodeError("point encoding must be 32 bytes");
    std::array<uint8_t, 32> b;
    std::copy(in.begin(), in.end(), b.begin());
    if (b == identity_bytes()) return GroupPoint(b);
    if (crypto_core_ed25519_is_valid_point(b.data()) != 1)
        throw DecodeError("point not on curve or outside the prime-order subgroup");
    return GroupPoint(b);
}

GroupPoint GroupPoint::mul_base(const Scalar& s) {
    ensure_sodium();
    if (s.is_zero()) return identity();
    GroupPoint p(identity_bytes());
    if (crypto_scalarmult_ed25519_base_noclamp(p.bytes_.data(), s.bytes().data()) != 0)
        throw Error("scalar-mult base failed");
    return p;
}

GroupPoint GroupPoint::operator+(const GroupPoint& o) const {
    ensure_sodium();
    if (is_identity()) return o;
    if (o.is_identity()) return *this;
    GroupPoint r(identity_bytes());
    if (crypto_core_ed25519_add(r.bytes_.data(), bytes_.data(), o.bytes_.data()) != 0)
        throw Error("point addition failed");
    return r;
}

GroupPoint GroupPoint::operator-(const GroupPoint& o) const {
    ensure_sodium();
    if (o.is_identity()) return *this;
    GroupPoint r(identity_bytes());
    if (crypto_core_ed25519_sub(r.bytes_.data(), bytes_.data(), o.bytes_.data()) != 0)
        throw Error("point subtraction failed");
    return r;
}

GroupPoint operator*(const Scalar& s, const GroupPoint& p) {
    ensure_sodium();
    if (s.is_zero() || p.is_identity()) return GroupPoint::identity();
    GroupPoint r(GroupPoint::identity_bytes());
    // p is a non-identity subgroup point and s is in [1, l), so the result
    // can never be the identity and libsodium cannot reject it.
    if (crypto_scalarmult_ed25519_noclamp(r.bytes_.data(), s.bytes().data(),
                                          p.bytes().data()) != 0)
        throw Error("scalar-mult failed");
    return r;
}

bool GroupPoint::is_identity() const { return bytes_ == identity_bytes(); }

KeyPair KeyPair::from_secret(const Scalar& secret) {
    if (secret.is_zero()) throw ConfigError("secret key must be nonzero");
    return KeyPair{secret, GroupPoint::mul_base(secret)};
}

KeyPair KeyPair::generate(RandomSource& rng) {
    return from_secret(Scalar::random_nonzero(rng));
}

Scalar hash_to_scalar(std::span<const uint8_t> data) {
    ByteWriter w;
    w.raw(as_bytes(kHashScalarTag));
    w.raw(data);
    auto h = sha512(w.bytes());
    return Scalar::reduce_wide(h);
}

GroupPoint hash_to_point(std::span<const uint8_t> data) {
    ensure_sodium();
    for (uint32_t counter = 0;; counter++) {
        ByteWriter w;
        w.raw(as_bytes(kHashPointTag));
        w.raw(data);
        w.u32(counter);
        auto h = sha512(w.bytes());
        std::array<uint8_t, 32> cand;
        std::memcpy(cand.data(), h.data(), 32);

        // Candidate must be a canonical curve-point encoding: y < p with the
        // sign bit masked off. libsodium's add() does not enforce this.
        std::array<uint8_t, 32> y = cand;
        y[31] &= 0x7f;
        if (!lt_le(y, kFieldPrime)) continue;

        // Clear the cofactor with three doublings; add() rejects encodings
        // that are not on the curve.
        std::array<uint8_t, 32> p2, p4, p8;
        if (crypto_core_ed25519_add(p2.data(), cand.data(), cand.data()) != 0) continue;
        if (crypto_core_ed25519_add(p4.data(), p2.data(), p2.data()) != 0) continue;
        if (crypto_core_ed25519_add(p8.data(), p4.data(), p4.data()) != 0) continue;
        if (crypto_core_ed25519_is_valid_point(p8.data()) != 1) continue;  // identity
        return GroupPoint::decode(p8);
    }
}

GroupPoint encode_candidate(std::string_view name) {
    if (name.empty()) throw ConfigError("candidate name must be nonempty");
    ByteWriter w;
    w.raw(as_bytes(kCandidateTag));
    w.raw(as_bytes(name));
    return hash_to_point(w.bytes());
}

}  // namespace ringvote
