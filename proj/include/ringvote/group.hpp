#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include "ringvote/bytes.hpp"
#include "ringvote/rng.hpp"

namespace ringvote {

// Prime-order group: the order-l subgroup of edwards25519,
// l = 2^252 + 27742317777372353535851937790883648493.
//
// Domain tags are frozen in docs/test-vectors.txt; changing any of them
// changes every derived value on the wire.
inline constexpr std::string_view kHashScalarTag = "ringvote.hs.v1";
inline constexpr std::string_view kHashPointTag = "ringvote.hp.v1";
inline constexpr std::string_view kCandidateTag = "ringvote.candidate.v1";

// Field element mod l. Always canonical: 32-byte little-endian, value < l.
class Scalar {
public:
    Scalar() : bytes_{} {}  // zero

    static Scalar from_u64(uint64_t v);
    // Reduces a 512-bit little-endian integer mod l.
    static Scalar reduce_wide(std::span<const uint8_t, 64> wide);
    // Throws DecodeError unless the encoding is canonical (value < l).
    static Scalar decode(std::span<const uint8_t> in);
    // Uniform over [0, l).
    static Scalar random(RandomSource& rng);
    // Uniform over [1, l).
    static Scalar random_nonzero(RandomSource& rng);

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar negated() const;

    bool operator==(const Scalar& o) const = default;
    bool is_zero() const;

    const std::array<uint8_t, 32>& bytes() const { return bytes_; }

private:
    std::array<uint8_t, 32> bytes_;
};

// Element of the prime-order subgroup, identity included. Stored as the
// canonical 32-byte compressed Edwards encoding.
class GroupPoint {
public:
    GroupPoint() : bytes_(identity_bytes()) {}

    static GroupPoint identity();
    static GroupPoint base();  // G
    // Throws DecodeError unless bytes are the identity or a canonical,
    // on-curve, prime-order-subgroup point (cofactor-checked).
    static GroupPoint decode(std::span<const uint8_t> in);
    static GroupPoint mul_base(const Scalar& s);  // s*G

    GroupPoint operator+(const GroupPoint& o) const;
    GroupPoint operator-(const GroupPoint& o) const;
    friend GroupPoint operator*(const Scalar& s, const GroupPoint& p);

    bool operator==(const GroupPoint& o) const = default;
    bool is_identity() const;

    const std::array<uint8_t, 32>& bytes() const { return bytes_; }

private:
    static const std::array<uint8_t, 32>& identity_bytes();
    explicit GroupPoint(const std::array<uint8_t, 32>& b) : bytes_(b) {}

    std::array<uint8_t, 32> bytes_;
};

struct KeyPair {
    Scalar secret;
    GroupPoint public_key;

    static KeyPair from_secret(const Scalar& secret);  // throws on zero secret
    static KeyPair generate(RandomSource& rng);
};

// H_s: SHA-512(tag || data) reduced mod l.
Scalar hash_to_scalar(std::span<const uint8_t> data);

// H_p: try-and-increment. Hashes (tag || data || counter) to a candidate
// encoding, retries until a canonical curve point decodes, clears the
// cofactor by three doublings and rejects the identity. The result is a
// non-identity subgroup point with no known discrete log relative to G.
GroupPoint hash_to_point(std::span<const uint8_t> data);

// B_j = hash_to_point(candidate tag || name). Throws ConfigError on an
// empty name.
GroupPoint encode_candidate(std::string_view name);

}  // namespace ringvote
