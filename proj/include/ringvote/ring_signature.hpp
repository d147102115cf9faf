#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ringvote/bytes.hpp"
#include "ringvote/group.hpp"
#include "ringvote/rng.hpp"

namespace ringvote {

// Ordered public-key set. Order is part of a signature's identity: it fixes
// the challenge hash input.
struct Ring {
    std::vector<GroupPoint> members;

    // Validates: nonempty, pairwise-distinct members. Duplicate keys would
    // let one voter occupy two slots of anonymity mass.
    static Ring of(std::vector<GroupPoint> members);

    size_t size() const { return members.size(); }
    bool operator==(const Ring& o) const = default;
};

// One-time ring signature: key image I plus per-member (c_i, r_i).
// Signing twice with one key yields the same I regardless of message or ring.
struct RingSignature {
    GroupPoint key_image;
    std::vector<Scalar> c;
    std::vector<Scalar> r;

    // Wire format: I || u16 n || c_0..c_{n-1} || r_0..r_{n-1}.
    Bytes encode() const;
    static RingSignature decode(std::span<const uint8_t> in);
    void encode_to(ByteWriter& w) const;
    static RingSignature decode_from(ByteReader& rd);

    bool operator==(const RingSignature& o) const = default;
};

// I = x * H_p(encode(P)). Deterministic per key; independent of message
// and ring.
GroupPoint key_image(const KeyPair& keypair);

// Signs message as the anonymous member `signer_index` of `ring`.
// Throws std::invalid_argument if the index is out of range or the keypair
// does not match the ring slot.
RingSignature ring_sign(std::span<const uint8_t> message, const Ring& ring,
                        size_t signer_index, const KeyPair& keypair,
                        RandomSource& rng);

// Pure verification of the challenge-sum equation. Double-vote detection is
// the tally engine's job. Throws std::invalid_argument when the signature
// vector lengths do not match the ring (distinct from returning false).
bool ring_verify(std::span<const uint8_t> message, const Ring& ring,
                 const RingSignature& sig);

}  // namespace ringvote
