#pragma once

#include <optional>
#include <span>

#include "ringvote/group.hpp"
#include "ringvote/ring_signature.hpp"
#include "ringvote/rng.hpp"

namespace ringvote {

// Stealth pair hiding the chosen candidate until the escrow secret opens.
struct Ballot {
    GroupPoint stealth_address;  // SA
    GroupPoint nonce_point;      // R, never the identity

    // Wire format: SA || R (64 bytes).
    std::array<uint8_t, 64> encode() const;
    static Ballot decode(std::span<const uint8_t> in);

    bool operator==(const Ballot& o) const = default;
};

struct SignedBallot {
    Ballot ballot;
    Ring ring;
    RingSignature signature;  // over Ballot::encode()

    // Self-contained wire format: ballot || u16 member-count || members ||
    // signature. Used for pointer-mode payloads and off-ledger storage.
    Bytes encode() const;
    static SignedBallot decode(std::span<const uint8_t> in);

    bool operator==(const SignedBallot& o) const = default;
};

// Draws r in [1, l) and returns SA = H_s(encode(r*A))*G + B, R = r*G, where
// A is the election (escrow) public key and B the candidate point.
Ballot make_ballot(const GroupPoint& election_pubkey,
                   const GroupPoint& candidate_point, RandomSource& rng);

// Tally-side match: the unique j with SA - H_s(encode(a*R))*G = B_j, or
// nothing. No match is a value, not an error.
std::optional<size_t> match_ballot(const Ballot& ballot,
                                   const Scalar& election_secret,
                                   std::span<const GroupPoint> candidates);

// Signs the canonical ballot serialization with a one-time ring signature.
SignedBallot cast(const Ballot& ballot, const Ring& ring, size_t signer_index,
                  const KeyPair& keypair, RandomSource& rng);

}  // namespace ringvote
