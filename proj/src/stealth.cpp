#include "ringvote/stealth.hpp"

#include "ringvote/errors.hpp"

namespace ringvote {

std::array<uint8_t, 64> Ballot::encode() const {
    std::array<uint8_t, 64> out;
    std::copy(stealth_address.bytes().begin(), stealth_address.bytes().end(), out.begin());
    std::copy(nonce_point.bytes().begin(), nonce_point.bytes().end(), out.begin() + 32);
    return out;
}

Ballot Ballot::decode(std::span<const uint8_t> in) {
    if (in.size() != 64) throw DecodeError("ballot encoding must be 64 bytes");
    Ballot b{GroupPoint::decode(in.subspan(0, 32)), GroupPoint::decode(in.subspan(32, 32))};
    if (b.nonce_point.is_identity()) throw DecodeError("ballot nonce point must not be the identity");
    return b;
}

Bytes SignedBallot::encode() const {
    ByteWriter w;
    w.raw(ballot.encode());
    if (ring.size() > 0xffff) throw DecodeError("ring too large for wire format");
    w.u16(static_cast<uint16_t>(ring.size()));
    for (const auto& m : ring.members) w.raw(m.bytes());
    signature.encode_to(w);
    return w.take();
}

SignedBallot SignedBallot::decode(std::span<const uint8_t> in) {
    ByteReader rd(in);
    Ballot ballot = Ballot::decode(rd.raw(64));
    size_t n = rd.u16();
    std::vector<GroupPoint> members;
    members.reserve(n);
    for (size_t i = 0; i < n; i++) members.push_back(GroupPoint::decode(rd.raw(32)));
    Ring ring = Ring::of(std::move(members));
    RingSignature sig = RingSignature::decode_from(rd);
    rd.expect_end();
    if (sig.c.size() != ring.size())
        throw DecodeError("signature vector lengths do not match ring");
    return SignedBallot{ballot, std::move(ring), std::move(sig)};
}

Ballot make_ballot(const GroupPoint& election_pubkey,
                   const GroupPoint& candidate_point, RandomSource& rng) {
    const Scalar r = Scalar::random_nonzero(rng);
    const Scalar shared = hash_to_scalar((r * election_pubkey).bytes());
    return Ballot{GroupPoint::mul_base(shared) + candidate_point,
                  GroupPoint::mul_base(r)};
}

std::optional<size_t> match_ballot(const Ballot& ballot,
                                   const Scalar& election_secret,
                                   std::span<const GroupPoint> candidates) {
    const Scalar shared = hash_to_scalar((election_secret * ballot.nonce_point).bytes());
    const GroupPoint target = ballot.stealth_address - GroupPoint::mul_base(shared);
    for (size_t j = 0; j < candidates.size(); j++) {
        if (candidates[j] == target) return j;
    }
    return std::nullopt;
}

SignedBallot cast(const Ballot& ballot, const Ring& ring, size_t signer_index,
                  const KeyPair& keypair, RandomSource& rng) {
    const auto message = ballot.encode();
    RingSignature sig = ring_sign(message, ring, signer_index, keypair, rng);
    return SignedBallot{ballot, ring, std::move(sig)};
}

}  // namespace ringvote
