#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ringvote/bulletin_board.hpp"
#include "ringvote/bytes.hpp"
#include "ringvote/group.hpp"

namespace ringvote {

enum class RejectReason : uint8_t {
    Undecodable = 0,
    RingTooSmall = 1,
    RingNotInRoster = 2,
    BadSignature = 3,
    DuplicateKeyImage = 4,
    NoCandidateMatch = 5,
};

std::string_view reject_reason_name(RejectReason r);

struct AcceptedBallot {
    uint64_t entry_index = 0;
    std::string candidate;
    GroupPoint key_image;

    bool operator==(const AcceptedBallot& o) const = default;
};

struct RejectedBallot {
    uint64_t entry_index = 0;
    RejectReason reason = RejectReason::Undecodable;

    bool operator==(const RejectedBallot& o) const = default;
};

// Full audit trail: every ballot entry appears exactly once in accepted or
// rejected, and the counts sum to the accepted list.
struct TallyReport {
    std::string election_id;
    Digest escrow_secret_fingerprint{};
    std::vector<std::pair<std::string, uint64_t>> counts;  // config candidate order
    std::vector<AcceptedBallot> accepted;                  // ledger order
    std::vector<RejectedBallot> rejected;                  // ledger order

    bool operator==(const TallyReport& o) const = default;
};

struct TallyOptions {
    unsigned workers = 1;
};

// Self-tallying: anyone holding the board and the revealed escrow secret
// computes the result. Ballots are processed in ledger order; one is counted
// iff it decodes, its ring meets the minimum size and lies inside the
// roster, its signature verifies, its key image has not been accepted
// before, and its stealth address matches a candidate. The first failing
// check names the rejection reason. Deterministic for any worker count.
//
// Throws PhaseError before the tally phase, EscrowError when reveals are
// missing or the secret does not match the election public key.
TallyReport tally(const Board& board, const Scalar& escrow_secret,
                  const TallyOptions& options = {});

// Recomputes the tally and compares canonical encodings. Never throws;
// anything that prevents recomputation verifies as false.
bool verify_report(const Board& board, const Scalar& escrow_secret,
                   const TallyReport& report);

// Canonical human-readable report text; decode(encode(r)) == r byte for byte.
std::string encode_report(const TallyReport& report);
TallyReport decode_report(std::string_view text);  // throws DecodeError

}  // namespace ringvote
