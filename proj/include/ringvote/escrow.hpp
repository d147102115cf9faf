#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ringvote/bytes.hpp"
#include "ringvote/group.hpp"
#include "ringvote/rng.hpp"

namespace ringvote {

// Schnorr proof of knowledge of the discrete log of the share point,
// bound to a context so it cannot be replayed across elections or managers.
struct SchnorrProof {
    GroupPoint commitment;  // t*G
    Scalar challenge;
    Scalar response;  // t + challenge*secret

    bool operator==(const SchnorrProof& o) const = default;
};

struct ManagerCommitment {
    std::string manager_id;
    GroupPoint share_point;  // r_k*G
    SchnorrProof proof;

    Bytes encode() const;
    static ManagerCommitment decode(std::span<const uint8_t> in);

    bool operator==(const ManagerCommitment& o) const = default;
};

// Commit step: share_point = secret*G plus a proof bound to
// (context || manager_id). Throws ConfigError on a zero secret.
ManagerCommitment commit_share(const Scalar& manager_secret,
                               std::string_view manager_id,
                               std::span<const uint8_t> context,
                               RandomSource& rng);

bool verify_commitment(const ManagerCommitment& commitment,
                       std::span<const uint8_t> context);

// One multiparty Diffie-Hellman step: manager_secret * previous. Chaining
// all managers from G yields the election public key A = (prod r_k)*G.
GroupPoint extend_product(const GroupPoint& previous, const Scalar& manager_secret);

enum class DepositStatus : uint8_t { Held = 0, Refunded = 1, Forfeited = 2 };

struct DepositSummary {
    uint64_t total = 0;
    uint64_t held = 0;
    uint64_t refunded = 0;
    uint64_t forfeited = 0;
};

// Commit/reveal state machine for the escrow. Single-writer transitions;
// the bulletin board serializes them. All reads are pure.
class EscrowState {
public:
    // Commit phase. Verifies the proof, enforces unique manager ids and
    // share points, charges the deposit.
    void add_commitment(ManagerCommitment commitment,
                        std::span<const uint8_t> context, uint64_t deposit);

    // Records the partial product published by one manager. Products must
    // arrive in commitment order, one per manager.
    void record_product(std::string_view manager_id, const GroupPoint& product);

    // Ends the commit phase. Requires at least one commitment and a
    // published product for every committed manager.
    void close_commitments();

    // Reveal phase. Accepts iff secret*G equals the committed share point;
    // a mismatch leaves the deposit forfeit. Throws EscrowError on mismatch,
    // duplicate reveal, unknown manager, or when commits are still open.
    void reveal(std::string_view manager_id, const Scalar& secret);

    // a = prod r_k mod l. Requires every manager to have revealed; a single
    // withheld share makes the secret unrecoverable by design. Verifies the
    // revealed chain against the published products and a*G against the
    // election public key before returning.
    Scalar combine_secret() const;

    // Head of the published partial-product chain.
    const GroupPoint& election_pubkey() const;

    bool commitments_closed() const { return closed_; }
    const std::vector<ManagerCommitment>& commitments() const { return commitments_; }
    const std::vector<GroupPoint>& running_products() const { return running_products_; }
    const std::map<std::string, Scalar>& reveals() const { return reveals_; }
    std::vector<std::string> missing_reveals() const;

    // `final_accounting` treats unrevealed deposits as forfeited (tally
    // deadline passed) rather than still held.
    DepositSummary deposit_summary(bool final_accounting) const;

    // Canonical serialization; before any reveal it contains only points,
    // proofs and deposit bookkeeping, never secret-derived scalars.
    Bytes serialize() const;

private:
    const ManagerCommitment* find(std::string_view manager_id) const;

    std::vector<ManagerCommitment> commitments_;
    std::vector<GroupPoint> running_products_;
    std::map<std::string, Scalar> reveals_;
    std::map<std::string, uint64_t> deposits_;
    bool closed_ = false;
};

}  // namespace ringvote
