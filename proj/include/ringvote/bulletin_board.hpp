#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ringvote/bytes.hpp"
#include "ringvote/escrow.hpp"
#include "ringvote/group.hpp"
#include "ringvote/stealth.hpp"

namespace ringvote {

enum class Phase : uint8_t { Setup = 0, Voting = 1, Tally = 2 };

enum class EntryType : uint8_t {
    ElectionConfig = 0,
    RosterAdd = 1,
    EscrowCommit = 2,
    EscrowProduct = 3,
    Ballot = 4,
    EscrowReveal = 5,
    PhaseTransition = 6,
};

enum class PayloadMode : uint8_t { Inline = 0, TxPointer = 1, CasPointer = 2 };

std::string_view phase_name(Phase p);
std::string_view entry_type_name(EntryType t);
std::string_view payload_mode_name(PayloadMode m);
PayloadMode parse_payload_mode(std::string_view name);  // throws ConfigError

struct ElectionConfig {
    std::string election_id;
    std::vector<std::string> candidates;
    std::vector<std::string> manager_ids;
    std::vector<GroupPoint> roster;
    uint16_t min_ring_size = 2;
    PayloadMode payload_mode = PayloadMode::Inline;
    uint64_t deposit_amount = 1;
    // Entry-index bounds; 0 disables the bound.
    uint64_t voting_deadline = 0;
    uint64_t reveal_deadline = 0;

    void validate() const;  // throws ConfigError

    bool operator==(const ElectionConfig& o) const = default;
};

// Typed, hash-chained record. entry_hash covers index, prev_hash, type,
// payload and submitter; the chain validates from genesis.
struct LedgerEntry {
    uint64_t index = 0;
    Digest prev_hash{};
    EntryType type = EntryType::ElectionConfig;
    Bytes payload;
    std::string submitter;
    Digest entry_hash{};

    static Digest compute_hash(uint64_t index, const Digest& prev, EntryType type,
                               std::span<const uint8_t> payload,
                               std::string_view submitter);
};

// Local stand-in for IPFS: storage keyed by the hash of the content.
class PayloadStore {
public:
    Digest put(Bytes data);
    // Re-hashes on retrieval; throws ChainError on a missing digest or a
    // corrupted blob.
    const Bytes& get(const Digest& digest) const;
    bool contains(const Digest& digest) const;
    const std::map<std::string, Bytes>& blobs() const { return blobs_; }

private:
    std::map<std::string, Bytes> blobs_;  // hex digest -> content
};

// Side table modeling ballots stored in plain transactions rather than
// contract storage; the ledger holds only the transaction id.
class TransactionTable {
public:
    uint64_t add(Bytes data);
    const Bytes& get(uint64_t id) const;  // throws ChainError
    size_t size() const { return rows_.size(); }
    const std::vector<Bytes>& rows() const { return rows_; }

private:
    std::vector<Bytes> rows_;
};

struct BallotSizeRow {
    PayloadMode mode;
    size_t ring_size = 0;
    size_t count = 0;
    double mean_onledger_bytes = 0;
    double mean_offledger_bytes = 0;
};

// Simulated public bulletin board: the append-only ledger plus its two
// off-ledger payload backends and the replayed election state. Replaying
// the same entry stream on any node reconstructs an identical Board.
class Board {
public:
    explicit Board(const ElectionConfig& config);

    static Board open(const std::filesystem::path& dir);
    void save(const std::filesystem::path& dir) const;

    // Appends a typed entry after phase and framing validation. This is the
    // only way entries enter the chain; prior entries are never mutated.
    const LedgerEntry& append(EntryType type, Bytes payload, std::string_view submitter);

    // Typed wrappers that build canonical payloads.
    const LedgerEntry& add_roster_key(const GroupPoint& key, std::string_view submitter);
    const LedgerEntry& add_escrow_commitment(const ManagerCommitment& commitment,
                                             std::string_view submitter);
    const LedgerEntry& add_escrow_product(std::string_view manager_id,
                                          const GroupPoint& product,
                                          std::string_view submitter);
    const LedgerEntry& add_escrow_reveal(std::string_view manager_id, const Scalar& secret,
                                         std::string_view submitter);
    // Stores the ballot per the election's payload mode. Deliberately checks
    // nothing cryptographic: wrong ballots are detected during tally.
    const LedgerEntry& submit_ballot(const SignedBallot& ballot, std::string_view submitter);
    // Raw ballot payload path (adversarial submissions). Framing is still
    // validated per payload mode.
    const LedgerEntry& submit_ballot_payload(Bytes payload, std::string_view submitter);
    const LedgerEntry& advance_phase(std::string_view authority = "admin");

    Phase phase() const { return phase_; }
    const std::vector<LedgerEntry>& entries() const { return entries_; }
    // Reconstructed election configuration (header plus roster so far).
    ElectionConfig config() const;
    const std::vector<GroupPoint>& roster() const { return roster_; }
    const EscrowState& escrow() const { return escrow_; }
    const GroupPoint& election_pubkey() const { return escrow_.election_pubkey(); }

    PayloadStore& store() { return store_; }
    const PayloadStore& store() const { return store_; }
    TransactionTable& transactions() { return transactions_; }
    const TransactionTable& transactions() const { return transactions_; }

    // Resolves a ballot entry to a self-contained SignedBallot, following
    // pointer payloads. Throws DecodeError / ChainError when it cannot.
    SignedBallot decode_ballot_entry(const LedgerEntry& entry) const;
    std::vector<uint64_t> ballot_entry_indices() const;

    // Full-chain hash validation; throws ChainError naming the first bad index.
    void validate_chain() const;
    // Digest over the interpreted state (config, phase, roster, escrow,
    // ballots): the replica-agreement check.
    Digest state_digest() const;

    std::vector<BallotSizeRow> bytes_per_ballot() const;
    DepositSummary deposit_summary() const;

    std::optional<size_t> roster_index(const GroupPoint& key) const;

private:
    Board() = default;

    void apply(const LedgerEntry& entry);
    void check_admissible(EntryType type, uint64_t index) const;
    void validate_ballot_framing(std::span<const uint8_t> payload) const;
    Bytes encode_inline_ballot(const SignedBallot& ballot) const;
    SignedBallot decode_inline_ballot(std::span<const uint8_t> payload) const;

    std::vector<LedgerEntry> entries_;
    Phase phase_ = Phase::Setup;

    // Interpreted state, rebuilt by replay.
    std::string election_id_;
    std::vector<std::string> candidates_;
    std::vector<std::string> manager_ids_;
    uint16_t declared_roster_size_ = 0;
    uint16_t min_ring_size_ = 0;
    PayloadMode payload_mode_ = PayloadMode::Inline;
    uint64_t deposit_amount_ = 0;
    uint64_t voting_deadline_ = 0;
    uint64_t reveal_deadline_ = 0;

    std::vector<GroupPoint> roster_;
    EscrowState escrow_;
    std::vector<uint64_t> ballot_entries_;

    PayloadStore store_;
    TransactionTable transactions_;
};

}  // namespace ringvote
