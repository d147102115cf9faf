#include "ringvote/bulletin_board.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "ringvote/errors.hpp"

namespace ringvote {

namespace {

constexpr std::string_view kEntryHashTag = "ringvote.entry.v1";
constexpr std::string_view kLedgerHeader = "ringvote-ledger v1";
constexpr std::string_view kTxHeader = "ringvote-txs v1";

Phase next_phase(Phase p) {
    switch (p) {
        case Phase::Setup: return Phase::Voting;
        case Phase::Voting: return Phase::Tally;
        case Phase::Tally: throw PhaseError("already in tally phase");
    }
    throw PhaseError("unknown phase");
}

std::string field_or_dash(const std::string& hex) { return hex.empty() ? "-" : hex; }

std::string dash_to_empty(std::string_view field) {
    return field == "-" ? std::string() : std::string(field);
}

}  // namespace

std::string_view phase_name(Phase p) {
    switch (p) {
        case Phase::Setup: return "setup";
        case Phase::Voting: return "voting";
        case Phase::Tally: return "tally";
    }
    return "?";
}

std::string_view entry_type_name(EntryType t) {
    switch (t) {
        case EntryType::ElectionConfig: return "election-config";
        case EntryType::RosterAdd: return "roster-add";
        case EntryType::EscrowCommit: return "escrow-commit";
        case EntryType::EscrowProduct: return "escrow-product";
        case EntryType::Ballot: return "ballot";
        case EntryType::EscrowReveal: return "escrow-reveal";
        case EntryType::PhaseTransition: return "phase-transition";
    }
    return "?";
}

std::string_view payload_mode_name(PayloadMode m) {
    switch (m) {
        case PayloadMode::Inline: return "inline";
        case PayloadMode::TxPointer: return "tx-pointer";
        case PayloadMode::CasPointer: return "cas-pointer";
    }
    return "?";
}

PayloadMode parse_payload_mode(std::string_view name) {
    if (name == "inline") return PayloadMode::Inline;
    if (name == "tx-pointer") return PayloadMode::TxPointer;
    if (name == "cas-pointer") return PayloadMode::CasPointer;
    throw ConfigError("unknown payload mode: " + std::string(name));
}

void ElectionConfig::validate() const {
    if (election_id.empty()) throw ConfigError("election id must be nonempty");
    if (candidates.empty()) throw ConfigError("candidate list must be nonempty");
    std::unordered_set<std::string> names(candidates.begin(), candidates.end());
    if (names.size() != candidates.size())
        throw ConfigError("candidate names must be pairwise distinct");
    for (const auto& c : candidates) {
        if (c.empty()) throw ConfigError("candidate name must be nonempty");
    }
    if (roster.empty()) throw ConfigError("roster must be nonempty");
    std::unordered_set<std::string> keys;
    for (const auto& k : roster) {
        if (!keys.insert(to_hex(k.bytes())).second)
            throw ConfigError("roster keys must be pairwise distinct");
    }
    if (roster.size() > 0xffff) throw ConfigError("roster too large");
    if (min_ring_size < 1 || min_ring_size > roster.size())
        throw ConfigError("min ring size must be in [1, roster size]");
    if (manager_ids.empty()) throw ConfigError("at least one key manager is required");
    std::unordered_set<std::string> ids;
    for (const auto& id : manager_ids) {
        if (id.empty()) throw ConfigError("manager id must be nonempty");
        if (!ids.insert(id).second) throw ConfigError("manager ids must be pairwise distinct");
    }
}

Digest LedgerEntry::compute_hash(uint64_t index, const Digest& prev, EntryType type,
                                 std::span<const uint8_t> payload,
                                 std::string_view submitter) {
    ByteWriter w;
    w.raw(as_bytes(kEntryHashTag));
    w.u64(index);
    w.raw(prev);
    w.u8(static_cast<uint8_t>(type));
    w.u64(payload.size());
    w.raw(payload);
    w.u64(submitter.size());
    w.raw(as_bytes(submitter));
    return sha256(w.bytes());
}

Digest PayloadStore::put(Bytes data) {
    Digest d = sha256(data);
    blobs_.emplace(to_hex(d), std::move(data));
    return d;
}

const Bytes& PayloadStore::get(const Digest& digest) const {
    auto it = blobs_.find(to_hex(digest));
    if (it == blobs_.end()) throw ChainError("content digest not present in payload store");
    if (sha256(it->second) != digest)
        throw ChainError("payload store blob does not match its digest");
    return it->second;
}

bool PayloadStore::contains(const Digest& digest) const {
    return blobs_.count(to_hex(digest)) != 0;
}

uint64_t TransactionTable::add(Bytes data) {
    rows_.push_back(std::move(data));
    return rows_.size() - 1;
}

const Bytes& TransactionTable::get(uint64_t id) const {
    if (id >= rows_.size()) throw ChainError("unknown transaction id");
    return rows_[id];
}

Board::Board(const ElectionConfig& config) {
    config.validate();
    ByteWriter w;
    w.u8(1);  // payload version
    w.lp_str(config.election_id);
    w.u16(static_cast<uint16_t>(config.candidates.size()));
    for (const auto& c : config.candidates) w.lp_str(c);
    w.u16(static_cast<uint16_t>(config.manager_ids.size()));
    for (const auto& id : config.manager_ids) w.lp_str(id);
    w.u16(static_cast<uint16_t>(config.roster.size()));
    w.u16(config.min_ring_size);
    w.u8(static_cast<uint8_t>(config.payload_mode));
    w.u64(config.deposit_amount);
    w.u64(config.voting_deadline);
    w.u64(config.reveal_deadline);
    append(EntryType::ElectionConfig, w.take(), "genesis");
}

const LedgerEntry& Board::append(EntryType type, Bytes payload, std::string_view submitter) {
    const uint64_t index = entries_.size();
    check_admissible(type, index);
    LedgerEntry entry;
    entry.index = index;
    entry.prev_hash = entries_.empty() ? Digest{} : entries_.back().entry_hash;
    entry.type = type;
    entry.payload = std::move(payload);
    entry.submitter = submitter;
    entry.entry_hash =
        LedgerEntry::compute_hash(index, entry.prev_hash, type, entry.payload, submitter);
    apply(entry);  // validates framing; throws before anything is chained
    entries_.push_back(std::move(entry));
    return entries_.back();
}

void Board::check_admissible(EntryType type, uint64_t index) const {
    if (index == 0) {
        if (type != EntryType::ElectionConfig)
            throw PhaseError("ledger must begin with the election-config entry");
        return;
    }
    switch (type) {
        case EntryType::ElectionConfig:
            throw PhaseError("election-config is only admissible as the genesis entry");
        case EntryType::RosterAdd:
        case EntryType::EscrowCommit:
        case EntryType::EscrowProduct:
            if (phase_ != Phase::Setup)
                throw PhaseError(std::string(entry_type_name(type)) +
                                 " entries are only admissible during setup");
            return;
        case EntryType::Ballot:
            if (phase_ != Phase::Voting)
                throw PhaseError("ballots are only admissible during the voting phase");
            if (voting_deadline_ != 0 && index > voting_deadline_)
                throw PhaseError("voting deadline (entry-index bound) has passed");
            return;
        case EntryType::EscrowReveal:
            if (phase_ != Phase::Tally)
                throw PhaseError("escrow reveals are only admissible during the tally phase");
            if (reveal_deadline_ != 0 && index > reveal_deadline_)
                throw PhaseError("reveal deadline (entry-index bound) has passed");
            return;
        case EntryType::PhaseTransition:
            next_phase(phase_);  // throws once in tally
            return;
    }
    throw PhaseError("unknown entry type");
}

void Board::apply(const LedgerEntry& entry) {
    ByteReader rd(entry.payload);
    switch (entry.type) {
        case EntryType::ElectionConfig: {
            if (rd.u8() != 1) throw DecodeError("unsupported election-config version");
            election_id_ = rd.lp_str();
            size_t n_candidates = rd.u16();
            candidates_.clear();
            for (size_t i = 0; i < n_candidates; i++) candidates_.push_back(rd.lp_str());
            size_t n_managers = rd.u16();
            manager_ids_.clear();
            for (size_t i = 0; i < n_managers; i++) manager_ids_.push_back(rd.lp_str());
            declared_roster_size_ = rd.u16();
            min_ring_size_ = rd.u16();
            uint8_t mode = rd.u8();
            if (mode > 2) throw DecodeError("unknown payload mode in config");
            payload_mode_ = static_cast<PayloadMode>(mode);
            deposit_amount_ = rd.u64();
            voting_deadline_ = rd.u64();
            reveal_deadline_ = rd.u64();
            rd.expect_end();
            if (declared_roster_size_ == 0) throw DecodeError("declared roster size is zero");
            return;
        }
        case EntryType::RosterAdd: {
            GroupPoint key = GroupPoint::decode(rd.raw(32));
            rd.expect_end();
            if (roster_.size() >= declared_roster_size_)
                throw ConfigError("roster already has the declared number of keys");
            if (roster_index(key)) throw ConfigError("roster keys must be pairwise distinct");
            roster_.push_back(key);
            return;
        }
        case EntryType::EscrowCommit: {
            ManagerCommitment c = ManagerCommitment::decode(entry.payload);
            if (std::find(manager_ids_.begin(), manager_ids_.end(), c.manager_id) ==
                manager_ids_.end())
                throw EscrowError("manager not listed in the election config: " + c.manager_id);
            escrow_.add_commitment(std::move(c), as_bytes(election_id_), deposit_amount_);
            return;
        }
        case EntryType::EscrowProduct: {
            std::string id = rd.lp_str();
            GroupPoint product = GroupPoint::decode(rd.raw(32));
            rd.expect_end();
            escrow_.record_product(id, product);
            return;
        }
        case EntryType::Ballot: {
            validate_ballot_framing(entry.payload);
            ballot_entries_.push_back(entry.index);
            return;
        }
        case EntryType::EscrowReveal: {
            std::string id = rd.lp_str();
            Scalar secret = Scalar::decode(rd.raw(32));
            rd.expect_end();
            escrow_.reveal(id, secret);
            return;
        }
        case EntryType::PhaseTransition: {
            Phase target = static_cast<Phase>(rd.u8());
            rd.expect_end();
            if (target != next_phase(phase_))
                throw PhaseError("phase transition must advance to the successor phase");
            if (phase_ == Phase::Setup) {
                if (roster_.size() != declared_roster_size_)
                    throw PhaseError("cannot open voting: roster incomplete");
                if (escrow_.commitments().size() != manager_ids_.size())
                    throw PhaseError("cannot open voting: not all managers committed");
                escrow_.close_commitments();
            }
            phase_ = target;
            return;
        }
    }
    throw DecodeError("unknown entry type");
}

// Inline ballot payload: ballot(64) || u16 mask-length || roster bitmask ||
// ring signature. The set bits name the ring members in ascending roster
// order; the mask keeps the per-member on-ledger cost at exactly the
// signature's 64 bytes.
void Board::validate_ballot_framing(std::span<const uint8_t> payload) const {
    switch (payload_mode_) {
        case PayloadMode::Inline:
            decode_inline_ballot(payload);
            return;
        case PayloadMode::TxPointer: {
            ByteReader rd(payload);
            rd.u64();
            rd.expect_end();
            return;
        }
        case PayloadMode::CasPointer: {
            if (payload.size() != 32)
                throw DecodeError("cas-pointer ballot payload must be a 32-byte digest");
            return;
        }
    }
}

Bytes Board::encode_inline_ballot(const SignedBallot& ballot) const {
    const size_t mask_len = (declared_roster_size_ + 7) / 8;
    std::vector<uint8_t> mask(mask_len, 0);
    size_t prev_index = 0;
    bool first = true;
    for (const auto& member : ballot.ring.members) {
        auto idx = roster_index(member);
        if (!idx)
            throw DecodeError("inline ballots can only carry rings drawn from the roster");
        if (!first && *idx <= prev_index)
            throw DecodeError("inline ballots require ring members in ascending roster order");
        prev_index = *idx;
        first = false;
        mask[*idx / 8] |= static_cast<uint8_t>(1u << (*idx % 8));
    }
    ByteWriter w;
    w.raw(ballot.ballot.encode());
    w.lp_bytes(mask);
    ballot.signature.encode_to(w);
    return w.take();
}

SignedBallot Board::decode_inline_ballot(std::span<const uint8_t> payload) const {
    ByteReader rd(payload);
    Ballot ballot = Ballot::decode(rd.raw(64));
    Bytes mask = rd.lp_bytes();
    if (mask.size() != (declared_roster_size_ + 7u) / 8)
        throw DecodeError("ring bitmask length does not match the roster");
    std::vector<GroupPoint> members;
    for (size_t i = 0; i < roster_.size(); i++) {
        if (mask[i / 8] & (1u << (i % 8))) members.push_back(roster_[i]);
    }
    for (size_t i = roster_.size(); i < 8 * mask.size(); i++) {
        if (mask[i / 8] & (1u << (i % 8)))
            throw DecodeError("ring bitmask names a key outside the roster");
    }
    RingSignature sig = RingSignature::decode_from(rd);
    rd.expect_end();
    if (members.empty()) throw DecodeError("ring bitmask selects no roster keys");
    if (sig.c.size() != members.size())
        throw DecodeError("signature vector lengths do not match ring bitmask");
    return SignedBallot{ballot, Ring::of(std::move(members)), std::move(sig)};
}

const LedgerEntry& Board::add_roster_key(const GroupPoint& key, std::string_view submitter) {
    return append(EntryType::RosterAdd, Bytes(key.bytes().begin(), key.bytes().end()),
                  submitter);
}

const LedgerEntry& Board::add_escrow_commitment(const ManagerCommitment& commitment,
                                                std::string_view submitter) {
    return append(EntryType::EscrowCommit, commitment.encode(), submitter);
}

const LedgerEntry& Board::add_escrow_product(std::string_view manager_id,
                                             const GroupPoint& product,
                                             std::string_view submitter) {
    ByteWriter w;
    w.lp_str(manager_id);
    w.raw(product.bytes());
    return append(EntryType::EscrowProduct, w.take(), submitter);
}

const LedgerEntry& Board::add_escrow_reveal(std::string_view manager_id, const Scalar& secret,
                                            std::string_view submitter) {
    ByteWriter w;
    w.lp_str(manager_id);
    w.raw(secret.bytes());
    return append(EntryType::EscrowReveal, w.take(), submitter);
}

const LedgerEntry& Board::submit_ballot(const SignedBallot& ballot, std::string_view submitter) {
    // fail before anything lands in the side table or the content store
    check_admissible(EntryType::Ballot, entries_.size());
    switch (payload_mode_) {
        case PayloadMode::Inline:
            return append(EntryType::Ballot, encode_inline_ballot(ballot), submitter);
        case PayloadMode::TxPointer: {
            uint64_t id = transactions_.add(ballot.encode());
            ByteWriter w;
            w.u64(id);
            return append(EntryType::Ballot, w.take(), submitter);
        }
        case PayloadMode::CasPointer: {
            Digest d = store_.put(ballot.encode());
            return append(EntryType::Ballot, Bytes(d.begin(), d.end()), submitter);
        }
    }
    throw ConfigError("unknown payload mode");
}

const LedgerEntry& Board::submit_ballot_payload(Bytes payload, std::string_view submitter) {
    return append(EntryType::Ballot, std::move(payload), submitter);
}

const LedgerEntry& Board::advance_phase(std::string_view authority) {
    ByteWriter w;
    w.u8(static_cast<uint8_t>(next_phase(phase_)));
    return append(EntryType::PhaseTransition, w.take(), authority);
}

ElectionConfig Board::config() const {
    ElectionConfig cfg;
    cfg.election_id = election_id_;
    cfg.candidates = candidates_;
    cfg.manager_ids = manager_ids_;
    cfg.roster = roster_;
    cfg.min_ring_size = min_ring_size_;
    cfg.payload_mode = payload_mode_;
    cfg.deposit_amount = deposit_amount_;
    cfg.voting_deadline = voting_deadline_;
    cfg.reveal_deadline = reveal_deadline_;
    return cfg;
}

std::optional<size_t> Board::roster_index(const GroupPoint& key) const {
    for (size_t i = 0; i < roster_.size(); i++) {
        if (roster_[i] == key) return i;
    }
    return std::nullopt;
}

SignedBallot Board::decode_ballot_entry(const LedgerEntry& entry) const {
    if (entry.type != EntryType::Ballot) throw DecodeError("entry is not a ballot");
    switch (payload_mode_) {
        case PayloadMode::Inline:
            return decode_inline_ballot(entry.payload);
        case PayloadMode::TxPointer: {
            ByteReader rd(entry.payload);
            uint64_t id = rd.u64();
            rd.expect_end();
            return SignedBallot::decode(transactions_.get(id));
        }
        case PayloadMode::CasPointer: {
            if (entry.payload.size() != 32) throw DecodeError("malformed cas pointer");
            Digest d;
            std::copy(entry.payload.begin(), entry.payload.end(), d.begin());
            return SignedBallot::decode(store_.get(d));
        }
    }
    throw ConfigError("unknown payload mode");
}

std::vector<uint64_t> Board::ballot_entry_indices() const { return ballot_entries_; }

void Board::validate_chain() const {
    Digest prev{};
    for (size_t i = 0; i < entries_.size(); i++) {
        const LedgerEntry& e = entries_[i];
        if (e.index != i)
            throw ChainError("entry " + std::to_string(i) + " has wrong index");
        if (e.prev_hash != prev)
            throw ChainError("entry " + std::to_string(i) + " breaks the hash chain");
        if (LedgerEntry::compute_hash(e.index, e.prev_hash, e.type, e.payload, e.submitter) !=
            e.entry_hash)
            throw ChainError("entry " + std::to_string(i) + " hash mismatch");
        prev = e.entry_hash;
    }
}

Digest Board::state_digest() const {
    ByteWriter w;
    w.raw(as_bytes("ringvote.state.v1"));
    w.lp_str(election_id_);
    w.u16(static_cast<uint16_t>(candidates_.size()));
    for (const auto& c : candidates_) w.lp_str(c);
    w.u16(static_cast<uint16_t>(manager_ids_.size()));
    for (const auto& id : manager_ids_) w.lp_str(id);
    w.u16(declared_roster_size_);
    w.u16(min_ring_size_);
    w.u8(static_cast<uint8_t>(payload_mode_));
    w.u64(deposit_amount_);
    w.u64(voting_deadline_);
    w.u64(reveal_deadline_);
    w.u8(static_cast<uint8_t>(phase_));
    w.u16(static_cast<uint16_t>(roster_.size()));
    for (const auto& k : roster_) w.raw(k.bytes());
    Bytes escrow = escrow_.serialize();
    w.u64(escrow.size());
    w.raw(escrow);
    w.u64(ballot_entries_.size());
    for (uint64_t idx : ballot_entries_) {
        const LedgerEntry& e = entries_[idx];
        w.u64(idx);
        w.u64(e.payload.size());
        w.raw(e.payload);
        // Resolve pointers so replicas also agree on off-ledger content.
        try {
            SignedBallot sb = decode_ballot_entry(e);
            Bytes enc = sb.encode();
            w.u8(1);
            w.u64(enc.size());
            w.raw(enc);
        } catch (const Error&) {
            w.u8(0);
        }
    }
    return sha256(w.bytes());
}

std::vector<BallotSizeRow> Board::bytes_per_ballot() const {
    std::map<size_t, BallotSizeRow> by_size;
    for (uint64_t idx : ballot_entries_) {
        const LedgerEntry& e = entries_[idx];
        size_t ring_size = 0;
        size_t off_ledger = 0;
        try {
            SignedBallot sb = decode_ballot_entry(e);
            ring_size = sb.ring.size();
            if (payload_mode_ != PayloadMode::Inline) off_ledger = sb.encode().size();
        } catch (const Error&) {
            continue;  // undecodable entries have no ring size to group under
        }
        BallotSizeRow& row = by_size[ring_size];
        row.mode = payload_mode_;
        row.ring_size = ring_size;
        row.count++;
        row.mean_onledger_bytes += static_cast<double>(e.payload.size());
        row.mean_offledger_bytes += static_cast<double>(off_ledger);
    }
    std::vector<BallotSizeRow> rows;
    for (auto& [size, row] : by_size) {
        row.mean_onledger_bytes /= static_cast<double>(row.count);
        row.mean_offledger_bytes /= static_cast<double>(row.count);
        rows.push_back(row);
    }
    return rows;
}

DepositSummary Board::deposit_summary() const {
    return escrow_.deposit_summary(phase_ == Phase::Tally);
}

void Board::save(const std::filesystem::path& dir) const {
    std::error_code ec;
    std::filesystem::create_directories(dir / "store", ec);
    if (ec) throw IoError("cannot create election directory " + dir.string());

    std::ofstream ledger(dir / "ledger.log", std::ios::trunc);
    if (!ledger) throw IoError("cannot write ledger file");
    ledger << kLedgerHeader << "\n";
    for (const auto& e : entries_) {
        ledger << e.index << ' ' << entry_type_name(e.type) << ' ' << to_hex(e.prev_hash)
               << ' ' << field_or_dash(to_hex(e.payload)) << ' '
               << field_or_dash(to_hex(as_bytes(e.submitter))) << ' '
               << to_hex(e.entry_hash) << "\n";
    }
    ledger.close();

    std::ofstream txs(dir / "txs.log", std::ios::trunc);
    if (!txs) throw IoError("cannot write transaction table");
    txs << kTxHeader << "\n";
    for (size_t i = 0; i < transactions_.rows().size(); i++) {
        txs << i << ' ' << field_or_dash(to_hex(transactions_.rows()[i])) << "\n";
    }
    txs.close();

    for (const auto& [hex, blob] : store_.blobs()) {
        std::ofstream f(dir / "store" / (hex + ".bin"), std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot write payload store blob " + hex);
        f.write(reinterpret_cast<const char*>(blob.data()),
                static_cast<std::streamsize>(blob.size()));
    }
}

Board Board::open(const std::filesystem::path& dir) {
    std::ifstream ledger(dir / "ledger.log");
    if (!ledger) throw IoError("cannot open ledger file in " + dir.string());
    std::string line;
    if (!std::getline(ledger, line) || line != kLedgerHeader)
        throw DecodeError("unrecognized ledger file header");

    Board board;

    // Off-ledger backends load first so later validation can resolve pointers.
    std::ifstream txs(dir / "txs.log");
    if (txs) {
        if (!std::getline(txs, line) || line != kTxHeader)
            throw DecodeError("unrecognized transaction table header");
        while (std::getline(txs, line)) {
            if (line.empty()) continue;
            std::istringstream ss(line);
            uint64_t id;
            std::string payload_hex;
            if (!(ss >> id >> payload_hex)) throw DecodeError("malformed transaction row");
            uint64_t got = board.transactions_.add(from_hex(dash_to_empty(payload_hex)));
            if (got != id) throw DecodeError("transaction ids must be sequential");
        }
    }
    if (std::filesystem::is_directory(dir / "store")) {
        for (const auto& f : std::filesystem::directory_iterator(dir / "store")) {
            std::ifstream blob(f.path(), std::ios::binary);
            Bytes data((std::istreambuf_iterator<char>(blob)),
                       std::istreambuf_iterator<char>());
            Digest d = board.store_.put(std::move(data));
            if (to_hex(d) + ".bin" != f.path().filename().string())
                throw ChainError("payload store file name does not match content digest");
        }
    }

    Digest prev{};
    uint64_t expected_index = 0;
    while (std::getline(ledger, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        uint64_t index;
        std::string type_name, prev_hex, payload_hex, submitter_hex, hash_hex;
        if (!(ss >> index >> type_name >> prev_hex >> payload_hex >> submitter_hex >> hash_hex))
            throw DecodeError("malformed ledger row");

        LedgerEntry e;
        e.index = index;
        std::optional<EntryType> type;
        for (uint8_t t = 0; t <= 6; t++) {
            if (entry_type_name(static_cast<EntryType>(t)) == type_name)
                type = static_cast<EntryType>(t);
        }
        if (!type) throw DecodeError("unknown entry type " + type_name);
        e.type = *type;
        Bytes prev_bytes = from_hex(prev_hex);
        if (prev_bytes.size() != 32) throw DecodeError("malformed prev hash");
        std::copy(prev_bytes.begin(), prev_bytes.end(), e.prev_hash.begin());
        e.payload = from_hex(dash_to_empty(payload_hex));
        Bytes submitter = from_hex(dash_to_empty(submitter_hex));
        e.submitter.assign(submitter.begin(), submitter.end());
        Bytes hash_bytes = from_hex(hash_hex);
        if (hash_bytes.size() != 32) throw DecodeError("malformed entry hash");
        std::copy(hash_bytes.begin(), hash_bytes.end(), e.entry_hash.begin());

        if (e.index != expected_index++)
            throw ChainError("entry " + std::to_string(e.index) + " out of sequence");
        if (e.prev_hash != prev)
            throw ChainError("entry " + std::to_string(e.index) + " breaks the hash chain");
        if (LedgerEntry::compute_hash(e.index, e.prev_hash, e.type, e.payload, e.submitter) !=
            e.entry_hash)
            throw ChainError("entry " + std::to_string(e.index) + " hash mismatch");
        prev = e.entry_hash;

        board.check_admissible(e.type, e.index);
        board.apply(e);
        board.entries_.push_back(std::move(e));
    }
    if (board.entries_.empty()) throw DecodeError("ledger has no genesis entry");
    return board;
}

}  // namespace ringvote
