#include "ringvote/tally.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "ringvote/errors.hpp"
#include "ringvote/ring_signature.hpp"
#include "ringvote/stealth.hpp"

namespace ringvote {

namespace {

constexpr std::string_view kFingerprintTag = "ringvote.fp.v1";
constexpr std::string_view kReportHeader = "ringvote-tally-report v1";

// Outcome of the per-ballot checks that need no dedup context. Signature
// verification and candidate matching fan out across workers; key-image
// deduplication happens at the sequential join, in ledger order.
struct PreVerdict {
    std::optional<RejectReason> reject;
    GroupPoint key_image;
    std::optional<size_t> candidate;
};

PreVerdict examine_ballot(const Board& board, const LedgerEntry& entry,
                          const Scalar& escrow_secret,
                          std::span<const GroupPoint> candidate_points,
                          uint16_t min_ring_size) {
    PreVerdict v;
    SignedBallot sb;
    try {
        sb = board.decode_ballot_entry(entry);
    } catch (const std::exception&) {
        v.reject = RejectReason::Undecodable;
        return v;
    }
    if (sb.ring.size() < min_ring_size) {
        v.reject = RejectReason::RingTooSmall;
        return v;
    }
    for (const auto& member : sb.ring.members) {
        if (!board.roster_index(member)) {
            v.reject = RejectReason::RingNotInRoster;
            return v;
        }
    }
    if (!ring_verify(sb.ballot.encode(), sb.ring, sb.signature)) {
        v.reject = RejectReason::BadSignature;
        return v;
    }
    v.key_image = sb.signature.key_image;
    v.candidate = match_ballot(sb.ballot, escrow_secret, candidate_points);
    return v;
}

}  // namespace

std::string_view reject_reason_name(RejectReason r) {
    switch (r) {
        case RejectReason::Undecodable: return "undecodable";
        case RejectReason::RingTooSmall: return "ring-too-small";
        case RejectReason::RingNotInRoster: return "ring-not-in-roster";
        case RejectReason::BadSignature: return "bad-signature";
        case RejectReason::DuplicateKeyImage: return "duplicate-key-image";
        case RejectReason::NoCandidateMatch: return "no-candidate-match";
    }
    return "?";
}

TallyReport tally(const Board& board, const Scalar& escrow_secret,
                  const TallyOptions& options) {
    if (board.phase() != Phase::Tally)
        throw PhaseError("tally requires the tally phase");
    auto missing = board.escrow().missing_reveals();
    if (!missing.empty()) {
        std::string names;
        for (const auto& m : missing) names += (names.empty() ? "" : ", ") + m;
        throw EscrowError("tally before reveal completion; missing reveals from " + names);
    }
    if (!(GroupPoint::mul_base(escrow_secret) == board.election_pubkey()))
        throw EscrowError("escrow secret does not match the election public key");

    const ElectionConfig cfg = board.config();
    std::vector<GroupPoint> candidate_points;
    candidate_points.reserve(cfg.candidates.size());
    for (const auto& name : cfg.candidates) candidate_points.push_back(encode_candidate(name));

    const std::vector<uint64_t> ballots = board.ballot_entry_indices();
    std::vector<PreVerdict> verdicts(ballots.size());

    const unsigned workers =
        std::max(1u, std::min<unsigned>(options.workers,
                                        static_cast<unsigned>(std::max<size_t>(ballots.size(), 1))));
    if (workers == 1) {
        for (size_t i = 0; i < ballots.size(); i++) {
            verdicts[i] = examine_ballot(board, board.entries()[ballots[i]], escrow_secret,
                                         candidate_points, cfg.min_ring_size);
        }
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned lane = 0; lane < workers; lane++) {
            pool.emplace_back([&, lane] {
                for (size_t i = lane; i < ballots.size(); i += workers) {
                    verdicts[i] = examine_ballot(board, board.entries()[ballots[i]],
                                                 escrow_secret, candidate_points,
                                                 cfg.min_ring_size);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    TallyReport report;
    report.election_id = cfg.election_id;
    {
        ByteWriter w;
        w.raw(as_bytes(kFingerprintTag));
        w.raw(escrow_secret.bytes());
        report.escrow_secret_fingerprint = sha256(w.bytes());
    }
    std::vector<uint64_t> counts(cfg.candidates.size(), 0);
    std::unordered_set<std::string> seen_images;

    // Sequential join in ledger order: dedup applies to accepted ballots
    // only, so an invalid ballot never burns a key image.
    for (size_t i = 0; i < ballots.size(); i++) {
        const PreVerdict& v = verdicts[i];
        if (v.reject) {
            report.rejected.push_back({ballots[i], *v.reject});
            continue;
        }
        if (seen_images.count(to_hex(v.key_image.bytes()))) {
            report.rejected.push_back({ballots[i], RejectReason::DuplicateKeyImage});
            continue;
        }
        if (!v.candidate) {
            report.rejected.push_back({ballots[i], RejectReason::NoCandidateMatch});
            continue;
        }
        seen_images.insert(to_hex(v.key_image.bytes()));
        counts[*v.candidate]++;
        report.accepted.push_back({ballots[i], cfg.candidates[*v.candidate], v.key_image});
    }
    for (size_t j = 0; j < cfg.candidates.size(); j++) {
        report.counts.emplace_back(cfg.candidates[j], counts[j]);
    }
    return report;
}

bool verify_report(const Board& board, const Scalar& escrow_secret,
                   const TallyReport& report) {
    try {
        TallyReport recomputed = tally(board, escrow_secret);
        return encode_report(recomputed) == encode_report(report);
    } catch (const std::exception&) {
        return false;
    }
}

std::string encode_report(const TallyReport& report) {
    std::ostringstream out;
    out << kReportHeader << "\n";
    out << "election: " << report.election_id << "\n";
    out << "escrow-secret-fingerprint: " << to_hex(report.escrow_secret_fingerprint) << "\n";
    out << "counts:\n";
    for (const auto& [name, n] : report.counts) out << "  " << name << ": " << n << "\n";
    out << "accepted:\n";
    for (const auto& a : report.accepted) {
        out << "  " << a.entry_index << ' ' << to_hex(a.key_image.bytes()) << ' '
            << a.candidate << "\n";
    }
    out << "rejected:\n";
    for (const auto& r : report.rejected) {
        out << "  " << r.entry_index << ' ' << reject_reason_name(r.reason) << "\n";
    }
    return out.str();
}

TallyReport decode_report(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    auto next_line = [&]() -> std::string {
        if (!std::getline(in, line)) throw DecodeError("truncated tally report");
        return line;
    };
    if (next_line() != kReportHeader) throw DecodeError("unrecognized tally report header");

    TallyReport report;
    std::string l = next_line();
    if (!l.starts_with("election: ")) throw DecodeError("missing election line");
    report.election_id = l.substr(10);
    l = next_line();
    if (!l.starts_with("escrow-secret-fingerprint: "))
        throw DecodeError("missing fingerprint line");
    Bytes fp = from_hex(l.substr(27));
    if (fp.size() != 32) throw DecodeError("malformed fingerprint");
    std::copy(fp.begin(), fp.end(), report.escrow_secret_fingerprint.begin());

    if (next_line() != "counts:") throw DecodeError("missing counts section");
    enum { Counts, Accepted, Rejected } section = Counts;
    while (std::getline(in, line)) {
        if (line == "accepted:") {
            if (section != Counts) throw DecodeError("sections out of order");
            section = Accepted;
            continue;
        }
        if (line == "rejected:") {
            if (section != Accepted) throw DecodeError("sections out of order");
            section = Rejected;
            continue;
        }
        if (!line.starts_with("  ")) throw DecodeError("malformed report line: " + line);
        std::string body = line.substr(2);
        if (section == Counts) {
            size_t sep = body.rfind(": ");
            if (sep == std::string::npos) throw DecodeError("malformed count line");
            report.counts.emplace_back(body.substr(0, sep),
                                       std::stoull(body.substr(sep + 2)));
        } else if (section == Accepted) {
            size_t sp1 = body.find(' ');
            if (sp1 == std::string::npos) throw DecodeError("malformed accepted line");
            size_t sp2 = body.find(' ', sp1 + 1);
            if (sp2 == std::string::npos) throw DecodeError("malformed accepted line");
            AcceptedBallot a;
            a.entry_index = std::stoull(body.substr(0, sp1));
            Bytes image = from_hex(body.substr(sp1 + 1, sp2 - sp1 - 1));
            a.key_image = GroupPoint::decode(image);
            a.candidate = body.substr(sp2 + 1);
            report.accepted.push_back(std::move(a));
        } else {
            size_t sp = body.find(' ');
            if (sp == std::string::npos) throw DecodeError("malformed rejected line");
            RejectedBallot r;
            r.entry_index = std::stoull(body.substr(0, sp));
            std::string reason = body.substr(sp + 1);
            bool found = false;
            for (uint8_t v = 0; v <= 5; v++) {
                if (reject_reason_name(static_cast<RejectReason>(v)) == reason) {
                    r.reason = static_cast<RejectReason>(v);
                    found = true;
                }
            }
            if (!found) throw DecodeError("unknown rejection reason " + reason);
            report.rejected.push_back(r);
        }
    }
    if (section != Rejected) throw DecodeError("truncated tally report");
    return report;
}

}  // namespace ringvote
