// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exit status = number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "commands.hpp"
#include "ringvote/bulletin_board.hpp"
#include "ringvote/errors.hpp"
#include "ringvote/escrow.hpp"
#include "ringvote/ring_signature.hpp"
#include "ringvote/stealth.hpp"
#include "ringvote/tally.hpp"
#include "support/harness.hpp"

using namespace ringvote;
using namespace ringvote::testing;

namespace {

void check(bool cond, const std::string& msg) {
    if (!cond) throw std::runtime_error(msg);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---- 1. ring-signature round trip -----------------------------------------

void c1_round_trip() {
    auto start = std::chrono::steady_clock::now();
    SeededRandom rng(1001);
    size_t failures = 0;
    for (size_t n = 1; n <= 16; n++) {
        std::vector<KeyPair> keys;
        std::vector<GroupPoint> members;
        for (size_t i = 0; i < n; i++) {
            keys.push_back(KeyPair::generate(rng));
            members.push_back(keys.back().public_key);
        }
        Ring ring = Ring::of(members);
        for (size_t signer = 0; signer < n; signer++) {
            for (int m = 0; m < 20; m++) {
                std::array<uint8_t, 48> msg;
                rng.fill(msg);
                RingSignature sig = ring_sign(msg, ring, signer, keys[signer], rng);
                if (!ring_verify(msg, ring, sig)) failures++;
            }
        }
    }
    check(failures == 0, std::to_string(failures) + " round-trip failures");
    double elapsed = seconds_since(start);
    check(elapsed < 60.0, "runtime " + std::to_string(elapsed) + " s exceeds 60 s");
}

// ---- 2. linkability --------------------------------------------------------

void c2_linkability() {
    SeededRandom rng(1002);
    std::vector<KeyPair> decoys;
    for (int i = 0; i < 8; i++) decoys.push_back(KeyPair::generate(rng));

    std::set<std::string> images;
    for (int k = 0; k < 100; k++) {
        KeyPair voter = KeyPair::generate(rng);
        std::string image_hex;
        for (int r = 0; r < 3; r++) {
            std::vector<GroupPoint> members;
            size_t signer = static_cast<size_t>(r);
            for (size_t i = 0, d = 0; i < 5; i++) {
                if (i == signer) {
                    members.push_back(voter.public_key);
                } else {
                    members.push_back(decoys[(d++ + static_cast<size_t>(k + r)) % decoys.size()]
                                          .public_key);
                }
            }
            Ring ring = Ring::of(members);
            std::array<uint8_t, 32> msg;
            rng.fill(msg);
            RingSignature sig = ring_sign(msg, ring, signer, voter, rng);
            std::string hex = to_hex(sig.key_image.bytes());
            if (r == 0) {
                image_hex = hex;
            } else {
                check(hex == image_hex, "key image changed across rings for one key");
            }
        }
        images.insert(image_hex);
    }
    check(images.size() == 100, "key images collide across distinct keys");
}

// ---- 3. forgery resistance smoke test --------------------------------------

void c3_forgery() {
    SeededRandom rng(1003);
    std::vector<KeyPair> keys;
    std::vector<GroupPoint> members;
    for (int i = 0; i < 4; i++) {
        keys.push_back(KeyPair::generate(rng));
        members.push_back(keys.back().public_key);
    }
    Ring ring = Ring::of(members);

    size_t accepted = 0;
    for (int s = 0; s < 50; s++) {
        std::array<uint8_t, 40> msg;
        rng.fill(msg);
        size_t signer = static_cast<size_t>(s) % 4;
        RingSignature sig = ring_sign(msg, ring, signer, keys[signer], rng);
        for (int p = 0; p < 10; p++) {
            std::array<uint8_t, 2> which;
            rng.fill(which);
            RingSignature bad = sig;
            Bytes bad_msg(msg.begin(), msg.end());
            switch (which[0] % 4) {
                case 0: bad.c[which[1] % 4] = bad.c[which[1] % 4] + Scalar::from_u64(1); break;
                case 1: bad.r[which[1] % 4] = bad.r[which[1] % 4] + Scalar::from_u64(1); break;
                case 2: bad.key_image = bad.key_image + GroupPoint::base(); break;
                case 3: bad_msg[which[1] % bad_msg.size()] ^= 0x40; break;
            }
            if (ring_verify(bad_msg, ring, bad)) accepted++;
        }
    }
    check(accepted == 0, std::to_string(accepted) + " of 500 perturbations accepted");
}

// ---- 4. stealth round trip --------------------------------------------------

void c4_stealth() {
    SeededRandom rng(1004);
    KeyPair escrow = KeyPair::generate(rng);
    std::vector<GroupPoint> candidates;
    for (int j = 0; j < 5; j++) candidates.push_back(encode_candidate("c" + std::to_string(j)));

    size_t wrong_secret_hits = 0;
    for (int i = 0; i < 1000; i++) {
        size_t planted = static_cast<size_t>(i) % candidates.size();
        Ballot ballot = make_ballot(escrow.public_key, candidates[planted], rng);
        auto got = match_ballot(ballot, escrow.secret, candidates);
        check(got.has_value() && *got == planted, "stealth match failed to recover");
        Scalar wrong = Scalar::random_nonzero(rng);
        auto bogus = match_ballot(ballot, wrong, candidates);
        if (bogus && *bogus == planted) wrong_secret_hits++;
    }
    check(wrong_secret_hits <= 2,
          "wrong secret recovered the planted candidate " +
              std::to_string(wrong_secret_hits) + " times");
}

// ---- 5. escrow --------------------------------------------------------------

void c5_escrow() {
    SeededRandom rng(1005);
    auto ctx = as_bytes("acceptance-escrow");
    for (size_t managers : {1u, 2u, 5u}) {
        std::vector<Scalar> secrets;
        std::vector<std::string> ids;
        EscrowState state;
        GroupPoint chain = GroupPoint::base();
        for (size_t k = 0; k < managers; k++) {
            secrets.push_back(Scalar::random_nonzero(rng));
            ids.push_back("m" + std::to_string(k));
            state.add_commitment(commit_share(secrets[k], ids[k], ctx, rng), ctx, 1);
            chain = extend_product(chain, secrets[k]);
            state.record_product(ids[k], chain);
        }
        state.close_commitments();

        // withholding any single reveal blocks combination
        for (size_t withheld = 0; withheld < managers; withheld++) {
            EscrowState partial = state;
            for (size_t k = 0; k < managers; k++) {
                if (k != withheld) partial.reveal(ids[k], secrets[k]);
            }
            bool blocked = false;
            try {
                partial.combine_secret();
            } catch (const EscrowError&) {
                blocked = true;
            }
            check(blocked, "combine succeeded with a withheld reveal");
        }

        for (size_t k = 0; k < managers; k++) state.reveal(ids[k], secrets[k]);
        Scalar a = state.combine_secret();
        check(GroupPoint::mul_base(a) == state.running_products().back(),
              "combined secret does not reproduce the chain head");
    }
}

// ---- 6. tally oracle equivalence --------------------------------------------

void c6_tally_oracle() {
    auto start = std::chrono::steady_clock::now();
    for (uint64_t seed = 2000; seed < 2050; seed++) {
        RandomElection r = random_election(seed);
        TallyReport report = tally(r.election.board, r.election.election_secret(),
                                   {.workers = 1 + static_cast<unsigned>(seed % 3)});
        std::map<std::string, uint64_t> got(report.counts.begin(), report.counts.end());
        check(got == r.expected_counts,
              "counts diverge from ground truth at seed " + std::to_string(seed));
        check(report.accepted.size() + report.rejected.size() == r.script.size(),
              "accepted+rejected does not partition ballots at seed " +
                  std::to_string(seed));
        std::set<std::string> images;
        for (const auto& a : report.accepted) images.insert(to_hex(a.key_image.bytes()));
        check(images.size() == report.accepted.size(),
              "accepted key images not pairwise distinct");
    }
    double elapsed = seconds_since(start);
    check(elapsed < 300.0, "runtime " + std::to_string(elapsed) + " s exceeds 5 min");
}

// ---- 7. self-tallying / replayability ----------------------------------------

void c7_replay() {
    namespace fs = std::filesystem;
    for (uint64_t seed = 3000; seed < 3010; seed++) {
        RandomElection r = random_election(seed);
        fs::path dir = fs::temp_directory_path() / ("ringvote-accept-" + std::to_string(seed));
        fs::remove_all(dir);
        r.election.board.save(dir);

        Board replica_a = Board::open(dir);
        Board replica_b = Board::open(dir);
        check(replica_a.state_digest() == replica_b.state_digest(),
              "replica state digests diverge");
        std::string report_a =
            encode_report(tally(replica_a, r.election.election_secret()));
        std::string report_b =
            encode_report(tally(replica_b, r.election.election_secret()));
        check(report_a == report_b, "replica reports diverge at seed " + std::to_string(seed));
        fs::remove_all(dir);
    }
}

// ---- 8. timing trend (Fig. 1) -------------------------------------------------

void c8_timing_trend() {
    SystemRandom rng;
    cli::BenchResult bench = cli::run_bench({2, 4, 8, 16, 32, 64}, 10, rng);
    check(bench.fit_r2 >= 0.9, "linear fit r2 = " + std::to_string(bench.fit_r2));
    for (const auto& row : bench.rows) {
        double ratio = row.verify_ms / row.sign_ms;
        check(ratio >= 0.5 && ratio <= 2.0,
              "verify/sign ratio " + std::to_string(ratio) + " at ring size " +
                  std::to_string(row.ring_size));
    }
}

// ---- 9. storage trend (Fig. 2) ------------------------------------------------

void c9_storage_trend() {
    SeededRandom rng(1009);
    std::vector<size_t> sizes = {2, 4, 8, 16, 32};
    auto rows = cli::run_cost(sizes, {"inline", "tx-pointer", "cas-pointer"}, 32, 0.05,
                              0.0, rng);
    std::map<std::pair<std::string, size_t>, double> onledger;
    for (const auto& r : rows) onledger[{r.mode, r.ring_size}] = r.onledger_bytes;

    for (size_t n : sizes) {
        check(onledger.at({"cas-pointer", n}) == onledger.at({"cas-pointer", sizes[0]}),
              "cas-pointer bytes vary with ring size");
    }
    for (size_t i = 1; i < sizes.size(); i++) {
        double delta = onledger.at({"inline", sizes[i]}) - onledger.at({"inline", sizes[i - 1]});
        double members = static_cast<double>(sizes[i] - sizes[i - 1]);
        check(delta == 64.0 * members,
              "inline slope is not exactly 64 bytes per member between sizes " +
                  std::to_string(sizes[i - 1]) + " and " + std::to_string(sizes[i]));
    }
}

// ---- 10. phase enforcement ------------------------------------------------------

void c10_phase_enforcement() {
    for (uint64_t seed = 4000; seed < 4020; seed++) {
        SeededRandom rng(seed);
        ElectionParams params;
        params.voters = 4 + static_cast<size_t>(seed % 5);
        params.advance_to_voting = false;
        TestElection e = setup_election(params, rng);

        size_t leaked = 0;
        auto attempt_vote = [&] {
            try {
                submit_vote(e, 0, 0, 2, rng);
                leaked++;
            } catch (const PhaseError&) {
            }
        };

        size_t setup_attempts = 1 + static_cast<size_t>(seed % 3);
        for (size_t i = 0; i < setup_attempts; i++) attempt_vote();  // during Setup
        e.board.advance_phase();
        size_t legal = 1 + static_cast<size_t>(seed % 3);
        for (size_t i = 0; i < legal; i++) submit_vote(e, i % params.voters, 0, 2, rng);
        e.board.advance_phase();
        for (size_t i = 0; i < setup_attempts; i++) attempt_vote();  // during Tally

        check(leaked == 0, "ballots leaked into the wrong phase");
        check(e.board.ballot_entry_indices().size() == legal,
              "unexpected ballot entry count");
    }
}

// ---- 11. parallel tally determinism ----------------------------------------------

void c11_parallel_determinism() {
    for (uint64_t seed = 5000; seed < 5010; seed++) {
        RandomElection r = random_election(seed);
        std::string baseline =
            encode_report(tally(r.election.board, r.election.election_secret(), {.workers = 1}));
        for (unsigned workers : {2u, 8u}) {
            std::string got = encode_report(
                tally(r.election.board, r.election.election_secret(), {.workers = workers}));
            check(got == baseline, "worker count " + std::to_string(workers) +
                                       " changed the report at seed " + std::to_string(seed));
        }
    }
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<void()> fn;
    };
    const std::vector<Criterion> criteria = {
        {"01 ring-signature round trip (sizes 1..16, all signers, 20 msgs)", c1_round_trip},
        {"02 linkability (100 keys x 3 rings)", c2_linkability},
        {"03 forgery resistance (500 perturbations)", c3_forgery},
        {"04 stealth round trip (1000 draws)", c4_stealth},
        {"05 escrow combine/withhold (1, 2, 5 managers)", c5_escrow},
        {"06 tally oracle equivalence (50 randomized elections)", c6_tally_oracle},
        {"07 replayability (10 persisted-ledger replicas)", c7_replay},
        {"08 timing trend: linear fit r2 >= 0.9, ratio in [0.5, 2.0]", c8_timing_trend},
        {"09 storage trend: cas constant, inline 64 B/member", c9_storage_trend},
        {"10 phase enforcement (20 randomized schedules)", c10_phase_enforcement},
        {"11 parallel tally determinism (workers 1, 2, 8)", c11_parallel_determinism},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        auto start = std::chrono::steady_clock::now();
        try {
            criterion.fn();
            std::printf("PASS  %-66s (%.1f s)\n", criterion.name, seconds_since(start));
        } catch (const std::exception& e) {
            failures++;
            std::printf("FAIL  %-66s %s\n", criterion.name, e.what());
        }
        std::fflush(stdout);
    }
    if (failures == 0) {
        std::printf("all %zu acceptance criteria passed\n", criteria.size());
    } else {
        std::printf("%d acceptance criteria FAILED\n", failures);
    }
    return failures;
}
