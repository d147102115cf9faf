#pragma once

// Shared election fixtures for the board/tally/acceptance suites, including
// the plaintext ground-truth oracle for randomized adversarial elections.
// The oracle never re-runs the cryptographic checks: it knows each scripted
// ballot's voter, candidate and injected defect by construction.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ringvote/bulletin_board.hpp"
#include "ringvote/group.hpp"
#include "ringvote/rng.hpp"
#include "ringvote/stealth.hpp"

namespace ringvote::testing {

struct ElectionParams {
    size_t voters = 5;
    std::vector<std::string> candidates = {"alice", "bob"};
    size_t managers = 2;
    uint16_t min_ring_size = 2;
    PayloadMode mode = PayloadMode::Inline;
    uint64_t deposit = 1;
    bool advance_to_voting = true;
};

struct TestElection {
    ElectionConfig config;
    std::vector<KeyPair> voters;
    std::vector<std::string> manager_ids;
    std::vector<Scalar> manager_secrets;
    Board board;

    Scalar election_secret() const;
};

TestElection setup_election(const ElectionParams& params, RandomSource& rng);

std::string random_submitter(RandomSource& rng);

// Ring of `ring_size` roster keys including the voter, in ascending roster
// order. Returns the voter's position within the ring.
Ring sample_ring(const TestElection& e, size_t voter, size_t ring_size,
                 RandomSource& rng, size_t& signer_index);

// Honest vote; returns the ledger entry index.
uint64_t submit_vote(TestElection& e, size_t voter, size_t candidate,
                     size_t ring_size, RandomSource& rng);

// Advance to tally and publish every manager's reveal.
void close_and_reveal(TestElection& e, RandomSource& rng);

// Scripted adversarial election with known ground truth.
enum class VoteKind {
    Honest,         // counted if the voter has no earlier counted ballot
    BadSignature,   // honest cast, then one challenge scalar corrupted
    UndersizedRing, // ring below the minimum size
    OffRosterRing,  // fresh signer outside the roster (pointer modes only)
    Garbage,        // undecodable payload (pointer modes only)
    NoMatch,        // ballot built for a candidate outside the list
};

struct ScriptedBallot {
    VoteKind kind;
    size_t voter;
    size_t candidate;
    uint64_t entry_index;
};

struct RandomElection {
    TestElection election;
    std::vector<ScriptedBallot> script;
    std::map<std::string, uint64_t> expected_counts;
    size_t expected_accepted = 0;
};

RandomElection random_election(uint64_t seed);

}  // namespace ringvote::testing
