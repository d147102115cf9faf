#include <chrono>

#include "commands.hpp"
#include "ringvote/bulletin_board.hpp"
#include "ringvote/errors.hpp"
#include "ringvote/escrow.hpp"
#include "ringvote/ring_signature.hpp"
#include "ringvote/stealth.hpp"

namespace ringvote::cli {

namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     start)
        .count();
}

}  // namespace

BenchResult run_bench(const std::vector<size_t>& ring_sizes, size_t repetitions,
                      RandomSource& rng) {
    if (repetitions == 0) throw ConfigError("repetitions must be at least 1");
    BenchResult result;
    for (size_t n : ring_sizes) {
        if (n < 1) throw ConfigError("ring sizes must be at least 1");
        std::vector<KeyPair> keys;
        std::vector<GroupPoint> members;
        for (size_t i = 0; i < n; i++) {
            keys.push_back(KeyPair::generate(rng));
            members.push_back(keys.back().public_key);
        }
        Ring ring = Ring::of(members);
        std::array<uint8_t, 64> message{};
        rng.fill(message);

        // warm-up iterations are discarded
        RingSignature warm = ring_sign(message, ring, 0, keys[0], rng);
        ring_verify(message, ring, warm);

        double sign_total = 0;
        double verify_total = 0;
        for (size_t rep = 0; rep < repetitions; rep++) {
            size_t signer = rep % n;
            auto t0 = std::chrono::steady_clock::now();
            RingSignature sig = ring_sign(message, ring, signer, keys[signer], rng);
            sign_total += ms_since(t0);

            auto t1 = std::chrono::steady_clock::now();
            bool ok = ring_verify(message, ring, sig);
            verify_total += ms_since(t1);
            if (!ok) throw Error("benchmark signature failed to verify");
        }
        result.rows.push_back({n, sign_total / static_cast<double>(repetitions),
                               verify_total / static_cast<double>(repetitions)});
    }

    // least-squares fit of sign time against ring size
    const size_t m = result.rows.size();
    if (m >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const auto& r : result.rows) {
            double x = static_cast<double>(r.ring_size);
            sx += x;
            sy += r.sign_ms;
            sxx += x * x;
            sxy += x * r.sign_ms;
        }
        double denom = m * sxx - sx * sx;
        result.fit_slope_ms = (m * sxy - sx * sy) / denom;
        result.fit_intercept_ms = (sy - result.fit_slope_ms * sx) / m;
        double ss_res = 0, ss_tot = 0;
        double mean = sy / m;
        for (const auto& r : result.rows) {
            double x = static_cast<double>(r.ring_size);
            double pred = result.fit_intercept_ms + result.fit_slope_ms * x;
            ss_res += (r.sign_ms - pred) * (r.sign_ms - pred);
            ss_tot += (r.sign_ms - mean) * (r.sign_ms - mean);
        }
        result.fit_r2 = ss_tot == 0 ? 1.0 : 1.0 - ss_res / ss_tot;
    }
    return result;
}

std::vector<CostRow> run_cost(const std::vector<size_t>& ring_sizes,
                              const std::vector<std::string>& modes, size_t roster_size,
                              double tx_byte_factor, double cas_byte_factor,
                              RandomSource& rng) {
    size_t max_size = 1;
    for (size_t n : ring_sizes) max_size = std::max(max_size, n);
    if (roster_size < max_size)
        throw ConfigError("roster size must cover the largest ring size");

    // one throwaway roster shared by every mode
    std::vector<KeyPair> voters;
    for (size_t i = 0; i < roster_size; i++) voters.push_back(KeyPair::generate(rng));
    Scalar manager_secret = Scalar::random_nonzero(rng);

    std::vector<CostRow> rows;
    for (const auto& mode_name : modes) {
        PayloadMode mode = parse_payload_mode(mode_name);
        ElectionConfig cfg;
        cfg.election_id = "cost-probe";
        cfg.candidates = {"a", "b"};
        cfg.manager_ids = {"m0"};
        for (const auto& v : voters) cfg.roster.push_back(v.public_key);
        cfg.min_ring_size = 1;
        cfg.payload_mode = mode;

        Board board(cfg);
        for (const auto& v : voters) board.add_roster_key(v.public_key, "registrar");
        board.add_escrow_commitment(
            commit_share(manager_secret, "m0", as_bytes(cfg.election_id), rng), "m0");
        board.add_escrow_product("m0", GroupPoint::mul_base(manager_secret), "m0");
        board.advance_phase();

        const GroupPoint b = encode_candidate("a");
        for (size_t n : ring_sizes) {
            std::vector<GroupPoint> members;
            for (size_t i = 0; i < n; i++) members.push_back(voters[i].public_key);
            Ring ring = Ring::of(members);
            Ballot ballot = make_ballot(board.election_pubkey(), b, rng);
            board.submit_ballot(cast(ballot, ring, 0, voters[0], rng), "probe");
        }

        double off_factor = mode == PayloadMode::TxPointer  ? tx_byte_factor
                            : mode == PayloadMode::CasPointer ? cas_byte_factor
                                                              : 0.0;
        for (const auto& r : board.bytes_per_ballot()) {
            rows.push_back({std::string(payload_mode_name(mode)), r.ring_size,
                            r.mean_onledger_bytes, r.mean_offledger_bytes,
                            r.mean_onledger_bytes + off_factor * r.mean_offledger_bytes});
        }
    }
    return rows;
}

}  // namespace ringvote::cli
