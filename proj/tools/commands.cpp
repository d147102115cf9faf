#include "commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include "ringvote/bulletin_board.hpp"
#include "ringvote/errors.hpp"
#include "ringvote/escrow.hpp"
#include "ringvote/ring_signature.hpp"
#include "ringvote/stealth.hpp"
#include "ringvote/tally.hpp"

namespace fs = std::filesystem;

namespace ringvote::cli {

namespace {

constexpr std::string_view kKeyFileHeader = "ringvote-secret-key v1";

std::unique_ptr<RandomSource> make_rng(const std::optional<uint64_t>& seed) {
    if (seed) return std::make_unique<SeededRandom>(*seed);
    return std::make_unique<SystemRandom>();
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<size_t> parse_sizes(const std::string& csv) {
    std::vector<size_t> out;
    for (const auto& item : split_list(csv)) out.push_back(std::stoull(item));
    if (out.empty()) throw ConfigError("expected a comma-separated list of sizes");
    return out;
}

std::string random_submitter(RandomSource& rng) {
    std::array<uint8_t, 16> b;
    rng.fill(b);
    return to_hex(b);
}

Board open_board(const fs::path& dir) {
    if (!fs::exists(dir / "ledger.log"))
        throw IoError("no election ledger found in " + dir.string());
    return Board::open(dir);
}

GroupPoint decode_roster_line(const std::string& line) {
    Bytes bytes = from_hex(line);
    if (bytes.size() != 32) throw DecodeError("roster entries must be 32-byte hex points");
    return GroupPoint::decode(bytes);
}

void print_deposits(std::ostream& out, const DepositSummary& d) {
    out << "deposits: total " << d.total << ", refunded " << d.refunded << ", forfeited "
        << d.forfeited << ", held " << d.held << "\n";
}

struct SetupOptions {
    std::string dir;
    std::string election_id = "election";
    std::string candidates_csv;
    size_t voters = 0;
    std::string roster_file;
    size_t managers = 2;
    std::string manager_ids_csv;
    uint16_t min_ring_size = 2;
    std::string mode = "inline";
    uint64_t deposit = 1;
    uint64_t voting_deadline = 0;
    uint64_t reveal_deadline = 0;
    bool stay_in_setup = false;
    std::optional<uint64_t> seed;
};

int cmd_setup(const SetupOptions& opt, std::ostream& out) {
    fs::path dir(opt.dir);
    if (fs::exists(dir / "ledger.log"))
        throw ConfigError("refusing to overwrite existing ledger in " + dir.string());
    auto rng = make_rng(opt.seed);

    ElectionConfig cfg;
    cfg.election_id = opt.election_id;
    cfg.candidates = split_list(opt.candidates_csv);
    cfg.min_ring_size = opt.min_ring_size;
    cfg.payload_mode = parse_payload_mode(opt.mode);
    cfg.deposit_amount = opt.deposit;
    cfg.voting_deadline = opt.voting_deadline;
    cfg.reveal_deadline = opt.reveal_deadline;

    std::vector<KeyPair> voter_keys;
    if (!opt.roster_file.empty()) {
        std::ifstream in(opt.roster_file);
        if (!in) throw IoError("cannot read roster file " + opt.roster_file);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            cfg.roster.push_back(decode_roster_line(line));
        }
    } else {
        if (opt.voters == 0)
            throw ConfigError("either --voters or --roster-file is required");
        for (size_t i = 0; i < opt.voters; i++) {
            voter_keys.push_back(KeyPair::generate(*rng));
            cfg.roster.push_back(voter_keys.back().public_key);
        }
    }

    const bool deferred_managers = !opt.manager_ids_csv.empty();
    std::vector<Scalar> manager_secrets;
    if (deferred_managers) {
        cfg.manager_ids = split_list(opt.manager_ids_csv);
    } else {
        for (size_t k = 0; k < opt.managers; k++) {
            cfg.manager_ids.push_back("mgr" + std::to_string(k));
            manager_secrets.push_back(Scalar::random_nonzero(*rng));
        }
    }

    Board board(cfg);
    for (const auto& key : cfg.roster) board.add_roster_key(key, "registrar");
    if (!deferred_managers) {
        GroupPoint chain = GroupPoint::base();
        for (size_t k = 0; k < cfg.manager_ids.size(); k++) {
            board.add_escrow_commitment(
                commit_share(manager_secrets[k], cfg.manager_ids[k],
                             as_bytes(cfg.election_id), *rng),
                cfg.manager_ids[k]);
            chain = extend_product(chain, manager_secrets[k]);
            board.add_escrow_product(cfg.manager_ids[k], chain, cfg.manager_ids[k]);
        }
        if (!opt.stay_in_setup) board.advance_phase();
    }

    fs::create_directories(dir / "keys");
    for (size_t i = 0; i < voter_keys.size(); i++) {
        write_key_file(dir / "keys" / ("voter_" + std::to_string(i) + ".key"),
                       voter_keys[i].secret);
    }
    for (size_t k = 0; k < manager_secrets.size(); k++) {
        write_key_file(dir / "keys" / ("manager_" + cfg.manager_ids[k] + ".key"),
                       manager_secrets[k]);
    }
    board.save(dir);

    out << "election " << cfg.election_id << " created: " << board.entries().size()
        << " ledger entries, phase " << phase_name(board.phase()) << "\n";
    if (!deferred_managers)
        out << "election public key: " << to_hex(board.election_pubkey().bytes()) << "\n";
    if (!voter_keys.empty())
        out << "voter keys written to " << (dir / "keys").string() << "\n";
    return kOk;
}

struct VoteOptions {
    std::string dir;
    std::string key_file;
    std::string candidate;
    size_t ring_size = 0;  // 0: use the election minimum
    std::string ring_csv;
    std::string submitter;
    std::optional<uint64_t> seed;
};

int cmd_vote(const VoteOptions& opt, std::ostream& out, std::ostream& err) {
    Board board = open_board(opt.dir);
    auto rng = make_rng(opt.seed);
    const ElectionConfig cfg = board.config();

    Scalar secret = read_key_file(opt.key_file);
    KeyPair voter = KeyPair::from_secret(secret);
    auto voter_index = board.roster_index(voter.public_key);
    if (!voter_index) throw ConfigError("voter key is not in the roster");

    size_t candidate = cfg.candidates.size();
    for (size_t j = 0; j < cfg.candidates.size(); j++) {
        if (cfg.candidates[j] == opt.candidate) candidate = j;
    }
    if (candidate == cfg.candidates.size())
        throw ConfigError("unknown candidate: " + opt.candidate);

    std::set<size_t> chosen = {*voter_index};
    if (!opt.ring_csv.empty()) {
        for (const auto& item : split_list(opt.ring_csv)) {
            size_t idx = std::stoull(item);
            if (idx >= cfg.roster.size())
                throw ConfigError("ring index " + item + " outside the roster");
            chosen.insert(idx);
        }
    } else {
        size_t want = opt.ring_size == 0 ? cfg.min_ring_size : opt.ring_size;
        if (want > cfg.roster.size())
            throw ConfigError("requested ring size exceeds the roster");
        std::array<uint8_t, 8> b;
        while (chosen.size() < want) {
            rng->fill(b);
            uint64_t v = 0;
            for (int i = 0; i < 8; i++) v |= static_cast<uint64_t>(b[i]) << (8 * i);
            chosen.insert(v % cfg.roster.size());
        }
    }
    if (chosen.size() < cfg.min_ring_size) {
        err << "warning: ring size " << chosen.size() << " is below the election minimum "
            << cfg.min_ring_size << "; this ballot will be rejected at tally\n";
    }

    std::vector<GroupPoint> members;
    size_t signer = 0;
    for (size_t idx : chosen) {
        if (idx == *voter_index) signer = members.size();
        members.push_back(cfg.roster[idx]);
    }
    Ring ring = Ring::of(std::move(members));

    std::string submitter = opt.submitter.empty() ? random_submitter(*rng) : opt.submitter;
    // anonymity lint: a submitter id derived from a roster key would link
    // the ballot to its voter
    for (const auto& key : cfg.roster) {
        if (submitter == to_hex(key.bytes()) || submitter == to_hex(sha256(key.bytes())))
            throw ConfigError("submitter id must not be a roster key fingerprint");
    }

    Ballot ballot = make_ballot(board.election_pubkey(),
                                encode_candidate(cfg.candidates[candidate]), *rng);
    SignedBallot signed_ballot = cast(ballot, ring, signer, voter, *rng);
    const LedgerEntry& entry = board.submit_ballot(signed_ballot, submitter);
    board.save(opt.dir);

    out << "ballot accepted as entry " << entry.index << " (ring size " << ring.size()
        << ", submitter " << submitter << ")\n";
    return kOk;
}

int cmd_register_manager(const std::string& id, const std::string& out_file,
                         const std::optional<uint64_t>& seed, std::ostream& out) {
    if (id.empty()) throw ConfigError("manager id must be nonempty");
    auto rng = make_rng(seed);
    Scalar secret = Scalar::random_nonzero(*rng);
    write_key_file(out_file, secret);
    out << "manager " << id << " key written to " << out_file << "\n";
    out << "share point: " << to_hex(GroupPoint::mul_base(secret).bytes()) << "\n";
    return kOk;
}

int cmd_commit(const std::string& dir, const std::string& id, const std::string& key_file,
               const std::optional<uint64_t>& seed, std::ostream& out) {
    Board board = open_board(dir);
    auto rng = make_rng(seed);
    Scalar secret = read_key_file(key_file);

    board.add_escrow_commitment(
        commit_share(secret, id, as_bytes(board.config().election_id), *rng), id);
    GroupPoint previous = board.escrow().running_products().empty()
                              ? GroupPoint::base()
                              : board.escrow().running_products().back();
    GroupPoint product = extend_product(previous, secret);
    board.add_escrow_product(id, product, id);
    board.save(dir);

    out << "manager " << id << " committed; partial product "
        << to_hex(product.bytes()) << "\n";
    return kOk;
}

int cmd_advance_phase(const std::string& dir, std::ostream& out) {
    Board board = open_board(dir);
    board.advance_phase();
    board.save(dir);
    out << "phase advanced to " << phase_name(board.phase()) << "\n";
    return kOk;
}

int cmd_reveal(const std::string& dir, const std::string& id, const std::string& key_file,
               std::ostream& out) {
    Board board = open_board(dir);
    Scalar secret = read_key_file(key_file);
    // reveals are not anonymous; the payload names the manager anyway
    board.add_escrow_reveal(id, secret, id);
    board.save(dir);
    out << "manager " << id << " revealed; deposit refundable\n";
    return kOk;
}

int cmd_tally(const std::string& dir, const std::string& report_file, unsigned workers,
              std::ostream& out, std::ostream& err) {
    Board board = open_board(dir);

    Scalar secret;
    try {
        secret = board.escrow().combine_secret();
    } catch (const EscrowError&) {
        auto missing = board.escrow().missing_reveals();
        if (!missing.empty()) {
            err << "cannot tally: defaulting managers forfeited their deposits:";
            for (const auto& m : missing) err << ' ' << m;
            err << "\n";
            print_deposits(err, board.deposit_summary());
        }
        throw;
    }

    TallyReport report = tally(board, secret, {.workers = workers});
    fs::path path = report_file.empty() ? fs::path(dir) / "tally-report.txt"
                                        : fs::path(report_file);
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw IoError("cannot write report file " + path.string());
    f << encode_report(report);
    f.close();

    for (const auto& [name, count] : report.counts) out << name << ": " << count << "\n";
    out << "accepted: " << report.accepted.size() << "\n";
    out << "rejected: " << report.rejected.size() << "\n";
    print_deposits(out, board.deposit_summary());
    out << "report written to " << path.string() << "\n";
    return kOk;
}

int cmd_verify_report(const std::string& dir, const std::string& report_file,
                      std::ostream& out) {
    Board board = open_board(dir);
    std::ifstream f(report_file);
    if (!f) throw IoError("cannot read report file " + report_file);
    std::stringstream buf;
    buf << f.rdbuf();
    TallyReport report = decode_report(buf.str());
    Scalar secret = board.escrow().combine_secret();
    if (verify_report(board, secret, report)) {
        out << "report verified: OK\n";
        return kOk;
    }
    out << "report verified: MISMATCH\n";
    return kFailure;
}

int cmd_bench(const std::string& sizes_csv, size_t reps, const std::string& out_file,
              const std::optional<uint64_t>& seed, std::ostream& out) {
    auto rng = make_rng(seed);
    BenchResult result = run_bench(parse_sizes(sizes_csv), reps, *rng);

    std::ostringstream table;
    table << "ring_size\tsign_ms\tverify_ms\tverify_sign_ratio\n";
    table << std::fixed << std::setprecision(3);
    for (const auto& r : result.rows) {
        table << r.ring_size << '\t' << r.sign_ms << '\t' << r.verify_ms << '\t'
              << (r.verify_ms / r.sign_ms) << "\n";
    }
    table << "# linear fit: sign_ms = " << result.fit_intercept_ms << " + "
          << result.fit_slope_ms << " * ring_size, r2 = " << std::setprecision(5)
          << result.fit_r2 << "\n";

    out << table.str();
    if (!out_file.empty()) {
        std::ofstream f(out_file, std::ios::trunc);
        if (!f) throw IoError("cannot write " + out_file);
        f << table.str();
    }
    return kOk;
}

int cmd_cost(const std::string& sizes_csv, const std::string& modes_csv, size_t roster,
             double tx_factor, double cas_factor, const std::string& out_file,
             const std::optional<uint64_t>& seed, std::ostream& out) {
    auto rng = make_rng(seed);
    std::vector<size_t> sizes = parse_sizes(sizes_csv);
    std::vector<std::string> modes = split_list(modes_csv);
    if (roster == 0) {
        for (size_t n : sizes) roster = std::max(roster, n);
    }
    auto rows = run_cost(sizes, modes, roster, tx_factor, cas_factor, *rng);

    std::ostringstream table;
    table << "mode\tring_size\tonledger_bytes\toffledger_bytes\tweighted_cost\n";
    table << std::fixed << std::setprecision(1);
    for (const auto& r : rows) {
        table << r.mode << '\t' << r.ring_size << '\t' << r.onledger_bytes << '\t'
              << r.offledger_bytes << '\t' << r.weighted_cost << "\n";
    }
    out << table.str();
    if (!out_file.empty()) {
        std::ofstream f(out_file, std::ios::trunc);
        if (!f) throw IoError("cannot write " + out_file);
        f << table.str();
    }
    return kOk;
}

}  // namespace

void write_key_file(const fs::path& path, const Scalar& secret) {
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw IoError("cannot write key file " + path.string());
    f << kKeyFileHeader << "\n" << to_hex(secret.bytes()) << "\n";
}

Scalar read_key_file(const fs::path& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot read key file " + path.string());
    std::string header, hex;
    if (!std::getline(f, header) || header != kKeyFileHeader)
        throw DecodeError("unrecognized key file header in " + path.string());
    if (!std::getline(f, hex)) throw DecodeError("key file has no key line");
    return Scalar::decode(from_hex(hex));
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"ringvote: anonymous desk-scale elections on a simulated bulletin board"};
    app.require_subcommand(1);
    app.footer(
        "Exit codes: 0 ok, 1 failure, 2 invalid config/input, 3 wrong phase,\n"
        "4 malformed bytes, 5 escrow violation, 6 chain/store integrity,\n"
        "7 file I/O, 8 bad argument, 64 usage error.");

    int rc = kOk;

    SetupOptions setup;
    auto* s_setup = app.add_subcommand("setup", "create an election ledger");
    s_setup->add_option("--dir", setup.dir, "election directory")->required();
    s_setup->add_option("--candidates", setup.candidates_csv, "comma-separated names")
        ->required();
    s_setup->add_option("--election-id", setup.election_id);
    s_setup->add_option("--voters", setup.voters, "generate this many voter keys");
    s_setup->add_option("--roster-file", setup.roster_file,
                        "file of hex public keys (pre-authenticated roster)");
    s_setup->add_option("--managers", setup.managers, "generate this many key managers");
    s_setup->add_option("--manager-ids", setup.manager_ids_csv,
                        "defer to external managers with these ids (stays in setup)");
    s_setup->add_option("--min-ring-size", setup.min_ring_size);
    s_setup->add_option("--mode", setup.mode, "inline | tx-pointer | cas-pointer");
    s_setup->add_option("--deposit", setup.deposit, "deposit units per manager");
    s_setup->add_option("--voting-deadline", setup.voting_deadline,
                        "max entry index for ballots (0 = none)");
    s_setup->add_option("--reveal-deadline", setup.reveal_deadline,
                        "max entry index for reveals (0 = none)");
    s_setup->add_flag("--stay-in-setup", setup.stay_in_setup,
                      "do not advance to voting after setup");
    s_setup->add_option("--seed", setup.seed, "deterministic run seed");
    s_setup->callback([&] { rc = cmd_setup(setup, out); });

    std::string rm_id, rm_out;
    std::optional<uint64_t> rm_seed;
    auto* s_rm = app.add_subcommand("register-manager", "generate a manager key file");
    s_rm->add_option("--id", rm_id)->required();
    s_rm->add_option("--out", rm_out, "key file path")->required();
    s_rm->add_option("--seed", rm_seed);
    s_rm->callback([&] { rc = cmd_register_manager(rm_id, rm_out, rm_seed, out); });

    std::string c_dir, c_id, c_key;
    std::optional<uint64_t> c_seed;
    auto* s_commit = app.add_subcommand("commit", "publish a manager commitment + product");
    s_commit->add_option("--dir", c_dir)->required();
    s_commit->add_option("--id", c_id)->required();
    s_commit->add_option("--key", c_key)->required();
    s_commit->add_option("--seed", c_seed);
    s_commit->callback([&] { rc = cmd_commit(c_dir, c_id, c_key, c_seed, out); });

    VoteOptions vote;
    auto* s_vote = app.add_subcommand("vote", "cast an anonymous ballot");
    s_vote->add_option("--dir", vote.dir)->required();
    s_vote->add_option("--key", vote.key_file, "voter secret key file")->required();
    s_vote->add_option("--candidate", vote.candidate)->required();
    s_vote->add_option("--ring-size", vote.ring_size,
                       "anonymity set size (default: election minimum)");
    s_vote->add_option("--ring", vote.ring_csv, "explicit roster indices");
    s_vote->add_option("--submitter", vote.submitter, "submitter id (default: random)");
    s_vote->add_option("--seed", vote.seed);
    s_vote->callback([&] { rc = cmd_vote(vote, out, err); });

    std::string a_dir;
    auto* s_advance = app.add_subcommand("advance-phase", "move to the next phase");
    s_advance->add_option("--dir", a_dir)->required();
    s_advance->callback([&] { rc = cmd_advance_phase(a_dir, out); });

    std::string r_dir, r_id, r_key;
    auto* s_reveal = app.add_subcommand("reveal", "open a manager's escrow share");
    s_reveal->add_option("--dir", r_dir)->required();
    s_reveal->add_option("--id", r_id)->required();
    s_reveal->add_option("--key", r_key)->required();
    s_reveal->callback([&] { rc = cmd_reveal(r_dir, r_id, r_key, out); });

    std::string t_dir, t_out;
    unsigned t_workers = 1;
    auto* s_tally = app.add_subcommand("tally", "compute and audit the result");
    s_tally->add_option("--dir", t_dir)->required();
    s_tally->add_option("--out", t_out, "report path (default: <dir>/tally-report.txt)");
    s_tally->add_option("--workers", t_workers, "parallel verification lanes");
    s_tally->callback([&] { rc = cmd_tally(t_dir, t_out, t_workers, out, err); });

    std::string v_dir, v_report;
    auto* s_verify = app.add_subcommand("verify-report", "recompute and compare a report");
    s_verify->add_option("--dir", v_dir)->required();
    s_verify->add_option("--report", v_report)->required();
    s_verify->callback([&] { rc = cmd_verify_report(v_dir, v_report, out); });

    std::string b_sizes = "2,4,8,16,32,64", b_out;
    size_t b_reps = 20;
    std::optional<uint64_t> b_seed;
    auto* s_bench = app.add_subcommand("bench", "sign/verify timing vs ring size");
    s_bench->add_option("--sizes", b_sizes, "comma-separated ring sizes");
    s_bench->add_option("--reps", b_reps, "repetitions per size");
    s_bench->add_option("--out", b_out, "write the table to this file");
    s_bench->add_option("--seed", b_seed);
    s_bench->callback([&] { rc = cmd_bench(b_sizes, b_reps, b_out, b_seed, out); });

    std::string k_sizes = "2,8,32", k_modes = "inline,tx-pointer,cas-pointer", k_out;
    size_t k_roster = 0;
    double k_tx = 0.05, k_cas = 0.0;
    std::optional<uint64_t> k_seed;
    auto* s_cost = app.add_subcommand("cost", "on-ledger bytes per ballot by payload mode");
    s_cost->add_option("--sizes", k_sizes, "comma-separated ring sizes");
    s_cost->add_option("--modes", k_modes);
    s_cost->add_option("--roster", k_roster, "roster size (default: largest ring)");
    s_cost->add_option("--tx-byte-factor", k_tx, "cost weight of a tx-table byte");
    s_cost->add_option("--cas-byte-factor", k_cas, "cost weight of a stored blob byte");
    s_cost->add_option("--out", k_out, "write the table to this file");
    s_cost->add_option("--seed", k_seed);
    s_cost->callback(
        [&] { rc = cmd_cost(k_sizes, k_modes, k_roster, k_tx, k_cas, k_out, k_seed, out); });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsageError;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const PhaseError& e) {
        err << "error: " << e.what() << "\n";
        return kPhaseError;
    } catch (const DecodeError& e) {
        err << "error: " << e.what() << "\n";
        return kDecodeError;
    } catch (const EscrowError& e) {
        err << "error: " << e.what() << "\n";
        return kEscrowError;
    } catch (const ChainError& e) {
        err << "error: " << e.what() << "\n";
        return kChainError;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kArgumentError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
    return rc;
}

}  // namespace ringvote::cli
