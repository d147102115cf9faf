#include "ringvote/escrow.hpp"

#include <algorithm>

#include "ringvote/errors.hpp"

namespace ringvote {

namespace {

constexpr std::string_view kProofTag = "ringvote.pok.v1";

Scalar proof_challenge(std::span<const uint8_t> context, std::string_view manager_id,
                       const GroupPoint& share_point, const GroupPoint& commitment) {
    ByteWriter w;
    w.raw(as_bytes(kProofTag));
    w.lp_bytes(context);
    w.lp_str(manager_id);
    w.raw(share_point.bytes());
    w.raw(commitment.bytes());
    return hash_to_scalar(w.bytes());
}

}  // namespace

Bytes ManagerCommitment::encode() const {
    ByteWriter w;
    w.lp_str(manager_id);
    w.raw(share_point.bytes());
    w.raw(proof.commitment.bytes());
    w.raw(proof.challenge.bytes());
    w.raw(proof.response.bytes());
    return w.take();
}

ManagerCommitment ManagerCommitment::decode(std::span<const uint8_t> in) {
    ByteReader rd(in);
    ManagerCommitment c;
    c.manager_id = rd.lp_str();
    c.share_point = GroupPoint::decode(rd.raw(32));
    c.proof.commitment = GroupPoint::decode(rd.raw(32));
    c.proof.challenge = Scalar::decode(rd.raw(32));
    c.proof.response = Scalar::decode(rd.raw(32));
    rd.expect_end();
    return c;
}

ManagerCommitment commit_share(const Scalar& manager_secret,
                               std::string_view manager_id,
                               std::span<const uint8_t> context,
                               RandomSource& rng) {
    if (manager_secret.is_zero()) throw ConfigError("manager secret must be nonzero");
    ManagerCommitment out;
    out.manager_id = manager_id;
    out.share_point = GroupPoint::mul_base(manager_secret);
    const Scalar t = Scalar::random_nonzero(rng);
    out.proof.commitment = GroupPoint::mul_base(t);
    out.proof.challenge =
        proof_challenge(context, manager_id, out.share_point, out.proof.commitment);
    out.proof.response = t + out.proof.challenge * manager_secret;
    return out;
}

bool verify_commitment(const ManagerCommitment& c, std::span<const uint8_t> context) {
    if (c.share_point.is_identity()) return false;
    const Scalar expected =
        proof_challenge(context, c.manager_id, c.share_point, c.proof.commitment);
    if (!(expected == c.proof.challenge)) return false;
    return GroupPoint::mul_base(c.proof.response) ==
           c.proof.commitment + c.proof.challenge * c.share_point;
}

GroupPoint extend_product(const GroupPoint& previous, const Scalar& manager_secret) {
    return manager_secret * previous;
}

const ManagerCommitment* EscrowState::find(std::string_view manager_id) const {
    auto it = std::find_if(commitments_.begin(), commitments_.end(),
                           [&](const auto& c) { return c.manager_id == manager_id; });
    return it == commitments_.end() ? nullptr : &*it;
}

void EscrowState::add_commitment(ManagerCommitment commitment,
                                 std::span<const uint8_t> context, uint64_t deposit) {
    if (closed_) throw EscrowError("commit phase is closed");
    if (find(commitment.manager_id))
        throw EscrowError("duplicate commitment from manager " + commitment.manager_id);
    if (!verify_commitment(commitment, context))
        throw EscrowError("proof of knowledge does not verify for manager " +
                          commitment.manager_id);
    for (const auto& c : commitments_) {
        if (c.share_point == commitment.share_point)
            throw EscrowError("share point already committed by manager " + c.manager_id);
    }
    deposits_[commitment.manager_id] = deposit;
    commitments_.push_back(std::move(commitment));
}

void EscrowState::record_product(std::string_view manager_id, const GroupPoint& product) {
    if (closed_) throw EscrowError("commit phase is closed");
    const size_t k = running_products_.size();
    if (k >= commitments_.size())
        throw EscrowError("every committed manager already published a product");
    if (commitments_[k].manager_id != manager_id)
        throw EscrowError("products must be published in commitment order; expected " +
                          commitments_[k].manager_id);
    if (product.is_identity()) throw EscrowError("partial product must not be the identity");
    // The first product must equal the first manager's own share point.
    if (k == 0 && !(product == commitments_[0].share_point))
        throw EscrowError("first partial product must equal the first share point");
    running_products_.push_back(product);
}

void EscrowState::close_commitments() {
    if (closed_) throw EscrowError("commit phase already closed");
    if (commitments_.empty()) throw EscrowError("no manager commitments");
    if (running_products_.size() != commitments_.size())
        throw EscrowError("not every manager published a partial product");
    closed_ = true;
}

void EscrowState::reveal(std::string_view manager_id, const Scalar& secret) {
    if (!closed_) throw EscrowError("reveal before commit phase closed");
    const ManagerCommitment* c = find(manager_id);
    if (!c) throw EscrowError("unknown manager " + std::string(manager_id));
    if (reveals_.count(c->manager_id))
        throw EscrowError("duplicate reveal from manager " + c->manager_id);
    if (!(GroupPoint::mul_base(secret) == c->share_point))
        throw EscrowError("reveal does not open the commitment of manager " +
                          c->manager_id + "; deposit remains forfeit");
    reveals_.emplace(c->manager_id, secret);
}

std::vector<std::string> EscrowState::missing_reveals() const {
    std::vector<std::string> out;
    for (const auto& c : commitments_) {
        if (!reveals_.count(c.manager_id)) out.push_back(c.manager_id);
    }
    return out;
}

Scalar EscrowState::combine_secret() const {
    auto missing = missing_reveals();
    if (!closed_ || commitments_.empty())
        throw EscrowError("cannot combine: commit phase not closed");
    if (!missing.empty()) {
        std::string names;
        for (const auto& m : missing) names += (names.empty() ? "" : ", ") + m;
        throw EscrowError("cannot combine: missing reveals from " + names);
    }
    Scalar product = Scalar::from_u64(1);
    GroupPoint chain = GroupPoint::base();
    for (size_t k = 0; k < commitments_.size(); k++) {
        const Scalar& secret = reveals_.at(commitments_[k].manager_id);
        product = product * secret;
        chain = extend_product(chain, secret);
        if (!(chain == running_products_[k]))
            throw EscrowError("revealed secrets do not reproduce the published product of " +
                              commitments_[k].manager_id);
    }
    if (!(GroupPoint::mul_base(product) == election_pubkey()))
        throw EscrowError("combined secret does not match the election public key");
    return product;
}

const GroupPoint& EscrowState::election_pubkey() const {
    if (running_products_.empty() || running_products_.size() != commitments_.size())
        throw EscrowError("partial-product chain incomplete");
    return running_products_.back();
}

DepositSummary EscrowState::deposit_summary(bool final_accounting) const {
    DepositSummary s;
    for (const auto& [id, amount] : deposits_) {
        s.total += amount;
        if (reveals_.count(id)) {
            s.refunded += amount;
        } else if (final_accounting) {
            s.forfeited += amount;
        } else {
            s.held += amount;
        }
    }
    return s;
}

Bytes EscrowState::serialize() const {
    ByteWriter w;
    w.u8(closed_ ? 1 : 0);
    w.u16(static_cast<uint16_t>(commitments_.size()));
    for (const auto& c : commitments_) {
        w.lp_bytes(c.encode());
        w.u64(deposits_.at(c.manager_id));
    }
    w.u16(static_cast<uint16_t>(running_products_.size()));
    for (const auto& p : running_products_) w.raw(p.bytes());
    w.u16(static_cast<uint16_t>(reveals_.size()));
    for (const auto& [id, secret] : reveals_) {
        w.lp_str(id);
        w.raw(secret.bytes());
    }
    return w.take();
}

}  // namespace ringvote
