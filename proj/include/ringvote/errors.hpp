#pragma once

#include <stdexcept>
#include <string>

namespace ringvote {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or non-canonical bytes: hex, scalar/point encodings, wire framing.
struct DecodeError : Error {
    using Error::Error;
};

// Invalid election parameters or key material supplied by the operator.
struct ConfigError : Error {
    using Error::Error;
};

// Operation not admissible in the ledger's current phase.
struct PhaseError : Error {
    using Error::Error;
};

// Escrow protocol violations: bad reveal, duplicate reveal, missing reveals,
// secret/public-key mismatch.
struct EscrowError : Error {
    using Error::Error;
};

// Hash-chain or content-store integrity failure.
struct ChainError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace ringvote
