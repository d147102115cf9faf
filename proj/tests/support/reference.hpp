#pragma once

// Test-only oracles, kept independent of the implementation paths they
// check: scalar multiplication here is plain double-and-add over the
// public point-addition operator, never libsodium's scalarmult.

#include <fstream>
#include <map>
#include <span>
#include <string>

#include "ringvote/errors.hpp"
#include "ringvote/group.hpp"

namespace ringvote::testing {

// s*P by binary double-and-add over a little-endian byte scalar. Accepts
// unreduced scalars (e.g. the group order itself) on purpose.
inline GroupPoint reference_mul(std::span<const uint8_t> scalar_le, const GroupPoint& p) {
    GroupPoint acc = GroupPoint::identity();
    GroupPoint doubling = p;
    for (uint8_t byte : scalar_le) {
        for (int bit = 0; bit < 8; bit++) {
            if (byte & (1u << bit)) acc = acc + doubling;
            doubling = doubling + doubling;
        }
    }
    return acc;
}

inline GroupPoint reference_mul(const Scalar& s, const GroupPoint& p) {
    return reference_mul(s.bytes(), p);
}

// Frozen vectors from docs/test-vectors.txt ("key = value" lines).
inline std::map<std::string, std::string> load_vectors(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open vector file " + path);
    std::map<std::string, std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        size_t sep = line.find(" = ");
        if (sep == std::string::npos) throw DecodeError("malformed vector line: " + line);
        out[line.substr(0, sep)] = line.substr(sep + 3);
    }
    return out;
}

}  // namespace ringvote::testing
