#include "ringvote/rng.hpp"

#include <sodium.h>

#include <cstring>

#include "ringvote/bytes.hpp"

namespace ringvote {

void SystemRandom::fill(std::span<uint8_t> out) {
    randombytes_buf(out.data(), out.size());
}

SeededRandom::SeededRandom(uint64_t seed) {
    ByteWriter w;
    w.raw(as_bytes("ringvote.rng.v1"));
    w.u64(seed);
    auto h = sha512(w.bytes());
    std::memcpy(key_.data(), h.data(), key_.size());
}

void SeededRandom::fill(std::span<uint8_t> out) {
    uint8_t nonce[crypto_stream_chacha20_NONCEBYTES];
    for (int i = 0; i < 8; i++) nonce[i] = static_cast<uint8_t>(counter_ >> (8 * i));
    counter_++;
    crypto_stream_chacha20(out.data(), out.size(), nonce, key_.data());
}

}  // namespace ringvote
