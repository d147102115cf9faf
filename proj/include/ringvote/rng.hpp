#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace ringvote {

// Randomness is always an explicit input so protocol operations stay pure
// and seeded runs replay byte-identically.
class RandomSource {
public:
    virtual ~RandomSource() = default;
    virtual void fill(std::span<uint8_t> out) = 0;
};

class SystemRandom final : public RandomSource {
public:
    void fill(std::span<uint8_t> out) override;
};

// ChaCha20 keystream keyed from the seed; every fill() advances the nonce.
class SeededRandom final : public RandomSource {
public:
    explicit SeededRandom(uint64_t seed);
    void fill(std::span<uint8_t> out) override;

private:
    std::array<uint8_t, 32> key_;
    uint64_t counter_ = 0;
};

}  // namespace ringvote
