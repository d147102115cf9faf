#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ringvote {

using Bytes = std::vector<uint8_t>;
using Digest = std::array<uint8_t, 32>;

std::string to_hex(std::span<const uint8_t> data);
Bytes from_hex(std::string_view hex);  // throws DecodeError

Digest sha256(std::span<const uint8_t> data);
std::array<uint8_t, 64> sha512(std::span<const uint8_t> data);

inline std::span<const uint8_t> as_bytes(std::string_view s) {
    return {reinterpret_cast<const uint8_t*>(s.data()), s.size()};
}

// Little-endian canonical framing for every wire format in the project.
class ByteWriter {
public:
    void u8(uint8_t v) { buf_.push_back(v); }
    void u16(uint16_t v);
    void u32(uint32_t v);
    void u64(uint64_t v);
    void raw(std::span<const uint8_t> data);
    void lp_bytes(std::span<const uint8_t> data);  // u16 length prefix
    void lp_str(std::string_view s);

    const Bytes& bytes() const { return buf_; }
    Bytes take() { return std::move(buf_); }

private:
    Bytes buf_;
};

class ByteReader {
public:
    explicit ByteReader(std::span<const uint8_t> data) : data_(data) {}

    uint8_t u8();
    uint16_t u16();
    uint32_t u32();
    uint64_t u64();
    std::span<const uint8_t> raw(size_t n);
    Bytes lp_bytes();
    std::string lp_str();
    template <size_t N>
    std::array<uint8_t, N> fixed() {
        auto s = raw(N);
        std::array<uint8_t, N> out;
        std::copy(s.begin(), s.end(), out.begin());
        return out;
    }

    size_t remaining() const { return data_.size() - pos_; }
    void expect_end() const;  // throws DecodeError on trailing bytes

private:
    std::span<const uint8_t> data_;
    size_t pos_ = 0;
};

}  // namespace ringvote
