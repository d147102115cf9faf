#include "ringvote/bytes.hpp"

#include <sodium.h>

#include "ringvote/errors.hpp"

namespace ringvote {

std::string to_hex(std::span<const uint8_t> data) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(data.size() * 2);
    for (uint8_t b : data) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0x0f]);
    }
    return out;
}

static int nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

Bytes from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) throw DecodeError("hex string has odd length");
    Bytes out;
    out.reserve(hex.size() / 2);
    for (size_t i = 0; i < hex.size(); i += 2) {
        int hi = nibble(hex[i]);
        int lo = nibble(hex[i + 1]);
        if (hi < 0 || lo < 0) throw DecodeError("invalid hex digit");
        out.push_back(static_cast<uint8_t>(hi << 4 | lo));
    }
    return out;
}

Digest sha256(std::span<const uint8_t> data) {
    Digest out;
    crypto_hash_sha256(out.data(), data.data(), data.size());
    return out;
}

std::array<uint8_t, 64> sha512(std::span<const uint8_t> data) {
    std::array<uint8_t, 64> out;
    crypto_hash_sha512(out.data(), data.data(), data.size());
    return out;
}

void ByteWriter::u16(uint16_t v) {
    buf_.push_back(static_cast<uint8_t>(v));
    buf_.push_back(static_cast<uint8_t>(v >> 8));
}

void ByteWriter::u32(uint32_t v) {
    for (int i = 0; i < 4; i++) buf_.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void ByteWriter::u64(uint64_t v) {
    for (int i = 0; i < 8; i++) buf_.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void ByteWriter::raw(std::span<const uint8_t> data) {
    buf_.insert(buf_.end(), data.begin(), data.end());
}

void ByteWriter::lp_bytes(std::span<const uint8_t> data) {
    if (data.size() > 0xffff) throw DecodeError("length-prefixed field too long");
    u16(static_cast<uint16_t>(data.size()));
    raw(data);
}

void ByteWriter::lp_str(std::string_view s) { lp_bytes(as_bytes(s)); }

uint8_t ByteReader::u8() {
    if (remaining() < 1) throw DecodeError("truncated input");
    return data_[pos_++];
}

uint16_t ByteReader::u16() {
    if (remaining() < 2) throw DecodeError("truncated input");
    uint16_t v = static_cast<uint16_t>(data_[pos_]) |
                 static_cast<uint16_t>(data_[pos_ + 1]) << 8;
    pos_ += 2;
    return v;
}

uint32_t ByteReader::u32() {
    if (remaining() < 4) throw DecodeError("truncated input");
    uint32_t v = 0;
    for (int i = 0; i < 4; i++) v |= static_cast<uint32_t>(data_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
}

uint64_t ByteReader::u64() {
    if (remaining() < 8) throw DecodeError("truncated input");
    uint64_t v = 0;
    for (int i = 0; i < 8; i++) v |= static_cast<uint64_t>(data_[pos_ + i]) << (8 * i);
    pos_ += 8;
    return v;
}

std::span<const uint8_t> ByteReader::raw(size_t n) {
    if (remaining() < n) throw DecodeError("truncated input");
    auto s = data_.subspan(pos_, n);
    pos_ += n;
    return s;
}

Bytes ByteReader::lp_bytes() {
    size_t n = u16();
    auto s = raw(n);
    return Bytes(s.begin(), s.end());
}

std::string ByteReader::lp_str() {
    size_t n = u16();
    auto s = raw(n);
    return std::string(s.begin(), s.end());
}

void ByteReader::expect_end() const {
    if (pos_ != data_.size()) throw DecodeError("trailing bytes after record");
}

}  // namespace ringvote
