#pragma once

#include <cstdint>
#include <cstring>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace netforge {

/// Appends big-endian integers and raw bytes to a growing buffer.
class ByteWriter {
public:
    void u8(std::uint8_t v) { buf_.push_back(v); }

    void u16be(std::uint16_t v) {
        buf_.push_back(static_cast<std::uint8_t>(v >> 8));
        buf_.push_back(static_cast<std::uint8_t>(v & 0xFF));
    }

    void u32be(std::uint32_t v) {
        buf_.push_back(static_cast<std::uint8_t>(v >> 24));
        buf_.push_back(static_cast<std::uint8_t>((v >> 16) & 0xFF));
        buf_.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
        buf_.push_back(static_cast<std::uint8_t>(v & 0xFF));
    }

    void u64be(std::uint64_t v) {
        u32be(static_cast<std::uint32_t>(v >> 32));
        u32be(static_cast<std::uint32_t>(v & 0xFFFFFFFFULL));
    }

    void raw(std::span<const std::uint8_t> bytes) {
        buf_.insert(buf_.end(), bytes.begin(), bytes.end());
    }

    void raw(std::string_view s) {
        buf_.insert(buf_.end(), s.begin(), s.end());
    }

    /// Writes a string followed by the NUL terminator (TFTP string fields).
    void cstring(std::string_view s) {
        raw(s);
        buf_.push_back(0);
    }

    void pad_to(std::size_t size, std::uint8_t fill = 0) {
        if (buf_.size() < size) buf_.resize(size, fill);
    }

    std::size_t size() const { return buf_.size(); }
    std::vector<std::uint8_t> take() { return std::move(buf_); }
    const std::vector<std::uint8_t>& bytes() const { return buf_; }

private:
    std::vector<std::uint8_t> buf_;
};

/// Bounds-checked cursor over a byte buffer. Every read reports failure via
/// std::optional so callers can map overruns to typed errors.
class ByteReader {
public:
    explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

    std::size_t remaining() const { return data_.size() - pos_; }
    std::size_t position() const { return pos_; }
    bool exhausted() const { return pos_ == data_.size(); }

    std::optional<std::uint8_t> u8() {
        if (remaining() < 1) return std::nullopt;
        return data_[pos_++];
    }

    std::optional<std::uint16_t> u16be() {
        if (remaining() < 2) return std::nullopt;
        std::uint16_t v = static_cast<std::uint16_t>(data_[pos_] << 8 | data_[pos_ + 1]);
        pos_ += 2;
        return v;
    }

    std::optional<std::uint32_t> u32be() {
        if (remaining() < 4) return std::nullopt;
        std::uint32_t v = (static_cast<std::uint32_t>(data_[pos_]) << 24) |
                          (static_cast<std::uint32_t>(data_[pos_ + 1]) << 16) |
                          (static_cast<std::uint32_t>(data_[pos_ + 2]) << 8) |
                          static_cast<std::uint32_t>(data_[pos_ + 3]);
        pos_ += 4;
        return v;
    }

    std::optional<std::uint64_t> u64be() {
        auto hi = u32be();
        if (!hi) return std::nullopt;
        auto lo = u32be();
        if (!lo) return std::nullopt;
        return (static_cast<std::uint64_t>(*hi) << 32) | *lo;
    }

    std::optional<std::span<const std::uint8_t>> raw(std::size_t n) {
        if (remaining() < n) return std::nullopt;
        auto out = data_.subspan(pos_, n);
        pos_ += n;
        return out;
    }

    /// Reads up to the next NUL byte (exclusive); fails if none remains.
    std::optional<std::string> cstring() {
        for (std::size_t i = pos_; i < data_.size(); ++i) {
            if (data_[i] == 0) {
                std::string s(reinterpret_cast<const char*>(data_.data() + pos_), i - pos_);
                pos_ = i + 1;
                return s;
            }
        }
        return std::nullopt;
    }

private:
    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
};

inline bool is_printable_ascii(std::string_view s) {
    for (unsigned char c : s) {
        if (c < 0x20 || c > 0x7E) return false;
    }
    return true;
}

std::string to_hex(std::span<const std::uint8_t> bytes);
std::optional<std::vector<std::uint8_t>> from_hex(std::string_view hex);

}  // namespace netforge
