#include "netforge/wire/tftp.hpp"

#include "netforge/bytes.hpp"

namespace netforge::wire {

namespace {

Result<std::vector<std::uint8_t>, WireError> check_text(std::string_view what,
                                                        std::string_view s) {
    if (!is_printable_ascii(s)) {
        return WireError{WireErrorKind::invalid_packet,
                         std::string(what) + " is not printable ASCII"};
    }
    return std::vector<std::uint8_t>{};
}

Result<std::vector<std::uint8_t>, WireError> encode_request(TftpOpcode op,
                                                            const std::string& filename,
                                                            const std::string& mode,
                                                            const TftpOptions& options) {
    if (auto r = check_text("filename", filename); !r) return r.error();
    if (auto r = check_text("mode", mode); !r) return r.error();
    if (filename.empty()) {
        return WireError{WireErrorKind::invalid_packet, "empty filename"};
    }
    ByteWriter w;
    w.u16be(static_cast<std::uint16_t>(op));
    w.cstring(filename);
    w.cstring(mode);
    for (const auto& [name, value] : options) {
        if (auto r = check_text("option name", name); !r) return r.error();
        if (auto r = check_text("option value", value); !r) return r.error();
        if (name.empty()) {
            return WireError{WireErrorKind::invalid_packet, "empty option name"};
        }
        w.cstring(name);
        w.cstring(value);
    }
    return w.take();
}

// Trailing (name, value) NUL-terminated pairs; an odd remainder is malformed.
Result<TftpOptions, WireError> decode_options(ByteReader& r) {
    TftpOptions opts;
    while (!r.exhausted()) {
        auto name = r.cstring();
        if (!name) {
            return WireError{WireErrorKind::truncated, "option name not NUL-terminated"};
        }
        auto value = r.cstring();
        if (!value) {
            return WireError{WireErrorKind::truncated, "option value not NUL-terminated"};
        }
        if (!is_printable_ascii(*name) || !is_printable_ascii(*value)) {
            return WireError{WireErrorKind::truncated, "option pair is not printable ASCII"};
        }
        if (name->empty()) {
            return WireError{WireErrorKind::truncated, "empty option name"};
        }
        opts.emplace_back(std::move(*name), std::move(*value));
    }
    return opts;
}

}  // namespace

Result<std::vector<std::uint8_t>, WireError> encode_tftp(const TftpPacket& packet) {
    if (const auto* rrq = std::get_if<TftpReadRequest>(&packet)) {
        return encode_request(TftpOpcode::rrq, rrq->filename, rrq->mode, rrq->options);
    }
    if (const auto* wrq = std::get_if<TftpWriteRequest>(&packet)) {
        return encode_request(TftpOpcode::wrq, wrq->filename, wrq->mode, wrq->options);
    }
    if (const auto* data = std::get_if<TftpData>(&packet)) {
        if (data->payload.size() > kTftpMaxBlockSize) {
            return WireError{WireErrorKind::invalid_packet,
                             "data payload exceeds " + std::to_string(kTftpMaxBlockSize)};
        }
        ByteWriter w;
        w.u16be(static_cast<std::uint16_t>(TftpOpcode::data));
        w.u16be(data->block);
        w.raw(data->payload);
        return w.take();
    }
    if (const auto* ack = std::get_if<TftpAck>(&packet)) {
        ByteWriter w;
        w.u16be(static_cast<std::uint16_t>(TftpOpcode::ack));
        w.u16be(ack->block);
        return w.take();
    }
    if (const auto* err = std::get_if<TftpErrorPacket>(&packet)) {
        if (auto r = check_text("error message", err->message); !r) return r.error();
        ByteWriter w;
        w.u16be(static_cast<std::uint16_t>(TftpOpcode::error));
        w.u16be(err->code);
        w.cstring(err->message);
        return w.take();
    }
    const auto& oack = std::get<TftpOptionAck>(packet);
    ByteWriter w;
    w.u16be(static_cast<std::uint16_t>(TftpOpcode::oack));
    for (const auto& [name, value] : oack.options) {
        if (auto r = check_text("option name", name); !r) return r.error();
        if (auto r = check_text("option value", value); !r) return r.error();
        w.cstring(name);
        w.cstring(value);
    }
    return w.take();
}

Result<TftpPacket, WireError> decode_tftp(std::span<const std::uint8_t> bytes) {
    ByteReader r(bytes);
    auto opcode = r.u16be();
    if (!opcode) {
        return WireError{WireErrorKind::truncated, "packet shorter than opcode"};
    }
    switch (*opcode) {
        case static_cast<std::uint16_t>(TftpOpcode::rrq):
        case static_cast<std::uint16_t>(TftpOpcode::wrq): {
            auto filename = r.cstring();
            if (!filename) {
                return WireError{WireErrorKind::truncated, "filename not NUL-terminated"};
            }
            auto mode = r.cstring();
            if (!mode) {
                return WireError{WireErrorKind::truncated, "mode not NUL-terminated"};
            }
            if (!is_printable_ascii(*filename) || !is_printable_ascii(*mode)) {
                return WireError{WireErrorKind::truncated, "request strings not printable ASCII"};
            }
            if (filename->empty()) {
                return WireError{WireErrorKind::truncated, "empty filename"};
            }
            auto opts = decode_options(r);
            if (!opts) return opts.error();
            if (*opcode == static_cast<std::uint16_t>(TftpOpcode::rrq)) {
                return TftpPacket{
                    TftpReadRequest{std::move(*filename), std::move(*mode), std::move(opts.value())}};
            }
            return TftpPacket{
                TftpWriteRequest{std::move(*filename), std::move(*mode), std::move(opts.value())}};
        }
        case static_cast<std::uint16_t>(TftpOpcode::data): {
            auto block = r.u16be();
            if (!block) {
                return WireError{WireErrorKind::truncated, "data block counter missing"};
            }
            auto payload = r.raw(r.remaining());
            if (payload->size() > kTftpMaxBlockSize) {
                return WireError{WireErrorKind::invalid_packet, "data payload too large"};
            }
            return TftpPacket{
                TftpData{*block, std::vector<std::uint8_t>(payload->begin(), payload->end())}};
        }
        case static_cast<std::uint16_t>(TftpOpcode::ack): {
            auto block = r.u16be();
            if (!block) {
                return WireError{WireErrorKind::truncated, "ack block counter missing"};
            }
            if (!r.exhausted()) {
                return WireError{WireErrorKind::invalid_packet, "trailing bytes after ack"};
            }
            return TftpPacket{TftpAck{*block}};
        }
        case static_cast<std::uint16_t>(TftpOpcode::error): {
            auto code = r.u16be();
            if (!code) {
                return WireError{WireErrorKind::truncated, "error code missing"};
            }
            auto message = r.cstring();
            if (!message) {
                return WireError{WireErrorKind::truncated, "error message not NUL-terminated"};
            }
            if (!is_printable_ascii(*message)) {
                return WireError{WireErrorKind::truncated, "error message not printable ASCII"};
            }
            if (!r.exhausted()) {
                return WireError{WireErrorKind::invalid_packet, "trailing bytes after error"};
            }
            return TftpPacket{TftpErrorPacket{*code, std::move(*message)}};
        }
        case static_cast<std::uint16_t>(TftpOpcode::oack): {
            auto opts = decode_options(r);
            if (!opts) return opts.error();
            return TftpPacket{TftpOptionAck{std::move(opts.value())}};
        }
        default:
            return WireError{WireErrorKind::unknown_opcode,
                             "opcode " + std::to_string(*opcode) + " outside 1..6"};
    }
}

}  // namespace netforge::wire
