#ifndef OSG_BYTES_HPP_
#define OSG_BYTES_HPP_

#include <cstdint>
#include <cstring>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace osg {

using Bytes = std::vector<uint8_t>;
using BytesView = std::span<const uint8_t>;

struct DecodeError : std::runtime_error {
    explicit DecodeError(const std::string& what) : std::runtime_error(what) {}
};

struct EncodeError : std::runtime_error {
    explicit EncodeError(const std::string& what) : std::runtime_error(what) {}
};

// Append-style writer for the canonical big-endian formats.
class Writer {
  public:
    Bytes take() { return std::move(buf_); }
    const Bytes& data() const { return buf_; }

    void u8(uint8_t v) { buf_.push_back(v); }
    void u16(uint16_t v) {
        buf_.push_back(uint8_t(v >> 8));
        buf_.push_back(uint8_t(v));
    }
    void u32(uint32_t v) {
        for (int i = 3; i >= 0; --i) buf_.push_back(uint8_t(v >> (8 * i)));
    }
    void u64(uint64_t v) {
        for (int i = 7; i >= 0; --i) buf_.push_back(uint8_t(v >> (8 * i)));
    }
    void raw(BytesView b) { buf_.insert(buf_.end(), b.begin(), b.end()); }
    void raw(const Bytes& b) { buf_.insert(buf_.end(), b.begin(), b.end()); }
    // length-prefixed blob
    void blob(BytesView b) {
        u32(uint32_t(b.size()));
        raw(b);
    }
    // non-negative integer, fixed-width big-endian
    void mpz_fixed(const mpz_class& v, size_t width);

  private:
    Bytes buf_;
};

// Cursor-style reader; every method throws DecodeError on truncation.
class Reader {
  public:
    explicit Reader(BytesView b) : b_(b) {}

    bool done() const { return off_ == b_.size(); }
    size_t remaining() const { return b_.size() - off_; }

    uint8_t u8() { return take(1)[0]; }
    uint16_t u16() {
        auto s = take(2);
        return uint16_t(s[0]) << 8 | s[1];
    }
    uint32_t u32() {
        auto s = take(4);
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v = v << 8 | s[i];
        return v;
    }
    uint64_t u64() {
        auto s = take(8);
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v = v << 8 | s[i];
        return v;
    }
    Bytes raw(size_t n) {
        auto s = take(n);
        return Bytes(s.begin(), s.end());
    }
    Bytes blob() {
        uint32_t n = u32();
        if (n > remaining()) throw DecodeError("blob length exceeds buffer");
        return raw(n);
    }
    mpz_class mpz_fixed(size_t width);

    void expect_done() const {
        if (!done()) throw DecodeError("trailing bytes");
    }

  private:
    BytesView take(size_t n) {
        if (n > remaining()) throw DecodeError("truncated input");
        auto s = b_.subspan(off_, n);
        off_ += n;
        return s;
    }
    BytesView b_;
    size_t off_ = 0;
};

Bytes mpz_to_fixed(const mpz_class& v, size_t width);
mpz_class mpz_from_bytes(BytesView b);

std::string to_hex(BytesView b);
Bytes operator""_hex(const char* s, size_t n);

inline Bytes str_bytes(const std::string& s) { return Bytes(s.begin(), s.end()); }

}  // namespace osg

#endif
