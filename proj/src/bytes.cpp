#include "osg/bytes.hpp"

namespace osg {

Bytes mpz_to_fixed(const mpz_class& v, size_t width) {
    if (v < 0) throw EncodeError("negative integer");
    Bytes out(width, 0);
    size_t count = 0;
    // export to the tail of the buffer, big-endian
    size_t need = (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
    if (v == 0) need = 0;
    if (need > width) throw EncodeError("integer too wide for field");
    mpz_export(out.data() + (width - need), &count, 1, 1, 1, 0, v.get_mpz_t());
    return out;
}

mpz_class mpz_from_bytes(BytesView b) {
    mpz_class v;
    if (!b.empty()) mpz_import(v.get_mpz_t(), b.size(), 1, 1, 1, 0, b.data());
    return v;
}

void Writer::mpz_fixed(const mpz_class& v, size_t width) { raw(mpz_to_fixed(v, width)); }

mpz_class Reader::mpz_fixed(size_t width) { return mpz_from_bytes(raw(width)); }

std::string to_hex(BytesView b) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(b.size() * 2);
    for (uint8_t c : b) {
        s.push_back(digits[c >> 4]);
        s.push_back(digits[c & 0xf]);
    }
    return s;
}

Bytes operator""_hex(const char* s, size_t n) {
    if (n % 2) throw DecodeError("odd hex length");
    auto nib = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw DecodeError("bad hex digit");
    };
    Bytes out(n / 2);
    for (size_t i = 0; i < out.size(); ++i) out[i] = uint8_t(nib(s[2 * i]) << 4 | nib(s[2 * i + 1]));
    return out;
}

}  // namespace osg
