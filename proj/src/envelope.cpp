#include "osg/cli/envelope.hpp"

#include <fstream>

namespace osg::cli {

static const uint8_t kMagic[4] = {'O', 'S', 'G', '1'};

Bytes encode_envelope(const Envelope& e) {
    Writer w;
    w.raw(BytesView(kMagic, 4));
    w.u8(uint8_t(e.kind));
    w.u8(uint8_t(e.backend));
    w.u8(e.version);
    w.blob(e.payload);
    return w.take();
}

std::optional<Envelope> decode_envelope(BytesView b) {
    try {
        Reader r(b);
        Bytes magic = r.raw(4);
        if (!std::equal(magic.begin(), magic.end(), kMagic)) return std::nullopt;
        Envelope e;
        uint8_t kind = r.u8();
        if (kind < 1 || kind > uint8_t(ArtifactKind::DvKey)) return std::nullopt;
        e.kind = ArtifactKind(kind);
        uint8_t backend = r.u8();
        if (backend > 1) return std::nullopt;
        e.backend = BackendKind(backend);
        e.version = r.u8();
        if (e.version != 1) return std::nullopt;
        e.payload = r.blob();
        r.expect_done();
        return e;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void write_frame(std::ostream& os, const Envelope& e) {
    Bytes body = encode_envelope(e);
    uint8_t len[4] = {uint8_t(body.size() >> 24), uint8_t(body.size() >> 16),
                      uint8_t(body.size() >> 8), uint8_t(body.size())};
    os.write(reinterpret_cast<const char*>(len), 4);
    os.write(reinterpret_cast<const char*>(body.data()), std::streamsize(body.size()));
    os.flush();
}

std::optional<Envelope> read_frame(std::istream& is) {
    uint8_t len[4];
    if (!is.read(reinterpret_cast<char*>(len), 4)) return std::nullopt;
    uint32_t n = uint32_t(len[0]) << 24 | uint32_t(len[1]) << 16 | uint32_t(len[2]) << 8 | len[3];
    if (n > (1u << 26)) return std::nullopt;
    Bytes body(n);
    if (!is.read(reinterpret_cast<char*>(body.data()), n)) return std::nullopt;
    return decode_envelope(body);
}

void save_envelope(const std::string& path, const Envelope& e) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw EncodeError("cannot write " + path);
    Bytes body = encode_envelope(e);
    f.write(reinterpret_cast<const char*>(body.data()), std::streamsize(body.size()));
}

Envelope load_envelope(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw DecodeError("cannot read " + path);
    Bytes body((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    auto e = decode_envelope(body);
    if (!e) throw DecodeError("malformed envelope in " + path);
    return *e;
}

}  // namespace osg::cli
