#include <doctest.h>

#include <sstream>

#include "osg/cli/envelope.hpp"

using namespace osg;
using namespace osg::cli;

TEST_CASE("envelope round-trip and magic enforcement") {
    Rng rng(71);
    Envelope e{ArtifactKind::Transcript, BackendKind::Production, 1, rng.bytes(40)};
    Bytes w = encode_envelope(e);
    auto back = decode_envelope(w);
    REQUIRE(back.has_value());
    CHECK(back->kind == e.kind);
    CHECK(back->backend == e.backend);
    CHECK(back->payload == e.payload);

    Bytes bad = w;
    bad[0] = 'X';
    CHECK(!decode_envelope(bad).has_value());
    // unknown kind tag
    bad = w;
    bad[4] = 0xee;
    CHECK(!decode_envelope(bad).has_value());
    // truncation
    CHECK(!decode_envelope(BytesView(w).subspan(0, w.size() - 1)).has_value());
}

TEST_CASE("frame transport round-trips and rejects truncation") {
    Rng rng(73);
    Envelope e{ArtifactKind::ProtocolMsg, BackendKind::Toy, 1, rng.bytes(9)};
    std::stringstream pipe;
    write_frame(pipe, e);
    write_frame(pipe, e);
    auto a = read_frame(pipe);
    auto b = read_frame(pipe);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(a->payload == e.payload);
    CHECK(!read_frame(pipe).has_value());  // stream exhausted

    // truncated frame
    std::stringstream cut;
    Bytes body = encode_envelope(e);
    uint8_t len[4] = {0, 0, 0, uint8_t(body.size() + 5)};
    cut.write(reinterpret_cast<const char*>(len), 4);
    cut.write(reinterpret_cast<const char*>(body.data()), std::streamsize(body.size()));
    CHECK(!read_frame(cut).has_value());
}

TEST_CASE("bytes helpers") {
    CHECK(to_hex(Bytes{0xde, 0xad}) == "dead");
    CHECK(("dead"_hex) == (Bytes{0xde, 0xad}));
    mpz_class v("123456789012345678901234567890");
    Bytes fixed = mpz_to_fixed(v, 16);
    CHECK(fixed.size() == 16);
    CHECK(mpz_from_bytes(fixed) == v);
    CHECK_THROWS_AS(mpz_to_fixed(v, 4), EncodeError);
    CHECK_THROWS_AS(mpz_to_fixed(mpz_class(-1), 4), EncodeError);
}
