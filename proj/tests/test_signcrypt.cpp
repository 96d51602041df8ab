#include <doctest.h>

#include "osg/signcrypt/signcrypt.hpp"

using namespace osg;
using namespace osg::signcrypt;
using sigma::ChallengeSpace;

namespace {
Bytes codec_message(const Backend& B, Rng& rng) {
    if (B.embed_capacity() == 1) {
        Bytes m = rng.bytes(1);
        m[0] %= 101;
        return m;
    }
    size_t len = 1 + size_t(rng.below(mpz_class(B.embed_capacity())).get_ui());
    return rng.bytes(len);
}
}  // namespace

TEST_CASE("signcrypt/unsigncrypt round-trips on both backends") {
    for (const Backend* B : {&toy_backend(), &production_backend()}) {
        EtSteScheme sch(*B);
        Rng rng(301);
        auto sender = sch.keygen_sender(rng);
        auto recv = sch.keygen_receiver(rng);
        int n = B->kind() == BackendKind::Toy ? 100 : 5;
        for (int i = 0; i < n; ++i) {
            Bytes m = codec_message(*B, rng);
            auto sc = sch.signcrypt(sender, recv, m, rng, nullptr);
            REQUIRE(sc.has_value());
            auto got = sch.unsigncrypt(sender, recv, *sc);
            REQUIRE(got.has_value());
            CHECK(*got == m);
        }
    }
}

TEST_CASE("toy tuple layout is the fixed 2+2+2+2+0 bytes") {
    const Backend& B = toy_backend();
    EtSteScheme sch(B);
    Rng rng(303);
    auto sender = sch.keygen_sender(rng);
    auto recv = sch.keygen_receiver(rng);
    Bytes m = codec_message(B, rng);
    auto sc = sch.signcrypt(sender, recv, m, rng, nullptr);
    REQUIRE(sc.has_value());
    // components: msg ciphertext (2+2), encapsulation (2), pad (2), aux (0)
    CHECK(B.element_size(GroupId::G1) == 2);
    CHECK(sc->aux.empty());
    Bytes wire = sch.encode(*sc);
    CHECK(wire.size() == 2 + 2 + 2 + 2 + 0 + 4);  // + aux length prefix
}

TEST_CASE("substituted session key breaks the signature check") {
    const Backend& B = toy_backend();
    EtSteScheme sch(B);
    Rng rng(305);
    auto sender = sch.keygen_sender(rng);
    auto recv = sch.keygen_receiver(rng);
    for (int i = 0; i < 50; ++i) {
        Bytes m = codec_message(B, rng);
        auto sc = sch.signcrypt(sender, recv, m, rng, nullptr);
        REQUIRE(sc.has_value());
        // re-pad the signature layer under a random session key
        ElGamal enc(B);
        Element k_bad = B.random_element(GroupId::G1, rng);
        Element key = enc.kem_decap(recv.kem.sk, sc->encap);
        Element core = enc.dem_decrypt(key, sc->pad);
        Signcryption swapped = *sc;
        swapped.pad = enc.dem_encrypt(k_bad, core);
        if (B.eq(GroupId::G1, k_bad, key)) continue;  // hit the real key
        CHECK(!sch.unsigncrypt(sender, recv, swapped).has_value());
    }
}

TEST_CASE("perturbed pad and swapped message layers unsigncrypt to nothing") {
    const Backend& B = production_backend();
    EtSteScheme sch(B);
    Rng rng(307);
    auto sender = sch.keygen_sender(rng);
    auto recv = sch.keygen_receiver(rng);
    for (int i = 0; i < 5; ++i) {
        Bytes m1 = codec_message(B, rng), m2 = codec_message(B, rng);
        auto a = sch.signcrypt(sender, recv, m1, rng, nullptr);
        auto b = sch.signcrypt(sender, recv, m2, rng, nullptr);
        REQUIRE(a.has_value());
        REQUIRE(b.has_value());
        CHECK(!sch.unsigncrypt(sender, recv, sch.maul_pad(*a, rng)).has_value());
        // swapping the message ciphertexts breaks the binding
        Signcryption sa = *a;
        sa.msg_ct = b->msg_ct;
        CHECK(!sch.unsigncrypt(sender, recv, sa).has_value());
        // re-randomizing the message layer breaks it too
        CHECK(!sch.unsigncrypt(sender, recv, sch.maul_msg_layer(recv, *a, rng)).has_value());
    }
}

TEST_CASE("prove-validity accepts both witness paths and binds components") {
    const Backend& B = toy_backend();
    EtSteScheme sch(B);
    Rng rng(309);
    auto sender = sch.keygen_sender(rng);
    auto recv = sch.keygen_receiver(rng);
    ChallengeSpace cs = ChallengeSpace::amplified(B);
    for (int i = 0; i < 50; ++i) {
        Bytes m = codec_message(B, rng);
        SigncryptCoins coins;
        auto sc = sch.signcrypt(sender, recv, m, rng, &coins);
        REQUIRE(sc.has_value());
        auto stmt = sch.validity_statement(sender.pk, recv, *sc);
        Rng p = rng.fork(i), v = rng.fork(400 + i);
        CHECK(sigma::run_interactive(stmt, sch.sender_validity_witness(coins), cs, p, v).accepted);
        CHECK(sigma::run_interactive(stmt, sch.receiver_validity_witness(recv), cs, p, v).accepted);
        // transplanting the transcript onto a component-swapped tuple fails
        auto res = sigma::run_interactive(stmt, sch.receiver_validity_witness(recv), cs, p, v);
        Signcryption other = *sc;
        other.encap = B.random_element(GroupId::G1, rng);
        auto stmt2 = sch.validity_statement(sender.pk, recv, other);
        CHECK(!sigma::verify(stmt2, res.transcript));
    }
}

TEST_CASE("confirm and deny over the message layer") {
    const Backend& B = toy_backend();
    EtSteScheme sch(B);
    Rng rng(311);
    auto sender = sch.keygen_sender(rng);
    auto recv = sch.keygen_receiver(rng);
    ChallengeSpace cs = ChallengeSpace::amplified(B);
    for (int i = 0; i < 50; ++i) {
        Bytes m = codec_message(B, rng);
        auto sc = sch.signcrypt(sender, recv, m, rng, nullptr);
        REQUIRE(sc.has_value());
        Rng p = rng.fork(i), v = rng.fork(500 + i);
        auto cstmt = sch.confirm_statement(sender.pk, recv, *sc, m, false);
        CHECK(sigma::run_interactive(cstmt, sch.receiver_confirm_witness(recv), cs, p, v).accepted);
        Bytes m2 = m;
        m2[0] = uint8_t((m2[0] + 1) % 101);
        auto dstmt = sch.confirm_statement(sender.pk, recv, *sc, m2, true);
        CHECK(sigma::run_interactive(dstmt, sch.receiver_confirm_witness(recv), cs, p, v).accepted);
        // confirm with a broken signature layer is refused regardless of m
        Signcryption bad = sch.maul_pad(*sc, rng);
        auto bstmt = sch.confirm_statement(sender.pk, recv, bad, m, false);
        CHECK_THROWS(sigma::prove(bstmt, sch.receiver_confirm_witness(recv), cs, p,
                                  [](int, BytesView) { return mpz_class(1); }));
    }
}

TEST_CASE("signature extraction binds the message and stands alone") {
    for (const Backend* B : {&toy_backend(), &production_backend()}) {
        EtSteScheme sch(*B);
        Rng rng(313);
        auto sender = sch.keygen_sender(rng);
        auto recv = sch.keygen_receiver(rng);
        BlsScheme bls(*B);
        int n = B->kind() == BackendKind::Toy ? 30 : 3;
        for (int i = 0; i < n; ++i) {
            Bytes m = codec_message(*B, rng);
            auto sc = sch.signcrypt(sender, recv, m, rng, nullptr);
            REQUIRE(sc.has_value());
            auto ex = sch.sig_extract(sender, recv, *sc, m, rng);
            REQUIRE(ex.has_value());
            CHECK(sch.sig_verify(sender.pk, recv, *sc, m, *ex));
            // the extracted pair alone is an ordinary digital signature
            CHECK(bls.verify(sender.pk, sch.signed_string(*sc), {ex->core, ex->aux}));
            // bound to the message
            Bytes m2 = m;
            m2[0] = uint8_t((m2[0] + 1) % 101);
            CHECK(!sch.sig_verify(sender.pk, recv, *sc, m2, *ex));
            // extraction refuses a mismatched message
            CHECK(!sch.sig_extract(sender, recv, *sc, m2, rng).has_value());
        }
    }
}

TEST_CASE("signcryption wire round-trip") {
    const Backend& B = toy_backend();
    EtSteScheme sch(B);
    Rng rng(315);
    auto sender = sch.keygen_sender(rng);
    auto recv = sch.keygen_receiver(rng);
    Bytes m = codec_message(B, rng);
    auto sc = sch.signcrypt(sender, recv, m, rng, nullptr);
    REQUIRE(sc.has_value());
    auto back = sch.decode(sch.encode(*sc));
    REQUIRE(back.has_value());
    CHECK(sch.encode(*back) == sch.encode(*sc));
    auto ex = sch.sig_extract(sender, recv, *sc, m, rng);
    REQUIRE(ex.has_value());
    auto ex2 = sch.decode_extraction(sch.encode_extraction(*ex));
    REQUIRE(ex2.has_value());
    CHECK(sch.sig_verify(sender.pk, recv, *sc, m, *ex2));
}
