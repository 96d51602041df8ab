#include <doctest.h>

#include "osg/analysis/games.hpp"

using namespace osg;
using namespace osg::analysis;

TEST_CASE("dp status oracle accepts honest signatures") {
    DpScheme sch(false);
    Rng rng(401);
    for (int i = 0; i < 50; ++i) {
        DpKeys keys = sch.keygen(rng);
        Bytes m = rng.bytes(8);
        DpSignature sig = sch.sign(keys, m, rng);
        CHECK(sch.status(keys, m, sig));
        Bytes m2 = m;
        m2[0] ^= 1;
        CHECK(!sch.status(keys, m2, sig));
    }
}

TEST_CASE("dp homomorphic identity over the whole exponent range") {
    DpScheme sch(false);
    Rng rng(403);
    DpKeys keys = sch.keygen(rng);
    Bytes m = rng.bytes(8);
    DpSignature sig = sch.sign(keys, m, rng);
    DpSignature junk = sch.random_signature(keys.pub, rng);
    while (sch.status(keys, m, junk)) junk = sch.random_signature(keys.pub, rng);
    for (uint32_t rho = 0; rho < 100; ++rho) {
        uint32_t c1 = 1, c2 = 1;
        for (uint32_t k = 0; k < rho; ++k) {
            c1 = c1 * keys.pub.alpha % 101;
            c2 = uint32_t(uint64_t(c2) * keys.pub.beta % 101);
        }
        CHECK(sch.status(keys, m, sch.maul(sig, c1, c2)));
        CHECK(!sch.status(keys, m, sch.maul(junk, c1, c2)));
    }
}

TEST_CASE("dp attack decides ddh instances exactly") {
    GameReport rep = run_dp_attack(false, 100, 405);
    CHECK(rep.trials == 200);
    CHECK(rep.wins == 200);
}

TEST_CASE("repaired dp rejects every mauled status query") {
    GameReport rep = run_dp_attack(true, 100, 407);
    CHECK(rep.trials == 200);
    CHECK(rep.wins == 200);
}

TEST_CASE("dp completeness") {
    for (bool repaired : {false, true}) {
        GameReport rep = run_dp_completeness(repaired, 100, 409);
        CHECK(rep.wins == rep.trials);
        CHECK(rep.trials == 100);
    }
}

TEST_CASE("fact1 adversary wins the invisibility game against the plain schemes") {
    // plain sign-then-encrypt at production scale (collision-free hashing)
    auto plain = make_cdcs_adapter(SchemeId::PlainSte, BackendKind::Production);
    GameReport r1 = run_inv_cma(*plain, fact1_adversary(), 20, 411);
    CHECK(r1.trials == 20);
    CHECK(r1.wins == 20);
    // classic commit-then-encrypt-and-sign: the embedded message tag makes
    // the toy run exact as well
    auto cteas = make_cdcs_adapter(SchemeId::Cteas, BackendKind::Toy);
    GameReport r2 = run_inv_cma(*cteas, fact1_adversary(), 60, 413);
    CHECK(r2.trials == 60);
    CHECK(r2.wins == 60);
}

TEST_CASE("fact1 adversary gains nothing against the bound schemes") {
    for (SchemeId id : {SchemeId::NewSte, SchemeId::Ctets}) {
        auto a = make_cdcs_adapter(id, BackendKind::Toy);
        GameReport r = run_inv_cma(*a, fact1_adversary(), 200, 415);
        CHECK(r.disqualified == 0);
        CHECK(r.interval().contains(0.5));
    }
}

TEST_CASE("guessing adversary is the null baseline") {
    auto a = make_cdcs_adapter(SchemeId::NewSte, BackendKind::Toy);
    GameReport r = run_inv_cma(*a, guessing_adversary(), 200, 418);
    CHECK(r.interval().contains(0.5));
}

TEST_CASE("restricted challenge queries disqualify the trial") {
    auto a = make_cdcs_adapter(SchemeId::NewSte, BackendKind::Toy);
    InvAdversary cheater = [](const InvOracles& o, BytesView challenge, BytesView m0, BytesView,
                              Rng&) {
        auto r = o.convert(challenge, m0);  // forbidden post-challenge query
        return r ? 0 : 1;
    };
    GameReport r = run_inv_cma(*a, cheater, 10, 419);
    CHECK(r.disqualified == 10);
    CHECK(r.trials == 0);
}

TEST_CASE("completeness experiments pass across schemes (toy)") {
    for (SchemeId id : {SchemeId::NewSte, SchemeId::PlainSte, SchemeId::Ets, SchemeId::Ctets}) {
        auto a = make_cdcs_adapter(id, BackendKind::Toy);
        GameReport r = run_completeness(*a, 20, 421);
        INFO(scheme_name(id));
        CHECK(r.wins == r.trials);
        CHECK(r.trials == 20);
    }
    GameReport sc = run_signcrypt_completeness(BackendKind::Toy, 20, 423);
    CHECK(sc.wins == sc.trials);
}

TEST_CASE("strong invisibility: real signatures vs random space elements") {
    // the mauling adversary cannot separate them for the bound scheme
    auto a = make_cdcs_adapter(SchemeId::NewSte, BackendKind::Toy);
    GameReport r = run_sinv_cma(*a, fact1_adversary(), 200, 425);
    CHECK(r.interval().contains(0.5));
    // but separates the plain scheme essentially always
    auto p = make_cdcs_adapter(SchemeId::PlainSte, BackendKind::Production);
    GameReport r2 = run_sinv_cma(*p, fact1_adversary(), 20, 427);
    CHECK(r2.rate() == 1.0);
}

TEST_CASE("sind-cca harness: mauling gives nothing, unsigncrypt enforces restrictions") {
    GameReport r = run_sind_cca(BackendKind::Toy, fact1_adversary(), 200, 429);
    CHECK(r.disqualified == 0);
    CHECK(r.interval().contains(0.5));
}

TEST_CASE("euf-cma smoke: trivial forgeries fail (production)") {
    auto a = make_cdcs_adapter(SchemeId::NewSte, BackendKind::Production);
    GameReport r = run_euf_cma_smoke(*a, 30, 431);
    CHECK(r.wins == 0);
    GameReport sc = run_signcrypt_euf_smoke(BackendKind::Production, 30, 433);
    CHECK(sc.wins == 0);
}

TEST_CASE("commit-encrypt lemma game stays at one half") {
    GameReport r = run_commit_encrypt_game(500, 435);
    CHECK(r.interval().contains(0.5));
}

TEST_CASE("non-transferability distributions match exactly (correct-decryption)") {
    GameReport r = run_non_transferability(SchemeId::Ets, 437);
    CHECK(r.wins == r.trials);
    CHECK(r.trials > 0);
}

TEST_CASE("wilson interval sanity") {
    WilsonInterval ci = wilson95(100, 200);
    CHECK(ci.contains(0.5));
    CHECK(!ci.contains(0.4));
    CHECK(wilson95(0, 100).lo == 0.0);
    // the interval is strictly inside (0,1) even at the extremes
    CHECK(wilson95(200, 200).hi < 1.0);
    CHECK(wilson95(200, 200).lo > 0.97);
    CHECK(!wilson95(120, 200).contains(0.5));
}
