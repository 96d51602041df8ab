#include <doctest.h>

#include <cmath>
#include <map>

#include "osg/sigma/sigma.hpp"

using namespace osg;
using namespace osg::sigma;

namespace {

// fixed-challenge supplier
ChallengeFn fixed(const mpz_class& b, const mpz_class& b_in = 0) {
    return [=](int depth, BytesView) { return depth == 0 ? b : b_in; };
}

struct Instance {
    Statement stmt;
    Witness wit;
};

// knowledge of a signature core: f(s) = I with f(x) = e(x, g2)
Instance sig_core_instance(const Backend& B, Rng& rng) {
    BlsScheme sig(B);
    auto kp = sig.keygen(rng);
    Bytes m = rng.bytes(6);
    SplitSig s = sig.sign(kp.sk, m);
    HomMap f = HomMap::pair_g2(B);
    HomPreimageStmt hs{f, f.eval(Value{s.core})};
    return {Statement::make(hs), Witness::single(LeafWitness::hom(Value{s.core}))};
}

// knowledge of a Pedersen opening: f(r) = h^r = c * g^{-m}
Instance opening_instance(const Backend& B, Rng& rng) {
    Pedersen ped(B);
    Scalar m = B.random_scalar(rng), r = B.random_scalar(rng);
    Element c = ped.commit(m, r);
    HomMap f = HomMap::exp_bases(B, {ped.h()});
    HomPreimageStmt hs{f, {Value{ped.image(c, m)}}};
    return {Statement::make(hs), Witness::single(LeafWitness::hom(Value{r.v}))};
}

struct DecInstance {
    EncKeyPair keys;
    Scalar enc_rand;
    Element plain;
    ElGamalCt ct;
};

DecInstance dec_instance(const Backend& B, Rng& rng) {
    ElGamal enc(B);
    DecInstance d;
    d.keys = enc.keygen(rng);
    d.plain = B.random_element(GroupId::G1, rng);
    d.ct = enc.encrypt(d.keys.pk, d.plain, rng, &d.enc_rand);
    return d;
}

}  // namespace

TEST_CASE("preimage proof: completeness and the zero-challenge case") {
    for (const Backend* B : {&toy_backend(), &production_backend()}) {
        Rng rng(31);
        int n = B->kind() == BackendKind::Toy ? 100 : 5;
        ChallengeSpace cs = ChallengeSpace::amplified(*B);
        for (int i = 0; i < n; ++i) {
            Instance in = i % 2 ? sig_core_instance(*B, rng) : opening_instance(*B, rng);
            Rng prng = rng.fork(i), vrng = rng.fork(i + 1000);
            auto res = run_interactive(in.stmt, in.wit, cs, prng, vrng);
            CHECK(res.accepted);
        }
        // challenge 0: response is the nonce itself and verification reduces
        // to recomputing the commitment
        Instance in = sig_core_instance(*B, rng);
        SigmaTranscript tr = prove(in.stmt, in.wit, cs, rng, fixed(0));
        CHECK(verify(in.stmt, tr));
    }
}

TEST_CASE("prover refuses a witness that violates the statement") {
    const Backend& B = toy_backend();
    Rng rng(37);
    Instance in = sig_core_instance(B, rng);
    Witness bad = Witness::single(LeafWitness::hom(Value{B.random_element(GroupId::G1, rng)}));
    ChallengeSpace cs = ChallengeSpace::binary();
    CHECK_THROWS(prove(in.stmt, bad, cs, rng, fixed(1)));
}

TEST_CASE("cheating prover wins about 1/|C| by pre-guessing the challenge") {
    const Backend& B = toy_backend();
    Rng rng(41);
    Instance in = sig_core_instance(B, rng);
    for (unsigned bound : {2u, 16u}) {
        ChallengeSpace cs{mpz_class(bound)};
        int wins = 0, trials = 1000;
        for (int i = 0; i < trials; ++i) {
            // guess a challenge, publish the simulated commitment, then face
            // the verifier's real challenge
            mpz_class guess = rng.below(cs.bound);
            SigmaTranscript sim = simulate(in.stmt, cs, guess, {}, {}, rng);
            mpz_class real = rng.below(cs.bound);
            if (real == guess) {
                CHECK(verify(in.stmt, sim));
                ++wins;
            } else {
                // transplanting the old response under the new challenge fails
                SigmaTranscript forged = sim;
                forged.root.challenge = real;
                CHECK(!verify(in.stmt, forged));
            }
        }
        double rate = double(wins) / trials;
        double expect = 1.0 / bound;
        double sd = std::sqrt(expect * (1 - expect) / trials);
        CHECK(std::abs(rate - expect) < 3.5 * sd);
    }
}

TEST_CASE("extractor: adjacent challenges and the euclidean case") {
    const Backend& B = toy_backend();
    Rng rng(43);
    ChallengeSpace cs{mpz_class(16)};

    // the euclidean identity used for a difference of 4 at order 101
    mpz_class g, x, y;
    mpz_class ell(101), d(4);
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), ell.get_mpz_t(), d.get_mpz_t());
    CHECK(g == 1);
    CHECK(x == 1);
    CHECK(y == -25);
    CHECK(101 * 1 + 4 * (-25) == 1);

    for (int i = 0; i < 100; ++i) {
        Instance in = sig_core_instance(B, rng);
        // fork one prover at the challenge: identical nonce, two challenges,
        // differences 1 and 4 (the euclidean branch above)
        mpz_class b1 = i % 2 ? mpz_class(0) : mpz_class(3);
        mpz_class b2 = i % 2 ? mpz_class(1) : mpz_class(7);
        PresetSource r1({mpz_class(i % 101)});
        PresetSource r2({mpz_class(i % 101)});
        SigmaTranscript t1 = prove(in.stmt, in.wit, cs, r1, fixed(b1));
        SigmaTranscript t2 = prove(in.stmt, in.wit, cs, r2, fixed(b2));
        REQUIRE(t1.root.commitment == t2.root.commitment);
        Value s = extract(in.stmt, t1, t2);
        const auto& hs = std::get<HomPreimageStmt>(in.stmt.leaf);
        auto img = hs.f.eval(s);
        CHECK(hs.f.codomain()[0].eq(img[0], hs.image[0]));
    }
}

TEST_CASE("extractor error paths") {
    const Backend& B = toy_backend();
    Rng rng(47);
    Instance in = sig_core_instance(B, rng);
    ChallengeSpace cs{mpz_class(16)};
    PresetSource r1({mpz_class(5)});
    PresetSource r2({mpz_class(5)});
    SigmaTranscript t1 = prove(in.stmt, in.wit, cs, r1, fixed(3));
    SigmaTranscript t2 = prove(in.stmt, in.wit, cs, r2, fixed(3));
    CHECK_THROWS_AS((void)extract(in.stmt, t1, t2), ExtractError);  // equal challenges
    SigmaTranscript bad = t1;
    bad.root.response[2] ^= 1;
    CHECK_THROWS_AS((void)extract(in.stmt, bad, t2), ExtractError);  // non-accepting
}

TEST_CASE("decryption-knowledge proof: both witness routes, forked extraction") {
    const Backend& B = toy_backend();
    Rng rng(53);
    ElGamal enc(B);
    ChallengeSpace cs = ChallengeSpace::binary();
    for (int i = 0; i < 50; ++i) {
        DecInstance d = dec_instance(B, rng);
        Statement stmt = Statement::make(DecryptionKnowledgeStmt{&B, d.keys.pk, d.ct});
        for (auto w : {LeafWitness::dec_key(d.keys.sk), LeafWitness::enc_randomness(d.enc_rand)}) {
            Rng prng = rng.fork(2 * i), vrng = rng.fork(2 * i + 1);
            auto res = run_interactive(stmt, Witness::single(w), cs, prng, vrng);
            CHECK(res.accepted);
        }
        // fork at challenges 0 and 1: extracted value is the decryption
        std::vector<mpz_class> draws = {rng.below(B.order()), rng.below(B.order()),
                                        rng.below(B.order())};
        PresetSource r1(draws), r2(draws);
        Witness w = Witness::single(LeafWitness::dec_key(d.keys.sk));
        SigmaTranscript t1 = prove(stmt, w, cs, r1, fixed(0, 1));
        SigmaTranscript t2 = prove(stmt, w, cs, r2, fixed(1, 0));
        REQUIRE(t1.root.commitment == t2.root.commitment);
        Value s = extract(stmt, t1, t2);
        CHECK(B.eq(GroupId::G1, std::get<Element>(s.rep), d.plain));
    }
}

TEST_CASE("simulated transcripts verify across statement kinds") {
    const Backend& B = toy_backend();
    Rng rng(59);
    ChallengeSpace cs{mpz_class(16)};
    int runs = 1000;
    for (int i = 0; i < runs; ++i) {
        DecInstance d = dec_instance(B, rng);
        Statement stmt = Statement::make(DecryptionKnowledgeStmt{&B, d.keys.pk, d.ct});
        mpz_class b = rng.below(cs.bound), b_in = rng.below(cs.bound);
        WitnessRoute route = i % 2 ? WitnessRoute::DecKey : WitnessRoute::EncRandomness;
        SigmaTranscript sim = simulate(stmt, cs, b, {b_in}, {route}, rng);
        CHECK(verify(stmt, sim));
    }
}

TEST_CASE("exact transcript distribution equality at fixed challenge (preimage proof)") {
    const Backend& B = toy_backend();
    Rng rng(61);
    Instance in = sig_core_instance(B, rng);
    ChallengeSpace cs{mpz_class(101)};
    for (mpz_class b : {mpz_class(0), mpz_class(1), mpz_class(57)}) {
        std::map<Bytes, int> honest, simulated;
        for (uint32_t k = 0; k < 101; ++k) {
            PresetSource src({mpz_class(k)});
            SigmaTranscript t = prove(in.stmt, in.wit, cs, src, fixed(b));
            honest[encode_transcript(t)]++;
        }
        for (uint32_t k = 0; k < 101; ++k) {
            PresetSource src({mpz_class(k)});
            SigmaTranscript t = simulate(in.stmt, cs, b, {}, {}, src);
            simulated[encode_transcript(t)]++;
        }
        CHECK(honest == simulated);
        CHECK(honest.size() == 101);
    }
}

TEST_CASE("conjunction shares one challenge across branches") {
    const Backend& B = toy_backend();
    Rng rng(67);
    Instance a = sig_core_instance(B, rng);
    Instance b = opening_instance(B, rng);
    Statement stmt = Statement::conjunction({a.stmt, b.stmt});
    Witness wit;
    wit.parts = {a.wit.parts[0], b.wit.parts[0]};
    ChallengeSpace cs{mpz_class(101)};
    Rng prng(1), vrng(2);
    auto res = run_interactive(stmt, wit, cs, prng, vrng);
    CHECK(res.accepted);
    CHECK(res.transcript.root.children.size() == 2);
    CHECK(res.transcript.root.children[0].challenge == res.transcript.root.challenge);
    CHECK(res.transcript.root.children[1].challenge == res.transcript.root.challenge);
    // breaking one branch breaks the conjunction
    SigmaTranscript broken = res.transcript;
    broken.root.children[1].response.back() ^= 1;
    CHECK(!verify(stmt, broken));
}

TEST_CASE("disjunction: real witness on either branch, verifier key breaks soundness by design") {
    const Backend& B = toy_backend();
    Rng rng(71);
    ElGamal enc(B);
    // branch A: a (false!) signature-core claim; branch B: the verifier's key
    BlsScheme sig(B);
    auto signer = sig.keygen(rng);
    auto verifier_key = enc.keygen(rng);
    HomMap f = HomMap::pair_g2(B);
    // claim an image that no honestly produced core satisfies
    Element fake_img = B.random_element(GroupId::GT, rng);
    Statement claim = Statement::make(HomPreimageStmt{f, {Value{fake_img}}});
    HomMap fk = HomMap::exp_bases(B, {B.generator(GroupId::G1)});
    Statement key_stmt = Statement::make(HomPreimageStmt{fk, {Value{verifier_key.pk}}});
    Statement dv = Statement::disjunction(claim, key_stmt);
    ChallengeSpace cs{mpz_class(101)};

    // the verifier, holding their own key, "proves" the false claim
    Witness w = Witness::branch(1, 2, LeafWitness::hom(Value{verifier_key.sk.v}));
    Rng prng(3), vrng(4);
    auto res = run_interactive(dv, w, cs, prng, vrng);
    CHECK(res.accepted);

    // a prover with a real signature core also convinces
    Bytes m = rng.bytes(4);
    SplitSig s = sig.sign(signer.sk, m);
    Statement true_claim = Statement::make(HomPreimageStmt{f, f.eval(Value{s.core})});
    Statement dv2 = Statement::disjunction(true_claim, key_stmt);
    Witness w2 = Witness::branch(0, 2, LeafWitness::hom(Value{s.core}));
    auto res2 = run_interactive(dv2, w2, cs, prng, vrng);
    CHECK(res2.accepted);
}

TEST_CASE("disjunction witness paths are identically distributed (exhaustive)") {
    const Backend& B = toy_backend();
    Rng rng(73);
    // two key statements; either side's holder can prove the OR
    ElGamal enc(B);
    auto k0 = enc.keygen(rng), k1 = enc.keygen(rng);
    HomMap f = HomMap::exp_bases(B, {B.generator(GroupId::G1)});
    Statement s0 = Statement::make(HomPreimageStmt{f, {Value{k0.pk}}});
    Statement s1 = Statement::make(HomPreimageStmt{f, {Value{k1.pk}}});
    Statement dv = Statement::disjunction(s0, s1);
    ChallengeSpace cs = ChallengeSpace::binary();
    mpz_class b(1);
    // enumerate (dead-branch challenge draw, dead-branch inner draw unused,
    // dead z, real nonce)
    std::map<Bytes, int> path0, path1;
    for (uint32_t bd = 0; bd < 2; ++bd)
        for (uint32_t zd = 0; zd < 101; ++zd)
            for (uint32_t nn = 0; nn < 101; ++nn) {
                {
                    PresetSource src({mpz_class(bd), mpz_class(0), mpz_class(zd), mpz_class(nn)});
                    Witness w = Witness::branch(0, 2, LeafWitness::hom(Value{k0.sk.v}));
                    path0[encode_transcript(prove(dv, w, cs, src, fixed(b)))]++;
                }
                {
                    PresetSource src({mpz_class(bd), mpz_class(0), mpz_class(zd), mpz_class(nn)});
                    Witness w = Witness::branch(1, 2, LeafWitness::hom(Value{k1.sk.v}));
                    path1[encode_transcript(prove(dv, w, cs, src, fixed(b)))]++;
                }
            }
    CHECK(path0 == path1);
}

TEST_CASE("fiat-shamir: binding, randomness freshness, domain separation") {
    for (const Backend* B : {&toy_backend(), &production_backend()}) {
        Rng rng(79);
        ChallengeSpace cs = ChallengeSpace::amplified(*B);
        Bytes tag = str_bytes("osg/test/fs");
        Instance in = sig_core_instance(*B, rng);
        SigmaTranscript pf = fs_prove(in.stmt, in.wit, cs, tag, rng);
        CHECK(fs_verify(in.stmt, pf, tag));
        CHECK(!fs_verify(in.stmt, pf, str_bytes("osg/other")));

        // single byte flips anywhere in the serialized proof are rejected
        Bytes wire = encode_transcript(pf);
        int fuzz = B->kind() == BackendKind::Toy ? 1000 : 60;
        Rng frng(80);
        int rejected = 0;
        for (int i = 0; i < fuzz; ++i) {
            Bytes mut = wire;
            size_t pos = size_t(frng.below(mpz_class(mut.size())).get_ui());
            uint8_t bit = uint8_t(1 << frng.below(mpz_class(8)).get_ui());
            mut[pos] ^= bit;
            auto dec = decode_transcript(mut);
            if (!dec) {
                ++rejected;
                continue;
            }
            if (*dec == pf) continue;  // flip landed in redundant length bytes
            if (!fs_verify(in.stmt, *dec, tag)) ++rejected;
        }
        CHECK(rejected == fuzz);

        // two proofs with different randomness have different challenges
        int distinct = 0, runs = B->kind() == BackendKind::Toy ? 1000 : 20;
        for (int i = 0; i < runs; ++i) {
            SigmaTranscript a = fs_prove(in.stmt, in.wit, cs, tag, rng);
            SigmaTranscript b = fs_prove(in.stmt, in.wit, cs, tag, rng);
            if (a.root.challenge != b.root.challenge) ++distinct;
        }
        // toy challenge space has 101 values, so a few collisions are expected
        CHECK(distinct > runs * 9 / 10);
    }
}

TEST_CASE("transcript and statement wire round-trips") {
    const Backend& B = toy_backend();
    Rng rng(83);
    DecInstance d = dec_instance(B, rng);
    Statement stmt = Statement::make(DecryptionKnowledgeStmt{&B, d.keys.pk, d.ct});
    ChallengeSpace cs{mpz_class(101)};
    Rng prng(5), vrng(6);
    auto res = run_interactive(stmt, Witness::single(LeafWitness::dec_key(d.keys.sk)), cs, prng, vrng);
    REQUIRE(res.accepted);
    Bytes wire = encode_transcript(res.transcript);
    auto back = decode_transcript(wire);
    REQUIRE(back.has_value());
    CHECK(*back == res.transcript);
    auto stmt_back = decode_statement(back->statement);
    REQUIRE(stmt_back.has_value());
    CHECK(verify(*stmt_back, *back));
    CHECK(encode_statement(*stmt_back) == back->statement);
}

TEST_CASE("challenge space caps at the group order") {
    const Backend& B = toy_backend();
    CHECK(ChallengeSpace::amplified(B).bound == 101);
    CHECK(ChallengeSpace::amplified(production_backend()).bound == mpz_class(1) << 128);
    Rng rng(89);
    Instance in = sig_core_instance(B, rng);
    ChallengeSpace too_big{mpz_class(1000)};
    CHECK_THROWS(prove(in.stmt, in.wit, too_big, rng, fixed(1)));
}
