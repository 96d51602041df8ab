#include "osg/cdcs/cdcs.hpp"

#include "osg/hash.hpp"

namespace osg::cdcs {

using sigma::LeafWitness;
using sigma::Statement;
using sigma::Witness;

// --- sign-then-encrypt family ---

SteKeys SteFamily::keygen(RandSource& rs) const { return {sig_.keygen(rs), enc_.keygen(rs)}; }

Bytes SteFamily::signed_string(const Element& encap, BytesView msg) const {
    Writer w;
    // fixed-width encapsulation keeps the message at a fixed offset
    if (bind_) w.raw(b_.encode(GroupId::G1, encap));
    w.raw(msg);
    return w.take();
}

SteSignature SteFamily::sign(const SteKeys& keys, BytesView msg, RandSource& rs,
                             SteCoins* coins) const {
    Scalar a;
    auto [encap, key] = enc_.kem_encap(keys.confirmer.pk, rs, &a);
    if (coins) coins->kem_rand = a;
    SplitSig core = sig_.sign(keys.signer.sk, signed_string(encap, msg));
    return {encap, enc_.dem_encrypt(key, core.core), core.aux};
}

bool SteFamily::verify(const SteKeys& keys, const SteSignature& s, BytesView msg) const {
    if (!s.aux.empty()) return false;
    Element key = enc_.kem_decap(keys.confirmer.sk, s.encap);
    Element core = enc_.dem_decrypt(key, s.pad);
    return sig_.verify(keys.signer.pk, signed_string(s.encap, msg), {core, s.aux});
}

bool SteFamily::verify_with_coins(const SteKeys& keys, const SteSignature& s, BytesView msg,
                                  const SteCoins& coins) const {
    if (!s.aux.empty()) return false;
    Element g = b_.generator(GroupId::G1);
    if (!b_.eq(GroupId::G1, b_.pow(GroupId::G1, g, coins.kem_rand), s.encap)) return false;
    Element key = b_.pow(GroupId::G1, keys.confirmer.pk, coins.kem_rand);
    Element core = enc_.dem_decrypt(key, s.pad);
    return sig_.verify(keys.signer.pk, signed_string(s.encap, msg), {core, s.aux});
}

Statement SteFamily::statement(const SteKeys& keys, const SteSignature& s, BytesView msg,
                               bool deny) const {
    sigma::SigEncValidityStmt st;
    st.backend = &b_;
    st.enc_pk = keys.confirmer.pk;
    st.ct = {s.encap, s.pad};
    st.sig_pk = keys.signer.pk;
    st.signed_msg = signed_string(s.encap, msg);
    st.aux = s.aux;
    st.deny = deny;
    return Statement::make(std::move(st));
}

Witness SteFamily::confirmer_witness(const SteKeys& keys) const {
    return Witness::single(LeafWitness::dec_key(keys.confirmer.sk));
}

Witness SteFamily::signer_witness(const SteCoins& coins) const {
    return Witness::single(LeafWitness::enc_randomness(coins.kem_rand));
}

std::optional<SteConverted> SteFamily::convert(const SteKeys& keys, const SteSignature& s,
                                               BytesView msg) const {
    if (!verify(keys, s, msg)) return std::nullopt;
    Element key = enc_.kem_decap(keys.confirmer.sk, s.encap);
    return SteConverted{s.encap, enc_.dem_decrypt(key, s.pad), s.aux};
}

bool SteFamily::verify_converted(const SteKeys& keys, const SteConverted& c, BytesView msg) const {
    return sig_.verify(keys.signer.pk, signed_string(c.encap, msg), {c.core, c.aux});
}

SteSignature SteFamily::random_signature(RandSource& rs) const {
    // the signature space is G1 x G1 with an empty simulatable part
    return {b_.random_element(GroupId::G1, rs), b_.random_element(GroupId::G1, rs), {}};
}

SteSignature SteFamily::maul(const Element& confirmer_pk, const SteSignature& s,
                             RandSource& rs) const {
    // multiply with a fresh encryption of the identity: the plaintext core
    // is preserved while both ciphertext components change
    Scalar t = b_.random_nonzero_scalar(rs);
    ElGamalCt one = enc_.encrypt(confirmer_pk, b_.identity(GroupId::G1), t);
    ElGamalCt mauled = enc_.ct_op({s.encap, s.pad}, one);
    return {mauled.encap, mauled.pad, s.aux};
}

Bytes SteFamily::encode_signature(const SteSignature& s) const {
    Writer w;
    w.raw(b_.encode(GroupId::G1, s.encap));
    w.raw(b_.encode(GroupId::G1, s.pad));
    w.blob(s.aux);
    return w.take();
}

std::optional<SteSignature> SteFamily::decode_signature(BytesView b) const {
    try {
        Reader r(b);
        size_t n = b_.element_size(GroupId::G1);
        auto encap = b_.decode(GroupId::G1, r.raw(n));
        auto pad = b_.decode(GroupId::G1, r.raw(n));
        Bytes aux = r.blob();
        r.expect_done();
        if (!encap || !pad) return std::nullopt;
        return SteSignature{*encap, *pad, aux};
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

Bytes SteFamily::encode_converted(const SteConverted& c) const {
    Writer w;
    w.raw(b_.encode(GroupId::G1, c.encap));
    w.raw(b_.encode(GroupId::G1, c.core));
    w.blob(c.aux);
    return w.take();
}

std::optional<SteConverted> SteFamily::decode_converted(BytesView b) const {
    try {
        Reader r(b);
        size_t n = b_.element_size(GroupId::G1);
        auto encap = b_.decode(GroupId::G1, r.raw(n));
        auto core = b_.decode(GroupId::G1, r.raw(n));
        Bytes aux = r.blob();
        r.expect_done();
        if (!encap || !core) return std::nullopt;
        return SteConverted{*encap, *core, aux};
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

// --- encrypt-then-sign ---

SteKeys EtsScheme::keygen(RandSource& rs) const { return {sig_.keygen(rs), enc_.keygen(rs)}; }

std::optional<EtsSignature> EtsScheme::sign(const SteKeys& keys, BytesView msg, RandSource& rs,
                                            EtsCoins* coins) const {
    auto embedded = b_.embed_message(msg);
    if (!embedded) return std::nullopt;
    Scalar a;
    ElGamalCt ct = enc_.encrypt(keys.confirmer.pk, *embedded, rs, &a);
    if (coins) coins->enc_rand = a;
    SplitSig s = sig_.sign(keys.signer.sk, enc_.ct_encode(ct));
    return EtsSignature{ct, s};
}

bool EtsScheme::sig_layer_valid(const SteKeys& keys, const EtsSignature& s) const {
    return sig_.verify(keys.signer.pk, enc_.ct_encode(s.ct), s.sig);
}

bool EtsScheme::verify(const SteKeys& keys, const EtsSignature& s, BytesView msg) const {
    if (!sig_layer_valid(keys, s)) return false;
    auto embedded = b_.embed_message(msg);
    if (!embedded) return false;
    return b_.eq(GroupId::G1, enc_.decrypt(keys.confirmer.sk, s.ct), *embedded);
}

bool EtsScheme::verify_with_coins(const SteKeys& keys, const EtsSignature& s, BytesView msg,
                                  const EtsCoins& coins) const {
    if (!sig_layer_valid(keys, s)) return false;
    auto embedded = b_.embed_message(msg);
    if (!embedded) return false;
    ElGamalCt want = enc_.encrypt(keys.confirmer.pk, *embedded, coins.enc_rand);
    return b_.eq(GroupId::G1, want.encap, s.ct.encap) && b_.eq(GroupId::G1, want.pad, s.ct.pad);
}

Statement EtsScheme::statement(const SteKeys& keys, const EtsSignature& s, BytesView msg,
                               bool deny) const {
    auto embedded = b_.embed_message(msg);
    if (!embedded) throw EncodeError("message does not embed into the group");
    if (!deny)
        return Statement::make(
            sigma::CorrectDecryptionStmt{&b_, keys.confirmer.pk, s.ct, *embedded});
    return Statement::make(
        sigma::PlaintextInequalityStmt{&b_, keys.confirmer.pk, s.ct, *embedded});
}

Witness EtsScheme::confirmer_witness(const SteKeys& keys) const {
    return Witness::single(LeafWitness::dec_key(keys.confirmer.sk));
}

Witness EtsScheme::signer_witness(const EtsCoins& coins) const {
    return Witness::single(LeafWitness::enc_randomness(coins.enc_rand));
}

static const Bytes kEtsTag = str_bytes("osg/ets/convert");

std::optional<EtsConverted> EtsScheme::convert(const SteKeys& keys, const EtsSignature& s,
                                               BytesView msg, RandSource& rs) const {
    if (!verify(keys, s, msg)) return std::nullopt;
    Statement st = statement(keys, s, msg, false);
    sigma::SigmaTranscript pf = sigma::fs_prove(st, confirmer_witness(keys),
                                                sigma::ChallengeSpace::amplified(b_), kEtsTag, rs);
    return EtsConverted{s, std::move(pf)};
}

bool EtsScheme::verify_converted(const SteKeys& keys, const EtsConverted& c, BytesView msg) const {
    if (!sig_layer_valid(keys, c.body)) return false;
    Statement st;
    try {
        st = statement(keys, c.body, msg, false);
    } catch (const EncodeError&) {
        return false;
    }
    return sigma::fs_verify(st, c.proof, kEtsTag);
}

EtsSignature EtsScheme::random_signature(RandSource& rs) const {
    return {{b_.random_element(GroupId::G1, rs), b_.random_element(GroupId::G1, rs)},
            {b_.random_element(GroupId::G1, rs), {}}};
}

Bytes EtsScheme::encode_signature(const EtsSignature& s) const {
    Writer w;
    w.raw(enc_.ct_encode(s.ct));
    w.raw(b_.encode(GroupId::G1, s.sig.core));
    w.blob(s.sig.aux);
    return w.take();
}

std::optional<EtsSignature> EtsScheme::decode_signature(BytesView b) const {
    try {
        Reader r(b);
        size_t n = b_.element_size(GroupId::G1);
        auto ct = enc_.ct_decode(r.raw(2 * n));
        auto core = b_.decode(GroupId::G1, r.raw(n));
        Bytes aux = r.blob();
        r.expect_done();
        if (!ct || !core) return std::nullopt;
        return EtsSignature{*ct, {*core, aux}};
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

Bytes EtsScheme::encode_converted(const EtsConverted& c) const {
    Writer w;
    w.blob(encode_signature(c.body));
    w.blob(sigma::encode_transcript(c.proof));
    return w.take();
}

std::optional<EtsConverted> EtsScheme::decode_converted(BytesView b) const {
    try {
        Reader r(b);
        auto body = decode_signature(r.blob());
        auto proof = sigma::decode_transcript(r.blob());
        r.expect_done();
        if (!body || !proof) return std::nullopt;
        return EtsConverted{*body, *proof};
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

// --- commit-then-encrypt-then-sign ---

static const Bytes kCommitTag = str_bytes("osg/ctets/msg");

CtKeys CtetsScheme::keygen(RandSource& rs) const {
    auto key = std::make_shared<PaillierKey>(Paillier::keygen(rs, paillier_bits(b_)));
    return {sig_.keygen(rs), std::move(key)};
}

Bytes CtetsScheme::signed_string(const CtKeys& keys, const CtSignature& s) const {
    Writer w;
    size_t nw = (mpz_sizeinbase(keys.confirmer->n2.get_mpz_t(), 2) + 7) / 8;
    w.mpz_fixed(s.opening_ct, nw);  // fixed width keeps the commitment offset stable
    w.raw(b_.encode(GroupId::G1, s.commit_value));
    return w.take();
}

CtSignature CtetsScheme::sign(const CtKeys& keys, BytesView msg, RandSource& rs,
                              CtCoins* coins) const {
    Scalar m = hash_to_scalar(b_, kCommitTag, msg);
    Scalar r = b_.random_scalar(rs);
    Element c = ped_.commit(m, r);
    mpz_class rho;
    mpz_class e = Paillier::encrypt(*keys.confirmer, r.v, rs, &rho);
    if (coins) *coins = {r.v, rho};
    CtSignature out{c, e, {}};
    out.sig = sig_.sign(keys.signer.sk, signed_string(keys, out));
    return out;
}

bool CtetsScheme::sig_layer_valid(const CtKeys& keys, const CtSignature& s) const {
    if (!Paillier::ct_valid(*keys.confirmer, s.opening_ct)) return false;
    return sig_.verify(keys.signer.pk, signed_string(keys, s), s.sig);
}

bool CtetsScheme::verify(const CtKeys& keys, const CtSignature& s, BytesView msg) const {
    if (!keys.confirmer->has_private()) throw std::runtime_error("confirmer key required");
    if (!sig_layer_valid(keys, s)) return false;
    auto [r, rho] = Paillier::decrypt_full(*keys.confirmer, s.opening_ct);
    (void)rho;
    if (r >= b_.order()) return false;
    return ped_.open(s.commit_value, hash_to_scalar(b_, kCommitTag, msg), Scalar{r});
}

bool CtetsScheme::verify_with_coins(const CtKeys& keys, const CtSignature& s, BytesView msg,
                                    const CtCoins& coins) const {
    if (!sig_layer_valid(keys, s)) return false;
    if (Paillier::encrypt(*keys.confirmer, coins.opening, coins.enc_rand) != s.opening_ct)
        return false;
    return ped_.open(s.commit_value, hash_to_scalar(b_, kCommitTag, msg), Scalar{coins.opening});
}

Statement CtetsScheme::statement(const CtKeys& keys, const CtSignature& s, BytesView msg,
                                 bool deny) const {
    sigma::CommitEncOpeningStmt st;
    st.backend = &b_;
    st.paillier_n = keys.confirmer->n;
    st.ct = s.opening_ct;
    st.commitment = s.commit_value;
    st.msg = hash_to_scalar(b_, kCommitTag, msg);
    st.deny = deny;
    return Statement::make(std::move(st));
}

Witness CtetsScheme::confirmer_witness(const CtKeys& keys) const {
    return Witness::single(LeafWitness::paillier_key(keys.confirmer));
}

Witness CtetsScheme::signer_witness(const CtCoins& coins) const {
    return Witness::single(LeafWitness::commit_opening(coins.opening, coins.enc_rand));
}

std::optional<CtConverted> CtetsScheme::convert(const CtKeys& keys, const CtSignature& s,
                                                BytesView msg) const {
    if (!verify(keys, s, msg)) return std::nullopt;
    auto [r, rho] = Paillier::decrypt_full(*keys.confirmer, s.opening_ct);
    (void)rho;
    return CtConverted{s, Scalar{r}};
}

bool CtetsScheme::verify_converted(const CtKeys& keys, const CtConverted& c, BytesView msg) const {
    if (!sig_layer_valid(keys, c.body)) return false;
    return ped_.open(c.body.commit_value, hash_to_scalar(b_, kCommitTag, msg), c.opening);
}

CtSignature CtetsScheme::random_signature(const CtKeys& keys, RandSource& rs) const {
    // uniform over syntactically well-formed tuples: the encrypted value
    // lives in the opening space, so the denial protocol can always run
    CtSignature s;
    s.commit_value = b_.random_element(GroupId::G1, rs);
    s.opening_ct = Paillier::encrypt(*keys.confirmer, rs.below(b_.order()), rs, nullptr);
    s.sig = {b_.random_element(GroupId::G1, rs), {}};
    return s;
}

CtSignature CtetsScheme::maul(const CtKeys& keys, const CtSignature& s, RandSource& rs) const {
    CtSignature out = s;
    out.opening_ct = Paillier::ct_op(*keys.confirmer, s.opening_ct,
                                     Paillier::encrypt(*keys.confirmer, 0, rs, nullptr));
    return out;
}

Bytes CtetsScheme::encode_signature(const CtKeys& keys, const CtSignature& s) const {
    Writer w;
    size_t nw = (mpz_sizeinbase(keys.confirmer->n2.get_mpz_t(), 2) + 7) / 8;
    w.raw(b_.encode(GroupId::G1, s.commit_value));
    w.mpz_fixed(s.opening_ct, nw);
    w.raw(b_.encode(GroupId::G1, s.sig.core));
    w.blob(s.sig.aux);
    return w.take();
}

std::optional<CtSignature> CtetsScheme::decode_signature(const CtKeys& keys, BytesView b) const {
    try {
        Reader r(b);
        size_t n = b_.element_size(GroupId::G1);
        size_t nw = (mpz_sizeinbase(keys.confirmer->n2.get_mpz_t(), 2) + 7) / 8;
        auto c = b_.decode(GroupId::G1, r.raw(n));
        mpz_class e = r.mpz_fixed(nw);
        auto core = b_.decode(GroupId::G1, r.raw(n));
        Bytes aux = r.blob();
        r.expect_done();
        if (!c || !core || !Paillier::ct_valid(*keys.confirmer, e)) return std::nullopt;
        return CtSignature{*c, e, {*core, aux}};
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

Bytes CtetsScheme::encode_converted(const CtKeys& keys, const CtConverted& c) const {
    Writer w;
    w.blob(encode_signature(keys, c.body));
    w.raw(b_.scalar_encode(c.opening));
    return w.take();
}

std::optional<CtConverted> CtetsScheme::decode_converted(const CtKeys& keys, BytesView b) const {
    try {
        Reader r(b);
        auto body = decode_signature(keys, r.blob());
        auto opening = b_.scalar_decode(r.raw(b_.scalar_size()));
        r.expect_done();
        if (!body || !opening) return std::nullopt;
        return CtConverted{*body, *opening};
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

// --- classic commit-then-encrypt-and-sign (attack target) ---

CtKeys CteasScheme::keygen(RandSource& rs) const {
    auto key = std::make_shared<PaillierKey>(
        Paillier::keygen(rs, CtetsScheme::paillier_bits(b_)));
    return {sig_.keygen(rs), std::move(key)};
}

mpz_class CteasScheme::pack_plain(const mpz_class& opening, BytesView msg,
                                  const Element& signer_pk) const {
    // opening * 2^32 + H32(msg || signer pk); stands in for r || m || pk
    Writer w;
    w.raw(msg);
    w.raw(b_.encode(GroupId::G2, signer_pk));
    Bytes d = sha256(BytesView(w.data()));
    mpz_class tag = mpz_from_bytes(BytesView(d).subspan(0, 4));
    return opening * (mpz_class(1) << 32) + tag;
}

CtSignature CteasScheme::sign(const CtKeys& keys, BytesView msg, RandSource& rs) const {
    Scalar m = hash_to_scalar(b_, kCommitTag, msg);
    Scalar r = b_.random_scalar(rs);
    Element c = ped_.commit(m, r);
    mpz_class plain = pack_plain(r.v, msg, keys.signer.pk);
    if (plain >= keys.confirmer->n) throw std::runtime_error("paillier modulus too small");
    mpz_class e = Paillier::encrypt(*keys.confirmer, plain, rs, nullptr);
    // the flaw under attack: the signature covers the commitment alone
    SplitSig sg = sig_.sign(keys.signer.sk, b_.encode(GroupId::G1, c));
    return {c, e, sg};
}

bool CteasScheme::verify(const CtKeys& keys, const CtSignature& s, BytesView msg) const {
    return convert(keys, s, msg).has_value();
}

std::optional<Bytes> CteasScheme::convert(const CtKeys& keys, const CtSignature& s,
                                          BytesView msg) const {
    if (!Paillier::ct_valid(*keys.confirmer, s.opening_ct)) return std::nullopt;
    if (!sig_.verify(keys.signer.pk, b_.encode(GroupId::G1, s.commit_value), s.sig))
        return std::nullopt;
    auto [plain, rho] = Paillier::decrypt_full(*keys.confirmer, s.opening_ct);
    (void)rho;
    mpz_class r = plain >> 32;
    mpz_class tag = plain & ((mpz_class(1) << 32) - 1);
    if (pack_plain(r, msg, keys.signer.pk) != plain) return std::nullopt;
    (void)tag;
    if (r >= b_.order()) return std::nullopt;
    if (!ped_.open(s.commit_value, hash_to_scalar(b_, kCommitTag, msg), Scalar{r}))
        return std::nullopt;
    return mpz_to_fixed(r, b_.scalar_size());
}

CtSignature CteasScheme::maul(const CtKeys& keys, const CtSignature& s, RandSource& rs) const {
    CtSignature out = s;
    out.opening_ct = Paillier::ct_op(*keys.confirmer, s.opening_ct,
                                     Paillier::encrypt(*keys.confirmer, 0, rs, nullptr));
    return out;
}

Bytes CteasScheme::encode_signature(const CtKeys& keys, const CtSignature& s) const {
    Writer w;
    size_t nw = (mpz_sizeinbase(keys.confirmer->n2.get_mpz_t(), 2) + 7) / 8;
    w.raw(b_.encode(GroupId::G1, s.commit_value));
    w.mpz_fixed(s.opening_ct, nw);
    w.raw(b_.encode(GroupId::G1, s.sig.core));
    w.blob(s.sig.aux);
    return w.take();
}

std::optional<CtSignature> CteasScheme::decode_signature(const CtKeys& keys, BytesView b) const {
    CtetsScheme helper(b_);
    return helper.decode_signature(keys, b);
}

}  // namespace osg::cdcs
