#include "osg/signcrypt/signcrypt.hpp"

namespace osg::signcrypt {

using sigma::LeafWitness;
using sigma::Statement;
using sigma::Witness;

Bytes EtSteScheme::signed_string(const Signcryption& sc) const {
    Writer w;
    w.raw(b_.encode(GroupId::G1, sc.encap));
    w.raw(enc_.ct_encode(sc.msg_ct));
    return w.take();
}

std::optional<Signcryption> EtSteScheme::signcrypt(const SigKeyPair& sender,
                                                   const ReceiverKeys& recv, BytesView msg,
                                                   RandSource& rs, SigncryptCoins* coins) const {
    auto embedded = b_.embed_message(msg);
    if (!embedded) return std::nullopt;
    Scalar a;
    ElGamalCt e = enc_.encrypt(recv.msg_enc.pk, *embedded, rs, &a);
    Scalar k_rand;
    auto [encap, key] = enc_.kem_encap(recv.kem.pk, rs, &k_rand);
    if (coins) *coins = {a, k_rand};
    Signcryption out{e, encap, {}, {}};
    SplitSig core = sig_.sign(sender.sk, signed_string(out));
    out.pad = enc_.dem_encrypt(key, core.core);
    out.aux = core.aux;
    return out;
}

std::optional<Bytes> EtSteScheme::unsigncrypt(const SigKeyPair& sender, const ReceiverKeys& recv,
                                              const Signcryption& sc) const {
    if (!sc.aux.empty()) return std::nullopt;
    Element key = enc_.kem_decap(recv.kem.sk, sc.encap);
    Element core = enc_.dem_decrypt(key, sc.pad);
    if (!sig_.verify(sender.pk, signed_string(sc), {core, sc.aux})) return std::nullopt;
    Element m = enc_.decrypt(recv.msg_enc.sk, sc.msg_ct);
    return b_.extract_message(m);
}

Statement EtSteScheme::validity_statement(const Element& sender_pk, const ReceiverKeys& recv,
                                          const Signcryption& sc) const {
    sigma::DecryptionKnowledgeStmt msg_branch{&b_, recv.msg_enc.pk, sc.msg_ct};
    sigma::SigEncValidityStmt sig_branch;
    sig_branch.backend = &b_;
    sig_branch.enc_pk = recv.kem.pk;
    sig_branch.ct = {sc.encap, sc.pad};
    sig_branch.sig_pk = sender_pk;
    sig_branch.signed_msg = signed_string(sc);
    sig_branch.aux = sc.aux;
    sig_branch.deny = false;
    return Statement::conjunction(
        {Statement::make(std::move(msg_branch)), Statement::make(std::move(sig_branch))});
}

Statement EtSteScheme::confirm_statement(const Element& sender_pk, const ReceiverKeys& recv,
                                         const Signcryption& sc, BytesView msg, bool deny) const {
    auto embedded = b_.embed_message(msg);
    if (!embedded) throw EncodeError("message does not embed into the group");
    Statement msg_branch =
        deny ? Statement::make(
                   sigma::PlaintextInequalityStmt{&b_, recv.msg_enc.pk, sc.msg_ct, *embedded})
             : Statement::make(
                   sigma::CorrectDecryptionStmt{&b_, recv.msg_enc.pk, sc.msg_ct, *embedded});
    sigma::SigEncValidityStmt sig_branch;
    sig_branch.backend = &b_;
    sig_branch.enc_pk = recv.kem.pk;
    sig_branch.ct = {sc.encap, sc.pad};
    sig_branch.sig_pk = sender_pk;
    sig_branch.signed_msg = signed_string(sc);
    sig_branch.aux = sc.aux;
    sig_branch.deny = false;
    return Statement::conjunction({std::move(msg_branch), Statement::make(std::move(sig_branch))});
}

Witness EtSteScheme::sender_validity_witness(const SigncryptCoins& coins) const {
    Witness w;
    w.parts = {LeafWitness::enc_randomness(coins.msg_rand),
               LeafWitness::enc_randomness(coins.kem_rand)};
    return w;
}

Witness EtSteScheme::receiver_validity_witness(const ReceiverKeys& recv) const {
    Witness w;
    w.parts = {LeafWitness::dec_key(recv.msg_enc.sk), LeafWitness::dec_key(recv.kem.sk)};
    return w;
}

Witness EtSteScheme::receiver_confirm_witness(const ReceiverKeys& recv) const {
    return receiver_validity_witness(recv);
}

static const Bytes kExtractTag = str_bytes("osg/etste/extract");

std::optional<Extraction> EtSteScheme::sig_extract(const SigKeyPair& sender,
                                                   const ReceiverKeys& recv,
                                                   const Signcryption& sc, BytesView msg,
                                                   RandSource& rs) const {
    auto got = unsigncrypt(sender, recv, sc);
    if (!got || BytesView(*got).size() != msg.size() ||
        !std::equal(got->begin(), got->end(), msg.begin()))
        return std::nullopt;
    auto embedded = b_.embed_message(msg);
    Statement st = Statement::make(
        sigma::CorrectDecryptionStmt{&b_, recv.msg_enc.pk, sc.msg_ct, *embedded});
    sigma::SigmaTranscript pf =
        sigma::fs_prove(st, Witness::single(LeafWitness::dec_key(recv.msg_enc.sk)),
                        sigma::ChallengeSpace::amplified(b_), kExtractTag, rs);
    Element key = enc_.kem_decap(recv.kem.sk, sc.encap);
    return Extraction{std::move(pf), enc_.dem_decrypt(key, sc.pad), sc.aux};
}

bool EtSteScheme::sig_verify(const Element& sender_pk, const ReceiverKeys& recv,
                             const Signcryption& sc, BytesView msg, const Extraction& ex) const {
    auto embedded = b_.embed_message(msg);
    if (!embedded) return false;
    Statement st = Statement::make(
        sigma::CorrectDecryptionStmt{&b_, recv.msg_enc.pk, sc.msg_ct, *embedded});
    if (!sigma::fs_verify(st, ex.proof, kExtractTag)) return false;
    return sig_.verify(sender_pk, signed_string(sc), {ex.core, ex.aux});
}

Signcryption EtSteScheme::random_signcryption(RandSource& rs) const {
    // uniform over syntactically well-formed tuples
    return {{b_.random_element(GroupId::G1, rs), b_.random_element(GroupId::G1, rs)},
            b_.random_element(GroupId::G1, rs),
            b_.random_element(GroupId::G1, rs),
            {}};
}

Signcryption EtSteScheme::maul_msg_layer(const ReceiverKeys& recv, const Signcryption& sc,
                                         RandSource& rs) const {
    Signcryption out = sc;
    Scalar t = b_.random_nonzero_scalar(rs);
    ElGamalCt one = enc_.encrypt(recv.msg_enc.pk, b_.identity(GroupId::G1), t);
    out.msg_ct = enc_.ct_op(sc.msg_ct, one);
    return out;
}

Signcryption EtSteScheme::maul_pad(const Signcryption& sc, RandSource& rs) const {
    Signcryption out = sc;
    Element r = b_.random_element(GroupId::G1, rs);
    out.pad = b_.op(GroupId::G1, sc.pad, r);
    return out;
}

Bytes EtSteScheme::encode(const Signcryption& sc) const {
    Writer w;
    w.raw(enc_.ct_encode(sc.msg_ct));
    w.raw(b_.encode(GroupId::G1, sc.encap));
    w.raw(b_.encode(GroupId::G1, sc.pad));
    w.blob(sc.aux);
    return w.take();
}

std::optional<Signcryption> EtSteScheme::decode(BytesView b) const {
    try {
        Reader r(b);
        size_t n = b_.element_size(GroupId::G1);
        auto ct = enc_.ct_decode(r.raw(2 * n));
        auto encap = b_.decode(GroupId::G1, r.raw(n));
        auto pad = b_.decode(GroupId::G1, r.raw(n));
        Bytes aux = r.blob();
        r.expect_done();
        if (!ct || !encap || !pad) return std::nullopt;
        return Signcryption{*ct, *encap, *pad, aux};
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

Bytes EtSteScheme::encode_extraction(const Extraction& ex) const {
    Writer w;
    w.blob(sigma::encode_transcript(ex.proof));
    w.raw(b_.encode(GroupId::G1, ex.core));
    w.blob(ex.aux);
    return w.take();
}

std::optional<Extraction> EtSteScheme::decode_extraction(BytesView b) const {
    try {
        Reader r(b);
        auto proof = sigma::decode_transcript(r.blob());
        auto core = b_.decode(GroupId::G1, r.raw(b_.element_size(GroupId::G1)));
        Bytes aux = r.blob();
        r.expect_done();
        if (!proof || !core) return std::nullopt;
        return Extraction{*proof, *core, aux};
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

}  // namespace osg::signcrypt
