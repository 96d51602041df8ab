// Command-line front end: key management, signing, confirmation/denial
// protocols (in-process or split across processes over framed streams),
// conversion, signcryption, and the attack/game suites.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "osg/analysis/games.hpp"
#include "osg/cli/envelope.hpp"

using namespace osg;
using namespace osg::cli;
using analysis::SchemeId;
using sigma::ChallengeSpace;

namespace {

namespace fs = std::filesystem;

int usage_error(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return 2;
}

Bytes read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw DecodeError("cannot read " + path);
    return Bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, BytesView data) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw EncodeError("cannot write " + path);
    f.write(reinterpret_cast<const char*>(data.data()), std::streamsize(data.size()));
}

Envelope expect(const Envelope& e, ArtifactKind kind) {
    if (e.kind != kind) throw DecodeError("unexpected artifact kind");
    return e;
}

// --- key material ---

struct KeyDir {
    std::string dir;
    BackendKind backend;
    SchemeId scheme;

    std::string path(const char* name) const { return dir + "/" + name; }

    Envelope load(const char* name, ArtifactKind kind) const {
        return expect(load_envelope(path(name)), kind);
    }

    SigKeyPair signer_private(const char* name = "signer.key") const {
        const Backend& B = get_backend(backend);
        Envelope e = load(name, ArtifactKind::SignerPrivate);
        Reader r{BytesView(e.payload)};
        auto sk = B.scalar_decode(r.raw(B.scalar_size()));
        auto pk = B.decode(GroupId::G2, r.raw(B.element_size(GroupId::G2)));
        if (!sk || !pk) throw DecodeError("bad signer key");
        return {*sk, *pk};
    }
    Element signer_public(const char* name = "signer.pub") const {
        const Backend& B = get_backend(backend);
        Envelope e = load(name, ArtifactKind::SignerPublic);
        auto pk = B.decode(GroupId::G2, e.payload);
        if (!pk) throw DecodeError("bad signer public key");
        return *pk;
    }
    EncKeyPair confirmer_private() const {
        const Backend& B = get_backend(backend);
        Envelope e = load("confirmer.key", ArtifactKind::ConfirmerPrivate);
        Reader r{BytesView(e.payload)};
        auto sk = B.scalar_decode(r.raw(B.scalar_size()));
        auto pk = B.decode(GroupId::G1, r.raw(B.element_size(GroupId::G1)));
        if (!sk || !pk) throw DecodeError("bad confirmer key");
        return {*sk, *pk};
    }
    Element confirmer_public() const {
        const Backend& B = get_backend(backend);
        Envelope e = load("confirmer.pub", ArtifactKind::ConfirmerPublic);
        auto pk = B.decode(GroupId::G1, e.payload);
        if (!pk) throw DecodeError("bad confirmer public key");
        return *pk;
    }
    std::shared_ptr<PaillierKey> paillier_private() const {
        Envelope e = load("confirmer.key", ArtifactKind::PaillierPrivate);
        Reader r{BytesView(e.payload)};
        auto k = std::make_shared<PaillierKey>();
        k->n = mpz_from_bytes(r.blob());
        k->lambda = mpz_from_bytes(r.blob());
        k->mu = mpz_from_bytes(r.blob());
        k->n2 = k->n * k->n;
        return k;
    }
    std::shared_ptr<PaillierKey> paillier_public() const {
        Envelope e = load("confirmer.pub", ArtifactKind::PaillierPublic);
        Reader r{BytesView(e.payload)};
        auto k = std::make_shared<PaillierKey>();
        k->n = mpz_from_bytes(r.blob());
        k->n2 = k->n * k->n;
        return k;
    }
    signcrypt::ReceiverKeys receiver_private() const {
        const Backend& B = get_backend(backend);
        Envelope e = load("receiver.key", ArtifactKind::ReceiverPrivate);
        Reader r{BytesView(e.payload)};
        auto s1 = B.scalar_decode(r.raw(B.scalar_size()));
        auto s2 = B.scalar_decode(r.raw(B.scalar_size()));
        auto p1 = B.decode(GroupId::G1, r.raw(B.element_size(GroupId::G1)));
        auto p2 = B.decode(GroupId::G1, r.raw(B.element_size(GroupId::G1)));
        if (!s1 || !s2 || !p1 || !p2) throw DecodeError("bad receiver key");
        return {{*s1, *p1}, {*s2, *p2}};
    }
    signcrypt::ReceiverKeys receiver_public() const {
        const Backend& B = get_backend(backend);
        Envelope e = load("receiver.pub", ArtifactKind::ReceiverPublic);
        Reader r{BytesView(e.payload)};
        auto p1 = B.decode(GroupId::G1, r.raw(B.element_size(GroupId::G1)));
        auto p2 = B.decode(GroupId::G1, r.raw(B.element_size(GroupId::G1)));
        if (!p1 || !p2) throw DecodeError("bad receiver public key");
        signcrypt::ReceiverKeys k;
        k.msg_enc.pk = *p1;
        k.kem.pk = *p2;
        return k;
    }

    cdcs::SteKeys ste_keys(bool need_confirmer_sk, bool need_signer_sk) const {
        cdcs::SteKeys k;
        if (need_signer_sk) {
            k.signer = signer_private();
        } else {
            k.signer.pk = signer_public();
        }
        if (need_confirmer_sk) {
            k.confirmer = confirmer_private();
        } else {
            k.confirmer.pk = confirmer_public();
        }
        return k;
    }
    cdcs::CtKeys ct_keys(bool need_confirmer_sk, bool need_signer_sk) const {
        cdcs::CtKeys k;
        if (need_signer_sk) {
            k.signer = signer_private();
        } else {
            k.signer.pk = signer_public();
        }
        k.confirmer = need_confirmer_sk ? paillier_private() : paillier_public();
        return k;
    }
};

void write_keys(const KeyDir& kd, Rng& rng) {
    const Backend& B = get_backend(kd.backend);
    fs::create_directories(kd.dir);
    auto put = [&](const char* name, ArtifactKind kind, Bytes payload) {
        save_envelope(kd.path(name), {kind, kd.backend, 1, std::move(payload)});
    };
    auto put_signer = [&](const char* pub, const char* key, const SigKeyPair& kp) {
        put(pub, ArtifactKind::SignerPublic, B.encode(GroupId::G2, kp.pk));
        Writer w;
        w.raw(B.scalar_encode(kp.sk));
        w.raw(B.encode(GroupId::G2, kp.pk));
        put(key, ArtifactKind::SignerPrivate, w.take());
    };
    switch (kd.scheme) {
        case SchemeId::NewSte:
        case SchemeId::PlainSte:
        case SchemeId::Ets: {
            cdcs::SteFamily sch(B, kd.scheme == SchemeId::NewSte);
            cdcs::SteKeys keys = sch.keygen(rng);
            put_signer("signer.pub", "signer.key", keys.signer);
            put("confirmer.pub", ArtifactKind::ConfirmerPublic,
                B.encode(GroupId::G1, keys.confirmer.pk));
            Writer w;
            w.raw(B.scalar_encode(keys.confirmer.sk));
            w.raw(B.encode(GroupId::G1, keys.confirmer.pk));
            put("confirmer.key", ArtifactKind::ConfirmerPrivate, w.take());
            break;
        }
        case SchemeId::Ctets:
        case SchemeId::Cteas: {
            cdcs::CtKeys keys = kd.scheme == SchemeId::Ctets
                                    ? cdcs::CtetsScheme(B).keygen(rng)
                                    : cdcs::CteasScheme(B).keygen(rng);
            put_signer("signer.pub", "signer.key", keys.signer);
            auto blob_of = [](const mpz_class& v) {
                return mpz_to_fixed(v, v == 0 ? 0 : (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8);
            };
            Writer pub;
            pub.blob(blob_of(keys.confirmer->n));
            put("confirmer.pub", ArtifactKind::PaillierPublic, pub.take());
            Writer priv;
            priv.blob(blob_of(keys.confirmer->n));
            priv.blob(blob_of(keys.confirmer->lambda));
            priv.blob(blob_of(keys.confirmer->mu));
            put("confirmer.key", ArtifactKind::PaillierPrivate, priv.take());
            break;
        }
        case SchemeId::EtSte: {
            signcrypt::EtSteScheme sch(B);
            SigKeyPair sender = sch.keygen_sender(rng);
            signcrypt::ReceiverKeys recv = sch.keygen_receiver(rng);
            put_signer("sender.pub", "sender.key", sender);
            {
                Writer w;
                w.raw(B.encode(GroupId::G1, recv.msg_enc.pk));
                w.raw(B.encode(GroupId::G1, recv.kem.pk));
                put("receiver.pub", ArtifactKind::ReceiverPublic, w.take());
            }
            {
                Writer w;
                w.raw(B.scalar_encode(recv.msg_enc.sk));
                w.raw(B.scalar_encode(recv.kem.sk));
                w.raw(B.encode(GroupId::G1, recv.msg_enc.pk));
                w.raw(B.encode(GroupId::G1, recv.kem.pk));
                put("receiver.key", ArtifactKind::ReceiverPrivate, w.take());
            }
            break;
        }
        case SchemeId::Dp:
        case SchemeId::DpRepaired: {
            analysis::DpScheme sch(kd.scheme == SchemeId::DpRepaired);
            analysis::DpKeys keys = sch.keygen(rng);
            Writer pub;
            for (uint32_t v : {keys.pub.p, keys.pub.t, keys.pub.g, keys.pub.h, keys.pub.alpha,
                               keys.pub.beta})
                pub.u32(v);
            put("dp.pub", ArtifactKind::DpPublic, pub.take());
            Writer priv;
            priv.u32(keys.priv.x);
            priv.u32(keys.priv.nu);
            put("dp.key", ArtifactKind::DpPrivate, priv.take());
            break;
        }
    }
}

// --- signature envelopes ---

Envelope make_signature_envelope(BackendKind backend, SchemeId scheme, BytesView body) {
    Writer w;
    w.u8(uint8_t(scheme));
    w.raw(body);
    return {ArtifactKind::Signature, backend, 1, w.take()};
}

Bytes signature_body(const Envelope& e, SchemeId scheme) {
    Reader r{BytesView(e.payload)};
    if (SchemeId(r.u8()) != scheme) throw DecodeError("signature belongs to another scheme");
    return r.raw(r.remaining());
}

// --- wire-driven protocol sessions ---

struct Channel {
    std::istream& in;
    std::ostream& out;
    BackendKind backend;

    void send(uint8_t type, BytesView body) {
        Writer w;
        w.u8(type);
        w.raw(body);
        write_frame(out, {ArtifactKind::ProtocolMsg, backend, 1, w.take()});
    }
    std::pair<uint8_t, Bytes> recv() {
        auto e = read_frame(in);
        if (!e || e->kind != ArtifactKind::ProtocolMsg || e->payload.empty())
            throw DecodeError("bad protocol frame");
        return {e->payload[0], Bytes(e->payload.begin() + 1, e->payload.end())};
    }
};

Bytes mpz_blob(const mpz_class& v) {
    size_t w = v == 0 ? 0 : (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
    return mpz_to_fixed(v, w);
}

int wire_prove(const sigma::Statement& stmt, const sigma::Witness& wit, const ChallengeSpace& cs,
               Rng& rng, Channel& ch) {
    sigma::ChallengeFn cb = [&](int depth, BytesView ctx) -> mpz_class {
        ch.send(depth == 0 ? 1 : 3, ctx);
        auto [type, body] = ch.recv();
        if (type != (depth == 0 ? 2 : 4)) throw DecodeError("unexpected frame order");
        return mpz_from_bytes(body);
    };
    sigma::SigmaTranscript tr = sigma::prove(stmt, wit, cs, rng, cb);
    ch.send(5, sigma::encode_transcript(tr));
    return 0;
}

// inner challenges in issue order: leaves first message, then per branch
void collect_inner(const sigma::Transcript& t, std::vector<mpz_class>& out) {
    if (t.commitment.empty() && t.response.empty()) {
        for (const sigma::Transcript& c : t.children) collect_inner(c, out);
        return;
    }
    if (!t.children.empty()) out.push_back(t.children[0].challenge);
}

int wire_verify(const sigma::Statement& stmt, const ChallengeSpace& cs, Rng& rng, Channel& ch,
                const std::string& transcript_out) {
    auto [t1, commitment] = ch.recv();
    if (t1 != 1) throw DecodeError("expected commitment frame");
    mpz_class b = cs.draw(stmt, rng);
    ch.send(2, mpz_blob(b));
    std::vector<mpz_class> sent_inner;
    Bytes transcript_bytes;
    while (true) {
        auto [type, body] = ch.recv();
        if (type == 3) {
            mpz_class ib = rng.below(cs.bound);
            sent_inner.push_back(ib);
            ch.send(4, mpz_blob(ib));
            continue;
        }
        if (type == 5) {
            transcript_bytes = body;
            break;
        }
        throw DecodeError("unexpected frame type");
    }
    auto tr = sigma::decode_transcript(transcript_bytes);
    if (!tr) return 1;
    if (tr->statement != sigma::encode_statement(stmt)) return 1;
    if (tr->cbound != cs.bound || tr->root.challenge != b) return 1;
    Bytes expect_cm;
    if (stmt.is_leaf()) {
        expect_cm = tr->root.commitment;
    } else {
        for (const sigma::Transcript& c : tr->root.children)
            expect_cm.insert(expect_cm.end(), c.commitment.begin(), c.commitment.end());
    }
    if (expect_cm != commitment) return 1;
    std::vector<mpz_class> got_inner;
    collect_inner(tr->root, got_inner);
    if (got_inner != sent_inner) return 1;
    bool ok = sigma::verify(stmt, *tr);
    if (ok && !transcript_out.empty())
        save_envelope(transcript_out,
                      {ArtifactKind::Transcript, ch.backend, 1, sigma::encode_transcript(*tr)});
    return ok ? 0 : 1;
}

int run_in_process(const sigma::Statement& stmt, const sigma::Witness& wit,
                   const ChallengeSpace& cs, Rng& rng, BackendKind backend,
                   const std::string& transcript_out) {
    Rng prng = rng.fork(1), vrng = rng.fork(2);
    auto res = sigma::run_interactive(stmt, wit, cs, prng, vrng);
    if (!transcript_out.empty())
        save_envelope(transcript_out, {ArtifactKind::Transcript, backend, 1,
                                       sigma::encode_transcript(res.transcript)});
    return res.accepted ? 0 : 1;
}

struct ProtocolArgs {
    KeyDir kd;
    SchemeId scheme;
    Bytes sig_body;
    Bytes msg;
    bool deny = false;
    std::string role;
    std::string coins_file;
    std::string mode;
    std::string transcript_out;
    std::string dv_pub;
    uint64_t seed = 0;
};

sigma::Witness load_coins_witness(const ProtocolArgs& a) {
    const Backend& B = get_backend(a.kd.backend);
    Envelope e = expect(load_envelope(a.coins_file), ArtifactKind::Coins);
    Reader r{BytesView(e.payload)};
    switch (a.scheme) {
        case SchemeId::NewSte:
        case SchemeId::PlainSte:
        case SchemeId::Ets: {
            auto s = B.scalar_decode(r.raw(B.scalar_size()));
            if (!s) throw DecodeError("bad coins");
            return sigma::Witness::single(sigma::LeafWitness::enc_randomness(*s));
        }
        case SchemeId::Ctets: {
            mpz_class opening = mpz_from_bytes(r.blob());
            mpz_class rho = mpz_from_bytes(r.blob());
            return sigma::Witness::single(sigma::LeafWitness::commit_opening(opening, rho));
        }
        default: throw DecodeError("coins unsupported for scheme");
    }
}

int run_protocol(const ProtocolArgs& a) {
    const Backend& B = get_backend(a.kd.backend);
    bool prover_side = a.mode != "verify";
    bool confirmer_role = a.role != "signer";
    sigma::Statement stmt = [&]() -> sigma::Statement {
        switch (a.scheme) {
            case SchemeId::NewSte:
            case SchemeId::PlainSte: {
                cdcs::SteFamily sch(B, a.scheme == SchemeId::NewSte);
                auto sig = sch.decode_signature(a.sig_body);
                if (!sig) throw DecodeError("bad signature");
                return sch.statement(a.kd.ste_keys(false, false), *sig, a.msg, a.deny);
            }
            case SchemeId::Ets: {
                cdcs::EtsScheme sch(B);
                auto sig = sch.decode_signature(a.sig_body);
                if (!sig) throw DecodeError("bad signature");
                cdcs::SteKeys keys = a.kd.ste_keys(false, false);
                if (!sch.sig_layer_valid(keys, *sig))
                    throw DecodeError("signature layer invalid; protocol refused");
                return sch.statement(keys, *sig, a.msg, a.deny);
            }
            case SchemeId::Ctets: {
                cdcs::CtetsScheme sch(B);
                cdcs::CtKeys keys = a.kd.ct_keys(false, false);
                auto sig = sch.decode_signature(keys, a.sig_body);
                if (!sig) throw DecodeError("bad signature");
                if (!sch.sig_layer_valid(keys, *sig))
                    throw DecodeError("signature layer invalid; protocol refused");
                return sch.statement(keys, *sig, a.msg, a.deny);
            }
            default: throw DecodeError("protocol unsupported for scheme");
        }
    }();
    sigma::Witness wit;
    if (prover_side) {
        if (!confirmer_role) {
            wit = load_coins_witness(a);
        } else if (a.scheme == SchemeId::Ctets) {
            wit = sigma::Witness::single(sigma::LeafWitness::paillier_key(a.kd.paillier_private()));
        } else {
            wit = sigma::Witness::single(sigma::LeafWitness::dec_key(a.kd.confirmer_private().sk));
        }
    }
    if (prover_side && !sigma::relation_holds(stmt, wit)) {
        std::cerr << "statement is false from the prover's view; protocol refused\n";
        return 1;
    }
    ChallengeSpace cs = a.scheme == SchemeId::Ctets ? ChallengeSpace{mpz_class(16)}
                                                    : ChallengeSpace::amplified(B);
    Rng rng(a.seed);

    if (!a.dv_pub.empty()) {
        Envelope e = expect(load_envelope(a.dv_pub), ArtifactKind::DvKey);
        Reader r{BytesView(e.payload)};
        auto pk = B.decode(GroupId::G1, r.raw(B.element_size(GroupId::G1)));
        if (!pk) throw DecodeError("bad verifier key");
        sigma::HomMap f = sigma::HomMap::exp_bases(B, {B.generator(GroupId::G1)});
        sigma::Statement key_stmt =
            sigma::Statement::make(sigma::HomPreimageStmt{f, {sigma::Value{*pk}}});
        sigma::Statement dv = sigma::Statement::disjunction(stmt, std::move(key_stmt));
        sigma::Witness dvw = sigma::Witness::branch(0, 2, *wit.parts.at(0));
        if (a.mode != "run") throw DecodeError("designated-verifier mode runs in-process");
        return run_in_process(dv, dvw, cs, rng, a.kd.backend, a.transcript_out);
    }

    if (a.mode == "run") return run_in_process(stmt, wit, cs, rng, a.kd.backend, a.transcript_out);
    Channel ch{std::cin, std::cout, a.kd.backend};
    if (a.mode == "prove") return wire_prove(stmt, wit, cs, rng, ch);
    return wire_verify(stmt, cs, rng, ch, a.transcript_out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"convertible designated confirmer signatures and verifiable signcryption"};
    app.require_subcommand(1);

    std::string scheme_s = "newste", backend_s = "toy", keys_dir, msg_file, sig_file, out_file,
                coins_file, conv_file, role = "confirmer", mode = "run", transcript_file, sc_file,
                ex_file, target_s, dv_pub, experiment_s;
    uint64_t seed = 0;
    int trials = 200, instances = 100;
    bool repaired = false, as_json = false;

    auto add_common = [&](CLI::App* c, bool needs_seed) {
        c->add_option("--backend", backend_s)->check(CLI::IsMember({"toy", "production"}));
        if (needs_seed) c->add_option("--seed", seed)->required();
    };

    auto* keygen = app.add_subcommand("keygen", "generate a key set for a scheme");
    keygen->add_option("--scheme", scheme_s)->required();
    keygen->add_option("--out", keys_dir)->required();
    add_common(keygen, true);

    auto* sign = app.add_subcommand("sign", "produce a confirmer signature");
    sign->add_option("--scheme", scheme_s)->required();
    sign->add_option("--keys", keys_dir)->required();
    sign->add_option("--msg-file", msg_file)->required();
    sign->add_option("--out", out_file)->required();
    sign->add_option("--coins-out", coins_file);
    add_common(sign, true);

    auto* verify = app.add_subcommand("verify", "confirmer-side validity check");
    verify->add_option("--scheme", scheme_s)->required();
    verify->add_option("--keys", keys_dir)->required();
    verify->add_option("--sig", sig_file)->required();
    verify->add_option("--msg-file", msg_file)->required();
    add_common(verify, false);

    auto add_protocol = [&](const char* name, const char* help) {
        auto* c = app.add_subcommand(name, help);
        c->add_option("--scheme", scheme_s)->required();
        c->add_option("--keys", keys_dir)->required();
        c->add_option("--sig", sig_file)->required();
        c->add_option("--msg-file", msg_file)->required();
        c->add_option("--role", role)->check(CLI::IsMember({"confirmer", "signer"}));
        c->add_option("--coins", coins_file);
        c->add_option("--mode", mode)->check(CLI::IsMember({"run", "prove", "verify"}));
        c->add_option("--transcript-out", transcript_file);
        c->add_option("--dv-pub", dv_pub);
        add_common(c, true);
        return c;
    };
    auto* confirm = add_protocol("confirm", "interactive confirmation protocol");
    auto* deny = add_protocol("deny", "interactive denial protocol");

    auto* vtr = app.add_subcommand("verify-transcript", "replay a recorded transcript");
    vtr->add_option("--transcript", transcript_file)->required();

    auto* convert = app.add_subcommand("convert", "extract an ordinary signature");
    convert->add_option("--scheme", scheme_s)->required();
    convert->add_option("--keys", keys_dir)->required();
    convert->add_option("--sig", sig_file)->required();
    convert->add_option("--msg-file", msg_file)->required();
    convert->add_option("--out", out_file)->required();
    add_common(convert, true);

    auto* vconv = app.add_subcommand("verify-converted", "check a converted signature");
    vconv->add_option("--scheme", scheme_s)->required();
    vconv->add_option("--keys", keys_dir)->required();
    vconv->add_option("--conv", conv_file)->required();
    vconv->add_option("--msg-file", msg_file)->required();
    add_common(vconv, false);

    auto* scx = app.add_subcommand("signcrypt", "signcrypt a message");
    scx->add_option("--keys", keys_dir)->required();
    scx->add_option("--msg-file", msg_file)->required();
    scx->add_option("--out", out_file)->required();
    scx->add_option("--coins-out", coins_file);
    add_common(scx, true);

    auto* usc = app.add_subcommand("unsigncrypt", "recover the message");
    usc->add_option("--keys", keys_dir)->required();
    usc->add_option("--sc", sc_file)->required();
    usc->add_option("--msg-out", out_file);
    add_common(usc, false);

    auto* pv = app.add_subcommand("prove-validity", "prove a signcryption is well formed");
    pv->add_option("--keys", keys_dir)->required();
    pv->add_option("--sc", sc_file)->required();
    pv->add_option("--role", role)->check(CLI::IsMember({"sender", "receiver"}));
    pv->add_option("--coins", coins_file);
    pv->add_option("--mode", mode)->check(CLI::IsMember({"run", "prove", "verify"}));
    pv->add_option("--transcript-out", transcript_file);
    add_common(pv, true);

    auto* sx = app.add_subcommand("sig-extract", "extract the embedded signature plus proof");
    sx->add_option("--keys", keys_dir)->required();
    sx->add_option("--sc", sc_file)->required();
    sx->add_option("--msg-file", msg_file)->required();
    sx->add_option("--out", out_file)->required();
    add_common(sx, true);

    auto* sv = app.add_subcommand("sig-verify", "verify an extraction bundle");
    sv->add_option("--keys", keys_dir)->required();
    sv->add_option("--sc", sc_file)->required();
    sv->add_option("--msg-file", msg_file)->required();
    sv->add_option("--ex", ex_file)->required();
    add_common(sv, false);

    auto* dvk = app.add_subcommand("dv-keygen", "designated-verifier key pair");
    dvk->add_option("--out", out_file)->required();
    add_common(dvk, true);

    auto* attack = app.add_subcommand("attack", "run a constructive attack");
    attack->require_subcommand(1);
    auto* fact1 = attack->add_subcommand("fact1", "homomorphic re-encryption distinguisher");
    fact1->add_option("--target", target_s)->required();
    fact1->add_option("--trials", trials);
    add_common(fact1, true);
    auto* dpat = attack->add_subcommand("dp", "status-oracle ddh distinguisher");
    dpat->add_flag("--repaired", repaired);
    dpat->add_option("--instances", instances);
    dpat->add_option("--seed", seed)->required();

    auto* game = app.add_subcommand("game", "run a security experiment");
    game->add_option("experiment", experiment_s)->required();
    game->add_option("--scheme", scheme_s)->required();
    game->add_option("--trials", trials);
    game->add_flag("--json", as_json);
    add_common(game, true);

    CLI11_PARSE(app, argc, argv);

    try {
        BackendKind backend = backend_s == "toy" ? BackendKind::Toy : BackendKind::Production;
        const Backend& B = get_backend(backend);
        auto scheme_id = [&]() -> SchemeId {
            auto id = analysis::scheme_from_name(scheme_s);
            if (!id) throw DecodeError("unknown scheme " + scheme_s);
            return *id;
        };

        if (*keygen) {
            KeyDir kd{keys_dir, backend, scheme_id()};
            Rng rng(seed);
            write_keys(kd, rng);
            return 0;
        }

        if (*sign) {
            SchemeId id = scheme_id();
            KeyDir kd{keys_dir, backend, id};
            Rng rng(seed);
            Bytes msg = read_file(msg_file);
            Bytes body, coins_payload;
            switch (id) {
                case SchemeId::NewSte:
                case SchemeId::PlainSte: {
                    cdcs::SteFamily sch(B, id == SchemeId::NewSte);
                    cdcs::SteCoins coins;
                    body = sch.encode_signature(sch.sign(kd.ste_keys(false, true), msg, rng, &coins));
                    coins_payload = B.scalar_encode(coins.kem_rand);
                    break;
                }
                case SchemeId::Ets: {
                    cdcs::EtsScheme sch(B);
                    cdcs::EtsCoins coins;
                    auto s = sch.sign(kd.ste_keys(false, true), msg, rng, &coins);
                    if (!s) throw EncodeError("message does not fit the group codec");
                    body = sch.encode_signature(*s);
                    coins_payload = B.scalar_encode(coins.enc_rand);
                    break;
                }
                case SchemeId::Ctets: {
                    cdcs::CtetsScheme sch(B);
                    cdcs::CtKeys keys = kd.ct_keys(false, true);
                    cdcs::CtCoins coins;
                    body = sch.encode_signature(keys, sch.sign(keys, msg, rng, &coins));
                    Writer w;
                    w.blob(mpz_blob(coins.opening));
                    w.blob(mpz_blob(coins.enc_rand));
                    coins_payload = w.take();
                    break;
                }
                case SchemeId::Cteas: {
                    cdcs::CteasScheme sch(B);
                    cdcs::CtKeys keys = kd.ct_keys(false, true);
                    body = sch.encode_signature(keys, sch.sign(keys, msg, rng));
                    break;
                }
                default: throw DecodeError("sign unsupported for scheme");
            }
            save_envelope(out_file, make_signature_envelope(backend, id, body));
            if (!coins_file.empty())
                save_envelope(coins_file, {ArtifactKind::Coins, backend, 1, coins_payload});
            return 0;
        }

        if (*verify) {
            SchemeId id = scheme_id();
            KeyDir kd{keys_dir, backend, id};
            Bytes msg = read_file(msg_file);
            Bytes body = signature_body(load_envelope(sig_file), id);
            bool ok = false;
            if (id == SchemeId::NewSte || id == SchemeId::PlainSte) {
                cdcs::SteFamily sch(B, id == SchemeId::NewSte);
                auto s = sch.decode_signature(body);
                ok = s && sch.verify(kd.ste_keys(true, false), *s, msg);
            } else if (id == SchemeId::Ets) {
                cdcs::EtsScheme sch(B);
                auto s = sch.decode_signature(body);
                ok = s && sch.verify(kd.ste_keys(true, false), *s, msg);
            } else if (id == SchemeId::Ctets) {
                cdcs::CtetsScheme sch(B);
                cdcs::CtKeys keys = kd.ct_keys(true, false);
                auto s = sch.decode_signature(keys, body);
                ok = s && sch.verify(keys, *s, msg);
            } else if (id == SchemeId::Cteas) {
                cdcs::CteasScheme sch(B);
                cdcs::CtKeys keys = kd.ct_keys(true, false);
                auto s = sch.decode_signature(keys, body);
                ok = s && sch.verify(keys, *s, msg);
            } else {
                return usage_error("verify unsupported for scheme");
            }
            return ok ? 0 : 1;
        }

        if (*confirm || *deny) {
            ProtocolArgs a;
            a.scheme = scheme_id();
            a.kd = {keys_dir, backend, a.scheme};
            a.sig_body = signature_body(load_envelope(sig_file), a.scheme);
            a.msg = read_file(msg_file);
            a.deny = bool(*deny);
            a.role = role;
            a.coins_file = coins_file;
            a.mode = mode;
            a.transcript_out = transcript_file;
            a.dv_pub = dv_pub;
            a.seed = seed;
            return run_protocol(a);
        }

        if (*vtr) {
            Envelope e = expect(load_envelope(transcript_file), ArtifactKind::Transcript);
            auto tr = sigma::decode_transcript(e.payload);
            if (!tr) return usage_error("malformed transcript");
            auto stmt = sigma::decode_statement(tr->statement);
            if (!stmt) return usage_error("malformed statement");
            bool ok = sigma::verify(*stmt, *tr);
            std::cerr << (ok ? "accept" : "reject") << "\n";
            return ok ? 0 : 1;
        }

        if (*convert) {
            SchemeId id = scheme_id();
            KeyDir kd{keys_dir, backend, id};
            Bytes msg = read_file(msg_file);
            Bytes body = signature_body(load_envelope(sig_file), id);
            Rng rng(seed);
            Bytes out;
            if (id == SchemeId::NewSte || id == SchemeId::PlainSte) {
                cdcs::SteFamily sch(B, id == SchemeId::NewSte);
                auto s = sch.decode_signature(body);
                if (!s) return 1;
                auto c = sch.convert(kd.ste_keys(true, false), *s, msg);
                if (!c) return 1;
                out = sch.encode_converted(*c);
            } else if (id == SchemeId::Ets) {
                cdcs::EtsScheme sch(B);
                auto s = sch.decode_signature(body);
                if (!s) return 1;
                auto c = sch.convert(kd.ste_keys(true, false), *s, msg, rng);
                if (!c) return 1;
                out = sch.encode_converted(*c);
            } else if (id == SchemeId::Ctets) {
                cdcs::CtetsScheme sch(B);
                cdcs::CtKeys keys = kd.ct_keys(true, false);
                auto s = sch.decode_signature(keys, body);
                if (!s) return 1;
                auto c = sch.convert(keys, *s, msg);
                if (!c) return 1;
                out = sch.encode_converted(keys, *c);
            } else {
                return usage_error("convert unsupported for scheme");
            }
            Writer w;
            w.u8(uint8_t(id));
            w.raw(out);
            save_envelope(out_file, {ArtifactKind::Converted, backend, 1, w.take()});
            return 0;
        }

        if (*vconv) {
            SchemeId id = scheme_id();
            KeyDir kd{keys_dir, backend, id};
            Bytes msg = read_file(msg_file);
            Envelope e = expect(load_envelope(conv_file), ArtifactKind::Converted);
            Reader r{BytesView(e.payload)};
            if (SchemeId(r.u8()) != id) return usage_error("converted form of another scheme");
            Bytes body = r.raw(r.remaining());
            bool ok = false;
            if (id == SchemeId::NewSte || id == SchemeId::PlainSte) {
                cdcs::SteFamily sch(B, id == SchemeId::NewSte);
                auto c = sch.decode_converted(body);
                ok = c && sch.verify_converted(kd.ste_keys(false, false), *c, msg);
            } else if (id == SchemeId::Ets) {
                cdcs::EtsScheme sch(B);
                auto c = sch.decode_converted(body);
                ok = c && sch.verify_converted(kd.ste_keys(false, false), *c, msg);
            } else if (id == SchemeId::Ctets) {
                cdcs::CtetsScheme sch(B);
                cdcs::CtKeys keys = kd.ct_keys(false, false);
                auto c = sch.decode_converted(keys, body);
                ok = c && sch.verify_converted(keys, *c, msg);
            } else {
                return usage_error("verify-converted unsupported for scheme");
            }
            return ok ? 0 : 1;
        }

        if (*scx || *usc || *pv || *sx || *sv) {
            KeyDir kd{keys_dir, backend, SchemeId::EtSte};
            signcrypt::EtSteScheme sch(B);

            if (*scx) {
                Rng rng(seed);
                Bytes msg = read_file(msg_file);
                SigKeyPair sender = kd.signer_private("sender.key");
                auto recv = kd.receiver_public();
                signcrypt::SigncryptCoins coins;
                auto out = sch.signcrypt(sender, recv, msg, rng, &coins);
                if (!out) throw EncodeError("message does not fit the group codec");
                save_envelope(out_file, {ArtifactKind::Signcryption, backend, 1, sch.encode(*out)});
                if (!coins_file.empty()) {
                    Writer w;
                    w.raw(B.scalar_encode(coins.msg_rand));
                    w.raw(B.scalar_encode(coins.kem_rand));
                    save_envelope(coins_file, {ArtifactKind::Coins, backend, 1, w.take()});
                }
                return 0;
            }

            Element sender_pk = kd.signer_public("sender.pub");
            Envelope sce = expect(load_envelope(sc_file), ArtifactKind::Signcryption);
            auto tuple = sch.decode(sce.payload);
            if (!tuple) return usage_error("malformed signcryption");

            if (*usc) {
                auto recv = kd.receiver_private();
                SigKeyPair sender{Scalar{0}, sender_pk};
                auto m = sch.unsigncrypt(sender, recv, *tuple);
                if (!m) return 1;
                if (!out_file.empty()) write_file(out_file, *m);
                return 0;
            }
            if (*pv) {
                Rng rng(seed);
                auto stmt = sch.validity_statement(sender_pk, kd.receiver_public(), *tuple);
                sigma::Witness wit;
                if (mode != "verify") {
                    if (role == "sender") {
                        Envelope e = expect(load_envelope(coins_file), ArtifactKind::Coins);
                        Reader r{BytesView(e.payload)};
                        auto s1 = B.scalar_decode(r.raw(B.scalar_size()));
                        auto s2 = B.scalar_decode(r.raw(B.scalar_size()));
                        if (!s1 || !s2) throw DecodeError("bad coins");
                        wit = sch.sender_validity_witness({*s1, *s2});
                    } else {
                        wit = sch.receiver_validity_witness(kd.receiver_private());
                    }
                }
                ChallengeSpace cs = ChallengeSpace::amplified(B);
                if (mode == "run")
                    return run_in_process(stmt, wit, cs, rng, backend, transcript_file);
                Channel ch{std::cin, std::cout, backend};
                if (mode == "prove") return wire_prove(stmt, wit, cs, rng, ch);
                return wire_verify(stmt, cs, rng, ch, transcript_file);
            }
            if (*sx) {
                Rng rng(seed);
                auto recv = kd.receiver_private();
                SigKeyPair sender{Scalar{0}, sender_pk};
                auto ex = sch.sig_extract(sender, recv, *tuple, read_file(msg_file), rng);
                if (!ex) return 1;
                save_envelope(out_file,
                              {ArtifactKind::Extraction, backend, 1, sch.encode_extraction(*ex)});
                return 0;
            }
            Envelope exe = expect(load_envelope(ex_file), ArtifactKind::Extraction);
            auto ex = sch.decode_extraction(exe.payload);
            if (!ex) return usage_error("malformed extraction");
            bool ok =
                sch.sig_verify(sender_pk, kd.receiver_public(), *tuple, read_file(msg_file), *ex);
            return ok ? 0 : 1;
        }

        if (*dvk) {
            Rng rng(seed);
            ElGamal enc(B);
            EncKeyPair kp = enc.keygen(rng);
            Writer w;
            w.raw(B.encode(GroupId::G1, kp.pk));
            w.raw(B.scalar_encode(kp.sk));
            save_envelope(out_file, {ArtifactKind::DvKey, backend, 1, w.take()});
            return 0;
        }

        if (*fact1) {
            auto id = analysis::scheme_from_name(target_s);
            if (!id) return usage_error("unknown target scheme");
            auto adapter = analysis::make_cdcs_adapter(*id, backend);
            analysis::GameReport rep =
                analysis::run_inv_cma(*adapter, analysis::fact1_adversary(), trials, seed);
            std::cout << rep.to_line() << "\n";
            return 0;
        }
        if (*dpat) {
            analysis::GameReport rep = analysis::run_dp_attack(repaired, instances, seed);
            std::cout << rep.to_line() << "\n";
            return 0;
        }
        if (*game) {
            auto exp = analysis::experiment_from_name(experiment_s);
            if (!exp) return usage_error("unknown experiment");
            analysis::GameReport rep =
                analysis::run_experiment(scheme_id(), *exp, backend, trials, seed);
            std::cout << (as_json ? rep.to_json() : rep.to_line()) << "\n";
            return 0;
        }
        return usage_error("no subcommand");
    } catch (const DecodeError& e) {
        return usage_error(e.what());
    } catch (const EncodeError& e) {
        return usage_error(e.what());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
