#include "osg/sigma/sigma.hpp"

namespace osg::sigma {

// ---------------------------------------------------------------------
// Canonical statement bytes. These feed Fiat-Shamir verbatim, so every
// field is fixed-width or length-prefixed.
// ---------------------------------------------------------------------

namespace {

void put_element(Writer& w, const Backend& b, GroupId g, const Element& e) {
    w.raw(b.encode(g, e));
}

void put_ct(Writer& w, const Backend& b, const ElGamalCt& ct) {
    put_element(w, b, GroupId::G1, ct.encap);
    put_element(w, b, GroupId::G1, ct.pad);
}

void put_mpz_blob(Writer& w, const mpz_class& v) {
    size_t width = v == 0 ? 0 : (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
    w.blob(mpz_to_fixed(v, width));
}

Element get_element(Reader& r, const Backend& b, GroupId g) {
    Bytes raw = r.raw(b.element_size(g));
    auto e = b.decode(g, raw);
    if (!e) throw DecodeError("bad group element");
    return *e;
}

ElGamalCt get_ct(Reader& r, const Backend& b) {
    Element c1 = get_element(r, b, GroupId::G1);
    Element c2 = get_element(r, b, GroupId::G1);
    return {c1, c2};
}

mpz_class get_mpz_blob(Reader& r) { return mpz_from_bytes(r.blob()); }

void encode_hom(Writer& w, const HomMap& f) {
    w.u8(uint8_t(f.kind));
    switch (f.kind) {
        case HomKind::PairG2:
        case HomKind::IdG1: break;
        case HomKind::ExpBases: {
            w.u8(uint8_t(f.bases.size()));
            for (const Element& b : f.bases) put_element(w, *f.backend, GroupId::G1, b);
            break;
        }
        case HomKind::PowN: put_mpz_blob(w, f.exponent); break;
    }
}

HomMap decode_hom(Reader& r, const Backend* b) {
    HomKind kind = HomKind(r.u8());
    switch (kind) {
        case HomKind::PairG2: return HomMap::pair_g2(*b);
        case HomKind::IdG1: return HomMap::id_g1(*b);
        case HomKind::ExpBases: {
            size_t n = r.u8();
            if (n == 0 || n > 8) throw DecodeError("bad base count");
            std::vector<Element> bases;
            for (size_t i = 0; i < n; ++i) bases.push_back(get_element(r, *b, GroupId::G1));
            return HomMap::exp_bases(*b, std::move(bases));
        }
        case HomKind::PowN: return HomMap::pow_n(get_mpz_blob(r));
    }
    throw DecodeError("bad hom kind");
}

void encode_into(Writer& w, const Statement& s) {
    w.u8(uint8_t(s.kind));
    if (s.kind == StmtKind::Conjunction || s.kind == StmtKind::Disjunction) {
        w.u8(uint8_t(s.children.size()));
        for (const Statement& c : s.children) {
            Writer cw;
            encode_into(cw, c);
            w.blob(cw.data());
        }
        return;
    }
    const Backend& B = s.backend();
    w.u8(uint8_t(B.kind()));
    switch (s.kind) {
        case StmtKind::HomPreimage: {
            const auto& l = std::get<HomPreimageStmt>(s.leaf);
            encode_hom(w, l.f);
            auto codom = l.f.codomain();
            for (size_t i = 0; i < l.image.size(); ++i) w.raw(codom[i].encode(l.image[i]));
            break;
        }
        case StmtKind::CorrectDecryption: {
            const auto& l = std::get<CorrectDecryptionStmt>(s.leaf);
            put_element(w, B, GroupId::G1, l.enc_pk);
            put_ct(w, B, l.ct);
            put_element(w, B, GroupId::G1, l.claimed);
            break;
        }
        case StmtKind::DecryptionKnowledge: {
            const auto& l = std::get<DecryptionKnowledgeStmt>(s.leaf);
            put_element(w, B, GroupId::G1, l.enc_pk);
            put_ct(w, B, l.ct);
            break;
        }
        case StmtKind::SigEncValidity: {
            const auto& l = std::get<SigEncValidityStmt>(s.leaf);
            put_element(w, B, GroupId::G1, l.enc_pk);
            put_ct(w, B, l.ct);
            put_element(w, B, GroupId::G2, l.sig_pk);
            w.blob(l.signed_msg);
            w.blob(l.aux);
            w.u8(l.deny ? 1 : 0);
            break;
        }
        case StmtKind::CommitEncOpening: {
            const auto& l = std::get<CommitEncOpeningStmt>(s.leaf);
            put_mpz_blob(w, l.paillier_n);
            put_mpz_blob(w, l.ct);
            put_element(w, B, GroupId::G1, l.commitment);
            w.raw(B.scalar_encode(l.msg));
            w.u8(l.deny ? 1 : 0);
            break;
        }
        case StmtKind::PlaintextInequality: {
            const auto& l = std::get<PlaintextInequalityStmt>(s.leaf);
            put_element(w, B, GroupId::G1, l.enc_pk);
            put_ct(w, B, l.ct);
            put_element(w, B, GroupId::G1, l.claimed);
            break;
        }
        default: throw EncodeError("bad statement kind");
    }
}

Statement decode_one(Reader& r, int depth);

Statement decode_leaf(Reader& r, StmtKind kind) {
    const Backend& B = get_backend(BackendKind(r.u8()));
    switch (kind) {
        case StmtKind::HomPreimage: {
            HomMap f = decode_hom(r, &B);
            auto codom = f.codomain();
            std::vector<Value> image;
            for (const Carrier& c : codom) {
                auto v = c.decode(r.raw(c.value_size()));
                if (!v) throw DecodeError("bad image value");
                image.push_back(*v);
            }
            return Statement::make(HomPreimageStmt{std::move(f), std::move(image)});
        }
        case StmtKind::CorrectDecryption: {
            Element pk = get_element(r, B, GroupId::G1);
            ElGamalCt ct = get_ct(r, B);
            Element m = get_element(r, B, GroupId::G1);
            return Statement::make(CorrectDecryptionStmt{&B, pk, ct, m});
        }
        case StmtKind::DecryptionKnowledge: {
            Element pk = get_element(r, B, GroupId::G1);
            ElGamalCt ct = get_ct(r, B);
            return Statement::make(DecryptionKnowledgeStmt{&B, pk, ct});
        }
        case StmtKind::SigEncValidity: {
            Element pk = get_element(r, B, GroupId::G1);
            ElGamalCt ct = get_ct(r, B);
            Element spk = get_element(r, B, GroupId::G2);
            Bytes msg = r.blob();
            Bytes aux = r.blob();
            bool deny = r.u8() != 0;
            return Statement::make(SigEncValidityStmt{&B, pk, ct, spk, msg, aux, deny});
        }
        case StmtKind::CommitEncOpening: {
            mpz_class n = get_mpz_blob(r);
            mpz_class ct = get_mpz_blob(r);
            Element c = get_element(r, B, GroupId::G1);
            auto msg = B.scalar_decode(r.raw(B.scalar_size()));
            if (!msg) throw DecodeError("bad scalar");
            bool deny = r.u8() != 0;
            if (n < 2) throw DecodeError("bad modulus");
            return Statement::make(CommitEncOpeningStmt{&B, n, ct, c, *msg, deny});
        }
        case StmtKind::PlaintextInequality: {
            Element pk = get_element(r, B, GroupId::G1);
            ElGamalCt ct = get_ct(r, B);
            Element m = get_element(r, B, GroupId::G1);
            return Statement::make(PlaintextInequalityStmt{&B, pk, ct, m});
        }
        default: throw DecodeError("bad statement kind");
    }
}

Statement decode_one(Reader& r, int depth) {
    if (depth > 2) throw DecodeError("statement nests too deep");
    StmtKind kind = StmtKind(r.u8());
    if (kind == StmtKind::Conjunction || kind == StmtKind::Disjunction) {
        size_t n = r.u8();
        if (n == 0 || n > 8) throw DecodeError("bad branch count");
        if (kind == StmtKind::Disjunction && n != 2) throw DecodeError("disjunction needs two branches");
        std::vector<Statement> children;
        for (size_t i = 0; i < n; ++i) {
            Bytes blob = r.blob();
            Reader cr{BytesView(blob)};
            children.push_back(decode_one(cr, depth + 1));
            cr.expect_done();
        }
        if (kind == StmtKind::Conjunction) return Statement::conjunction(std::move(children));
        Statement a = std::move(children[0]);
        Statement b = std::move(children[1]);
        return Statement::disjunction(std::move(a), std::move(b));
    }
    return decode_leaf(r, kind);
}

}  // namespace

Bytes encode_statement(const Statement& s) {
    Writer w;
    encode_into(w, s);
    return w.take();
}

std::optional<Statement> decode_statement(BytesView b) {
    try {
        Reader r(b);
        Statement s = decode_one(r, 0);
        r.expect_done();
        return s;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

// ---------------------------------------------------------------------
// Transcript wire format: statement kind tag, statement bytes, challenge
// bound, then the node tree. Nodes nest one inner level only.
// ---------------------------------------------------------------------

namespace {

void encode_node(Writer& w, const Transcript& t) {
    w.blob(t.commitment);
    put_mpz_blob(w, t.challenge);
    w.blob(t.response);
    w.u8(uint8_t(t.children.size()));
    for (const Transcript& c : t.children) encode_node(w, c);
}

Transcript decode_node(Reader& r, int depth) {
    if (depth > 2) throw DecodeError("transcript nests too deep");
    Transcript t;
    t.commitment = r.blob();
    t.challenge = mpz_from_bytes(r.blob());
    t.response = r.blob();
    size_t n = r.u8();
    if (n > 8) throw DecodeError("bad child count");
    if (depth == 2 && n != 0) throw DecodeError("inner transcripts cannot nest further");
    for (size_t i = 0; i < n; ++i) t.children.push_back(decode_node(r, depth + 1));
    return t;
}

}  // namespace

Bytes encode_transcript(const SigmaTranscript& t) {
    Writer w;
    if (t.statement.empty()) throw EncodeError("transcript without statement");
    w.u8(t.statement[0]);  // statement kind tag
    w.blob(t.statement);
    put_mpz_blob(w, t.cbound);
    encode_node(w, t.root);
    return w.take();
}

std::optional<SigmaTranscript> decode_transcript(BytesView b) {
    try {
        Reader r(b);
        uint8_t tag = r.u8();
        SigmaTranscript t;
        t.statement = r.blob();
        if (t.statement.empty() || t.statement[0] != tag) throw DecodeError("tag mismatch");
        t.cbound = mpz_from_bytes(r.blob());
        t.root = decode_node(r, 0);
        r.expect_done();
        return t;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

}  // namespace osg::sigma
