#include "osg/sigma/sigma.hpp"

#include <cassert>

#include "osg/hash.hpp"

namespace osg::sigma {

// ---------------------------------------------------------------------
// Carrier
// ---------------------------------------------------------------------

Carrier Carrier::group(const Backend& b, GroupId g) {
    Carrier c;
    c.kind = CarrierKind::Group;
    c.backend = &b;
    c.gid = g;
    return c;
}

Carrier Carrier::scalar_add(const Backend& b) {
    Carrier c;
    c.kind = CarrierKind::ScalarAdd;
    c.backend = &b;
    return c;
}

Carrier Carrier::units(const mpz_class& modulus) {
    Carrier c;
    c.kind = CarrierKind::UnitsMod;
    c.modulus = modulus;
    return c;
}

namespace {
const Element& as_elt(const Value& v) { return std::get<Element>(v.rep); }
const mpz_class& as_int(const Value& v) { return std::get<mpz_class>(v.rep); }
}  // namespace

Value Carrier::identity() const {
    switch (kind) {
        case CarrierKind::Group: return {backend->identity(gid)};
        case CarrierKind::ScalarAdd: return {mpz_class(0)};
        case CarrierKind::UnitsMod: return {mpz_class(1)};
    }
    throw std::logic_error("bad carrier");
}

Value Carrier::op(const Value& a, const Value& b) const {
    switch (kind) {
        case CarrierKind::Group: return {backend->op(gid, as_elt(a), as_elt(b))};
        case CarrierKind::ScalarAdd: return {(as_int(a) + as_int(b)) % backend->order()};
        case CarrierKind::UnitsMod: return {as_int(a) * as_int(b) % modulus};
    }
    throw std::logic_error("bad carrier");
}

Value Carrier::inverse(const Value& a) const {
    switch (kind) {
        case CarrierKind::Group: return {backend->inverse(gid, as_elt(a))};
        case CarrierKind::ScalarAdd: {
            mpz_class v = (-as_int(a)) % backend->order();
            if (v < 0) v += backend->order();
            return {v};
        }
        case CarrierKind::UnitsMod: {
            mpz_class out;
            if (!mpz_invert(out.get_mpz_t(), as_int(a).get_mpz_t(), modulus.get_mpz_t()))
                throw std::runtime_error("non-unit in unit group");
            return {out};
        }
    }
    throw std::logic_error("bad carrier");
}

Value Carrier::pow(const Value& a, const mpz_class& e) const {
    switch (kind) {
        case CarrierKind::Group: {
            mpz_class r = e % backend->order();
            if (r < 0) r += backend->order();
            return {backend->pow(gid, as_elt(a), r)};
        }
        case CarrierKind::ScalarAdd: {
            mpz_class v = (as_int(a) * e) % backend->order();
            if (v < 0) v += backend->order();
            return {v};
        }
        case CarrierKind::UnitsMod: {
            mpz_class out;
            if (e < 0) {
                mpz_class inv;
                if (!mpz_invert(inv.get_mpz_t(), as_int(a).get_mpz_t(), modulus.get_mpz_t()))
                    throw std::runtime_error("non-unit in unit group");
                mpz_class pe = -e;
                mpz_powm(out.get_mpz_t(), inv.get_mpz_t(), pe.get_mpz_t(), modulus.get_mpz_t());
            } else {
                mpz_powm(out.get_mpz_t(), as_int(a).get_mpz_t(), e.get_mpz_t(), modulus.get_mpz_t());
            }
            return {out};
        }
    }
    throw std::logic_error("bad carrier");
}

bool Carrier::eq(const Value& a, const Value& b) const {
    if (kind == CarrierKind::Group) return backend->eq(gid, as_elt(a), as_elt(b));
    return as_int(a) == as_int(b);
}

Value Carrier::random(RandSource& rs) const {
    switch (kind) {
        case CarrierKind::Group: return {backend->random_element(gid, rs)};
        case CarrierKind::ScalarAdd: return {rs.below(backend->order())};
        case CarrierKind::UnitsMod: return {rs.unit(modulus)};
    }
    throw std::logic_error("bad carrier");
}

Bytes Carrier::encode(const Value& a) const {
    switch (kind) {
        case CarrierKind::Group: return backend->encode(gid, as_elt(a));
        case CarrierKind::ScalarAdd: return mpz_to_fixed(as_int(a), backend->scalar_size());
        case CarrierKind::UnitsMod: return mpz_to_fixed(as_int(a), value_size());
    }
    throw std::logic_error("bad carrier");
}

std::optional<Value> Carrier::decode(BytesView b) const {
    if (b.size() != value_size()) return std::nullopt;
    switch (kind) {
        case CarrierKind::Group: {
            auto e = backend->decode(gid, b);
            if (!e) return std::nullopt;
            return Value{*e};
        }
        case CarrierKind::ScalarAdd: {
            mpz_class v = mpz_from_bytes(b);
            if (v >= backend->order()) return std::nullopt;
            return Value{v};
        }
        case CarrierKind::UnitsMod: {
            mpz_class v = mpz_from_bytes(b);
            if (v <= 0 || v >= modulus || gcd(v, modulus) != 1) return std::nullopt;
            return Value{v};
        }
    }
    throw std::logic_error("bad carrier");
}

size_t Carrier::value_size() const {
    switch (kind) {
        case CarrierKind::Group: return backend->element_size(gid);
        case CarrierKind::ScalarAdd: return backend->scalar_size();
        case CarrierKind::UnitsMod: return (mpz_sizeinbase(modulus.get_mpz_t(), 2) + 7) / 8;
    }
    throw std::logic_error("bad carrier");
}

// ---------------------------------------------------------------------
// HomMap
// ---------------------------------------------------------------------

HomMap HomMap::pair_g2(const Backend& b) {
    HomMap h;
    h.kind = HomKind::PairG2;
    h.backend = &b;
    return h;
}

HomMap HomMap::exp_bases(const Backend& b, std::vector<Element> bases) {
    HomMap h;
    h.kind = HomKind::ExpBases;
    h.backend = &b;
    h.bases = std::move(bases);
    return h;
}

HomMap HomMap::id_g1(const Backend& b) {
    HomMap h;
    h.kind = HomKind::IdG1;
    h.backend = &b;
    return h;
}

HomMap HomMap::pow_n(const mpz_class& n) {
    HomMap h;
    h.kind = HomKind::PowN;
    h.modulus = n * n;
    h.exponent = n;
    return h;
}

Carrier HomMap::domain() const {
    switch (kind) {
        case HomKind::PairG2: return Carrier::group(*backend, GroupId::G1);
        case HomKind::ExpBases: return Carrier::scalar_add(*backend);
        case HomKind::IdG1: return Carrier::group(*backend, GroupId::G1);
        case HomKind::PowN: return Carrier::units(modulus);
    }
    throw std::logic_error("bad hom");
}

std::vector<Carrier> HomMap::codomain() const {
    switch (kind) {
        case HomKind::PairG2: return {Carrier::group(*backend, GroupId::GT)};
        case HomKind::ExpBases:
            return std::vector<Carrier>(bases.size(), Carrier::group(*backend, GroupId::G1));
        case HomKind::IdG1: return {Carrier::group(*backend, GroupId::G1)};
        case HomKind::PowN: return {Carrier::units(modulus)};
    }
    throw std::logic_error("bad hom");
}

std::vector<Value> HomMap::eval(const Value& x) const {
    switch (kind) {
        case HomKind::PairG2:
            return {Value{backend->pairing(as_elt(x), backend->generator(GroupId::G2))}};
        case HomKind::ExpBases: {
            std::vector<Value> out;
            out.reserve(bases.size());
            for (const Element& b : bases) out.push_back(Value{backend->pow(GroupId::G1, b, as_int(x))});
            return out;
        }
        case HomKind::IdG1: return {x};
        case HomKind::PowN: {
            mpz_class out;
            mpz_powm(out.get_mpz_t(), as_int(x).get_mpz_t(), exponent.get_mpz_t(),
                     modulus.get_mpz_t());
            return {Value{out}};
        }
    }
    throw std::logic_error("bad hom");
}

mpz_class HomMap::extract_order() const {
    if (kind == HomKind::PowN) return exponent;
    return backend->order();
}

Value HomMap::extract_unit(const std::vector<Value>& image) const {
    // need u with f(u) = I^order: identity works in prime-order groups,
    // and I itself works for the power map (f(I) = I^N)
    if (kind == HomKind::PowN) return image.at(0);
    return domain().identity();
}

// ---------------------------------------------------------------------
// Statements
// ---------------------------------------------------------------------

Statement Statement::make(HomPreimageStmt s) {
    Statement st;
    st.kind = StmtKind::HomPreimage;
    st.leaf = std::move(s);
    return st;
}
Statement Statement::make(CorrectDecryptionStmt s) {
    Statement st;
    st.kind = StmtKind::CorrectDecryption;
    st.leaf = std::move(s);
    return st;
}
Statement Statement::make(DecryptionKnowledgeStmt s) {
    Statement st;
    st.kind = StmtKind::DecryptionKnowledge;
    st.leaf = std::move(s);
    return st;
}
Statement Statement::make(SigEncValidityStmt s) {
    Statement st;
    st.kind = StmtKind::SigEncValidity;
    st.leaf = std::move(s);
    return st;
}
Statement Statement::make(CommitEncOpeningStmt s) {
    Statement st;
    st.kind = StmtKind::CommitEncOpening;
    st.leaf = std::move(s);
    return st;
}
Statement Statement::make(PlaintextInequalityStmt s) {
    Statement st;
    st.kind = StmtKind::PlaintextInequality;
    st.leaf = std::move(s);
    return st;
}

Statement Statement::conjunction(std::vector<Statement> branches) {
    if (branches.empty()) throw std::runtime_error("empty conjunction");
    for (const Statement& b : branches)
        if (!b.is_leaf()) throw std::runtime_error("conjunction branches must be leaves");
    Statement st;
    st.kind = StmtKind::Conjunction;
    st.children = std::move(branches);
    return st;
}

Statement Statement::disjunction(Statement a, Statement b) {
    if (!a.is_leaf() || !b.is_leaf())
        throw std::runtime_error("disjunction branches must be leaves");
    if (a.challenge_min() != 0 || b.challenge_min() != 0)
        throw std::runtime_error("disjunction branches must admit the full challenge space");
    Statement st;
    st.kind = StmtKind::Disjunction;
    st.children.push_back(std::move(a));
    st.children.push_back(std::move(b));
    return st;
}

mpz_class Statement::challenge_min() const {
    switch (kind) {
        case StmtKind::PlaintextInequality: return 1;
        case StmtKind::SigEncValidity:
            return std::get<SigEncValidityStmt>(leaf).deny ? 1 : 0;
        case StmtKind::CommitEncOpening:
            return std::get<CommitEncOpeningStmt>(leaf).deny ? 1 : 0;
        case StmtKind::Conjunction: {
            mpz_class m = 0;
            for (const Statement& c : children) m = std::max(m, c.challenge_min());
            return m;
        }
        default: return 0;
    }
}

const Backend& Statement::backend() const {
    switch (kind) {
        case StmtKind::HomPreimage: {
            const HomMap& f = std::get<HomPreimageStmt>(leaf).f;
            if (f.backend) return *f.backend;
            throw std::runtime_error("unit-group statement has no backend");
        }
        case StmtKind::CorrectDecryption: return *std::get<CorrectDecryptionStmt>(leaf).backend;
        case StmtKind::DecryptionKnowledge: return *std::get<DecryptionKnowledgeStmt>(leaf).backend;
        case StmtKind::SigEncValidity: return *std::get<SigEncValidityStmt>(leaf).backend;
        case StmtKind::CommitEncOpening: return *std::get<CommitEncOpeningStmt>(leaf).backend;
        case StmtKind::PlaintextInequality: return *std::get<PlaintextInequalityStmt>(leaf).backend;
        case StmtKind::Conjunction:
        case StmtKind::Disjunction: return children.front().backend();
    }
    throw std::logic_error("bad statement");
}

mpz_class CommitEncOpeningStmt::slack() const {
    return backend->kind() == BackendKind::Toy ? (mpz_class(1) << 32) : (mpz_class(1) << 64);
}

mpz_class CommitEncOpeningStmt::response_bound(const mpz_class& cbound) const {
    return slack() * backend->order() + cbound * backend->order();
}

size_t CommitEncOpeningStmt::response_width(const mpz_class& cbound) const {
    mpz_class b = response_bound(cbound);
    return (mpz_sizeinbase(b.get_mpz_t(), 2) + 7) / 8;
}

ChallengeSpace ChallengeSpace::amplified(const Backend& b) {
    mpz_class big = mpz_class(1) << (b.kind() == BackendKind::Toy ? 16 : 128);
    return ChallengeSpace(std::min(big, b.order()));
}

// ---------------------------------------------------------------------
// Relation predicates and witness materialization
// ---------------------------------------------------------------------

namespace {

// route-specific preimage view of a correct-decryption claim
HomPreimageStmt decryption_hom(const CorrectDecryptionStmt& s, WitnessRoute route) {
    const Backend& B = *s.backend;
    Element g = B.generator(GroupId::G1);
    Element target = B.op(GroupId::G1, s.ct.pad, B.inverse(GroupId::G1, s.claimed));
    if (route == WitnessRoute::DecKey)
        return {HomMap::exp_bases(B, {g, s.ct.encap}), {Value{s.enc_pk}, Value{target}}};
    if (route == WitnessRoute::EncRandomness)
        return {HomMap::exp_bases(B, {g, s.enc_pk}), {Value{s.ct.encap}, Value{target}}};
    throw std::runtime_error("decryption claims take a key or randomness witness");
}

// plaintext of the statement ciphertext as seen from the witness
Element derive_plain(const Backend& B, const Element& enc_pk, const ElGamalCt& ct,
                     const LeafWitness& w) {
    ElGamal enc(B);
    if (w.route == WitnessRoute::DecKey) return enc.decrypt(w.scalar, ct);
    if (w.route == WitnessRoute::EncRandomness)
        return B.op(GroupId::G1, ct.pad, B.inverse(GroupId::G1, B.pow(GroupId::G1, enc_pk, w.scalar)));
    throw std::runtime_error("decryption witness route required");
}

bool route_consistent(const Backend& B, const Element& enc_pk, const ElGamalCt& ct,
                      const LeafWitness& w) {
    Element g = B.generator(GroupId::G1);
    if (w.route == WitnessRoute::DecKey) return B.eq(GroupId::G1, B.pow(GroupId::G1, g, w.scalar), enc_pk);
    if (w.route == WitnessRoute::EncRandomness)
        return B.eq(GroupId::G1, B.pow(GroupId::G1, g, w.scalar), ct.encap);
    return false;
}

Element sig_image(const SigEncValidityStmt& s) {
    const Backend& B = *s.backend;
    return B.pairing(B.hash_to_g1(s.signed_msg), s.sig_pk);
}

struct OpeningWitness {
    mpz_class r;
    mpz_class rho;
};

OpeningWitness materialize_opening(const CommitEncOpeningStmt& s, const LeafWitness& w) {
    if (w.route == WitnessRoute::DecKey) {
        if (!w.paillier_priv || w.paillier_priv->n != s.paillier_n)
            throw std::runtime_error("wrong paillier key for statement");
        auto [r, rho] = Paillier::decrypt_full(*w.paillier_priv, s.ct);
        return {r, rho};
    }
    return {w.opening, w.paillier_rand};
}

PaillierKey public_paillier(const CommitEncOpeningStmt& s) {
    return {s.paillier_n, s.n2(), 0, 0};
}

bool leaf_relation(const Statement& stmt, const LeafWitness& w) {
    switch (stmt.kind) {
        case StmtKind::HomPreimage: {
            const auto& s = std::get<HomPreimageStmt>(stmt.leaf);
            auto got = s.f.eval(w.preimage);
            auto codom = s.f.codomain();
            if (got.size() != s.image.size()) return false;
            for (size_t i = 0; i < got.size(); ++i)
                if (!codom[i].eq(got[i], s.image[i])) return false;
            return true;
        }
        case StmtKind::CorrectDecryption: {
            const auto& s = std::get<CorrectDecryptionStmt>(stmt.leaf);
            if (!route_consistent(*s.backend, s.enc_pk, s.ct, w)) return false;
            Element m = derive_plain(*s.backend, s.enc_pk, s.ct, w);
            return s.backend->eq(GroupId::G1, m, s.claimed);
        }
        case StmtKind::DecryptionKnowledge: {
            const auto& s = std::get<DecryptionKnowledgeStmt>(stmt.leaf);
            return route_consistent(*s.backend, s.enc_pk, s.ct, w);
        }
        case StmtKind::SigEncValidity: {
            const auto& s = std::get<SigEncValidityStmt>(stmt.leaf);
            if (!s.aux.empty()) return false;  // this signature scheme has empty aux
            if (!route_consistent(*s.backend, s.enc_pk, s.ct, w)) return false;
            Element core = derive_plain(*s.backend, s.enc_pk, s.ct, w);
            HomMap f = HomMap::pair_g2(*s.backend);
            bool valid = s.backend->eq(GroupId::GT, as_elt(f.eval(Value{core})[0]), sig_image(s));
            return s.deny ? !valid : valid;
        }
        case StmtKind::CommitEncOpening: {
            const auto& s = std::get<CommitEncOpeningStmt>(stmt.leaf);
            OpeningWitness ow = materialize_opening(s, w);
            PaillierKey pk = public_paillier(s);
            if (Paillier::encrypt(pk, ow.r, ow.rho) != s.ct) return false;
            // the integer-response bridge needs openings inside the scalar field
            if (ow.r >= s.backend->order()) return false;
            Pedersen ped(*s.backend);
            bool opens = ped.open(s.commitment, s.msg, Scalar{ow.r});
            return s.deny ? !opens : opens;
        }
        case StmtKind::PlaintextInequality: {
            const auto& s = std::get<PlaintextInequalityStmt>(stmt.leaf);
            if (!route_consistent(*s.backend, s.enc_pk, s.ct, w)) return false;
            Element m = derive_plain(*s.backend, s.enc_pk, s.ct, w);
            return !s.backend->eq(GroupId::G1, m, s.claimed);
        }
        default: throw std::logic_error("not a leaf");
    }
}

}  // namespace

bool relation_holds(const Statement& stmt, const Witness& wit) {
    if (stmt.kind == StmtKind::Conjunction) {
        if (wit.parts.size() != stmt.children.size()) return false;
        for (size_t i = 0; i < stmt.children.size(); ++i) {
            if (!wit.parts[i]) return false;
            if (!leaf_relation(stmt.children[i], *wit.parts[i])) return false;
        }
        return true;
    }
    if (stmt.kind == StmtKind::Disjunction) {
        if (wit.parts.size() != 2) return false;
        int live = -1;
        for (int i = 0; i < 2; ++i)
            if (wit.parts[i]) live = live < 0 ? i : -2;
        if (live < 0) return false;
        Witness sub;
        sub.parts = {wit.parts[live]};
        return relation_holds(stmt.children[live], sub);
    }
    if (wit.parts.size() != 1 || !wit.parts[0]) return false;
    return leaf_relation(stmt, *wit.parts[0]);
}

// ---------------------------------------------------------------------
// Leaf prover/verifier
// ---------------------------------------------------------------------

namespace {

Bytes cat(std::initializer_list<BytesView> parts) {
    Bytes out;
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

struct HomSession {
    HomPreimageStmt stmt;
    Value nonce;  // fresh domain element
    Bytes commitment;

    void commit(RandSource& rs) {
        nonce = stmt.f.domain().random(rs);
        commitment.clear();
        auto t = stmt.f.eval(nonce);
        auto codom = stmt.f.codomain();
        for (size_t i = 0; i < t.size(); ++i) {
            Bytes e = codom[i].encode(t[i]);
            commitment.insert(commitment.end(), e.begin(), e.end());
        }
    }
    Bytes respond(const Value& witness, const mpz_class& b) const {
        Carrier dom = stmt.f.domain();
        return dom.encode(dom.op(nonce, dom.pow(witness, b)));
    }
};

bool hom_verify(const HomPreimageStmt& s, BytesView commitment, const mpz_class& b,
                BytesView response) {
    auto codom = s.f.codomain();
    std::vector<Value> t;
    size_t off = 0;
    for (const Carrier& c : codom) {
        size_t n = c.value_size();
        if (off + n > commitment.size()) return false;
        auto v = c.decode(commitment.subspan(off, n));
        if (!v) return false;
        t.push_back(*v);
        off += n;
    }
    if (off != commitment.size()) return false;
    Carrier dom = s.f.domain();
    auto z = dom.decode(response);
    if (!z) return false;
    auto img = s.f.eval(*z);
    for (size_t i = 0; i < codom.size(); ++i) {
        Value want = codom[i].op(t[i], codom[i].pow(s.image[i], b));
        if (!codom[i].eq(img[i], want)) return false;
    }
    return true;
}

// simulated (commitment, response) at a fixed challenge
std::pair<Bytes, Bytes> hom_simulate(const HomPreimageStmt& s, const mpz_class& b, RandSource& rs) {
    Carrier dom = s.f.domain();
    Value z = dom.random(rs);
    auto img = s.f.eval(z);
    auto codom = s.f.codomain();
    Bytes commitment;
    for (size_t i = 0; i < codom.size(); ++i) {
        Value t = codom[i].op(img[i], codom[i].inverse(codom[i].pow(s.image[i], b)));
        Bytes e = codom[i].encode(t);
        commitment.insert(commitment.end(), e.begin(), e.end());
    }
    return {commitment, dom.encode(z)};
}

// Per-leaf prover state machine: commitment, then response plus an optional
// inner proof commitment, then the inner response.
class LeafProver {
  public:
    LeafProver(const Statement& stmt, const LeafWitness& wit, RandSource& rs)
        : stmt_(stmt), wit_(wit), rs_(&rs) {
        build_commitment();
    }

    const Bytes& commitment() const { return commitment_; }

    Bytes respond(const mpz_class& b) {
        switch (stmt_.kind) {
            case StmtKind::HomPreimage:
                return hom_.respond(wit_.preimage, b);
            case StmtKind::CorrectDecryption:
                return hom_.respond(Value{wit_.scalar.v}, b);
            case StmtKind::DecryptionKnowledge:
            case StmtKind::SigEncValidity:
            case StmtKind::PlaintextInequality: {
                const Backend& B = stmt_.backend();
                Element z = B.op(GroupId::G1, fresh_plain_,
                                 B.pow(GroupId::G1, plain_, b));
                make_dec_inner(b, z);
                return B.encode(GroupId::G1, z);
            }
            case StmtKind::CommitEncOpening: {
                const auto& s = std::get<CommitEncOpeningStmt>(stmt_.leaf);
                mpz_class z = int_nonce_ + b * opening_.r;
                make_gq_inner(b, z);
                return mpz_to_fixed(z, s.response_width(cbound_));
            }
            default: throw std::logic_error("not a leaf");
        }
    }

    bool has_inner() const { return inner_.has_value(); }
    const Bytes& inner_commitment() const { return inner_->commitment; }
    Bytes inner_respond(const mpz_class& b_in) {
        return inner_->respond(inner_witness_, b_in);
    }

    void set_cbound(const mpz_class& cbound) { cbound_ = cbound; }

  private:
    void build_commitment() {
        const Backend& B = stmt_.backend();
        switch (stmt_.kind) {
            case StmtKind::HomPreimage: {
                hom_.stmt = std::get<HomPreimageStmt>(stmt_.leaf);
                hom_.commit(*rs_);
                commitment_ = hom_.commitment;
                return;
            }
            case StmtKind::CorrectDecryption: {
                const auto& s = std::get<CorrectDecryptionStmt>(stmt_.leaf);
                hom_.stmt = decryption_hom(s, wit_.route);
                hom_.commit(*rs_);
                commitment_ = cat({Bytes{uint8_t(wit_.route)}, hom_.commitment});
                return;
            }
            case StmtKind::DecryptionKnowledge:
            case StmtKind::SigEncValidity:
            case StmtKind::PlaintextInequality: {
                ElGamal enc(B);
                dec_view();
                plain_ = derive_plain(B, dec_pk_, dec_ct_, wit_);
                fresh_plain_ = B.random_element(GroupId::G1, *rs_);
                enc_nonce_ = B.random_scalar(*rs_);
                t2_ = enc.encrypt(dec_pk_, fresh_plain_, enc_nonce_);
                Bytes head{uint8_t(wit_.route)};
                if (stmt_.kind == StmtKind::SigEncValidity) {
                    HomMap f = HomMap::pair_g2(B);
                    Element t1 = as_elt(f.eval(Value{fresh_plain_})[0]);
                    commitment_ = cat({head, B.encode(GroupId::GT, t1), enc.ct_encode(t2_)});
                } else if (stmt_.kind == StmtKind::PlaintextInequality) {
                    // identity map: the first-message image is the nonce itself
                    commitment_ = cat({head, B.encode(GroupId::G1, fresh_plain_), enc.ct_encode(t2_)});
                } else {
                    commitment_ = cat({head, enc.ct_encode(t2_)});
                }
                return;
            }
            case StmtKind::CommitEncOpening: {
                const auto& s = std::get<CommitEncOpeningStmt>(stmt_.leaf);
                opening_ = materialize_opening(s, wit_);
                int_nonce_ = rs_->below(s.slack() * B.order());
                PaillierKey pk = public_paillier(s);
                rho_nonce_ = rs_->unit(s.paillier_n);
                t2_int_ = Paillier::encrypt(pk, int_nonce_ % s.paillier_n, rho_nonce_);
                Pedersen ped(B);
                Element t1 = ped.map_f(int_nonce_ % B.order());
                commitment_ = cat({B.encode(GroupId::G1, t1),
                                   mpz_to_fixed(t2_int_, (mpz_sizeinbase(s.n2().get_mpz_t(), 2) + 7) / 8)});
                return;
            }
            default: throw std::logic_error("not a leaf");
        }
    }

    void dec_view() {
        if (stmt_.kind == StmtKind::DecryptionKnowledge) {
            const auto& s = std::get<DecryptionKnowledgeStmt>(stmt_.leaf);
            dec_pk_ = s.enc_pk;
            dec_ct_ = s.ct;
        } else if (stmt_.kind == StmtKind::SigEncValidity) {
            const auto& s = std::get<SigEncValidityStmt>(stmt_.leaf);
            dec_pk_ = s.enc_pk;
            dec_ct_ = s.ct;
        } else {
            const auto& s = std::get<PlaintextInequalityStmt>(stmt_.leaf);
            dec_pk_ = s.enc_pk;
            dec_ct_ = s.ct;
        }
    }

    void make_dec_inner(const mpz_class& b, const Element& z) {
        const Backend& B = stmt_.backend();
        ElGamal enc(B);
        ElGamalCt shifted = enc.ct_op(t2_, enc.ct_pow(dec_ct_, B.scalar(b)));
        CorrectDecryptionStmt inner{&B, dec_pk_, shifted, z};
        LeafWitness iw;
        if (wit_.route == WitnessRoute::DecKey) {
            iw = LeafWitness::dec_key(wit_.scalar);
        } else {
            // combined randomness of t2 * ct^b
            iw = LeafWitness::enc_randomness(B.sc_add(enc_nonce_, B.sc_mul(B.scalar(b), wit_.scalar)));
        }
        inner_.emplace();
        inner_->stmt = decryption_hom(inner, iw.route);
        inner_->commit(*rs_);
        inner_->commitment = cat({Bytes{uint8_t(iw.route)}, inner_->commitment});
        inner_witness_ = Value{iw.scalar.v};
        inner_has_route_ = true;
    }

    void make_gq_inner(const mpz_class& b, const mpz_class& z) {
        const auto& s = std::get<CommitEncOpeningStmt>(stmt_.leaf);
        PaillierKey pk = public_paillier(s);
        mpz_class shifted = Paillier::ct_op(pk, t2_int_, Paillier::ct_pow(pk, s.ct, b));
        mpz_class denom = (1 + (z % s.paillier_n) * s.paillier_n) % s.n2();
        mpz_class denom_inv;
        mpz_invert(denom_inv.get_mpz_t(), denom.get_mpz_t(), s.n2().get_mpz_t());
        mpz_class image = shifted * denom_inv % s.n2();
        HomPreimageStmt inner{HomMap::pow_n(s.paillier_n), {Value{image}}};
        mpz_class rho;
        mpz_powm(rho.get_mpz_t(), opening_.rho.get_mpz_t(), b.get_mpz_t(), s.paillier_n.get_mpz_t());
        rho = rho_nonce_ * rho % s.paillier_n;
        inner_.emplace();
        inner_->stmt = inner;
        inner_->commit(*rs_);
        inner_witness_ = Value{rho};
        inner_has_route_ = false;
    }

    Statement stmt_;
    LeafWitness wit_;
    RandSource* rs_;
    mpz_class cbound_ = 2;
    Bytes commitment_;

    HomSession hom_;  // HomPreimage / CorrectDecryption

    // decryption-style state
    Element dec_pk_, plain_, fresh_plain_;
    ElGamalCt dec_ct_, t2_;
    Scalar enc_nonce_;

    // integer-response state
    OpeningWitness opening_;
    mpz_class int_nonce_, rho_nonce_, t2_int_;

    std::optional<HomSession> inner_;
    Value inner_witness_;
    bool inner_has_route_ = false;
};

// --- leaf verification (transcript node) ---

bool verify_inner_dec(const Backend& B, const Element& pk, const ElGamalCt& ct,
                      const mpz_class& outer_b, const Element& z, const ElGamalCt& t2,
                      const Transcript& inner, const mpz_class& cbound) {
    if (!inner.children.empty()) return false;
    if (inner.challenge < 0 || inner.challenge >= cbound) return false;
    ElGamal enc(B);
    ElGamalCt shifted = enc.ct_op(t2, enc.ct_pow(ct, B.scalar(outer_b)));
    CorrectDecryptionStmt s{&B, pk, shifted, z};
    if (inner.commitment.empty()) return false;
    WitnessRoute route = WitnessRoute(inner.commitment[0]);
    if (route != WitnessRoute::DecKey && route != WitnessRoute::EncRandomness) return false;
    HomPreimageStmt hs = decryption_hom(s, route);
    return hom_verify(hs, BytesView(inner.commitment).subspan(1), inner.challenge, inner.response);
}

bool verify_leaf(const Statement& stmt, const Transcript& node, const mpz_class& cbound) {
    if (node.challenge < stmt.challenge_min() || node.challenge >= cbound) return false;
    const Backend& B = stmt.backend();
    switch (stmt.kind) {
        case StmtKind::HomPreimage: {
            if (!node.children.empty()) return false;
            const auto& s = std::get<HomPreimageStmt>(stmt.leaf);
            return hom_verify(s, node.commitment, node.challenge, node.response);
        }
        case StmtKind::CorrectDecryption: {
            if (!node.children.empty()) return false;
            const auto& s = std::get<CorrectDecryptionStmt>(stmt.leaf);
            if (node.commitment.empty()) return false;
            WitnessRoute route = WitnessRoute(node.commitment[0]);
            if (route != WitnessRoute::DecKey && route != WitnessRoute::EncRandomness) return false;
            HomPreimageStmt hs = decryption_hom(s, route);
            return hom_verify(hs, BytesView(node.commitment).subspan(1), node.challenge,
                              node.response);
        }
        case StmtKind::DecryptionKnowledge:
        case StmtKind::SigEncValidity:
        case StmtKind::PlaintextInequality: {
            if (node.children.size() != 1) return false;
            ElGamal enc(B);
            Element pk;
            ElGamalCt ct;
            size_t ctlen = 2 * B.element_size(GroupId::G1);
            BytesView cm(node.commitment);
            if (cm.size() < 1) return false;
            WitnessRoute route = WitnessRoute(cm[0]);
            if (route != WitnessRoute::DecKey && route != WitnessRoute::EncRandomness) return false;
            cm = cm.subspan(1);
            Element t1;
            bool want_equal = true;
            if (stmt.kind == StmtKind::SigEncValidity) {
                const auto& s = std::get<SigEncValidityStmt>(stmt.leaf);
                if (!s.aux.empty()) return false;
                size_t gt = B.element_size(GroupId::GT);
                if (cm.size() != gt + ctlen) return false;
                auto t1v = B.decode(GroupId::GT, cm.subspan(0, gt));
                if (!t1v) return false;
                t1 = *t1v;
                cm = cm.subspan(gt);
                pk = s.enc_pk;
                ct = s.ct;
                want_equal = !s.deny;
            } else if (stmt.kind == StmtKind::PlaintextInequality) {
                const auto& s = std::get<PlaintextInequalityStmt>(stmt.leaf);
                size_t g1 = B.element_size(GroupId::G1);
                if (cm.size() != g1 + ctlen) return false;
                auto t1v = B.decode(GroupId::G1, cm.subspan(0, g1));
                if (!t1v) return false;
                t1 = *t1v;
                cm = cm.subspan(g1);
                pk = s.enc_pk;
                ct = s.ct;
                want_equal = false;
            } else {
                const auto& s = std::get<DecryptionKnowledgeStmt>(stmt.leaf);
                if (cm.size() != ctlen) return false;
                pk = s.enc_pk;
                ct = s.ct;
            }
            auto t2 = enc.ct_decode(cm.subspan(cm.size() - ctlen));
            if (!t2) return false;
            auto zv = B.decode(GroupId::G1, node.response);
            if (!zv) return false;
            if (!verify_inner_dec(B, pk, ct, node.challenge, *zv, *t2, node.children[0], cbound))
                return false;
            if (stmt.kind == StmtKind::DecryptionKnowledge) return true;
            if (stmt.kind == StmtKind::SigEncValidity) {
                const auto& s = std::get<SigEncValidityStmt>(stmt.leaf);
                HomMap f = HomMap::pair_g2(B);
                Element lhs = as_elt(f.eval(Value{*zv})[0]);
                Element rhs = B.op(GroupId::GT, t1,
                                   B.pow(GroupId::GT, sig_image(s), node.challenge));
                return B.eq(GroupId::GT, lhs, rhs) == want_equal;
            }
            const auto& s = std::get<PlaintextInequalityStmt>(stmt.leaf);
            Element rhs = B.op(GroupId::G1, t1,
                               B.pow(GroupId::G1, s.claimed, node.challenge));
            return !B.eq(GroupId::G1, *zv, rhs);
        }
        case StmtKind::CommitEncOpening: {
            if (node.children.size() != 1) return false;
            const auto& s = std::get<CommitEncOpeningStmt>(stmt.leaf);
            size_t g1 = B.element_size(GroupId::G1);
            size_t nw = (mpz_sizeinbase(s.n2().get_mpz_t(), 2) + 7) / 8;
            if (node.commitment.size() != g1 + nw) return false;
            auto t1 = B.decode(GroupId::G1, BytesView(node.commitment).subspan(0, g1));
            if (!t1) return false;
            mpz_class t2 = mpz_from_bytes(BytesView(node.commitment).subspan(g1));
            PaillierKey pk = public_paillier(s);
            if (!Paillier::ct_valid(pk, t2)) return false;
            if (node.response.size() != s.response_width(cbound)) return false;
            mpz_class z = mpz_from_bytes(node.response);
            if (z >= s.response_bound(cbound)) return false;
            if (s.response_bound(cbound) >= s.paillier_n)
                return false;  // modulus must dominate the response range
            // commitment-side equation
            Pedersen ped(B);
            Element lhs = ped.map_f(z % B.order());
            Element image = ped.image(s.commitment, s.msg);
            Element rhs = B.op(GroupId::G1, *t1, B.pow(GroupId::G1, image, node.challenge));
            bool equal = B.eq(GroupId::G1, lhs, rhs);
            if ((s.deny ? !equal : equal) == false) return false;
            // encryption-side inner proof
            mpz_class shifted = Paillier::ct_op(pk, t2, Paillier::ct_pow(pk, s.ct, node.challenge));
            mpz_class denom = (1 + (z % s.paillier_n) * s.paillier_n) % s.n2();
            mpz_class denom_inv;
            mpz_invert(denom_inv.get_mpz_t(), denom.get_mpz_t(), s.n2().get_mpz_t());
            HomPreimageStmt inner{HomMap::pow_n(s.paillier_n),
                                  {Value{shifted * denom_inv % s.n2()}}};
            const Transcript& in = node.children[0];
            if (!in.children.empty()) return false;
            if (in.challenge < 0 || in.challenge >= cbound) return false;
            return hom_verify(inner, in.commitment, in.challenge, in.response);
        }
        default: throw std::logic_error("not a leaf");
    }
}

// --- leaf simulation at fixed challenges ---

Transcript simulate_leaf(const Statement& stmt, const mpz_class& b, const mpz_class& b_in,
                         WitnessRoute route, RandSource& rs) {
    const Backend& B = stmt.backend();
    Transcript node;
    node.challenge = b;
    switch (stmt.kind) {
        case StmtKind::HomPreimage: {
            const auto& s = std::get<HomPreimageStmt>(stmt.leaf);
            auto [cm, resp] = hom_simulate(s, b, rs);
            node.commitment = std::move(cm);
            node.response = std::move(resp);
            return node;
        }
        case StmtKind::CorrectDecryption: {
            const auto& s = std::get<CorrectDecryptionStmt>(stmt.leaf);
            HomPreimageStmt hs = decryption_hom(s, route);
            auto [cm, resp] = hom_simulate(hs, b, rs);
            node.commitment = cat({Bytes{uint8_t(route)}, cm});
            node.response = std::move(resp);
            return node;
        }
        case StmtKind::DecryptionKnowledge:
        case StmtKind::SigEncValidity:
        case StmtKind::PlaintextInequality: {
            ElGamal enc(B);
            Element pk;
            ElGamalCt ct;
            if (stmt.kind == StmtKind::DecryptionKnowledge) {
                const auto& s = std::get<DecryptionKnowledgeStmt>(stmt.leaf);
                pk = s.enc_pk;
                ct = s.ct;
            } else if (stmt.kind == StmtKind::SigEncValidity) {
                const auto& s = std::get<SigEncValidityStmt>(stmt.leaf);
                pk = s.enc_pk;
                ct = s.ct;
            } else {
                const auto& s = std::get<PlaintextInequalityStmt>(stmt.leaf);
                pk = s.enc_pk;
                ct = s.ct;
            }
            Element z = B.random_element(GroupId::G1, rs);
            Scalar a2 = B.random_scalar(rs);
            ElGamalCt t2 = enc.ct_op(enc.encrypt(pk, z, a2),
                                     enc.ct_inverse(enc.ct_pow(ct, B.scalar(b))));
            Bytes head{uint8_t(route)};
            if (stmt.kind == StmtKind::SigEncValidity) {
                const auto& s = std::get<SigEncValidityStmt>(stmt.leaf);
                HomMap f = HomMap::pair_g2(B);
                Element t1;
                if (!s.deny) {
                    Element fz = as_elt(f.eval(Value{z})[0]);
                    Element ib = B.pow(GroupId::GT, sig_image(s), b);
                    t1 = B.op(GroupId::GT, fz, B.inverse(GroupId::GT, ib));
                } else {
                    // a random image independent of z; resample until the
                    // inequality side accepts
                    Element fz = as_elt(f.eval(Value{z})[0]);
                    Element ib = B.pow(GroupId::GT, sig_image(s), b);
                    Element bad = B.op(GroupId::GT, fz, B.inverse(GroupId::GT, ib));
                    do {
                        t1 = B.random_element(GroupId::GT, rs);
                    } while (B.eq(GroupId::GT, t1, bad));
                }
                node.commitment = cat({head, B.encode(GroupId::GT, t1), enc.ct_encode(t2)});
            } else if (stmt.kind == StmtKind::PlaintextInequality) {
                const auto& s = std::get<PlaintextInequalityStmt>(stmt.leaf);
                Element bad = B.op(GroupId::G1, z,
                                   B.inverse(GroupId::G1, B.pow(GroupId::G1, s.claimed, b)));
                Element t1;
                do {
                    t1 = B.random_element(GroupId::G1, rs);
                } while (B.eq(GroupId::G1, t1, bad));
                node.commitment = cat({head, B.encode(GroupId::G1, t1), enc.ct_encode(t2)});
            } else {
                node.commitment = cat({head, enc.ct_encode(t2)});
            }
            node.response = B.encode(GroupId::G1, z);
            // inner proof for the (true) statement that z decrypts t2 * ct^b
            ElGamalCt shifted = enc.ct_op(t2, enc.ct_pow(ct, B.scalar(b)));
            CorrectDecryptionStmt inner{&B, pk, shifted, z};
            HomPreimageStmt hs = decryption_hom(inner, route);
            auto [icm, iresp] = hom_simulate(hs, b_in, rs);
            Transcript in;
            in.commitment = cat({Bytes{uint8_t(route)}, icm});
            in.challenge = b_in;
            in.response = std::move(iresp);
            node.children.push_back(std::move(in));
            return node;
        }
        case StmtKind::CommitEncOpening: {
            const auto& s = std::get<CommitEncOpeningStmt>(stmt.leaf);
            PaillierKey pk = public_paillier(s);
            mpz_class z = rs.below(s.slack() * B.order());
            mpz_class rho = rs.unit(s.paillier_n);
            mpz_class enc_z = Paillier::encrypt(pk, z % s.paillier_n, rho);
            mpz_class ct_inv;
            mpz_invert(ct_inv.get_mpz_t(), s.ct.get_mpz_t(), s.n2().get_mpz_t());
            mpz_class t2 = Paillier::ct_op(pk, enc_z, Paillier::ct_pow(pk, ct_inv, b));
            Pedersen ped(B);
            Element image = ped.image(s.commitment, s.msg);
            Element t1;
            if (!s.deny) {
                t1 = B.op(GroupId::G1, ped.map_f(z % B.order()),
                          B.inverse(GroupId::G1, B.pow(GroupId::G1, image, b)));
            } else {
                Element bad = B.op(GroupId::G1, ped.map_f(z % B.order()),
                                   B.inverse(GroupId::G1, B.pow(GroupId::G1, image, b)));
                do {
                    t1 = B.random_element(GroupId::G1, rs);
                } while (B.eq(GroupId::G1, t1, bad));
            }
            size_t nw = (mpz_sizeinbase(s.n2().get_mpz_t(), 2) + 7) / 8;
            node.commitment = cat({B.encode(GroupId::G1, t1), mpz_to_fixed(t2, nw)});
            node.response = mpz_to_fixed(z, s.response_width(2 /*overwritten below*/));
            // width depends on the surrounding challenge bound; callers fix it
            // via simulate() which re-encodes
            // inner: t2 * ct^b encrypts z with known randomness rho
            mpz_class denom = (1 + (z % s.paillier_n) * s.paillier_n) % s.n2();
            mpz_class denom_inv;
            mpz_invert(denom_inv.get_mpz_t(), denom.get_mpz_t(), s.n2().get_mpz_t());
            mpz_class shifted = Paillier::ct_op(pk, t2, Paillier::ct_pow(pk, s.ct, b));
            HomPreimageStmt inner{HomMap::pow_n(s.paillier_n),
                                  {Value{shifted * denom_inv % s.n2()}}};
            HomSession is;
            is.stmt = inner;
            is.commit(rs);
            Transcript in;
            in.commitment = is.commitment;
            in.challenge = b_in;
            in.response = is.respond(Value{rho}, b_in);
            node.children.push_back(std::move(in));
            return node;
        }
        default: throw std::logic_error("not a leaf");
    }
}

size_t count_leaves(const Statement& stmt) {
    return stmt.is_leaf() ? 1 : stmt.children.size();
}

bool leaf_has_inner(const Statement& stmt) {
    switch (stmt.kind) {
        case StmtKind::DecryptionKnowledge:
        case StmtKind::SigEncValidity:
        case StmtKind::PlaintextInequality:
        case StmtKind::CommitEncOpening: return true;
        default: return false;
    }
}

}  // namespace

// ---------------------------------------------------------------------
// Drivers
// ---------------------------------------------------------------------

SigmaTranscript prove(const Statement& stmt, const Witness& wit, const ChallengeSpace& cs,
                      RandSource& rs, const ChallengeFn& challenge, bool validate) {
    if (cs.bound > stmt.backend().order())
        throw std::runtime_error("challenge space exceeds the group order");
    if (validate && !relation_holds(stmt, wit))
        throw std::runtime_error("witness does not satisfy statement");

    SigmaTranscript out;
    out.statement = encode_statement(stmt);
    out.cbound = cs.bound;

    if (stmt.kind == StmtKind::Disjunction) {
        size_t live = wit.parts[0] ? 0 : 1;
        size_t dead = 1 - live;
        // simulate the witness-free branch at a self-chosen challenge
        mpz_class b_dead = rs.below(cs.bound);
        mpz_class b_dead_in = rs.below(cs.bound);
        WitnessRoute dead_route = WitnessRoute::DecKey;
        Transcript sim = simulate_leaf(stmt.children[dead], b_dead, b_dead_in, dead_route, rs);
        LeafProver real(stmt.children[live], *wit.parts[live], rs);
        real.set_cbound(cs.bound);
        Bytes combined;
        if (live == 0) {
            combined = cat({real.commitment(), sim.commitment});
        } else {
            combined = cat({sim.commitment, real.commitment()});
        }
        mpz_class b = challenge(0, combined);
        mpz_class b_live = (b - b_dead) % cs.bound;
        if (b_live < 0) b_live += cs.bound;
        Transcript rn;
        rn.commitment = real.commitment();
        rn.challenge = b_live;
        rn.response = real.respond(b_live);
        if (real.has_inner()) {
            Transcript in;
            in.commitment = real.inner_commitment();
            in.challenge = challenge(1, in.commitment);
            in.response = real.inner_respond(in.challenge);
            rn.children.push_back(std::move(in));
        }
        out.root.challenge = b;
        if (live == 0) {
            out.root.children.push_back(std::move(rn));
            out.root.children.push_back(std::move(sim));
        } else {
            out.root.children.push_back(std::move(sim));
            out.root.children.push_back(std::move(rn));
        }
        return out;
    }

    // leaf or conjunction: instantiate one prover per branch
    std::vector<LeafProver> provers;
    std::vector<const Statement*> branches;
    if (stmt.is_leaf()) {
        branches.push_back(&stmt);
        provers.emplace_back(stmt, *wit.parts.at(0), rs);
    } else {
        for (size_t i = 0; i < stmt.children.size(); ++i) {
            branches.push_back(&stmt.children[i]);
            provers.emplace_back(stmt.children[i], *wit.parts.at(i), rs);
        }
    }
    Bytes combined;
    for (auto& p : provers) {
        p.set_cbound(cs.bound);
        combined = cat({combined, p.commitment()});
    }
    mpz_class b = challenge(0, combined);
    if (!cs.contains(stmt, b)) throw std::runtime_error("challenge outside the admissible space");

    std::vector<Transcript> nodes;
    for (auto& p : provers) {
        Transcript n;
        n.commitment = p.commitment();
        n.challenge = b;
        n.response = p.respond(b);
        if (p.has_inner()) {
            Transcript in;
            in.commitment = p.inner_commitment();
            in.challenge = challenge(1, in.commitment);
            in.response = p.inner_respond(in.challenge);
            n.children.push_back(std::move(in));
        }
        nodes.push_back(std::move(n));
    }
    if (stmt.is_leaf()) {
        out.root = std::move(nodes[0]);
    } else {
        out.root.challenge = b;
        out.root.children = std::move(nodes);
    }
    return out;
}

bool verify(const Statement& stmt, const SigmaTranscript& tr) {
    if (tr.statement != encode_statement(stmt)) return false;
    if (tr.cbound < 2 || tr.cbound > stmt.backend().order()) return false;
    const Transcript& root = tr.root;
    if (stmt.is_leaf()) return verify_leaf(stmt, root, tr.cbound);
    if (stmt.kind == StmtKind::Conjunction) {
        if (root.children.size() != stmt.children.size()) return false;
        if (!root.commitment.empty() || !root.response.empty()) return false;
        if (root.challenge < stmt.challenge_min() || root.challenge >= tr.cbound) return false;
        for (size_t i = 0; i < stmt.children.size(); ++i) {
            if (root.children[i].challenge != root.challenge) return false;
            if (!verify_leaf(stmt.children[i], root.children[i], tr.cbound)) return false;
        }
        return true;
    }
    // disjunction
    if (root.children.size() != 2) return false;
    if (root.challenge < 0 || root.challenge >= tr.cbound) return false;
    mpz_class sum = (root.children[0].challenge + root.children[1].challenge) % tr.cbound;
    if (sum != root.challenge) return false;
    for (size_t i = 0; i < 2; ++i) {
        if (root.children[i].challenge < 0 || root.children[i].challenge >= tr.cbound) return false;
        if (!verify_leaf(stmt.children[i], root.children[i], tr.cbound)) return false;
    }
    return true;
}

RunResult run_interactive(const Statement& stmt, const Witness& wit, const ChallengeSpace& cs,
                          RandSource& prover_rs, RandSource& verifier_rs) {
    ChallengeFn cb = [&](int depth, BytesView) -> mpz_class {
        if (depth == 0) return cs.draw(stmt, verifier_rs);
        return verifier_rs.below(cs.bound);
    };
    SigmaTranscript tr = prove(stmt, wit, cs, prover_rs, cb);
    return {verify(stmt, tr), std::move(tr)};
}

SigmaTranscript simulate(const Statement& stmt, const ChallengeSpace& cs, const mpz_class& challenge,
                         const std::vector<mpz_class>& inner_challenges,
                         const std::vector<WitnessRoute>& routes, RandSource& rs) {
    SigmaTranscript out;
    out.statement = encode_statement(stmt);
    out.cbound = cs.bound;
    size_t leaves = count_leaves(stmt);
    auto inner_at = [&](size_t i) -> mpz_class {
        return i < inner_challenges.size() ? inner_challenges[i] : 0;
    };
    auto route_at = [&](size_t i) -> WitnessRoute {
        return i < routes.size() ? routes[i] : WitnessRoute::DecKey;
    };
    if (stmt.is_leaf()) {
        out.root = simulate_leaf(stmt, challenge, inner_at(0), route_at(0), rs);
        if (stmt.kind == StmtKind::CommitEncOpening) {
            const auto& s = std::get<CommitEncOpeningStmt>(stmt.leaf);
            mpz_class z = mpz_from_bytes(out.root.response);
            out.root.response = mpz_to_fixed(z, s.response_width(cs.bound));
        }
        return out;
    }
    if (stmt.kind == StmtKind::Conjunction) {
        out.root.challenge = challenge;
        for (size_t i = 0; i < leaves; ++i) {
            Transcript n = simulate_leaf(stmt.children[i], challenge, inner_at(i), route_at(i), rs);
            if (stmt.children[i].kind == StmtKind::CommitEncOpening) {
                const auto& s = std::get<CommitEncOpeningStmt>(stmt.children[i].leaf);
                mpz_class z = mpz_from_bytes(n.response);
                n.response = mpz_to_fixed(z, s.response_width(cs.bound));
            }
            out.root.children.push_back(std::move(n));
        }
        return out;
    }
    // disjunction: split the challenge uniformly
    mpz_class b0 = rs.below(cs.bound);
    mpz_class b1 = (challenge - b0) % cs.bound;
    if (b1 < 0) b1 += cs.bound;
    out.root.challenge = challenge;
    out.root.children.push_back(simulate_leaf(stmt.children[0], b0, inner_at(0), route_at(0), rs));
    out.root.children.push_back(simulate_leaf(stmt.children[1], b1, inner_at(1), route_at(1), rs));
    return out;
}

Value extract(const Statement& stmt, const SigmaTranscript& a, const SigmaTranscript& b) {
    if (!stmt.is_leaf()) throw ExtractError("extraction is defined on leaf statements");
    if (!verify(stmt, a) || !verify(stmt, b)) throw ExtractError("non-accepting transcript");
    if (a.root.commitment != b.root.commitment) throw ExtractError("commitments differ");
    if (a.root.challenge == b.root.challenge) throw ExtractError("challenges are equal");

    // identify the domain carrier, response values and (order, unit)
    Carrier dom;
    Value z1, z2;
    mpz_class order;
    Value unit;
    const Backend& B = stmt.backend();
    switch (stmt.kind) {
        case StmtKind::HomPreimage: {
            const auto& s = std::get<HomPreimageStmt>(stmt.leaf);
            dom = s.f.domain();
            z1 = *dom.decode(a.root.response);
            z2 = *dom.decode(b.root.response);
            order = s.f.extract_order();
            unit = s.f.extract_unit(s.image);
            break;
        }
        case StmtKind::CorrectDecryption: {
            const auto& s = std::get<CorrectDecryptionStmt>(stmt.leaf);
            WitnessRoute route = WitnessRoute(a.root.commitment.at(0));
            HomPreimageStmt hs = decryption_hom(s, route);
            dom = hs.f.domain();
            z1 = *dom.decode(a.root.response);
            z2 = *dom.decode(b.root.response);
            order = hs.f.extract_order();
            unit = hs.f.extract_unit(hs.image);
            break;
        }
        case StmtKind::DecryptionKnowledge:
        case StmtKind::SigEncValidity:
        case StmtKind::PlaintextInequality: {
            dom = Carrier::group(B, GroupId::G1);
            z1 = *dom.decode(a.root.response);
            z2 = *dom.decode(b.root.response);
            order = B.order();
            unit = dom.identity();
            break;
        }
        case StmtKind::CommitEncOpening: {
            // integer responses; recover the opening mod the group order
            mpz_class zi1 = mpz_from_bytes(a.root.response);
            mpz_class zi2 = mpz_from_bytes(b.root.response);
            mpz_class d = b.root.challenge - a.root.challenge;
            mpz_class g, x, y;
            mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), B.order().get_mpz_t(),
                       d.get_mpz_t());
            if (g != 1) throw ExtractError("challenge difference shares a factor with the order");
            mpz_class r = (y * (zi2 - zi1)) % B.order();
            if (r < 0) r += B.order();
            return Value{r};
        }
        default: throw ExtractError("unsupported statement kind");
    }
    mpz_class d = b.root.challenge - a.root.challenge;
    mpz_class g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), order.get_mpz_t(), d.get_mpz_t());
    if (g != 1) throw ExtractError("challenge difference shares a factor with the order");
    Value quot = dom.op(dom.inverse(z1), z2);
    return dom.op(dom.pow(unit, x), dom.pow(quot, y));
}

// ---------------------------------------------------------------------
// Fiat-Shamir
// ---------------------------------------------------------------------

namespace {
bool fs_compatible(const Statement& stmt) {
    if (stmt.kind == StmtKind::HomPreimage || stmt.kind == StmtKind::CorrectDecryption) return true;
    if (stmt.kind == StmtKind::Conjunction) {
        for (const Statement& c : stmt.children)
            if (!fs_compatible(c)) return false;
        return true;
    }
    return false;
}

mpz_class fs_challenge(const Statement& stmt, const ChallengeSpace& cs, BytesView domain_tag,
                       BytesView stmt_bytes, BytesView commitment) {
    Bytes data = Bytes(stmt_bytes.begin(), stmt_bytes.end());
    data.insert(data.end(), commitment.begin(), commitment.end());
    mpz_class lo = stmt.challenge_min();
    return lo + hash_to_range(domain_tag, data, cs.bound - lo);
}
}  // namespace

SigmaTranscript fs_prove(const Statement& stmt, const Witness& wit, const ChallengeSpace& cs,
                         BytesView domain_tag, RandSource& rs) {
    if (!fs_compatible(stmt))
        throw std::runtime_error("statement needs interaction (inner proof rounds)");
    Bytes stmt_bytes = encode_statement(stmt);
    ChallengeFn cb = [&](int depth, BytesView data) -> mpz_class {
        if (depth != 0) throw std::logic_error("unexpected inner round");
        return fs_challenge(stmt, cs, domain_tag, stmt_bytes, data);
    };
    return prove(stmt, wit, cs, rs, cb);
}

bool fs_verify(const Statement& stmt, const SigmaTranscript& tr, BytesView domain_tag) {
    if (!fs_compatible(stmt)) return false;
    if (!verify(stmt, tr)) return false;
    // recompute the challenge from statement and commitment bytes
    Bytes combined;
    if (stmt.is_leaf()) {
        combined = tr.root.commitment;
    } else {
        for (const Transcript& c : tr.root.children)
            combined.insert(combined.end(), c.commitment.begin(), c.commitment.end());
    }
    ChallengeSpace cs(tr.cbound);
    mpz_class want = fs_challenge(stmt, cs, domain_tag, tr.statement, combined);
    return want == tr.root.challenge;
}

}  // namespace osg::sigma
