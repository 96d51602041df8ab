#include "osg/primitives/primitives.hpp"

#include "osg/hash.hpp"

namespace osg {

// --- BLS-style class-S signature ---

SigKeyPair BlsScheme::keygen(RandSource& rs) const {
    Scalar sk = b_.random_nonzero_scalar(rs);
    return {sk, b_.pow(GroupId::G2, b_.generator(GroupId::G2), sk)};
}

SplitSig BlsScheme::sign(const Scalar& sk, BytesView msg) const {
    if (sk.v == 0) throw std::runtime_error("degenerate signing key");
    Element h = b_.hash_to_g1(msg);
    return {b_.pow(GroupId::G1, h, sk), {}};
}

bool BlsScheme::verify(const Element& pk, BytesView msg, const SplitSig& sig) const {
    if (!sig.aux.empty()) return false;
    return b_.eq(GroupId::GT, map_f(sig.core), image(pk, msg));
}

// --- ElGamal ---

EncKeyPair ElGamal::keygen(RandSource& rs) const {
    Scalar sk = b_.random_nonzero_scalar(rs);
    return {sk, b_.pow(GroupId::G1, b_.generator(GroupId::G1), sk)};
}

ElGamalCt ElGamal::encrypt(const Element& pk, const Element& msg, const Scalar& rand) const {
    Element encap = b_.pow(GroupId::G1, b_.generator(GroupId::G1), rand);
    Element pad = b_.op(GroupId::G1, msg, b_.pow(GroupId::G1, pk, rand));
    return {encap, pad};
}

ElGamalCt ElGamal::encrypt(const Element& pk, const Element& msg, RandSource& rs,
                           Scalar* rand_out) const {
    Scalar a = b_.random_scalar(rs);
    if (rand_out) *rand_out = a;
    return encrypt(pk, msg, a);
}

Element ElGamal::decrypt(const Scalar& sk, const ElGamalCt& ct) const {
    Element mask = b_.pow(GroupId::G1, ct.encap, sk);
    return b_.op(GroupId::G1, ct.pad, b_.inverse(GroupId::G1, mask));
}

ElGamalCt ElGamal::ct_op(const ElGamalCt& a, const ElGamalCt& b) const {
    return {b_.op(GroupId::G1, a.encap, b.encap), b_.op(GroupId::G1, a.pad, b.pad)};
}

ElGamalCt ElGamal::ct_pow(const ElGamalCt& a, const Scalar& k) const {
    return {b_.pow(GroupId::G1, a.encap, k), b_.pow(GroupId::G1, a.pad, k)};
}

ElGamalCt ElGamal::ct_inverse(const ElGamalCt& a) const {
    return {b_.inverse(GroupId::G1, a.encap), b_.inverse(GroupId::G1, a.pad)};
}

ElGamalCt ElGamal::ct_identity() const {
    return {b_.identity(GroupId::G1), b_.identity(GroupId::G1)};
}

std::pair<Element, Element> ElGamal::kem_encap(const Element& pk, RandSource& rs,
                                               Scalar* rand_out) const {
    Scalar a = b_.random_scalar(rs);
    if (rand_out) *rand_out = a;
    return {b_.pow(GroupId::G1, b_.generator(GroupId::G1), a), b_.pow(GroupId::G1, pk, a)};
}

Element ElGamal::kem_decap(const Scalar& sk, const Element& encap) const {
    return b_.pow(GroupId::G1, encap, sk);
}

Element ElGamal::dem_encrypt(const Element& key, const Element& msg) const {
    return b_.op(GroupId::G1, msg, key);
}

Element ElGamal::dem_decrypt(const Element& key, const Element& ct) const {
    return b_.op(GroupId::G1, ct, b_.inverse(GroupId::G1, key));
}

Bytes ElGamal::ct_encode(const ElGamalCt& ct) const {
    Writer w;
    w.raw(b_.encode(GroupId::G1, ct.encap));
    w.raw(b_.encode(GroupId::G1, ct.pad));
    return w.take();
}

std::optional<ElGamalCt> ElGamal::ct_decode(BytesView b) const {
    size_t n = b_.element_size(GroupId::G1);
    if (b.size() != 2 * n) return std::nullopt;
    auto encap = b_.decode(GroupId::G1, b.subspan(0, n));
    auto pad = b_.decode(GroupId::G1, b.subspan(n, n));
    if (!encap || !pad) return std::nullopt;
    return ElGamalCt{*encap, *pad};
}

// --- Pedersen ---

Pedersen::Pedersen(const Backend& backend) : b_(backend) {
    if (b_.kind() == BackendKind::Toy) {
        // fixed second generator g^17; its log is known only to test oracles
        h_ = b_.pow(GroupId::G1, b_.generator(GroupId::G1), mpz_class(17));
    } else {
        h_ = b_.hash_to_g1(str_bytes("osg/pedersen/h"));
    }
}

Element Pedersen::commit(const Scalar& msg, const Scalar& opening) const {
    Element gm = b_.pow(GroupId::G1, b_.generator(GroupId::G1), msg);
    return b_.op(GroupId::G1, gm, b_.pow(GroupId::G1, h_, opening));
}

bool Pedersen::open(const Element& c, const Scalar& msg, const Scalar& opening) const {
    return b_.eq(GroupId::G1, c, commit(msg, opening));
}

Element Pedersen::map_f(const mpz_class& x) const { return b_.pow(GroupId::G1, h_, x); }

Element Pedersen::image(const Element& c, const Scalar& msg) const {
    Element gm = b_.pow(GroupId::G1, b_.generator(GroupId::G1), msg);
    return b_.op(GroupId::G1, c, b_.inverse(GroupId::G1, gm));
}

// --- Paillier ---

PaillierKey Paillier::keygen(RandSource& rs, unsigned bits) {
    unsigned half = bits / 2;
    auto gen_prime = [&](unsigned bit_len) {
        while (true) {
            mpz_class lo = mpz_class(1) << (bit_len - 1);
            mpz_class cand = lo + rs.below(lo);
            mpz_nextprime(cand.get_mpz_t(), cand.get_mpz_t());
            if (mpz_sizeinbase(cand.get_mpz_t(), 2) == bit_len) return cand;
        }
    };
    while (true) {
        mpz_class p = gen_prime(half);
        mpz_class q = gen_prime(half);
        if (p == q) continue;
        mpz_class n = p * q;
        mpz_class lambda = lcm(p - 1, q - 1);
        if (gcd(n, lambda) != 1) continue;
        mpz_class mu;
        if (!mpz_invert(mu.get_mpz_t(), lambda.get_mpz_t(), n.get_mpz_t())) continue;
        return {n, n * n, lambda, mu};
    }
}

mpz_class Paillier::encrypt(const PaillierKey& k, const mpz_class& msg, const mpz_class& rand) {
    if (msg < 0 || msg >= k.n) throw std::runtime_error("paillier message out of range");
    if (rand <= 0 || rand >= k.n || gcd(rand, k.n) != 1)
        throw std::runtime_error("paillier randomness not a unit");
    mpz_class rn;
    mpz_powm(rn.get_mpz_t(), rand.get_mpz_t(), k.n.get_mpz_t(), k.n2.get_mpz_t());
    mpz_class ct = rn * (1 + msg * k.n) % k.n2;
    return ct;
}

mpz_class Paillier::encrypt(const PaillierKey& k, const mpz_class& msg, RandSource& rs,
                            mpz_class* rand_out) {
    mpz_class r = rs.unit(k.n);
    if (rand_out) *rand_out = r;
    return encrypt(k, msg, r);
}

std::pair<mpz_class, mpz_class> Paillier::decrypt_full(const PaillierKey& k, const mpz_class& ct) {
    if (!k.has_private()) throw std::runtime_error("missing paillier private key");
    if (!ct_valid(k, ct)) throw std::runtime_error("ciphertext outside Z_{n^2}^*");
    mpz_class u;
    mpz_powm(u.get_mpz_t(), ct.get_mpz_t(), k.lambda.get_mpz_t(), k.n2.get_mpz_t());
    mpz_class l = (u - 1) / k.n;
    mpz_class m = l * k.mu % k.n;
    // randomness = (ct * (1+mN)^{-1})^{N^{-1} mod lambda} mod N
    mpz_class denom = (1 + m * k.n) % k.n2;
    mpz_class denom_inv;
    mpz_invert(denom_inv.get_mpz_t(), denom.get_mpz_t(), k.n2.get_mpz_t());
    mpz_class rn = ct * denom_inv % k.n2 % k.n;
    mpz_class n_inv;
    mpz_invert(n_inv.get_mpz_t(), k.n.get_mpz_t(), k.lambda.get_mpz_t());
    mpz_class r;
    mpz_powm(r.get_mpz_t(), rn.get_mpz_t(), n_inv.get_mpz_t(), k.n.get_mpz_t());
    return {m, r};
}

mpz_class Paillier::ct_op(const PaillierKey& k, const mpz_class& a, const mpz_class& b) {
    return a * b % k.n2;
}

mpz_class Paillier::ct_pow(const PaillierKey& k, const mpz_class& a, const mpz_class& e) {
    if (e < 0) throw std::runtime_error("negative exponent");
    mpz_class out;
    mpz_powm(out.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), k.n2.get_mpz_t());
    return out;
}

bool Paillier::ct_valid(const PaillierKey& k, const mpz_class& ct) {
    return ct > 0 && ct < k.n2 && gcd(ct, k.n) == 1;
}

Scalar hash_to_scalar(const Backend& b, BytesView domain_tag, BytesView msg) {
    return {hash_to_range(domain_tag, msg, b.order())};
}

}  // namespace osg
