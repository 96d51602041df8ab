#ifndef OSG_PRIMITIVES_HPP_
#define OSG_PRIMITIVES_HPP_

#include "osg/groups/backend.hpp"

namespace osg {

// ---------------------------------------------------------------------
// Pairing-based signature with a convertible (core, aux) split: the core
// lives in G1 and carries all message/key dependence, the aux part is the
// empty string. verify reduces to a homomorphic image check
// e(core, g2) == e(H(msg), pk).
// ---------------------------------------------------------------------

struct SigKeyPair {
    Scalar sk;
    Element pk;  // in G2
};

struct SplitSig {
    Element core;  // G1
    Bytes aux;     // empty for this scheme
};

class BlsScheme {
  public:
    explicit BlsScheme(const Backend& backend) : b_(backend) {}

    SigKeyPair keygen(RandSource& rs) const;
    SplitSig sign(const Scalar& sk, BytesView msg) const;
    bool verify(const Element& pk, BytesView msg, const SplitSig& sig) const;

    // class-membership algorithms: convert/retrieve are trivial for this
    // scheme (the signature already is its split form); compute yields the
    // verification map f(x) = e(x, g2) and the image I = e(H(msg), pk)
    SplitSig convert(const SplitSig& sig) const { return sig; }
    SplitSig retrieve(const Element& core, BytesView aux) const {
        return {core, Bytes(aux.begin(), aux.end())};
    }
    Element map_f(const Element& x) const { return b_.pairing(x, b_.generator(GroupId::G2)); }
    Element image(const Element& pk, BytesView msg) const {
        return b_.pairing(b_.hash_to_g1(msg), pk);
    }
    // aux is statistically independent of message and key: it is empty
    Bytes simulate_aux() const { return {}; }

    const Backend& backend() const { return b_; }

  private:
    const Backend& b_;
};

// ---------------------------------------------------------------------
// ElGamal over G1, kept in KEM/DEM split form. The ciphertext space is
// G1 x G1 under componentwise multiplication and the scheme is
// multiplicatively homomorphic with composable randomness.
// ---------------------------------------------------------------------

struct EncKeyPair {
    Scalar sk;
    Element pk;  // in G1
};

struct ElGamalCt {
    Element encap;  // g^a
    Element pad;    // M * pk^a
};

class ElGamal {
  public:
    explicit ElGamal(const Backend& backend) : b_(backend) {}

    EncKeyPair keygen(RandSource& rs) const;
    ElGamalCt encrypt(const Element& pk, const Element& msg, const Scalar& rand) const;
    ElGamalCt encrypt(const Element& pk, const Element& msg, RandSource& rs, Scalar* rand_out) const;
    Element decrypt(const Scalar& sk, const ElGamalCt& ct) const;

    // ciphertext group law: product ciphertext decrypts to the product of
    // the plaintexts; its randomness is the sum of the factors' randomness
    ElGamalCt ct_op(const ElGamalCt& a, const ElGamalCt& b) const;
    ElGamalCt ct_pow(const ElGamalCt& a, const Scalar& k) const;
    ElGamalCt ct_inverse(const ElGamalCt& a) const;
    ElGamalCt ct_identity() const;

    // KEM/DEM split
    std::pair<Element, Element> kem_encap(const Element& pk, RandSource& rs,
                                          Scalar* rand_out = nullptr) const;
    Element kem_decap(const Scalar& sk, const Element& encap) const;
    Element dem_encrypt(const Element& key, const Element& msg) const;
    Element dem_decrypt(const Element& key, const Element& ct) const;

    Bytes ct_encode(const ElGamalCt& ct) const;
    std::optional<ElGamalCt> ct_decode(BytesView b) const;

    const Backend& backend() const { return b_; }

  private:
    const Backend& b_;
};

// ---------------------------------------------------------------------
// Pedersen commitment over G1. Perfectly hiding, binding under discrete
// log, injective in the opening for a fixed message. The verification map
// f(x) = h^x with image I = c * g^{-m} makes openings provable by the
// preimage protocol.
// ---------------------------------------------------------------------

class Pedersen {
  public:
    explicit Pedersen(const Backend& backend);

    Element commit(const Scalar& msg, const Scalar& opening) const;
    bool open(const Element& c, const Scalar& msg, const Scalar& opening) const;
    Element map_f(const mpz_class& x) const;  // h^x
    Element image(const Element& c, const Scalar& msg) const;
    const Element& h() const { return h_; }
    const Backend& backend() const { return b_; }

  private:
    const Backend& b_;
    Element h_;
};

// ---------------------------------------------------------------------
// Paillier. Additively homomorphic mod N, fully decryptable: decryption
// recovers the randomness along with the plaintext (N-th root extraction).
// ---------------------------------------------------------------------

struct PaillierKey {
    mpz_class n;        // modulus
    mpz_class n2;       // n^2
    mpz_class lambda;   // lcm(p-1, q-1), private
    mpz_class mu;       // lambda^{-1} mod n, private
    bool has_private() const { return lambda != 0; }
};

class Paillier {
  public:
    // bits = size of N; toy scale uses 64, production 2048
    static PaillierKey keygen(RandSource& rs, unsigned bits);

    static mpz_class encrypt(const PaillierKey& k, const mpz_class& msg, const mpz_class& rand);
    static mpz_class encrypt(const PaillierKey& k, const mpz_class& msg, RandSource& rs,
                             mpz_class* rand_out = nullptr);
    // returns (plaintext, randomness)
    static std::pair<mpz_class, mpz_class> decrypt_full(const PaillierKey& k, const mpz_class& ct);

    static mpz_class ct_op(const PaillierKey& k, const mpz_class& a, const mpz_class& b);
    static mpz_class ct_pow(const PaillierKey& k, const mpz_class& a, const mpz_class& e);
    static bool ct_valid(const PaillierKey& k, const mpz_class& ct);
};

// message digest into the scalar field
Scalar hash_to_scalar(const Backend& b, BytesView domain_tag, BytesView msg);

}  // namespace osg

#endif
