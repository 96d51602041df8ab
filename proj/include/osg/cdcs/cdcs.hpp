#ifndef OSG_CDCS_CDCS_HPP_
#define OSG_CDCS_CDCS_HPP_

#include "osg/sigma/sigma.hpp"

namespace osg::cdcs {

// ---------------------------------------------------------------------
// Sign-then-encrypt family. The signature core is encrypted under the
// confirmer's key as a KEM/DEM pair; the bound variant signs the
// encapsulation alongside the message, the plain variant signs the message
// alone (and is the re-encryption attack target).
// ---------------------------------------------------------------------

struct SteKeys {
    SigKeyPair signer;     // pk in G2
    EncKeyPair confirmer;  // pk in G1
};

struct SteSignature {
    Element encap;  // KEM part
    Element pad;    // DEM ciphertext of the core
    Bytes aux;      // simulatable part; empty for this signature scheme
};

struct SteCoins {
    Scalar kem_rand;  // randomness behind the encapsulation
};

struct SteConverted {
    Element encap;
    Element core;
    Bytes aux;
};

class SteFamily {
  public:
    SteFamily(const Backend& backend, bool bind_encap)
        : b_(backend), sig_(backend), enc_(backend), bind_(bind_encap) {}

    SteKeys keygen(RandSource& rs) const;
    SteSignature sign(const SteKeys& keys, BytesView msg, RandSource& rs,
                      SteCoins* coins = nullptr) const;
    bool verify(const SteKeys& keys, const SteSignature& s, BytesView msg) const;
    bool verify_with_coins(const SteKeys& keys, const SteSignature& s, BytesView msg,
                           const SteCoins& coins) const;

    // confirmation/denial statement (shared by signer and confirmer roles)
    sigma::Statement statement(const SteKeys& keys, const SteSignature& s, BytesView msg,
                               bool deny) const;
    sigma::Witness confirmer_witness(const SteKeys& keys) const;
    sigma::Witness signer_witness(const SteCoins& coins) const;

    std::optional<SteConverted> convert(const SteKeys& keys, const SteSignature& s,
                                        BytesView msg) const;
    bool verify_converted(const SteKeys& keys, const SteConverted& c, BytesView msg) const;

    SteSignature random_signature(RandSource& rs) const;
    // componentwise re-encryption with a fresh encryption of the identity
    SteSignature maul(const Element& confirmer_pk, const SteSignature& s, RandSource& rs) const;

    Bytes encode_signature(const SteSignature& s) const;
    std::optional<SteSignature> decode_signature(BytesView b) const;
    Bytes encode_converted(const SteConverted& c) const;
    std::optional<SteConverted> decode_converted(BytesView b) const;

    Bytes signed_string(const Element& encap, BytesView msg) const;
    bool bound() const { return bind_; }
    const Backend& backend() const { return b_; }

  private:
    const Backend& b_;
    BlsScheme sig_;
    ElGamal enc_;
    bool bind_;
};

// ---------------------------------------------------------------------
// Encrypt-then-sign: the message is embedded into the group, encrypted,
// and the ciphertext is signed. Conversion releases a non-interactive
// proof of correct decryption.
// ---------------------------------------------------------------------

struct EtsSignature {
    ElGamalCt ct;
    SplitSig sig;  // over the ciphertext bytes
};

struct EtsCoins {
    Scalar enc_rand;
};

struct EtsConverted {
    EtsSignature body;
    sigma::SigmaTranscript proof;  // Fiat-Shamir correct-decryption proof
};

class EtsScheme {
  public:
    explicit EtsScheme(const Backend& backend) : b_(backend), sig_(backend), enc_(backend) {}

    SteKeys keygen(RandSource& rs) const;
    std::optional<EtsSignature> sign(const SteKeys& keys, BytesView msg, RandSource& rs,
                                     EtsCoins* coins = nullptr) const;
    bool verify(const SteKeys& keys, const EtsSignature& s, BytesView msg) const;
    bool verify_with_coins(const SteKeys& keys, const EtsSignature& s, BytesView msg,
                           const EtsCoins& coins) const;
    bool sig_layer_valid(const SteKeys& keys, const EtsSignature& s) const;

    sigma::Statement statement(const SteKeys& keys, const EtsSignature& s, BytesView msg,
                               bool deny) const;
    sigma::Witness confirmer_witness(const SteKeys& keys) const;
    sigma::Witness signer_witness(const EtsCoins& coins) const;

    std::optional<EtsConverted> convert(const SteKeys& keys, const EtsSignature& s, BytesView msg,
                                        RandSource& rs) const;
    bool verify_converted(const SteKeys& keys, const EtsConverted& c, BytesView msg) const;

    EtsSignature random_signature(RandSource& rs) const;

    Bytes encode_signature(const EtsSignature& s) const;
    std::optional<EtsSignature> decode_signature(BytesView b) const;
    Bytes encode_converted(const EtsConverted& c) const;
    std::optional<EtsConverted> decode_converted(BytesView b) const;

    const Backend& backend() const { return b_; }

  private:
    const Backend& b_;
    BlsScheme sig_;
    ElGamal enc_;
};

// ---------------------------------------------------------------------
// Commit-then-encrypt-then-sign: commitment to the message, encryption of
// the opening, digital signature over encryption-plus-commitment. The
// classic variant (attack target) signs the commitment alone.
// ---------------------------------------------------------------------

struct CtKeys {
    SigKeyPair signer;
    std::shared_ptr<const PaillierKey> confirmer;
};

struct CtSignature {
    Element commit_value;
    mpz_class opening_ct;  // Paillier ciphertext
    SplitSig sig;
};

struct CtCoins {
    mpz_class opening;
    mpz_class enc_rand;
};

struct CtConverted {
    CtSignature body;
    Scalar opening;
};

class CtetsScheme {
  public:
    explicit CtetsScheme(const Backend& backend)
        : b_(backend), sig_(backend), ped_(backend) {}

    static unsigned paillier_bits(const Backend& b) {
        return b.kind() == BackendKind::Toy ? 64 : 2048;
    }
    CtKeys keygen(RandSource& rs) const;
    CtSignature sign(const CtKeys& keys, BytesView msg, RandSource& rs,
                     CtCoins* coins = nullptr) const;
    bool verify(const CtKeys& keys, const CtSignature& s, BytesView msg) const;
    bool verify_with_coins(const CtKeys& keys, const CtSignature& s, BytesView msg,
                           const CtCoins& coins) const;
    bool sig_layer_valid(const CtKeys& keys, const CtSignature& s) const;

    sigma::Statement statement(const CtKeys& keys, const CtSignature& s, BytesView msg,
                               bool deny) const;
    sigma::Witness confirmer_witness(const CtKeys& keys) const;
    sigma::Witness signer_witness(const CtCoins& coins) const;

    std::optional<CtConverted> convert(const CtKeys& keys, const CtSignature& s,
                                       BytesView msg) const;
    bool verify_converted(const CtKeys& keys, const CtConverted& c, BytesView msg) const;

    CtSignature random_signature(const CtKeys& keys, RandSource& rs) const;
    CtSignature maul(const CtKeys& keys, const CtSignature& s, RandSource& rs) const;

    Bytes encode_signature(const CtKeys& keys, const CtSignature& s) const;
    std::optional<CtSignature> decode_signature(const CtKeys& keys, BytesView b) const;
    Bytes encode_converted(const CtKeys& keys, const CtConverted& c) const;
    std::optional<CtConverted> decode_converted(const CtKeys& keys, BytesView b) const;

    Bytes signed_string(const CtKeys& keys, const CtSignature& s) const;
    const Backend& backend() const { return b_; }
    const Pedersen& pedersen() const { return ped_; }

  private:
    const Backend& b_;
    BlsScheme sig_;
    Pedersen ped_;
};

// classic commit-then-encrypt-and-sign, instantiated only far enough to run
// the homomorphic re-encryption attack against it
class CteasScheme {
  public:
    explicit CteasScheme(const Backend& backend)
        : b_(backend), sig_(backend), ped_(backend) {}

    CtKeys keygen(RandSource& rs) const;
    CtSignature sign(const CtKeys& keys, BytesView msg, RandSource& rs) const;
    bool verify(const CtKeys& keys, const CtSignature& s, BytesView msg) const;
    std::optional<Bytes> convert(const CtKeys& keys, const CtSignature& s, BytesView msg) const;
    CtSignature maul(const CtKeys& keys, const CtSignature& s, RandSource& rs) const;
    Bytes encode_signature(const CtKeys& keys, const CtSignature& s) const;
    std::optional<CtSignature> decode_signature(const CtKeys& keys, BytesView b) const;

    const Backend& backend() const { return b_; }

  private:
    mpz_class pack_plain(const mpz_class& opening, BytesView msg, const Element& signer_pk) const;
    const Backend& b_;
    BlsScheme sig_;
    Pedersen ped_;
};

}  // namespace osg::cdcs

#endif
