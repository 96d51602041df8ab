#ifndef OSG_SIGNCRYPT_SIGNCRYPT_HPP_
#define OSG_SIGNCRYPT_SIGNCRYPT_HPP_

#include "osg/sigma/sigma.hpp"

namespace osg::signcrypt {

// Encrypt-then-sign-then-encrypt. The message is encrypted under the
// receiver's first key, the signature core over encapsulation-plus-
// ciphertext is hidden under the second (KEM) key. The tuple is
// (msg_ct, encap, pad, aux).

struct ReceiverKeys {
    EncKeyPair msg_enc;  // decrypts the message layer
    EncKeyPair kem;      // decapsulates the signature layer
};

struct Signcryption {
    ElGamalCt msg_ct;
    Element encap;
    Element pad;
    Bytes aux;
};

struct SigncryptCoins {
    Scalar msg_rand;
    Scalar kem_rand;
};

struct Extraction {
    sigma::SigmaTranscript proof;  // non-interactive correct-decryption proof
    Element core;
    Bytes aux;
};

class EtSteScheme {
  public:
    explicit EtSteScheme(const Backend& backend) : b_(backend), sig_(backend), enc_(backend) {}

    SigKeyPair keygen_sender(RandSource& rs) const { return sig_.keygen(rs); }
    ReceiverKeys keygen_receiver(RandSource& rs) const {
        // two independent key pairs over shared group parameters
        return {enc_.keygen(rs), enc_.keygen(rs)};
    }

    std::optional<Signcryption> signcrypt(const SigKeyPair& sender, const ReceiverKeys& recv,
                                          BytesView msg, RandSource& rs,
                                          SigncryptCoins* coins = nullptr) const;
    std::optional<Bytes> unsigncrypt(const SigKeyPair& sender, const ReceiverKeys& recv,
                                     const Signcryption& sc) const;

    // statements
    sigma::Statement validity_statement(const Element& sender_pk, const ReceiverKeys& recv,
                                        const Signcryption& sc) const;
    sigma::Statement confirm_statement(const Element& sender_pk, const ReceiverKeys& recv,
                                       const Signcryption& sc, BytesView msg, bool deny) const;

    sigma::Witness sender_validity_witness(const SigncryptCoins& coins) const;
    sigma::Witness receiver_validity_witness(const ReceiverKeys& recv) const;
    sigma::Witness receiver_confirm_witness(const ReceiverKeys& recv) const;

    std::optional<Extraction> sig_extract(const SigKeyPair& sender, const ReceiverKeys& recv,
                                          const Signcryption& sc, BytesView msg,
                                          RandSource& rs) const;
    bool sig_verify(const Element& sender_pk, const ReceiverKeys& recv, const Signcryption& sc,
                    BytesView msg, const Extraction& ex) const;

    Signcryption random_signcryption(RandSource& rs) const;
    // re-randomize the message layer (needs the receiver public key)
    Signcryption maul_msg_layer(const ReceiverKeys& recv, const Signcryption& sc,
                                RandSource& rs) const;
    // multiply the signature pad by a random element
    Signcryption maul_pad(const Signcryption& sc, RandSource& rs) const;

    Bytes encode(const Signcryption& sc) const;
    std::optional<Signcryption> decode(BytesView b) const;
    Bytes encode_extraction(const Extraction& ex) const;
    std::optional<Extraction> decode_extraction(BytesView b) const;

    Bytes signed_string(const Signcryption& sc) const;
    const Backend& backend() const { return b_; }

  private:
    const Backend& b_;
    BlsScheme sig_;
    ElGamal enc_;
};

}  // namespace osg::signcrypt

#endif
