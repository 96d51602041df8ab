#ifndef OSG_ANALYSIS_DP_HPP_
#define OSG_ANALYSIS_DP_HPP_

#include "osg/bytes.hpp"
#include "osg/rng.hpp"

namespace osg::analysis {

// Undeniable signature over the toy parameters: an ElGamal signature whose
// core is hidden inside a multiplicatively homomorphic encryption mod t.
// The status oracle answers validity directly from the private key. The
// repaired variant digests the encapsulation alongside the message, which
// is exactly the encapsulation-binding trick of the bound
// sign-then-encrypt scheme.

struct DpPublicKey {
    uint32_t p = 607;   // ambient prime
    uint32_t t = 101;   // signature group order, t | p-1
    uint32_t g;         // order-t element mod p
    uint32_t h;         // g^x mod p
    uint32_t alpha;     // generator of Z_t^*
    uint32_t beta;      // alpha^nu mod t
};

struct DpPrivateKey {
    uint32_t x;   // ElGamal signing key
    uint32_t nu;  // decryption key
};

struct DpKeys {
    DpPublicKey pub;
    DpPrivateKey priv;
};

struct DpSignature {
    uint32_t e1;  // alpha^rho mod t
    uint32_t e2;  // s * beta^rho mod t
    uint32_t r;   // g^b mod p
};

class DpScheme {
  public:
    explicit DpScheme(bool repaired) : repaired_(repaired) {}

    DpKeys keygen(RandSource& rs) const;
    DpSignature sign(const DpKeys& keys, BytesView msg, RandSource& rs) const;
    // 1-bit status oracle, computed from the private key
    bool status(const DpKeys& keys, BytesView msg, const DpSignature& sig) const;
    DpSignature random_signature(const DpPublicKey& pub, RandSource& rs) const;
    // multiply the encryption part by (c1, c2)
    DpSignature maul(const DpSignature& sig, uint32_t c1, uint32_t c2) const;
    bool repaired() const { return repaired_; }

    uint32_t digest(BytesView msg, uint32_t encap) const;

  private:
    bool repaired_;
};

struct DdhInstance {
    uint32_t c1;  // alpha^a
    uint32_t c2;  // candidate beta^a
    bool is_dh;   // generation-side ground truth
};

// sampled against the scheme's public beta; degenerate instances (c1 = 1)
// are excluded so the mauling changes the encapsulation
DdhInstance make_ddh_instance(const DpPublicKey& pub, bool yes, RandSource& rs);

// one signature request plus one status request decide the instance
bool dp_attack(const DpScheme& scheme, const DpKeys& keys, const DdhInstance& inst,
               RandSource& rs);
// the same mauled status query against the repaired scheme; true when the
// oracle answers "invalid"
bool dp_repair_blocks(const DpScheme& repaired, const DpKeys& keys, const DdhInstance& inst,
                      RandSource& rs);

}  // namespace osg::analysis

#endif
