#include "osg/analysis/dp.hpp"

#include "osg/hash.hpp"

namespace osg::analysis {

namespace {

uint32_t modexp32(uint32_t base, uint32_t e, uint32_t m) {
    uint64_t acc = 1, b = base % m;
    while (e) {
        if (e & 1) acc = acc * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return uint32_t(acc);
}

uint32_t inv_mod(uint32_t a, uint32_t m) { return modexp32(a % m, m - 2, m); }  // m prime

constexpr uint32_t kP = 607;
constexpr uint32_t kT = 101;
constexpr uint32_t kG = 64;     // order t mod p
constexpr uint32_t kAlpha = 2;  // generates Z_101^*

uint32_t draw32(RandSource& rs, uint32_t lo, uint32_t hi) {
    return lo + uint32_t(rs.below(mpz_class(hi - lo)).get_ui());
}

}  // namespace

uint32_t DpScheme::digest(BytesView msg, uint32_t encap) const {
    Writer w;
    w.raw(msg);
    if (repaired_) w.u16(uint16_t(encap));
    return uint32_t(hash_to_range(str_bytes("osg/dp/h"), w.data(), mpz_class(kT)).get_ui());
}

DpKeys DpScheme::keygen(RandSource& rs) const {
    DpKeys k;
    k.pub.g = kG;
    k.pub.alpha = kAlpha;
    k.priv.x = draw32(rs, 1, kT);
    k.pub.h = modexp32(kG, k.priv.x, kP);
    k.priv.nu = draw32(rs, 0, kT - 1);  // exponent mod ord(alpha) = t - 1
    k.pub.beta = modexp32(kAlpha, k.priv.nu, kT);
    return k;
}

DpSignature DpScheme::sign(const DpKeys& keys, BytesView msg, RandSource& rs) const {
    while (true) {
        uint32_t rho = draw32(rs, 0, kT - 1);
        uint32_t e1 = modexp32(kAlpha, rho, kT);
        uint32_t hm = digest(msg, e1);
        uint32_t b = draw32(rs, 1, kT);
        uint32_t r = modexp32(keys.pub.g, b, kP);
        // h(m) = r*x + b*s mod t
        uint32_t rx = uint32_t(uint64_t(r % kT) * keys.priv.x % kT);
        uint32_t s = uint32_t(uint64_t((hm + kT - rx) % kT) * inv_mod(b, kT) % kT);
        if (s == 0) continue;  // core must live in Z_t^*
        uint32_t e2 = uint32_t(uint64_t(s) * modexp32(keys.pub.beta, rho, kT) % kT);
        return {e1, e2, r};
    }
}

bool DpScheme::status(const DpKeys& keys, BytesView msg, const DpSignature& sig) const {
    if (sig.e1 == 0 || sig.e1 >= kT || sig.e2 == 0 || sig.e2 >= kT) return false;
    if (sig.r == 0 || sig.r >= kP) return false;
    // decrypt the core: s = e2 * e1^{-nu} mod t
    uint32_t mask = modexp32(sig.e1, keys.priv.nu, kT);
    uint32_t s = uint32_t(uint64_t(sig.e2) * inv_mod(mask, kT) % kT);
    if (s == 0) return false;
    uint32_t hm = digest(msg, sig.e1);
    // g^{h(m)} = h^r * r^s mod p
    uint32_t lhs = modexp32(kG, hm, kP);
    uint32_t rhs = uint32_t(uint64_t(modexp32(keys.pub.h, sig.r, kP)) *
                            modexp32(sig.r, s, kP) % kP);
    return lhs == rhs;
}

DpSignature DpScheme::random_signature(const DpPublicKey& pub, RandSource& rs) const {
    DpSignature sig;
    sig.e1 = draw32(rs, 1, kT);
    sig.e2 = draw32(rs, 1, kT);
    sig.r = modexp32(pub.g, draw32(rs, 1, kT), kP);
    return sig;
}

DpSignature DpScheme::maul(const DpSignature& sig, uint32_t c1, uint32_t c2) const {
    DpSignature out = sig;
    out.e1 = uint32_t(uint64_t(sig.e1) * c1 % kT);
    out.e2 = uint32_t(uint64_t(sig.e2) * c2 % kT);
    return out;
}

DdhInstance make_ddh_instance(const DpPublicKey& pub, bool yes, RandSource& rs) {
    while (true) {
        uint32_t a = draw32(rs, 1, kT - 1);  // nonzero exponent: c1 != 1
        uint32_t c1 = modexp32(pub.alpha, a, kT);
        uint32_t dh = modexp32(pub.beta, a, kT);
        if (yes) return {c1, dh, true};
        uint32_t c2 = draw32(rs, 1, kT);
        if (c2 == dh) continue;
        return {c1, c2, false};
    }
}

bool dp_attack(const DpScheme& scheme, const DpKeys& keys, const DdhInstance& inst,
               RandSource& rs) {
    Bytes msg = str_bytes("ddh probe");
    DpSignature sig = scheme.sign(keys, msg, rs);
    if (scheme.repaired()) {
        // the digest is public, so the attacker discards signatures whose
        // mauled encapsulation collides in the toy-width digest
        for (int tries = 0; tries < 64; ++tries) {
            uint32_t mauled_e1 = uint32_t(uint64_t(sig.e1) * inst.c1 % kT);
            if (scheme.digest(msg, mauled_e1) != scheme.digest(msg, sig.e1)) break;
            sig = scheme.sign(keys, msg, rs);
        }
    }
    DpSignature mauled = scheme.maul(sig, inst.c1, inst.c2);
    return scheme.status(keys, msg, mauled);
}

bool dp_repair_blocks(const DpScheme& repaired, const DpKeys& keys, const DdhInstance& inst,
                      RandSource& rs) {
    return !dp_attack(repaired, keys, inst, rs);
}

}  // namespace osg::analysis
