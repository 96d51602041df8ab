#ifndef OSG_GROUPS_BN254_HPP_
#define OSG_GROUPS_BN254_HPP_

#include <array>
#include <optional>

#include "osg/bytes.hpp"

// Pairing-friendly curve arithmetic for the production backend (BN family,
// 254-bit prime, G1 cofactor 1). Field arithmetic delegates to GMP; this
// layer only supplies the tower and curve formulas.
namespace osg::bn {

struct Fp {
    // Montgomery form, four 64-bit limbs, little-endian; canonical (< p)
    std::array<uint64_t, 4> limb{};
    bool operator==(const Fp&) const = default;
};

struct Fp2 {
    Fp c0, c1;  // c0 + c1*u, u^2 = -1
    bool operator==(const Fp2&) const = default;
};

struct Fp6 {
    Fp2 c0, c1, c2;  // c0 + c1*v + c2*v^2, v^3 = xi = 9 + u
    bool operator==(const Fp6&) const = default;
};

struct Fp12 {
    Fp6 c0, c1;  // c0 + c1*w, w^2 = v
    bool operator==(const Fp12&) const = default;
};

struct G1 {
    Fp x, y;
    bool inf = true;
    bool operator==(const G1&) const = default;
};

struct G2 {
    Fp2 x, y;
    bool inf = true;
    bool operator==(const G2&) const = default;
};

struct Params {
    mpz_class p;        // base field prime
    mpz_class r;        // group order (G1 is exactly this size: cofactor 1)
    mpz_class ate_loop; // 6z + 2
    G1 g1;
    G2 g2;
    Fp2 xi;             // sextic non-residue 9 + u
    Fp2 twist_b;        // 3 / xi
    Fp2 frob_gamma[5];  // xi^{k(p-1)/6}, k = 1..5
    mpz_class sqrt_exp; // (p+1)/4
    mpz_class final_exp_hard;  // (p^4 - p^2 + 1) / r
    mpz_class bn_z;     // curve parameter
};

const Params& params();

// --- base field ---
Fp fp_add(const Fp& a, const Fp& b);
Fp fp_sub(const Fp& a, const Fp& b);
Fp fp_mul(const Fp& a, const Fp& b);
Fp fp_neg(const Fp& a);
Fp fp_inv(const Fp& a);
Fp fp_from(long v);
Fp fp_from_mpz(const mpz_class& v);
mpz_class fp_to_mpz(const Fp& a);
bool fp_is_zero(const Fp& a);
std::optional<Fp> fp_sqrt(const Fp& a);

// --- quadratic extension ---
Fp2 fp2_add(const Fp2& a, const Fp2& b);
Fp2 fp2_sub(const Fp2& a, const Fp2& b);
Fp2 fp2_mul(const Fp2& a, const Fp2& b);
Fp2 fp2_sqr(const Fp2& a);
Fp2 fp2_neg(const Fp2& a);
Fp2 fp2_conj(const Fp2& a);
Fp2 fp2_inv(const Fp2& a);
Fp2 fp2_mul_fp(const Fp2& a, const Fp& s);
Fp2 fp2_pow(const Fp2& a, const mpz_class& e);
bool fp2_is_zero(const Fp2& a);
std::optional<Fp2> fp2_sqrt(const Fp2& a);

// --- degree-12 tower ---
Fp12 fp12_one();
bool fp12_is_one(const Fp12& a);
Fp12 fp12_mul(const Fp12& a, const Fp12& b);
Fp12 fp12_sqr(const Fp12& a);
Fp12 fp12_conj(const Fp12& a);
Fp12 fp12_inv(const Fp12& a);
Fp12 fp12_frobenius(const Fp12& a);
Fp12 fp12_pow(const Fp12& a, const mpz_class& e);

// --- curve groups ---
G1 g1_identity();
G1 g1_neg(const G1& a);
G1 g1_add(const G1& a, const G1& b);
G1 g1_mul(const G1& a, const mpz_class& k);
bool g1_on_curve(const G1& a);

G2 g2_identity();
G2 g2_neg(const G2& a);
G2 g2_add(const G2& a, const G2& b);
G2 g2_mul(const G2& a, const mpz_class& k);
bool g2_on_curve(const G2& a);

// optimal ate pairing, output in the order-r subgroup of Fp12
Fp12 pairing(const G1& p, const G2& q);
// independent slow route (generic Miller loop over E(Fp12), plain
// exponent final power); test oracle for `pairing`
Fp12 pairing_slow(const G1& p, const G2& q);

// --- encodings (compressed, fixed width) ---
constexpr size_t kG1Bytes = 32;
constexpr size_t kG2Bytes = 64;
constexpr size_t kGtBytes = 384;

Bytes g1_encode(const G1& a);
std::optional<G1> g1_decode(BytesView b);
Bytes g2_encode(const G2& a);
std::optional<G2> g2_decode(BytesView b);
Bytes fp12_encode(const Fp12& a);
std::optional<Fp12> fp12_decode(BytesView b);

// deterministic hash to G1 (hash-then-check x candidates, pick y by a
// hash-derived parity bit); cofactor is 1 so the result is in the group
G1 hash_to_g1(BytesView msg);
// try-and-increment message embedding: counter byte + length byte + payload
// packed into x; reversible from the point
std::optional<G1> embed_message(BytesView msg);
std::optional<Bytes> extract_message(const G1& a);
constexpr size_t kEmbedMaxLen = 29;

}  // namespace osg::bn

#endif
