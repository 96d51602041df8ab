#ifndef OSG_GROUPS_BACKEND_HPP_
#define OSG_GROUPS_BACKEND_HPP_

#include <variant>

#include "osg/bytes.hpp"
#include "osg/groups/bn254.hpp"
#include "osg/rng.hpp"

namespace osg {

enum class BackendKind : uint8_t { Toy = 0, Production = 1 };
enum class GroupId : uint8_t { G1 = 0, G2 = 1, GT = 2 };

// Field element of Z_ell, reduced representative.
struct Scalar {
    mpz_class v;
    bool operator==(const Scalar&) const = default;
};

// Opaque group element; which alternative is live depends on the backend
// and the group id. Elements are immutable values.
struct Element {
    std::variant<uint32_t, bn::G1, bn::G2, bn::Fp12> rep;
    bool operator==(const Element&) const = default;
};

// Prime-order group triple (G1, G2, GT) with a pairing G1 x G2 -> GT.
// The toy backend collapses all three onto the order-101 subgroup of
// Z_607^* and computes the pairing by brute-force discrete log; it serves
// as the correctness oracle for the production curve backend.
class Backend {
  public:
    virtual ~Backend() = default;
    virtual BackendKind kind() const = 0;
    virtual const mpz_class& order() const = 0;
    virtual size_t element_size(GroupId g) const = 0;
    virtual size_t scalar_size() const = 0;

    virtual Element identity(GroupId g) const = 0;
    virtual Element generator(GroupId g) const = 0;
    virtual Element op(GroupId g, const Element& a, const Element& b) const = 0;
    virtual Element inverse(GroupId g, const Element& a) const = 0;
    virtual Element pow(GroupId g, const Element& a, const mpz_class& k) const = 0;
    virtual bool eq(GroupId g, const Element& a, const Element& b) const = 0;
    virtual Bytes encode(GroupId g, const Element& a) const = 0;
    virtual std::optional<Element> decode(GroupId g, BytesView b) const = 0;

    virtual Element hash_to_g1(BytesView msg) const = 0;
    virtual Element pairing(const Element& a, const Element& b) const = 0;

    // reversible message-to-G1 codec for the encryption-side schemes
    virtual std::optional<Element> embed_message(BytesView msg) const = 0;
    virtual std::optional<Bytes> extract_message(const Element& a) const = 0;
    virtual size_t embed_capacity() const = 0;

    bool is_identity(GroupId g, const Element& a) const { return eq(g, a, identity(g)); }
    Element pow(GroupId g, const Element& a, const Scalar& k) const { return pow(g, a, k.v); }

    // --- scalar field helpers ---
    Scalar scalar(const mpz_class& v) const {
        mpz_class r = v % order();
        if (r < 0) r += order();
        return {r};
    }
    Scalar sc_add(const Scalar& a, const Scalar& b) const { return scalar(a.v + b.v); }
    Scalar sc_sub(const Scalar& a, const Scalar& b) const { return scalar(a.v - b.v); }
    Scalar sc_mul(const Scalar& a, const Scalar& b) const { return scalar(a.v * b.v); }
    Scalar sc_neg(const Scalar& a) const { return scalar(-a.v); }
    Scalar sc_inv(const Scalar& a) const {
        if (a.v == 0) throw std::runtime_error("scalar has no inverse");
        mpz_class out;
        mpz_invert(out.get_mpz_t(), a.v.get_mpz_t(), order().get_mpz_t());
        return {out};
    }
    Scalar random_scalar(RandSource& rs) const { return {rs.below(order())}; }
    Scalar random_nonzero_scalar(RandSource& rs) const {
        while (true) {
            Scalar s = random_scalar(rs);
            if (s.v != 0) return s;
        }
    }
    // uniform over the (cyclic, prime order) group
    Element random_element(GroupId g, RandSource& rs) const {
        return pow(g, generator(g), rs.below(order()));
    }
    Bytes scalar_encode(const Scalar& s) const { return mpz_to_fixed(s.v, scalar_size()); }
    std::optional<Scalar> scalar_decode(BytesView b) const {
        if (b.size() != scalar_size()) return std::nullopt;
        mpz_class v = mpz_from_bytes(b);
        if (v >= order()) return std::nullopt;
        return Scalar{v};
    }
};

const Backend& toy_backend();
const Backend& production_backend();
const Backend& get_backend(BackendKind kind);
const char* backend_name(BackendKind kind);

}  // namespace osg

#endif
