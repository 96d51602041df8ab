#include "osg/groups/backend.hpp"

#include <array>

#include "osg/hash.hpp"

namespace osg {

namespace {

// ---------------------------------------------------------------------
// Toy backend: order-101 subgroup of Z_607^*, generator 64. Small enough
// that discrete logs, decryptions and whole transcript distributions are
// exhaustively checkable.
// ---------------------------------------------------------------------

constexpr uint32_t kToyP = 607;
constexpr uint32_t kToyOrder = 101;
constexpr uint32_t kToyGen = 64;

uint32_t toy_mul(uint32_t a, uint32_t b) { return (a * b) % kToyP; }

uint32_t toy_pow_u(uint32_t base, uint64_t e) {
    uint64_t acc = 1, b = base;
    while (e) {
        if (e & 1) acc = acc * b % kToyP;
        b = b * b % kToyP;
        e >>= 1;
    }
    return uint32_t(acc);
}

struct ToyTables {
    std::array<uint32_t, kToyOrder> power;  // power[i] = g^i
    std::array<int, kToyP> dlog;            // dlog[x] = i or -1
    ToyTables() {
        dlog.fill(-1);
        uint32_t acc = 1;
        for (uint32_t i = 0; i < kToyOrder; ++i) {
            power[i] = acc;
            dlog[acc] = int(i);
            acc = toy_mul(acc, kToyGen);
        }
    }
};

const ToyTables& toy_tables() {
    static const ToyTables t;
    return t;
}

class ToyBackend final : public Backend {
  public:
    BackendKind kind() const override { return BackendKind::Toy; }
    const mpz_class& order() const override {
        static const mpz_class ell(kToyOrder);
        return ell;
    }
    size_t element_size(GroupId) const override { return 2; }
    size_t scalar_size() const override { return 1; }

    Element identity(GroupId) const override { return {uint32_t(1)}; }
    Element generator(GroupId) const override { return {kToyGen}; }

    Element op(GroupId, const Element& a, const Element& b) const override {
        return {toy_mul(get(a), get(b))};
    }
    Element inverse(GroupId, const Element& a) const override {
        return {toy_pow_u(get(a), kToyOrder - 1)};
    }
    Element pow(GroupId, const Element& a, const mpz_class& k) const override {
        mpz_class e = k % kToyOrder;
        if (e < 0) e += kToyOrder;
        return {toy_pow_u(get(a), e.get_ui())};
    }
    bool eq(GroupId, const Element& a, const Element& b) const override {
        return get(a) == get(b);
    }
    Bytes encode(GroupId, const Element& a) const override {
        Writer w;
        w.u16(uint16_t(get(a)));
        return w.take();
    }
    std::optional<Element> decode(GroupId, BytesView b) const override {
        if (b.size() != 2) return std::nullopt;
        uint32_t v = uint32_t(b[0]) << 8 | b[1];
        if (v == 0 || v >= kToyP) return std::nullopt;
        if (toy_tables().dlog[v] < 0) return std::nullopt;  // not in the subgroup
        return Element{v};
    }
    Element hash_to_g1(BytesView msg) const override {
        // hash-then-exponentiate; fine for an oracle backend
        mpz_class e = hash_to_range(str_bytes("osg/toy/h2g"), msg, order());
        return {toy_pow_u(kToyGen, e.get_ui())};
    }
    Element pairing(const Element& a, const Element& b) const override {
        int da = toy_tables().dlog[get(a)];
        int db = toy_tables().dlog[get(b)];
        if (da < 0 || db < 0) throw std::runtime_error("toy pairing input outside subgroup");
        return {toy_tables().power[uint32_t(da) * uint32_t(db) % kToyOrder]};
    }
    std::optional<Element> embed_message(BytesView msg) const override {
        if (msg.size() != 1 || msg[0] >= kToyOrder) return std::nullopt;
        return Element{toy_tables().power[msg[0]]};
    }
    std::optional<Bytes> extract_message(const Element& a) const override {
        int d = toy_tables().dlog[get(a)];
        if (d < 0) return std::nullopt;
        return Bytes{uint8_t(d)};
    }
    size_t embed_capacity() const override { return 1; }

  private:
    static uint32_t get(const Element& e) { return std::get<uint32_t>(e.rep); }
};

// ---------------------------------------------------------------------
// Production backend over the BN curve.
// ---------------------------------------------------------------------

class BnBackend final : public Backend {
  public:
    BackendKind kind() const override { return BackendKind::Production; }
    const mpz_class& order() const override { return bn::params().r; }
    size_t element_size(GroupId g) const override {
        switch (g) {
            case GroupId::G1: return bn::kG1Bytes;
            case GroupId::G2: return bn::kG2Bytes;
            case GroupId::GT: return bn::kGtBytes;
        }
        throw std::logic_error("bad group id");
    }
    size_t scalar_size() const override { return 32; }

    Element identity(GroupId g) const override {
        switch (g) {
            case GroupId::G1: return {bn::g1_identity()};
            case GroupId::G2: return {bn::g2_identity()};
            case GroupId::GT: return {bn::fp12_one()};
        }
        throw std::logic_error("bad group id");
    }
    Element generator(GroupId g) const override {
        switch (g) {
            case GroupId::G1: return {bn::params().g1};
            case GroupId::G2: return {bn::params().g2};
            case GroupId::GT: {
                static const bn::Fp12 gt = bn::pairing(bn::params().g1, bn::params().g2);
                return {gt};
            }
        }
        throw std::logic_error("bad group id");
    }
    Element op(GroupId g, const Element& a, const Element& b) const override {
        switch (g) {
            case GroupId::G1: return {bn::g1_add(g1(a), g1(b))};
            case GroupId::G2: return {bn::g2_add(g2(a), g2(b))};
            case GroupId::GT: return {bn::fp12_mul(gt(a), gt(b))};
        }
        throw std::logic_error("bad group id");
    }
    Element inverse(GroupId g, const Element& a) const override {
        switch (g) {
            case GroupId::G1: return {bn::g1_neg(g1(a))};
            case GroupId::G2: return {bn::g2_neg(g2(a))};
            // GT elements are unitary (order r), so conjugation inverts
            case GroupId::GT: return {bn::fp12_conj(gt(a))};
        }
        throw std::logic_error("bad group id");
    }
    Element pow(GroupId g, const Element& a, const mpz_class& k) const override {
        mpz_class e = k % order();
        if (e < 0) e += order();
        switch (g) {
            case GroupId::G1: return {bn::g1_mul(g1(a), e)};
            case GroupId::G2: return {bn::g2_mul(g2(a), e)};
            case GroupId::GT: return {bn::fp12_pow(gt(a), e)};
        }
        throw std::logic_error("bad group id");
    }
    bool eq(GroupId, const Element& a, const Element& b) const override { return a == b; }
    Bytes encode(GroupId g, const Element& a) const override {
        switch (g) {
            case GroupId::G1: return bn::g1_encode(g1(a));
            case GroupId::G2: return bn::g2_encode(g2(a));
            case GroupId::GT: return bn::fp12_encode(gt(a));
        }
        throw std::logic_error("bad group id");
    }
    std::optional<Element> decode(GroupId g, BytesView b) const override {
        switch (g) {
            case GroupId::G1: {
                auto p = bn::g1_decode(b);
                if (!p) return std::nullopt;
                return Element{*p};
            }
            case GroupId::G2: {
                auto p = bn::g2_decode(b);
                if (!p) return std::nullopt;
                return Element{*p};
            }
            case GroupId::GT: {
                auto p = bn::fp12_decode(b);
                if (!p) return std::nullopt;
                return Element{*p};
            }
        }
        throw std::logic_error("bad group id");
    }
    Element hash_to_g1(BytesView msg) const override { return {bn::hash_to_g1(msg)}; }
    Element pairing(const Element& a, const Element& b) const override {
        return {bn::pairing(g1(a), g2(b))};
    }
    std::optional<Element> embed_message(BytesView msg) const override {
        auto p = bn::embed_message(msg);
        if (!p) return std::nullopt;
        return Element{*p};
    }
    std::optional<Bytes> extract_message(const Element& a) const override {
        return bn::extract_message(g1(a));
    }
    size_t embed_capacity() const override { return bn::kEmbedMaxLen; }

  private:
    static const bn::G1& g1(const Element& e) { return std::get<bn::G1>(e.rep); }
    static const bn::G2& g2(const Element& e) { return std::get<bn::G2>(e.rep); }
    static const bn::Fp12& gt(const Element& e) { return std::get<bn::Fp12>(e.rep); }
};

}  // namespace

const Backend& toy_backend() {
    static const ToyBackend b;
    return b;
}

const Backend& production_backend() {
    static const BnBackend b;
    return b;
}

const Backend& get_backend(BackendKind kind) {
    return kind == BackendKind::Toy ? toy_backend() : production_backend();
}

const char* backend_name(BackendKind kind) {
    return kind == BackendKind::Toy ? "toy" : "production";
}

}  // namespace osg
