#include "osg/rng.hpp"

#include <gmp.h>

#include "osg/hash.hpp"

namespace osg {

mpz_class RandSource::unit(const mpz_class& n) {
    while (true) {
        mpz_class v = below(n);
        if (v != 0 && gcd(v, n) == 1) return v;
    }
}

struct Rng::Impl {
    gmp_randstate_t state;
};

Rng::Rng(uint64_t seed) : impl_(std::make_unique<Impl>()), seed_(seed) {
    gmp_randinit_mt(impl_->state);
    gmp_randseed_ui(impl_->state, seed);
}

Rng::~Rng() {
    if (impl_) gmp_randclear(impl_->state);
}

mpz_class Rng::below(const mpz_class& n) {
    if (n <= 0) throw std::runtime_error("range must be positive");
    mpz_class v;
    mpz_urandomm(v.get_mpz_t(), impl_->state, n.get_mpz_t());
    return v;
}

uint64_t Rng::u64() {
    mpz_class v;
    mpz_urandomb(v.get_mpz_t(), impl_->state, 64);
    uint64_t out = 0;
    // low 32 then high 32 to stay within get_ui limits on all platforms
    mpz_class lo = v & mpz_class(0xffffffffu);
    mpz_class hi = v >> 32;
    out = (uint64_t(hi.get_ui()) << 32) | lo.get_ui();
    return out;
}

Bytes Rng::bytes(size_t n) {
    Bytes out(n);
    for (size_t i = 0; i < n; ++i) {
        mpz_class v;
        mpz_urandomb(v.get_mpz_t(), impl_->state, 8);
        out[i] = uint8_t(v.get_ui());
    }
    return out;
}

Rng Rng::fork(uint64_t index) const {
    Writer w;
    w.u64(seed_);
    w.u64(index);
    Bytes d = sha256(BytesView(w.data()));
    uint64_t child = 0;
    for (int i = 0; i < 8; ++i) child = child << 8 | d[i];
    return Rng(child);
}

}  // namespace osg
