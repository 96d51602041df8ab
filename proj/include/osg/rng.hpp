#ifndef OSG_RNG_HPP_
#define OSG_RNG_HPP_

#include <memory>

#include "osg/bytes.hpp"

namespace osg {

// Source of protocol randomness. Provers take this as a parameter so test
// harnesses can substitute enumerated values for distribution checks.
class RandSource {
  public:
    virtual ~RandSource() = default;
    // uniform integer in [0, n), n > 0
    virtual mpz_class below(const mpz_class& n) = 0;
    // uniform unit mod n (gcd(v, n) = 1)
    mpz_class unit(const mpz_class& n);
};

// Deterministic seedable generator (GMP Mersenne Twister). All key
// generation, signing and game trials draw from one of these, so every run
// is reproducible from its seed.
class Rng : public RandSource {
  public:
    explicit Rng(uint64_t seed);
    ~Rng() override;
    Rng(const Rng&) = delete;
    Rng& operator=(const Rng&) = delete;

    mpz_class below(const mpz_class& n) override;
    uint64_t u64();
    Bytes bytes(size_t n);

    // independent child stream (seed, index) for parallel trials
    Rng fork(uint64_t index) const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    uint64_t seed_;
};

// Replays a fixed list of draws; throws when exhausted. Used by the
// exhaustive transcript-distribution tests.
class PresetSource : public RandSource {
  public:
    explicit PresetSource(std::vector<mpz_class> draws) : draws_(std::move(draws)) {}
    mpz_class below(const mpz_class& n) override {
        if (next_ >= draws_.size()) throw std::runtime_error("preset randomness exhausted");
        const mpz_class& d = draws_[next_++];
        if (d < 0 || d >= n) throw std::runtime_error("preset draw out of range");
        return d;
    }
    size_t used() const { return next_; }

  private:
    std::vector<mpz_class> draws_;
    size_t next_ = 0;
};

}  // namespace osg

#endif
