#ifndef OSG_ANALYSIS_GAMES_HPP_
#define OSG_ANALYSIS_GAMES_HPP_

#include <functional>
#include <memory>
#include <string>

#include "osg/analysis/dp.hpp"
#include "osg/cdcs/cdcs.hpp"
#include "osg/signcrypt/signcrypt.hpp"

namespace osg::analysis {

enum class SchemeId : uint8_t {
    NewSte = 0,
    PlainSte = 1,
    Ets = 2,
    Ctets = 3,
    Cteas = 4,
    EtSte = 5,
    Dp = 6,
    DpRepaired = 7,
};

const char* scheme_name(SchemeId id);
std::optional<SchemeId> scheme_from_name(const std::string& s);

enum class ExperimentId : uint8_t {
    Completeness = 0,
    EufCma = 1,
    InvCma = 2,
    SinvCma = 3,
    SindCca = 4,
    NonTransferability = 5,
};

const char* experiment_name(ExperimentId id);
std::optional<ExperimentId> experiment_from_name(const std::string& s);

struct WilsonInterval {
    double lo, hi;
    bool contains(double p) const { return p >= lo && p <= hi; }
};
WilsonInterval wilson95(int wins, int trials);

struct GameReport {
    std::string scheme;
    std::string experiment;
    int trials = 0;
    int wins = 0;
    int disqualified = 0;
    bool distinguishing = false;  // advantage = |rate - 1/2| when set
    double rate() const { return trials ? double(wins) / trials : 0.0; }
    double advantage() const { return distinguishing ? std::abs(rate() - 0.5) : rate(); }
    WilsonInterval interval() const { return wilson95(wins, trials); }
    std::string to_line() const;
    std::string to_json() const;
};

// ---------------------------------------------------------------------
// Uniform oracle surface over the CDCS schemes. Signatures and converted
// forms travel as opaque bytes, which is also how the harness enforces
// the post-challenge query restrictions.
// ---------------------------------------------------------------------

class CdcsAdapter {
  public:
    virtual ~CdcsAdapter() = default;
    virtual SchemeId id() const = 0;
    virtual const Backend& backend() const = 0;
    virtual void keygen(Rng& rng) = 0;
    virtual Bytes sample_message(Rng& rng) const = 0;
    virtual Bytes sign(BytesView msg, Rng& rng) = 0;  // retains coins of this signature
    virtual bool verify(BytesView sig, BytesView msg) const = 0;
    virtual bool verify_with_coins(BytesView sig, BytesView msg) const = 0;
    virtual bool sconfirm(BytesView sig, BytesView msg, Rng& rng) const = 0;
    virtual bool confirm(BytesView sig, BytesView msg, Rng& rng) const = 0;
    virtual bool deny(BytesView sig, BytesView msg, Rng& rng) const = 0;
    virtual std::optional<Bytes> convert(BytesView sig, BytesView msg, Rng& rng) const = 0;
    virtual bool verify_converted(BytesView conv, BytesView msg) const = 0;
    virtual Bytes random_signature(Rng& rng) const = 0;
    // homomorphic re-encryption; nullopt when the scheme blocks it outright
    virtual std::optional<Bytes> maul(BytesView sig, Rng& rng) const = 0;
};

std::unique_ptr<CdcsAdapter> make_cdcs_adapter(SchemeId id, BackendKind backend);

// ---------------------------------------------------------------------
// Experiments.
// ---------------------------------------------------------------------

// oracle bundle handed to invisibility adversaries; restricted queries
// throw Disqualified
struct Disqualified : std::runtime_error {
    Disqualified() : std::runtime_error("restricted query") {}
};

struct InvOracles {
    std::function<Bytes(BytesView)> sign;
    std::function<std::optional<Bytes>(BytesView sig, BytesView msg)> convert;
    std::function<bool(BytesView sig, BytesView msg)> verify_protocols;  // confirm/deny outcome
    // the adversary's own public re-encryption computation (no secret input)
    std::function<std::optional<Bytes>(BytesView sig, Rng& rng)> maul;
};

// the adversary sees the challenge signature and both candidate messages
// and outputs a guess for the hidden bit
using InvAdversary = std::function<int(const InvOracles&, BytesView challenge_sig, BytesView m0,
                                       BytesView m1, Rng& rng)>;

InvAdversary fact1_adversary();
InvAdversary guessing_adversary();

GameReport run_completeness(CdcsAdapter& a, int trials, uint64_t seed);
GameReport run_inv_cma(CdcsAdapter& a, const InvAdversary& adv, int trials, uint64_t seed);
GameReport run_sinv_cma(CdcsAdapter& a, const InvAdversary& adv, int trials, uint64_t seed);
GameReport run_euf_cma_smoke(CdcsAdapter& a, int attempts, uint64_t seed);

// signcryption games
GameReport run_signcrypt_completeness(BackendKind backend, int trials, uint64_t seed);
GameReport run_sind_cca(BackendKind backend, const InvAdversary& adv, int trials, uint64_t seed);
GameReport run_signcrypt_euf_smoke(BackendKind backend, int attempts, uint64_t seed);

// undeniable-signature games
GameReport run_dp_completeness(bool repaired, int trials, uint64_t seed);
GameReport run_dp_attack(bool repaired, int instances, uint64_t seed);

// toy-backend exhaustive non-transferability: total-variation distance
// between honest and simulated transcript multisets at fixed challenges;
// wins = number of (challenge, inner challenge) pairs with exact equality
GameReport run_non_transferability(SchemeId id, uint64_t seed);

// one-call dispatcher used by the command-line front end
GameReport run_experiment(SchemeId scheme, ExperimentId exp, BackendKind backend, int trials,
                          uint64_t seed);

// Lemma commitEncrypt game at toy scale: the adversary guesses which
// message a commitment hides given an encryption of one of two openings
GameReport run_commit_encrypt_game(int trials, uint64_t seed);

}  // namespace osg::analysis

#endif
