#ifndef OSG_SIGMA_SIGMA_HPP_
#define OSG_SIGMA_SIGMA_HPP_

#include <functional>
#include <memory>

#include "osg/primitives/primitives.hpp"

namespace osg::sigma {

// ---------------------------------------------------------------------
// Carriers: the abelian groups protocol values live in. Witness domains
// are either a backend group, the scalar field under addition, or the
// unit group mod a Paillier modulus.
// ---------------------------------------------------------------------

enum class CarrierKind : uint8_t { Group = 0, ScalarAdd = 1, UnitsMod = 2 };

struct Value {
    std::variant<Element, mpz_class> rep;
    bool operator==(const Value&) const = default;
};

struct Carrier {
    CarrierKind kind;
    const Backend* backend = nullptr;
    GroupId gid = GroupId::G1;
    mpz_class modulus;  // UnitsMod only

    Value identity() const;
    Value op(const Value& a, const Value& b) const;
    Value inverse(const Value& a) const;
    Value pow(const Value& a, const mpz_class& e) const;  // e may be negative
    bool eq(const Value& a, const Value& b) const;
    Value random(RandSource& rs) const;
    Bytes encode(const Value& a) const;
    std::optional<Value> decode(BytesView b) const;
    size_t value_size() const;
    // order used by the knowledge extractor: group order, or the public
    // exponent for unit groups (where f is the power map)
    static Carrier group(const Backend& b, GroupId g);
    static Carrier scalar_add(const Backend& b);
    static Carrier units(const mpz_class& modulus);
};

// ---------------------------------------------------------------------
// Registered homomorphic maps.
// ---------------------------------------------------------------------

enum class HomKind : uint8_t {
    PairG2 = 0,    // G1 -> GT, x -> e(x, g2); the signature verification map
    ExpBases = 1,  // (Z_ell,+) -> G1^k, x -> (b1^x, ..., bk^x)
    IdG1 = 2,      // G1 -> G1 identity; the "arbitrary homomorphic map" of
                   // the encrypt-then-sign denial
    PowN = 3,      // Z_{N^2}^* -> Z_{N^2}^*, x -> x^N; Paillier randomness
};

struct HomMap {
    HomKind kind;
    const Backend* backend = nullptr;
    std::vector<Element> bases;  // ExpBases
    mpz_class modulus;           // PowN: N^2
    mpz_class exponent;          // PowN: N

    Carrier domain() const;
    std::vector<Carrier> codomain() const;
    std::vector<Value> eval(const Value& x) const;
    // (order, unit) pair for the extractor: f(unit) = I^order
    mpz_class extract_order() const;
    Value extract_unit(const std::vector<Value>& image) const;

    static HomMap pair_g2(const Backend& b);
    static HomMap exp_bases(const Backend& b, std::vector<Element> bases);
    static HomMap id_g1(const Backend& b);
    static HomMap pow_n(const mpz_class& n);
};

// ---------------------------------------------------------------------
// Statements.
// ---------------------------------------------------------------------

enum class StmtKind : uint8_t {
    HomPreimage = 1,
    CorrectDecryption = 2,
    DecryptionKnowledge = 3,
    SigEncValidity = 4,
    CommitEncOpening = 5,
    PlaintextInequality = 6,
    Conjunction = 7,
    Disjunction = 8,
};

// knowledge of s with f(s) = I
struct HomPreimageStmt {
    HomMap f;
    std::vector<Value> image;
};

// claimed = decrypt(ct); provable with the key or the encryption randomness
struct CorrectDecryptionStmt {
    const Backend* backend;
    Element enc_pk;
    ElGamalCt ct;
    Element claimed;
};

// knowledge of the decryption of ct, without revealing it
struct DecryptionKnowledgeStmt {
    const Backend* backend;
    Element enc_pk;
    ElGamalCt ct;
};

// knowledge of s = decrypt(ct) whose signature image satisfies
// f(s) = I (confirm) or f(s) != I (deny), I derived from the signed string
struct SigEncValidityStmt {
    const Backend* backend;
    Element enc_pk;
    ElGamalCt ct;
    Element sig_pk;  // G2
    Bytes signed_msg;
    Bytes aux;  // simulatable signature part; empty for the pairing scheme
    bool deny = false;
};

// knowledge of the committed opening r = decrypt(e) with
// commit(msg, r) = c (confirm) or != c (deny); response is an integer
struct CommitEncOpeningStmt {
    const Backend* backend;
    mpz_class paillier_n;
    mpz_class ct;  // Paillier ciphertext of the opening
    Element commitment;
    Scalar msg;
    bool deny = false;

    mpz_class n2() const { return paillier_n * paillier_n; }
    mpz_class slack() const;           // statistical blinding factor
    mpz_class response_bound(const mpz_class& cbound) const;
    size_t response_width(const mpz_class& cbound) const;
};

// decrypt(ct) != claimed, via the identity homomorphism
struct PlaintextInequalityStmt {
    const Backend* backend;
    Element enc_pk;
    ElGamalCt ct;
    Element claimed;
};

struct Statement;

struct Statement {
    StmtKind kind;
    std::variant<std::monostate, HomPreimageStmt, CorrectDecryptionStmt, DecryptionKnowledgeStmt,
                 SigEncValidityStmt, CommitEncOpeningStmt, PlaintextInequalityStmt>
        leaf;
    std::vector<Statement> children;  // conjunction / disjunction

    static Statement make(HomPreimageStmt s);
    static Statement make(CorrectDecryptionStmt s);
    static Statement make(DecryptionKnowledgeStmt s);
    static Statement make(SigEncValidityStmt s);
    static Statement make(CommitEncOpeningStmt s);
    static Statement make(PlaintextInequalityStmt s);
    static Statement conjunction(std::vector<Statement> branches);
    static Statement disjunction(Statement a, Statement b);

    bool is_leaf() const { return kind != StmtKind::Conjunction && kind != StmtKind::Disjunction; }
    // lowest admissible challenge: inequality statements exclude the
    // vacuous zero challenge (both sides coincide there for any prover)
    mpz_class challenge_min() const;
    const Backend& backend() const;
};

Bytes encode_statement(const Statement& s);
std::optional<Statement> decode_statement(BytesView b);

// ---------------------------------------------------------------------
// Witnesses.
// ---------------------------------------------------------------------

enum class WitnessRoute : uint8_t { Preimage = 0, DecKey = 1, EncRandomness = 2 };

struct LeafWitness {
    WitnessRoute route = WitnessRoute::Preimage;
    Value preimage;                                    // HomPreimage
    Scalar scalar;                                     // sk or encryption randomness
    mpz_class opening;                                 // CommitEncOpening: r
    mpz_class paillier_rand;                           // CommitEncOpening: rho_e
    std::shared_ptr<const PaillierKey> paillier_priv;  // CommitEncOpening key route

    static LeafWitness hom(Value v) {
        LeafWitness w;
        w.preimage = std::move(v);
        return w;
    }
    static LeafWitness dec_key(Scalar sk) {
        LeafWitness w;
        w.route = WitnessRoute::DecKey;
        w.scalar = std::move(sk);
        return w;
    }
    static LeafWitness enc_randomness(Scalar a) {
        LeafWitness w;
        w.route = WitnessRoute::EncRandomness;
        w.scalar = std::move(a);
        return w;
    }
    static LeafWitness commit_opening(mpz_class r, mpz_class rho) {
        LeafWitness w;
        w.opening = std::move(r);
        w.paillier_rand = std::move(rho);
        return w;
    }
    static LeafWitness paillier_key(std::shared_ptr<const PaillierKey> k) {
        LeafWitness w;
        w.route = WitnessRoute::DecKey;
        w.paillier_priv = std::move(k);
        return w;
    }
};

struct Witness {
    // aligned with conjunction branches; disjunctions set exactly one part
    std::vector<std::optional<LeafWitness>> parts;
    static Witness single(LeafWitness w) { return {{std::move(w)}}; }
    static Witness branch(size_t index, size_t total, LeafWitness w) {
        Witness out;
        out.parts.resize(total);
        out.parts[index] = std::move(w);
        return out;
    }
};

// relation predicate; provers refuse to run on false statements
bool relation_holds(const Statement& stmt, const Witness& wit);

// ---------------------------------------------------------------------
// Challenge space C = [min, bound); min is taken from the statement.
// ---------------------------------------------------------------------

struct ChallengeSpace {
    mpz_class bound;
    explicit ChallengeSpace(mpz_class b) : bound(std::move(b)) {
        if (bound < 2) throw std::runtime_error("challenge space too small");
    }
    static ChallengeSpace binary() { return ChallengeSpace(mpz_class(2)); }
    // soundness-amplified default for a backend (capped below the group order)
    static ChallengeSpace amplified(const Backend& b);
    mpz_class draw(const Statement& stmt, RandSource& rs) const {
        mpz_class lo = stmt.challenge_min();
        return lo + rs.below(bound - lo);
    }
    bool contains(const Statement& stmt, const mpz_class& b) const {
        return b >= stmt.challenge_min() && b < bound;
    }
};

// ---------------------------------------------------------------------
// Transcripts.
// ---------------------------------------------------------------------

struct Transcript {
    Bytes commitment;
    mpz_class challenge;
    Bytes response;
    std::vector<Transcript> children;  // inner proof or composite branches
    bool operator==(const Transcript&) const = default;
};

// full wire form: statement tag and bytes, challenge bound, then the node tree
struct SigmaTranscript {
    Bytes statement;  // canonical statement bytes
    mpz_class cbound;
    Transcript root;
    bool operator==(const SigmaTranscript&) const = default;
};

Bytes encode_transcript(const SigmaTranscript& t);
std::optional<SigmaTranscript> decode_transcript(BytesView b);

// ---------------------------------------------------------------------
// Protocol engine.
// ---------------------------------------------------------------------

// challenge supplier: depth 0 = outer challenge over the commitment bytes,
// depth 1 = inner challenge for one branch (context = branch commitment)
using ChallengeFn = std::function<mpz_class(int depth, BytesView context)>;

// `validate` re-checks the witness relation before running; enumeration
// harnesses that replay one statement millions of times turn it off after
// a first validated call
SigmaTranscript prove(const Statement& stmt, const Witness& wit, const ChallengeSpace& cs,
                      RandSource& rs, const ChallengeFn& challenge, bool validate = true);
bool verify(const Statement& stmt, const SigmaTranscript& tr);

// honest-verifier run; verifier randomness drives the challenges
struct RunResult {
    bool accepted;
    SigmaTranscript transcript;
};
RunResult run_interactive(const Statement& stmt, const Witness& wit, const ChallengeSpace& cs,
                          RandSource& prover_rs, RandSource& verifier_rs);

// HVZK simulator at fixed challenges; `routes` names the witness path the
// transcript should claim per branch
SigmaTranscript simulate(const Statement& stmt, const ChallengeSpace& cs, const mpz_class& challenge,
                         const std::vector<mpz_class>& inner_challenges,
                         const std::vector<WitnessRoute>& routes, RandSource& rs);

// two-transcript knowledge extraction (leaf statements); returns the
// recovered witness value in the statement's domain
struct ExtractError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
Value extract(const Statement& stmt, const SigmaTranscript& a, const SigmaTranscript& b);

// non-interactive variant (statements without inner proofs)
SigmaTranscript fs_prove(const Statement& stmt, const Witness& wit, const ChallengeSpace& cs,
                         BytesView domain_tag, RandSource& rs);
bool fs_verify(const Statement& stmt, const SigmaTranscript& tr, BytesView domain_tag);

}  // namespace osg::sigma

#endif
