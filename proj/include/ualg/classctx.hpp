#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ualg/algebra.hpp"
#include "ualg/congruence.hpp"
#include "ualg/core.hpp"

namespace ualg {

enum class Mode { Quasivariety, Variety };

const char* mode_name(Mode m);
Mode mode_from_name(const std::string& s);

// A finite set M of finite algebras over one signature plus a mode flag:
// the context stands for Q(M) or V(M) and carries every "relative to K"
// question.  Immutable after construction.
class ClassContext {
public:
    ClassContext(std::vector<FiniteAlgebra> generators, Mode mode, Limits limits = {});

    const std::vector<FiniteAlgebra>& generators() const { return gens_; }
    Mode mode() const { return mode_; }
    const Limits& limits() const { return limits_; }
    const Signature& sig() const { return gens_[0].sig; }

    // Target algebras for epimorphism tests.  In quasivariety mode these are
    // the generators themselves (separating pairs factor through relatively
    // subdirectly irreducible quotients, which embed into generators when M
    // is a finite set of finite algebras).  In variety mode quotients of
    // subalgebras of generators are included, which covers the congruence
    // distributive case.
    std::vector<FiniteAlgebra> epic_targets() const;

    // Nontrivial induced subalgebras of the generators (variety mode: also
    // their quotients), deduplicated; the candidate pool for relatively
    // subdirectly irreducible embedding targets.
    std::vector<FiniteAlgebra> subalgebra_pool() const;

private:
    std::vector<FiniteAlgebra> gens_;
    Mode mode_;
    Limits limits_;
};

// All nonempty closed subsets of the universe, sorted by size then
// lexicographically.  Guarded against universes too large to enumerate.
std::vector<Subset> closed_subsets(const FiniteAlgebra& a);

// Rebuilds an epimorphism-test target from its certificate descriptor
// ({"generator": i, "subuniverse": [...]?, "quotient": [...]?}).
FiniteAlgebra epic_target_from_json(const ClassContext& k, const nlohmann::json& desc);

// All congruences theta with A/theta a member of the context's class.  In
// variety mode this is the full lattice; in quasivariety mode it is the meet
// closure of kernels of homomorphisms into generators, plus the total
// partition.
CongruenceSet rel_con(const FiniteAlgebra& a, const ClassContext& k);

// Every homomorphism from b to c, found by exhaustive backtracking over a
// canonical generating set of b, sorted by the map's encoding.
std::vector<std::vector<int>> homs(const FiniteAlgebra& b, const FiniteAlgebra& c,
                                   std::uint64_t node_budget = kDefaultNodeBudget);

// Membership in ISP(M), i.e. in Q(M) for finite data: homomorphisms into
// generators separate every pair of distinct elements.
bool member_isp(const FiniteAlgebra& a, const ClassContext& k);

// Least b in B - A with Sg(A + {b}) = B, or nullopt.
std::optional<int> almost_total(const Subset& a, const FiniteAlgebra& b);

enum class Verdict {
    Epic,
    NotEpic,
    Full,
    NotFull,
    FullyEpic,
    WeakESFailure,
    Exhausted,
    TermWitness,
    NoTerm,
    Arithmetical,
    Inconclusive,
};

const char* verdict_name(Verdict v);
Verdict verdict_from_name(const std::string& s);

// Machine-checkable verdict record.  The JSON document is self-contained:
// it embeds the class context, the subject data, and enough witness or
// replay data for independent re-verification.
struct Certificate {
    Verdict verdict = Verdict::Exhausted;
    nlohmann::json context;
    nlohmann::json subject = nullptr;
    nlohmann::json witness = nullptr;
    nlohmann::json bounds = nullptr;

    nlohmann::json to_json() const;
    static Certificate from_json(const nlohmann::json& doc);
};

nlohmann::json context_to_json(const ClassContext& k);
ClassContext context_from_json(const nlohmann::json& j, Limits limits = {});

// Decision procedures on a closed subset A of an algebra B relative to K.
Certificate is_full(const Subset& a, const FiniteAlgebra& b, const ClassContext& k,
                    const CongruenceSet* relcon_hint = nullptr);
Certificate is_epic(const Subset& a, const FiniteAlgebra& b, const ClassContext& k);
Certificate is_fully_epic(const Subset& a, const FiniteAlgebra& b, const ClassContext& k,
                          const CongruenceSet* relcon_hint = nullptr);

struct FullifyResult {
    Partition theta;                 // maximal congruence avoiding (A, b)
    int witness_b = -1;              // the fixed almost-total witness in B
    FiniteAlgebra quotient;          // B/theta
    std::vector<int> projection;     // B -> B/theta
    Subset quotient_subset;          // image of A in B/theta
};

// The full-quotient construction: picks the least almost-total witness b,
// takes a maximal relative congruence theta with no a in A related to b
// (exhaustive maximality over the finite lattice, least canonical tie-break),
// and returns the quotient pair, re-verified full.
FullifyResult fullify(const Subset& a, const FiniteAlgebra& b, const ClassContext& k,
                      const CongruenceSet* relcon_hint = nullptr);

// Epimorphism decision for full pairs through the two-condition
// characterization: (i) a nonidentity relative congruence restricting to the
// identity on A, or (ii) two distinct embeddings into a relatively
// subdirectly irreducible candidate agreeing on A.
Certificate decide_epic_thm(const Subset& a, const FiniteAlgebra& b, const ClassContext& k);

// The retraction g(b) := the unique a in A with (a, b) in phi; verified to be
// a homomorphism fixing A with image exactly A.
std::vector<int> retraction_witness(const Subset& a, const FiniteAlgebra& b, const ClassContext& k,
                                    const Partition& phi);

struct RsiResult {
    bool rsi = false;
    bool rfsi = false;
    std::optional<Partition> monolith;
};

// Relative (finite) subdirect irreducibility via meet irreducibility of the
// identity in the relative congruence lattice.
RsiResult rsi_check(const FiniteAlgebra& c, const ClassContext& k);

struct DecomposeResult {
    std::vector<Partition> factors;          // meet-irreducible congruences, meet = id
    std::vector<QuotientResult> quotients;   // aligned with factors
};

// Subdirect decomposition into relatively subdirectly irreducible quotients:
// per pair (a, b) a maximal relative congruence separating them, greedily
// pruned; the induced map into the product is injective with surjective
// projections.
DecomposeResult decompose(const FiniteAlgebra& a, const ClassContext& k);

struct SearchBounds {
    int max_b_size = 0;
    int max_generators = 0;
    int max_product_width = 0;
};

// Bounded search for a weak-ES failure witness: candidate algebras B are
// generated subalgebras of products of generators, candidate subsets A are
// scanned largest first; each almost-total candidate is fullified and the
// quotient pair tested for being fully epic.  Returns the first witness in
// canonical order, or Exhausted with the bounds.
Certificate weak_es_search(const ClassContext& k, const SearchBounds& bounds, int threads = 1);

}  // namespace ualg
