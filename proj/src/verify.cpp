#include "ualg/verify.hpp"

#include <algorithm>

#include "ualg/classctx.hpp"
#include "ualg/json_io.hpp"
#include "ualg/maltsev.hpp"

namespace ualg {

using nlohmann::json;

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) fail(ErrorCode::InvalidArgument, msg);
}

struct PairData {
    FiniteAlgebra algebra;
    Subset subset;
};

PairData pair_from_json(const json& j, const std::string& where) {
    require(j.is_object() && j.contains("algebra") && j.contains("subset"),
            where + " lacks algebra or subset");
    PairData out;
    out.algebra = algebra_from_json(j["algebra"], where + ".algebra");
    out.subset = make_subset(out.algebra, j["subset"].get<std::vector<int>>());
    return out;
}

std::vector<int> map_from_json(const json& j, int domain, int codomain, const std::string& where) {
    require(j.is_array() && static_cast<int>(j.size()) == domain,
            where + " must be an array of length " + std::to_string(domain));
    std::vector<int> f = j.get<std::vector<int>>();
    for (int v : f) require(v >= 0 && v < codomain, where + " has a value outside the codomain");
    return f;
}

void check_hom_pair_witness(const ClassContext& k, const PairData& pd, const json& w) {
    FiniteAlgebra target = epic_target_from_json(k, w.at("target"));
    std::vector<int> g = map_from_json(w.at("g"), pd.algebra.size, target.size, "witness.g");
    std::vector<int> h = map_from_json(w.at("h"), pd.algebra.size, target.size, "witness.h");
    require(is_hom(g, pd.algebra, target), "g is not a homomorphism");
    require(is_hom(h, pd.algebra, target), "h is not a homomorphism");
    require(g != h, "g and h coincide");
    for (int x : pd.subset.elems)
        require(g[x] == h[x], "g and h disagree on the subalgebra");
}

void check_retraction_witness(const ClassContext& k, const PairData& pd, const json& w) {
    Partition phi = partition_from_json(w.at("congruence"), pd.algebra.size, "witness.congruence");
    require(!phi.is_identity(), "retraction congruence is the identity");
    require(is_congruence(pd.algebra, phi), "retraction congruence is not compatible");
    require(rel_con(pd.algebra, k).contains(phi), "congruence is not a relative congruence");
    for (std::size_t i = 0; i < pd.subset.elems.size(); ++i)
        for (std::size_t j = i + 1; j < pd.subset.elems.size(); ++j)
            require(!phi.same(pd.subset.elems[i], pd.subset.elems[j]),
                    "congruence does not restrict to the identity on the subalgebra");
    std::vector<int> g =
        map_from_json(w.at("retraction"), pd.algebra.size, pd.algebra.size, "witness.retraction");
    require(is_hom(g, pd.algebra, pd.algebra), "retraction is not an endomorphism");
    bool moved = false;
    for (int e = 0; e < pd.algebra.size; ++e) {
        require(pd.subset.contains(g[e]), "retraction image escapes the subalgebra");
        require(phi.same(g[e], e), "retraction does not follow the congruence");
        if (g[e] != e) moved = true;
    }
    for (int x : pd.subset.elems) require(g[x] == x, "retraction moves a subalgebra element");
    require(moved, "retraction equals the identity");
    // The pair (retraction, identity) separates inside the subject itself, so
    // the subject must be a member for the refutation to live in the class.
    if (k.mode() == Mode::Quasivariety)
        require(member_isp(pd.algebra, k), "subject is not a member of the quasivariety");
}

void check_full_subject(const ClassContext& k, const PairData& pd, const json& w) {
    Certificate redo = is_full(pd.subset, pd.algebra, k);
    require(redo.verdict == Verdict::Full, "subject pair is not full");
    if (w.contains("almost_total_witness")) {
        int b = w["almost_total_witness"].get<int>();
        require(!pd.subset.contains(b), "almost-total witness lies in the subalgebra");
        std::vector<int> gens = pd.subset.elems;
        gens.insert(std::lower_bound(gens.begin(), gens.end(), b), b);
        require(sg(pd.algebra, gens).elements.is_universe(),
                "almost-total witness does not generate");
    }
}

VerifyResult dispatch(const Certificate& cert, Limits limits) {
    ClassContext k = context_from_json(cert.context, limits);
    switch (cert.verdict) {
        case Verdict::Full: {
            PairData pd = pair_from_json(cert.subject, "subject");
            check_full_subject(k, pd, cert.witness);
            return {true, "full pair re-verified"};
        }
        case Verdict::NotFull: {
            PairData pd = pair_from_json(cert.subject, "subject");
            std::string reason = cert.witness.at("reason").get<std::string>();
            if (reason == "not_proper") {
                require(pd.subset.is_universe(), "subset is proper after all");
            } else if (reason == "not_almost_total") {
                require(!pd.subset.is_universe(), "subset is not proper");
                require(!almost_total(pd.subset, pd.algebra), "subset is almost total after all");
            } else if (reason == "congruence") {
                Partition theta =
                    partition_from_json(cert.witness.at("congruence"), pd.algebra.size, "witness");
                int e = cert.witness.at("element").get<int>();
                require(!theta.is_identity(), "violating congruence is the identity");
                require(rel_con(pd.algebra, k).contains(theta),
                        "violating congruence is not a relative congruence");
                for (int x : pd.subset.elems)
                    require(!theta.same(x, e), "congruence relates the element to the subalgebra");
            } else {
                require(false, "unknown NotFull reason " + reason);
            }
            return {true, "NotFull witness re-verified"};
        }
        case Verdict::Epic: {
            PairData pd = pair_from_json(cert.subject, "subject");
            Certificate redo = is_epic(pd.subset, pd.algebra, k);
            require(redo.verdict == Verdict::Epic, "replay found a separating pair");
            return {true, "epicity replayed"};
        }
        case Verdict::NotEpic: {
            PairData pd = pair_from_json(cert.subject, "subject");
            std::string kind = cert.witness.at("kind").get<std::string>();
            if (kind == "hom_pair") check_hom_pair_witness(k, pd, cert.witness);
            else if (kind == "retraction") check_retraction_witness(k, pd, cert.witness);
            else require(false, "unknown NotEpic witness kind " + kind);
            return {true, "NotEpic witness re-verified"};
        }
        case Verdict::FullyEpic: {
            PairData pd = pair_from_json(cert.subject, "subject");
            check_full_subject(k, pd, cert.witness.value("full", json::object()));
            Certificate redo = is_epic(pd.subset, pd.algebra, k);
            require(redo.verdict == Verdict::Epic, "replay found a separating pair");
            return {true, "fully epic pair re-verified"};
        }
        case Verdict::WeakESFailure: {
            PairData pd = pair_from_json(cert.witness.at("pair"), "witness.pair");
            if (k.mode() == Mode::Quasivariety)
                require(member_isp(pd.algebra, k), "witness algebra is not a member");
            check_full_subject(k, pd, cert.witness);
            Certificate epic = is_epic(pd.subset, pd.algebra, k);
            require(epic.verdict == Verdict::Epic, "witness pair is not epic");
            return {true, "weak-ES failure witness re-verified"};
        }
        case Verdict::Exhausted: {
            SearchBounds bounds{cert.bounds.at("max_b_size").get<int>(),
                                cert.bounds.at("max_generators").get<int>(),
                                cert.bounds.at("max_product_width").get<int>()};
            Certificate redo = weak_es_search(k, bounds);
            require(redo.verdict == Verdict::Exhausted, "replayed search found a witness");
            return {true, "exhausted search replayed"};
        }
        case Verdict::TermWitness: {
            std::string kind = cert.witness.at("schema_kind").get<std::string>();
            Term t = term_from_json(cert.witness.at("term"), "witness.term");
            if (cert.witness.contains("prefix"))
                require(cert.witness["prefix"].get<std::string>() == t.to_string(),
                        "prefix form does not match the term");
            if (kind == "nu") {
                int arity = cert.witness.at("arity").get<int>();
                require(arity >= 3, "near unanimity arity below 3");
                require(verify_identities(k, nu_identities(t, arity)),
                        "near unanimity identities fail");
            } else if (kind == "pixley") {
                require(verify_identities(k, pixley_identities(t)), "Pixley identities fail");
            } else if (kind == "maltsev") {
                require(verify_identities(k, maltsev_identities(t)), "Maltsev identities fail");
            } else if (kind == "discriminator") {
                require(verify_discriminator(k, t), "discriminator behavior fails");
            } else {
                require(false, "unknown term schema " + kind);
            }
            return {true, "term witness re-verified"};
        }
        case Verdict::NoTerm: {
            std::string kind = cert.witness.at("schema_kind").get<std::string>();
            std::optional<Term> t;
            if (kind == "nu") t = nu_term(k, cert.witness.at("arity").get<int>(), limits.universe_cap);
            else if (kind == "pixley") t = pixley_term(k, limits.universe_cap);
            else if (kind == "maltsev") t = maltsev_term(k, limits.universe_cap);
            else if (kind == "discriminator") t = discriminator_term(k, limits.universe_cap);
            else require(false, "unknown term schema " + kind);
            require(!t, "replayed membership search found a term");
            return {true, "exhausted membership replayed"};
        }
        case Verdict::Arithmetical: {
            Term t = term_from_json(cert.witness.at("term"), "witness.term");
            require(verify_identities(k, pixley_identities(t)), "Pixley identities fail");
            return {true, "arithmeticity witness re-verified"};
        }
        case Verdict::Inconclusive: {
            Certificate redo = arithmeticity_witness(k, limits.universe_cap);
            require(redo.verdict == Verdict::Inconclusive, "replay reached a conclusive verdict");
            return {true, "inconclusive verdict replayed"};
        }
    }
    return {false, "unknown verdict"};
}

}  // namespace

VerifyResult verify_certificate(const json& doc, Limits limits) {
    try {
        Certificate cert = Certificate::from_json(doc);
        return dispatch(cert, limits);
    } catch (const Error& e) {
        return {false, e.what()};
    } catch (const json::exception& e) {
        return {false, std::string("malformed certificate: ") + e.what()};
    } catch (const std::logic_error& e) {
        return {false, std::string("internal inconsistency: ") + e.what()};
    }
}

}  // namespace ualg
