#include "ualg/core.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace ualg {

int eval_term(const FiniteAlgebra& a, const Term& t, const std::vector<int>& env) {
    if (t.is_var()) {
        if (t.var_index() >= static_cast<int>(env.size()))
            fail(ErrorCode::VariableOutOfRange,
                 "x" + std::to_string(t.var_index()) + " with environment of length " +
                     std::to_string(env.size()));
        return env[t.var_index()];
    }
    int op = a.sig.index_of(t.symbol());
    if (op < 0) fail(ErrorCode::UnknownSymbol, t.symbol() + " not in signature of " + a.name);
    if (static_cast<int>(t.children().size()) != a.sig.symbols()[op].arity)
        fail(ErrorCode::ArityMismatch,
             t.symbol() + " applied to " + std::to_string(t.children().size()) + " arguments");
    std::vector<int> args;
    args.reserve(t.children().size());
    for (const Term& c : t.children()) args.push_back(eval_term(a, c, env));
    return a.apply(op, args);
}

namespace {

// Odometer over k-tuples drawn from a pool of m values; visits tuples in
// lexicographic order of pool positions.
bool next_tuple(std::vector<int>& pos, int m) {
    for (int i = static_cast<int>(pos.size()) - 1; i >= 0; --i) {
        if (++pos[i] < m) return true;
        pos[i] = 0;
    }
    return false;
}

}  // namespace

GeneratedSubuniverse sg(const FiniteAlgebra& a, const std::vector<int>& gens) {
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (gens[i] < 0 || gens[i] >= a.size)
            fail(ErrorCode::InvalidArgument, "generator out of range");
        if (i > 0 && gens[i - 1] >= gens[i])
            fail(ErrorCode::InvalidArgument, "generators must be strictly increasing");
    }

    GeneratedSubuniverse out;
    out.generators = gens;
    std::map<int, Term> witness;
    std::vector<int> known;  // sorted
    for (std::size_t i = 0; i < gens.size(); ++i) {
        witness.emplace(gens[i], Term::var(static_cast<int>(i)));
        known.push_back(gens[i]);
    }

    std::set<int> old;  // elements already present before the previous sweep
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<int> snapshot = known;
        std::vector<std::pair<int, Term>> found;
        for (std::size_t op = 0; op < a.sig.count(); ++op) {
            int k = a.sig.symbols()[op].arity;
            if (k == 0) {
                int v = a.tables[op][0];
                if (!witness.count(v) &&
                    std::none_of(found.begin(), found.end(), [&](auto& p) { return p.first == v; }))
                    found.emplace_back(v, Term::app(a.sig.symbols()[op].name, {}));
                continue;
            }
            if (snapshot.empty()) continue;
            std::vector<int> pos(k, 0);
            do {
                bool fresh = false;
                for (int p : pos)
                    if (!old.count(snapshot[p])) { fresh = true; break; }
                if (!fresh) continue;  // all-old tuples were handled in an earlier sweep
                std::vector<int> args(k);
                for (int i = 0; i < k; ++i) args[i] = snapshot[pos[i]];
                int v = a.apply(static_cast<int>(op), args);
                if (witness.count(v)) continue;
                if (std::any_of(found.begin(), found.end(), [&](auto& p) { return p.first == v; }))
                    continue;
                std::vector<Term> children;
                children.reserve(k);
                for (int arg : args) children.push_back(witness.at(arg));
                found.emplace_back(v, Term::app(a.sig.symbols()[op].name, std::move(children)));
            } while (next_tuple(pos, static_cast<int>(snapshot.size())));
        }
        old.insert(snapshot.begin(), snapshot.end());
        for (auto& [v, t] : found) {
            witness.emplace(v, std::move(t));
            known.insert(std::lower_bound(known.begin(), known.end(), v), v);
            grew = true;
        }
    }

    out.elements = make_subset(a, known);
    out.witness = std::move(witness);
    return out;
}

std::size_t encode_tuple(const std::vector<int>& tuple, const std::vector<int>& radices) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < tuple.size(); ++i)
        idx = idx * static_cast<std::size_t>(radices[i]) + static_cast<std::size_t>(tuple[i]);
    return idx;
}

std::vector<int> decode_tuple(std::size_t index, const std::vector<int>& radices) {
    std::vector<int> out(radices.size());
    for (int i = static_cast<int>(radices.size()) - 1; i >= 0; --i) {
        out[i] = static_cast<int>(index % static_cast<std::size_t>(radices[i]));
        index /= static_cast<std::size_t>(radices[i]);
    }
    return out;
}

FiniteAlgebra product(const std::vector<FiniteAlgebra>& factors, std::size_t cap,
                      const std::optional<Signature>& empty_sig) {
    if (factors.empty()) {
        if (!empty_sig)
            fail(ErrorCode::InvalidArgument, "empty product needs an explicit signature");
        FiniteAlgebra a;
        a.name = "trivial";
        a.size = 1;
        a.sig = *empty_sig;
        for (std::size_t i = 0; i < a.sig.count(); ++i) a.tables.push_back({0});
        return a;
    }

    const Signature& sig = factors[0].sig;
    std::size_t n = 1;
    std::vector<int> radices;
    std::string name = "(";
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i].sig != sig)
            fail(ErrorCode::SignatureMismatch, "product factors have different signatures");
        if (factors[i].size != 0 && n > cap / static_cast<std::size_t>(factors[i].size))
            fail(ErrorCode::SizeOverflow, "product size exceeds cap " + std::to_string(cap));
        n *= static_cast<std::size_t>(factors[i].size);
        radices.push_back(factors[i].size);
        if (i > 0) name += "*";
        name += factors[i].name;
    }
    name += ")";
    if (n > cap) fail(ErrorCode::SizeOverflow, "product size exceeds cap " + std::to_string(cap));

    FiniteAlgebra a;
    a.name = name;
    a.size = static_cast<int>(n);
    a.sig = sig;
    for (std::size_t op = 0; op < sig.count(); ++op) {
        int k = sig.symbols()[op].arity;
        std::size_t rows = checked_pow(n, k, SIZE_MAX);
        std::vector<int> table(rows);
        std::vector<std::vector<int>> args(k);
        std::vector<int> pos(k, 0);
        std::size_t row = 0;
        do {
            for (int i = 0; i < k; ++i) args[i] = decode_tuple(pos[i], radices);
            std::vector<int> res(factors.size());
            std::vector<int> coord(k);
            for (std::size_t c = 0; c < factors.size(); ++c) {
                for (int i = 0; i < k; ++i) coord[i] = args[i][c];
                res[c] = factors[c].apply(static_cast<int>(op), coord);
            }
            table[row++] = static_cast<int>(encode_tuple(res, radices));
        } while (k > 0 && next_tuple(pos, static_cast<int>(n)));
        a.tables.push_back(std::move(table));
    }
    return a;
}

QuotientResult quotient(const FiniteAlgebra& a, const Partition& theta) {
    if (theta.size() != a.size) fail(ErrorCode::SizeMismatch, "partition size does not match algebra");
    int m = theta.num_blocks();
    std::vector<int> rep(m, -1);
    for (int e = 0; e < a.size; ++e)
        if (rep[theta.block(e)] < 0) rep[theta.block(e)] = e;

    FiniteAlgebra q;
    q.name = a.name + "/" + theta.to_text();
    q.size = m;
    q.sig = a.sig;
    for (std::size_t op = 0; op < a.sig.count(); ++op) {
        int k = a.sig.symbols()[op].arity;
        std::size_t rows = checked_pow(static_cast<std::size_t>(m), k, SIZE_MAX);
        std::vector<int> table(rows);
        std::vector<int> pos(k, 0);
        std::size_t row = 0;
        do {
            std::vector<int> args(k);
            for (int i = 0; i < k; ++i) args[i] = rep[pos[i]];
            table[row++] = theta.block(a.apply(static_cast<int>(op), args));
        } while (k > 0 && next_tuple(pos, m));
        q.tables.push_back(std::move(table));

        // Well-definedness: the value on blocks must not depend on the
        // chosen representatives.
        if (k > 0) {
            std::vector<int> epos(k, 0);
            do {
                std::vector<int> args(k), blks(k);
                for (int i = 0; i < k; ++i) {
                    args[i] = epos[i];
                    blks[i] = theta.block(epos[i]);
                }
                int got = theta.block(a.apply(static_cast<int>(op), args));
                if (got != q.tables[op][encode_tuple(blks, std::vector<int>(k, m))])
                    fail(ErrorCode::NotACongruence,
                         "operation " + a.sig.symbols()[op].name +
                             " is not compatible with the partition " + theta.to_text());
            } while (next_tuple(epos, a.size));
        }
    }
    return {std::move(q), theta.block_of()};
}

InducedResult induced_subalgebra(const FiniteAlgebra& a, const Subset& s) {
    s.validate();
    if (s.parent_size != a.size) fail(ErrorCode::SizeMismatch, "subset belongs to a different universe");
    const std::vector<int>& carrier = s.elems;
    int m = static_cast<int>(carrier.size());
    if (m == 0) fail(ErrorCode::InvalidArgument, "cannot induce an algebra on the empty set");
    std::vector<int> back(a.size, -1);
    for (int i = 0; i < m; ++i) back[carrier[i]] = i;

    FiniteAlgebra sub;
    sub.name = a.name + "|sub";
    sub.size = m;
    sub.sig = a.sig;
    for (std::size_t op = 0; op < a.sig.count(); ++op) {
        int k = a.sig.symbols()[op].arity;
        std::size_t rows = checked_pow(static_cast<std::size_t>(m), k, SIZE_MAX);
        std::vector<int> table(rows);
        std::vector<int> pos(k, 0);
        std::size_t row = 0;
        do {
            std::vector<int> args(k);
            for (int i = 0; i < k; ++i) args[i] = carrier[pos[i]];
            int v = a.apply(static_cast<int>(op), args);
            if (back[v] < 0) {
                std::string app = a.sig.symbols()[op].name + "(";
                for (int i = 0; i < k; ++i) app += (i ? "," : "") + std::to_string(args[i]);
                app += ") = " + std::to_string(v);
                fail(ErrorCode::NotClosed, "subset not closed: " + app + " escapes it");
            }
            table[row++] = back[v];
        } while (k > 0 && next_tuple(pos, m));
        sub.tables.push_back(std::move(table));
    }
    return {std::move(sub), carrier};
}

bool is_hom(const std::vector<int>& f, const FiniteAlgebra& a, const FiniteAlgebra& b) {
    if (static_cast<int>(f.size()) != a.size)
        fail(ErrorCode::InvalidArgument, "map length does not match source universe");
    for (int v : f)
        if (v < 0 || v >= b.size) fail(ErrorCode::InvalidArgument, "map value out of target universe");
    if (a.sig != b.sig) fail(ErrorCode::SignatureMismatch, "homomorphism between different signatures");

    for (std::size_t op = 0; op < a.sig.count(); ++op) {
        int k = a.sig.symbols()[op].arity;
        if (k == 0) {
            if (f[a.tables[op][0]] != b.tables[op][0]) return false;
            continue;
        }
        std::vector<int> pos(k, 0);
        do {
            std::vector<int> args(pos), mapped(k);
            for (int i = 0; i < k; ++i) mapped[i] = f[pos[i]];
            if (f[a.apply(static_cast<int>(op), args)] != b.apply(static_cast<int>(op), mapped))
                return false;
        } while (next_tuple(pos, a.size));
    }
    return true;
}

Partition kernel(const std::vector<int>& f) {
    return Partition(std::vector<int>(f.begin(), f.end()));
}

bool ProductSg::contains(const std::vector<int>& e) const {
    return index_of(e) >= 0;
}

int ProductSg::index_of(const std::vector<int>& e) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), e);
    if (it == elements.end() || *it != e) return -1;
    return static_cast<int>(it - elements.begin());
}

Term ProductSg::witness_term(int index) const {
    std::map<int, Term> memo;
    auto expand = [&](auto&& self, int i) -> const Term& {
        auto it = memo.find(i);
        if (it != memo.end()) return it->second;
        const Node& n = nodes[i];
        Term t;
        if (n.var >= 0) {
            t = Term::var(n.var);
        } else {
            std::vector<Term> children;
            children.reserve(n.children.size());
            for (int c : n.children) children.push_back(self(self, c));
            t = Term::app(op_names[n.op], std::move(children));
        }
        return memo.emplace(i, std::move(t)).first->second;
    };
    return expand(expand, index);
}

std::optional<Term> ProductSg::witness_for(const std::vector<int>& e) const {
    int i = index_of(e);
    if (i < 0) return std::nullopt;
    return witness_term(i);
}

namespace {

struct SgCandidate {
    int op;
    std::vector<int> arg_ids;
};

// Keys for the generated-set index.  Tuples encode into a single word when
// the ambient product fits 64 bits (every realistic case); the vector codec
// is the fallback for wider ambients.
struct U64Key {
    using Key = std::uint64_t;
    using IndexMap = std::unordered_map<std::uint64_t, int>;
    using FoundMap = std::unordered_map<std::uint64_t, std::pair<std::vector<int>, SgCandidate>>;
    std::vector<std::uint64_t> weight;  // earlier coordinates more significant

    explicit U64Key(const std::vector<const FiniteAlgebra*>& coords) : weight(coords.size()) {
        std::uint64_t w = 1;
        for (std::size_t i = coords.size(); i-- > 0;) {
            weight[i] = w;
            w *= static_cast<std::uint64_t>(coords[i]->size);
        }
    }

    static bool fits(const std::vector<const FiniteAlgebra*>& coords) {
        std::uint64_t w = 1;
        for (const FiniteAlgebra* c : coords) {
            if (w > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(c->size)) return false;
            w *= static_cast<std::uint64_t>(c->size);
        }
        return true;
    }

    Key encode(const std::vector<int>& t) const {
        std::uint64_t k = 0;
        for (std::size_t i = 0; i < t.size(); ++i)
            k += weight[i] * static_cast<std::uint64_t>(t[i]);
        return k;
    }
};

struct VecKey {
    using Key = std::vector<int>;
    using IndexMap = std::map<std::vector<int>, int>;
    using FoundMap = std::map<std::vector<int>, std::pair<std::vector<int>, SgCandidate>>;

    explicit VecKey(const std::vector<const FiniteAlgebra*>&) {}
    const Key& encode(const std::vector<int>& t) const { return t; }
};

template <typename Codec>
ProductSg sg_product_core(const std::vector<const FiniteAlgebra*>& coords,
                          const std::vector<std::vector<int>>& gens, std::size_t cap,
                          const std::vector<int>* stop_at) {
    const Signature& sig = coords[0]->sig;
    std::size_t width = coords.size();
    Codec codec(coords);

    // Discovery-order storage; re-indexed along sorted tuples at the end.
    std::vector<std::vector<int>> tuples;
    std::vector<ProductSg::Node> nodes;
    typename Codec::IndexMap index;

    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].size() != width) fail(ErrorCode::InvalidArgument, "generator tuple width mismatch");
        for (std::size_t c = 0; c < width; ++c)
            if (gens[i][c] < 0 || gens[i][c] >= coords[c]->size)
                fail(ErrorCode::InvalidArgument, "generator coordinate out of range");
        if (index.emplace(codec.encode(gens[i]), static_cast<int>(tuples.size())).second) {
            tuples.push_back(gens[i]);
            ProductSg::Node n;
            n.var = static_cast<int>(i);
            nodes.push_back(std::move(n));
        }
    }

    std::vector<int> coord_buf, value_buf(width);
    auto apply_coordwise = [&](std::size_t op, const std::vector<std::size_t>& pos, int k) {
        coord_buf.resize(k);
        const std::vector<int>* table = &coords[0]->tables[op];
        for (std::size_t c = 0; c < width; ++c) {
            if (c > 0) table = &coords[c]->tables[op];
            std::size_t row = 0;
            int n = coords[c]->size;
            for (int i = 0; i < k; ++i)
                row = row * static_cast<std::size_t>(n) +
                      static_cast<std::size_t>(tuples[pos[i]][c]);
            value_buf[c] = (*table)[row];
        }
    };

    // Within a level, the first-discovered witness is the application that is
    // least under (symbol order, argument tuples lexicographically), matching
    // a sweep that examines elements in increasing order.
    auto candidate_less = [&](const SgCandidate& a, const SgCandidate& b) {
        if (a.op != b.op) return a.op < b.op;
        for (std::size_t i = 0; i < a.arg_ids.size(); ++i) {
            if (a.arg_ids[i] == b.arg_ids[i]) continue;
            return tuples[a.arg_ids[i]] < tuples[b.arg_ids[i]];
        }
        return false;
    };

    std::size_t old_end = 0;  // ids below are pre-frontier
    std::size_t frontier_end = tuples.size();
    typename Codec::FoundMap found;
    const std::vector<std::size_t> no_pos;
    while (true) {
        found.clear();
        // Argument ids are materialized only for genuinely new values;
        // the common path costs one encode and one hash probe.
        auto offer = [&](int op, const std::vector<std::size_t>& pos, int k) {
            auto key = codec.encode(value_buf);
            if (index.count(key)) return;
            std::vector<int> arg_ids(k);
            for (int i = 0; i < k; ++i) arg_ids[i] = static_cast<int>(pos[i]);
            auto it = found.find(key);
            if (it == found.end()) {
                found.emplace(std::move(key),
                              std::make_pair(value_buf, SgCandidate{op, std::move(arg_ids)}));
                return;
            }
            SgCandidate cand{op, std::move(arg_ids)};
            if (candidate_less(cand, it->second.second)) it->second.second = std::move(cand);
        };

        for (std::size_t op = 0; op < sig.count(); ++op) {
            int k = sig.symbols()[op].arity;
            if (k == 0) {
                for (std::size_t c = 0; c < width; ++c) value_buf[c] = coords[c]->tables[op][0];
                offer(static_cast<int>(op), no_pos, 0);
                continue;
            }
            // Tuples touching the current frontier, partitioned by the first
            // frontier position: earlier arguments pre-frontier, later ones
            // anywhere known.  Each tuple is visited exactly once per closure.
            for (int p = 0; p < k; ++p) {
                std::vector<std::size_t> lo(k), hi(k);
                bool empty_range = false;
                for (int i = 0; i < k; ++i) {
                    lo[i] = i == p ? old_end : 0;
                    hi[i] = i < p ? old_end : frontier_end;
                    if (lo[i] >= hi[i]) { empty_range = true; break; }
                }
                if (empty_range) continue;
                std::vector<std::size_t> pos = lo;
                while (true) {
                    apply_coordwise(op, pos, k);
                    offer(static_cast<int>(op), pos, k);
                    int i = k - 1;
                    while (i >= 0) {
                        if (++pos[i] < hi[i]) break;
                        pos[i] = lo[i];
                        --i;
                    }
                    if (i < 0) break;
                }
            }
        }

        if (found.empty()) break;
        old_end = frontier_end;
        bool hit_stop = false;
        for (auto& [key, entry] : found) {
            if (tuples.size() >= cap)
                fail(ErrorCode::SizeOverflow,
                     "generated subuniverse exceeds cap " + std::to_string(cap));
            if (stop_at && entry.first == *stop_at) hit_stop = true;
            index.emplace(key, static_cast<int>(tuples.size()));
            tuples.push_back(std::move(entry.first));
            ProductSg::Node n;
            n.op = entry.second.op;
            n.children = std::move(entry.second.arg_ids);
            nodes.push_back(std::move(n));
        }
        frontier_end = tuples.size();
        if (hit_stop) break;
    }

    // Re-index along sorted tuple order.
    ProductSg out;
    out.generators = gens;
    for (std::size_t i = 0; i < sig.count(); ++i) out.op_names.push_back(sig.symbols()[i].name);
    std::vector<int> ids(tuples.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
    std::sort(ids.begin(), ids.end(),
              [&](int a, int b) { return tuples[a] < tuples[b]; });
    std::vector<int> order(tuples.size());
    out.elements.reserve(tuples.size());
    for (std::size_t rank = 0; rank < ids.size(); ++rank) {
        order[ids[rank]] = static_cast<int>(rank);
        out.elements.push_back(std::move(tuples[ids[rank]]));
    }
    out.nodes.resize(nodes.size());
    for (std::size_t id = 0; id < nodes.size(); ++id) {
        ProductSg::Node n = std::move(nodes[id]);
        for (int& c : n.children) c = order[c];
        out.nodes[order[id]] = std::move(n);
    }
    return out;
}

}  // namespace

ProductSg sg_product(const std::vector<const FiniteAlgebra*>& coords,
                     const std::vector<std::vector<int>>& gens, std::size_t cap,
                     const std::vector<int>* stop_at) {
    if (coords.empty()) fail(ErrorCode::InvalidArgument, "sg_product needs at least one coordinate");
    const Signature& sig = coords[0]->sig;
    for (const FiniteAlgebra* c : coords)
        if (c->sig != sig) fail(ErrorCode::SignatureMismatch, "coordinate signatures differ");
    if (U64Key::fits(coords)) return sg_product_core<U64Key>(coords, gens, cap, stop_at);
    return sg_product_core<VecKey>(coords, gens, cap, stop_at);
}

int MaterializedSub::index_of(const std::vector<int>& tuple) const {
    auto it = std::lower_bound(carrier.begin(), carrier.end(), tuple);
    if (it == carrier.end() || *it != tuple) return -1;
    return static_cast<int>(it - carrier.begin());
}

MaterializedSub materialize(const ProductSg& gen, const std::vector<const FiniteAlgebra*>& coords,
                            std::string name) {
    MaterializedSub out;
    out.carrier = gen.elements;
    int m = static_cast<int>(out.carrier.size());
    if (m == 0) fail(ErrorCode::InvalidArgument, "cannot materialize an empty subuniverse");
    const Signature& sig = coords[0]->sig;

    out.algebra.name = std::move(name);
    out.algebra.size = m;
    out.algebra.sig = sig;
    std::size_t width = coords.size();
    for (std::size_t op = 0; op < sig.count(); ++op) {
        int k = sig.symbols()[op].arity;
        std::size_t rows = checked_pow(static_cast<std::size_t>(m), k, SIZE_MAX);
        std::vector<int> table(rows);
        std::vector<int> pos(k, 0);
        std::size_t row = 0;
        do {
            std::vector<int> res(width);
            std::vector<int> coord(k);
            for (std::size_t c = 0; c < width; ++c) {
                for (int i = 0; i < k; ++i) coord[i] = out.carrier[pos[i]][c];
                res[c] = coords[c]->apply(static_cast<int>(op), coord);
            }
            int idx = out.index_of(res);
            if (idx < 0) fail(ErrorCode::NotClosed, "generated set not closed (internal)");
            table[row++] = idx;
        } while (k > 0 && next_tuple(pos, m));
        out.algebra.tables.push_back(std::move(table));
    }
    for (int i = 0; i < m; ++i) out.witness.emplace(i, gen.witness_term(i));
    return out;
}

}  // namespace ualg
