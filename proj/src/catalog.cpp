#include "ualg/catalog.hpp"

#include <algorithm>

namespace ualg::catalog {

namespace {

std::vector<std::string> chain_names(int n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) {
        if (i == 0) names.push_back("0");
        else if (i == n - 1) names.push_back("1");
        else names.push_back(std::string(1, static_cast<char>('a' + i - 1)));
    }
    if (n == 1) names = {"0"};
    return names;
}

std::vector<std::string> boolean_names(int atoms) {
    int n = 1 << atoms;
    std::vector<std::string> names;
    for (int e = 0; e < n; ++e) {
        if (e == 0) { names.push_back("0"); continue; }
        if (e == n - 1) { names.push_back("1"); continue; }
        std::string s;
        for (int i = 0; i < atoms; ++i)
            if (e & (1 << i)) s += (s.empty() ? "" : "+") + std::string("a") + std::to_string(i);
        names.push_back(s);
    }
    return names;
}

std::vector<int> binary_table(int n, int (*f)(int, int, int)) {
    std::vector<int> t(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a) * n + b] = f(a, b, n);
    return t;
}

FiniteAlgebra chain_lattice(int n) {
    FiniteAlgebra a;
    a.name = "chain_lattice(" + std::to_string(n) + ")";
    a.size = n;
    a.sig = Signature({{"and", 2}, {"or", 2}});
    a.tables.push_back(binary_table(n, [](int x, int y, int) { return std::min(x, y); }));
    a.tables.push_back(binary_table(n, [](int x, int y, int) { return std::max(x, y); }));
    return a;
}

FiniteAlgebra chain_semilattice(int n) {
    FiniteAlgebra a;
    a.name = "chain_semilattice(" + std::to_string(n) + ")";
    a.size = n;
    a.sig = Signature({{"and", 2}});
    a.tables.push_back(binary_table(n, [](int x, int y, int) { return std::min(x, y); }));
    return a;
}

FiniteAlgebra boolean_algebra(int atoms) {
    int n = 1 << atoms;
    FiniteAlgebra a;
    a.name = "boolean(" + std::to_string(atoms) + ")";
    a.size = n;
    a.sig = Signature({{"and", 2}, {"or", 2}, {"not", 1}, {"zero", 0}, {"one", 0}});
    a.tables.push_back(binary_table(n, [](int x, int y, int) { return x & y; }));
    a.tables.push_back(binary_table(n, [](int x, int y, int) { return x | y; }));
    std::vector<int> neg(n);
    for (int e = 0; e < n; ++e) neg[e] = ~e & (n - 1);
    a.tables.push_back(std::move(neg));
    a.tables.push_back({0});
    a.tables.push_back({n - 1});
    return a;
}

FiniteAlgebra implication_of_boolean(int atoms) {
    int n = 1 << atoms;
    FiniteAlgebra a;
    a.name = "implication_of_boolean(" + std::to_string(atoms) + ")";
    a.size = n;
    a.sig = Signature({{"imp", 2}});
    a.tables.push_back(binary_table(n, [](int x, int y, int sz) { return (~x & (sz - 1)) | y; }));
    return a;
}

FiniteAlgebra heyting_chain(int n) {
    FiniteAlgebra a;
    a.name = "heyting_chain(" + std::to_string(n) + ")";
    a.size = n;
    a.sig = Signature({{"and", 2}, {"or", 2}, {"imp", 2}, {"zero", 0}, {"one", 0}});
    a.tables.push_back(binary_table(n, [](int x, int y, int) { return std::min(x, y); }));
    a.tables.push_back(binary_table(n, [](int x, int y, int) { return std::max(x, y); }));
    a.tables.push_back(binary_table(n, [](int x, int y, int sz) { return x <= y ? sz - 1 : y; }));
    a.tables.push_back({0});
    a.tables.push_back({n - 1});
    return a;
}

struct ParsedKey {
    std::string family;
    std::vector<std::string> args;  // top-level comma-split
};

ParsedKey parse_key(const std::string& key) {
    std::size_t open = key.find('(');
    if (open == std::string::npos || key.back() != ')')
        fail(ErrorCode::UnknownKey, "malformed catalog key " + key);
    ParsedKey out;
    out.family = key.substr(0, open);
    std::string body = key.substr(open + 1, key.size() - open - 2);
    int depth = 0;
    std::string cur;
    for (char ch : body) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == ',' && depth == 0) {
            out.args.push_back(cur);
            cur.clear();
            continue;
        }
        cur += ch;
    }
    if (!cur.empty() || !body.empty()) out.args.push_back(cur);
    return out;
}

int int_arg(const ParsedKey& k, std::size_t i) {
    if (i >= k.args.size()) fail(ErrorCode::BadParams, k.family + " needs more parameters");
    try {
        std::size_t used = 0;
        int v = std::stoi(k.args[i], &used);
        if (used != k.args[i].size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        fail(ErrorCode::BadParams, "parameter " + k.args[i] + " of " + k.family + " is not an integer");
    }
}

}  // namespace

CatalogEntry build(const std::string& key) {
    ParsedKey pk = parse_key(key);
    auto want_args = [&](std::size_t n) {
        if (pk.args.size() != n)
            fail(ErrorCode::BadParams, pk.family + " takes " + std::to_string(n) + " parameter(s)");
    };
    if (pk.family == "chain_lattice" || pk.family == "chain_semilattice" ||
        pk.family == "heyting_chain") {
        want_args(1);
        int n = int_arg(pk, 0);
        if (n < 1) fail(ErrorCode::BadParams, pk.family + " needs n >= 1");
        if (pk.family == "heyting_chain" && n > 4)
            fail(ErrorCode::BadParams, "heyting_chain is cataloged for n <= 4");
        FiniteAlgebra a = pk.family == "chain_lattice"      ? chain_lattice(n)
                          : pk.family == "chain_semilattice" ? chain_semilattice(n)
                                                              : heyting_chain(n);
        return {key, std::move(a), chain_names(n)};
    }
    if (pk.family == "boolean" || pk.family == "implication_of_boolean") {
        want_args(1);
        int atoms = int_arg(pk, 0);
        if (atoms < 1 || atoms > 16) fail(ErrorCode::BadParams, pk.family + " needs 1 <= k <= 16");
        FiniteAlgebra a =
            pk.family == "boolean" ? boolean_algebra(atoms) : implication_of_boolean(atoms);
        return {key, std::move(a), boolean_names(atoms)};
    }
    fail(ErrorCode::UnknownKey, "unknown catalog family " + pk.family);
}

bool is_dl_example_key(const std::string& key) {
    return key.rfind("dl_example(", 0) == 0;
}

DlExample build_dl_example(const std::string& key) {
    ParsedKey pk = parse_key(key);
    if (pk.family != "dl_example") fail(ErrorCode::UnknownKey, "expected a dl_example key");
    if (pk.args.size() != 3) fail(ErrorCode::BadParams, "dl_example takes (lattice key, a, b)");

    CatalogEntry inner = build(pk.args[0]);
    const FiniteAlgebra& a1 = inner.algebra;
    int meet_op = a1.sig.index_of("and");
    int join_op = a1.sig.index_of("or");
    if (meet_op < 0 || join_op < 0)
        fail(ErrorCode::BadParams, "dl_example needs a lattice (and, or) as its first parameter");
    int ea = int_arg(pk, 1), eb = int_arg(pk, 2);
    if (ea < 0 || ea >= a1.size || eb < 0 || eb >= a1.size)
        fail(ErrorCode::BadParams, "dl_example elements out of range");
    if (ea == eb || a1.apply(meet_op, {ea, eb}) != ea)
        fail(ErrorCode::BadParams, "dl_example needs a strictly below b");

    DlExample out;
    out.ambient = product({a1, chain_lattice(2)});
    out.ambient.name = "(" + a1.name + "*chain_lattice(2))";

    // (A1 x {0}) + (up-set of b x {1}); pair (u, v) encodes as 2u + v.
    std::vector<int> a_elems;
    for (int u = 0; u < a1.size; ++u) a_elems.push_back(2 * u);
    for (int u = 0; u < a1.size; ++u)
        if (a1.apply(meet_op, {eb, u}) == eb) a_elems.push_back(2 * u + 1);
    out.a = make_subset(out.ambient, std::move(a_elems));

    std::vector<int> b_gens = out.a.elems;
    int extra = 2 * ea + 1;
    b_gens.insert(std::lower_bound(b_gens.begin(), b_gens.end(), extra), extra);
    out.b = sg(out.ambient, b_gens).elements;
    return out;
}

std::vector<CatalogEntry> standard_entries() {
    std::vector<CatalogEntry> out;
    for (int n = 2; n <= 4; ++n) out.push_back(build("chain_lattice(" + std::to_string(n) + ")"));
    for (int n = 2; n <= 4; ++n)
        out.push_back(build("chain_semilattice(" + std::to_string(n) + ")"));
    for (int k = 1; k <= 3; ++k) out.push_back(build("boolean(" + std::to_string(k) + ")"));
    for (int k = 1; k <= 2; ++k)
        out.push_back(build("implication_of_boolean(" + std::to_string(k) + ")"));
    for (int n = 2; n <= 4; ++n) out.push_back(build("heyting_chain(" + std::to_string(n) + ")"));
    return out;
}

std::vector<std::string> family_help() {
    return {
        "chain_lattice(n)           n-element chain as a lattice (and, or)",
        "chain_semilattice(n)       n-element chain as a meet semilattice (and)",
        "boolean(k)                 Boolean algebra on k atoms (and, or, not, zero, one)",
        "implication_of_boolean(k)  implicative reduct of boolean(k) (imp)",
        "heyting_chain(n)           n-element Heyting chain, n <= 4 (and, or, imp, zero, one)",
        "dl_example(key, a, b)      ambient lattice product with the almost-total pair A <= B",
    };
}

}  // namespace ualg::catalog
