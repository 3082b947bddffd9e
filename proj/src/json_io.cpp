#include "ualg/json_io.hpp"

#include <fstream>

namespace ualg {

using nlohmann::json;

json algebra_to_json(const FiniteAlgebra& a) {
    json ops = json::array();
    for (std::size_t i = 0; i < a.sig.count(); ++i) {
        ops.push_back({{"symbol", a.sig.symbols()[i].name},
                       {"arity", a.sig.symbols()[i].arity},
                       {"table", a.tables[i]}});
    }
    return {{"name", a.name}, {"size", a.size}, {"operations", ops}};
}

namespace {

[[noreturn]] void reject(const std::string& where, const std::string& msg) {
    fail(ErrorCode::InvalidArgument, where + ": " + msg);
}

int require_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) reject(where, "expected an integer");
    return j.get<int>();
}

}  // namespace

FiniteAlgebra algebra_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) reject(where, "expected an object");
    if (!j.contains("name") || !j["name"].is_string()) reject(where + ".name", "expected a string");
    if (!j.contains("size")) reject(where + ".size", "missing");
    int size = require_int(j["size"], where + ".size");
    if (size <= 0) reject(where + ".size", "must be positive");
    if (!j.contains("operations") || !j["operations"].is_array())
        reject(where + ".operations", "expected an array");

    FiniteAlgebra a;
    a.name = j["name"].get<std::string>();
    a.size = size;

    std::vector<OpSym> syms;
    std::vector<std::vector<int>> tables;
    for (std::size_t i = 0; i < j["operations"].size(); ++i) {
        std::string here = where + ".operations[" + std::to_string(i) + "]";
        const json& op = j["operations"][i];
        if (!op.is_object()) reject(here, "expected an object");
        if (!op.contains("symbol") || !op["symbol"].is_string())
            reject(here + ".symbol", "expected a string");
        std::string sym = op["symbol"].get<std::string>();
        if (sym.empty()) reject(here + ".symbol", "must be nonempty");
        for (const OpSym& s : syms)
            if (s.name == sym) reject(here + ".symbol", "duplicate symbol " + sym);
        if (!op.contains("arity")) reject(here + ".arity", "missing");
        int arity = require_int(op["arity"], here + ".arity");
        if (arity < 0) reject(here + ".arity", "must be nonnegative");
        if (!op.contains("table") || !op["table"].is_array())
            reject(here + ".table", "expected an array");
        std::size_t want = 1;
        for (int e = 0; e < arity; ++e) {
            if (want > SIZE_MAX / static_cast<std::size_t>(size))
                reject(here + ".table", "table size overflows");
            want *= static_cast<std::size_t>(size);
        }
        if (op["table"].size() != want)
            reject(here + ".table", "expected length " + std::to_string(want) + ", got " +
                                        std::to_string(op["table"].size()));
        std::vector<int> table(want);
        for (std::size_t t = 0; t < want; ++t) {
            int v = require_int(op["table"][t], here + ".table[" + std::to_string(t) + "]");
            if (v < 0 || v >= size)
                reject(here + ".table[" + std::to_string(t) + "]",
                       "entry " + std::to_string(v) + " out of range [0," + std::to_string(size) + ")");
            table[t] = v;
        }
        syms.push_back({sym, arity});
        tables.push_back(std::move(table));
    }
    a.sig = Signature(std::move(syms));
    a.tables = std::move(tables);
    a.validate();
    return a;
}

FiniteAlgebra load_algebra_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::InvalidArgument, "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        fail(ErrorCode::InvalidArgument, path + ": " + e.what());
    }
    return algebra_from_json(j, path);
}

json term_to_json(const Term& t) {
    if (t.is_var()) return {{"var", t.var_index()}};
    json args = json::array();
    for (const Term& c : t.children()) args.push_back(term_to_json(c));
    return {{"op", t.symbol()}, {"args", args}};
}

Term term_from_json(const json& j, const std::string& where) {
    if (!j.is_object()) reject(where, "expected an object");
    if (j.contains("var")) return Term::var(require_int(j["var"], where + ".var"));
    if (!j.contains("op") || !j["op"].is_string()) reject(where + ".op", "expected a string");
    if (!j.contains("args") || !j["args"].is_array()) reject(where + ".args", "expected an array");
    std::vector<Term> children;
    for (std::size_t i = 0; i < j["args"].size(); ++i)
        children.push_back(term_from_json(j["args"][i], where + ".args[" + std::to_string(i) + "]"));
    return Term::app(j["op"].get<std::string>(), std::move(children));
}

json partition_to_json(const Partition& p) {
    return json(p.block_of());
}

Partition partition_from_json(const json& j, int n, const std::string& where) {
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        reject(where, "expected an array of length " + std::to_string(n));
    std::vector<int> block_of(n);
    for (int i = 0; i < n; ++i) block_of[i] = require_int(j[i], where + "[" + std::to_string(i) + "]");
    Partition p(block_of);
    if (p.block_of() != block_of) reject(where, "block ids are not in canonical first-occurrence form");
    return p;
}

std::string dump_canonical(const nlohmann::json& j) {
    return j.dump(2) + "\n";
}

}  // namespace ualg
