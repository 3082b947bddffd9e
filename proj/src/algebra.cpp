#include "ualg/algebra.hpp"

#include <algorithm>
#include <set>

namespace ualg {

Signature::Signature(std::vector<OpSym> symbols) : symbols_(std::move(symbols)) {
    std::set<std::string> seen;
    for (const OpSym& s : symbols_) {
        if (s.name.empty()) fail(ErrorCode::InvalidArgument, "signature symbol with empty name");
        if (s.arity < 0) fail(ErrorCode::InvalidArgument, "negative arity for symbol " + s.name);
        if (!seen.insert(s.name).second)
            fail(ErrorCode::InvalidArgument, "duplicate symbol name " + s.name);
    }
}

int Signature::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i)
        if (symbols_[i].name == name) return static_cast<int>(i);
    return -1;
}

int Signature::arity_of(const std::string& name) const {
    int i = index_of(name);
    if (i < 0) fail(ErrorCode::UnknownSymbol, "symbol " + name + " not in signature");
    return symbols_[i].arity;
}

std::size_t checked_pow(std::size_t base, int exp, std::size_t cap) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && r > cap / base)
            fail(ErrorCode::SizeOverflow,
                 "power " + std::to_string(base) + "^" + std::to_string(exp) +
                     " exceeds cap " + std::to_string(cap));
        r *= base;
    }
    if (r > cap)
        fail(ErrorCode::SizeOverflow, "size " + std::to_string(r) + " exceeds cap " + std::to_string(cap));
    return r;
}

int FiniteAlgebra::apply(int op_index, const std::vector<int>& args) const {
    const OpSym& sym = sig.symbols()[op_index];
    if (static_cast<int>(args.size()) != sym.arity)
        fail(ErrorCode::ArityMismatch,
             sym.name + " expects " + std::to_string(sym.arity) + " arguments, got " +
                 std::to_string(args.size()));
    std::size_t idx = 0;
    for (int a : args) idx = idx * static_cast<std::size_t>(size) + static_cast<std::size_t>(a);
    return tables[op_index][idx];
}

void FiniteAlgebra::validate() const {
    if (size <= 0) fail(ErrorCode::InvalidArgument, "algebra " + name + " has nonpositive size");
    if (tables.size() != sig.count())
        fail(ErrorCode::InvalidArgument, "algebra " + name + " table count does not match signature");
    for (std::size_t i = 0; i < tables.size(); ++i) {
        const OpSym& sym = sig.symbols()[i];
        std::size_t want = checked_pow(static_cast<std::size_t>(size), sym.arity, SIZE_MAX);
        if (tables[i].size() != want)
            fail(ErrorCode::InvalidArgument,
                 "algebra " + name + ": table for " + sym.name + " has length " +
                     std::to_string(tables[i].size()) + ", expected " + std::to_string(want));
        for (std::size_t j = 0; j < tables[i].size(); ++j) {
            int v = tables[i][j];
            if (v < 0 || v >= size)
                fail(ErrorCode::InvalidArgument,
                     "algebra " + name + ": " + sym.name + " table entry " + std::to_string(j) +
                         " = " + std::to_string(v) + " out of range [0," + std::to_string(size) + ")");
        }
    }
}

bool Subset::contains(int e) const {
    return std::binary_search(elems.begin(), elems.end(), e);
}

void Subset::validate() const {
    for (std::size_t i = 0; i < elems.size(); ++i) {
        if (elems[i] < 0 || elems[i] >= parent_size)
            fail(ErrorCode::InvalidArgument,
                 "subset element " + std::to_string(elems[i]) + " out of range [0," +
                     std::to_string(parent_size) + ")");
        if (i > 0 && elems[i - 1] >= elems[i])
            fail(ErrorCode::InvalidArgument, "subset elements must be strictly increasing");
    }
}

Subset make_subset(const FiniteAlgebra& a, std::vector<int> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    Subset s{a.name, a.size, std::move(elems)};
    s.validate();
    return s;
}

}  // namespace ualg
