#include "ualg/term.hpp"

#include <algorithm>

#include "ualg/errors.hpp"

namespace ualg {

Term Term::var(int index) {
    if (index < 0) fail(ErrorCode::VariableOutOfRange, "variable index must be nonnegative");
    Term t;
    t.var_ = index;
    return t;
}

Term Term::app(std::string symbol, std::vector<Term> children) {
    if (symbol.empty()) fail(ErrorCode::UnknownSymbol, "empty symbol name in term");
    Term t;
    t.symbol_ = std::move(symbol);
    t.children_ = std::move(children);
    return t;
}

int Term::max_var() const {
    if (is_var()) return var_;
    int m = -1;
    for (const Term& c : children_) m = std::max(m, c.max_var());
    return m;
}

std::string Term::to_string() const {
    if (is_var()) return "x" + std::to_string(var_);
    if (children_.empty()) return symbol_;
    std::string out = symbol_;
    out += '(';
    for (std::size_t i = 0; i < children_.size(); ++i) {
        if (i > 0) out += ',';
        out += children_[i].to_string();
    }
    out += ')';
    return out;
}

bool Term::operator==(const Term& other) const {
    if (var_ != other.var_) return false;
    if (is_var()) return true;
    return symbol_ == other.symbol_ && children_ == other.children_;
}

Term subst(const Term& t, const std::vector<Term>& args) {
    if (t.is_var()) {
        if (t.var_index() >= static_cast<int>(args.size()))
            fail(ErrorCode::VariableOutOfRange,
                 "substitution has no entry for x" + std::to_string(t.var_index()));
        return args[t.var_index()];
    }
    std::vector<Term> children;
    children.reserve(t.children().size());
    for (const Term& c : t.children()) children.push_back(subst(c, args));
    return Term::app(t.symbol(), std::move(children));
}

}  // namespace ualg
