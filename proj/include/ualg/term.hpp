#pragma once

#include <string>
#include <vector>

namespace ualg {

// Ordered term tree over a signature plus variables.  A term is either a
// variable x0, x1, ... or an application of a named symbol to child terms.
class Term {
public:
    Term() = default;

    static Term var(int index);
    static Term app(std::string symbol, std::vector<Term> children);

    bool is_var() const { return var_ >= 0; }
    int var_index() const { return var_; }
    const std::string& symbol() const { return symbol_; }
    const std::vector<Term>& children() const { return children_; }

    // Largest variable index occurring in the term, -1 if none.
    int max_var() const;

    // Prefix form with explicit variable indices, e.g. "or(and(x0,x1),x2)".
    // Nullary symbols print bare, e.g. "one".
    std::string to_string() const;

    bool operator==(const Term& other) const;
    bool operator!=(const Term& other) const { return !(*this == other); }

private:
    int var_ = -1;
    std::string symbol_;
    std::vector<Term> children_;
};

// Substitutes args[i] for variable i.  Every variable of t must be < args.size().
Term subst(const Term& t, const std::vector<Term>& args);

}  // namespace ualg
