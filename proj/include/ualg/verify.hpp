#pragma once

#include <string>

#include "json.hpp"

#include "ualg/algebra.hpp"

namespace ualg {

struct VerifyResult {
    bool ok = false;
    std::string detail;
};

// Independent re-verification of a certificate document.  Explicit witnesses
// (maps, partitions, terms, elements) are checked directly against the
// definitions; universal verdicts (Epic, Exhausted, NoTerm, Inconclusive) are
// replayed deterministically from the embedded context and bounds.  The
// checker never trusts the search that produced the document.
VerifyResult verify_certificate(const nlohmann::json& doc, Limits limits = {});

}  // namespace ualg
