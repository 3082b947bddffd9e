#pragma once

#include <string>

#include "json.hpp"

#include "ualg/algebra.hpp"
#include "ualg/partition.hpp"
#include "ualg/term.hpp"

namespace ualg {

// Algebra file format:
//   {"name": str, "size": int,
//    "operations": [{"symbol": str, "arity": int, "table": [int, ...]}, ...]}
// Tables are flat, row-major with the leftmost argument varying slowest.
// The loader validates every invariant and reports positional errors; unknown
// extra keys are ignored.
nlohmann::json algebra_to_json(const FiniteAlgebra& a);
FiniteAlgebra algebra_from_json(const nlohmann::json& j, const std::string& where);
FiniteAlgebra load_algebra_file(const std::string& path);

// Term JSON: {"var": int} or {"op": str, "args": [...]}.
nlohmann::json term_to_json(const Term& t);
Term term_from_json(const nlohmann::json& j, const std::string& where);

// Partition JSON form is the bare block_of array.
nlohmann::json partition_to_json(const Partition& p);
Partition partition_from_json(const nlohmann::json& j, int n, const std::string& where);

// Canonical serialization used everywhere a document leaves the library:
// two-space indent, sorted keys (nlohmann objects are ordered maps), and a
// trailing newline.  Byte-identical across runs for identical inputs.
std::string dump_canonical(const nlohmann::json& j);

}  // namespace ualg
