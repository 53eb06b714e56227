#pragma once

#include <json.hpp>

#include "aza/algebra.hpp"
#include "aza/poly.hpp"
#include "aza/ring.hpp"
#include "aza/splittree.hpp"

namespace aza {

using Json = nlohmann::json;

// Parsers raise errc::bad_input with a message naming the offending field by
// its JSON path. Scalars are accepted as decimal strings or JSON integers;
// output always uses decimal strings so values never overflow the reader.

RingPtr ring_from_json(const Json& j);
Elem elem_from_json(const RingPtr& r, const Json& j);
Poly poly_from_json(const RingPtr& r, const Json& j);
AlgebraPtr algebra_from_json(const Json& j);
SplitTree tree_from_json(const Json& j);

Json ring_to_json(const RingPtr& r);
Json elem_to_json(const Elem& e);
Json poly_to_json(const Poly& f);
Json algebra_to_json(const AlgebraPtr& a);
Json tree_to_json(const SplitTree& t);

/// Reads and parses a JSON file, reporting IO and syntax problems as
/// errc::bad_input diagnostics that include the file name.
Json load_json_file(const std::string& path);

}  // namespace aza
