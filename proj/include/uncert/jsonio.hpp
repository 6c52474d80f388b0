#ifndef UNCERT_JSONIO_HPP
#define UNCERT_JSONIO_HPP

#include <string>

#include <json.hpp>

namespace uncert {

using Json = nlohmann::ordered_json;

/// Formats a double with 17 significant digits (%.17g), enough to round-trip
/// any IEEE double exactly.
std::string format_double(double value);

/// Serializes with ordered keys and 17-significant-digit floats, so repeated
/// runs of a deterministic computation produce byte-identical documents.
std::string dump_json(const Json& j, int indent = 2);

}  // namespace uncert

#endif  // UNCERT_JSONIO_HPP
