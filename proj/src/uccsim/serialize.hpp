#pragma once

#include <string>

#include <json.hpp>

#include "uccsim/agreement.hpp"
#include "uccsim/distribution.hpp"
#include "uccsim/families.hpp"
#include "uccsim/function.hpp"

namespace uccsim {

using Json = nlohmann::ordered_json;

// Documents share the layout {"n": ..., "kind": ..., "payload": ...}. Tables
// are strings of '0'/'1' in index order, index = (x << y_bits) | y.

Json to_json(const OneWayProtocol& protocol);
Json to_json(const BoolFunction& f);
Json to_json(const JointDistribution& mu);
Json to_json(const FamilyPair& pair, double p);

OneWayProtocol protocol_from_json(const Json& doc);
BoolFunction function_from_json(const Json& doc);
JointDistribution distribution_from_json(const Json& doc);

/// Strategy document: {"kind": "identity"}, {"kind": "constant", "value":
/// "0101..."}, {"kind": "nearest_codeword", "codewords": [...]} or
/// {"kind": "table", "outputs": [...]}; words are |Y|-character bitstrings.
/// "codewords": "example" selects the built-in [10, 4] code.
AgreementStrategy strategy_from_json(const Json& doc, int size_y, double delta2);

/// "parity:S=0b101" (n from the digit count unless given), "constant:0|1",
/// "equality", or "file:path.json".
BoolFunction parse_function_spec(const std::string& spec, int n = -1);

/// "product", "noisy:p" or "file:path.json" over {0,1}^n x {0,1}^n.
JointDistribution parse_mu_spec(const std::string& spec, int n);

/// "0b101" as a mask (digits read most significant first) and its length.
std::pair<std::uint64_t, int> parse_mask(const std::string& text);

Json read_json_file(const std::string& path);

}  // namespace uccsim
