#pragma once

// JSON encodings of orders and certificates, and DOT export of constructions.
//
//   order:        {"n": 4, "relations": [[1, 2], [3, 4]]}   generator edges, closed on load
//   total order:  {"n": 4, "seq": [2, 1, 3, 4]}
//   certificate:  {"n": 3, "ground": [order, ...], "witnesses": {"<mask>": order, ...}}
//
// Loading never repairs input: malformed JSON or schema errors raise
// kParseError, and well-formed input violating an order invariant raises
// kInvariantViolation.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "ordervc/constructions.hpp"
#include "ordervc/order.hpp"
#include "ordervc/shattering.hpp"

namespace ordervc {

using Json = nlohmann::json;

// Total relations are written as "seq", others as their cover edges.
Json order_to_json(const OrderRelation& order);
Json order_to_json(const TotalOrder& order);
OrderRelation order_from_json(const Json& j);
OrderRelation parse_order(std::string_view text);

Json certificate_to_json(const ShatterCertificate& cert);
ShatterCertificate certificate_from_json(const Json& j);

// A JSON array of orders, or an object {"n": K, "orders": [...]}; every
// element must be total.
std::vector<TotalOrder> total_orders_from_json(const Json& j);

Json construction_to_json(const ConstructionFamily& family);
// One comment block and one edge group per part.
std::string construction_to_dot(const ConstructionFamily& family);

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

void save_order(const std::filesystem::path& path, const OrderRelation& order);
OrderRelation load_order(const std::filesystem::path& path);
void save_certificate(const std::filesystem::path& path, const ShatterCertificate& cert);
ShatterCertificate load_certificate(const std::filesystem::path& path);

}  // namespace ordervc
