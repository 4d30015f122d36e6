#include "ordervc/io.hpp"

#include <fstream>
#include <sstream>

#include "ordervc/error.hpp"

namespace ordervc {
namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::kParseError, what); }

int read_label(const Json& j) {
  if (!j.is_number_integer()) parse_error("labels must be integers");
  return j.get<int>();
}

int read_n(const Json& j) {
  if (!j.is_object()) parse_error("order must be a JSON object");
  const auto it = j.find("n");
  if (it == j.end() || !it->is_number_integer()) parse_error("order needs an integer \"n\"");
  const auto n = it->get<long long>();
  if (n < 1 || n > kMaxVertices) {
    throw Error(ErrorCode::kInvariantViolation, "n = " + std::to_string(n) + " is out of range");
  }
  return static_cast<int>(n);
}

// Re-raises order-core errors on input data as invariant violations.
template <class Fn>
auto as_invariant(Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseError) throw;
    throw Error(ErrorCode::kInvariantViolation, e.what());
  }
}

Json parts_json(const ConstructionFamily& family) {
  Json parts = Json::array();
  for (const auto& part : family.parts) {
    Json edges = Json::array();
    for (const Edge& e : part.edges()) edges.push_back({e.tail, e.head});
    parts.push_back(std::move(edges));
  }
  return parts;
}

}  // namespace

Json order_to_json(const OrderRelation& order) {
  if (order.is_total() && order.n() > 1) return order_to_json(TotalOrder::from_relation(order));
  Json relations = Json::array();
  for (const Edge& e : order.cover_edges()) relations.push_back({e.tail, e.head});
  return {{"n", order.n()}, {"relations", std::move(relations)}};
}

Json order_to_json(const TotalOrder& order) { return {{"n", order.n()}, {"seq", order.sequence()}}; }

OrderRelation order_from_json(const Json& j) {
  const int n = read_n(j);
  const bool has_relations = j.contains("relations");
  const bool has_seq = j.contains("seq");
  if (has_relations == has_seq) parse_error("order needs exactly one of \"relations\" or \"seq\"");
  for (const auto& [key, value] : j.items()) {
    if (key != "n" && key != "relations" && key != "seq") parse_error("unknown order key \"" + key + "\"");
  }
  if (has_seq) {
    const Json& seq = j.at("seq");
    if (!seq.is_array()) parse_error("\"seq\" must be an array");
    std::vector<int> labels;
    for (const auto& v : seq) labels.push_back(read_label(v));
    if (static_cast<int>(labels.size()) != n) {
      throw Error(ErrorCode::kInvariantViolation, "\"seq\" length differs from n");
    }
    return as_invariant([&] { return TotalOrder::from_sequence(labels).relation(); });
  }
  const Json& rel = j.at("relations");
  if (!rel.is_array()) parse_error("\"relations\" must be an array");
  std::vector<Edge> edges;
  for (const auto& pair : rel) {
    if (!pair.is_array() || pair.size() != 2) parse_error("each relation must be a pair [a, b]");
    edges.push_back({read_label(pair[0]), read_label(pair[1])});
  }
  return as_invariant(
      [&] { return transitive_closure(DirectedGraph::from_edge_list(n, edges)); });
}

OrderRelation parse_order(std::string_view text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) parse_error("malformed JSON");
  return order_from_json(j);
}

Json certificate_to_json(const ShatterCertificate& cert) {
  Json ground = Json::array();
  for (const auto& g : cert.ground) ground.push_back(order_to_json(g));
  Json witnesses = Json::object();
  for (const auto& [mask, w] : cert.witnesses) witnesses[std::to_string(mask)] = order_to_json(w);
  return {{"n", cert.n}, {"ground", std::move(ground)}, {"witnesses", std::move(witnesses)}};
}

ShatterCertificate certificate_from_json(const Json& j) {
  ShatterCertificate cert;
  cert.n = read_n(j);
  if (!j.contains("ground") || !j.at("ground").is_array()) parse_error("certificate needs a \"ground\" array");
  if (!j.contains("witnesses") || !j.at("witnesses").is_object()) {
    parse_error("certificate needs a \"witnesses\" object");
  }
  for (const auto& g : j.at("ground")) {
    cert.ground.push_back(order_from_json(g));
    if (cert.ground.back().n() != cert.n) {
      throw Error(ErrorCode::kInvariantViolation, "ground order has a different n");
    }
  }
  for (const auto& [key, value] : j.at("witnesses").items()) {
    if (key.empty() || key.find_first_not_of("0123456789") != std::string::npos || key.size() > 19) {
      parse_error("witness key \"" + key + "\" is not a decimal mask");
    }
    const Mask mask = std::stoull(key);
    OrderRelation w = order_from_json(value);
    if (w.n() != cert.n) throw Error(ErrorCode::kInvariantViolation, "witness has a different n");
    if (!cert.witnesses.emplace(mask, std::move(w)).second) parse_error("duplicate witness mask");
  }
  return cert;
}

std::vector<TotalOrder> total_orders_from_json(const Json& j) {
  const Json* list = &j;
  std::optional<int> n;
  if (j.is_object()) {
    n = read_n(j);
    if (!j.contains("orders")) parse_error("order set needs an \"orders\" array");
    list = &j.at("orders");
  }
  if (!list->is_array()) parse_error("order set must be an array");
  std::vector<TotalOrder> out;
  for (const auto& item : *list) {
    const OrderRelation r = order_from_json(item);
    if (n && r.n() != *n) throw Error(ErrorCode::kInvariantViolation, "order has a different n");
    if (!r.is_total()) throw Error(ErrorCode::kInvariantViolation, "order set member is not total");
    out.push_back(TotalOrder::from_relation(r));
  }
  return out;
}

Json construction_to_json(const ConstructionFamily& family) {
  Json j = {{"n", family.n},
            {"which", std::string(to_string(family.kind))},
            {"k", family.k},
            {"vertices", family.vertex_names},
            {"parts", parts_json(family)}};
  if (family.kind == ConstructionKind::kBipartite) {
    Json orders = Json::array();
    for (const auto& t : bipartite_shattered_set(family.n).orders) orders.push_back(order_to_json(t));
    j["orders"] = std::move(orders);
  }
  return j;
}

std::string construction_to_dot(const ConstructionFamily& family) {
  std::ostringstream out;
  const char* prefix = family.kind == ConstructionKind::kFan ? "H" : "G";
  out << "digraph " << to_string(family.kind) << " {\n";
  out << "  rankdir=LR;\n";
  for (int v = 1; v <= family.n; ++v) {
    out << "  " << v << " [label=\"" << family.vertex_names[v - 1] << "\"];\n";
  }
  for (std::size_t i = 0; i < family.parts.size(); ++i) {
    out << "  // part " << prefix << "_" << (i + 1);
    if (family.kind == ConstructionKind::kBipartite) {
      out << " (" << family.pairs[i].first << ", " << family.pairs[i].second << ")";
    }
    out << "\n";
    for (const Edge& e : family.parts[i].edges()) {
      out << "  " << e.tail << " -> " << e.head << " [label=\"" << prefix << (i + 1) << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path.string());
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) parse_error("malformed JSON in " + path.string());
  return j;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path);
  if (!out) parse_error("cannot write " + path.string());
  out << text;
  if (!out) parse_error("failed writing " + path.string());
}

void save_order(const std::filesystem::path& path, const OrderRelation& order) {
  write_text_file(path, order_to_json(order).dump() + "\n");
}

OrderRelation load_order(const std::filesystem::path& path) { return order_from_json(read_json_file(path)); }

void save_certificate(const std::filesystem::path& path, const ShatterCertificate& cert) {
  write_text_file(path, certificate_to_json(cert).dump(2) + "\n");
}

ShatterCertificate load_certificate(const std::filesystem::path& path) {
  return certificate_from_json(read_json_file(path));
}

}  // namespace ordervc
