#include "ordervc/order.hpp"

#include <bit>
#include <string>

#include "ordervc/error.hpp"

namespace ordervc {
namespace {

Row vertex_mask(int n) { return n >= 64 ? ~Row{0} : (Row{1} << n) - 1; }

Row bit(int index) { return Row{1} << index; }

void check_size(int n) {
  if (n < 1 || n > kMaxVertices) {
    throw Error(ErrorCode::kOutOfRange,
                "vertex count " + std::to_string(n) + " outside 1.." + std::to_string(kMaxVertices));
  }
}

void check_label(int n, int v) {
  if (v < 1 || v > n) {
    throw Error(ErrorCode::kOutOfRange,
                "label " + std::to_string(v) + " outside 1.." + std::to_string(n));
  }
}

// Repeatedly strips vertices without incoming edges from the remaining set.
bool rows_acyclic(std::span<const Row> rows, int n) {
  Row remaining = vertex_mask(n);
  while (remaining != 0) {
    Row incoming = 0;
    for (Row r = remaining; r != 0; r &= r - 1) {
      incoming |= rows[std::countr_zero(r)];
    }
    const Row sources = remaining & ~incoming;
    if (sources == 0) return false;
    remaining &= ~sources;
  }
  return true;
}

std::vector<Edge> edges_of(std::span<const Row> rows) {
  std::vector<Edge> out;
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (Row r = rows[a]; r != 0; r &= r - 1) {
      out.push_back({static_cast<int>(a) + 1, std::countr_zero(r) + 1});
    }
  }
  return out;
}

std::size_t popcount_rows(std::span<const Row> rows) {
  std::size_t total = 0;
  for (Row r : rows) total += static_cast<std::size_t>(std::popcount(r));
  return total;
}

template <class PickFn>
TotalOrder kahn(const DirectedGraph& g, PickFn&& pick) {
  const int n = g.n();
  const auto rows = g.rows();
  std::vector<int> in_degree(n, 0);
  for (int a = 0; a < n; ++a) {
    for (Row r = rows[a]; r != 0; r &= r - 1) ++in_degree[std::countr_zero(r)];
  }
  Row available = 0;
  for (int v = 0; v < n; ++v) {
    if (in_degree[v] == 0) available |= bit(v);
  }
  std::vector<int> seq;
  seq.reserve(n);
  while (available != 0) {
    const int v = pick(available);
    available &= ~bit(v);
    seq.push_back(v + 1);
    for (Row r = rows[v]; r != 0; r &= r - 1) {
      const int w = std::countr_zero(r);
      if (--in_degree[w] == 0) available |= bit(w);
    }
  }
  if (static_cast<int>(seq.size()) != n) {
    throw Error(ErrorCode::kCyclicInput, "graph has a directed cycle; no topological order");
  }
  return TotalOrder::from_sequence(std::move(seq));
}

}  // namespace

// ---------------------------------------------------------------------------
// DirectedGraph

DirectedGraph::DirectedGraph(int n) : n_(n) {
  check_size(n);
  rows_.assign(n, 0);
}

DirectedGraph DirectedGraph::from_edge_list(int n, std::span<const Edge> edges) {
  DirectedGraph g(n);
  for (const Edge& e : edges) {
    check_label(n, e.tail);
    check_label(n, e.head);
    if (e.tail == e.head) {
      throw Error(ErrorCode::kSelfLoop, "self-loop at vertex " + std::to_string(e.tail));
    }
    g.rows_[e.tail - 1] |= bit(e.head - 1);
  }
  return g;
}

DirectedGraph DirectedGraph::from_rows(int n, std::vector<Row> rows) {
  check_size(n);
  if (rows.size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::kSizeMismatch, "row count does not match vertex count");
  }
  for (int a = 0; a < n; ++a) {
    if ((rows[a] & ~vertex_mask(n)) != 0) throw Error(ErrorCode::kOutOfRange, "edge head beyond n");
    if ((rows[a] & bit(a)) != 0) {
      throw Error(ErrorCode::kSelfLoop, "self-loop at vertex " + std::to_string(a + 1));
    }
  }
  return DirectedGraph(n, std::move(rows));
}

bool DirectedGraph::has_edge(int tail, int head) const {
  check_label(n_, tail);
  check_label(n_, head);
  return (rows_[tail - 1] & bit(head - 1)) != 0;
}

std::size_t DirectedGraph::edge_count() const noexcept { return popcount_rows(rows_); }

std::vector<Edge> DirectedGraph::edges() const { return edges_of(rows_); }

// ---------------------------------------------------------------------------
// OrderRelation

OrderRelation::OrderRelation(int n) : n_(n) {
  check_size(n);
  rows_.assign(n, 0);
}

OrderRelation OrderRelation::from_closed_rows(int n, std::vector<Row> rows) {
  check_size(n);
  if (rows.size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::kSizeMismatch, "row count does not match vertex count");
  }
  for (int a = 0; a < n; ++a) {
    if ((rows[a] & ~vertex_mask(n)) != 0) {
      throw Error(ErrorCode::kInvariantViolation, "relation refers to a label beyond n");
    }
    if ((rows[a] & bit(a)) != 0) {
      throw Error(ErrorCode::kInvariantViolation, "relation is not irreflexive");
    }
  }
  for (int a = 0; a < n; ++a) {
    for (Row r = rows[a]; r != 0; r &= r - 1) {
      const int b = std::countr_zero(r);
      if ((rows[b] & bit(a)) != 0) {
        throw Error(ErrorCode::kInvariantViolation, "relation is not antisymmetric");
      }
      if ((rows[b] & ~rows[a]) != 0) {
        throw Error(ErrorCode::kInvariantViolation, "relation is not transitively closed");
      }
    }
  }
  const std::size_t count = popcount_rows(rows);
  return OrderRelation(n, std::move(rows), count);
}

bool OrderRelation::less(int a, int b) const {
  check_label(n_, a);
  check_label(n_, b);
  return (rows_[a - 1] & bit(b - 1)) != 0;
}

std::vector<Edge> OrderRelation::edges() const { return edges_of(rows_); }

std::vector<Edge> OrderRelation::cover_edges() const {
  std::vector<Row> cover(rows_.size());
  for (std::size_t a = 0; a < rows_.size(); ++a) {
    Row implied = 0;
    for (Row r = rows_[a]; r != 0; r &= r - 1) implied |= rows_[std::countr_zero(r)];
    cover[a] = rows_[a] & ~implied;
  }
  return edges_of(cover);
}

DirectedGraph OrderRelation::as_graph() const { return DirectedGraph::from_rows(n_, rows_); }

std::uint64_t OrderRelation::cell_key() const {
  if (n_ > 8) throw Error(ErrorCode::kCapExceeded, "cell key requires n <= 8");
  std::uint64_t key = 0;
  for (int a = 0; a < n_; ++a) key |= rows_[a] << (a * n_);
  return key;
}

std::size_t OrderRelationHash::operator()(const OrderRelation& r) const noexcept {
  std::size_t h = static_cast<std::size_t>(r.n()) * 0x9e3779b97f4a7c15ULL;
  for (Row row : r.rows()) {
    h ^= std::hash<Row>{}(row) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

// ---------------------------------------------------------------------------
// TotalOrder

TotalOrder TotalOrder::from_sequence(std::vector<int> seq) {
  const int n = static_cast<int>(seq.size());
  check_size(n);
  std::vector<int> pos(n, -1);
  for (int i = 0; i < n; ++i) {
    check_label(n, seq[i]);
    if (pos[seq[i] - 1] != -1) {
      throw Error(ErrorCode::kInvariantViolation,
                  "label " + std::to_string(seq[i]) + " repeated in total order");
    }
    pos[seq[i] - 1] = i;
  }
  std::vector<Row> rows(n, 0);
  Row above = 0;
  for (int i = n - 1; i >= 0; --i) {
    rows[seq[i] - 1] = above;
    above |= bit(seq[i] - 1);
  }
  return TotalOrder(std::move(seq), std::move(pos),
                    OrderRelation::from_closed_rows(n, std::move(rows)));
}

TotalOrder TotalOrder::from_relation(const OrderRelation& relation) {
  if (!relation.is_total()) {
    throw Error(ErrorCode::kInvariantViolation, "relation is not a total order");
  }
  // In a total order the element with i successors sits at rank n - 1 - i.
  const int n = relation.n();
  std::vector<int> seq(n);
  for (int a = 0; a < n; ++a) {
    seq[n - 1 - std::popcount(relation.rows()[a])] = a + 1;
  }
  return from_sequence(std::move(seq));
}

int TotalOrder::position(int label) const {
  check_label(n(), label);
  return pos_[label - 1];
}

// ---------------------------------------------------------------------------
// Operations

bool is_acyclic(const DirectedGraph& g) { return rows_acyclic(g.rows(), g.n()); }

OrderRelation transitive_closure(const DirectedGraph& g) {
  const int n = g.n();
  std::vector<Row> rows(g.rows().begin(), g.rows().end());
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if ((rows[i] & bit(k)) != 0) rows[i] |= rows[k];
    }
  }
  for (int a = 0; a < n; ++a) {
    if ((rows[a] & bit(a)) != 0) {
      throw Error(ErrorCode::kCyclicInput, "vertex " + std::to_string(a + 1) + " lies on a cycle");
    }
  }
  const std::size_t count = popcount_rows(rows);
  return OrderRelation(n, std::move(rows), count);
}

DirectedGraph relation_union(const OrderRelation& a, const OrderRelation& b) {
  if (a.n() != b.n()) throw Error(ErrorCode::kSizeMismatch, "orders on different vertex sets");
  std::vector<Row> rows(a.n());
  for (int i = 0; i < a.n(); ++i) rows[i] = a.rows()[i] | b.rows()[i];
  return DirectedGraph::from_rows(a.n(), std::move(rows));
}

bool compatible(const OrderRelation& a, const OrderRelation& b) {
  if (a.n() != b.n()) throw Error(ErrorCode::kSizeMismatch, "orders on different vertex sets");
  const int n = a.n();
  // Against a total order t, any pair of the other order missing from t is
  // reversed in t and closes a cycle, so compatibility is containment.
  if (a.is_total() || b.is_total()) {
    const auto& total = a.is_total() ? a : b;
    const auto& other = a.is_total() ? b : a;
    for (int i = 0; i < n; ++i) {
      if ((other.rows()[i] & ~total.rows()[i]) != 0) return false;
    }
    return true;
  }
  Row joined[kMaxVertices];
  for (int i = 0; i < n; ++i) joined[i] = a.rows()[i] | b.rows()[i];
  return rows_acyclic(std::span<const Row>(joined, n), n);
}

TotalOrder topological_sort(const DirectedGraph& g) {
  return kahn(g, [](Row available) { return std::countr_zero(available); });
}

TotalOrder topological_sort(const DirectedGraph& g, std::mt19937_64& rng) {
  return kahn(g, [&rng](Row available) {
    std::uniform_int_distribution<int> pick(0, std::popcount(available) - 1);
    for (int skip = pick(rng); skip > 0; --skip) available &= available - 1;
    return std::countr_zero(available);
  });
}

bool contradicts(const TotalOrder& t, const Edge& e) {
  check_label(t.n(), e.tail);
  check_label(t.n(), e.head);
  if (e.tail == e.head) throw Error(ErrorCode::kSelfLoop, "edge endpoints coincide");
  return t.position(e.head) < t.position(e.tail);
}

}  // namespace ordervc
