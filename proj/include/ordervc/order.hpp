#pragma once

// Relation algebra for orders on the labeled vertex set {1, ..., n}.
//
// Relations are stored as adjacency bit rows: bit (b - 1) of row (a - 1) is set
// iff a -> b (for graphs) or a < b (for orders). All public labels are 1-based.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace ordervc {

inline constexpr int kMaxVertices = 64;

using Row = std::uint64_t;

struct Edge {
  int tail = 0;
  int head = 0;

  auto operator<=>(const Edge&) const = default;
};

class DirectedGraph {
 public:
  // Empty graph on n vertices.
  explicit DirectedGraph(int n);

  // Duplicates collapse. Throws kOutOfRange for labels outside 1..n and
  // kSelfLoop for (v, v).
  static DirectedGraph from_edge_list(int n, std::span<const Edge> edges);
  static DirectedGraph from_edge_list(int n, std::initializer_list<Edge> edges) {
    return from_edge_list(n, std::span<const Edge>(edges.begin(), edges.size()));
  }
  static DirectedGraph from_rows(int n, std::vector<Row> rows);

  int n() const noexcept { return n_; }
  std::span<const Row> rows() const noexcept { return rows_; }
  bool has_edge(int tail, int head) const;
  std::size_t edge_count() const noexcept;
  // Sorted by (tail, head).
  std::vector<Edge> edges() const;

  bool operator==(const DirectedGraph&) const = default;

 private:
  DirectedGraph(int n, std::vector<Row> rows) : n_(n), rows_(std::move(rows)) {}

  int n_;
  std::vector<Row> rows_;
};

// Strict partial order, always transitively closed.
class OrderRelation {
 public:
  // The antichain on n elements.
  explicit OrderRelation(int n);

  // Validates irreflexivity, antisymmetry and transitive closure; throws
  // kInvariantViolation otherwise.
  static OrderRelation from_closed_rows(int n, std::vector<Row> rows);

  int n() const noexcept { return n_; }
  std::span<const Row> rows() const noexcept { return rows_; }
  bool less(int a, int b) const;
  std::size_t relation_count() const noexcept { return count_; }
  bool is_total() const noexcept {
    return count_ == static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_ - 1) / 2;
  }

  // All pairs a < b, sorted by (a, b).
  std::vector<Edge> edges() const;
  // Covering pairs only (the Hasse diagram); closes back to *this.
  std::vector<Edge> cover_edges() const;
  DirectedGraph as_graph() const;

  // Row-major cell bits, cell (a, b) at bit (a-1)*n + (b-1). Requires n <= 8.
  std::uint64_t cell_key() const;

  bool operator==(const OrderRelation& other) const {
    return n_ == other.n_ && rows_ == other.rows_;
  }

 private:
  OrderRelation(int n, std::vector<Row> rows, std::size_t count)
      : n_(n), rows_(std::move(rows)), count_(count) {}

  friend OrderRelation transitive_closure(const DirectedGraph& g);

  int n_;
  std::vector<Row> rows_;
  std::size_t count_ = 0;
};

struct OrderRelationHash {
  std::size_t operator()(const OrderRelation& r) const noexcept;
};

// A permutation read as a linear order: sequence()[0] is the smallest element.
class TotalOrder {
 public:
  // Throws kOutOfRange / kInvariantViolation unless seq is a permutation of 1..n.
  static TotalOrder from_sequence(std::vector<int> seq);
  // Throws kInvariantViolation if the relation is not total.
  static TotalOrder from_relation(const OrderRelation& relation);

  int n() const noexcept { return static_cast<int>(seq_.size()); }
  const std::vector<int>& sequence() const noexcept { return seq_; }
  // 0-based rank of a label.
  int position(int label) const;
  bool before(int a, int b) const { return position(a) < position(b); }
  const OrderRelation& relation() const noexcept { return relation_; }

  bool operator==(const TotalOrder& other) const { return seq_ == other.seq_; }

 private:
  TotalOrder(std::vector<int> seq, std::vector<int> pos, OrderRelation relation)
      : seq_(std::move(seq)), pos_(std::move(pos)), relation_(std::move(relation)) {}

  std::vector<int> seq_;
  std::vector<int> pos_;
  OrderRelation relation_;
};

bool is_acyclic(const DirectedGraph& g);

// Throws kCyclicInput when g has a directed cycle.
OrderRelation transitive_closure(const DirectedGraph& g);

// Edge union of the two strict relations, before closure. Throws kSizeMismatch.
DirectedGraph relation_union(const OrderRelation& a, const OrderRelation& b);

// True iff the union of a and b is acyclic, i.e. some order refines both.
bool compatible(const OrderRelation& a, const OrderRelation& b);

// Kahn's algorithm emitting the smallest available label first.
TotalOrder topological_sort(const DirectedGraph& g);
// Same, but ties among available vertices are broken uniformly at random.
TotalOrder topological_sort(const DirectedGraph& g, std::mt19937_64& rng);

// True iff t places e.head before e.tail.
bool contradicts(const TotalOrder& t, const Edge& e);

}  // namespace ordervc
