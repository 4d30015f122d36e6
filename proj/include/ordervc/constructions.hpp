#pragma once

// Explicit shattered-set constructions for orders on [n], their witness
// strategies, and a replay of the edge-extraction upper-bound argument.
//
// Three families are provided:
//   bipartite  singleton edges i -> j across the split {1..k} | {k+1..n},
//              k = floor(n/2); the ground set is the total orders A_ij that
//              reverse exactly one of them.
//   fan        paths w1 -> wi -> w2 and edges w3 -> wi for 4 <= i <= n.
//   chain      a chain u1 -> ... -> u(k+2) with two bypasses and detours
//              u1 -> vj -> u(k+2), plus edges uj -> vj.
// For fan and chain, the ground elements are the closures of the parts and
// witnesses are total orders.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ordervc/enumeration.hpp"
#include "ordervc/order.hpp"
#include "ordervc/shattering.hpp"

namespace ordervc {

enum class ConstructionKind { kBipartite, kChain, kFan };

std::string_view to_string(ConstructionKind kind);

struct ConstructionFamily {
  int n = 0;
  ConstructionKind kind = ConstructionKind::kBipartite;
  // floor(n/2) for bipartite and chain; 0 for fan.
  int k = 0;
  std::vector<DirectedGraph> parts;
  // Construction name of each label, indexed by label - 1 ("u1", "v3", "w2", ...).
  std::vector<std::string> vertex_names;
  // Bipartite only: the (i, j) pair behind each part, row-major.
  std::vector<std::pair<int, int>> pairs;

  std::vector<OrderRelation> closed_parts() const;
  DirectedGraph union_graph() const;
};

// kTooSmall for n < 4.
ConstructionFamily bipartite_family(int n);

struct BipartiteSet {
  ConstructionFamily family;
  // A_ij for each pair, in family.pairs order.
  std::vector<TotalOrder> orders;
};

// Each A_ij is the smallest-label-first topological sort of all forward
// cross edges except (i, j), plus j -> i.
BipartiteSet bipartite_shattered_set(int n);
// Same, with random topological tie-breaking.
BipartiteSet bipartite_shattered_set(int n, std::mt19937_64& rng);

// Closure of the forward edges i -> j of the chosen pairs. kTooSmall,
// kOutOfRange for pairs outside the split.
OrderRelation bipartite_witness(int n, std::span<const std::pair<int, int>> chosen);
// Mask bit p selects family.pairs[p].
OrderRelation bipartite_witness(const ConstructionFamily& family, Mask selected);

// 2(n-3) parts for n >= 4, none below.
ConstructionFamily fan_family(int n);
// 3(floor(n/2)-1) parts for n >= 4, none below.
ConstructionFamily chain_family(int n);

enum class FlipRule {
  // The two-case rule for the chain's bypass parts exactly as stated: keyed
  // only on whether some chain edge u2..u(k+1) is selected.
  kLiteral,
  // As kLiteral, but if the result is cyclic the bypass parts' edge choices
  // are retried (4 combinations) before falling back to brute force.
  kRepaired,
};

FlipRule parse_flip_rule(std::string_view text);
std::string_view to_string(FlipRule rule);

struct FlipWitness {
  // One edge reversed per selected part, other edges of selected parts
  // removed, unselected parts intact.
  DirectedGraph graph;
  TotalOrder order;
  // The reversed edges, as they appear in graph.
  std::vector<Edge> flipped;
  // The rule produced a cycle and an exhaustive search over edge choices
  // supplied the graph instead.
  bool used_fallback = false;
};

// Mask bit i selects parts[i]. Requires a fan or chain family (kInvariantViolation
// otherwise); kStrategyFailure if no edge choice at all yields an acyclic graph.
FlipWitness flip_witness(const ConstructionFamily& family, Mask selected,
                         FlipRule rule = FlipRule::kLiteral);

struct StarOptions {
  bool exhaustive = true;
  std::size_t sample_count = 10000;
  std::uint64_t seed = 1;
  FlipRule rule = FlipRule::kLiteral;
  unsigned threads = 1;
  // Bipartite only: random topological tie-breaking for the A_ij.
  std::optional<std::uint64_t> tie_break_seed;
};

struct StarFailure {
  Mask selected = 0;
  std::string reason;
};

struct StarReport {
  std::size_t parts = 0;
  std::size_t tested = 0;
  // Sorted by selected mask.
  std::vector<StarFailure> failures;
  std::size_t fallbacks = 0;
  std::optional<Mask> first_fallback;

  bool clean() const { return failures.empty() && fallbacks == 0; }
};

inline constexpr std::size_t kMaxExhaustiveParts = 20;

// For each tested subset of parts, builds the witness and checks that it is
// acyclic and that its trace over the ground list is exactly the complement
// of the subset. kCapExceeded if exhaustive with more than 20 parts.
StarReport verify_property_star(const ConstructionFamily& family, const StarOptions& options = {});

struct ContradictionEntry {
  std::size_t ground_index = 0;
  // Index in the witness family of the first witness tracing to S minus A.
  std::size_t witness_index = 0;
  OrderRelation witness{1};
  // Smallest (tail, head) pair of the witness reversed in A.
  Edge edge;
};

struct ProofCheckReport {
  int n = 0;
  std::vector<ContradictionEntry> entries;
  DirectedGraph edge_graph{1};
  bool acyclic = false;
  bool no_parallel_path = false;
  bool triangle_free = false;
  bool mantel_bound = false;
  std::size_t mantel_limit = 0;
  // |S| >= n + 1, under which the argument guarantees all checks.
  bool hypothesis_holds = false;

  bool all_checks() const { return acyclic && no_parallel_path && triangle_free && mantel_bound; }
};

// kTooSmall for an empty set, kNotShattered if witnesses do not shatter it,
// kNoContradictionEdge if a witness has no edge reversed in its order.
ProofCheckReport proofcheck_upper_bound(std::span<const TotalOrder> set, const Family& witnesses);

}  // namespace ordervc
