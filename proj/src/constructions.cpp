#include "ordervc/constructions.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <thread>

#include "ordervc/error.hpp"

namespace ordervc {
namespace {

Mask part_mask(std::size_t parts) { return parts >= 64 ? ~Mask{0} : (Mask{1} << parts) - 1; }

bool selected_bit(Mask selected, std::size_t i) { return ((selected >> i) & 1U) != 0; }

Edge reversed(const Edge& e) { return {e.head, e.tail}; }

// Per selected part, the index (into part.edges()) of the edge to reverse.
using Choice = std::vector<std::pair<std::size_t, Edge>>;

DirectedGraph apply_choice(const ConstructionFamily& family, Mask selected, const Choice& choice,
                           std::vector<Edge>* flipped) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < family.parts.size(); ++i) {
    if (!selected_bit(selected, i)) {
      const auto part = family.parts[i].edges();
      edges.insert(edges.end(), part.begin(), part.end());
    }
  }
  if (flipped) flipped->clear();
  for (const auto& [part, edge] : choice) {
    edges.push_back(reversed(edge));
    if (flipped) flipped->push_back(reversed(edge));
  }
  return DirectedGraph::from_edge_list(family.n, edges);
}

int chain_u(int i) { return i; }
int chain_v(int k, int j) { return (k + 2) + (j - 2); }

// Edge to reverse for each selected part under the stated rules.
Choice literal_choice(const ConstructionFamily& family, Mask selected) {
  Choice choice;
  const int n = family.n;
  if (family.kind == ConstructionKind::kFan) {
    const std::size_t paths = static_cast<std::size_t>(n - 3);
    for (std::size_t idx = 0; idx < family.parts.size(); ++idx) {
      if (!selected_bit(selected, idx)) continue;
      if (idx < paths) {
        const int w = static_cast<int>(idx) + 4;
        // Partner single edge selected: reverse w1 wi, else reverse wi w2.
        const bool partner = selected_bit(selected, idx + paths);
        choice.emplace_back(idx, partner ? Edge{1, w} : Edge{w, 2});
      } else {
        choice.emplace_back(idx, family.parts[idx].edges().front());
      }
    }
    return choice;
  }

  const int k = family.k;
  bool chain_selected = false;
  for (int i = 1; i <= k - 1; ++i) chain_selected = chain_selected || selected_bit(selected, i);
  for (std::size_t idx = 0; idx < family.parts.size(); ++idx) {
    if (!selected_bit(selected, idx)) continue;
    const int i = static_cast<int>(idx);
    if (i == 0) {
      choice.emplace_back(idx, chain_selected ? Edge{chain_u(2), chain_u(k + 2)}
                                              : Edge{chain_u(1), chain_u(2)});
    } else if (i == k) {
      choice.emplace_back(idx, chain_selected ? Edge{chain_u(1), chain_u(k + 1)}
                                              : Edge{chain_u(k + 1), chain_u(k + 2)});
    } else if (i >= k + 1 && i <= 2 * k - 2) {
      // Detour through vj handled like the fan, with u1, u(k+2), uj in the
      // roles of w1, w2, w3.
      const int j = i - k + 2;
      const std::size_t partner = static_cast<std::size_t>(2 * k - 1 + (j - 3));
      const int v = chain_v(k, j);
      choice.emplace_back(idx, selected_bit(selected, partner) ? Edge{chain_u(1), v}
                                                               : Edge{v, chain_u(k + 2)});
    } else {
      choice.emplace_back(idx, family.parts[idx].edges().front());
    }
  }
  return choice;
}

std::optional<Choice> brute_force_choice(const ConstructionFamily& family, Mask selected) {
  std::vector<std::size_t> chosen_parts;
  for (std::size_t i = 0; i < family.parts.size(); ++i) {
    if (selected_bit(selected, i)) chosen_parts.push_back(i);
  }
  std::vector<std::vector<Edge>> options;
  for (std::size_t p : chosen_parts) options.push_back(family.parts[p].edges());
  std::vector<std::size_t> digit(chosen_parts.size(), 0);
  while (true) {
    Choice choice;
    for (std::size_t d = 0; d < digit.size(); ++d) {
      choice.emplace_back(chosen_parts[d], options[d][digit[d]]);
    }
    if (is_acyclic(apply_choice(family, selected, choice, nullptr))) return choice;
    std::size_t d = 0;
    while (d < digit.size() && ++digit[d] == options[d].size()) digit[d++] = 0;
    if (d == digit.size()) return std::nullopt;
  }
}

void require_small_enough(int n, const char* what) {
  if (n < 4) throw Error(ErrorCode::kTooSmall, std::string(what) + " requires n >= 4");
}

std::vector<std::string> numeric_names(int n) {
  std::vector<std::string> names;
  for (int v = 1; v <= n; ++v) names.push_back(std::to_string(v));
  return names;
}

BipartiteSet build_bipartite_set(int n, std::mt19937_64* rng) {
  BipartiteSet out{bipartite_family(n), {}};
  std::vector<Edge> forward;
  for (const auto& [i, j] : out.family.pairs) forward.push_back({i, j});
  for (std::size_t p = 0; p < forward.size(); ++p) {
    std::vector<Edge> edges = forward;
    edges[p] = reversed(forward[p]);
    const auto g = DirectedGraph::from_edge_list(n, edges);
    out.orders.push_back(rng ? topological_sort(g, *rng) : topological_sort(g));
  }
  return out;
}

bool reaches(const std::vector<Row>& reach, int from, int to) {
  return ((reach[from - 1] >> (to - 1)) & 1U) != 0;
}

}  // namespace

std::string_view to_string(ConstructionKind kind) {
  switch (kind) {
    case ConstructionKind::kBipartite: return "thm1";
    case ConstructionKind::kChain: return "thm2g";
    case ConstructionKind::kFan: return "thm2h";
  }
  return "unknown";
}

FlipRule parse_flip_rule(std::string_view text) {
  if (text == "literal") return FlipRule::kLiteral;
  if (text == "repaired") return FlipRule::kRepaired;
  throw Error(ErrorCode::kParseError, "unknown flip rule '" + std::string(text) + "'");
}

std::string_view to_string(FlipRule rule) {
  return rule == FlipRule::kLiteral ? "literal" : "repaired";
}

std::vector<OrderRelation> ConstructionFamily::closed_parts() const {
  std::vector<OrderRelation> out;
  out.reserve(parts.size());
  for (const auto& p : parts) out.push_back(transitive_closure(p));
  return out;
}

DirectedGraph ConstructionFamily::union_graph() const {
  std::vector<Edge> edges;
  for (const auto& p : parts) {
    const auto e = p.edges();
    edges.insert(edges.end(), e.begin(), e.end());
  }
  return DirectedGraph::from_edge_list(n, edges);
}

// ---------------------------------------------------------------------------
// Bipartite family

ConstructionFamily bipartite_family(int n) {
  require_small_enough(n, "bipartite construction");
  ConstructionFamily family;
  family.n = n;
  family.kind = ConstructionKind::kBipartite;
  family.k = n / 2;
  family.vertex_names = numeric_names(n);
  for (int i = 1; i <= family.k; ++i) {
    for (int j = family.k + 1; j <= n; ++j) {
      family.pairs.emplace_back(i, j);
      family.parts.push_back(DirectedGraph::from_edge_list(n, {Edge{i, j}}));
    }
  }
  return family;
}

BipartiteSet bipartite_shattered_set(int n) { return build_bipartite_set(n, nullptr); }

BipartiteSet bipartite_shattered_set(int n, std::mt19937_64& rng) {
  return build_bipartite_set(n, &rng);
}

OrderRelation bipartite_witness(int n, std::span<const std::pair<int, int>> chosen) {
  require_small_enough(n, "bipartite construction");
  const int k = n / 2;
  std::vector<Edge> edges;
  for (const auto& [i, j] : chosen) {
    if (i < 1 || i > k || j <= k || j > n) {
      throw Error(ErrorCode::kOutOfRange, "pair (" + std::to_string(i) + ", " + std::to_string(j) +
                                              ") is not a cross pair");
    }
    edges.push_back({i, j});
  }
  return transitive_closure(DirectedGraph::from_edge_list(n, edges));
}

OrderRelation bipartite_witness(const ConstructionFamily& family, Mask selected) {
  if (family.kind != ConstructionKind::kBipartite) {
    throw Error(ErrorCode::kInvariantViolation, "not a bipartite family");
  }
  if ((selected & ~part_mask(family.pairs.size())) != 0) {
    throw Error(ErrorCode::kOutOfRange, "selection refers to a missing pair");
  }
  std::vector<std::pair<int, int>> chosen;
  for (std::size_t p = 0; p < family.pairs.size(); ++p) {
    if (selected_bit(selected, p)) chosen.push_back(family.pairs[p]);
  }
  return bipartite_witness(family.n, chosen);
}

// ---------------------------------------------------------------------------
// Fan and chain families

ConstructionFamily fan_family(int n) {
  ConstructionFamily family;
  family.n = n;
  family.kind = ConstructionKind::kFan;
  for (int v = 1; v <= n; ++v) family.vertex_names.push_back("w" + std::to_string(v));
  if (n < 4) return family;
  for (int w = 4; w <= n; ++w) {
    family.parts.push_back(DirectedGraph::from_edge_list(n, {Edge{1, w}, Edge{w, 2}}));
  }
  for (int w = 4; w <= n; ++w) {
    family.parts.push_back(DirectedGraph::from_edge_list(n, {Edge{3, w}}));
  }
  return family;
}

ConstructionFamily chain_family(int n) {
  ConstructionFamily family;
  family.n = n;
  family.kind = ConstructionKind::kChain;
  family.k = n / 2;
  const int k = family.k;
  family.vertex_names.resize(n);
  for (int i = 1; i <= k + 2 && i <= n; ++i) family.vertex_names[chain_u(i) - 1] = "u" + std::to_string(i);
  for (int j = 3; j <= k; ++j) family.vertex_names[chain_v(k, j) - 1] = "v" + std::to_string(j);
  if (n % 2 == 1) family.vertex_names[n - 1] = "z";
  for (int v = 0; v < n; ++v) {
    if (family.vertex_names[v].empty()) family.vertex_names[v] = "z";
  }
  if (n < 4) return family;

  const auto u = chain_u;
  family.parts.push_back(DirectedGraph::from_edge_list(n, {Edge{u(1), u(2)}, Edge{u(2), u(k + 2)}}));
  for (int i = 2; i <= k; ++i) {
    family.parts.push_back(DirectedGraph::from_edge_list(n, {Edge{u(i), u(i + 1)}}));
  }
  family.parts.push_back(
      DirectedGraph::from_edge_list(n, {Edge{u(1), u(k + 1)}, Edge{u(k + 1), u(k + 2)}}));
  for (int j = 3; j <= k; ++j) {
    const int v = chain_v(k, j);
    family.parts.push_back(DirectedGraph::from_edge_list(n, {Edge{u(1), v}, Edge{v, u(k + 2)}}));
  }
  for (int j = 3; j <= k; ++j) {
    family.parts.push_back(DirectedGraph::from_edge_list(n, {Edge{u(j), chain_v(k, j)}}));
  }
  return family;
}

FlipWitness flip_witness(const ConstructionFamily& family, Mask selected, FlipRule rule) {
  if (family.kind == ConstructionKind::kBipartite) {
    throw Error(ErrorCode::kInvariantViolation, "flip witnesses apply to fan and chain families");
  }
  if ((selected & ~part_mask(family.parts.size())) != 0) {
    throw Error(ErrorCode::kOutOfRange, "selection refers to a missing part");
  }
  Choice choice = literal_choice(family, selected);
  std::vector<Edge> flipped;
  DirectedGraph graph = apply_choice(family, selected, choice, &flipped);
  bool fallback = false;

  if (!is_acyclic(graph) && rule == FlipRule::kRepaired && family.kind == ConstructionKind::kChain) {
    const std::size_t bypass[2] = {0, static_cast<std::size_t>(family.k)};
    for (int combo = 1; combo < 4 && !is_acyclic(graph); ++combo) {
      Choice retry = choice;
      for (auto& [part, edge] : retry) {
        for (int b = 0; b < 2; ++b) {
          if (part == bypass[b] && ((combo >> b) & 1) != 0) {
            const auto edges = family.parts[part].edges();
            edge = edges[0] == edge ? edges[1] : edges[0];
          }
        }
      }
      graph = apply_choice(family, selected, retry, &flipped);
    }
  }
  if (!is_acyclic(graph)) {
    auto found = brute_force_choice(family, selected);
    if (!found) {
      throw Error(ErrorCode::kStrategyFailure,
                  "no edge choice yields an acyclic graph for selection " + std::to_string(selected));
    }
    graph = apply_choice(family, selected, *found, &flipped);
    fallback = true;
  }
  TotalOrder order = topological_sort(graph);
  return FlipWitness{std::move(graph), std::move(order), std::move(flipped), fallback};
}

// ---------------------------------------------------------------------------
// Property verification

StarReport verify_property_star(const ConstructionFamily& family, const StarOptions& options) {
  StarReport report;
  report.parts = family.parts.size();
  if (options.exhaustive && report.parts > kMaxExhaustiveParts) {
    throw Error(ErrorCode::kCapExceeded, "exhaustive verification is limited to 20 parts");
  }
  if (report.parts > kMaxTraceWidth) {
    throw Error(ErrorCode::kCapExceeded, "families are limited to 64 parts");
  }

  std::vector<OrderRelation> ground;
  if (family.kind == ConstructionKind::kBipartite) {
    std::optional<std::mt19937_64> rng;
    if (options.tie_break_seed) rng.emplace(*options.tie_break_seed);
    const BipartiteSet set =
        rng ? bipartite_shattered_set(family.n, *rng) : bipartite_shattered_set(family.n);
    for (const auto& t : set.orders) ground.push_back(t.relation());
  } else {
    ground = family.closed_parts();
  }

  std::vector<Mask> masks;
  const Mask all = part_mask(report.parts);
  if (options.exhaustive) {
    masks.resize(std::size_t{1} << report.parts);
    for (std::size_t m = 0; m < masks.size(); ++m) masks[m] = m;
  } else {
    std::mt19937_64 rng(options.seed);
    masks.resize(options.sample_count);
    for (auto& m : masks) m = rng() & all;
  }

  struct Outcome {
    std::vector<StarFailure> failures;
    std::vector<Mask> fallbacks;
  };
  auto check_range = [&](std::size_t lo, std::size_t hi) {
    Outcome out;
    for (std::size_t i = lo; i < hi; ++i) {
      const Mask m = masks[i];
      try {
        OrderRelation witness{family.n};
        if (family.kind == ConstructionKind::kBipartite) {
          witness = bipartite_witness(family, m);
        } else {
          FlipWitness fw = flip_witness(family, m, options.rule);
          if (fw.used_fallback) out.fallbacks.push_back(m);
          if (!is_acyclic(fw.graph)) {
            out.failures.push_back({m, "flipped graph is cyclic"});
            continue;
          }
          witness = fw.order.relation();
        }
        const Mask t = trace(witness, ground);
        if (t != (~m & all)) {
          out.failures.push_back({m, "trace " + std::to_string(t) + " is not the complement"});
        }
      } catch (const Error& e) {
        out.failures.push_back({m, e.what()});
      }
    }
    return out;
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, 64));
  std::vector<Outcome> outcomes(threads);
  if (threads == 1) {
    outcomes[0] = check_range(0, masks.size());
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        outcomes[t] = check_range(masks.size() * t / threads, masks.size() * (t + 1) / threads);
      });
    }
    for (auto& th : pool) th.join();
  }
  report.tested = masks.size();
  std::vector<Mask> fallbacks;
  for (auto& o : outcomes) {
    report.failures.insert(report.failures.end(), o.failures.begin(), o.failures.end());
    fallbacks.insert(fallbacks.end(), o.fallbacks.begin(), o.fallbacks.end());
  }
  std::stable_sort(report.failures.begin(), report.failures.end(),
                   [](const StarFailure& a, const StarFailure& b) { return a.selected < b.selected; });
  report.fallbacks = fallbacks.size();
  if (!fallbacks.empty()) report.first_fallback = *std::min_element(fallbacks.begin(), fallbacks.end());
  return report;
}

// ---------------------------------------------------------------------------
// Upper-bound replay

ProofCheckReport proofcheck_upper_bound(std::span<const TotalOrder> set, const Family& witnesses) {
  if (set.empty()) throw Error(ErrorCode::kTooSmall, "proof check needs a non-empty set");
  const int n = witnesses.n();
  std::vector<OrderRelation> ground;
  for (const auto& t : set) {
    if (t.n() != n) throw Error(ErrorCode::kSizeMismatch, "set and witnesses on different n");
    ground.push_back(t.relation());
  }
  if (!is_shattered(ground, witnesses)) {
    throw Error(ErrorCode::kNotShattered, "the set is not shattered by the witness family");
  }

  ProofCheckReport report;
  report.n = n;
  const Mask all = part_mask(ground.size());
  std::vector<Edge> extracted;
  for (std::size_t a = 0; a < ground.size(); ++a) {
    const Mask wanted = all & ~(Mask{1} << a);
    std::optional<std::size_t> found;
    for (std::size_t w = 0; w < witnesses.size() && !found; ++w) {
      if (trace(witnesses.member_at(w), ground) == wanted) found = w;
    }
    if (!found) throw Error(ErrorCode::kNotShattered, "no witness traces to S minus one element");
    const OrderRelation& witness = witnesses.member_at(*found);
    std::optional<Edge> edge;
    for (const Edge& e : witness.edges()) {
      if (contradicts(set[a], e)) {
        edge = e;
        break;
      }
    }
    if (!edge) {
      throw Error(ErrorCode::kNoContradictionEdge,
                  "witness " + std::to_string(*found) + " has no edge reversed in element " +
                      std::to_string(a));
    }
    report.entries.push_back({a, *found, witness, *edge});
    extracted.push_back(*edge);
  }
  report.edge_graph = DirectedGraph::from_edge_list(n, extracted);
  const DirectedGraph& g = report.edge_graph;

  report.acyclic = is_acyclic(g);

  // reach[a] = vertices reachable from a by a path of length >= 1.
  std::vector<Row> reach(g.rows().begin(), g.rows().end());
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (((reach[i] >> k) & 1U) != 0) reach[i] |= reach[k];
    }
  }
  report.no_parallel_path = true;
  for (const Edge& e : g.edges()) {
    for (int z = 1; z <= n && report.no_parallel_path; ++z) {
      if (z != e.tail && g.has_edge(e.tail, z) && (z == e.head ? false : reaches(reach, z, e.head))) {
        report.no_parallel_path = false;
      }
    }
  }

  std::vector<Row> undirected(n, 0);
  for (const Edge& e : g.edges()) {
    undirected[e.tail - 1] |= Row{1} << (e.head - 1);
    undirected[e.head - 1] |= Row{1} << (e.tail - 1);
  }
  report.triangle_free = true;
  for (int a = 0; a < n && report.triangle_free; ++a) {
    for (Row r = undirected[a]; r != 0; r &= r - 1) {
      const int b = std::countr_zero(r);
      if (b > a && (undirected[a] & undirected[b]) != 0) report.triangle_free = false;
    }
  }

  report.mantel_limit = static_cast<std::size_t>(n) * static_cast<std::size_t>(n) / 4;
  report.mantel_bound = g.edge_count() <= report.mantel_limit;
  report.hypothesis_holds = set.size() >= static_cast<std::size_t>(n) + 1;
  return report;
}

}  // namespace ordervc
