#include "ordervc/cli.hpp"

#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "ordervc/constructions.hpp"
#include "ordervc/enumeration.hpp"
#include "ordervc/error.hpp"
#include "ordervc/io.hpp"
#include "ordervc/shattering.hpp"

namespace ordervc::cli {
namespace {

struct Options {
  int n = 0;
  std::string a, b;
  std::string kind = "partial";
  bool count_only = false;
  std::string ground = "total";
  std::string witness = "partial";
  double budget = 0.0;
  std::string emit_cert;
  std::string format = "text";
  std::string which;
  std::string emit_dot, emit_json;
  std::string mode = "exhaustive";
  std::size_t count = 10000;
  std::uint64_t seed = 1;
  std::string rule = "literal";
  std::optional<std::uint64_t> tie_seed;
  std::string set_file;
  std::string cert_file;
  unsigned threads = 0;
};

Family make_family(const std::string& kind, int n) {
  if (kind == "partial") return Family::all_partial(n);
  if (kind == "total") return Family::all_total(n);
  throw Error(ErrorCode::kParseError, "family kind must be partial or total");
}

ConstructionFamily make_construction(const std::string& which, int n) {
  if (which == "thm1") return bipartite_family(n);
  if (which == "thm2g") return chain_family(n);
  if (which == "thm2h") return fan_family(n);
  throw Error(ErrorCode::kParseError, "--which must be thm1, thm2g or thm2h");
}

OrderRelation order_argument(const std::string& text) {
  if (!text.empty() && text.front() == '@') return load_order(text.substr(1));
  return parse_order(text);
}

std::string seq_string(const std::vector<int>& seq) {
  std::string s = "[";
  for (std::size_t i = 0; i < seq.size(); ++i) s += (i ? "," : "") + std::to_string(seq[i]);
  return s + "]";
}

std::string edges_string(const std::vector<Edge>& edges) {
  std::string s = "{";
  for (std::size_t i = 0; i < edges.size(); ++i) {
    s += (i ? "," : "") + std::string("(") + std::to_string(edges[i].tail) + "," +
         std::to_string(edges[i].head) + ")";
  }
  return s + "}";
}

std::string order_string(const OrderRelation& r) {
  if (r.is_total()) return seq_string(TotalOrder::from_relation(r).sequence());
  return edges_string(r.cover_edges());
}

int cmd_compat(const Options& o, std::ostream& out) {
  const OrderRelation a = order_argument(o.a);
  const OrderRelation b = order_argument(o.b);
  out << (compatible(a, b) ? "true" : "false") << "\n";
  return kExitOk;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  if (o.kind == "total") {
    const auto orders = all_total_orders(o.n);
    if (o.count_only) {
      out << orders.size() << "\n";
    } else {
      for (const auto& t : orders) out << order_to_json(t).dump() << "\n";
    }
  } else if (o.kind == "partial") {
    const auto orders = all_partial_orders(o.n);
    if (o.count_only) {
      out << orders.size() << "\n";
    } else {
      for (const auto& r : orders) out << order_to_json(r).dump() << "\n";
    }
  } else {
    throw Error(ErrorCode::kParseError, "--kind must be partial or total");
  }
  return kExitOk;
}

std::string expected_dimension(const Options& o, int n) {
  if (o.ground == "total" && o.witness == "partial") return std::to_string(n == 3 ? 3 : n * n / 4);
  if (o.ground == "total" && o.witness == "total") return n == 1 ? "0" : "1";
  return "-";
}

Json report_json(const Options& o, int n, const VCReport& r) {
  Json levels = Json::array();
  for (const auto& l : r.exhaustion.levels) {
    levels.push_back({{"size", l.size},
                      {"joined", l.joined},
                      {"candidates", l.candidates},
                      {"shattered", l.shattered},
                      {"complete", l.complete}});
  }
  return {{"ground", o.ground},
          {"witness", o.witness},
          {"n", n},
          {"dimension", r.dimension},
          {"ground_indices", r.ground_indices},
          {"search_complete", r.exhaustion.search_complete},
          {"information_bound", r.exhaustion.information_bound},
          {"levels", std::move(levels)}};
}

int cmd_vc(const Options& o, std::ostream& out) {
  SearchOptions search;
  search.budget_seconds = o.budget;
  search.threads = resolve_threads(o.threads);

  if (o.format == "table") {
    bool complete = true;
    out << std::left << std::setw(8) << "case" << std::setw(4) << "n" << std::setw(11) << "dimension"
        << std::setw(10) << "expected" << "complete\n";
    for (int n = 1; n <= o.n; ++n) {
      const auto r = vc_dimension(make_family(o.ground, n), make_family(o.witness, n), search);
      complete = complete && r.exhaustion.search_complete;
      const std::string label = n < 4 ? "n=" + std::to_string(n) : "n>=4";
      out << std::setw(8) << label << std::setw(4) << n << std::setw(11) << r.dimension
          << std::setw(10) << expected_dimension(o, n)
          << (r.exhaustion.search_complete ? "yes" : "no") << "\n";
    }
    return complete ? kExitOk : kExitBudgetTruncated;
  }

  const VCReport r = vc_dimension(make_family(o.ground, o.n), make_family(o.witness, o.n), search);
  if (!o.emit_cert.empty()) save_certificate(o.emit_cert, r.certificate);
  if (o.format == "json") {
    out << report_json(o, o.n, r).dump(2) << "\n";
  } else {
    out << "ground " << o.ground << " witness " << o.witness << " n " << o.n << "\n";
    out << "dimension " << r.dimension << "\n";
    out << "search_complete " << (r.exhaustion.search_complete ? "true" : "false") << "\n";
    out << "information_bound " << (r.exhaustion.information_bound ? "true" : "false") << "\n";
    for (const auto& l : r.exhaustion.levels) {
      out << "level " << l.size << " candidates " << l.candidates << " shattered " << l.shattered
          << (l.complete ? "" : " (truncated)") << "\n";
    }
    out << "certificate";
    for (const auto& g : r.certificate.ground) out << " " << order_string(g);
    out << "\n";
    out << std::fixed << std::setprecision(3) << "elapsed " << r.exhaustion.elapsed_seconds << "s\n";
  }
  return r.exhaustion.search_complete ? kExitOk : kExitBudgetTruncated;
}

int cmd_construct(const Options& o, std::ostream& out) {
  const ConstructionFamily family = make_construction(o.which, o.n);
  out << "construction " << to_string(family.kind) << " n " << family.n << " parts "
      << family.parts.size() << "\n";
  out << "union_acyclic " << (is_acyclic(family.union_graph()) ? "true" : "false") << "\n";
  const char* prefix = family.kind == ConstructionKind::kFan ? "H" : "G";
  for (std::size_t i = 0; i < family.parts.size(); ++i) {
    out << prefix << (i + 1) << " ";
    const auto edges = family.parts[i].edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
      out << (e ? "," : "") << family.vertex_names[edges[e].tail - 1] << "->"
          << family.vertex_names[edges[e].head - 1];
    }
    out << " " << edges_string(edges) << "\n";
  }
  if (family.kind == ConstructionKind::kBipartite) {
    const auto set = bipartite_shattered_set(family.n);
    for (std::size_t p = 0; p < set.orders.size(); ++p) {
      out << "A(" << family.pairs[p].first << "," << family.pairs[p].second << ") "
          << seq_string(set.orders[p].sequence()) << "\n";
    }
  }
  if (!o.emit_dot.empty()) write_text_file(o.emit_dot, construction_to_dot(family));
  if (!o.emit_json.empty()) write_text_file(o.emit_json, construction_to_json(family).dump(2) + "\n");
  return kExitOk;
}

int cmd_verify_star(const Options& o, std::ostream& out) {
  const ConstructionFamily family = make_construction(o.which, o.n);
  StarOptions star;
  if (o.mode == "exhaustive") {
    star.exhaustive = true;
  } else if (o.mode == "sampled") {
    star.exhaustive = false;
    if (o.count < 1) throw Error(ErrorCode::kParseError, "--count must be at least 1");
    star.sample_count = o.count;
    star.seed = o.seed;
  } else {
    throw Error(ErrorCode::kParseError, "--mode must be exhaustive or sampled");
  }
  star.rule = parse_flip_rule(o.rule);
  star.threads = resolve_threads(o.threads);
  star.tie_break_seed = o.tie_seed;
  const StarReport r = verify_property_star(family, star);
  out << "construction " << to_string(family.kind) << " n " << family.n << " parts " << r.parts
      << " mode " << o.mode << " rule " << o.rule << "\n";
  out << "tested " << r.tested << " failures " << r.failures.size() << " fallbacks " << r.fallbacks
      << "\n";
  if (r.first_fallback) out << "first_fallback_selection " << *r.first_fallback << "\n";
  for (std::size_t i = 0; i < r.failures.size() && i < 10; ++i) {
    out << "failure selection " << r.failures[i].selected << ": " << r.failures[i].reason << "\n";
  }
  return r.clean() ? kExitOk : kExitVerificationFailed;
}

int cmd_proofcheck(const Options& o, std::ostream& out) {
  const auto set = total_orders_from_json(read_json_file(o.set_file));
  for (const auto& t : set) {
    if (t.n() != o.n) throw Error(ErrorCode::kSizeMismatch, "set member has n != --n");
  }
  const ProofCheckReport r = proofcheck_upper_bound(set, Family::all_partial(o.n));
  for (const auto& e : r.entries) {
    out << "A" << e.ground_index << " " << seq_string(set[e.ground_index].sequence()) << " witness "
        << e.witness_index << " " << order_string(e.witness) << " edge (" << e.edge.tail << ","
        << e.edge.head << ")\n";
  }
  auto flag = [](bool b) { return b ? "true" : "false"; };
  out << "edges " << r.edge_graph.edge_count() << " limit " << r.mantel_limit << "\n";
  out << "acyclic " << flag(r.acyclic) << "\n";
  out << "no_parallel_path " << flag(r.no_parallel_path) << "\n";
  out << "triangle_free " << flag(r.triangle_free) << "\n";
  out << "mantel_bound " << flag(r.mantel_bound) << "\n";
  out << "hypothesis_size_at_least_n_plus_1 " << flag(r.hypothesis_holds) << "\n";
  return (r.hypothesis_holds && !r.all_checks()) ? kExitVerificationFailed : kExitOk;
}

int cmd_check_cert(const Options& o, std::ostream& out) {
  const ShatterCertificate cert = load_certificate(o.cert_file);
  const CertificateCheck check = verify_certificate(cert);
  if (check) {
    out << "verified size " << cert.ground.size() << " masks " << cert.witnesses.size() << "\n";
    return kExitOk;
  }
  out << "rejected: " << check.detail << "\n";
  return kExitVerificationFailed;
}

}  // namespace

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ORDERVC_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compatibility of partial and total orders: VC-dimension search, constructions "
               "and certificates"};
  app.name("ordervc");
  app.require_subcommand(1);
  Options o;

  auto add_n = [&](CLI::App* sub) {
    sub->add_option("--n", o.n, "number of labeled elements")->required()->check(CLI::PositiveNumber);
  };
  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", o.threads, "worker threads (default: ORDERVC_THREADS or all cores)");
  };

  auto* compat = app.add_subcommand("compat", "test two orders for compatibility");
  compat->add_option("--a", o.a, "order JSON or @file")->required();
  compat->add_option("--b", o.b, "order JSON or @file")->required();

  auto* enumerate = app.add_subcommand("enumerate", "list every partial or total order on [n]");
  enumerate->add_option("--kind", o.kind)->check(CLI::IsMember({"partial", "total"}));
  add_n(enumerate);
  enumerate->add_flag("--count-only", o.count_only);

  auto* vc = app.add_subcommand("vc", "exact VC-dimension of a witness family on a ground family");
  vc->add_option("--ground", o.ground)->check(CLI::IsMember({"partial", "total"}));
  vc->add_option("--witness", o.witness)->check(CLI::IsMember({"partial", "total"}));
  add_n(vc);
  vc->add_option("--budget", o.budget, "wall-clock seconds, 0 = unlimited")->check(CLI::NonNegativeNumber);
  vc->add_option("--emit-cert", o.emit_cert, "write the shattering certificate as JSON");
  vc->add_option("--format", o.format)->check(CLI::IsMember({"text", "json", "table"}));
  add_threads(vc);

  auto* construct = app.add_subcommand("construct", "generate a construction family");
  construct->add_option("--which", o.which)->required()->check(CLI::IsMember({"thm1", "thm2g", "thm2h"}));
  add_n(construct);
  construct->add_option("--emit-dot", o.emit_dot);
  construct->add_option("--emit-json", o.emit_json);

  auto* star = app.add_subcommand("verify-star", "check the flip-and-delete witnesses of a construction");
  star->add_option("--which", o.which)->required()->check(CLI::IsMember({"thm1", "thm2g", "thm2h"}));
  add_n(star);
  star->add_option("--mode", o.mode)->check(CLI::IsMember({"exhaustive", "sampled"}));
  star->add_option("--count", o.count)->check(CLI::PositiveNumber);
  star->add_option("--seed", o.seed);
  star->add_option("--rule", o.rule, "literal or repaired")->check(CLI::IsMember({"literal", "repaired"}));
  star->add_option("--tie-seed", o.tie_seed, "random topological tie-breaking for thm1");
  add_threads(star);

  auto* proofcheck = app.add_subcommand("proofcheck", "replay the edge-extraction argument on a set");
  proofcheck->add_option("--set", o.set_file, "JSON list of total orders")->required();
  add_n(proofcheck);

  auto* check_cert = app.add_subcommand("check-cert", "independently verify a certificate");
  check_cert->add_option("--cert", o.cert_file)->required();

  std::vector<const char*> argv{"ordervc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "ordervc: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (compat->parsed()) return cmd_compat(o, out);
    if (enumerate->parsed()) return cmd_enumerate(o, out);
    if (vc->parsed()) return cmd_vc(o, out);
    if (construct->parsed()) return cmd_construct(o, out);
    if (star->parsed()) return cmd_verify_star(o, out);
    if (proofcheck->parsed()) return cmd_proofcheck(o, out);
    if (check_cert->parsed()) return cmd_check_cert(o, out);
  } catch (const Error& e) {
    err << "ordervc: " << e.what() << "\n";
    return e.code() == ErrorCode::kNotShattered ? kExitVerificationFailed : kExitUsage;
  } catch (const std::exception& e) {
    err << "ordervc: " << e.what() << "\n";
    return kExitUsage;
  }
  err << "ordervc: no subcommand\n";
  return kExitUsage;
}

}  // namespace ordervc::cli
