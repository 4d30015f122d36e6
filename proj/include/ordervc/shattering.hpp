#pragma once

// Shattering of a ground list of orders by a witness family, where a witness
// "contains" a ground element iff the two orders are compatible.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ordervc/enumeration.hpp"
#include "ordervc/order.hpp"

namespace ordervc {

using Mask = std::uint64_t;

inline constexpr std::size_t kMaxTraceWidth = 64;
inline constexpr std::size_t kMaxShatterGround = 25;

// Bit i is set iff w is compatible with ground[i]. kCapExceeded beyond 64
// ground elements, kSizeMismatch on differing n.
Mask trace(const OrderRelation& w, std::span<const OrderRelation> ground);

struct ShatterCertificate {
  int n = 0;
  std::vector<OrderRelation> ground;
  // One witness per subset mask of ground.
  std::map<Mask, OrderRelation> witnesses;
};

// A certificate whose witness for each mask is the first family member (in
// enumeration order) realizing it, or nullopt if some mask is not realized.
std::optional<ShatterCertificate> is_shattered(std::span<const OrderRelation> ground,
                                               const Family& witnesses);

struct CertificateCheck {
  bool ok = false;
  // Empty on success, otherwise the first failure found.
  std::string detail;

  explicit operator bool() const noexcept { return ok; }
};

// Recomputes every trace from scratch; does not trust the certificate.
CertificateCheck verify_certificate(const ShatterCertificate& cert);

struct SearchOptions {
  // Wall-clock budget; 0 means unlimited.
  double budget_seconds = 0.0;
  // Maximum number of candidate subsets tested; 0 means unlimited.
  std::uint64_t node_budget = 0;
  unsigned threads = 1;
};

struct LevelStats {
  std::size_t size = 0;
  // Pairs of (k-1)-sets sharing a prefix.
  std::uint64_t joined = 0;
  // Joined sets whose every (k-1)-subset is shattered; each one is tested.
  std::uint64_t candidates = 0;
  std::uint64_t shattered = 0;
  bool complete = true;
};

struct Exhaustion {
  // True iff no (dimension + 1)-subset of the ground family is shattered.
  bool search_complete = false;
  // Set when the search stopped because 2^(dimension+1) exceeds the witness
  // count, so no larger set can be shattered.
  bool information_bound = false;
  std::vector<LevelStats> levels;
  double elapsed_seconds = 0.0;
};

struct VCReport {
  std::size_t dimension = 0;
  // Ground-family indices of the certificate's ground list.
  std::vector<std::size_t> ground_indices;
  ShatterCertificate certificate;
  Exhaustion exhaustion;
};

// Exact VC-dimension of the witness family's traces on the ground family,
// by level-wise search with hereditary pruning. On budget exhaustion the
// report carries the best lower bound found and search_complete = false.
VCReport vc_dimension(const Family& ground, const Family& witnesses,
                      const SearchOptions& options = {});

}  // namespace ordervc
