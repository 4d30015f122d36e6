#pragma once

// Deterministic enumeration of the ground families on {1, ..., n}.

#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ordervc/order.hpp"

namespace ordervc {

inline constexpr int kMaxTotalOrderN = 8;
inline constexpr int kMaxPartialOrderN = 6;

enum class FamilyKind { kAllPartial, kAllTotal, kExplicit };

std::string_view to_string(FamilyKind kind);

// All n! total orders in lexicographic permutation order. kCapExceeded for n > 8.
std::vector<TotalOrder> all_total_orders(int n);

// Every strict partial order on [n] exactly once, sorted by (relation count,
// cell_key()). kCapExceeded for n > 6.
std::vector<OrderRelation> all_partial_orders(int n);

// An indexed, immutable family of orders. Copies share the member storage.
class Family {
 public:
  static Family all_partial(int n);
  static Family all_total(int n);
  // Members must share n and be pairwise distinct (kSizeMismatch /
  // kInvariantViolation).
  static Family from_members(int n, std::vector<OrderRelation> members);

  FamilyKind kind() const noexcept { return kind_; }
  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return data_->members.size(); }
  std::span<const OrderRelation> members() const noexcept { return data_->members; }

  const OrderRelation& member_at(std::size_t index) const;
  // Inverse of member_at; kNotAMember if x is not in the family.
  std::size_t index_of(const OrderRelation& x) const;
  std::size_t index_of(const TotalOrder& x) const { return index_of(x.relation()); }
  bool contains(const OrderRelation& x) const;

 private:
  struct Data {
    std::vector<OrderRelation> members;
    std::unordered_map<OrderRelation, std::size_t, OrderRelationHash> index;
  };

  Family(FamilyKind kind, int n, std::vector<OrderRelation> members);

  FamilyKind kind_;
  int n_;
  std::shared_ptr<const Data> data_;
};

}  // namespace ordervc
