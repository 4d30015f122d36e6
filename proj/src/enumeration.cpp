#include "ordervc/enumeration.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "ordervc/error.hpp"

namespace ordervc {
namespace {

void check_n(int n, int cap, const char* what) {
  if (n < 1) throw Error(ErrorCode::kOutOfRange, "n must be positive");
  if (n > cap) {
    throw Error(ErrorCode::kCapExceeded, std::string(what) + " enumeration is capped at n = " +
                                             std::to_string(cap));
  }
}

// Extends every order on {0..m-1} by a new maximal-index vertex m. A choice of
// down-set D and up-set U keeps the relation a closed partial order iff D is
// down-closed, U is up-closed and every element of D lies below every element
// of U.
void extend(int n, int m, std::vector<Row>& rows, std::vector<OrderRelation>& out) {
  if (m == n) {
    out.push_back(OrderRelation::from_closed_rows(n, rows));
    return;
  }
  const Row all = (Row{1} << m) - 1;
  std::vector<Row> below(m, 0);
  for (int a = 0; a < m; ++a) {
    for (Row r = rows[a]; r != 0; r &= r - 1) below[std::countr_zero(r)] |= Row{1} << a;
  }
  for (Row down = 0; down <= all; ++down) {
    Row closure = down;
    Row above_all = all;
    for (Row r = down; r != 0; r &= r - 1) {
      const int d = std::countr_zero(r);
      closure |= below[d];
      above_all &= rows[d];
    }
    if (closure != down) continue;
    // Enumerate subsets of above_all, keeping the up-closed ones.
    Row up = 0;
    while (true) {
      Row up_closure = up;
      for (Row r = up; r != 0; r &= r - 1) up_closure |= rows[std::countr_zero(r)];
      if (up_closure == up) {
        for (Row r = down; r != 0; r &= r - 1) rows[std::countr_zero(r)] |= Row{1} << m;
        rows[m] = up;
        extend(n, m + 1, rows, out);
        rows[m] = 0;
        for (Row r = down; r != 0; r &= r - 1) rows[std::countr_zero(r)] &= ~(Row{1} << m);
      }
      if (up == above_all) break;
      up = (up - above_all) & above_all;
    }
  }
}

}  // namespace

std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::kAllPartial: return "partial";
    case FamilyKind::kAllTotal: return "total";
    case FamilyKind::kExplicit: return "explicit";
  }
  return "unknown";
}

std::vector<TotalOrder> all_total_orders(int n) {
  check_n(n, kMaxTotalOrderN, "total order");
  std::vector<int> seq(n);
  std::iota(seq.begin(), seq.end(), 1);
  std::vector<TotalOrder> out;
  do {
    out.push_back(TotalOrder::from_sequence(seq));
  } while (std::next_permutation(seq.begin(), seq.end()));
  return out;
}

std::vector<OrderRelation> all_partial_orders(int n) {
  check_n(n, kMaxPartialOrderN, "partial order");
  std::vector<OrderRelation> out;
  std::vector<Row> rows(n, 0);
  extend(n, 0, rows, out);
  std::vector<std::pair<std::pair<std::size_t, std::uint64_t>, std::size_t>> keys;
  keys.reserve(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    keys.push_back({{out[i].relation_count(), out[i].cell_key()}, i});
  }
  std::sort(keys.begin(), keys.end());
  std::vector<OrderRelation> sorted;
  sorted.reserve(out.size());
  for (const auto& [key, i] : keys) sorted.push_back(std::move(out[i]));
  return sorted;
}

Family::Family(FamilyKind kind, int n, std::vector<OrderRelation> members) : kind_(kind), n_(n) {
  auto data = std::make_shared<Data>();
  data->index.reserve(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i].n() != n) {
      throw Error(ErrorCode::kSizeMismatch, "family member " + std::to_string(i) +
                                                " has n = " + std::to_string(members[i].n()));
    }
    if (!data->index.emplace(members[i], i).second) {
      throw Error(ErrorCode::kInvariantViolation,
                  "family member " + std::to_string(i) + " is a duplicate");
    }
  }
  data->members = std::move(members);
  data_ = std::move(data);
}

Family Family::all_partial(int n) { return Family(FamilyKind::kAllPartial, n, all_partial_orders(n)); }

Family Family::all_total(int n) {
  std::vector<OrderRelation> members;
  for (const TotalOrder& t : all_total_orders(n)) members.push_back(t.relation());
  return Family(FamilyKind::kAllTotal, n, std::move(members));
}

Family Family::from_members(int n, std::vector<OrderRelation> members) {
  if (n < 1) throw Error(ErrorCode::kOutOfRange, "n must be positive");
  return Family(FamilyKind::kExplicit, n, std::move(members));
}

const OrderRelation& Family::member_at(std::size_t index) const {
  if (index >= size()) {
    throw Error(ErrorCode::kOutOfRange, "family index " + std::to_string(index) + " out of range");
  }
  return data_->members[index];
}

std::size_t Family::index_of(const OrderRelation& x) const {
  const auto it = data_->index.find(x);
  if (it == data_->index.end()) throw Error(ErrorCode::kNotAMember, "order is not in the family");
  return it->second;
}

bool Family::contains(const OrderRelation& x) const { return data_->index.contains(x); }

}  // namespace ordervc
