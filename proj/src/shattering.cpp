#include "ordervc/shattering.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <string>
#include <thread>

#include "ordervc/error.hpp"

namespace ordervc {
namespace {

using Word = std::uint64_t;
using Clock = std::chrono::steady_clock;

void check_same_n(int expected, const OrderRelation& x) {
  if (x.n() != expected) {
    throw Error(ErrorCode::kSizeMismatch, "order on n = " + std::to_string(x.n()) +
                                              " where n = " + std::to_string(expected) +
                                              " was expected");
  }
}

Mask full_mask(std::size_t width) {
  return width >= 64 ? ~Mask{0} : (Mask{1} << width) - 1;
}

// Witness-set bitsets, one per ground element, stored flat.
class TraceTable {
 public:
  TraceTable(const Family& ground, const Family& witnesses)
      : words_((witnesses.size() + 63) / 64),
        witness_count_(witnesses.size()),
        bits_(ground.size() * words_, 0) {
    for (std::size_t g = 0; g < ground.size(); ++g) {
      Word* row = bits_.data() + g * words_;
      const OrderRelation& x = ground.member_at(g);
      for (std::size_t w = 0; w < witnesses.size(); ++w) {
        if (compatible(x, witnesses.member_at(w))) row[w / 64] |= Word{1} << (w % 64);
      }
    }
  }

  std::size_t words() const noexcept { return words_; }
  const Word* column(std::size_t g) const noexcept { return bits_.data() + g * words_; }

  bool splits(std::size_t g) const {
    std::size_t count = 0;
    const Word* c = column(g);
    for (std::size_t i = 0; i < words_; ++i) count += static_cast<std::size_t>(std::popcount(c[i]));
    return count != 0 && count != witness_count_;
  }

  // Cells of the witness partition induced by the given ground elements.
  void build_cells(std::span<const std::uint32_t> set, std::vector<Word>& cells) const {
    cells.assign(words_, 0);
    for (std::size_t w = 0; w < witness_count_; ++w) cells[w / 64] |= Word{1} << (w % 64);
    std::size_t count = 1;
    for (std::uint32_t g : set) {
      const Word* c = column(g);
      cells.resize(2 * count * words_);
      for (std::size_t cell = 0; cell < count; ++cell) {
        Word* in = cells.data() + cell * words_;
        Word* out = cells.data() + (count + cell) * words_;
        for (std::size_t i = 0; i < words_; ++i) {
          out[i] = in[i] & ~c[i];
          in[i] &= c[i];
        }
      }
      count *= 2;
    }
  }

  // True iff column g meets and misses every cell.
  bool splits_all(const std::vector<Word>& cells, std::uint32_t g) const {
    const Word* c = column(g);
    const std::size_t count = cells.size() / words_;
    for (std::size_t cell = 0; cell < count; ++cell) {
      const Word* in = cells.data() + cell * words_;
      bool meets = false;
      bool misses = false;
      for (std::size_t i = 0; i < words_ && !(meets && misses); ++i) {
        meets = meets || (in[i] & c[i]) != 0;
        misses = misses || (in[i] & ~c[i]) != 0;
      }
      if (!meets || !misses) return false;
    }
    return true;
  }

 private:
  std::size_t words_;
  std::size_t witness_count_;
  std::vector<Word> bits_;
};

// Shattered sets of one size, sorted lexicographically, stored flat.
struct Level {
  std::size_t size = 0;
  std::vector<std::uint32_t> items;

  std::size_t count() const { return size == 0 ? 1 : items.size() / size; }
  std::span<const std::uint32_t> at(std::size_t i) const {
    return {items.data() + i * size, size};
  }
  bool contains(std::span<const std::uint32_t> set) const {
    std::size_t lo = 0;
    std::size_t hi = count();
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      const auto probe = at(mid);
      if (std::lexicographical_compare(probe.begin(), probe.end(), set.begin(), set.end())) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    return lo < count() && std::equal(set.begin(), set.end(), at(lo).begin());
  }
};

struct ChunkResult {
  std::vector<std::uint32_t> items;
  std::uint64_t joined = 0;
  std::uint64_t candidates = 0;
};

class Budget {
 public:
  explicit Budget(const SearchOptions& options)
      : options_(options), start_(Clock::now()) {}

  // Called once per candidate; returns false once the budget is spent.
  bool charge() {
    const std::uint64_t used = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
    if (options_.node_budget != 0 && used > options_.node_budget) stopped_ = true;
    if (options_.budget_seconds > 0.0 && used % 256 == 0 && elapsed() > options_.budget_seconds) {
      stopped_ = true;
    }
    return !stopped_.load(std::memory_order_relaxed);
  }

  bool stopped() const { return stopped_.load(); }
  double elapsed() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

 private:
  SearchOptions options_;
  Clock::time_point start_;
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<bool> stopped_{false};
};

// Joins shattered (k-1)-sets sharing a (k-2)-prefix within the groups
// [group_begin, group_end) of `groups`.
ChunkResult process_groups(const TraceTable& table, const Level& prev,
                           std::span<const std::pair<std::size_t, std::size_t>> groups,
                           Budget& budget) {
  ChunkResult result;
  const std::size_t k = prev.size + 1;
  std::vector<std::uint32_t> candidate(k);
  std::vector<std::uint32_t> subset(k - 1);
  std::vector<Word> cells;
  for (const auto& [first, last] : groups) {
    for (std::size_t a = first; a < last; ++a) {
      const auto base = prev.at(a);
      bool cells_ready = false;
      for (std::size_t b = a + 1; b < last; ++b) {
        ++result.joined;
        std::copy(base.begin(), base.end(), candidate.begin());
        candidate[k - 1] = prev.at(b)[k - 2];
        // The subsets dropping either of the last two elements are `base`
        // and `prev.at(b)`; check the rest.
        bool hereditary = true;
        for (std::size_t drop = 0; drop + 2 < k && hereditary; ++drop) {
          std::size_t out = 0;
          for (std::size_t i = 0; i < k; ++i) {
            if (i != drop) subset[out++] = candidate[i];
          }
          hereditary = prev.contains(subset);
        }
        if (!hereditary) continue;
        if (!budget.charge()) return result;
        ++result.candidates;
        if (!cells_ready) {
          table.build_cells(base, cells);
          cells_ready = true;
        }
        if (table.splits_all(cells, candidate[k - 1])) {
          result.items.insert(result.items.end(), candidate.begin(), candidate.end());
        }
      }
    }
  }
  return result;
}

}  // namespace

Mask trace(const OrderRelation& w, std::span<const OrderRelation> ground) {
  if (ground.size() > kMaxTraceWidth) {
    throw Error(ErrorCode::kCapExceeded, "trace width is limited to 64 ground elements");
  }
  Mask mask = 0;
  for (std::size_t i = 0; i < ground.size(); ++i) {
    check_same_n(w.n(), ground[i]);
    if (compatible(w, ground[i])) mask |= Mask{1} << i;
  }
  return mask;
}

std::optional<ShatterCertificate> is_shattered(std::span<const OrderRelation> ground,
                                               const Family& witnesses) {
  if (ground.size() > kMaxShatterGround) {
    throw Error(ErrorCode::kCapExceeded, "shattering checks are limited to 25 ground elements");
  }
  for (const auto& x : ground) check_same_n(witnesses.n(), x);
  const std::size_t needed = std::size_t{1} << ground.size();
  if (witnesses.size() < needed) return std::nullopt;

  std::vector<std::int64_t> first(needed, -1);
  std::size_t found = 0;
  for (std::size_t w = 0; w < witnesses.size() && found < needed; ++w) {
    const Mask m = trace(witnesses.member_at(w), ground);
    if (first[m] < 0) {
      first[m] = static_cast<std::int64_t>(w);
      ++found;
    }
  }
  if (found < needed) return std::nullopt;

  ShatterCertificate cert;
  cert.n = witnesses.n();
  cert.ground.assign(ground.begin(), ground.end());
  for (std::size_t m = 0; m < needed; ++m) {
    cert.witnesses.emplace(m, witnesses.member_at(static_cast<std::size_t>(first[m])));
  }
  return cert;
}

CertificateCheck verify_certificate(const ShatterCertificate& cert) {
  if (cert.ground.size() > kMaxShatterGround) {
    return {false, "ground list exceeds 25 elements"};
  }
  for (std::size_t i = 0; i < cert.ground.size(); ++i) {
    if (cert.ground[i].n() != cert.n) {
      return {false, "ground element " + std::to_string(i) + " has the wrong n"};
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (cert.ground[i] == cert.ground[j]) {
        return {false, "ground elements " + std::to_string(j) + " and " + std::to_string(i) +
                           " are equal"};
      }
    }
  }
  const Mask all = full_mask(cert.ground.size());
  for (const auto& [mask, witness] : cert.witnesses) {
    if ((mask & ~all) != 0) return {false, "mask " + std::to_string(mask) + " exceeds the ground"};
    if (witness.n() != cert.n) {
      return {false, "witness for mask " + std::to_string(mask) + " has the wrong n"};
    }
    const Mask realized = trace(witness, cert.ground);
    if (realized != mask) {
      return {false, "witness for mask " + std::to_string(mask) + " traces to " +
                         std::to_string(realized)};
    }
  }
  const std::size_t needed = std::size_t{1} << cert.ground.size();
  if (cert.witnesses.size() != needed) {
    for (Mask m = 0; m <= all; ++m) {
      if (!cert.witnesses.contains(m)) {
        return {false, "no witness for mask " + std::to_string(m)};
      }
    }
  }
  return {true, {}};
}

VCReport vc_dimension(const Family& ground, const Family& witnesses, const SearchOptions& options) {
  if (ground.n() != witnesses.n()) {
    throw Error(ErrorCode::kSizeMismatch, "ground and witness families on different n");
  }
  if (witnesses.size() == 0) {
    throw Error(ErrorCode::kInvariantViolation, "witness family is empty");
  }
  Budget budget(options);
  const TraceTable table(ground, witnesses);
  const unsigned threads = std::max(1u, options.threads);

  VCReport report;
  Exhaustion& ex = report.exhaustion;
  ex.levels.push_back({0, 0, 1, 1, true});

  Level best;  // deepest level with at least one shattered set
  Level prev;
  bool complete = true;

  for (std::size_t k = 1;; ++k) {
    // 2^k distinct traces need at least 2^k witnesses.
    if (k >= 64 || (std::size_t{1} << k) > witnesses.size()) {
      ex.information_bound = true;
      break;
    }
    LevelStats stats;
    stats.size = k;
    Level next;
    next.size = k;
    if (k == 1) {
      for (std::size_t g = 0; g < ground.size(); ++g) {
        ++stats.joined;
        if (!budget.charge()) break;
        ++stats.candidates;
        if (table.splits(g)) next.items.push_back(static_cast<std::uint32_t>(g));
      }
    } else {
      std::vector<std::pair<std::size_t, std::size_t>> groups;
      for (std::size_t i = 0; i < prev.count();) {
        std::size_t j = i + 1;
        const auto head = prev.at(i).first(k - 2);
        while (j < prev.count() && std::equal(head.begin(), head.end(), prev.at(j).begin())) ++j;
        if (j - i >= 2) groups.emplace_back(i, j);
        i = j;
      }
      const std::size_t chunks = std::min<std::size_t>(threads, std::max<std::size_t>(groups.size(), 1));
      std::vector<ChunkResult> results(chunks);
      const std::span<const std::pair<std::size_t, std::size_t>> all_groups(groups);
      auto chunk_span = [&](std::size_t c) {
        const std::size_t lo = groups.size() * c / chunks;
        const std::size_t hi = groups.size() * (c + 1) / chunks;
        return all_groups.subspan(lo, hi - lo);
      };
      if (chunks == 1) {
        results[0] = process_groups(table, prev, all_groups, budget);
      } else {
        std::vector<std::thread> pool;
        for (std::size_t c = 0; c < chunks; ++c) {
          pool.emplace_back([&, c] { results[c] = process_groups(table, prev, chunk_span(c), budget); });
        }
        for (auto& t : pool) t.join();
      }
      for (auto& r : results) {
        stats.joined += r.joined;
        stats.candidates += r.candidates;
        next.items.insert(next.items.end(), r.items.begin(), r.items.end());
      }
    }
    stats.shattered = next.count();
    stats.complete = !budget.stopped();
    ex.levels.push_back(stats);
    if (stats.shattered > 0) best = next;
    if (budget.stopped()) {
      complete = false;
      break;
    }
    if (stats.shattered == 0) break;
    prev = std::move(next);
  }

  ex.search_complete = complete;
  ex.elapsed_seconds = budget.elapsed();

  std::vector<OrderRelation> chosen;
  if (best.size > 0) {
    const auto first = best.at(0);
    report.ground_indices.assign(first.begin(), first.end());
    for (std::uint32_t g : first) chosen.push_back(ground.member_at(g));
  }
  report.dimension = report.ground_indices.size();
  auto cert = is_shattered(chosen, witnesses);
  if (!cert) throw Error(ErrorCode::kNotShattered, "search produced an unshattered set");
  report.certificate = std::move(*cert);
  return report;
}

}  // namespace ordervc
