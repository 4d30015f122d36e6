#pragma once

// Brute-force references, deliberately independent of the library's fast paths.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ordervc/enumeration.hpp"
#include "ordervc/order.hpp"

namespace ordervc::testing {

// Each unordered pair gets one of {none, forward, backward}; keep the
// assignments whose relation is transitive. Rows are 0-based bit sets.
std::vector<std::vector<Row>> naive_partial_order_rows(int n);
std::size_t naive_partial_order_count(int n);

// Largest subset of the ground family (checked over all 2^|ground| subsets)
// whose traces, computed via explicit union graphs and DFS, take all values.
std::size_t naive_vc_dimension(const Family& ground, const Family& witnesses);

}  // namespace ordervc::testing
