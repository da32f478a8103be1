#pragma once

#include <compare>
#include <iosfwd>
#include <string>
#include <vector>

#include "gpn/bigint.hpp"

namespace gpn {

// Ordered decomposition of an integer into positive summands.
struct Composition {
  std::vector<unsigned> parts;

  unsigned sum() const noexcept;
  BigInt product() const;
  friend auto operator<=>(const Composition&, const Composition&) = default;
};

// Order-free decomposition; parts are kept nonincreasing.
struct Partition {
  std::vector<unsigned> parts;

  unsigned sum() const noexcept;
  BigInt product() const;
  // "3+3+2"
  std::string to_string() const;
  friend auto operator<=>(const Partition&, const Partition&) = default;
};

struct ProductReport {
  Partition partition;
  BigInt product;
  bool is_max = false;
};

struct ProductGroup {
  unsigned n = 0;
  std::vector<ProductReport> reports;
};

// All ordered `parts`-tuples of positive integers summing to `n`, in
// lexicographic order. Throws invalid-argument unless 1 <= parts <= n.
std::vector<Composition> enumerate_compositions(unsigned n, unsigned parts);

// All partitions of `n`, including [n], in reverse-lexicographic order
// ([n], [n-1,1], [n-2,2], [n-2,1,1], ...).
std::vector<Partition> enumerate_partitions(unsigned n);

// The partition of `n` with at least two parts maximizing the product of
// its parts. Ties go to the fewest parts, then the reverse-lexicographically
// largest partition. Requires n >= 2.
ProductReport max_product_partition(unsigned n);

// One group per N in 1..n_max. For N >= 2 a group lists the partitions with
// at least two parts (the trivial [N] is omitted, as in the decomposition
// tables); N = 1 lists [1]. Exactly one report per group has is_max set.
std::vector<ProductGroup> product_table(unsigned n_max);

// Header "N\tparts\tpartition\tproduct\tmax", one row per report.
void write_product_table_tsv(std::ostream& out, const std::vector<ProductGroup>& table);

}  // namespace gpn
