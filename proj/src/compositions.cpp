#include "gpn/compositions.hpp"

#include <numeric>
#include <ostream>

#include "gpn/error.hpp"

namespace gpn {

namespace {

BigInt product_of(const std::vector<unsigned>& parts) {
  BigInt p = 1;
  for (unsigned v : parts) p *= v;
  return p;
}

void compose(unsigned remaining, unsigned slots, std::vector<unsigned>& prefix,
             std::vector<Composition>& out) {
  if (slots == 1) {
    prefix.push_back(remaining);
    out.push_back({prefix});
    prefix.pop_back();
    return;
  }
  for (unsigned first = 1; first + (slots - 1) <= remaining; ++first) {
    prefix.push_back(first);
    compose(remaining - first, slots - 1, prefix, out);
    prefix.pop_back();
  }
}

void partition(unsigned remaining, unsigned max_part, std::vector<unsigned>& prefix,
               std::vector<Partition>& out) {
  if (remaining == 0) {
    out.push_back({prefix});
    return;
  }
  for (unsigned p = std::min(remaining, max_part); p >= 1; --p) {
    prefix.push_back(p);
    partition(remaining - p, p, prefix, out);
    prefix.pop_back();
  }
}

// true if `a` beats `b` under the max-product ordering
bool better(const ProductReport& a, const ProductReport& b) {
  if (a.product != b.product) return a.product > b.product;
  if (a.partition.parts.size() != b.partition.parts.size())
    return a.partition.parts.size() < b.partition.parts.size();
  return a.partition.parts > b.partition.parts;
}

}  // namespace

unsigned Composition::sum() const noexcept { return std::accumulate(parts.begin(), parts.end(), 0U); }
BigInt Composition::product() const { return product_of(parts); }

unsigned Partition::sum() const noexcept { return std::accumulate(parts.begin(), parts.end(), 0U); }
BigInt Partition::product() const { return product_of(parts); }

std::string Partition::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += '+';
    s += std::to_string(parts[i]);
  }
  return s;
}

std::vector<Composition> enumerate_compositions(unsigned n, unsigned parts) {
  if (parts < 1 || parts > n)
    throw Error(Errc::invalid_argument, "composition needs 1 <= parts <= n");
  std::vector<Composition> out;
  std::vector<unsigned> prefix;
  prefix.reserve(parts);
  compose(n, parts, prefix, out);
  return out;
}

std::vector<Partition> enumerate_partitions(unsigned n) {
  if (n < 1) throw Error(Errc::invalid_argument, "partitions need n >= 1");
  std::vector<Partition> out;
  std::vector<unsigned> prefix;
  partition(n, n, prefix, out);
  return out;
}

ProductReport max_product_partition(unsigned n) {
  if (n < 2) throw Error(Errc::invalid_argument, "max-product partition needs n >= 2");

  // A part p >= 5 can always be split into 2 + (p - 2) with a strictly larger
  // product, and splitting never drops below two parts, so an optimum only
  // uses parts 1..4. Search all multiplicity vectors over those parts.
  ProductReport best;
  bool have = false;
  for (unsigned fours = 0; 4 * fours <= n; ++fours) {
    for (unsigned threes = 0; 4 * fours + 3 * threes <= n; ++threes) {
      const unsigned rest = n - 4 * fours - 3 * threes;
      for (unsigned twos = 0; 2 * twos <= rest; ++twos) {
        const unsigned ones = rest - 2 * twos;
        if (fours + threes + twos + ones < 2) continue;
        ProductReport cand;
        auto& parts = cand.partition.parts;
        parts.insert(parts.end(), fours, 4U);
        parts.insert(parts.end(), threes, 3U);
        parts.insert(parts.end(), twos, 2U);
        parts.insert(parts.end(), ones, 1U);
        cand.product = pow(BigInt(4), fours) * pow(BigInt(3), threes) * pow(BigInt(2), twos);
        if (!have || better(cand, best)) {
          best = std::move(cand);
          have = true;
        }
      }
    }
  }
  best.is_max = true;
  return best;
}

std::vector<ProductGroup> product_table(unsigned n_max) {
  if (n_max < 1) throw Error(Errc::invalid_argument, "product table needs n_max >= 1");
  std::vector<ProductGroup> table;
  table.reserve(n_max);
  for (unsigned n = 1; n <= n_max; ++n) {
    ProductGroup group{n, {}};
    for (auto& p : enumerate_partitions(n)) {
      if (n >= 2 && p.parts.size() < 2) continue;
      BigInt prod = p.product();
      group.reports.push_back({std::move(p), std::move(prod), false});
    }
    if (n == 1) {
      group.reports.front().is_max = true;
    } else {
      const auto best = max_product_partition(n);
      for (auto& r : group.reports)
        if (r.partition == best.partition) r.is_max = true;
    }
    table.push_back(std::move(group));
  }
  return table;
}

void write_product_table_tsv(std::ostream& out, const std::vector<ProductGroup>& table) {
  out << "N\tparts\tpartition\tproduct\tmax\n";
  for (const auto& g : table)
    for (const auto& r : g.reports)
      out << g.n << '\t' << r.partition.parts.size() << '\t' << r.partition.to_string() << '\t'
          << r.product << '\t' << (r.is_max ? 1 : 0) << '\n';
}

}  // namespace gpn
