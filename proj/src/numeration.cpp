#include "gpn/numeration.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <utility>

#include "gpn/error.hpp"

namespace gpn {

struct WeightSystem::Cache {
  std::mutex mu;
  std::vector<BigInt> weights;
};

WeightSystem::WeightSystem(Kind kind) : kind_(kind), cache_(std::make_shared<Cache>()) {}

WeightSystem WeightSystem::b_radix(unsigned base) {
  if (base < 2) throw Error(Errc::invalid_argument, "b-radix base must be >= 2");
  WeightSystem ws(Kind::b_radix);
  ws.base_ = base;
  return ws;
}

WeightSystem WeightSystem::factorial() { return WeightSystem(Kind::factorial); }

WeightSystem WeightSystem::fibonacci() { return WeightSystem(Kind::fibonacci); }

WeightSystem WeightSystem::deformed_fibonacci(std::vector<unsigned> coefficients) {
  if (coefficients.empty())
    throw Error(Errc::invalid_argument, "deformation needs at least one coefficient");
  if (std::ranges::any_of(coefficients, [](unsigned c) { return c < 1; }))
    throw Error(Errc::invalid_argument, "deformation coefficients must be >= 1");
  WeightSystem ws(Kind::deformed_fibonacci);
  ws.coefficients_ = std::move(coefficients);
  return ws;
}

WeightSystem WeightSystem::binomial_class(unsigned n, unsigned k) {
  if (n < 1 || k < 1) throw Error(Errc::invalid_argument, "binomial class needs n >= 1 and k >= 1");
  WeightSystem ws(Kind::binomial_class);
  ws.binomial_n_ = n;
  ws.binomial_k_ = k;
  return ws;
}

unsigned WeightSystem::max_width() const noexcept {
  return kind_ == Kind::binomial_class ? binomial_n_ : ~0U;
}

BigInt WeightSystem::next_weight(const std::vector<BigInt>& known) const {
  const std::size_t m = known.size() + 1;
  switch (kind_) {
    case Kind::b_radix:
      return m == 1 ? BigInt(1) : known.back() * base_;
    case Kind::factorial:
      return m == 1 ? BigInt(1) : known.back() * m;
    case Kind::fibonacci:
      return m <= 2 ? BigInt(1) : known[m - 2] + known[m - 3];
    case Kind::deformed_fibonacci: {
      if (m == 1) return 1;
      BigInt r = 0;
      for (std::size_t i = 1; i <= coefficients_.size() && i < m; ++i)
        r += known[m - 1 - i] * coefficients_[i - 1];
      return r;
    }
    case Kind::binomial_class: {
      // C(m + k - 2, k - 1)
      const unsigned top = static_cast<unsigned>(m) + binomial_k_ - 2;
      const unsigned low = binomial_k_ - 1;
      BigInt c = 1;
      for (unsigned i = 1; i <= low; ++i) c = c * (top - low + i) / i;
      return c;
    }
  }
  return 0;
}

std::vector<BigInt> WeightSystem::weights(unsigned m) const {
  if (m < 1) throw Error(Errc::invalid_argument, "weight count must be >= 1");
  if (m > max_width())
    throw Error(Errc::invalid_argument, "binomial class defines only " +
                                            std::to_string(binomial_n_) + " weights");
  std::lock_guard lock(cache_->mu);
  auto& w = cache_->weights;
  while (w.size() < m) w.push_back(next_weight(w));
  return {w.begin(), w.begin() + m};
}

std::string WeightSystem::name() const {
  switch (kind_) {
    case Kind::b_radix: return "b-radix(" + std::to_string(base_) + ")";
    case Kind::factorial: return "factorial";
    case Kind::fibonacci: return "fibonacci";
    case Kind::deformed_fibonacci: {
      std::string s = "deformed-fibonacci(";
      for (std::size_t i = 0; i < coefficients_.size(); ++i)
        s += (i ? "," : "") + std::to_string(coefficients_[i]);
      return s + ")";
    }
    case Kind::binomial_class:
      return "binomial-class(" + std::to_string(binomial_n_) + "," + std::to_string(binomial_k_) + ")";
  }
  return "?";
}

GpnWord GpnWord::from_string(std::string_view text) {
  GpnWord w(static_cast<unsigned>(text.size()));
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[text.size() - 1 - i];
    if (c != '0' && c != '1') throw Error(Errc::invalid_argument, "word digits must be '0' or '1'");
    w.digits_[i] = c == '1';
  }
  return w;
}

GpnWord GpnWord::from_mask(std::uint64_t mask, unsigned width) {
  if (width > 64) throw Error(Errc::unsupported, "mask words are limited to 64 digits");
  GpnWord w(width);
  for (unsigned k = 0; k < width; ++k) w.digits_[k] = (mask >> k) & 1U;
  return w;
}

unsigned GpnWord::popcount() const noexcept {
  return static_cast<unsigned>(std::ranges::count(digits_, 1));
}

std::uint64_t GpnWord::to_mask() const {
  if (width() > 64) throw Error(Errc::unsupported, "mask words are limited to 64 digits");
  std::uint64_t mask = 0;
  for (unsigned k = 0; k < width(); ++k) mask |= std::uint64_t{digits_[k]} << k;
  return mask;
}

std::string GpnWord::to_string() const {
  std::string s(digits_.size(), '0');
  for (std::size_t i = 0; i < digits_.size(); ++i)
    if (digits_[i]) s[digits_.size() - 1 - i] = '1';
  return s;
}

std::strong_ordering operator<=>(const GpnWord& a, const GpnWord& b) {
  if (auto c = a.width() <=> b.width(); c != 0) return c;
  for (unsigned k = a.width(); k >= 1; --k)
    if (auto c = a.digits_[k - 1] <=> b.digits_[k - 1]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::vector<BigInt> weights(const WeightSystem& ws, unsigned m) { return ws.weights(m); }

GpnValue evaluate(const GpnWord& word, const WeightSystem& ws) {
  if (word.width() == 0) return 0;
  const auto w = ws.weights(word.width());
  GpnValue v = 0;
  for (unsigned k = 1; k <= word.width(); ++k)
    if (word.digit(k)) v += w[k - 1];
  return v;
}

GpnValue max_value(const WeightSystem& ws, unsigned width) {
  GpnValue v = 0;
  for (const auto& r : ws.weights(width)) v += r;
  return v;
}

namespace {

// Weights plus prefix sums: reach[k] = R_1 + ... + R_k is the largest value
// the low k digits can hold.
struct Table {
  std::vector<BigInt> weight;  // weight[k - 1] = R_k
  std::vector<BigInt> reach;   // reach[k], reach[0] = 0
};

Table make_table(const WeightSystem& ws, unsigned width) {
  if (width < 1) throw Error(Errc::invalid_argument, "word width must be >= 1");
  if (width > kMaxRepresentationWidth)
    throw Error(Errc::unsupported, "representation search is limited to width 64");
  Table t{ws.weights(width), {}};
  t.reach.assign(width + 1, 0);
  for (unsigned k = 1; k <= width; ++k) t.reach[k] = t.reach[k - 1] + t.weight[k - 1];
  return t;
}

// Depth-first over digits a_k, k from high to low. `ones_first` visits the
// digit 1 before 0, which yields descending string order.
template <typename Visit>
bool search(const Table& t, unsigned k, const BigInt& rem, std::uint64_t mask, bool ones_first,
            Visit& visit) {
  if (k == 0) return rem == 0 ? visit(mask) : false;
  const auto try_zero = [&] { return rem <= t.reach[k - 1] && search(t, k - 1, rem, mask, ones_first, visit); };
  const auto try_one = [&] {
    return t.weight[k - 1] <= rem &&
           search(t, k - 1, rem - t.weight[k - 1], mask | (std::uint64_t{1} << (k - 1)), ones_first, visit);
  };
  if (ones_first) return try_one() || try_zero();
  return try_zero() || try_one();
}

}  // namespace

std::vector<GpnWord> representations(const GpnValue& value, unsigned width, const WeightSystem& ws) {
  const Table t = make_table(ws, width);
  std::vector<GpnWord> out;
  if (value < 0 || value > t.reach[width]) return out;
  auto collect = [&](std::uint64_t mask) {
    out.push_back(GpnWord::from_mask(mask, width));
    return false;
  };
  search(t, width, value, 0, false, collect);
  return out;
}

BigInt count_representations(const GpnValue& value, unsigned width, const WeightSystem& ws) {
  const Table t = make_table(ws, width);
  if (value < 0 || value > t.reach[width]) return 0;
  std::map<std::pair<unsigned, BigInt>, BigInt> memo;
  auto count = [&](auto& self, unsigned k, const BigInt& rem) -> BigInt {
    if (k == 0) return rem == 0 ? 1 : 0;
    if (rem > t.reach[k]) return 0;
    auto key = std::make_pair(k, rem);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    BigInt n = self(self, k - 1, rem);
    if (t.weight[k - 1] <= rem) n += self(self, k - 1, rem - t.weight[k - 1]);
    memo.emplace(std::move(key), n);
    return n;
  };
  return count(count, width, value);
}

GpnWord canonical_encode(const GpnValue& value, unsigned width, const WeightSystem& ws) {
  const Table t = make_table(ws, width);
  if (value < 0 || value > t.reach[width])
    throw Error(Errc::not_representable,
                "value " + value.str() + " exceeds the width-" + std::to_string(width) + " range");
  GpnWord word(width);
  BigInt rem = value;
  for (unsigned k = width; k >= 1; --k) {
    if (t.weight[k - 1] <= rem) {
      word.set_digit(k, true);
      rem -= t.weight[k - 1];
    }
  }
  if (rem == 0) return word;

  std::uint64_t found = 0;
  auto first = [&](std::uint64_t mask) {
    found = mask;
    return true;
  };
  if (!search(t, width, value, 0, true, first))
    throw Error(Errc::not_representable,
                "value " + value.str() + " has no width-" + std::to_string(width) + " word");
  return GpnWord::from_mask(found, width);
}

namespace {

using PascalRow = std::array<std::uint64_t, 65>;

const std::array<PascalRow, 65>& pascal() {
  static const auto table = [] {
    std::array<PascalRow, 65> c{};
    for (unsigned n = 0; n <= 64; ++n) {
      c[n][0] = 1;
      for (unsigned k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k < n ? c[n - 1][k] : 0);
    }
    return c;
  }();
  return table;
}

}  // namespace

std::uint64_t binomial(unsigned n, unsigned k) {
  if (n > 64) throw Error(Errc::unsupported, "binomial table is limited to n <= 64");
  return k > n ? 0 : pascal()[n][k];
}

std::uint64_t combo_rank(const GpnWord& word) {
  if (word.width() < 1) throw Error(Errc::invalid_argument, "combo_rank needs a nonempty word");
  if (word.width() > 64) throw Error(Errc::unsupported, "combo_rank is limited to width 64");
  std::uint64_t rank = 0;
  unsigned i = 0;
  for (unsigned p = 0; p < word.width(); ++p)
    if (word.digit(p + 1)) rank += pascal()[p][++i];
  return rank;
}

GpnWord combo_unrank(unsigned n, unsigned k, std::uint64_t rank) {
  if (n < 1 || n > 64) throw Error(Errc::invalid_argument, "combo_unrank needs 1 <= n <= 64");
  if (k > n) throw Error(Errc::invalid_argument, "combo_unrank needs k <= n");
  if (rank >= binomial(n, k))
    throw Error(Errc::out_of_range, "rank " + std::to_string(rank) + " >= C(" + std::to_string(n) +
                                        "," + std::to_string(k) + ")");
  GpnWord word(n);
  unsigned p = n;
  for (unsigned i = k; i >= 1; --i) {
    // largest p < previous with C(p, i) <= rank; C(i - 1, i) = 0 guarantees a hit
    do --p;
    while (pascal()[p][i] > rank);
    word.set_digit(p + 1, true);
    rank -= pascal()[p][i];
  }
  return word;
}

}  // namespace gpn
