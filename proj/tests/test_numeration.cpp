#include "doctest.h"

#include <thread>

#include "gpn/error.hpp"
#include "gpn/numeration.hpp"
#include "oracles.hpp"

using namespace gpn;

namespace {

std::vector<std::string> strings(const std::vector<GpnWord>& words) {
  std::vector<std::string> out;
  for (const auto& w : words) out.push_back(w.to_string());
  return out;
}

std::vector<std::uint64_t> as_u64(const std::vector<BigInt>& w) {
  std::vector<std::uint64_t> out;
  for (const auto& v : w) out.push_back(v.convert_to<std::uint64_t>());
  return out;
}

GpnWord word(const char* s) { return GpnWord::from_string(s); }

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::invalid_argument;
}

std::vector<WeightSystem> small_systems() {
  return {WeightSystem::fibonacci(),          WeightSystem::b_radix(2),
          WeightSystem::b_radix(3),           WeightSystem::factorial(),
          WeightSystem::deformed_fibonacci({1, 2}), WeightSystem::deformed_fibonacci({2, 1, 1}),
          WeightSystem::binomial_class(12, 1), WeightSystem::binomial_class(12, 3)};
}

}  // namespace

TEST_CASE("weights per kind") {
  CHECK(as_u64(weights(WeightSystem::fibonacci(), 4)) == std::vector<std::uint64_t>{1, 1, 2, 3});
  CHECK(as_u64(weights(WeightSystem::b_radix(2), 4)) == std::vector<std::uint64_t>{1, 2, 4, 8});
  CHECK(as_u64(weights(WeightSystem::deformed_fibonacci({1, 2}), 5)) == std::vector<std::uint64_t>{1, 1, 3, 5, 11});
  CHECK(as_u64(weights(WeightSystem::factorial(), 4)) == std::vector<std::uint64_t>{1, 2, 6, 24});
  CHECK(as_u64(weights(WeightSystem::binomial_class(6, 3), 5)) == std::vector<std::uint64_t>{1, 3, 6, 10, 15});
}

TEST_CASE("weight system validation") {
  CHECK(code_of([] { WeightSystem::b_radix(1); }) == Errc::invalid_argument);
  CHECK(code_of([] { WeightSystem::deformed_fibonacci({}); }) == Errc::invalid_argument);
  CHECK(code_of([] { WeightSystem::deformed_fibonacci({1, 0}); }) == Errc::invalid_argument);
  CHECK(code_of([] { WeightSystem::binomial_class(4, 0); }) == Errc::invalid_argument);
  CHECK(code_of([] { WeightSystem::binomial_class(4, 2).weights(5); }) == Errc::invalid_argument);
  CHECK(code_of([] { WeightSystem::fibonacci().weights(0); }) == Errc::invalid_argument);
}

TEST_CASE("fibonacci recurrence and deformed(1,1) identity") {
  const auto fib = weights(WeightSystem::fibonacci(), 64);
  for (unsigned k = 3; k <= 64; ++k) CHECK(fib[k - 1] == fib[k - 2] + fib[k - 3]);
  CHECK(weights(WeightSystem::deformed_fibonacci({1, 1}), 64) == fib);
  CHECK(as_u64(fib) == oracle::fibonacci(64));
  CHECK(as_u64(weights(WeightSystem::b_radix(3), 30)) == oracle::powers(3, 30));
  CHECK(as_u64(weights(WeightSystem::factorial(), 20)) == oracle::factorials(20));
  // factorial outgrows 64 bits
  CHECK(weights(WeightSystem::factorial(), 25).back() == BigInt("15511210043330985984000000"));
}

TEST_CASE("weights are positive and nondecreasing") {
  for (const auto& ws : small_systems()) {
    const auto w = ws.weights(12);
    for (std::size_t k = 0; k < w.size(); ++k) {
      CHECK(w[k] >= 1);
      if (k) CHECK(w[k] >= w[k - 1]);
    }
  }
}

TEST_CASE("weight cache is safe under concurrent readers") {
  const auto ws = WeightSystem::deformed_fibonacci({1, 1, 1});
  std::vector<std::vector<BigInt>> seen(8);
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < seen.size(); ++t)
      pool.emplace_back([&, t] {
        for (unsigned m = 1; m <= 80; ++m) seen[t] = ws.weights(m);
      });
  }
  for (const auto& s : seen) CHECK(s == seen[0]);
}

TEST_CASE("evaluate") {
  const auto fib = WeightSystem::fibonacci();
  CHECK(evaluate(word("1011"), fib) == 5);
  CHECK(evaluate(word("0000"), fib) == 0);
  CHECK(evaluate(word("0000"), WeightSystem::factorial()) == 0);
  CHECK(evaluate(word("111"), fib) == 4);
  CHECK(evaluate(word("0101"), WeightSystem::factorial()) == 7);
}

TEST_CASE("max value") {
  CHECK(max_value(WeightSystem::fibonacci(), 4) == 7);
  CHECK(max_value(WeightSystem::fibonacci(), 3) == 4);
  CHECK(max_value(WeightSystem::b_radix(2), 5) == 31);
  for (const auto& ws : small_systems())
    for (unsigned w = 1; w <= 12; ++w) CHECK(max_value(ws, w) == evaluate(GpnWord::from_mask((1ULL << w) - 1, w), ws));
}

TEST_CASE("representations from the Fibonacci table") {
  const auto fib = WeightSystem::fibonacci();
  CHECK(strings(representations(4, 4, fib)) == std::vector<std::string>{"0111", "1001", "1010"});
  CHECK(strings(representations(3, 4, fib)) == std::vector<std::string>{"0101", "0110", "1000"});
  CHECK(representations(7, 3, fib).empty());
  for (const auto& ws : small_systems())
    CHECK(strings(representations(0, 6, ws)) == std::vector<std::string>{"000000"});
  CHECK(code_of([&] { representations(1, 65, fib); }) == Errc::unsupported);
}

TEST_CASE("representations agree with exhaustive enumeration") {
  for (const auto& ws : small_systems()) {
    for (unsigned m = 1; m <= 12; ++m) {
      const auto table = oracle::all_representations(as_u64(ws.weights(m)));
      for (const auto& [v, words] : table) {
        CHECK(strings(representations(v, m, ws)) == words);
        CHECK(count_representations(v, m, ws) == words.size());
      }
      // the value just past each represented one is either represented or empty
      for (const auto& [v, words] : table)
        if (!table.count(v + 1)) {
          CHECK(representations(v + 1, m, ws).empty());
          CHECK(count_representations(v + 1, m, ws) == 0);
        }
    }
  }
}

TEST_CASE("plurality and positional uniqueness") {
  for (unsigned m = 1; m <= 12; ++m)
    for (std::uint64_t v = 0; v < (1ULL << m); ++v) CHECK(count_representations(v, m, WeightSystem::b_radix(2)) == 1);
  for (unsigned m = 3; m <= 12; ++m) {
    bool plural = false;
    for (std::uint64_t v = 0; v <= max_value(WeightSystem::fibonacci(), m); ++v)
      plural |= count_representations(v, m, WeightSystem::fibonacci()) >= 2;
    CHECK(plural);
  }
}

TEST_CASE("count works far beyond enumeration range") {
  // 0 and the maximum have exactly one word at any width
  const auto fib = WeightSystem::fibonacci();
  CHECK(count_representations(0, 64, fib) == 1);
  CHECK(count_representations(max_value(fib, 64), 64, fib) == 1);
  CHECK(count_representations(1, 64, fib) == 2);
}

TEST_CASE("canonical encode") {
  const auto fib = WeightSystem::fibonacci();
  CHECK(canonical_encode(4, 4, fib).to_string() == "1010");
  CHECK(canonical_encode(7, 4, fib).to_string() == "1111");
  CHECK(canonical_encode(5, 3, WeightSystem::b_radix(2)).to_string() == "101");
  CHECK(code_of([&] { canonical_encode(8, 4, fib); }) == Errc::not_representable);
  // factorial 1,2,6: 4 lies below the maximum but has no word
  CHECK(code_of([] { canonical_encode(4, 3, WeightSystem::factorial()); }) == Errc::not_representable);
}

TEST_CASE("canonical encode roundtrips and falls back to the largest representation") {
  for (const auto& ws : small_systems())
    for (unsigned m = 1; m <= 12; ++m) {
      const auto table = oracle::all_representations(as_u64(ws.weights(m)));
      for (const auto& [v, words] : table) {
        const auto w = canonical_encode(v, m, ws);
        CHECK(evaluate(w, ws) == v);
        CHECK(w.to_string() == words.back());
      }
    }
  const auto ws = WeightSystem::deformed_fibonacci({2, 1, 1});
  CHECK(as_u64(ws.weights(4)) == std::vector<std::uint64_t>{1, 2, 5, 13});
}

TEST_CASE("combinadic rank and unrank") {
  CHECK(combo_rank(word("0011")) == 0);
  CHECK(combo_rank(word("1100")) == 5);
  CHECK(combo_rank(word("0101")) == 1);
  CHECK(combo_unrank(4, 2, 0).to_string() == "0011");
  CHECK(combo_unrank(4, 2, 5).to_string() == "1100");
  CHECK(combo_unrank(4, 2, 3).to_string() == oracle::weight_k_words(4, 2)[3]);
  CHECK(combo_unrank(4, 2, 3).to_string() == "1001");
  CHECK(code_of([] { combo_unrank(4, 2, 6); }) == Errc::out_of_range);
  CHECK(code_of([] { combo_unrank(4, 5, 0); }) == Errc::invalid_argument);
  CHECK(code_of([] { combo_rank(GpnWord{}); }) == Errc::invalid_argument);
}

TEST_CASE("combinadic agrees with lexicographic enumeration") {
  for (unsigned n = 1; n <= 12; ++n)
    for (unsigned k = 0; k <= n; ++k) {
      const auto words = oracle::weight_k_words(n, k);
      REQUIRE(words.size() == binomial(n, k));
      for (std::uint64_t r = 0; r < words.size(); ++r) {
        CHECK(combo_rank(word(words[r].c_str())) == r);
        CHECK(combo_unrank(n, k, r).to_string() == words[r]);
      }
    }
}

TEST_CASE("binomial row sums are powers of two") {
  for (unsigned n = 0; n <= 20; ++n) {
    std::uint64_t sum = 0;
    for (unsigned k = 0; k <= n; ++k) sum += binomial(n, k);
    CHECK(sum == (1ULL << n));
  }
  CHECK(binomial(64, 32) == 1832624140942590534ULL);
}

TEST_CASE("word string convention") {
  const auto w = word("1000");
  CHECK(w.width() == 4);
  CHECK(w.digit(4));
  CHECK_FALSE(w.digit(1));
  CHECK(w.to_mask() == 8);
  CHECK(GpnWord::from_mask(8, 4) == w);
  CHECK(word("0111") < word("1000"));
  CHECK(code_of([] { GpnWord::from_string("012"); }) == Errc::invalid_argument);
}
