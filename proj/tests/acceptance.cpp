// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gpn/cli.hpp"
#include "gpn/compositions.hpp"
#include "gpn/container.hpp"
#include "gpn/error.hpp"
#include "gpn/fma.hpp"
#include "gpn/multichannel.hpp"
#include "gpn/numeration.hpp"
#include "oracles.hpp"

using namespace gpn;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

std::string cli(std::vector<std::string> args, int* status = nullptr) {
  std::istringstream in;
  std::ostringstream out, err;
  const int s = cli::run(args, in, out, err);
  if (status) *status = s;
  return out.str();
}

BitString bits(std::string_view s) { return BitString::from_string(s); }

// 1
void classic_codebook(Outcome& o) {
  int status = -1;
  const auto out = cli({"codebook", "--algo", "mv2", "--n", "2", "--seed", "0"}, &status);
  if (status != 0) o.fail("exit status " + std::to_string(status));
  if (out != "symbol\tclass\tcode\n00\t1\t0\n01\t2\t00\n10\t2\t11\n11\t1\t1\n") o.fail("dump differs:\n" + out);
}

// 2
void two_round_trace(Outcome& o) {
  const auto cb = build_mv2_codebook(2, 0);
  const auto input = bits("000011110101");
  const auto r1 = encode_round(input, cb);
  if (r1.core.to_string() != "00110000" || r1.flags.to_string() != "1010101011") o.fail("round 1 differs");
  const auto r2 = encode_round(r1.core, cb);
  if (r2.core.to_string() != "0100" || r2.flags.to_string() != "10101010") o.fail("round 2 differs");
  const auto out = transform(input, cb, 2);
  if (out.core.to_string() != "0100" || out.flags.size() != 2 || out.flags[0].to_string() != "1010101011" ||
      out.flags[1].to_string() != "10101010")
    o.fail("transform differs");
  if (inverse_transform(out, cb) != input) o.fail("inverse differs");
  const auto trace = cli({"trace", "mv2", "--n", "2", "--rounds", "2", "--hex", "0F5"});
  if (trace != "round\tcore\tflag\n0\t00 00 11 11 01 01\t-\n1\t0 0 1 1 00 00\t10 10 10 10 1 1\n"
               "2\t0 1 0 0\t10 10 10 10\n# inverse ok\n")
    o.fail("trace differs:\n" + trace);
}

// 3
void fibonacci_table(Outcome& o) {
  const std::vector<std::pair<const char*, int>> want = {
      {"0000", 0}, {"0001", 1}, {"0010", 1}, {"0011", 2}, {"0100", 2}, {"0101", 3}, {"0110", 3}, {"0111", 4},
      {"1000", 3}, {"1001", 4}, {"1010", 4}, {"1011", 5}, {"1100", 5}, {"1101", 6}, {"1110", 6}, {"1111", 7},
      {"000", 0},  {"001", 1},  {"010", 1},  {"011", 2},  {"100", 2},  {"101", 3},  {"110", 3},  {"111", 4},
      {"00", 0},   {"01", 1},   {"10", 1},   {"11", 2},   {"0", 0},    {"1", 1}};
  std::string expected = "width\tword\tvalue\n";
  for (const auto& [w, v] : want)
    expected += std::to_string(std::string(w).size()) + "\t" + w + "\t" + std::to_string(v) + "\n";
  int status = -1;
  const auto out = cli({"table", "gpn", "--system", "fibonacci", "--width", "4"}, &status);
  if (status != 0) o.fail("exit status " + std::to_string(status));
  if (out != expected) o.fail("table differs:\n" + out);
}

// 4
void partition_products(Outcome& o) {
  const auto t = product_table(8);
  const std::map<unsigned, std::multiset<std::uint64_t>> want = {
      {6, {5, 8, 9, 4, 6, 8, 3, 4, 2, 1}},
      {7, {6, 10, 12, 5, 8, 9, 12, 4, 6, 8, 3, 4, 2, 1}},
      {8, {7, 12, 15, 16, 6, 10, 12, 16, 18, 5, 8, 9, 12, 16, 4, 6, 8, 3, 4, 2, 1}}};
  const std::map<unsigned, std::uint64_t> max = {{6, 9}, {7, 12}, {8, 18}};
  for (const auto& g : t) {
    if (!want.count(g.n)) continue;
    std::multiset<std::uint64_t> got;
    std::uint64_t best = 0;
    for (const auto& r : g.reports) {
      got.insert(r.product.convert_to<std::uint64_t>());
      if (r.is_max) best = r.product.convert_to<std::uint64_t>();
    }
    if (got != want.at(g.n)) o.fail("product multiset differs for N=" + std::to_string(g.n));
    if (best != max.at(g.n)) o.fail("max product differs for N=" + std::to_string(g.n));
    if (max_product_partition(g.n).product != max.at(g.n)) o.fail("max_product_partition differs");
  }
  if (t[5].reports.size() != 10 || t[6].reports.size() != 14) o.fail("partition counts differ");
  const auto tsv = cli({"analyze", "partitions", "--max", "8"});
  for (const char* line : {"6\t2\t3+3\t9\t1\n", "7\t2\t4+3\t12\t1\n", "8\t3\t3+3+2\t18\t1\n"})
    if (tsv.find(line) == std::string::npos) o.fail(std::string("cli max row missing: ") + line);
}

// 5
void roundtrips(Outcome& o) {
  std::mt19937_64 rng(0x5eed);
  const auto random_input = [&] { return bits(oracle::random_bits(rng, rng() % 4097)); };
  // aligned and non-aligned lengths both occur; also force the extremes
  const auto input_for = [&](int i) {
    if (i == 0) return BitString{};
    if (i == 1) return bits(oracle::random_bits(rng, 4096));
    return random_input();
  };
  const auto check_family = [&](const Codebook& cb, const std::string& label) {
    for (int i = 0; i < 1000 && o.ok; ++i) {
      const auto x = input_for(i);
      const auto out = transform(x, cb, 1 + static_cast<unsigned>(rng() % 4));
      const auto c = read_container(write_container(make_container(cb, out)));
      if (decode_container(c) != x) o.fail(label + " failed at case " + std::to_string(i));
    }
  };
  for (unsigned n : {2U, 3U, 4U, 8U}) check_family(build_mv2_codebook(n, rng()), "mv2 N=" + std::to_string(n));
  for (int v = 0; v < 5; ++v) {
    const unsigned n = 2 + static_cast<unsigned>(rng() % 7);
    const auto m = oracle::feasible_multiplicities(rng, n);
    check_family(build_clone_codebook(n, m, rng()), "clone N=" + std::to_string(n));
  }
  for (unsigned n = 2; n <= 10; ++n) check_family(build_binomial_codebook(n), "binomial N=" + std::to_string(n));
  for (unsigned n : {2U, 3U, 4U, 8U})
    for (auto policy : {FmaPolicy::canonical, FmaPolicy::keyed}) {
      const auto cfg = make_fma_config(n, policy, rng());
      for (int i = 0; i < 1000 && o.ok; ++i) {
        const auto x = input_for(i);
        const auto c = read_container(write_container(make_container(cfg, fma_encode(x, cfg))));
        if (decode_container(c) != x)
          o.fail("fma N=" + std::to_string(n) + " " + std::string(policy_name(policy)) + " failed at case " +
                 std::to_string(i));
      }
    }
}

// 6
void class_sums(Outcome& o) {
  std::mt19937_64 rng(6);
  for (unsigned n = 2; n <= 16; ++n) {
    const std::uint64_t full = std::uint64_t{1} << n;
    const auto sum = [](const Codebook& cb) {
      std::uint64_t s = 0;
      for (auto m : cb.multiplicities()) s += m;
      return s;
    };
    const auto mv2 = build_mv2_codebook(n, 0);
    std::uint64_t by_class = 2;
    for (unsigned k = 1; k < n; ++k) {
      by_class += std::uint64_t{1} << k;
      if (mv2.multiplicities()[k] != (std::uint64_t{1} << k)) o.fail("mv2 class size");
    }
    if (by_class != full || sum(mv2) != full) o.fail("mv2 sum at N=" + std::to_string(n));
    if (sum(build_clone_codebook(n, oracle::feasible_multiplicities(rng, n), 1)) != full)
      o.fail("clone sum at N=" + std::to_string(n));
    if (sum(build_binomial_codebook(n)) != full) o.fail("binomial sum at N=" + std::to_string(n));
    std::uint64_t binom = 0;
    for (unsigned k = 0; k <= n; ++k) binom += binomial(n, k);
    if (binom != full) o.fail("binomial row at N=" + std::to_string(n));
  }
}

// 7
void fma_plurality(Outcome& o) {
  const auto fib = WeightSystem::fibonacci();
  for (unsigned n = 1; n <= 16; ++n)
    if (min_width(n, fib) < n) o.fail("min_width below N at N=" + std::to_string(n));
  const FmaCodec codec(FmaConfig{3, 4, fib, FmaPolicy::canonical, 0});
  const std::map<std::uint32_t, std::uint64_t> want = {{0, 1}, {1, 2}, {2, 2}, {3, 3}, {4, 3}, {7, 1}};
  for (const auto& [v, c] : want) {
    if (codec.count(v) != c) o.fail("count of " + std::to_string(v));
    if (representation_count(v, 4, fib) != c) o.fail("representation_count of " + std::to_string(v));
  }
  const auto w = oracle::fibonacci(4);
  for (std::uint64_t mask = 0; mask < 16; ++mask)
    if (fma_decode_chunk(GpnWord::from_mask(mask, 4), codec.config()) != oracle::value(mask, w))
      o.fail("decode of " + oracle::word(mask, 4));
}

// 8
void oracle_equivalence(Outcome& o) {
  const std::vector<WeightSystem> systems = {
      WeightSystem::fibonacci(),          WeightSystem::b_radix(2),
      WeightSystem::b_radix(3),           WeightSystem::factorial(),
      WeightSystem::deformed_fibonacci({1, 2}), WeightSystem::deformed_fibonacci({2, 1, 1}),
      WeightSystem::binomial_class(12, 2)};
  for (const auto& ws : systems)
    for (unsigned m = 1; m <= 12; ++m) {
      std::vector<std::uint64_t> w;
      for (const auto& r : ws.weights(m)) w.push_back(r.convert_to<std::uint64_t>());
      const auto table = oracle::all_representations(w);
      const auto strings = [&](std::uint64_t v) {
        std::vector<std::string> got;
        for (const auto& word : representations(v, m, ws)) got.push_back(word.to_string());
        return got;
      };
      for (const auto& [v, words] : table) {
        if (strings(v) != words) o.fail(ws.name() + " M=" + std::to_string(m) + " value " + std::to_string(v));
        if (!table.count(v + 1) && !strings(v + 1).empty())
          o.fail(ws.name() + " M=" + std::to_string(m) + " gap value " + std::to_string(v + 1));
      }
    }
  for (unsigned n = 1; n <= 12; ++n)
    for (unsigned k = 0; k <= n; ++k) {
      const auto words = oracle::weight_k_words(n, k);
      for (std::uint64_t r = 0; r < words.size(); ++r) {
        if (combo_unrank(n, k, r).to_string() != words[r]) o.fail("unrank n=" + std::to_string(n));
        if (combo_rank(GpnWord::from_string(words[r])) != r) o.fail("rank n=" + std::to_string(n));
      }
    }
}

// 9
void statistics(Outcome& o) {
  std::mt19937_64 rng(9);
  std::vector<std::uint8_t> raw(1 << 20);
  for (auto& b : raw) b = static_cast<std::uint8_t>(rng());
  const auto input = BitString::from_bytes(raw);
  const auto out = transform(input, build_mv2_codebook(2, 0), 1);
  const auto st = channel_stats(out, input.size());
  const double zeros = st.core.zero_frequency();
  const double ratio = static_cast<double>(st.first_core_bits) / static_cast<double>(st.input_bits);
  char buf[96];
  std::snprintf(buf, sizeof buf, "zero freq %.5f, core/input %.5f", zeros, ratio);
  o.detail = buf;
  if (std::abs(zeros - 0.5) > 0.005) o.fail(std::string("zero frequency out of range: ") + buf);
  if (std::abs(ratio - 0.75) > 0.01) o.fail(std::string("core ratio out of range: ") + buf);
}

// 10
void container_fuzz(Outcome& o) {
  std::mt19937_64 rng(10);
  std::vector<std::vector<std::uint8_t>> valid;
  const std::vector<std::uint64_t> mult{1, 3, 4};
  for (int i = 0; i < 4; ++i) {
    const auto x = bits(oracle::random_bits(rng, 64 + rng() % 2000));
    const auto mv2 = build_mv2_codebook(2 + i, rng());
    valid.push_back(write_container(make_container(mv2, transform(x, mv2, 1 + i))));
    const auto clone = build_clone_codebook(3, mult, rng());
    valid.push_back(write_container(make_container(clone, transform(x, clone, 2))));
    const auto binom = build_binomial_codebook(3 + i);
    valid.push_back(write_container(make_container(binom, transform(x, binom, 3))));
    const auto cfg = make_fma_config(2 + i, FmaPolicy::keyed, rng());
    valid.push_back(write_container(make_container(cfg, fma_encode(x, cfg))));
  }
  std::map<std::string, int> seen;
  for (int i = 0; i < 1000; ++i) {
    const auto& source = valid[rng() % valid.size()];
    auto bytes = source;
    switch (i % 5) {
      case 0: bytes.resize(rng() % bytes.size()); break;
      case 1: bytes[rng() % bytes.size()] ^= static_cast<std::uint8_t>(1U << (rng() % 8)); break;
      case 2: bytes[rng() % bytes.size()] ^= static_cast<std::uint8_t>(1 + rng() % 255); break;
      case 3: {
        const auto at = rng() % bytes.size();
        const auto len = std::min<std::size_t>(1 + rng() % 16, bytes.size() - at);
        for (std::size_t k = 0; k < len; ++k) bytes[at + k] = static_cast<std::uint8_t>(rng());
        if (bytes == source) bytes[at] ^= 0xFF;
        break;
      }
      default:
        if (rng() % 2) {
          bytes.push_back(static_cast<std::uint8_t>(rng()));
        } else {
          bytes.erase(bytes.begin() + static_cast<std::ptrdiff_t>(rng() % bytes.size()));
        }
    }
    try {
      const auto c = read_container(bytes);
      decode_container(c);
      o.fail("mutation " + std::to_string(i) + " was accepted");
    } catch (const Error& e) {
      ++seen[std::string(errc_name(e.code()))];
    } catch (const std::exception& e) {
      o.fail(std::string("untyped exception: ") + e.what());
    }
  }
  if (o.ok) {
    std::string s;
    for (const auto& [k, v] : seen) s += (s.empty() ? "" : ", ") + k + " " + std::to_string(v);
    o.detail = s;
  }
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<void(Outcome&)> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "classic N=2 codebook dump", 1, classic_codebook},
      {2, "two-round MV2 trace and inverse", 1, two_round_trace},
      {3, "Fibonacci word table up to width 4", 1, fibonacci_table},
      {4, "partition products, maxima and counts", 1, partition_products},
      {5, "roundtrip suite over all algorithms", 60, roundtrips},
      {6, "class sizes sum to 2^N", 1, class_sums},
      {7, "FMA expansion, plurality, decode independence", 1, fma_plurality},
      {8, "oracle equivalence for numeration and combinadic", 30, oracle_equivalence},
      {9, "1 MiB MV2 statistics", 10, statistics},
      {10, "container fuzz", 30, container_fuzz},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && secs > c.limit_s) o.fail("took longer than " + std::to_string(c.limit_s) + " s");
    std::printf("[%s] %2d %s (%.3f s, limit %.0f s)%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, c.limit_s,
                o.detail.empty() ? "" : ": ", o.detail.c_str());
    failures += o.ok ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures ? 1 : 0;
}
