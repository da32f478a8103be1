#include "gpn/cli.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "gpn/compositions.hpp"
#include "gpn/container.hpp"
#include "gpn/error.hpp"
#include "gpn/fma.hpp"
#include "gpn/multichannel.hpp"
#include "gpn/numeration.hpp"

namespace gpn::cli {

namespace {

// Bad parameters detected after parsing; reported with exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t parse_seed(const std::string& text) {
  std::uint64_t v = 0;
  const bool hex = text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X');
  const char* first = text.data() + (hex ? 2 : 0);
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v, hex ? 16 : 10);
  if (ec != std::errc{} || ptr != last || first == last)
    throw UsageError("seed must be a decimal or 0x-prefixed hex 64-bit integer: " + text);
  return v;
}

std::vector<std::uint8_t> read_input(const std::string& path, std::istream& in) {
  if (path == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open input file " + path);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& path, std::span<const std::uint8_t> bytes, std::ostream& out) {
  if (path == "-") {
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw UsageError("cannot open output file " + path);
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw Error(Errc::corrupt_stream, "short write to " + path);
}

BitString hex_bits(const std::string& hex) {
  BitString bits;
  for (char c : hex) {
    if (c == ' ' || c == '_') continue;
    unsigned v = 0;
    if (c >= '0' && c <= '9') v = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'f') v = static_cast<unsigned>(c - 'a' + 10);
    else if (c >= 'A' && c <= 'F') v = static_cast<unsigned>(c - 'A' + 10);
    else throw UsageError(std::string("bad hex digit '") + c + "'");
    bits.append_bits(v, 4);
  }
  return bits;
}

struct CodebookOptions {
  std::string algo = "mv2";
  unsigned n = 2;
  std::string seed = "0";
  std::vector<std::uint64_t> mult;

  void add_to(CLI::App* cmd, bool with_algo) {
    if (with_algo)
      cmd->add_option("--algo", algo, "mv2 | clone | binomial")
          ->check(CLI::IsMember({"mv2", "clone", "binomial"}))
          ->capture_default_str();
    cmd->add_option("--n", n, "symbol width N")->check(CLI::Range(1U, kMaxSymbolWidth))->capture_default_str();
    cmd->add_option("--seed", seed, "key, decimal or 0x-hex")->capture_default_str();
    cmd->add_option("--mult", mult, "clone multiplicities M_1,...,M_N")->delimiter(',');
  }

  Codebook build() const {
    try {
      const auto s = parse_seed(seed);
      if (algo == "mv2") return build_mv2_codebook(n, s);
      if (algo == "clone") return build_clone_codebook(n, mult, s);
      return build_binomial_codebook(n);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }
};

std::string group_bits(const BitString& bits, std::size_t pos, std::size_t len) {
  return len == 0 ? "-" : bits.slice(pos, len).to_string();
}

void print_trace(std::ostream& out, const BitString& input, const Codebook& cb, unsigned rounds) {
  const unsigned n = cb.symbol_width();
  out << "round\tcore\tflag\n";
  BitString current = input;
  current.resize((current.size() + n - 1) / n * n);
  out << 0 << '\t';
  for (std::size_t pos = 0; pos < current.size(); pos += n)
    out << (pos ? " " : "") << current.slice(pos, n).to_string();
  out << "\t-\n";

  const auto mro = transform(input, cb, rounds);
  for (unsigned r = 1; r <= mro.rounds_executed; ++r) {
    const auto round = encode_round(current, cb);
    std::string core_col;
    std::string flag_col;
    std::size_t core_pos = 0;
    std::size_t flag_pos = 0;
    for (std::size_t pos = 0; pos < current.size(); pos += n) {
      const auto& e = cb.entry(static_cast<std::uint32_t>(current.read_bits(pos, n)));
      if (pos) {
        core_col += ' ';
        flag_col += ' ';
      }
      core_col += group_bits(round.core, core_pos, e.length);
      flag_col += group_bits(round.flags, flag_pos, n - e.cls + 1);
      core_pos += e.length;
      flag_pos += n - e.cls + 1;
    }
    out << r << '\t' << core_col << '\t' << flag_col << '\n';
    current = round.core;
    current.resize((current.size() + n - 1) / n * n);
  }
  const bool ok = inverse_transform(mro, cb) == input;
  out << "# inverse " << (ok ? "ok" : "MISMATCH") << '\n';
  if (!ok) throw Error(Errc::corrupt_stream, "trace inverse did not reproduce the input");
}

WeightSystem system_from(const std::string& name, unsigned base, const std::vector<unsigned>& c,
                         unsigned k, unsigned width) {
  try {
    if (name == "fibonacci") return WeightSystem::fibonacci();
    if (name == "binary") return WeightSystem::b_radix(2);
    if (name == "b-radix") return WeightSystem::b_radix(base);
    if (name == "factorial") return WeightSystem::factorial();
    if (name == "deformed") return WeightSystem::deformed_fibonacci(c);
    return WeightSystem::binomial_class(width, k);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

void print_gpn_table(std::ostream& out, const WeightSystem& ws, unsigned width, bool pretty) {
  if (!pretty) out << "width\tword\tvalue\n";
  for (unsigned w = width; w >= 1; --w) {
    if (pretty) out << w << "-digit " << ws.name() << "\n";
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << w); ++mask) {
      const auto word = GpnWord::from_mask(mask, w);
      if (pretty)
        out << "  " << std::setw(static_cast<int>(width)) << word.to_string() << "  " << evaluate(word, ws) << '\n';
      else
        out << w << '\t' << word.to_string() << '\t' << evaluate(word, ws) << '\n';
    }
  }
}

void print_partitions_pretty(std::ostream& out, const std::vector<ProductGroup>& table) {
  for (const auto& g : table) {
    const ProductReport* best = nullptr;
    for (const auto& r : g.reports)
      if (r.is_max) best = &r;
    out << "N=" << g.n << "  partitions " << g.reports.size() << "  max " << best->product << " ("
        << best->partition.to_string() << ")  products";
    for (const auto& r : g.reports) out << ' ' << r.product;
    out << '\n';
  }
}

void print_codebook(std::ostream& out, const Codebook& cb) {
  const unsigned n = cb.symbol_width();
  out << "symbol\tclass\tcode\n";
  for (std::uint32_t s = 0; s < cb.symbol_count(); ++s) {
    const auto& e = cb.entry(s);
    BitString sym;
    sym.append_bits(s, n);
    BitString code;
    code.append_bits(e.code, e.length);
    out << sym.to_string() << '\t' << e.cls << '\t' << code.to_string() << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized positional numeration codecs", "gpnc"};
  app.require_subcommand(1);

  // encode
  auto* encode = app.add_subcommand("encode", "encode a file into a GPNC container");
  CodebookOptions enc_cb;
  enc_cb.add_to(encode, false);
  std::string enc_algo = "mv2";
  unsigned rounds = 1;
  std::string policy = "canonical";
  unsigned m_override = 0;
  unsigned threads = 1;
  std::string enc_in;
  std::string enc_out;
  std::string flags_out;
  encode->add_option("--algo", enc_algo, "mv2 | clone | binomial | fma")
      ->check(CLI::IsMember({"mv2", "clone", "binomial", "fma"}))
      ->capture_default_str();
  encode->add_option("--rounds", rounds, "recoding rounds (MV2 family)")->check(CLI::Range(1, 255))->capture_default_str();
  encode->add_option("--policy", policy, "FMA policy: canonical | keyed")
      ->check(CLI::IsMember({"canonical", "keyed"}))
      ->capture_default_str();
  encode->add_option("--m", m_override, "FMA target width (default: minimal)")->check(CLI::Range(0, 64));
  encode->add_option("--threads", threads, "FMA worker threads")->check(CLI::Range(1, 256))->capture_default_str();
  encode->add_option("--in", enc_in, "input file or -")->required();
  encode->add_option("--out", enc_out, "output container or -")->required();
  encode->add_option("--flags-out", flags_out, "write flag streams to a separate file");

  // decode
  auto* decode = app.add_subcommand("decode", "decode a GPNC container");
  std::string dec_in;
  std::string dec_out;
  std::string flags_in;
  decode->add_option("--in", dec_in, "container file or -")->required();
  decode->add_option("--out", dec_out, "output file or -")->required();
  decode->add_option("--flags-in", flags_in, "flag file written by encode --flags-out");

  // analyze partitions
  auto* analyze = app.add_subcommand("analyze", "integer decomposition analysis");
  analyze->require_subcommand(1);
  auto* partitions = analyze->add_subcommand("partitions", "partition products up to --max");
  unsigned max_n = 8;
  std::string format = "tsv";
  partitions->add_option("--max", max_n, "largest N")->check(CLI::Range(1, 60))->capture_default_str();
  partitions->add_option("--format", format, "tsv | pretty")->check(CLI::IsMember({"tsv", "pretty"}));

  // table gpn
  auto* table = app.add_subcommand("table", "numeration tables");
  table->require_subcommand(1);
  auto* gpn_table = table->add_subcommand("gpn", "values of every word up to --width");
  std::string system = "fibonacci";
  unsigned width = 4;
  unsigned base = 2;
  std::vector<unsigned> coeffs{1, 1};
  unsigned binom_k = 2;
  std::string table_format = "tsv";
  gpn_table->add_option("--system", system, "fibonacci | binary | b-radix | factorial | deformed | binomial")
      ->check(CLI::IsMember({"fibonacci", "binary", "b-radix", "factorial", "deformed", "binomial"}))
      ->capture_default_str();
  gpn_table->add_option("--width", width, "largest word width")->check(CLI::Range(1, 20))->capture_default_str();
  gpn_table->add_option("--base", base, "b-radix base");
  gpn_table->add_option("--c", coeffs, "deformation coefficients c_1,...,c_k")->delimiter(',');
  gpn_table->add_option("--k", binom_k, "binomial class order");
  gpn_table->add_option("--format", table_format, "tsv | pretty")->check(CLI::IsMember({"tsv", "pretty"}));

  // trace
  auto* trace = app.add_subcommand("trace", "round-by-round core/flag trace");
  trace->require_subcommand(1);
  CodebookOptions trace_cb;
  unsigned trace_rounds = 1;
  std::string trace_hex;
  std::string trace_bits;
  std::vector<CLI::App*> trace_cmds;
  for (const char* algo : {"mv2", "clone", "binomial"}) {
    auto* cmd = trace->add_subcommand(algo, std::string("trace ") + algo);
    trace_cb.add_to(cmd, false);
    cmd->add_option("--rounds", trace_rounds, "rounds")->check(CLI::Range(1, 255));
    auto* hex = cmd->add_option("--hex", trace_hex, "input as hex digits, 4 bits each");
    auto* bits = cmd->add_option("--bits", trace_bits, "input as a 0/1 string");
    hex->excludes(bits);
    trace_cmds.push_back(cmd);
  }

  // codebook
  auto* codebook = app.add_subcommand("codebook", "dump the symbol -> code table");
  CodebookOptions dump_cb;
  dump_cb.add_to(codebook, true);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "gpnc: " << e.what() << '\n';
    return kExitUsage;
  }

  bool setup = true;  // errors before any data is read are usage errors
  try {
    if (*encode) {
      const auto algo = *parse_algorithm(enc_algo);
      if (algo == Algorithm::fma) {
        FmaConfig cfg;
        try {
          if (enc_cb.n > 16) throw UsageError("FMA chunk width must be <= 16");
          cfg = make_fma_config(enc_cb.n, *parse_policy(policy), parse_seed(enc_cb.seed));
          if (m_override) {
            if (m_override < cfg.target_width)
              throw UsageError("--m " + std::to_string(m_override) + " is below the minimal width " +
                               std::to_string(cfg.target_width));
            cfg.target_width = m_override;
          }
          FmaCodec{cfg};
        } catch (const Error& e) {
          throw UsageError(e.what());
        }
        if (!flags_out.empty()) throw UsageError("FMA streams have no flag channel");
        setup = false;
        const auto bytes = read_input(enc_in, in);
        const auto stream = fma_encode(BitString::from_bytes(bytes), cfg, threads);
        write_output(enc_out, write_container(make_container(cfg, stream)), out);
      } else {
        enc_cb.algo = enc_algo;
        if (algo == Algorithm::mv2 && enc_cb.n < 2) throw UsageError("MV2 needs N >= 2");
        const Codebook cb = enc_cb.build();
        setup = false;
        const auto bytes = read_input(enc_in, in);
        auto container = make_container(cb, transform(BitString::from_bytes(bytes), cb, rounds));
        if (!flags_out.empty()) {
          write_output(flags_out, write_flag_file(container.flags), out);
          for (auto& f : container.flags) f = BitString{};
        }
        write_output(enc_out, write_container(container), out);
      }
      return kExitOk;
    }

    if (*decode) {
      setup = false;
      auto container = read_container(read_input(dec_in, in));
      if (!flags_in.empty()) {
        if (container.algorithm == Algorithm::fma) throw UsageError("FMA streams have no flag channel");
        auto flags = read_flag_file(read_input(flags_in, in));
        if (flags.size() != container.flags.size())
          throw Error(Errc::corrupt_stream, "flag file round count differs from the container");
        for (const auto& f : container.flags)
          if (!f.empty()) throw Error(Errc::corrupt_stream, "container already carries flag streams");
        container.flags = std::move(flags);
      }
      const auto bits = decode_container(container);
      if (bits.size() % 8 != 0)
        throw Error(Errc::corrupt_stream, "decoded stream is not a whole number of bytes");
      write_output(dec_out, bits.bytes(), out);
      return kExitOk;
    }

    if (*partitions) {
      const auto t = product_table(max_n);
      if (format == "pretty")
        print_partitions_pretty(out, t);
      else
        write_product_table_tsv(out, t);
      return kExitOk;
    }

    if (*gpn_table) {
      const auto ws = system_from(system, base, coeffs, binom_k, width);
      print_gpn_table(out, ws, width, table_format == "pretty");
      return kExitOk;
    }

    for (auto* cmd : trace_cmds) {
      if (!*cmd) continue;
      trace_cb.algo = cmd->get_name();
      if (trace_cb.algo == "mv2" && trace_cb.n < 2) throw UsageError("MV2 needs N >= 2");
      const Codebook cb = trace_cb.build();
      BitString input;
      try {
        input = trace_hex.empty() ? BitString::from_string(trace_bits) : hex_bits(trace_hex);
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
      setup = false;
      print_trace(out, input, cb, trace_rounds);
      return kExitOk;
    }

    if (*codebook) {
      if (dump_cb.algo == "mv2" && dump_cb.n < 2) throw UsageError("MV2 needs N >= 2");
      print_codebook(out, dump_cb.build());
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "gpnc: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "gpnc: " << e.what() << '\n';
    return setup ? kExitUsage : kExitData;
  }
  return kExitUsage;
}

}  // namespace gpn::cli
