#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "opmi/container.hpp"
#include "opmi/corpus.hpp"
#include "opmi/scan.hpp"
#include "opmi/search.hpp"

namespace {

using namespace opmi;

void print_match_line(std::ostream& os, std::uint64_t ordinal,
                      const std::vector<std::uint64_t>& positions) {
  os << ordinal << ' ' << positions.size();
  for (std::uint64_t p : positions) os << ' ' << p;
  os << '\n';
}

void print_size_report(std::uint64_t n, const SectionSizes& sz) {
  const double raw = static_cast<double>(n) * sizeof(Value);
  std::printf("values            %llu (raw %llu bytes)\n",
              static_cast<unsigned long long>(n),
              static_cast<unsigned long long>(n * sizeof(Value)));
  std::printf("csa bytes         %llu (%.4f of raw)\n",
              static_cast<unsigned long long>(sz.csa_bytes), sz.csa_bytes / raw);
  std::printf("delta bytes       %llu (%.4f of raw)\n",
              static_cast<unsigned long long>(sz.delta_bytes), sz.delta_bytes / raw);
  std::printf("total index bytes %llu (%.4f of raw)\n",
              static_cast<unsigned long long>(sz.total()), sz.total() / raw);
}

int cmd_build(const std::string& corpus_path, const std::string& out_path, std::uint32_t q,
              std::uint32_t block, const std::string& coder_name, const std::string& mode_name) {
  OrderParams params{q, parse_mode(mode_name)};
  validate(params);
  Coder coder = parse_coder(coder_name);
  Sequence t = read_corpus(corpus_path);
  if (t.empty()) throw InvalidInput("corpus is empty");
  if (block < q) throw InvalidParams("--block must be at least q");
  OpmIndex index = OpmIndex::build(t, params, block, coder, Exec::parallel);
  save_index(index, out_path);
  print_size_report(index.size(), index_section_sizes(index));
  return 0;
}

int cmd_search(const std::string& index_path, const std::string& patterns_path, bool stats,
               bool fallback_scan) {
  OpmIndex index = load_index(index_path);
  std::vector<Sequence> patterns = read_patterns(patterns_path);
  Sequence text;  // recovered lazily, only when a short pattern needs the scan path
  std::uint64_t ordinal = 0;
  for (const Sequence& p : patterns) {
    ++ordinal;
    try {
      SearchResult res = index.search(p);
      print_match_line(std::cout, ordinal, res.positions);
      if (stats) {
        std::printf("# stats %llu phase1_rows=%llu phase2_candidates=%llu occurrences=%llu",
                    static_cast<unsigned long long>(ordinal),
                    static_cast<unsigned long long>(res.stats.phase1_rows),
                    static_cast<unsigned long long>(res.stats.phase2_candidates),
                    static_cast<unsigned long long>(res.stats.occurrences));
        if (res.stats.occurrences > 0) {
          std::printf(" ratio1=%.3f ratio2=%.3f",
                      static_cast<double>(res.stats.phase1_rows) / res.stats.occurrences,
                      static_cast<double>(res.stats.phase2_candidates) / res.stats.occurrences);
        } else {
          std::printf(" ratio1=inf ratio2=inf");
        }
        std::printf("\n");
      }
    } catch (const PatternTooShort&) {
      if (!fallback_scan) {
        std::cout << ordinal << " ERROR PatternTooShort\n";
        continue;
      }
      if (text.empty()) text = index.extract_all(Exec::parallel);
      if (p.size() > text.size()) {
        std::cout << ordinal << " ERROR PatternLongerThanCorpus\n";
        continue;
      }
      ScanReport rep = scan_search(text, p, index.params().mode);
      print_match_line(std::cout, ordinal, rep.positions);
    }
  }
  return 0;
}

int cmd_scan(const std::string& corpus_path, const std::string& patterns_path,
             const std::string& mode_name) {
  Mode mode = parse_mode(mode_name);
  Sequence t = read_corpus(corpus_path);
  std::vector<Sequence> patterns = read_patterns(patterns_path);
  std::uint64_t ordinal = 0;
  for (const Sequence& p : patterns) {
    ++ordinal;
    ScanReport rep = scan_search(t, p, mode);
    print_match_line(std::cout, ordinal, rep.positions);
    std::fprintf(stderr, "pattern %llu: %.3f ms\n", static_cast<unsigned long long>(ordinal),
                 rep.elapsed.count());
  }
  return 0;
}

int cmd_stats(const std::string& index_path) {
  OpmIndex index = load_index(index_path);
  std::printf("mode              %s\n", to_string(index.params().mode));
  std::printf("coder             %s\n", to_string(index.coder()));
  std::printf("q                 %u\n", index.params().q);
  std::printf("block size        %u\n", index.block_size());
  print_size_report(index.size(), index_section_sizes(index));
  return 0;
}

int cmd_gen(const std::string& kind, std::uint64_t n, const std::string& out_path,
            std::uint64_t seed) {
  Sequence t;
  if (kind == "rwalk")
    t = gen_rwalk(n, seed);
  else if (kind == "rand")
    t = gen_rand(n, seed);
  else
    throw InvalidParams("unknown generator '" + kind + "' (expected rwalk or rand)");
  write_corpus(t, out_path);
  return 0;
}

int cmd_extract(const std::string& corpus_path, const std::string& out_path, std::uint64_t count,
                std::uint64_t length, std::uint64_t seed) {
  Sequence t = read_corpus(corpus_path);
  if (length > t.size()) throw InvalidInput("pattern length exceeds corpus length");
  write_patterns(extract_patterns(t, count, length, seed), out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"order-preserving pattern matching over a compressed index"};
  app.require_subcommand(1);

  std::string corpus, out, index_path, patterns, kind;
  std::string coder_name = "lsk", mode_name = "weak";
  std::uint32_t q = 4, block = 32;
  std::uint64_t n = 0, seed = 1, count = 1000, length = 0;
  bool stats = false, fallback = false;

  auto* build = app.add_subcommand("build", "build an index from a corpus file");
  build->add_option("corpus", corpus)->required();
  build->add_option("out", out)->required();
  build->add_option("--q", q, "window size")->capture_default_str();
  build->add_option("--block", block, "block size")->capture_default_str();
  build->add_option("--coder", coder_name, "lsk|dlt|lsd")->capture_default_str();
  build->add_option("--mode", mode_name, "weak|strict")->capture_default_str();

  auto* search = app.add_subcommand("search", "search patterns in an index");
  search->add_option("index", index_path)->required();
  search->add_option("patterns", patterns)->required();
  search->add_flag("--stats", stats, "print per-pattern phase statistics");
  search->add_flag("--fallback-scan", fallback, "scan patterns no longer than q");

  auto* scan = app.add_subcommand("scan", "search patterns by scanning a corpus");
  scan->add_option("corpus", corpus)->required();
  scan->add_option("patterns", patterns)->required();
  scan->add_option("--mode", mode_name, "weak|strict")->capture_default_str();

  auto* st = app.add_subcommand("stats", "print index parameters and sizes");
  st->add_option("index", index_path)->required();

  auto* gen = app.add_subcommand("gen", "generate a test corpus");
  gen->add_option("kind", kind, "rwalk|rand")->required();
  gen->add_option("n", n, "number of values")->required();
  gen->add_option("out", out)->required();
  gen->add_option("--seed", seed)->capture_default_str();

  auto* extract = app.add_subcommand("extract", "cut random patterns out of a corpus");
  extract->add_option("corpus", corpus)->required();
  extract->add_option("out", out)->required();
  extract->add_option("--length", length, "pattern length")->required();
  extract->add_option("--count", count)->capture_default_str();
  extract->add_option("--seed", seed)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) return cmd_build(corpus, out, q, block, coder_name, mode_name);
    if (search->parsed()) return cmd_search(index_path, patterns, stats, fallback);
    if (scan->parsed()) return cmd_scan(corpus, patterns, mode_name);
    if (st->parsed()) return cmd_stats(index_path);
    if (gen->parsed()) return cmd_gen(kind, n, out, seed);
    if (extract->parsed()) return cmd_extract(corpus, out, count, length, seed);
  } catch (const CorruptContainer& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const CorruptBlock& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const CorruptStream& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
