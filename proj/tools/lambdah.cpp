// lambdah: command-line front end for the lambda-H workbench.
//
// Exit codes: 0 success, 1 property violation or disagreement, 2 usage or
// parse error.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lambdah/json.hpp"
#include "lambdah/lambdah.hpp"

namespace {

using namespace lambdah;
using json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

const char* kSynopsis =
    "usage: lambdah <fmt|extract|reduce|solvable|lockstep|check|corpus> [ARGS] [--strategy t|i|j|it|jt] "
    "[--fuel N] [--max-t N] [--seed N] [--max-size N] [--json] [--trace]";

ParseOptions cli_parse_options() {
  ParseOptions o;
  o.constants = builtin_constant;
  return o;
}

ParsedTerm read_term(const std::string& text) { return parse_open_term(text, cli_parse_options()); }

// Non-blank, non-comment lines with their 1-based line numbers.
struct SourceLine {
  std::size_t number;
  std::string text;
};

std::vector<SourceLine> read_lines(std::istream& in) {
  std::vector<SourceLine> out;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    const auto hash = line.find('#');
    std::string code = line.substr(0, hash);
    if (code.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back({n, line});
  }
  return out;
}

int cmd_fmt(const std::string& path, bool as_json) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (path != "-") {
    file.open(path);
    if (!file) {
      std::cerr << "lambdah: cannot open " << path << "\n";
      return kUsage;
    }
    in = &file;
  }
  for (const auto& line : read_lines(*in)) {
    try {
      ParsedTerm p = read_term(line.text);
      const std::string text = print(p.term, p.free_names);
      if (as_json) {
        std::cout << json{{"line", line.number}, {"term", text}}.dump() << "\n";
      } else {
        std::cout << text << "\n";
      }
    } catch (const ParseError& e) {
      std::cerr << path << ":" << line.number << ": " << e.what() << "\n";
      return kUsage;
    }
  }
  return kOk;
}

int cmd_extract(const std::string& text, bool as_json) {
  ParsedTerm p = read_term(text);
  const Term e = extract(p.term);
  if (as_json) {
    std::cout << json{{"term", print(p.term, p.free_names)},
                      {"extract", print(e, p.free_names)},
                      {"shape", to_string(classify(e))}}
                     .dump()
              << "\n";
  } else {
    std::cout << print(e, p.free_names) << "\n";
  }
  return kOk;
}

int cmd_reduce(const std::string& text, Strategy strategy, std::size_t fuel, bool trace, bool as_json) {
  ParsedTerm p = read_term(text);
  MachineOutcome out = run(p.term, strategy, fuel, kAutoAuxCap, trace);
  if (trace) {
    for (const auto& entry : *out.trace) {
      if (as_json) {
        std::cout << to_json(entry, p.free_names).dump() << "\n";
      } else {
        std::cout << std::left << std::setw(7) << to_string(entry.kind) << print(entry.before, p.free_names)
                  << "  ->  " << print(entry.after, p.free_names) << "\n";
      }
    }
  }
  const std::string result = print(out.term, p.free_names);
  if (as_json) {
    std::cout << json{{"result", out.hnf() ? "hnf" : "fuel_exhausted"},
                      {"term", result},
                      {"t_steps", out.t_steps},
                      {"aux_steps", out.aux_steps}}
                     .dump()
              << "\n";
  } else {
    std::cout << (out.hnf() ? "hnf: " : "fuel exhausted: ") << result << "\n"
              << "t_steps=" << out.t_steps << " aux_steps=" << out.aux_steps << "\n";
  }
  return kOk;
}

int cmd_solvable(const std::string& text, std::size_t fuel, bool as_json) {
  ParsedTerm p = read_term(text);
  MachineOutcome out = solvable(p.term, fuel);
  const std::string result = print(out.term, p.free_names);
  if (as_json) {
    std::cout << json{{"verdict", out.hnf() ? "hnf" : "unknown"}, {"term", result}, {"t_steps", out.t_steps}}.dump()
              << "\n";
  } else if (out.hnf()) {
    std::cout << "solvable: hnf " << result << " after " << out.t_steps << " t-steps\n";
  } else {
    std::cout << "unknown: fuel exhausted after " << out.t_steps << " t-steps\n";
  }
  return kOk;
}

int cmd_lockstep(const std::string& text, std::size_t max_t, bool as_json) {
  ParsedTerm p = read_term(text);
  LockstepReport r = lockstep(p.term, max_t);
  for (const auto& c : r.checkpoints) {
    if (as_json) {
      std::cout << json{{"k", c.t_step_index},
                        {"e_image_I", print(c.e_image_i, p.free_names)},
                        {"e_image_J", print(c.e_image_j, p.free_names)},
                        {"equal", c.equal}}
                       .dump()
                << "\n";
    } else {
      std::cout << "k=" << c.t_step_index << (c.equal ? "  equal  " : "  DIFFER ") << print(c.e_image_i, p.free_names);
      if (!c.equal) std::cout << "  |  " << print(c.e_image_j, p.free_names);
      std::cout << "\n";
    }
  }
  if (as_json) {
    json v{{"verdict", to_string(r.verdict)}, {"step", r.verdict_step}};
    v["hnf_t_steps_I"] = r.hnf_t_steps_i ? json(*r.hnf_t_steps_i) : json(nullptr);
    v["hnf_t_steps_J"] = r.hnf_t_steps_j ? json(*r.hnf_t_steps_j) : json(nullptr);
    std::cout << v.dump() << "\n";
  } else {
    std::cout << "verdict: " << to_string(r.verdict);
    if (!r.passed()) std::cout << " at k=" << r.verdict_step;
    std::cout << "\n";
  }
  return r.passed() ? kOk : kViolation;
}

int cmd_check(const std::string& suite, std::size_t max_size, std::size_t random_count, std::size_t random_size,
              std::uint64_t seed, std::size_t max_t, bool as_json) {
  const auto groups = parse_suite(suite);
  if (!groups) {
    std::cerr << "lambdah: unknown suite '" << suite
              << "' (expected all, extraction, steps, lockstep, bridges, lift, head-app)\n";
    return kUsage;
  }
  std::vector<Term> corpus = enumerate(max_size, 0);
  GenConfig cfg;
  cfg.seed = seed;
  cfg.max_size = random_size;
  const auto random = random_corpus(cfg, random_count);
  corpus.insert(corpus.end(), random.begin(), random.end());

  SuiteOptions options;
  options.groups = *groups;
  options.seed = seed;
  options.max_t = max_t;
  const SuiteReport report = lemma_suite(corpus, options);

  if (as_json) {
    for (const auto& c : report.checks) {
      std::cout << json{{"check", c.name},         {"property", c.property}, {"checked", c.checked},
                        {"vacuous", c.vacuous},    {"failures", c.failures}, {"counterexamples", c.counterexamples},
                        {"passed", c.passed()}}
                       .dump()
                << "\n";
    }
    std::cout << json{{"summary", {{"terms", corpus.size()}, {"passed", report.passed()}}}}.dump() << "\n";
  } else {
    std::cout << "corpus: " << corpus.size() << " terms (all closed terms of size <= " << max_size << ", "
              << random_count << " random of size <= " << random_size << ", seed " << seed << ")\n\n";
    std::cout << std::left << std::setw(24) << "check" << std::right << std::setw(9) << "checked" << std::setw(9)
              << "vacuous" << std::setw(10) << "failures" << "  property\n";
    for (const auto& c : report.checks) {
      std::cout << std::left << std::setw(24) << c.name << std::right << std::setw(9) << c.checked << std::setw(9)
                << c.vacuous << std::setw(10) << c.failures << "  " << c.property << "\n";
      for (const auto& ce : c.counterexamples) std::cout << "    counterexample: " << ce << "\n";
    }
    std::cout << "\n" << (report.passed() ? "PASS" : "FAIL") << "\n";
  }
  return report.passed() ? kOk : kViolation;
}

int cmd_corpus(const std::string& path, std::size_t fuel, bool as_json) {
  std::ifstream file(path);
  if (!file) {
    std::cerr << "lambdah: cannot open " << path << "\n";
    return kUsage;
  }
  std::size_t rows = 0, both_hnf = 0, both_unknown = 0, one_sided = 0, disagreements = 0;
  std::size_t bridge_failures = 0;
  for (const auto& line : read_lines(file)) {
    ParsedTerm p;
    try {
      p = read_term(line.text);
    } catch (const Error& e) {
      std::cerr << path << ":" << line.number << ": " << e.what() << "\n";
      return kUsage;
    }
    const AgreementRow row = theorem_check(p.term, fuel);
    const std::string context = print(p.term, p.free_names);
    ++rows;
    switch (row.theorem) {
      case Agreement::BothHnf:
        ++both_hnf;
        break;
      case Agreement::BothUnknown:
        ++both_unknown;
        break;
      case Agreement::OneSided:
        ++one_sided;
        break;
      case Agreement::Disagree:
        ++disagreements;
        break;
    }
    if (!row.bridges_hold()) ++bridge_failures;
    if (as_json) {
      std::cout << to_json(row, context).dump() << "\n";
    } else {
      auto v = [](const VerdictSummary& s) { return std::string(verdict_name(s)) + "/" + std::to_string(s.t_steps); };
      std::cout << std::left << std::setw(12) << to_string(row.theorem) << " " << std::setw(14) << v(row.verdict_i) << " "
                << std::setw(14) << v(row.verdict_j) << " " << context << "\n";
    }
  }
  if (as_json) {
    std::cout << json{{"summary",
                       {{"rows", rows},
                        {"both_hnf", both_hnf},
                        {"both_unknown", both_unknown},
                        {"one_sided", one_sided},
                        {"disagreements", disagreements},
                        {"bridge_failures", bridge_failures},
                        {"fuel", fuel}}}}
                     .dump()
              << "\n";
  } else {
    std::cout << "\nrows=" << rows << " both_hnf=" << both_hnf << " both_unknown=" << both_unknown
              << " one_sided=" << one_sided << " disagreements=" << disagreements
              << " bridge_failures=" << bridge_failures << "\n";
  }
  return disagreements == 0 && bridge_failures == 0 ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workbench for I/J operational equivalence in the lambda-H calculus", "lambdah"};
  app.require_subcommand(1);

  bool as_json = false;
  bool trace = false;
  std::string strategy_name = "t";
  std::size_t fuel = 1000;
  std::size_t max_t = 100;
  std::uint64_t seed = 0;
  std::size_t max_size = 6;
  std::size_t random_count = 1000;
  std::size_t random_size = 25;
  std::string suite = "all";
  std::string term_text;
  std::string path;

  app.add_flag("--json", as_json, "Emit JSON lines");

  auto* fmt = app.add_subcommand("fmt", "Parse terms (one per line) and print them canonically");
  fmt->add_option("file", path, "Input file, or - for stdin")->required();

  auto* ext = app.add_subcommand("extract", "Print E(term)");
  ext->add_option("term", term_text)->required();

  auto* red = app.add_subcommand("reduce", "Run a reduction machine");
  red->add_option("term", term_text)->required();
  red->add_option("--strategy", strategy_name, "t, i, j, it or jt")->capture_default_str();
  red->add_option("--fuel", fuel, "Maximum number of t-steps")->capture_default_str();
  red->add_flag("--trace", trace, "Print every step");

  auto* sol = app.add_subcommand("solvable", "Head-reduce with a fuel bound");
  sol->add_option("term", term_text)->required();
  sol->add_option("--fuel", fuel)->capture_default_str();

  auto* lock = app.add_subcommand("lockstep", "Compare E-images of the IT and JT runs after every t-step");
  lock->add_option("term", term_text)->required();
  lock->add_option("--max-t", max_t)->capture_default_str();

  auto* chk = app.add_subcommand("check", "Run the property suite over enumerated and random terms");
  chk->add_option("--suite", suite, "all, extraction, steps, lockstep, bridges, lift, head-app")->capture_default_str();
  chk->add_option("--max-size", max_size, "Exhaustive enumeration bound")->capture_default_str();
  chk->add_option("--random", random_count, "Number of random terms")->capture_default_str();
  chk->add_option("--random-size", random_size, "Size bound for random terms")->capture_default_str();
  chk->add_option("--seed", seed)->capture_default_str();
  chk->add_option("--max-t", max_t)->capture_default_str();

  auto* cor = app.add_subcommand("corpus", "Compare C[I] and C[J] for every context in a file");
  cor->add_option("path", path)->required();
  cor->add_option("--fuel", fuel)->capture_default_str();

  for (auto* sub : {fmt, ext, red, sol, lock, chk, cor}) sub->add_flag("--json", as_json, "Emit JSON lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "lambdah: " << e.what() << "\n" << kSynopsis << "\n";
    return kUsage;
  }

  try {
    if (*fmt) return cmd_fmt(path, as_json);
    if (*ext) return cmd_extract(term_text, as_json);
    if (*red) {
      const auto strategy = parse_strategy(strategy_name);
      if (!strategy) {
        std::cerr << "lambdah: unknown strategy '" << strategy_name << "'\n" << kSynopsis << "\n";
        return kUsage;
      }
      return cmd_reduce(term_text, *strategy, fuel, trace, as_json);
    }
    if (*sol) return cmd_solvable(term_text, fuel, as_json);
    if (*lock) return cmd_lockstep(term_text, max_t, as_json);
    if (*chk) return cmd_check(suite, max_size, random_count, random_size, seed, max_t, as_json);
    if (*cor) return cmd_corpus(path, fuel, as_json);
  } catch (const ParseError& e) {
    std::cerr << "lambdah: parse error at " << e.what() << "\n";
    return kUsage;
  } catch (const UnboundVariable& e) {
    std::cerr << "lambdah: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    // AuxCapExceeded, ShapeViolation, InvalidTrace: a property failed.
    std::cerr << "lambdah: " << e.what() << "\n";
    return kViolation;
  }
  return kUsage;
}
