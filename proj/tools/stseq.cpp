// stseq: generate, sequence, verify and count (partial) Steiner triple
// systems from the command line. Every subcommand is a thin adapter over the
// library; results are byte-identical to direct library calls with the same
// parameters and seeds.

#include <chrono>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stseq/census.hpp"
#include "stseq/design.hpp"
#include "stseq/generators.hpp"
#include "stseq/io.hpp"
#include "stseq/semiseq.hpp"
#include "stseq/sequencer.hpp"

namespace {

constexpr int kExitGood = 0;
constexpr int kExitViolation = 1;  // also generic errors
constexpr int kExitNoneExists = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInsufficientOrder = 4;

const char* kGrammarHelp =
    "File formats:\n"
    "  design:      line 1 '<kind> <v> <b>' with kind in {sts, psts}; then\n"
    "               exactly b lines of three space-separated 0-based points\n"
    "               in strictly increasing order. '#' lines and blank lines\n"
    "               are ignored.\n"
    "  sequencing:  one line of v space-separated 0-based points (a\n"
    "               permutation of 0..v-1), optional '# key=value ...'\n"
    "               metadata comments (keys: method, ell, seed).\n";

// One row of the batch summary table.
struct Summary {
  std::string instance;
  int v = 0;
  std::string method;
  int ell = 0;
  std::string outcome;
  double wall_ms = 0.0;
  std::string seed;  // empty when the command is deterministic
};

struct GenOptions {
  std::string kind;
  int n = 1;
  int v = 0;
  std::int64_t blocks = 0;
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen(const GenOptions& opt, std::ostream& os, Summary& summary) {
  stseq::TripleSystem system;
  std::string comment;
  if (opt.kind == "fano") {
    system = stseq::fano();
    comment = "fano";
  } else if (opt.kind == "bose") {
    system = stseq::bose(opt.n);
    comment = "bose n=" + std::to_string(opt.n);
  } else if (opt.kind == "skolem") {
    system = stseq::skolem(opt.n);
    comment = "skolem n=" + std::to_string(opt.n);
  } else {
    system = stseq::random_psts(opt.v, opt.blocks, opt.seed);
    comment = "random-psts v=" + std::to_string(opt.v) +
              " target=" + std::to_string(opt.blocks) +
              " achieved=" + std::to_string(system.blocks.size()) +
              " seed=" + std::to_string(opt.seed);
    summary.seed = std::to_string(opt.seed);
  }
  stseq::require_valid(system, "gen");
  stseq::write_design_file(opt.out, system, comment);
  os << "wrote " << stseq::to_string(system.kind) << "(" << system.v
     << ") with " << system.blocks.size() << " blocks to " << opt.out
     << "\n";
  summary.instance = opt.out;
  summary.v = system.v;
  summary.method = "gen-" + opt.kind;
  summary.outcome = "ok";
  return kExitGood;
}

struct SeqOptions {
  std::string design;
  std::string out;
  int ell = 3;
  std::string method = "greedy";
  std::string policy = "lex";
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::uint64_t budget = 0;
};

int run_seq(const SeqOptions& opt, std::ostream& os, Summary& summary) {
  const stseq::TripleSystem system = stseq::read_design_file(opt.design);
  summary.instance = opt.design;
  summary.v = system.v;
  summary.method = opt.method;
  summary.ell = opt.ell;
  if (opt.policy == "random") summary.seed = std::to_string(opt.seed);

  std::optional<stseq::Sequencing> seq;
  if (opt.method == "greedy") {
    const stseq::GreedyPolicy policy =
        opt.policy == "random" ? stseq::GreedyPolicy::random(opt.seed)
                               : stseq::GreedyPolicy::lex();
    if (opt.ell == 3) {
      if (system.v <= 5) {
        os << "insufficient order: the 3-good construction needs v > 5\n";
        summary.outcome = "insufficient-order";
        return kExitInsufficientOrder;
      }
      seq = stseq::greedy_3good(system, policy);
    } else if (opt.ell == 4) {
      stseq::Greedy4Result result = stseq::greedy_4good(system, policy);
      if (!result.found()) {
        if (system.v < 18) {
          os << "insufficient order: v = " << system.v
             << " is below 18, the smallest order the 4-good construction "
                "can attempt\n";
        } else {
          os << "insufficient order: v = " << system.v
             << " < 2m+18 with m = " << result.plan.m()
             << " look-ahead points\n";
        }
        summary.outcome = "insufficient-order";
        return kExitInsufficientOrder;
      }
      os << "look-ahead m=" << result.plan.m()
         << " kappa=" << result.endgame->kappa << "\n";
      seq = std::move(result.seq);
    } else {
      throw CLI::ValidationError(
          "--ell", "greedy constructions exist for ell = 3 and 4 only");
    }
  } else {  // exhaustive
    const stseq::ExhaustiveResult result =
        stseq::exhaustive_search(system, opt.ell, opt.budget);
    os << "explored " << result.nodes << " nodes\n";
    switch (result.outcome) {
      case stseq::ExhaustiveResult::Outcome::found:
        seq = std::move(result.seq);
        break;
      case stseq::ExhaustiveResult::Outcome::none_exists:
        os << "no " << opt.ell << "-good sequencing exists\n";
        summary.outcome = "none-exists";
        return kExitNoneExists;
      case stseq::ExhaustiveResult::Outcome::budget_exhausted:
        os << "budget of " << opt.budget << " nodes exhausted\n";
        summary.outcome = "budget-exhausted";
        return kExitBudget;
    }
  }

  stseq::write_sequencing_file(opt.out, *seq);
  os << "wrote " << opt.ell << "-good sequencing (" << seq->meta.method
     << ") to " << opt.out << "\n";
  summary.outcome = "found";
  return kExitGood;
}

struct VerifyOptions {
  std::string design;
  std::string sequencing;
  int ell = 0;     // 0 = skip
  int w_semi = 0;  // 0 = skip
};

int run_verify(const VerifyOptions& opt, std::ostream& os, Summary& summary) {
  const stseq::TripleSystem system = stseq::read_design_file(opt.design);
  const stseq::Sequencing seq = stseq::read_sequencing_file(opt.sequencing);
  summary.instance = opt.design;
  summary.v = system.v;
  summary.method = "verify";
  summary.ell = opt.ell != 0 ? opt.ell : opt.w_semi;

  bool good = true;
  if (opt.ell != 0) {
    if (auto violation = stseq::verify_ell_good(system, seq, opt.ell)) {
      os << "not " << opt.ell << "-good: " << stseq::to_string(*violation)
         << "\n";
      good = false;
    } else {
      os << opt.ell << "-good: GOOD\n";
    }
  }
  if (opt.w_semi != 0) {
    if (auto violation = stseq::is_w_semi(system, seq, opt.w_semi)) {
      os << "not " << opt.w_semi
         << "-semi-good: " << stseq::to_string(*violation) << "\n";
      good = false;
    } else {
      os << opt.w_semi << "-semi-good: GOOD\n";
    }
  }
  summary.outcome = good ? "good" : "violation";
  return good ? kExitGood : kExitViolation;
}

struct CountOptions {
  std::string design;
  int ell = 3;
  bool exact = false;
  int cap = 9;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

int run_count(const CountOptions& opt, std::ostream& os, Summary& summary) {
  if (!opt.exact && opt.samples == 0)
    throw CLI::ValidationError("count",
                               "choose --exact or --samples N");
  const stseq::TripleSystem system = stseq::read_design_file(opt.design);
  summary.instance = opt.design;
  summary.v = system.v;
  summary.ell = opt.ell;
  stseq::CensusReport report;
  if (opt.exact) {
    summary.method = "count-exact";
    report = stseq::census_exact(system, opt.ell, opt.cap);
  } else {
    summary.method = "count-sample";
    summary.seed = std::to_string(opt.seed);
    report = stseq::census_sample(system, opt.ell, opt.samples, opt.seed);
  }
  os << stseq::to_text(report);
  os << "-- report --\n" << stseq::to_kv(report);
  summary.outcome = "ok";
  return kExitGood;
}

int dispatch_line(const std::string& line, std::ostream& os, Summary& summary);

struct BatchOptions {
  std::string manifest;
  std::string out;  // empty = stdout
  unsigned jobs = 0;
};

int run_batch(const BatchOptions& opt, std::ostream& os) {
  std::ifstream in(opt.manifest);
  if (!in) throw std::runtime_error("cannot open " + opt.manifest);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    lines.push_back(line);
  }

  struct LineResult {
    Summary summary;
    std::string output;
    int exit_code = 0;
  };
  auto run_line = [](const std::string& cmd) {
    LineResult result;
    std::ostringstream capture;
    try {
      result.exit_code = dispatch_line(cmd, capture, result.summary);
    } catch (const std::exception& e) {
      capture << "error: " << e.what() << "\n";
      result.exit_code = kExitViolation;
      result.summary.outcome = "error";
    }
    if (result.summary.instance.empty()) result.summary.instance = cmd;
    result.output = capture.str();
    return result;
  };

  // Sub-commands are independent; run them concurrently but report in
  // manifest order.
  unsigned jobs = opt.jobs != 0 ? opt.jobs
                                : std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::future<LineResult>> futures(lines.size());
  std::vector<LineResult> results(lines.size());
  std::size_t launched = 0, finished = 0;
  while (finished < lines.size()) {
    while (launched < lines.size() && launched - finished < jobs) {
      futures[launched] =
          std::async(std::launch::async, run_line, lines[launched]);
      ++launched;
    }
    results[finished] = futures[finished].get();
    ++finished;
  }

  std::ofstream file_out;
  std::ostream* tsv = &os;
  if (!opt.out.empty()) {
    file_out.open(opt.out);
    if (!file_out)
      throw std::runtime_error("cannot open " + opt.out + " for writing");
    tsv = &file_out;
  }
  int failures = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const LineResult& r = results[i];
    if (!r.output.empty()) {
      std::istringstream split(r.output);
      std::string msg;
      while (std::getline(split, msg)) os << "[" << i + 1 << "] " << msg
                                          << "\n";
    }
    if (r.exit_code != 0 && r.summary.outcome == "error") ++failures;
  }
  *tsv << "instance\tv\tmethod\tell\toutcome\twall_ms\tseed\n";
  for (const LineResult& r : results) {
    const Summary& s = r.summary;
    *tsv << s.instance << '\t' << s.v << '\t' << s.method << '\t' << s.ell
         << '\t' << s.outcome << '\t' << s.wall_ms << '\t'
         << (s.seed.empty() ? "-" : s.seed) << "\n";
  }
  return failures == 0 ? kExitGood : kExitViolation;
}

// Wires all subcommands onto a fresh app. The returned functor runs the
// selected command after parsing.
struct AppContext {
  GenOptions gen;
  SeqOptions seq;
  VerifyOptions verify;
  CountOptions count;
  BatchOptions batch;
  CLI::App app{"stseq: sequencings of (partial) Steiner triple systems"};
  CLI::App* gen_cmd = nullptr;
  CLI::App* seq_cmd = nullptr;
  CLI::App* verify_cmd = nullptr;
  CLI::App* count_cmd = nullptr;
  CLI::App* batch_cmd = nullptr;
  bool allow_batch = true;

  explicit AppContext(bool with_batch) : allow_batch(with_batch) {
    app.require_subcommand(1);
    app.footer(kGrammarHelp);

    gen_cmd = app.add_subcommand("gen", "generate a design file");
    auto* fano_cmd = gen_cmd->add_subcommand("fano", "the STS(7)");
    auto* bose_cmd =
        gen_cmd->add_subcommand("bose", "STS of order 6n+3");
    bose_cmd->add_option("n", gen.n, "construction parameter (n >= 1)")
        ->required()
        ->check(CLI::PositiveNumber);
    auto* skolem_cmd =
        gen_cmd->add_subcommand("skolem", "STS of order 6n+1");
    skolem_cmd->add_option("n", gen.n, "construction parameter (n >= 1)")
        ->required()
        ->check(CLI::PositiveNumber);
    auto* random_cmd = gen_cmd->add_subcommand(
        "random-psts", "seeded random greedy packing");
    random_cmd->add_option("v", gen.v, "number of points")->required();
    random_cmd->add_option("blocks", gen.blocks, "target block count")
        ->required();
    random_cmd->add_option("seed", gen.seed, "RNG seed")->required();
    gen_cmd->require_subcommand(1);
    for (auto* cmd : {fano_cmd, bose_cmd, skolem_cmd, random_cmd}) {
      cmd->add_option("-o,--out", gen.out, "output design file")->required();
      cmd->callback([this, cmd] { gen.kind = cmd->get_name(); });
    }

    seq_cmd = app.add_subcommand("seq", "construct an ell-good sequencing");
    seq_cmd->add_option("design", seq.design, "input design file")
        ->required();
    seq_cmd->add_option("--ell", seq.ell, "window length (default 3)")
        ->check(CLI::Range(3, 1 << 20));
    seq_cmd->add_option("--method", seq.method, "greedy or exhaustive")
        ->check(CLI::IsMember({"greedy", "exhaustive"}));
    seq_cmd->add_option("--policy", seq.policy, "lex or random (greedy)")
        ->check(CLI::IsMember({"lex", "random"}));
    seq_cmd->add_option("--seed", seq.seed, "seed for --policy random");
    seq_cmd->add_option("--budget", seq.budget,
                        "node limit for exhaustive search (0 = unlimited)");
    seq_cmd->add_option("-o,--out", seq.out, "output sequencing file")
        ->required();

    verify_cmd = app.add_subcommand("verify", "check sequencing properties");
    verify_cmd->add_option("design", verify.design, "input design file")
        ->required();
    verify_cmd
        ->add_option("sequencing", verify.sequencing,
                     "input sequencing file")
        ->required();
    verify_cmd->add_option("--ell", verify.ell,
                           "check no ell consecutive points contain a block");
    verify_cmd->add_option(
        "--w-semi", verify.w_semi,
        "check no t <= w consecutive points (t = 0 mod 3) partition into "
        "blocks");

    count_cmd =
        app.add_subcommand("count", "census of forbidden permutations");
    count_cmd->add_option("design", count.design, "input design file")
        ->required();
    count_cmd->add_option("--ell", count.ell, "window length (default 3)");
    auto* exact_flag =
        count_cmd->add_flag("--exact", count.exact, "exact census over v!");
    count_cmd->add_option("--cap", count.cap,
                          "largest v admitted in exact mode (default 9)");
    auto* samples_opt = count_cmd->add_option(
        "--samples", count.samples, "Monte Carlo sample count");
    count_cmd->add_option("--seed", count.seed, "Monte Carlo seed");
    samples_opt->excludes(exact_flag);

    if (allow_batch) {
      batch_cmd = app.add_subcommand(
          "batch", "run a manifest of sub-commands and summarize as TSV");
      batch_cmd->add_option("manifest", batch.manifest,
                            "file with one sub-command per line")
          ->required();
      batch_cmd->add_option("-o,--out", batch.out,
                            "summary TSV file (default stdout)");
      batch_cmd->add_option("-j,--jobs", batch.jobs,
                            "max concurrent lines (default: hw threads)");
    }
  }

  int run(std::ostream& os, Summary& summary) {
    const auto start = std::chrono::steady_clock::now();
    int code = kExitViolation;
    if (gen_cmd->parsed()) {
      code = run_gen(gen, os, summary);
    } else if (seq_cmd->parsed()) {
      code = run_seq(seq, os, summary);
    } else if (verify_cmd->parsed()) {
      code = run_verify(verify, os, summary);
    } else if (count_cmd->parsed()) {
      code = run_count(count, os, summary);
    } else if (batch_cmd != nullptr && batch_cmd->parsed()) {
      code = run_batch(batch, os);
    }
    summary.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    return code;
  }
};

// Batch lines re-enter here; nested batch is not allowed.
int dispatch_line(const std::string& line, std::ostream& os,
                  Summary& summary) {
  AppContext ctx(/*with_batch=*/false);
  try {
    ctx.app.parse(line, /*program_name_included=*/false);
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg;
    const int code = ctx.app.exit(e, msg, msg);
    os << msg.str();
    summary.outcome = "error";
    return code == 0 ? kExitGood : kExitViolation;
  }
  return ctx.run(os, summary);
}

}  // namespace

int main(int argc, char** argv) {
  AppContext ctx(/*with_batch=*/true);
  try {
    ctx.app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return ctx.app.exit(e);
  }
  try {
    Summary summary;
    return ctx.run(std::cout, summary);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitViolation;
  }
}
