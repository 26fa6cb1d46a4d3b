#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "stseq/design.hpp"
#include "stseq/generators.hpp"
#include "stseq/io.hpp"
#include "stseq/sequencer.hpp"

namespace fs = std::filesystem;
using namespace stseq;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(STSEQ_CLI) + " " + args + " 2>&1";
  CliResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe))
    result.output.append(buf, n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "stseq-cli-tests";
  fs::create_directories(dir);
  return dir;
}

std::string write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  return path.string();
}

}  // namespace

TEST_CASE("cli gen produces loadable, valid designs") {
  const fs::path dir = scratch_dir();
  const std::string out = (dir / "fano.design").string();
  const CliResult r = run_cli("gen fano -o " + out);
  CHECK(r.exit_code == 0);
  const TripleSystem sys = read_design_file(out);
  CHECK(sys == fano());

  // byte-identical to the library path, thin-adapter contract
  std::ifstream in(out);
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  CHECK(content == store_design(fano(), "fano"));

  const std::string psts = (dir / "r.design").string();
  const CliResult g = run_cli("gen random-psts 9 12 42 -o " + psts);
  CHECK(g.exit_code == 0);
  const TripleSystem rsys = read_design_file(psts);
  CHECK(rsys == random_psts(9, 12, 42));
  // the seed must be replayable from the file itself
  std::ifstream pin(psts);
  std::string pcontent((std::istreambuf_iterator<char>(pin)),
                       std::istreambuf_iterator<char>());
  CHECK(pcontent.find("seed=42") != std::string::npos);
}

TEST_CASE("cli gen/seq/verify chain at ell=3") {
  const fs::path dir = scratch_dir();
  const std::string design = (dir / "chain.design").string();
  const std::string seq = (dir / "chain.seq").string();
  CHECK(run_cli("gen fano -o " + design).exit_code == 0);
  CHECK(run_cli("seq " + design +
                " --ell 3 --method greedy --policy lex -o " + seq)
            .exit_code == 0);
  CHECK(run_cli("verify " + design + " " + seq + " --ell 3").exit_code == 0);
  CHECK(run_cli("verify " + design + " " + seq + " --w-semi 3").exit_code ==
        0);

  // library equivalence, including metadata
  CHECK(read_sequencing_file(seq) == greedy_3good(fano(),
                                                  GreedyPolicy::lex()));
}

TEST_CASE("cli seq --policy random records its seed") {
  const fs::path dir = scratch_dir();
  const std::string design = (dir / "seeded.design").string();
  const std::string seq = (dir / "seeded.seq").string();
  CHECK(run_cli("gen bose 1 -o " + design).exit_code == 0);
  CHECK(run_cli("seq " + design +
                " --ell 3 --method greedy --policy random --seed 7 -o " + seq)
            .exit_code == 0);
  const Sequencing loaded = read_sequencing_file(seq);
  CHECK(loaded.meta.seed == 7);
  CHECK(loaded == greedy_3good(bose(1), GreedyPolicy::random(7)));
}

TEST_CASE("cli verify reports the worked sts(7) violation") {
  const fs::path dir = scratch_dir();
  const std::string design = (dir / "v.design").string();
  const std::string ident =
      write_text(dir / "ident.seq", "0 1 2 3 4 5 6\n");
  CHECK(run_cli("gen fano -o " + design).exit_code == 0);

  const CliResult ok = run_cli("verify " + design + " " + ident + " --ell 3");
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("GOOD") != std::string::npos);

  const CliResult bad = run_cli("verify " + design + " " + ident + " --ell 4");
  CHECK(bad.exit_code == 1);
  CHECK(bad.output.find("{0 1 3}") != std::string::npos);
  CHECK(bad.output.find("window [1, 4]") != std::string::npos);
}

TEST_CASE("cli seq exit codes") {
  const fs::path dir = scratch_dir();
  const std::string tiny =
      write_text(dir / "tiny.design", "sts 3 1\n0 1 2\n");
  const std::string out = (dir / "none.seq").string();
  CHECK(run_cli("seq " + tiny + " --ell 3 --method exhaustive -o " + out)
            .exit_code == 2);

  const std::string design = (dir / "s13.design").string();
  CHECK(run_cli("gen skolem 2 -o " + design).exit_code == 0);
  CHECK(run_cli("seq " + design +
                " --ell 5 --method exhaustive --budget 100 -o " + out)
            .exit_code == 3);

  const std::string f = (dir / "f.design").string();
  CHECK(run_cli("gen fano -o " + f).exit_code == 0);
  CHECK(run_cli("seq " + f + " --ell 4 --method greedy -o " + out)
            .exit_code == 4);
}

TEST_CASE("cli count emits the machine-readable block") {
  const fs::path dir = scratch_dir();
  const std::string design = (dir / "c.design").string();
  CHECK(run_cli("gen fano -o " + design).exit_code == 0);
  const CliResult r = run_cli("count " + design + " --exact");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("good_count=1008") != std::string::npos);
  CHECK(r.output.find("per_i_forbidden=1008,1008,1008,1008,1008") !=
        std::string::npos);

  const CliResult mc =
      run_cli("count " + design + " --samples 1000 --seed 3");
  CHECK(mc.exit_code == 0);
  CHECK(mc.output.find("mode=monte_carlo") != std::string::npos);
  CHECK(mc.output.find("seed=3") != std::string::npos);
}

TEST_CASE("cli rejects malformed input with a line number") {
  const fs::path dir = scratch_dir();
  const std::string bad =
      write_text(dir / "bad.design", "sts 7 2\n0 1 3\n1 0 4\n");
  const CliResult r = run_cli("count " + bad + " --exact");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("line 3") != std::string::npos);
}

TEST_CASE("cli batch runs a manifest and summarizes as tsv") {
  const fs::path dir = scratch_dir();
  const std::string design = (dir / "b.design").string();
  const std::string seq = (dir / "b.seq").string();
  const std::string tsv = (dir / "summary.tsv").string();
  const std::string manifest = write_text(
      dir / "manifest.txt",
      "# demo manifest\n"
      "gen fano -o " + design + "\n"
      "seq " + design + " --ell 3 --method greedy -o " + seq + "\n"
      "verify " + design + " " + seq + " --ell 3\n");
  const CliResult r = run_cli("batch " + manifest + " -o " + tsv);
  CHECK(r.exit_code == 0);

  std::ifstream in(tsv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "instance\tv\tmethod\tell\toutcome\twall_ms\tseed");
  int rows = 0;
  std::string row;
  while (std::getline(in, row)) {
    ++rows;
    CHECK(row.find("error") == std::string::npos);
  }
  CHECK(rows == 3);

  // a broken line aborts that line, not the run
  const std::string manifest2 = write_text(
      dir / "manifest2.txt",
      "gen fano -o " + design + "\nnot-a-command --x\n");
  const CliResult r2 = run_cli("batch " + manifest2 + " -o " + tsv);
  CHECK(r2.exit_code == 1);
  std::ifstream in2(tsv);
  int rows2 = 0;
  while (std::getline(in2, row)) ++rows2;
  CHECK(rows2 == 3);  // header + both lines reported
}
