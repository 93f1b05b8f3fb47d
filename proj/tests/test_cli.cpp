#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rainbow/cli.hpp"
#include "rainbow/core.hpp"

using namespace rainbow;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

} // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("bound prints the threshold") {
  const CliResult res = cli({"bound", "--n", "6", "--k", "1"});
  CHECK(res.code == 0);
  CHECK(res.out == "7\n");

  CHECK(cli({"bound", "--n", "5", "--k", "0"}).out == "9\n");
  CHECK(cli({"bound", "--n", "6", "--k", "6"}).code == 2); // k >= n
}

TEST_CASE("gen/solve round trip on drisko(4)") {
  const std::string path = temp_path("rainbow_cli_d4.json");
  const CliResult gen = cli({"gen", "drisko", "--n", "4", "--out", path});
  CHECK(gen.code == 0);

  const Instance inst = parse_instance(slurp(path));
  CHECK(inst.n == 4);
  CHECK(inst.num_classes() == 6);

  // hypothesis unmet (N=6 < 7): size 3 and exit 0, not a violation
  const CliResult solve = cli({"solve", "--in", path, "--target", "4"});
  CHECK(solve.code == 0);
  CHECK(solve.out.find("\"size\":3") != std::string::npos);
  CHECK(solve.out.find("\"met_target\":false") != std::string::npos);
  CHECK(solve.err.find("hypothesis not met") != std::string::npos);

  const CliResult reachable = cli({"solve", "--in", path, "--target", "3"});
  CHECK(reachable.code == 0);
  CHECK(reachable.out.find("\"met_target\":true") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("solve writes a trace when asked") {
  const std::string inst_path = temp_path("rainbow_cli_trace_inst.json");
  const std::string trace_path = temp_path("rainbow_cli_trace.json");
  REQUIRE(cli({"gen", "drisko", "--n", "3", "--out", inst_path}).code == 0);
  const CliResult res =
      cli({"solve", "--in", inst_path, "--target", "3", "--trace", trace_path});
  CHECK(res.code == 0);
  const std::string trace = slurp(trace_path);
  CHECK(trace.find("\"steps\"") != std::string::npos);
  CHECK(trace.find("\"outcome\":\"exhausted\"") != std::string::npos);
  std::remove(inst_path.c_str());
  std::remove(trace_path.c_str());
}

TEST_CASE("exact subcommand") {
  const std::string path = temp_path("rainbow_cli_exact.json");
  REQUIRE(cli({"gen", "remark", "--n", "2", "--out", path}).code == 0);
  const CliResult res = cli({"exact", "--in", path});
  CHECK(res.code == 0);
  CHECK(res.out.find("\"size\":1") != std::string::npos);
  CHECK(res.out.find("\"optimal\":true") != std::string::npos);

  const CliResult no_bound = cli({"exact", "--in", path, "--no-matching-bound"});
  CHECK(no_bound.out.find("\"size\":1") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("gen random honors the model flags") {
  const CliResult res = cli({"gen", "random", "--n", "3", "--N", "5", "--seed", "9",
                             "--sides", "4", "5"});
  CHECK(res.code == 0);
  const Instance inst = parse_instance(res.out);
  CHECK(inst.n == 3);
  CHECK(inst.num_classes() == 5);
  CHECK(inst.side_a == 4);
  CHECK(inst.side_b == 5);
  CHECK(validate_instance(inst, true).ok);
}

TEST_CASE("verify subcommand") {
  const CliResult res = cli({"verify", "--model", "n=3,N=5", "--trials", "25", "--k",
                             "0", "--cross-check"});
  CHECK(res.code == 0);
  CHECK(res.out.find("\"violations\":0") != std::string::npos);
  CHECK(res.err.find("0 violations") != std::string::npos);

  const std::string csv_path = temp_path("rainbow_cli_report.csv");
  const CliResult with_csv = cli({"verify", "--model", "n=3,N=5", "--trials", "5",
                                  "--k", "0", "--csv", csv_path});
  CHECK(with_csv.code == 0);
  CHECK(slurp(csv_path).rfind("id,seed,n,N,", 0) == 0);
  std::remove(csv_path.c_str());
}

TEST_CASE("verify accepts corpus files") {
  const std::string path = temp_path("rainbow_cli_verify_corpus.json");
  REQUIRE(cli({"gen", "drisko", "--n", "4", "--out", path}).code == 0);
  const CliResult res = cli({"verify", "--in", path, "--k", "0", "--cross-check"});
  CHECK(res.code == 0); // hypothesis unmet is not a violation
  CHECK(res.out.find("\"hypothesis_met\":false") != std::string::npos);
  CHECK(res.out.find("\"exact_size\":3") != std::string::npos);
  CHECK(res.err.find("0 rows under hypothesis") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("search exit codes distinguish found from not-found") {
  // N = 2n-1: provably nothing to find
  const CliResult none = cli({"search", "--n", "2", "--k", "0", "--N", "3",
                              "--strategy", "random", "--trials", "50", "--seed", "1"});
  CHECK(none.code == 0);
  CHECK(none.err.find("no counterexample") != std::string::npos);

  // N = 2n-2: witnesses exist and the sampler finds one quickly
  const CliResult found = cli({"search", "--n", "2", "--k", "0", "--N", "2",
                               "--strategy", "random", "--trials", "200", "--seed", "1"});
  CHECK(found.code == 1);
  const Instance witness = parse_instance(found.out);
  CHECK(witness.num_classes() == 2);
}

TEST_CASE("usage errors exit 2") {
  CHECK(cli({"bogus"}).code == 2);
  CHECK(cli({"gen", "drisko"}).code == 2);             // missing --n
  CHECK(cli({"solve", "--in", "/nonexistent"}).code == 2);
  CHECK(cli({"gen", "remark", "--n", "3"}).code == 2); // odd n rejected
  CHECK(cli({}).code == 2);
}

TEST_CASE("help exits 0 and prints the synopsis") {
  const CliResult res = cli({"--help"});
  CHECK(res.code == 0);
  CHECK(res.out.find("gen") != std::string::npos);
  CHECK(res.out.find("verify") != std::string::npos);
}

TEST_SUITE_END();
