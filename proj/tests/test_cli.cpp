#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "iseg/profile_io.hpp"

namespace fs = std::filesystem;
using namespace iseg;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "iseg");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return Run{code, out.str(), err.str()};
}

fs::path tmp_dir(const std::string& name) {
  const fs::path p = fs::path(ISEG_TEST_TMP) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string write_file(const fs::path& path, const std::string& body) {
  std::ofstream(path) << body;
  return path.string();
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string plain_profile(const std::vector<double>& v) {
  std::ostringstream s;
  write_profile_plain(s, testing::make_profile(v));
  return s.str();
}

}  // namespace

TEST_CASE("help lists every segment flag") {
  const Run r = run_cli({"segment", "--help"});
  CHECK(r.code == 0);
  for (const char* flag : {"--wmin", "--wmax", "--rho", "--ps", "--alpha", "--pb", "--k-refine",
                           "--background", "--sigma", "--sides", "--format", "--out-format",
                           "--output", "--jobs", "--bh-family"}) {
    CHECK_MESSAGE(r.out.find(flag) != std::string::npos, flag);
  }
  const Run sim = run_cli({"simulate", "--help"});
  CHECK(sim.code == 0);
  for (const char* flag : {"--kind", "--snr", "--seed", "--outdir"}) {
    CHECK_MESSAGE(sim.out.find(flag) != std::string::npos, flag);
  }
  CHECK(run_cli({"--help"}).code == 0);
  CHECK(run_cli({}).code == 1);
  CHECK(run_cli({"segment"}).code == 1);
  CHECK(run_cli({"segment", "x", "--sides", "three"}).code == 1);
  CHECK(run_cli({"frobnicate"}).code == 1);
}

TEST_CASE("segment writes a table") {
  const auto dir = tmp_dir("table");
  auto v = testing::gaussian_values(1000, 3);
  for (std::size_t i = 400; i < 430; ++i) v[i] += 2.5;
  const auto in = write_file(dir / "p.txt", plain_profile(v));
  const Run r = run_cli({"segment", in});
  CHECK(r.code == 0);
  const auto rows = read_segments(r.out);
  bool hit = false;
  for (const auto& row : rows) hit = hit || (row.significant && row.start < 430 && row.end > 400);
  CHECK(hit);
  CHECK(r.out.rfind("#label\t", 0) == 0);

  const Run bed = run_cli({"segment", in, "--out-format", "bed"});
  CHECK(bed.code == 0);
  CHECK(bed.out.rfind(".\t", 0) == 0);
}

TEST_CASE("zero profile with sigma gives a header only") {
  const auto dir = tmp_dir("zero");
  const auto in = write_file(dir / "z.txt", plain_profile(std::vector<double>(200, 0.0)));
  const Run r = run_cli({"segment", in, "--sigma", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "#label\tstart\tend\tmean\tz\tp_value\tsignificant\n");
}

TEST_CASE("data errors exit 2") {
  const auto dir = tmp_dir("errors");
  const auto zero = write_file(dir / "z.txt", plain_profile(std::vector<double>(200, 0.0)));
  Run r = run_cli({"segment", zero});
  CHECK(r.code == 2);
  CHECK(r.err.find("--sigma") != std::string::npos);

  const auto bad = write_file(dir / "bad.txt", "1\n2\nfoo\n");
  r = run_cli({"segment", bad});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 3") != std::string::npos);

  r = run_cli({"segment", (dir / "missing.txt").string()});
  CHECK(r.code == 2);

  const auto empty = write_file(dir / "empty.txt", "");
  CHECK(run_cli({"segment", empty}).code == 2);
  CHECK(run_cli({"segment", zero, "--sigma", "1", "--rho", "0.5"}).code == 2);
  const auto blocker = write_file(dir / "blocker", "x");
  CHECK(run_cli({"simulate", "--outdir", (fs::path(blocker) / "sub").string()}).code == 2);
  CHECK(run_cli({"evaluate", "--manifest", (dir / "none.tsv").string(), "--pred-dir",
                 dir.string()})
            .code == 2);
}

TEST_CASE("short profile warns on stderr") {
  const auto dir = tmp_dir("warn");
  const auto in = write_file(dir / "s.txt", plain_profile(testing::gaussian_values(30, 1)));
  const Run r = run_cli({"segment", in});
  CHECK(r.code == 0);
  CHECK(r.err.find("warning") != std::string::npos);
}

TEST_CASE("output is deterministic across runs and job counts") {
  const auto dir = tmp_dir("determinism");
  std::ostringstream multi;
  for (int k = 0; k < 6; ++k) {
    const auto v = testing::random_profile(1500, 40 + k);
    for (std::size_t i = 0; i < v.size(); ++i) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", v[i]);
      multi << "chr" << k << '\t' << i * 10 << '\t' << buf << '\n';
    }
  }
  const auto in = write_file(dir / "multi.tsv", multi.str());
  const Run a = run_cli({"segment", in, "--format", "tsv", "--jobs", "1"});
  const Run b = run_cli({"segment", in, "--format", "tsv", "--jobs", "1"});
  const Run c = run_cli({"segment", in, "--format", "tsv", "--jobs", "4"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  CHECK(a.out.find("chr5\t") != std::string::npos);
}

TEST_CASE("simulate, segment into a directory, evaluate, bench") {
  const auto dir = tmp_dir("suite");
  const auto suite = dir / "suite";
  const auto pred = dir / "pred";
  REQUIRE(run_cli({"simulate", "--kind", "short", "--snr", "2", "--seed", "1", "--outdir",
                   suite.string()})
              .code == 0);
  CHECK(fs::exists(suite / "manifest.tsv"));
  CHECK(fs::exists(suite / "short_09.txt"));

  std::vector<std::string> args{"segment"};
  for (int i = 0; i < 10; ++i) {
    char id[32];
    std::snprintf(id, sizeof id, "short_%02d.txt", i);
    args.push_back((suite / id).string());
  }
  args.insert(args.end(), {"--output", pred.string() + "/", "--jobs", "2"});
  REQUIRE(run_cli(args).code == 0);
  CHECK(fs::exists(pred / "short_00.segments.tsv"));

  const Run ev = run_cli({"evaluate", "--manifest", (suite / "manifest.tsv").string(),
                          "--pred-dir", pred.string()});
  CHECK(ev.code == 0);
  CHECK(ev.out.find("\nmean\t") != std::string::npos);

  const auto out_file = dir / "bench.tsv";
  const Run bench = run_cli({"bench", "--suite", suite.string(), "--repetitions", "1", "--output",
                             out_file.string()});
  CHECK(bench.code == 0);
  CHECK(slurp(out_file).find("\ntotal\t50000\t") != std::string::npos);

  // Same seed, same files.
  const auto again = dir / "again";
  REQUIRE(run_cli({"simulate", "--kind", "short", "--snr", "2", "--seed", "1", "--outdir",
                   again.string()})
              .code == 0);
  CHECK(slurp(again / "short_04.txt") == slurp(suite / "short_04.txt"));
  CHECK(slurp(again / "manifest.tsv") == slurp(suite / "manifest.tsv"));
}
