#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "iseg/error.hpp"
#include "iseg/evaluator.hpp"
#include "iseg/pipeline.hpp"
#include "iseg/profile_io.hpp"
#include "iseg/simgen.hpp"

namespace iseg::cli {
namespace {

namespace fs = std::filesystem;

struct ScanFlags {
  ScanConfig cfg;
  double pb = -1.0;
  double sigma = 0.0;
  std::string sides = "two";
  std::string bh_family = "windows";
  bool exhaustive = false;

  ScanConfig resolve() const {
    ScanConfig out = cfg;
    if (pb >= 0.0) out.p_b = pb;
    out.sides = sides == "one" ? Sides::one : Sides::two;
    out.bh_family = bh_family == "segments" ? BhFamily::segments : BhFamily::windows;
    out.exhaustive = exhaustive;
    return out;
  }
  std::optional<double> sigma_override() const {
    return sigma > 0.0 ? std::optional<double>(sigma) : std::nullopt;
  }
};

void add_scan_flags(CLI::App* app, ScanFlags& f) {
  app->add_option("--wmin", f.cfg.w_min, "Shortest scanned window")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app->add_option("--wmax", f.cfg.w_max, "Longest scanned window (clamped to the profile)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app->add_option("--rho", f.cfg.rho, "Growth factor between window lengths")->capture_default_str();
  app->add_option("--ps", f.cfg.p_s, "p-value retention threshold for scanned windows")
      ->capture_default_str();
  app->add_option("--alpha", f.cfg.alpha, "Benjamini-Hochberg false discovery rate")
      ->capture_default_str();
  app->add_option("--pb", f.pb,
                  "Biological cutoff on |segment mean - background|, in signal units "
                  "(disabled unless given)");
  app->add_option("--k-refine", f.cfg.k_refine, "Boundary refinement moves by ceil(length/K)")
      ->capture_default_str();
  app->add_option("--background", f.cfg.background, "Background level tested against")
      ->capture_default_str();
  app->add_option("--sigma", f.sigma,
                  "Noise standard deviation; overrides the MAD estimate (needed when MAD is 0)");
  app->add_option("--sides", f.sides, "two: two-sided test; one: upper tail only")
      ->capture_default_str()
      ->check(CLI::IsMember({"two", "one"}));
  app->add_option("--bh-family", f.bh_family,
                  "windows: BH over all scanned windows; segments: BH over final segments")
      ->capture_default_str()
      ->check(CLI::IsMember({"windows", "segments"}));
  app->add_flag("--exhaustive", f.exhaustive, "Scan every window length at stride 1");
}

// Writes `content` to `path` through a temporary file in the same directory.
void write_atomically(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw DataError("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw DataError("cannot move output into '" + path.string() + "': " + ec.message());
}

void emit(const std::optional<std::string>& path, const std::string& content, std::ostream& out) {
  if (path) {
    write_atomically(*path, content);
  } else {
    out << content;
  }
}

template <typename Fn>
void parallel_for(std::size_t count, std::size_t jobs, Fn&& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < jobs; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::string suffix_for(OutputFormat f) { return f == OutputFormat::bed ? ".bed" : ".tsv"; }

struct SegmentArgs {
  std::vector<std::string> inputs;
  std::string format = "plain";
  std::string out_format = "tsv";
  std::optional<std::string> output;
  std::size_t jobs = 1;
  ScanFlags scan;
};

int run_segment(const SegmentArgs& a, std::ostream& out, std::ostream& err) {
  const InputFormat in_fmt = parse_input_format(a.format);
  const OutputFormat out_fmt = parse_output_format(a.out_format);
  const ScanConfig cfg = a.scan.resolve();
  cfg.validate();

  struct Job {
    std::size_t file;
    Profile profile;
    SegmentationResult result;
    std::vector<std::string> warnings;
  };
  std::vector<Job> jobs;
  for (std::size_t f = 0; f < a.inputs.size(); ++f) {
    std::vector<Profile> profiles =
        a.inputs[f] == "-" ? parse_profiles(std::cin, in_fmt) : read_profile_files(a.inputs[f], in_fmt);
    for (Profile& p : profiles) jobs.push_back(Job{f, std::move(p), {}, {}});
  }

  parallel_for(jobs.size(), a.jobs, [&](std::size_t i) {
    PipelineTrace trace;
    jobs[i].result = segment_profile(jobs[i].profile, cfg, a.scan.sigma_override(), &trace);
    jobs[i].warnings = std::move(trace.warnings);
  });
  for (const Job& j : jobs) {
    for (const std::string& w : j.warnings) {
      err << "iseg: warning: " << (j.profile.label.empty() ? a.inputs[j.file] : j.profile.label)
          << ": " << w << '\n';
    }
  }

  const bool to_dir = a.output && (fs::is_directory(*a.output) || a.output->ends_with('/'));
  if (to_dir) {
    fs::create_directories(*a.output);
    for (std::size_t f = 0; f < a.inputs.size(); ++f) {
      std::ostringstream table;
      write_segments_header(table, out_fmt);
      for (const Job& j : jobs) {
        if (j.file == f) write_segment_rows(table, j.result, j.profile);
      }
      const std::string stem = a.inputs[f] == "-" ? "stdin" : fs::path(a.inputs[f]).stem().string();
      write_atomically(fs::path(*a.output) / (stem + ".segments" + suffix_for(out_fmt)), table.str());
    }
    return kOk;
  }

  std::ostringstream table;
  write_segments_header(table, out_fmt);
  for (const Job& j : jobs) write_segment_rows(table, j.result, j.profile);
  emit(a.output, table.str(), out);
  return kOk;
}

struct SimulateArgs {
  std::string kind = "short";
  double snr = 1.0;
  std::uint64_t seed = 1;
  std::string outdir;
};

int run_simulate(const SimulateArgs& a) {
  const SuiteKind kind = parse_suite_kind(a.kind);
  if (!(a.snr > 0.0)) throw ValidationError("snr must be positive");
  const auto suite = paper_suite(kind, a.snr, a.seed);
  std::error_code ec;
  fs::create_directories(a.outdir, ec);
  if (ec || !fs::is_directory(a.outdir)) {
    throw DataError("cannot create output directory '" + a.outdir + "'");
  }
  for (const SuiteProfile& p : suite) {
    std::ostringstream body;
    write_profile_plain(body, p.sim.profile);
    write_atomically(fs::path(a.outdir) / (p.id + ".txt"), body.str());
  }
  std::ostringstream manifest;
  write_manifest(manifest, make_manifest(suite, a.snr, a.seed));
  write_atomically(fs::path(a.outdir) / "manifest.tsv", manifest.str());
  return kOk;
}

Manifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open manifest '" + path + "'");
  return read_manifest(in);
}

struct EvaluateArgs {
  std::string manifest;
  std::string pred_dir;
  std::optional<std::string> output;
};

int run_evaluate(const EvaluateArgs& a, std::ostream& out) {
  const Manifest m = load_manifest(a.manifest);
  std::ostringstream table;
  write_eval_header(table);
  std::vector<EvalReport> reports;
  for (const ManifestEntry& e : m.entries) {
    if (e.length == 0) throw DataError("manifest lacks a length for '" + e.id + "'");
    const fs::path pred_path = fs::path(a.pred_dir) / (e.id + ".segments.tsv");
    std::ifstream in(pred_path);
    if (!in) throw DataError("cannot open predictions '" + pred_path.string() + "'");
    struct Span {
      std::size_t start, end;
    };
    std::vector<Span> predicted;
    for (const SegmentRow& row : read_segments(in)) {
      if (row.significant) {
        predicted.push_back(Span{static_cast<std::size_t>(row.start), static_cast<std::size_t>(row.end)});
      }
    }
    const EvalReport r = score(positions_mask(predicted, e.length), positions_mask(e.truth, e.length));
    write_eval_row(table, e.id, r);
    reports.push_back(r);
  }
  write_eval_summary(table, reports);
  emit(a.output, table.str(), out);
  return kOk;
}

struct BenchArgs {
  std::string suite;
  std::size_t repetitions = 3;
  std::optional<std::string> output;
  ScanFlags scan;
};

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

int run_bench(const BenchArgs& a, std::ostream& out) {
  using clock = std::chrono::steady_clock;
  const Manifest m = load_manifest((fs::path(a.suite) / "manifest.tsv").string());
  const ScanConfig cfg = a.scan.resolve();
  cfg.validate();

  std::ostringstream table;
  table << "#profile_id\tn\tparse_seconds\tsegment_seconds\tsegments\tsignificant\n";
  double parse_total = 0.0, segment_total = 0.0;
  std::size_t n_total = 0;
  for (const ManifestEntry& e : m.entries) {
    const std::string path = (fs::path(a.suite) / (e.id + ".txt")).string();
    std::vector<double> parse_times, segment_times;
    SegmentationResult result;
    for (std::size_t rep = 0; rep < a.repetitions; ++rep) {
      const auto t0 = clock::now();
      const Profile profile = read_profile_file(path, InputFormat::plain);
      const auto t1 = clock::now();
      result = segment_profile(profile, cfg, a.scan.sigma_override());
      const auto t2 = clock::now();
      parse_times.push_back(std::chrono::duration<double>(t1 - t0).count());
      segment_times.push_back(std::chrono::duration<double>(t2 - t1).count());
      n_total += rep == 0 ? profile.size() : 0;
    }
    const double tp = median_of(parse_times);
    const double ts = median_of(segment_times);
    parse_total += tp;
    segment_total += ts;
    const auto sig = std::count_if(result.records.begin(), result.records.end(),
                                   [](const SegmentRecord& r) { return r.significant; });
    table << e.id << '\t' << e.length << '\t' << fixed6(tp) << '\t' << fixed6(ts) << '\t'
          << result.records.size() << '\t' << sig << '\n';
  }
  table << "total\t" << n_total << '\t' << fixed6(parse_total) << '\t' << fixed6(segment_total)
        << "\t.\t.\n";
  emit(a.output, table.str(), out);
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"iseg: significant segment detection in sequential profiles"};
  app.require_subcommand(1);

  SegmentArgs seg;
  CLI::App* segment = app.add_subcommand("segment", "Segment one or more profiles");
  segment->add_option("inputs", seg.inputs, "Input files ('-' for standard input)")->required();
  segment->add_option("--format", seg.format, "Input format: plain, tsv or bedgraph")
      ->capture_default_str()
      ->check(CLI::IsMember({"plain", "tsv", "bedgraph"}));
  segment->add_option("--out-format", seg.out_format, "Output format: tsv or bed")
      ->capture_default_str()
      ->check(CLI::IsMember({"tsv", "bed"}));
  segment->add_option("--output", seg.output,
                      "Output file, or a directory to write <input>.segments.<fmt> per input");
  segment->add_option("--jobs", seg.jobs, "Profiles processed concurrently")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  add_scan_flags(segment, seg.scan);

  SimulateArgs sim;
  CLI::App* simulate = app.add_subcommand("simulate", "Generate a simulated profile suite");
  simulate->add_option("--kind", sim.kind, "Suite: short (10 x 5000) or long (10 x 100000)")
      ->capture_default_str()
      ->check(CLI::IsMember({"short", "long"}));
  simulate->add_option("--snr", sim.snr, "Signal-to-noise multiplier on planted means")
      ->capture_default_str();
  simulate->add_option("--seed", sim.seed, "Random seed")->capture_default_str();
  simulate->add_option("--outdir", sim.outdir, "Directory for profiles and manifest.tsv")->required();

  EvaluateArgs ev;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Score predictions against a manifest");
  evaluate->add_option("--manifest", ev.manifest, "Ground-truth manifest.tsv")->required();
  evaluate->add_option("--pred-dir", ev.pred_dir,
                       "Directory holding <profile_id>.segments.tsv tables")
      ->required();
  evaluate->add_option("--output", ev.output, "Output file (default: standard output)");

  BenchArgs bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Time segmentation of a simulated suite");
  bench_cmd->add_option("--suite", bench.suite, "Directory written by 'iseg simulate'")->required();
  bench_cmd->add_option("--repetitions", bench.repetitions, "Timed runs per profile (median kept)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--output", bench.output, "Output file (default: standard output)");
  add_scan_flags(bench_cmd, bench.scan);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and friends go to `out` with exit 0.
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*segment) return run_segment(seg, out, err);
    if (*simulate) return run_simulate(sim);
    if (*evaluate) return run_evaluate(ev, out);
    if (*bench_cmd) return run_bench(bench, out);
  } catch (const DataError& e) {
    err << "iseg: error: " << e.what() << '\n';
    return kDataError;
  } catch (const fs::filesystem_error& e) {
    err << "iseg: error: " << e.what() << '\n';
    return kDataError;
  } catch (const InvariantError& e) {
    err << "iseg: internal error: " << e.what() << '\n';
    return kInternalError;
  } catch (const std::exception& e) {
    err << "iseg: internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kUsageError;
}

}  // namespace iseg::cli
