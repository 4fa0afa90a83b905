#include "iseg/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace iseg {
namespace {

double ratio(std::size_t num, std::size_t den, bool& degenerate) {
  if (den == 0) {
    degenerate = true;
    return 0.0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

EvalReport score(const std::vector<bool>& predicted, const std::vector<bool>& truth) {
  if (predicted.size() != truth.size()) {
    throw ValidationError("mask lengths differ: " + std::to_string(predicted.size()) + " vs " +
                          std::to_string(truth.size()));
  }
  EvalReport r;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (predicted[i] && truth[i]) ++r.tp;
    else if (predicted[i]) ++r.fp;
    else if (truth[i]) ++r.fn;
  }
  r.precision = ratio(r.tp, r.tp + r.fp, r.degenerate);
  r.recall = ratio(r.tp, r.tp + r.fn, r.degenerate);
  const double sum = r.precision + r.recall;
  if (sum > 0.0) {
    r.f1 = 2.0 * r.precision * r.recall / sum;
  } else {
    r.f1 = 0.0;
    r.degenerate = true;
  }
  return r;
}

SelectedSet brute_force_segment(const PrefixSums& sums, const NoiseModel& noise,
                                const ScanConfig& cfg, std::size_t max_n) {
  const std::size_t n = sums.size();
  if (n > max_n) {
    throw RefusalError("brute-force segmentation refuses length " + std::to_string(n) +
                       " (limit " + std::to_string(max_n) + ")");
  }
  const std::size_t w_max = std::min(cfg.w_max, n);
  const double log_ps = std::log(cfg.p_s);

  std::vector<Candidate> all;
  for (std::size_t w = cfg.w_min; w <= w_max; ++w) {
    for (std::size_t l = 0; l + w <= n; ++l) {
      const SegmentStats s = segment_stats(sums, l, l + w, noise, cfg.sides);
      if (s.log_p <= log_ps) all.push_back(Candidate{l, l + w, s.mean, s.z, s.log_p, kScanned});
    }
  }
  std::sort(all.begin(), all.end(), RankLess{});

  SelectedSet chosen;
  for (const Candidate& c : all) {
    const bool clash = std::any_of(chosen.begin(), chosen.end(),
                                   [&](const Candidate& s) { return s.overlaps(c.start, c.end); });
    if (!clash) chosen.push_back(c);
  }
  std::sort(chosen.begin(), chosen.end(), StartLess{});
  return chosen;
}

void write_eval_header(std::ostream& out) {
  out << "#profile_id\ttp\tfp\tfn\tprecision\trecall\tf1\tdegenerate\n";
}

void write_eval_row(std::ostream& out, const std::string& id, const EvalReport& r) {
  out << id << '\t' << r.tp << '\t' << r.fp << '\t' << r.fn << '\t' << fixed6(r.precision) << '\t'
      << fixed6(r.recall) << '\t' << fixed6(r.f1) << '\t' << (r.degenerate ? 1 : 0) << '\n';
}

void write_eval_summary(std::ostream& out, const std::vector<EvalReport>& reports) {
  double p = 0.0, r = 0.0, f = 0.0;
  std::size_t tp = 0, fp = 0, fn = 0;
  for (const EvalReport& e : reports) {
    p += e.precision;
    r += e.recall;
    f += e.f1;
    tp += e.tp;
    fp += e.fp;
    fn += e.fn;
  }
  const double m = reports.empty() ? 1.0 : static_cast<double>(reports.size());
  out << "mean\t" << tp << '\t' << fp << '\t' << fn << '\t' << fixed6(p / m) << '\t'
      << fixed6(r / m) << '\t' << fixed6(f / m) << '\t' << (reports.empty() ? 1 : 0) << '\n';
}

}  // namespace iseg
