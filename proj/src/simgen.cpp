#include "iseg/simgen.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "iseg/error.hpp"

namespace iseg {
namespace {

struct LayoutSlot {
  std::size_t start;
  std::size_t length;
  double mu;
};

// Short suite: a singleton, a short, two medium and one long segment. The
// weakest mean sits on the long segment and the strongest on the mediums.
constexpr std::array<LayoutSlot, 5> kShortLayout{{
    {600, 1, 0.72},
    {1500, 5, 0.76},
    {2300, 45, 0.83},
    {3100, 50, 0.9},
    {3900, 250, 0.7},
}};
constexpr std::size_t kShortLength = 5000;
constexpr std::size_t kShortShift = 61;

// Long suite: the same means plus 0.6, which only appears here.
constexpr std::array<LayoutSlot, 7> kLongLayout{{
    {8000, 1, 0.72},
    {21000, 3, 0.76},
    {35000, 25, 0.9},
    {49000, 45, 0.83},
    {63000, 120, 0.6},
    {77000, 200, 0.7},
    {91000, 300, 0.72},
}};
constexpr std::size_t kLongLength = 100000;
constexpr std::size_t kLongShift = 613;

std::uint64_t split_seed_lo(std::uint64_t s) { return s & 0xffffffffu; }
std::uint64_t split_seed_hi(std::uint64_t s) { return s >> 32; }

std::string format_double(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

template <typename T>
T parse_number(std::string_view s, std::size_t line) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(line, "malformed number '" + std::string(s) + "'");
  }
  return v;
}

Simulation simulate_with(const SimSpec& spec, NormalSource& noise) {
  spec.validate();
  Simulation out;
  out.truth = spec.planted;
  std::sort(out.truth.begin(), out.truth.end(),
            [](const PlantedSegment& a, const PlantedSegment& b) { return a.start < b.start; });
  std::vector<double> level(spec.length, 0.0);
  for (const PlantedSegment& seg : out.truth) {
    std::fill(level.begin() + static_cast<std::ptrdiff_t>(seg.start),
              level.begin() + static_cast<std::ptrdiff_t>(seg.end), spec.snr * seg.mu);
  }
  out.profile.values.resize(spec.length);
  for (std::size_t i = 0; i < spec.length; ++i) out.profile.values[i] = level[i] + noise.next();
  return out;
}

}  // namespace

void SimSpec::validate() const {
  if (length == 0) throw ValidationError("simulation length must be positive");
  if (!(snr > 0.0) || !std::isfinite(snr)) throw ValidationError("snr must be positive");
  std::vector<PlantedSegment> sorted = planted;
  std::sort(sorted.begin(), sorted.end(),
            [](const PlantedSegment& a, const PlantedSegment& b) { return a.start < b.start; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const PlantedSegment& s = sorted[i];
    if (s.end <= s.start || s.end > length) {
      throw ValidationError("planted segment [" + std::to_string(s.start) + "," +
                            std::to_string(s.end) + ") outside [0," + std::to_string(length) +
                            ")");
    }
    if (i > 0 && s.start < sorted[i - 1].end) {
      throw ValidationError("planted segments overlap at " + std::to_string(s.start));
    }
  }
}

NormalSource::NormalSource(std::uint64_t seed) {
  std::seed_seq seq{split_seed_lo(seed), split_seed_hi(seed)};
  engine_.seed(seq);
}

double NormalSource::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // u1 in (0, 1], u2 in [0, 1)
  const double u1 = 1.0 - static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Simulation simulate(const SimSpec& spec) {
  NormalSource noise(spec.seed);
  return simulate_with(spec, noise);
}

SuiteKind parse_suite_kind(std::string_view name) {
  if (name == "short") return SuiteKind::short_profiles;
  if (name == "long") return SuiteKind::long_profiles;
  throw ValidationError("unknown suite kind '" + std::string(name) + "'");
}

std::vector<SuiteProfile> paper_suite(SuiteKind kind, double snr, std::uint64_t seed) {
  const bool is_short = kind == SuiteKind::short_profiles;
  const std::size_t length = is_short ? kShortLength : kLongLength;
  const std::size_t shift = is_short ? kShortShift : kLongShift;
  const std::size_t slots = is_short ? kShortLayout.size() : kLongLayout.size();

  std::vector<SuiteProfile> out;
  for (std::size_t i = 0; i < 10; ++i) {
    SimSpec spec;
    spec.length = length;
    spec.snr = snr;
    spec.seed = seed;
    for (std::size_t j = 0; j < slots; ++j) {
      const LayoutSlot slot = is_short ? kShortLayout[j] : kLongLayout[j];
      const std::size_t start = slot.start + shift * i;
      spec.planted.push_back(PlantedSegment{start, start + slot.length, slot.mu});
    }
    std::seed_seq seq{split_seed_lo(seed), split_seed_hi(seed), static_cast<std::uint64_t>(i)};
    NormalSource noise(seq);
    char id[32];
    std::snprintf(id, sizeof id, "%s_%02zu", is_short ? "short" : "long", i);
    out.push_back(SuiteProfile{id, simulate_with(spec, noise)});
    out.back().sim.profile.label = id;
  }
  return out;
}

Manifest make_manifest(const std::vector<SuiteProfile>& suite, double snr, std::uint64_t seed) {
  Manifest m;
  m.snr = snr;
  m.seed = seed;
  for (const SuiteProfile& p : suite) {
    m.entries.push_back(ManifestEntry{p.id, p.sim.profile.size(), p.sim.truth});
  }
  return m;
}

void write_manifest(std::ostream& out, const Manifest& manifest) {
  out << "# generator\t" << kGeneratorName << '\n';
  out << "# snr\t" << format_double("%.17g", manifest.snr) << '\n';
  out << "# seed\t" << manifest.seed << '\n';
  for (const ManifestEntry& e : manifest.entries) {
    out << "# length\t" << e.id << '\t' << e.length << '\n';
  }
  out << "#profile_id\tstart\tend\tmu\n";
  for (const ManifestEntry& e : manifest.entries) {
    for (const PlantedSegment& s : e.truth) {
      out << e.id << '\t' << s.start << '\t' << s.end << '\t' << format_double("%.17g", s.mu)
          << '\n';
    }
  }
}

Manifest read_manifest(std::istream& in) {
  Manifest m;
  std::string line;
  std::size_t line_no = 0;
  auto entry_for = [&](const std::string& id) -> ManifestEntry& {
    for (ManifestEntry& e : m.entries) {
      if (e.id == id) return e;
    }
    m.entries.push_back(ManifestEntry{id, 0, {}});
    return m.entries.back();
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::istringstream fields(line);
    for (std::string tok; std::getline(fields, tok, '\t');) f.push_back(tok);
    if (line.front() == '#') {
      if (f.size() == 2 && f[0] == "# snr") m.snr = parse_number<double>(f[1], line_no);
      if (f.size() == 2 && f[0] == "# seed") m.seed = parse_number<std::uint64_t>(f[1], line_no);
      if (f.size() == 3 && f[0] == "# length") {
        entry_for(f[1]).length = parse_number<std::size_t>(f[2], line_no);
      }
      continue;
    }
    if (f.size() != 4) throw ParseError(line_no, "expected 4 manifest columns");
    entry_for(f[0]).truth.push_back(PlantedSegment{parse_number<std::size_t>(f[1], line_no),
                                                   parse_number<std::size_t>(f[2], line_no),
                                                   parse_number<double>(f[3], line_no)});
  }
  for (const ManifestEntry& e : m.entries) {
    for (const PlantedSegment& s : e.truth) {
      if (s.end <= s.start || (e.length > 0 && s.end > e.length)) {
        throw ValidationError("manifest segment of '" + e.id + "' outside its profile");
      }
    }
  }
  return m;
}

}  // namespace iseg
