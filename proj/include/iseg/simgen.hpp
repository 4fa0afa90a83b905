#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "iseg/profile.hpp"

namespace iseg {

// Name and version of the noise generator. Profiles are reproducible for a
// given seed as long as this string is unchanged.
inline constexpr std::string_view kGeneratorName = "mt19937_64+box-muller/1";

struct PlantedSegment {
  std::size_t start = 0;
  std::size_t end = 0;
  double mu = 0.0;  // mean in noise-sigma units, before SNR scaling

  friend bool operator==(const PlantedSegment&, const PlantedSegment&) = default;
};

struct SimSpec {
  std::size_t length = 0;
  std::vector<PlantedSegment> planted;
  double snr = 1.0;
  std::uint64_t seed = 0;

  // Throws ValidationError for empty/out-of-range/overlapping segments.
  void validate() const;
};

// Standard normal deviates from mt19937_64 via the Box-Muller transform on
// 53-bit uniforms. Both pieces are fully specified, so the stream does not
// depend on the standard library's distribution implementations.
class NormalSource {
 public:
  explicit NormalSource(std::seed_seq& seq) : engine_(seq) {}
  explicit NormalSource(std::uint64_t seed);

  double next();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

struct Simulation {
  Profile profile;
  std::vector<PlantedSegment> truth;
};

// Background N(0, 1); planted positions N(snr * mu, 1).
Simulation simulate(const SimSpec& spec);

enum class SuiteKind { short_profiles, long_profiles };

SuiteKind parse_suite_kind(std::string_view name);

struct SuiteProfile {
  std::string id;
  Simulation sim;
};

// Ten profiles. short: length 5000 with 5 planted segments; long: length
// 100000 with 7. Layouts are the fixed tables in simgen.cpp, shifted per
// profile; profile i draws its noise from seed_seq{seed, i}.
std::vector<SuiteProfile> paper_suite(SuiteKind kind, double snr, std::uint64_t seed);

// Ground-truth manifest: "profile_id<TAB>start<TAB>end<TAB>mu" rows, preceded
// by '#' comment lines carrying snr, seed, generator and each profile length.
struct ManifestEntry {
  std::string id;
  std::size_t length = 0;
  std::vector<PlantedSegment> truth;

  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct Manifest {
  double snr = 1.0;
  std::uint64_t seed = 0;
  std::vector<ManifestEntry> entries;

  friend bool operator==(const Manifest&, const Manifest&) = default;
};

Manifest make_manifest(const std::vector<SuiteProfile>& suite, double snr, std::uint64_t seed);
void write_manifest(std::ostream& out, const Manifest& manifest);
Manifest read_manifest(std::istream& in);

}  // namespace iseg
