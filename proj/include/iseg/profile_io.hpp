#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "iseg/profile.hpp"
#include "iseg/significance.hpp"

namespace iseg {

// plain: one value per line.
// tsv: label <TAB> position <TAB> value.
// bedgraph: chrom start end value (whitespace separated), one measurement
// per interval regardless of its width.
// Blank lines, '#' comments and "track"/"browser" lines are skipped.
enum class InputFormat { plain, tsv, bedgraph };
enum class OutputFormat { tsv, bed };

InputFormat parse_input_format(std::string_view name);
OutputFormat parse_output_format(std::string_view name);

// All profiles in the stream, one per contiguous block of identical labels,
// each validated. Throws ParseError (with line number), EmptyInputError or
// ValidationError.
std::vector<Profile> parse_profiles(std::istream& in, InputFormat format);
std::vector<Profile> parse_profiles(std::string_view text, InputFormat format);

// As parse_profiles, but the input must hold exactly one profile.
Profile parse_profile(std::istream& in, InputFormat format);
Profile parse_profile(std::string_view text, InputFormat format);

Profile read_profile_file(const std::string& path, InputFormat format);
std::vector<Profile> read_profile_files(const std::string& path, InputFormat format);

void write_profile_plain(std::ostream& out, const Profile& profile);

// Segment table. Columns: label, start, end, mean, z, p_value, significant.
// start/end are genomic coordinates when the profile carries positions and
// 0-based half-open indices otherwise. mean and z are printed with "%.6f",
// p_value with "%.6e", significant as 1/0. The tsv form starts with a
// '#'-prefixed header row; the bed form has no header. p-values below the
// smallest positive double are written as that value and noted in a
// trailing comment line.
void write_segments(std::ostream& out, const SegmentationResult& result, const Profile& profile,
                    OutputFormat format);
// The pieces of write_segments, for tables that hold several profiles.
void write_segments_header(std::ostream& out, OutputFormat format);
void write_segment_rows(std::ostream& out, const SegmentationResult& result,
                        const Profile& profile);
std::string format_segments(const SegmentationResult& result, const Profile& profile,
                            OutputFormat format);

struct SegmentRow {
  std::string label;
  std::int64_t start = 0;
  std::int64_t end = 0;
  double mean = 0.0;
  double z = 0.0;
  double p_value = 0.0;
  bool significant = false;
};

// Reads a table written by write_segments (either format).
std::vector<SegmentRow> read_segments(std::istream& in);
std::vector<SegmentRow> read_segments(std::string_view text);

}  // namespace iseg
