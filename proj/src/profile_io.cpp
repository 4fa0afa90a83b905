#include "iseg/profile_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "iseg/error.hpp"

namespace iseg {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool skippable(std::string_view line) {
  return line.empty() || line.front() == '#' || line.starts_with("track") ||
         line.starts_with("browser");
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  for (;;) {
    const auto tab = line.find('\t', pos);
    out.push_back(trim(line.substr(pos, tab - pos)));
    if (tab == std::string_view::npos) break;
    pos = tab + 1;
  }
  return out;
}

std::vector<std::string_view> split_whitespace(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    const auto start = line.find_first_not_of(" \t", pos);
    if (start == std::string_view::npos) break;
    auto stop = line.find_first_of(" \t", start);
    if (stop == std::string_view::npos) stop = line.size();
    out.push_back(line.substr(start, stop - start));
    pos = stop;
  }
  return out;
}

double parse_value(std::string_view field, std::size_t line) {
  if (field.empty()) throw ParseError(line, "missing value");
  const std::string_view original = field;
  if (field.size() > 1 && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec == std::errc::result_out_of_range) {
    // from_chars reports subnormals as out of range; strtod keeps them.
    const std::string copy(field);
    v = std::strtod(copy.c_str(), nullptr);
    ec = std::errc();
  }
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(line, "malformed numeric field '" + std::string(original) + "'");
  }
  if (!std::isfinite(v)) {
    throw ParseError(line, "non-finite value '" + std::string(original) + "'");
  }
  return v;
}

std::int64_t parse_coordinate(std::string_view field, std::size_t line) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(line, "malformed coordinate '" + std::string(field) + "'");
  }
  if (v < 0) throw ParseError(line, "negative coordinate");
  return v;
}

std::string format_double(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

}  // namespace

InputFormat parse_input_format(std::string_view name) {
  if (name == "plain") return InputFormat::plain;
  if (name == "tsv") return InputFormat::tsv;
  if (name == "bedgraph") return InputFormat::bedgraph;
  throw ValidationError("unknown input format '" + std::string(name) + "'");
}

OutputFormat parse_output_format(std::string_view name) {
  if (name == "tsv") return OutputFormat::tsv;
  if (name == "bed") return OutputFormat::bed;
  throw ValidationError("unknown output format '" + std::string(name) + "'");
}

std::vector<Profile> parse_profiles(std::istream& in, InputFormat format) {
  std::vector<Profile> out;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (skippable(line)) continue;

    std::string_view label;
    double value = 0.0;
    std::int64_t pos = -1;
    std::int64_t end = -1;
    switch (format) {
      case InputFormat::plain:
        value = parse_value(line, line_no);
        break;
      case InputFormat::tsv: {
        const auto fields = split_tabs(line);
        if (fields.size() != 3) {
          throw ParseError(line_no, "expected 3 tab-separated columns, found " +
                                        std::to_string(fields.size()));
        }
        label = fields[0];
        pos = parse_coordinate(fields[1], line_no);
        value = parse_value(fields[2], line_no);
        break;
      }
      case InputFormat::bedgraph: {
        const auto fields = split_whitespace(line);
        if (fields.size() != 4) {
          throw ParseError(line_no, "expected 4 bedGraph columns, found " +
                                        std::to_string(fields.size()));
        }
        label = fields[0];
        pos = parse_coordinate(fields[1], line_no);
        end = parse_coordinate(fields[2], line_no);
        if (end <= pos) throw ParseError(line_no, "interval end not after start");
        value = parse_value(fields[3], line_no);
        break;
      }
    }

    if (out.empty() || out.back().label != label) {
      for (const Profile& p : out) {
        if (p.label == label) {
          throw ValidationError("label '" + std::string(label) +
                                "' appears in non-contiguous blocks (line " +
                                std::to_string(line_no) + ")");
        }
      }
      out.emplace_back();
      out.back().label = std::string(label);
    }
    Profile& p = out.back();
    if (pos >= 0 && !p.positions.empty() && pos <= p.positions.back()) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": positions not strictly increasing");
    }
    p.values.push_back(value);
    if (pos >= 0) p.positions.push_back(pos);
    if (end >= 0) p.ends.push_back(end);
  }
  if (out.empty()) throw EmptyInputError();
  for (const Profile& p : out) p.validate();
  return out;
}

std::vector<Profile> parse_profiles(std::string_view text, InputFormat format) {
  std::istringstream in{std::string(text)};
  return parse_profiles(in, format);
}

Profile parse_profile(std::istream& in, InputFormat format) {
  auto profiles = parse_profiles(in, format);
  if (profiles.size() != 1) {
    throw ValidationError("expected a single profile, found " + std::to_string(profiles.size()));
  }
  return std::move(profiles.front());
}

Profile parse_profile(std::string_view text, InputFormat format) {
  std::istringstream in{std::string(text)};
  return parse_profile(in, format);
}

std::vector<Profile> read_profile_files(const std::string& path, InputFormat format) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return parse_profiles(in, format);
}

Profile read_profile_file(const std::string& path, InputFormat format) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return parse_profile(in, format);
}

void write_profile_plain(std::ostream& out, const Profile& profile) {
  for (double v : profile.values) out << format_double("%.17g", v) << '\n';
}

void write_segments_header(std::ostream& out, OutputFormat format) {
  if (format == OutputFormat::tsv) out << "#label\tstart\tend\tmean\tz\tp_value\tsignificant\n";
}

void write_segments(std::ostream& out, const SegmentationResult& result, const Profile& profile,
                    OutputFormat format) {
  write_segments_header(out, format);
  write_segment_rows(out, result, profile);
}

void write_segment_rows(std::ostream& out, const SegmentationResult& result,
                        const Profile& profile) {
  const std::string label = profile.label.empty() ? "." : profile.label;
  std::size_t clamped = 0;
  for (const SegmentRecord& r : result.records) {
    if (r.p_clamped()) ++clamped;
    out << label << '\t' << profile.coordinate_start(r.start) << '\t'
        << profile.coordinate_end(r.end) << '\t' << format_double("%.6f", r.mean) << '\t'
        << format_double("%.6f", r.z) << '\t' << format_double("%.6e", r.p_value()) << '\t'
        << (r.significant ? 1 : 0) << '\n';
  }
  if (clamped > 0) {
    out << "# p_value clamped to the smallest positive double for " << clamped
        << " segment(s)\n";
  }
}

std::string format_segments(const SegmentationResult& result, const Profile& profile,
                            OutputFormat format) {
  std::ostringstream out;
  write_segments(out, result, profile, format);
  return out.str();
}

std::vector<SegmentRow> read_segments(std::istream& in) {
  std::vector<SegmentRow> rows;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto f = split_tabs(line);
    if (f.size() != 7) {
      throw ParseError(line_no, "expected 7 segment columns, found " + std::to_string(f.size()));
    }
    SegmentRow row;
    row.label = std::string(f[0]);
    row.start = parse_coordinate(f[1], line_no);
    row.end = parse_coordinate(f[2], line_no);
    row.mean = parse_value(f[3], line_no);
    row.z = parse_value(f[4], line_no);
    row.p_value = parse_value(f[5], line_no);
    if (f[6] != "0" && f[6] != "1") throw ParseError(line_no, "significant flag must be 0 or 1");
    row.significant = f[6] == "1";
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SegmentRow> read_segments(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_segments(in);
}

}  // namespace iseg
