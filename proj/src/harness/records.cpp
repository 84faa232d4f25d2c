#include "spmdbench/harness/records.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "spmdbench/errors.hpp"

namespace spmdbench::harness {

namespace {

void check_field(const std::string& f, const char* what) {
  if (f.find_first_of(",\n\r") != std::string::npos) {
    throw InvalidArgument(std::string(what) + " field '" + f + "' must not contain commas or newlines");
  }
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string::size_type start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_double(const std::string& s, int lineno) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidArgument("csv line " + std::to_string(lineno) + ": bad number '" + s + "'");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& s, int lineno) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidArgument("csv line " + std::to_string(lineno) + ": bad integer '" + s + "'");
  }
  return v;
}

template <class Row, class Parse>
std::vector<Row> read_rows(std::istream& in, std::string_view header, std::size_t ncols,
                           Parse parse) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("csv file is empty (missing header)");
  if (line != header) {
    throw InvalidArgument("csv header mismatch: expected '" + std::string(header) + "', got '" +
                          line + "'");
  }
  std::vector<Row> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != ncols) {
      throw InvalidArgument("csv line " + std::to_string(lineno) + ": expected " +
                            std::to_string(ncols) + " fields, got " + std::to_string(f.size()));
    }
    rows.push_back(parse(f, lineno));
  }
  return rows;
}

template <class Rows>
void write_file(const std::string& path, const Rows& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_csv(out, rows);
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return in;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void write_csv(std::ostream& out, std::span<const BenchmarkRecord> records) {
  out << kRawHeader << '\n';
  for (const auto& r : records) {
    check_field(r.params, "params");
    out << r.workload << ',' << r.kernel << ',' << r.backend << ',' << r.dtype << ',' << r.params
        << ',' << r.iter << ',' << format_double(r.time_s) << '\n';
  }
}

void write_csv(std::ostream& out, std::span<const SummaryRecord> summaries) {
  out << kSummaryHeader << '\n';
  for (const auto& s : summaries) {
    check_field(s.params, "params");
    out << s.workload << ',' << s.kernel << ',' << s.backend << ',' << s.dtype << ',' << s.params
        << ',' << s.fom_name << ',' << format_double(s.fom_value) << ','
        << format_double(s.time_min_s) << ',' << format_double(s.time_mean_s) << ','
        << format_double(s.time_max_s) << ',' << format_double(s.time_stddev_s) << '\n';
  }
}

void write_csv(const std::string& path, std::span<const BenchmarkRecord> records) {
  write_file(path, records);
}

void write_csv(const std::string& path, std::span<const SummaryRecord> summaries) {
  write_file(path, summaries);
}

std::vector<BenchmarkRecord> read_raw_csv(std::istream& in) {
  return read_rows<BenchmarkRecord>(in, kRawHeader, 7, [](const auto& f, int lineno) {
    return BenchmarkRecord{f[0], f[1], f[2], f[3], f[4], parse_u64(f[5], lineno),
                           parse_double(f[6], lineno)};
  });
}

std::vector<SummaryRecord> read_summary_csv(std::istream& in) {
  return read_rows<SummaryRecord>(in, kSummaryHeader, 11, [](const auto& f, int lineno) {
    return SummaryRecord{f[0],
                         f[1],
                         f[2],
                         f[3],
                         f[4],
                         f[5],
                         parse_double(f[6], lineno),
                         parse_double(f[7], lineno),
                         parse_double(f[8], lineno),
                         parse_double(f[9], lineno),
                         parse_double(f[10], lineno)};
  });
}

std::vector<BenchmarkRecord> read_raw_csv(const std::string& path) {
  auto in = open_in(path);
  return read_raw_csv(in);
}

std::vector<SummaryRecord> read_summary_csv(const std::string& path) {
  auto in = open_in(path);
  return read_summary_csv(in);
}

}  // namespace spmdbench::harness
