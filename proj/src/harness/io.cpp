#include "rlab/harness/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace rlab::harness {

namespace {

constexpr std::array<std::string_view, 10> kColumns{"experiment", "n",  "beta", "t",       "k",
                                                    "kind",       "re", "im",   "replica", "seed"};

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

template <class T>
T parse_field(std::string_view text, std::string_view column, std::size_t line) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument(fmt::format("line {}: bad value '{}' in column '{}'", line, text, column));
  }
  return value;
}

}  // namespace

std::string format_double(double value) { return fmt::format("{}", value); }

void write_samples_csv(std::ostream& out, std::span<const FieldSample> samples) {
  out << kCsvHeader << '\n';
  fmt::memory_buffer buffer;
  for (const auto& s : samples) {
    buffer.clear();
    fmt::format_to(std::back_inserter(buffer), "{},{},{},{},{},{},{},{},{},{}\n", s.experiment, s.n, s.beta, s.t, s.k,
                   to_string(s.kind), s.re, s.im, s.replica, s.seed);
    out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
  }
}

void write_samples_csv(const std::string& path, std::span<const FieldSample> samples) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw OutputError("cannot open '" + path + "' for writing");
  write_samples_csv(out, samples);
  out.flush();
  if (!out) throw OutputError("failed writing '" + path + "'");
}

std::vector<FieldSample> read_samples_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split(line);
  for (std::size_t i = 0; i < kColumns.size(); ++i) {
    if (i >= header.size()) throw std::invalid_argument(fmt::format("CSV header is missing column '{}'", kColumns[i]));
    if (header[i] != kColumns[i]) {
      throw std::invalid_argument(fmt::format("CSV column {} is '{}', expected '{}'", i + 1, header[i], kColumns[i]));
    }
  }
  if (header.size() != kColumns.size()) {
    throw std::invalid_argument(fmt::format("CSV has unexpected column '{}'", header[kColumns.size()]));
  }

  std::vector<FieldSample> samples;
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != kColumns.size()) {
      throw std::invalid_argument(fmt::format("line {}: expected {} fields, got {}", line_number, kColumns.size(), f.size()));
    }
    FieldSample s;
    s.experiment = std::string(f[0]);
    s.n = parse_field<std::size_t>(f[1], kColumns[1], line_number);
    s.beta = parse_field<int>(f[2], kColumns[2], line_number);
    s.t = parse_field<double>(f[3], kColumns[3], line_number);
    s.k = parse_field<int>(f[4], kColumns[4], line_number);
    try {
      s.kind = parse_sample_kind(f[5]);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument(fmt::format("line {}: bad value '{}' in column 'kind'", line_number, f[5]));
    }
    s.re = parse_field<double>(f[6], kColumns[6], line_number);
    s.im = parse_field<double>(f[7], kColumns[7], line_number);
    s.replica = parse_field<std::size_t>(f[8], kColumns[8], line_number);
    s.seed = parse_field<std::uint64_t>(f[9], kColumns[9], line_number);
    samples.push_back(std::move(s));
  }
  return samples;
}

std::vector<FieldSample> read_samples_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read '" + path + "'");
  return read_samples_csv(in);
}

void write_json(const std::string& path, const nlohmann::json& document) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw OutputError("cannot open '" + path + "' for writing");
  out << document.dump(2) << '\n';
  out.flush();
  if (!out) throw OutputError("failed writing '" + path + "'");
}

}  // namespace rlab::harness
