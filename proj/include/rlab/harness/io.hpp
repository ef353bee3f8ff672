#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "rlab/field_sample.hpp"

namespace rlab::harness {

inline constexpr const char* kCsvHeader = "experiment,n,beta,t,k,kind,re,im,replica,seed";

/// Output file could not be written.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

void write_samples_csv(std::ostream& out, std::span<const FieldSample> samples);
/// Throws OutputError.
void write_samples_csv(const std::string& path, std::span<const FieldSample> samples);

/// Throws std::invalid_argument on a header mismatch (naming the column) or a
/// malformed row.
std::vector<FieldSample> read_samples_csv(std::istream& in);
std::vector<FieldSample> read_samples_csv(const std::string& path);

/// Pretty-printed with a trailing newline. Throws OutputError.
void write_json(const std::string& path, const nlohmann::json& document);

}  // namespace rlab::harness
