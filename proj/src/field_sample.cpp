#include "rlab/field_sample.hpp"

#include <stdexcept>
#include <string>

namespace rlab {

std::string_view to_string(SampleKind kind) noexcept {
  switch (kind) {
    case SampleKind::kEmpirical: return "empirical";
    case SampleKind::kFluctuation: return "fluctuation";
    case SampleKind::kFluctuationMode: return "fluctuation-mode";
    case SampleKind::kSpde: return "spde";
    case SampleKind::kSite: return "site";
    case SampleKind::kBoundary: return "boundary";
  }
  return "unknown";
}

SampleKind parse_sample_kind(std::string_view name) {
  for (SampleKind kind : {SampleKind::kEmpirical, SampleKind::kFluctuation, SampleKind::kFluctuationMode,
                          SampleKind::kSpde, SampleKind::kSite, SampleKind::kBoundary}) {
    if (to_string(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown sample kind '" + std::string(name) + "'");
}

}  // namespace rlab
