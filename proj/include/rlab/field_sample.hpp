#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace rlab {

/// What a FieldSample row measures.
enum class SampleKind {
  kEmpirical,        // <pi_t, psi_k>
  kFluctuation,      // Y_t(psi_k)
  kFluctuationMode,  // complex Y_t(k) = Y_t(conj g_k)
  kSpde,             // complex SPDE mode X_t(k)
  kSite,             // eta_t(x) with x stored in k
  kBoundary,         // sup_t |sqrt(n) int_0^t (eta(1) - eta(r)) ds|^2
};

std::string_view to_string(SampleKind kind) noexcept;
/// Throws std::invalid_argument for unknown names.
SampleKind parse_sample_kind(std::string_view name);

/// One observation of one replica; a row of the harness CSV
/// (experiment,n,beta,t,k,kind,re,im,replica,seed).
struct FieldSample {
  std::string experiment;
  std::size_t n = 0;
  int beta = 1;
  double t = 0.0;
  int k = 0;
  SampleKind kind = SampleKind::kEmpirical;
  double re = 0.0;
  double im = 0.0;
  std::size_t replica = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const FieldSample&, const FieldSample&) = default;
};

}  // namespace rlab
