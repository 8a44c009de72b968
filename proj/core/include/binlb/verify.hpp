#pragma once

// The checks behind `binlb verify`, bundled as named results.

#include <cstdint>
#include <string>
#include <vector>

#include "binlb/analysis.hpp"
#include "binlb/construction.hpp"

namespace binlb {

/// Multiplier-combination identity on `samples` random nu vectors (seeded).
bool multiplier_identity_holds(int t, const Rational& w, int samples, std::uint64_t seed = 7);
/// RHS coefficient identity on `samples` random (N, n_L) pairs.
bool rhs_identity_holds(int t, const Rational& w, int samples, std::uint64_t seed = 11);

/// n_L values spread over [0, N], both ends included.
std::vector<std::int64_t> sample_n_large(std::int64_t n, int count);

struct SolutionCheck {
  std::int64_t n_large = 0;
  StoppingPoint point;
  std::int64_t bins = 0;
  Rational formula;
  bool feasible = false;
  bool within_three = false;  // bins <= formula + 3
  std::string error;
};

/// Builds and validates the OPT packing at every stopping point for each n_L.
std::vector<SolutionCheck> check_solutions(const ConstructionParams& p, const std::vector<std::int64_t>& n_large);

struct VerifyOptions {
  int t = 3;
  Rational w;
  int identity_samples = 1000;
  int n_large_samples = 20;
  CertifyMethod method = CertifyMethod::exhaustive;
};

struct NamedCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyResult {
  std::vector<NamedCheck> checks;
  PriceCertificate certificate;
  std::vector<SolutionCheck> solutions;

  bool ok() const;
  std::vector<std::string> failing() const;
};

VerifyResult verify_all(const VerifyOptions& options);

}  // namespace binlb
