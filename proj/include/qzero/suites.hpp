#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qzero/identities.hpp"
#include "qzero/totalpos.hpp"
#include "qzero/zeros.hpp"

namespace qzero {

enum class Verdict { kPass, kFail, kInconclusive };
std::string to_string(Verdict v);

struct SuiteCheck {
  std::string name;
  Verdict verdict = Verdict::kPass;
  std::string detail;
};

struct NamedVerdict {
  std::string name;
  PFVerdict verdict;
};

struct SuiteResult {
  std::string key;
  std::vector<SuiteCheck> checks;
  std::vector<ZeroReport> zero_reports;
  std::vector<IdentityReport> identity_reports;
  std::vector<NamedVerdict> pf_verdicts;

  /// kFail if any check failed, else kInconclusive if any was, else kPass.
  Verdict verdict() const;
};

/// Overrides for a single suite instance; unset fields keep the built-in grid.
struct SuiteParams {
  std::optional<Real> q;
  std::optional<Real> alpha;
  std::optional<int> l;
  std::optional<Real> x;
  std::optional<Real> y;
  std::optional<std::size_t> zeros;
};

const std::vector<std::string>& suite_keys();

/// Throws InvalidParameter for an unknown key.
SuiteResult run_suite(const std::string& key, const SuiteParams& params = {});

/// Axis confinement on the disk between the m-th and (m+1)-th sign-change
/// zeros, i.e. radius sqrt(|x_m| |x_{m+1}|), so that exactly m zeros are expected.
/// When x_{m+1} is beyond the search limit, the ratio x_m / x_{m-1} stands in.
ZeroReport leading_zeros(const CoefficientFamily& fam, HalfAxis half, std::size_t m, const Real& eps);

/// A_q^(alpha)(q^l; z), the family of the t1i suite.
AqAlpha shifted_aq_family(int l, const Real& alpha, const QParameter& q);

/// Random length-1..6 sequences with entries k/10 in (0, 4], a fifth of them zero.
std::vector<std::vector<Rational>> random_pf_corpus(std::size_t count, unsigned seed);

}  // namespace qzero
