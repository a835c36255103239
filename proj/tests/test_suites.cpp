#include <doctest.h>

#include "qzero/error.hpp"
#include "qzero/suites.hpp"
#include "test_util.hpp"

using namespace qzero;

TEST_CASE("every suite key passes") {
  for (const auto& key : suite_keys()) {
    CAPTURE(key);
    const SuiteResult r = run_suite(key);
    CHECK(r.key == key);
    CHECK_FALSE(r.checks.empty());
    for (const auto& c : r.checks) {
      INFO(c.name, ": ", c.detail);
      CHECK(c.verdict == Verdict::kPass);
    }
    CHECK(r.verdict() == Verdict::kPass);
  }
}

TEST_CASE("unknown suite is a parameter error") {
  try {
    run_suite("t3");
    FAIL("expected InvalidParameter");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidParameter);
  }
}

TEST_CASE("verify t1i with explicit parameters runs a single instance") {
  SuiteParams p;
  p.q = Real("0.5");
  p.alpha = Real(1);
  p.l = 2;
  p.zeros = 8;
  const SuiteResult r = run_suite("t1i", p);
  REQUIRE(r.zero_reports.size() == 1);
  const ZeroReport& z = r.zero_reports.front();
  CHECK(z.confined);
  CHECK(z.zeros.size() == 8);
  for (const auto& e : z.zeros) CHECK(e.classification == ZeroClass::kNegativeReal);
}

TEST_CASE("leading_zeros brackets exactly m zeros") {
  const AqAlpha fam = shifted_aq_family(2, Real(1), QParameter(Real("0.5")));
  for (std::size_t m : {1, 3, 5}) {
    const ZeroReport r = leading_zeros(fam, HalfAxis::kNegative, m, current_precision().check_tolerance());
    CHECK(r.winding_count == static_cast<long>(m));
    CHECK(r.bracket_count == m);
  }
  CHECK_THROWS_AS(leading_zeros(fam, HalfAxis::kNegative, 0, pow10(-40)), Error);
}

TEST_CASE("a failing check outranks an inconclusive one") {
  SuiteResult r;
  r.checks = {{"a", Verdict::kPass, ""}, {"b", Verdict::kInconclusive, ""}};
  CHECK(r.verdict() == Verdict::kInconclusive);
  r.checks.push_back({"c", Verdict::kFail, ""});
  CHECK(r.verdict() == Verdict::kFail);
  CHECK(to_string(Verdict::kInconclusive) == "inconclusive");
}

TEST_CASE("random_pf_corpus is deterministic and nonzero") {
  const auto a = random_pf_corpus(50, 7), b = random_pf_corpus(50, 7);
  CHECK(a == b);
  for (const auto& s : a) {
    CHECK(s.size() >= 1);
    CHECK(s.size() <= 6);
    bool any = false;
    for (const auto& x : s) {
      CHECK(x >= 0);
      any = any || x != 0;
    }
    CHECK(any);
  }
}
