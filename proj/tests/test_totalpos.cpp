#include <doctest.h>

#include <random>

#include "qzero/error.hpp"
#include "qzero/qcore.hpp"
#include "qzero/totalpos.hpp"
#include "test_util.hpp"

using namespace qzero;
namespace bmp = boost::multiprecision;

namespace {

const Real kTol = pow10(-40);

std::vector<Rational> rationals(std::initializer_list<const char*> texts) {
  std::vector<Rational> out;
  for (const char* t : texts) out.push_back(parse_rational(t));
  return out;
}

// length 1..6, entries k/10 in (0, 4], about a fifth of them zero
std::vector<std::vector<Rational>> random_corpus(std::size_t count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> length(1, 6), tenths(1, 40);
  std::bernoulli_distribution zero(0.2);
  std::vector<std::vector<Rational>> out;
  while (out.size() < count) {
    std::vector<Rational> s(static_cast<std::size_t>(length(rng)));
    bool any = false;
    for (auto& a : s) {
      a = zero(rng) ? Rational(0) : Rational(tenths(rng), 10);
      any = any || a != 0;
    }
    if (any) out.push_back(std::move(s));
  }
  return out;
}

// len + 2 misses complex roots close to the negative axis (see the
// counterexample below); len + 6 separates this corpus
unsigned full_window(const std::vector<Rational>& s) { return static_cast<unsigned>(s.size() + 6); }

std::vector<Real> zhang(const Real& nu, const QParameter& q, std::size_t count) {
  const Real shifted = bmp::pow(q.value(), nu + 1);
  std::vector<Real> out;
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back(1 / (qpochhammer_finite(q.value(), q, k) * qpochhammer_finite(shifted, q, k)));
  }
  return out;
}

std::vector<Real> composite(unsigned l, const Real& alpha, const QParameter& q, std::size_t count) {
  const Real ql = bmp::pow(q.value(), l);
  std::vector<Real> out;
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back(qpochhammer_finite(ql, q, k) * bmp::pow(q.value(), alpha * Real(k * k)) /
                  qpochhammer_finite(q.value(), q, k));
  }
  return out;
}

}  // namespace

TEST_CASE("parse_rational is exact") {
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-1.5e2") == Rational(-150));
  CHECK(parse_rational("3/12") == Rational(1, 4));
  CHECK(parse_rational(" 7 ") == Rational(7));
  CHECK(parse_rational("1e-3") == Rational(1, 1000));
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("1.2.3"), Error);
}

TEST_CASE("is_pf_window examples") {
  const auto square = is_pf_window(rationals({"1", "2", "1"}), 4, 4, kTol);
  CHECK(square.is_pf);
  CHECK(square.order_tested == 4);
  CHECK(square.window_tested == 4);
  CHECK_FALSE(square.witness);

  const auto gap = is_pf_window(rationals({"1", "0", "1"}), 3, 2, kTol);
  REQUIRE_FALSE(gap.is_pf);
  REQUIRE(gap.witness);
  CHECK(gap.witness->rows == std::vector<unsigned>{0, 1});
  CHECK(gap.witness->cols == std::vector<unsigned>{1, 2});
  CHECK(gap.witness->value == -1);

  const QParameter q(Real("0.5"));
  std::vector<Real> gaussian;
  for (std::size_t k = 0; k < 10; ++k) gaussian.push_back(bmp::pow(q.value(), Real(k * k)) / factorial(k));
  CHECK(is_pf_window(gaussian, 10, 4, kTol).is_pf);
}

TEST_CASE("first witnesses match the brute-force oracle") {
  struct Case {
    std::vector<Rational> seq;
    unsigned window, order;
    std::vector<unsigned> rows, cols;
    Rational value;
  };
  const std::vector<Case> cases = {
      {rationals({"1", "1", "1"}), 5, 3, {0, 1, 2}, {1, 2, 3}, Rational(-1)},
      {rationals({"2", "1", "1"}), 5, 3, {0, 1}, {1, 2}, Rational(-1)},
      {rationals({"1", "3/2", "1/2", "1/10"}), 6, 4, {0, 1, 2}, {2, 3, 4}, Rational(-3, 200)},
  };
  for (const auto& c : cases) {
    for (auto exec : {kernels::Execution::kSerial, kernels::Execution::kParallel}) {
      const auto exact = is_pf_window(c.seq, c.window, c.order, kTol, exec);
      REQUIRE(exact.witness);
      CHECK(exact.witness->rows == c.rows);
      CHECK(exact.witness->cols == c.cols);
      CHECK(exact.witness->value == to_real(c.value));

      std::vector<Real> reals;
      for (const auto& a : c.seq) reals.push_back(to_real(a));
      const auto approx = is_pf_window(reals, c.window, c.order, kTol, exec);
      REQUIRE(approx.witness);
      CHECK(approx.witness->rows == c.rows);
      CHECK(approx.witness->cols == c.cols);
      CHECK_CLOSE(approx.witness->value, to_real(c.value), pow10(-60));
    }
  }
}

TEST_CASE("verdict invariants") {
  for (const auto& s : random_corpus(60, 3)) {
    const auto v = is_pf_window(s, full_window(s), 3, kTol);
    CHECK(v.is_pf == !v.witness.has_value());
    if (v.witness) CHECK(v.witness->value < -kTol);
  }
  CHECK(is_pf_window(rationals({"1", "1"}), 2, 5, kTol).order_tested == 2);
  CHECK_THROWS_AS(is_pf_window(std::vector<Rational>{}, 3, 2, kTol), Error);
  CHECK_THROWS_AS(is_pf_window(rationals({"1"}), 0, 2, kTol), Error);
}

TEST_CASE("pf_via_roots examples") {
  CHECK(pf_via_roots(rationals({"1", "1"})));
  CHECK_FALSE(pf_via_roots(rationals({"1", "0", "1"})));
  CHECK(pf_via_roots(rationals({"1", "3", "3", "1"})));
  CHECK(pf_via_roots(rationals({"0", "0", "1", "2", "1", "0"})));
  CHECK(pf_via_roots(rationals({"0", "4"})));
  try {
    pf_via_roots(rationals({"0", "0"}));
    FAIL("expected DegenerateAllZero");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateAllZero);
  }
  CHECK_THROWS_AS(pf_via_roots(rationals({"1", "-1"})), Error);
}

TEST_CASE("root oracle and minor oracle agree on 500 random sequences") {
  const auto corpus = random_corpus(500, 20240);
  std::size_t disagreements = 0, pf = 0;
  for (const auto& s : corpus) {
    const bool by_roots = pf_via_roots(s);
    const bool by_minors = is_pf_window(s, full_window(s), full_window(s), kTol).is_pf;
    if (by_roots != by_minors) {
      ++disagreements;
      std::string text;
      for (const auto& a : s) text += a.str() + " ";
      MESSAGE("disagreement on " << text);
    }
    pf += by_roots ? 1 : 0;
  }
  CHECK(disagreements == 0);
  // the corpus exercises both verdicts
  CHECK(pf > 50);
  CHECK(pf < 450);
}

TEST_CASE("roots close to the negative axis need a wider window") {
  // 1.5 + 2.4 z + 1.2 z^2 has complex roots, but every minor of the 5x5 window is nonnegative
  const auto s = rationals({"1.5", "2.4", "1.2"});
  CHECK_FALSE(pf_via_roots(s));
  CHECK(is_pf_window(s, 5, 5, kTol).is_pf);
  const auto wide = is_pf_window(s, 7, 7, kTol);
  REQUIRE(wide.witness);
  CHECK(wide.witness->rows == std::vector<unsigned>{0, 1, 2, 3, 4, 5});
  CHECK(wide.witness->cols == std::vector<unsigned>{1, 2, 3, 4, 5, 6});
  CHECK(wide.witness->value == to_real(Rational(-21141, 15625)));
}

TEST_CASE("serial and parallel scans agree") {
  for (const auto& s : random_corpus(80, 9)) {
    const auto a = is_pf_window(s, full_window(s), 4, kTol, kernels::Execution::kSerial);
    const auto b = is_pf_window(s, full_window(s), 4, kTol, kernels::Execution::kParallel);
    CHECK(a.is_pf == b.is_pf);
    if (a.witness && b.witness) {
      CHECK(a.witness->rows == b.witness->rows);
      CHECK(a.witness->cols == b.witness->cols);
      CHECK(a.witness->value == b.witness->value);
    }
  }
}

TEST_CASE("scale_sequence examples") {
  const auto s = rationals({"1", "2", "1"});
  CHECK(scale_sequence(s, Rational(1)) == s);
  CHECK(scale_sequence(s, Rational(2)) == rationals({"1", "4", "4"}));
  CHECK_THROWS_AS(scale_sequence(s, Rational(0)), Error);
  CHECK_THROWS_AS(scale_sequence(std::vector<Real>{Real(1)}, Real(-1)), Error);

  // q^{-lk} (q^l;q)_k / (q;q)_k rescaled by q^l drops the q^{-lk}
  const QParameter q(Real("0.5"));
  const unsigned l = 3;
  const Real ql = bmp::pow(q.value(), l);
  std::vector<Real> raw, expected;
  for (std::size_t k = 0; k < 8; ++k) {
    const Real ratio = qpochhammer_finite(ql, q, k) / qpochhammer_finite(q.value(), q, k);
    expected.push_back(ratio);
    raw.push_back(bmp::pow(ql, -static_cast<long>(k)) * ratio);
  }
  const auto scaled = scale_sequence(raw, ql);
  for (std::size_t k = 0; k < 8; ++k) CHECK_CLOSE(scaled[k], expected[k], pow10(-60));
}

TEST_CASE("verdicts are invariant under geometric rescaling") {
  auto corpus = random_corpus(120, 77);
  corpus.push_back(rationals({"1", "2", "1"}));
  corpus.push_back(rationals({"1", "0", "1"}));
  corpus.push_back(rationals({"1", "3", "3", "1"}));
  for (const auto& s : corpus) {
    const unsigned w = full_window(s);
    const bool base = is_pf_window(s, w, w, kTol).is_pf;
    for (const Rational c : {Rational(1, 10), Rational(1), Rational(7)}) {
      CHECK(is_pf_window(scale_sequence(s, c), w, w, kTol).is_pf == base);
    }
  }
}

TEST_CASE("products of PF sequences stay PF") {
  std::vector<std::vector<Rational>> pf;
  for (const auto& s : random_corpus(400, 5)) {
    if (s.size() >= 3 && pf_via_roots(s)) pf.push_back(s);
    if (pf.size() == 8) break;
  }
  REQUIRE(pf.size() == 8);
  for (std::size_t i = 0; i < pf.size(); ++i) {
    for (std::size_t j = i; j < pf.size(); ++j) {
      const std::size_t n = std::min(pf[i].size(), pf[j].size());
      std::vector<Rational> plain(n), weighted(n);
      Rational fact(1);
      for (std::size_t k = 0; k < n; ++k) {
        if (k > 0) fact *= Rational(static_cast<long>(k));
        plain[k] = pf[i][k] * pf[j][k];
        weighted[k] = fact * plain[k];
      }
      CHECK(is_pf_window(plain, 8, 3, kTol).is_pf);
      CHECK(is_pf_window(weighted, 8, 3, kTol).is_pf);
    }
  }
}

TEST_CASE("Zhang's sequence passes") {
  for (const auto& [nu, q] : {std::pair{"-0.5", "0.3"}, std::pair{"0", "0.5"}, std::pair{"2", "0.7"}}) {
    CAPTURE(nu);
    CHECK(is_pf_window(zhang(Real(nu), QParameter(Real(q)), 10), 10, 4, kTol).is_pf);
  }
}

TEST_CASE("composite sequence passes") {
  CHECK(is_pf_window(composite(2, Real(1), QParameter(Real("0.5")), 10), 10, 4, kTol).is_pf);
  CHECK(is_pf_window(composite(3, Real("0.5"), QParameter(Real("0.3")), 10), 10, 4, kTol).is_pf);
}

TEST_CASE("lazy sequences") {
  const AqAlpha fam(Real(1), Real("0.25"), QParameter(Real("0.5")));
  const auto lazy = family_sequence(fam);
  CHECK(is_pf_window(lazy, 8, 3, kTol).is_pf);

  const LazySequence short_seq{[](std::size_t k) { return Real(1) / factorial(k); }, 5};
  CHECK(is_pf_window(short_seq, 5, 3, kTol).is_pf);
  try {
    is_pf_window(short_seq, 6, 3, kTol);
    FAIL("expected WindowTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::WindowTooLarge);
  }
}
