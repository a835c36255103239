#include <doctest.h>

#include <random>

#include "qzero/error.hpp"
#include "qzero/series.hpp"
#include "test_util.hpp"

using namespace qzero;
using qzero::testing::R;
namespace bmp = boost::multiprecision;

namespace {

QParameter Q(const char* s) { return QParameter::parse(s); }

std::vector<CoefficientFamily> family_grid() {
  std::vector<CoefficientFamily> fams;
  fams.emplace_back(AqAlpha(Real(1), R("0.25"), Q("0.5")));
  fams.emplace_back(AqAlpha(R("0.5"), R("-1.5"), Q("0.3")));
  fams.emplace_back(AqAlpha(R("2"), R("0.6"), Q("0.8")));
  fams.emplace_back(MixedQ(Real(1), Q("0.5"), {2}, {Q("0.5")}, {Real(0)}, {Q("0.5")}));
  fams.emplace_back(MixedQ(R("0.7"), Q("0.4"), {3, 2}, {Q("0.6"), Q("0.2")}, {R("-0.5")}, {Q("0.3")}));
  fams.emplace_back(HyperLimit({}, {Real(0)}));
  fams.emplace_back(HyperLimit({2}, {Real(0)}));
  fams.emplace_back(HyperLimit({3, 4}, {R("1.5"), Real(0)}));
  fams.emplace_back(RatioQuad(Real(1), {R("2.5")}, {R("1.5")}, Q("0.4"), 2));
  fams.emplace_back(RatioQuad(Real(1), {R("0.01"), Real(3)}, {Real(5)}, Q("0.45"), 0));
  fams.emplace_back(RogersSzegoSeries(Real(1), R("0.3"), R("0.7"), Q("0.5")));
  fams.emplace_back(RogersSzegoSeries(R("0.5"), R("1.5"), R("-2"), Q("0.6")));
  fams.emplace_back(StieltjesWigertSeries(R("0.5"), R("-0.3"), R("-0.4"), Q("0.5")));
  fams.emplace_back(StieltjesWigertSeries(Real(1), R("0.8"), R("-0.4"), Q("0.7"), true));
  return fams;
}

}  // namespace

TEST_CASE("coefficient examples") {
  CHECK(coefficient(AqAlpha(Real(1), Real(0), Q("0.5")), 0) == 1);
  CHECK_CLOSE(coefficient(HyperLimit({}, {Real(0)}), 2), R("0.25"), pow10(-65));
  // (0.75 * 0.875) * 0.0625 / (0.5 * 0.75)
  CHECK_CLOSE(coefficient(AqAlpha(Real(1), R("0.25"), Q("0.5")), 2), R("0.109375"), pow10(-65));
  const RatioQuad rq(Real(1), {R("2.5")}, {R("1.5")}, Q("0.4"), 3);
  CHECK(coefficient(rq, 2) == 0);
  CHECK(coefficients(rq, 3)[2] == 0);
  CHECK(coefficient(rq, 3) > 0);
}

TEST_CASE("incremental coefficients match the defining products") {
  for (const auto& fam : family_grid()) {
    CAPTURE(family_tag(fam));
    const auto c = coefficients(fam, 40);
    for (std::size_t k = 0; k < c.size(); ++k) {
      CAPTURE(k);
      const Real direct = coefficient(fam, k);
      CHECK(bmp::abs(c[k] - direct) <= pow10(-60) * (bmp::abs(direct) + pow10(-1000000)));
    }
  }
}

TEST_CASE("construction enforces parameter ranges") {
  CHECK_THROWS_AS(AqAlpha(Real(0), Real(0), Q("0.5")), Error);
  CHECK_THROWS_AS(MixedQ(Real(1), Q("0.5"), {}, {}, {}, {}), Error);
  CHECK_THROWS_AS(MixedQ(Real(1), Q("0.5"), {1}, {Q("0.5")}, {}, {}), Error);
  CHECK_THROWS_AS(MixedQ(Real(1), Q("0.5"), {}, {}, {Real(-1)}, {Q("0.5")}), Error);
  CHECK_THROWS_AS(HyperLimit({2}, {}), Error);
  CHECK_THROWS_AS(HyperLimit({2}, {Real(-0.5)}), Error);
  // q = 2^{-1/alpha} exactly violates the strict hypothesis
  CHECK_THROWS_AS(RatioQuad(Real(1), {Real(1)}, {Real(1)}, Q("0.5"), 0), Error);
  CHECK_NOTHROW(RatioQuad(Real(1), {Real(1)}, {Real(1)}, Q("0.4999"), 0));
  CHECK_THROWS_AS(RatioQuad(Real(1), {Real(-1)}, {Real(1)}, Q("0.4"), 0), Error);
  CHECK_THROWS_AS(StieltjesWigertSeries(R("0.4"), Real(0), Real(0), Q("0.5")), Error);
}

TEST_CASE("Rogers-Szego polynomials") {
  const QParameter q = Q("0.5");
  CHECK(rogers_szego(0, R("0.3"), R("0.2"), q) == 1);
  CHECK_CLOSE(rogers_szego(1, R("0.3"), R("0.2"), q), R("0.5"), pow10(-65));
  CHECK_CLOSE(rogers_szego(2, R("0.3"), R("0.2"), q), R("0.22"), pow10(-65));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ux(-2, 2), uq(0.05, 0.95);
  for (int t = 0; t < 20; ++t) {
    const Real x(ux(rng)), y(ux(rng));
    const QParameter qq{Real(uq(rng))};
    for (std::size_t n = 0; n < 15; ++n) {
      const Real a = rogers_szego(n, x, y, qq);
      const Real b = rogers_szego(n, y, x, qq);
      CHECK(bmp::abs(a - b) <= pow10(-60) * (1 + bmp::abs(a)) * bmp::pow(Real(3), static_cast<long>(n)));
    }
  }
}

TEST_CASE("Stieltjes-Wigert polynomials") {
  const QParameter q = Q("0.5");
  CHECK(stieltjes_wigert_gn(0, R("-0.3"), R("-0.4"), q) == 1);
  CHECK_CLOSE(stieltjes_wigert_gn(1, R("-0.3"), R("-0.4"), q), R("-0.7"), pow10(-65));
  CHECK_CLOSE(stieltjes_wigert_gn(2, R("-0.3"), R("-0.4"), q), R("0.61"), pow10(-65));

  for (auto conv : {SwConvention::kSquare, SwConvention::kSquarePlusLinear}) {
    CHECK(sw_classical(0, R("0.7"), q, conv) == 1);
  }
  CHECK_CLOSE(sw_classical(1, Real(1), q, SwConvention::kSquare), Real(1), pow10(-65));
  // 1/(q;q)_1 - q^2/(q;q)_1 at q = 1/2
  CHECK_CLOSE(sw_classical(1, Real(1), q, SwConvention::kSquarePlusLinear), R("1.5"), pow10(-65));
}

TEST_CASE("Lemma bounds on the polynomial coefficient families") {
  const QParameter q = Q("0.5");
  const Real eps = pow10(-60);
  {
    const Real x = R("0.3"), y = R("0.7");
    const Real bound = 1 / (qpochhammer_infinite(x, q, eps) * qpochhammer_infinite(y, q, eps));
    for (std::size_t n = 0; n < 60; ++n) {
      const Real v = rogers_szego(n, x, y, q) / qpochhammer_finite(q.value(), q, n);
      CHECK(v >= 0);
      CHECK(v <= bound);
    }
  }
  {
    // The g_n bound needs the q^{n(n-1)/2} weight of the alternating
    // generating function; without it the q^{k(k-n)} factors blow it up.
    const Real x = R("-0.3"), y = R("-0.4");
    const Real bound = 1 / (qpochhammer_infinite(-x, q, eps) * qpochhammer_infinite(-y, q, eps));
    bool unweighted_holds = true;
    for (std::size_t n = 0; n < 60; ++n) {
      const Real g = bmp::abs(stieltjes_wigert_gn(n, x, y, q)) / qpochhammer_finite(q.value(), q, n);
      const Real weighted = g * bmp::pow(q.value(), static_cast<long>(n * (n - (n > 0 ? 1 : 0)) / 2));
      CHECK(weighted <= bound);
      unweighted_holds = unweighted_holds && g <= bound;
    }
    CHECK_FALSE(unweighted_holds);
  }
}

TEST_CASE("entirety: |c_k|^(1/k) eventually decreases to 0") {
  for (const auto& fam : family_grid()) {
    CAPTURE(family_tag(fam));
    const auto c = coefficients(fam, 400);
    std::vector<Real> root;
    for (std::size_t k = 1; k < c.size(); ++k) {
      root.push_back(c[k] == 0 ? Real(0) : bmp::exp(bmp::log(bmp::abs(c[k])) / k));
    }
    std::size_t k0 = root.size();
    while (k0 > 1 && root[k0 - 2] >= root[k0 - 1]) --k0;
    CHECK(k0 <= 100);
    CHECK(root.back() < Real(0.1));
  }
}

TEST_CASE("truncation examples") {
  const AqAlpha ramanujan(Real(1), Real(0), Q("0.5"));
  const auto t = truncation_for(ramanujan, Real(1), pow10(-30));
  CHECK(t.tail_bound <= pow10(-30));
  CHECK(t.N >= 9);
  CHECK(t.N <= 12);
  CHECK(bmp::abs(coefficient(ramanujan, t.N)) <= pow10(-24));
  // the certified tail dominates the next 2N terms summed directly
  Real tail(0);
  for (std::size_t k = t.N + 1; k <= 3 * t.N; ++k) tail += coefficient(ramanujan, k);
  CHECK(tail <= t.tail_bound);

  const auto zero = truncation_for(ramanujan, Real(0), pow10(-30));
  CHECK(zero.N == 0);
  CHECK(zero.tail_bound == 0);

  const auto h = truncation_for(HyperLimit({}, {Real(0)}), Real(1), pow10(-30));
  CHECK(h.N <= 40);
  Real htail(0);
  for (std::size_t k = h.N + 1; k < 200; ++k) htail += 1 / bmp::pow(factorial(k), 2);
  CHECK(htail <= h.tail_bound);
}

TEST_CASE("tail bounds dominate the true tail across the family grid") {
  for (const auto& fam : family_grid()) {
    CAPTURE(family_tag(fam));
    for (const char* radius : {"0.5", "3", "40"}) {
      const Real rad = R(radius);
      const auto poly = certified_polynomial(fam, rad, pow10(-40));
      const std::size_t N = poly.truncation.N;
      const auto c = coefficients(fam, N + 300);
      Real tail(0);
      for (std::size_t k = N + 1; k < c.size(); ++k) tail += bmp::abs(c[k]) * bmp::pow(rad, static_cast<long>(k));
      CHECK(tail <= poly.truncation.tail_bound);
      CHECK(poly.truncation.tail_bound <= pow10(-40));
    }
  }
}

TEST_CASE("evaluate examples") {
  CHECK(evaluate(AqAlpha(R("0.7"), R("0.3"), Q("0.5")), Complex(0), pow10(-40)) == Complex(1));
  // mpmath direct 200-term sums at 100 digits (tests/oracles/series_oracle.py)
  CHECK_CLOSE(evaluate(AqAlpha(Real(1), Real(0), Q("0.5")), Real(1), pow10(-55)),
              R("2.17266875084966365601691360985931282065643693510960886029505"), pow10(-55));
  CHECK_CLOSE(evaluate(AqAlpha(Real(1), R("0.25"), Q("0.5")), Real(-3), pow10(-55)),
              R("-0.362121513490600425204008772791799298357363434980536708757086"), pow10(-55));
  const RogersSzegoSeries rs(Real(1), R("0.3"), R("0.2"), Q("0.5"));
  const Real v = evaluate(rs, Real(1), pow10(-30));
  CHECK_CLOSE(v, R("1.53718909834029068261936195927378464520111883138115263058131"), pow10(-30));
  CHECK(v <= R("4.7156168205832885580127523267"));
  CHECK_CLOSE(evaluate(HyperLimit({}, {Real(0)}), Real(1), pow10(-55)),
              R("2.27958530233606726743720444081153335328584110278545905407084"), pow10(-55));
}

TEST_CASE("evaluate is stable across eps") {
  const Complex z(R("-7.5"), R("2.25"));
  for (const auto& fam : family_grid()) {
    CAPTURE(family_tag(fam));
    const Complex a = evaluate(fam, z, pow10(-20));
    const Complex b = evaluate(fam, z, pow10(-40));
    CHECK(abs(a - b) <= 2 * pow10(-20));
  }
}

TEST_CASE("evaluate raises precision when cancellation eats the guard digits") {
  // |c_k| z^k peaks near 1e30 at z = -1e4 while the value is far smaller
  const AqAlpha fam(Real(1), R("0.25"), Q("0.5"));
  const Real x(-10000);
  const Real direct = evaluate(fam, x, pow10(-60));
  ScopedPrecision high(PrecisionContext(120, 20));
  const Real reference = evaluate(fam, x, pow10(-100));
  CHECK(bmp::abs(direct - reference) <= pow10(-60));
}

TEST_CASE("order estimates") {
  const Real ratio_order = order_estimate(RatioQuad(Real(1), {Real(1)}, {Real(1)}, Q("0.4"), 0), 300);
  CHECK(ratio_order < Real(0.05));
  const Real half = order_estimate(HyperLimit({}, {Real(0)}), 500);
  CHECK(half >= Real(0.45));
  CHECK(half <= Real(0.55));
  const Real quarter = order_estimate(HyperLimit({}, {Real(0), Real(0)}), 500);
  CHECK(quarter >= Real(0.2));
  CHECK(quarter <= Real(0.3));
  CHECK_THROWS_AS(order_estimate(HyperLimit({}, {Real(0)}), 5), Error);

  // the literal quotient approaches 1/2 from above, slowly
  const HyperLimit h({}, {Real(0)});
  const Real q100 = order_quotient(h, 100);
  const Real q400 = order_quotient(h, 400);
  CHECK(q100 > q400);
  CHECK(q400 > Real(0.5));
}

TEST_CASE("certified_sum on a geometric series") {
  const Complex x(R("0.5"), R("0.25"));
  const auto sum = certified_sum(
      [&](std::size_t k) { return pow(x, k); },
      [&](std::size_t N, const std::vector<Complex>&) {
        const Real r = abs(x);
        return bmp::pow(r, static_cast<long>(N + 1)) / (1 - r);
      },
      pow10(-50));
  CHECK_CLOSE(sum.value, Complex(1) / (Complex(1) - x), pow10(-49));
}
