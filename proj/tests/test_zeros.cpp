#include <doctest.h>

#include "qzero/error.hpp"
#include "qzero/zeros.hpp"
#include "test_util.hpp"

using namespace qzero;
using qzero::testing::R;
namespace bmp = boost::multiprecision;

namespace {

QParameter Q(const char* s) { return QParameter::parse(s); }

// tests/oracles/zeros_oracle.py
const char* const kFirstAqZero =
    "-1.7577863949461103995480564548520384706592923221194381986818357204574035932557288";
const char* const kFirstSwZero =
    "3.5355339059327376220042218105242451964241796884423701829416993449768311961552676";

AqAlpha shifted_aq(int l, const char* alpha, const char* q) {
  const QParameter qq = Q(q);
  return AqAlpha(R(alpha), bmp::pow(qq.value(), l), qq);
}

std::vector<CoefficientFamily> family_grid() {
  std::vector<CoefficientFamily> fams;
  fams.emplace_back(shifted_aq(2, "1", "0.5"));
  fams.emplace_back(AqAlpha(R("0.5"), R("-1.5"), Q("0.3")));
  fams.emplace_back(AqAlpha(Real(1), R("0.6"), Q("0.6")));
  fams.emplace_back(MixedQ(Real(1), Q("0.5"), {2}, {Q("0.5")}, {Real(0)}, {Q("0.5")}));
  fams.emplace_back(HyperLimit({2}, {Real(0)}));
  fams.emplace_back(RatioQuad(Real(1), {R("2.5")}, {R("1.5")}, Q("0.4"), 0));
  fams.emplace_back(RogersSzegoSeries(Real(1), R("0.3"), R("0.7"), Q("0.5")));
  fams.emplace_back(StieltjesWigertSeries(R("0.5"), R("-0.3"), R("-0.4"), Q("0.5")));
  return fams;
}

std::size_t count_inside(const std::vector<Complex>& roots, const Real& radius) {
  std::size_t n = 0;
  for (const auto& z : roots) n += abs(z) < radius ? 1 : 0;
  return n;
}

}  // namespace

TEST_CASE("poly_roots examples") {
  const auto linear = poly_roots(std::vector<Real>{Real(1), Real(1)});
  REQUIRE(linear.size() == 1);
  CHECK_CLOSE(linear[0], Complex(-1), pow10(-60));

  const auto pair = poly_roots(std::vector<Real>{Real(1), Real(0), Real(1)});
  REQUIRE(pair.size() == 2);
  CHECK_CLOSE(pair[0], Complex(Real(0), Real(-1)), pow10(-60));
  CHECK_CLOSE(pair[1], Complex(Real(0), Real(1)), pow10(-60));

  const auto origin = poly_roots(std::vector<Real>{Real(0), Real(0), Real(2), Real(2), Real(0)});
  REQUIRE(origin.size() == 3);
  CHECK(origin[0] == Complex());
  CHECK(origin[1] == Complex());
  CHECK_CLOSE(origin[2], Complex(-1), pow10(-60));

  CHECK_THROWS_AS(poly_roots(std::vector<Real>{Real(0), Real(0)}), Error);
  CHECK(poly_roots(std::vector<Real>{Real(3)}).empty());
}

TEST_CASE("poly_roots on the degree-60 and degree-80 truncations") {
  const AqAlpha fam = shifted_aq(2, "1", "0.5");
  const auto r60 = poly_roots(coefficients(fam, 61));
  const auto r80 = poly_roots(coefficients(fam, 81));
  REQUIRE(r60.size() == 60);
  REQUIRE(r80.size() == 80);
  CHECK_CLOSE(r60[0], Complex(R(kFirstAqZero)), pow10(-60));
  for (std::size_t i = 0; i < 8; ++i) {
    CAPTURE(i);
    CHECK(r60[i].re < 0);
    CHECK(bmp::abs(r60[i].im) <= realness_tolerance() * abs(r60[i]));
    CHECK(abs(r60[i] - r80[i]) <= pow10(-10));
  }
}

TEST_CASE("poly_roots meets the backward residual target") {
  const auto c = coefficients(StieltjesWigertSeries(R("0.5"), R("-0.3"), R("-0.4"), Q("0.5")), 41);
  for (const auto& z : poly_roots(c)) {
    Complex p;
    Real majorant(0);
    for (std::size_t k = c.size(); k-- > 0;) {
      p = p * z + Complex(c[k]);
      majorant = majorant * abs(z) + bmp::abs(c[k]);
    }
    CHECK(abs(p) <= pow10(-45) * majorant);
  }
}

TEST_CASE("winding_count examples") {
  const auto toy = certify(std::vector<Real>{Real(1), Real(1)}, Real(10));
  const auto w = winding_count(toy, Complex(), Real(2));
  CHECK(w.count == 1);
  CHECK(w.certificate == Certificate::kRigorous);
  CHECK(winding_count(toy, Complex(Real(5)), Real(1)).count == 0);

  const AqAlpha ramanujan(Real(1), Real(0), Q("0.5"));
  CHECK(winding_count(ramanujan, Complex(), R("0.5"), pow10(-40)).count == 0);

  const AqAlpha fam = shifted_aq(2, "1", "0.5");
  const auto r = poly_roots(coefficients(fam, 61));
  const Real between = bmp::sqrt(abs(r[7]) * abs(r[8]));
  CHECK(winding_count(fam, Complex(), between, pow10(-40)).count == 8);
}

TEST_CASE("winding_count throws when the contour runs through a zero") {
  // f(z) = 1 + z with the contour |z| = 1 passing through -1 at every perturbation radius
  // is impossible, so use a polynomial with zeros on all the candidate circles
  std::vector<Real> poly{Real(1)};
  for (const char* r : {"1", "1.01", "0.99", "1.02", "0.98"}) {
    std::vector<Real> next(poly.size() + 1, Real(0));
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k] += poly[k] * R(r);
      next[k + 1] += poly[k];
    }
    poly = next;
  }
  CHECK_THROWS_AS(winding_count(certify(poly, Real(3)), Complex(), Real(1)), Error);
}

TEST_CASE("winding count equals the number of truncation roots inside") {
  for (const auto& fam : family_grid()) {
    CAPTURE(family_tag(fam));
    for (std::size_t degree : {5, 12, 25, 40}) {
      CAPTURE(degree);
      const auto c = coefficients(fam, degree + 1);
      const auto roots = poly_roots(c);
      const CertifiedFunction f = certify(c, abs(roots.back()) * 4);
      std::size_t checked = 0;
      for (std::size_t i = 0; i + 1 < roots.size() && checked < 6; ++i) {
        const Real lo = abs(roots[i]), hi = abs(roots[i + 1]);
        if (!(hi > lo * Real(1.05))) continue;
        const Real radius = bmp::sqrt(lo * hi);
        CAPTURE(to_decimal(radius, 8));
        CHECK(winding_count(f, Complex(), radius).count == static_cast<long>(count_inside(roots, radius)));
        ++checked;
      }
    }
  }
}

TEST_CASE("real_axis_zeros examples") {
  const AqAlpha fam = shifted_aq(2, "1", "0.5");
  const auto z = real_axis_zeros(fam, HalfAxis::kNegative, 1, pow10(-40));
  REQUIRE(z.size() == 1);
  CHECK(bmp::abs(z[0].location - R(kFirstAqZero)) <= z[0].enclosure_radius);
  CHECK(z[0].enclosure_radius <= pow10(-40));

  const StieltjesWigertSeries sw(R("0.5"), R("-0.3"), R("-0.4"), Q("0.5"));
  const auto p = real_axis_zeros(sw, HalfAxis::kPositive, 1, pow10(-40));
  REQUIRE(p.size() == 1);
  CHECK(p[0].location > 0);
  CHECK(bmp::abs(p[0].location - R(kFirstSwZero)) <= p[0].enclosure_radius);

  // positive coefficients leave nothing on the positive axis
  CHECK_THROWS_AS(real_axis_zeros(fam, HalfAxis::kPositive, 1, pow10(-40)), Error);
  CHECK_THROWS_AS(real_axis_zeros(fam, HalfAxis::kNegative, 0, pow10(-40)), Error);
}

TEST_CASE("real_axis_zeros are sorted, separated and enclose a sign change") {
  const AqAlpha fam = shifted_aq(3, "1", "0.5");
  const auto z = real_axis_zeros(fam, HalfAxis::kNegative, 8, pow10(-40));
  for (std::size_t i = 0; i < z.size(); ++i) {
    CHECK(z[i].location < 0);
    CHECK(z[i].enclosure_radius < bmp::abs(z[i].location) * pow10(-30));
    const Real a = evaluate(fam, z[i].location - z[i].enclosure_radius, pow10(-80));
    const Real b = evaluate(fam, z[i].location + z[i].enclosure_radius, pow10(-80));
    CHECK(a * b < 0);
    if (i > 0) CHECK(z[i].location < z[i - 1].location);
  }
}

TEST_CASE("axis_confinement examples") {
  const AqAlpha fam = shifted_aq(2, "1", "0.5");
  const auto z = real_axis_zeros(fam, HalfAxis::kNegative, 6, pow10(-40));
  const Real radius = bmp::sqrt(z[4].location * z[5].location);
  const ZeroReport report = axis_confinement(fam, radius, HalfAxis::kNegative, pow10(-40));
  CHECK(report.confined);
  CHECK(report.winding_count == 5);
  CHECK(report.bracket_count == 5);
  CHECK(report.certificate == Certificate::kRigorous);
  REQUIRE(report.zeros.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(report.zeros[i].classification == ZeroClass::kNegativeReal);
    CHECK(report.zeros[i].location.im == 0);
    CHECK(report.zeros[i].imag_crosscheck <= realness_tolerance() * abs(report.zeros[i].location));
    CHECK(abs(report.zeros[i].location) + report.zeros[i].enclosure_radius < report.disk_radius);
  }

  const ZeroReport toy = axis_confinement(std::vector<Real>{Real(1), Real(1)}, Real(2), HalfAxis::kNegative);
  CHECK(toy.confined);
  CHECK(toy.winding_count == 1);
  REQUIRE(toy.zeros.size() == 1);
  CHECK_CLOSE(toy.zeros[0].location, Complex(-1), pow10(-40));

  // a = q = 0.6 lies past the real-zero threshold: a conjugate pair appears
  const ZeroReport past_threshold = axis_confinement(AqAlpha(Real(1), R("0.6"), Q("0.6")), Real(20), HalfAxis::kNegative,
                                          pow10(-40));
  CHECK_FALSE(past_threshold.confined);
  CHECK(past_threshold.certificate == Certificate::kRigorous);
  CHECK(static_cast<long>(past_threshold.zeros.size()) == past_threshold.winding_count);
  std::size_t complex_zeros = 0;
  for (const auto& e : past_threshold.zeros) complex_zeros += e.classification == ZeroClass::kComplexPair ? 1 : 0;
  CHECK(complex_zeros == 2);
  CHECK(past_threshold.zeros[0].location.im < 0);
  CHECK_CLOSE(past_threshold.zeros[1].location, conj(past_threshold.zeros[0].location), pow10(-30));
}

TEST_CASE("origin zeros of a shifted ratio family are split off") {
  const RatioQuad fam(Real(1), {R("2.5")}, {R("1.5")}, Q("0.4"), 2);
  const auto z = real_axis_zeros(fam, HalfAxis::kNegative, 3, pow10(-40));
  const Real radius = bmp::sqrt(z[1].location * z[2].location);
  const ZeroReport report = axis_confinement(fam, radius, HalfAxis::kNegative, pow10(-40));
  CHECK(report.origin_multiplicity == 2);
  CHECK(report.winding_count == 2);
  CHECK(report.confined);
}

TEST_CASE("Hurwitz stability: N and N+20 truncations certify the same zeros") {
  const AqAlpha fam = shifted_aq(2, "1", "0.5");
  const Real radius(100000);
  const CertifiedFunction base = certify(fam, radius, pow10(-40));
  const std::size_t N = base.coeffs.size() - 1;
  const auto c = coefficients(fam, N + 21);
  CertifiedFunction longer = base;
  longer.coeffs = c;
  longer.tail_bound = tail_bound_at(fam, N + 20, c.back(), radius);
  REQUIRE(longer.tail_bound <= base.tail_bound);
  const auto a = real_zeros_within(base, HalfAxis::kNegative, radius, Real(1.1));
  const auto b = real_zeros_within(longer, HalfAxis::kNegative, radius, Real(1.1));
  REQUIRE(a.size() == 8);
  REQUIRE(b.size() == a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(bmp::abs(a[i].location - b[i].location) <= a[i].enclosure_radius + b[i].enclosure_radius);
  }
}

TEST_CASE("partial-sum roots in |z| <= 5 settle between N = 60 and N = 80") {
  const AqAlpha fam(Real(1), R("0.25"), Q("0.5"));
  const auto r60 = poly_roots(coefficients(fam, 61));
  const auto r80 = poly_roots(coefficients(fam, 81));
  const std::size_t inside = count_inside(r60, Real(5));
  REQUIRE(inside == count_inside(r80, Real(5)));
  REQUIRE(inside >= 1);
  for (std::size_t i = 0; i < inside; ++i) CHECK(abs(r60[i] - r80[i]) < pow10(-10));
}

TEST_CASE("theorem2_K0 examples") {
  CHECK(theorem2_K0(RatioQuad(Real(1), {Real(1)}, {Real(1)}, Q("0.4"), 0), 100) == 2);
  const RatioQuad slow(Real(1), {R("0.01")}, {Real(5)}, Q("0.45"), 0);
  const std::size_t K0 = theorem2_K0(slow, 100);
  CHECK(K0 == 5);
  // the closed-form bound only kicks in at 7; ratios 5 and 6 are checked directly
  CHECK_FALSE(log_concavity_lower_bound(slow, 6) > 4);
  CHECK(log_concavity_lower_bound(slow, 7) > 4);
  CHECK(log_concavity_ratio(slow, 5) > 4);
  CHECK(log_concavity_ratio(slow, 6) > 4);
  CHECK_FALSE(log_concavity_ratio(slow, 4) > 4);
  CHECK(theorem2_K0(RatioQuad(Real(1), {R("2.5")}, {R("1.5")}, Q("0.4"), 0), 100) == 2);
  CHECK_THROWS_AS(RatioQuad(Real(1), {Real(1)}, {Real(1)}, Q("0.5"), 0), Error);
  // q^{-2} barely above 4 pushes K0 past the search limit
  CHECK_THROWS_AS(theorem2_K0(RatioQuad(Real(1), {Real(1)}, {Real(1)}, Q("0.4999999"), 0), 10), Error);
}

TEST_CASE("log-concavity ratio matches the coefficients") {
  const RatioQuad fam(Real(1), {R("2.5"), R("0.7")}, {R("1.5")}, Q("0.4"), 0);
  const auto c = coefficients(fam, 30);
  for (std::size_t k = 2; k < 30; ++k) {
    const Real direct = c[k - 1] * c[k - 1] / (c[k] * c[k - 2]);
    CHECK_CLOSE(log_concavity_ratio(fam, k), direct, pow10(-55) * direct);
  }
}
