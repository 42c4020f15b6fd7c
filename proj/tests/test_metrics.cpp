#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "hwarp/error.hpp"
#include "hwarp/metrics.hpp"
#include "hwarp/rng.hpp"
#include "oracles.hpp"

using namespace hwarp;

namespace {

Homography random_homography(std::mt19937_64& rng) {
  AlgebraCoeffs b;
  b[kB1] = uniform(rng, -20, 20);
  b[kB2] = uniform(rng, -20, 20);
  b[kB3] = uniform(rng, -0.5, 0.5);
  b[kB4] = uniform(rng, -0.2, 0.2);
  b[kB5] = uniform(rng, -0.2, 0.2);
  b[kB6] = uniform(rng, -0.1, 0.1);
  b[kB7] = uniform(rng, -5e-4, 5e-4);
  b[kB8] = uniform(rng, -5e-4, 5e-4);
  return compose_homography(b);
}

std::vector<std::array<double, 2>> corner_list(double w, double h) {
  return {{-w / 2, -h / 2}, {w / 2, -h / 2}, {w / 2, h / 2}, {-w / 2, h / 2}};
}

}  // namespace

TEST_CASE("alignment error basics") {
  const Corners c = template_corners(256, 256);
  CHECK(alignment_error(Homography(), Homography(), c) == 0.0);
  AlgebraCoeffs t;
  t[kB1] = 3;
  t[kB2] = 4;
  CHECK(alignment_error(compose_homography(t), Homography(), c) == doctest::Approx(5.0));
}

TEST_CASE("alignment error and MACE match a four-corner oracle") {
  std::mt19937_64 rng(123);
  const Corners c = template_corners(256, 192);
  std::vector<std::pair<Homography, Homography>> pairs;
  double sum = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Homography p = random_homography(rng);
    const Homography t = random_homography(rng);
    const double want = oracle::corner_error(p.matrix(), t.matrix(), corner_list(256, 192));
    CHECK(std::abs(alignment_error(p, t, c) - want) < 1e-9);
    pairs.emplace_back(p, t);
    sum += want;
  }
  const MaceResult m = mace(pairs, c);
  CHECK(std::abs(m.value - sum / 100) < 1e-9);
  CHECK(m.sample_count == 100);
  CHECK(m.infinite_count == 0);
}

TEST_CASE("MACE arithmetic and sentinels") {
  const std::vector<double> e{2.0, 4.0};
  CHECK(mace(e).value == 3.0);
  const std::vector<double> with_inf{2.0, std::numeric_limits<double>::infinity(), 4.0};
  const MaceResult m = mace(with_inf);
  CHECK(m.value == 3.0);
  CHECK(m.infinite_count == 1);
  CHECK_THROWS_AS(mace(std::vector<double>{}), InvalidArgument);

  Matrix3 h = Matrix3::Identity();
  h(2, 0) = 1.0 / 128;  // sends x = -128 to infinity
  CHECK(std::isinf(alignment_error(Homography(h), Homography(), template_corners(256, 256))));
}

TEST_CASE("discrepancy is the unit-square corner error") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 20; ++i) {
    const Homography p = random_homography(rng);
    const Homography t = random_homography(rng);
    const Matrix3 s = Eigen::Vector3d(200, 100, 1).asDiagonal();
    const Matrix3 si = s.inverse();
    const double want = oracle::corner_error(si * p.matrix() * s, si * t.matrix() * s, corner_list(1, 1));
    CHECK(discrepancy_score(p, t, 200, 100) == doctest::Approx(want).epsilon(1e-12));
  }
  AlgebraCoeffs shift;
  shift[kB1] = 20;
  CHECK(discrepancy_score(compose_homography(shift), Homography(), 200, 100) == doctest::Approx(0.1));
}

TEST_CASE("threshold curves match a hand-rolled oracle") {
  const std::vector<double> errors{0.5, 1.0, 1.5, 2.0, 3.0, 7.5, 10.0, 12.0, 40.0, 99.0};
  const std::vector<double> grid{1, 2, 5, 10, 50, 100};
  // Fractions strictly below each threshold, counted by hand.
  const std::vector<double> want{0.1, 0.3, 0.5, 0.6, 0.9, 1.0};
  const Curve c = threshold_curve(errors, grid);
  CHECK(c.fractions == want);
  CHECK(c.average == doctest::Approx((0.1 + 0.3 + 0.5 + 0.6 + 0.9 + 1.0) / 6));

  const std::vector<double> two{1.0, 3.0};
  const std::vector<double> one{2.0};
  CHECK(threshold_curve(two, one).fractions[0] == 0.5);
  CHECK_THROWS_AS(threshold_curve(two, std::vector<double>{}), InvalidArgument);
}

TEST_CASE("perfect predictions give full precision and success") {
  const std::vector<double> zeros(10, 0.0);
  const PrecisionSuccess ps =
      precision_and_success(zeros, zeros, default_precision_grid(), default_success_grid());
  CHECK(ps.precision.average == 1.0);
  CHECK(ps.success.average == 1.0);
  CHECK(default_precision_grid().size() == 100);
  CHECK(default_precision_grid().front() == 1.0);
  CHECK(default_success_grid().back() == 1.0);
}

TEST_CASE("curves are monotone and bounded") {
  std::mt19937_64 rng(4);
  std::vector<double> errors;
  for (int i = 0; i < 57; ++i) errors.push_back(uniform(rng, 0, 150));
  const Curve c = threshold_curve(errors, default_precision_grid());
  for (std::size_t i = 0; i < c.fractions.size(); ++i) {
    CHECK(c.fractions[i] >= 0.0);
    CHECK(c.fractions[i] <= 1.0);
    if (i) CHECK(c.fractions[i] >= c.fractions[i - 1]);
  }
}
