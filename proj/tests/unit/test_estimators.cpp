#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "circkde/estimators.hpp"
#include "circkde/simlab.hpp"
#include "oracles.hpp"

using namespace circkde;

namespace {

AngleSample random_sample(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::vector<double> raw(n);
  for (double& x : raw) {
    x = angle(gen);
  }
  return AngleSample::from_radians(raw);
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

EvalGrid single_point(double theta) { return EvalGrid({Angle(theta)}); }

}  // namespace

TEST_CASE("kernel_estimate examples") {
  const AngleSample origin = AngleSample::from_radians(std::vector<double>{0.0});
  const auto at_zero = kernel_estimate(origin, KernelSpec::wrapped_cauchy(0.5), single_point(0.0));
  CHECK(at_zero.values()[0] == doctest::Approx(oracle::wc_fourier(0.0, 0.5)).epsilon(1e-14));

  const AngleSample any = random_sample(17, 1);
  const EvalGrid grid = EvalGrid::uniform(32);
  for (const KernelSpec& flat : {KernelSpec::wrapped_cauchy(0.0), KernelSpec::von_mises(0.0)}) {
    const auto est = kernel_estimate(any, flat, grid);
    for (double v : est.values()) {
      CHECK(v == doctest::Approx(1.0 / kTwoPi).epsilon(1e-15));
    }
  }

  const AngleSample pair = AngleSample::from_radians(std::vector<double>{-kPi / 2, kPi / 2});
  const auto mid = kernel_estimate(pair, KernelSpec::wrapped_cauchy(0.5), single_point(0.0));
  const double expected = 0.5 * (oracle::wc_fourier(kPi / 2, 0.5) + oracle::wc_fourier(-kPi / 2, 0.5));
  CHECK(mid.values()[0] == doctest::Approx(expected).epsilon(1e-14));
  CHECK(mid.values()[0] == doctest::Approx(0.75 / 1.25 / kTwoPi).epsilon(1e-14));
  CHECK(mid.meta().estimator == "wc");
  CHECK(mid.meta().sample_size == 2);
}

TEST_CASE("wc_estimate examples and range") {
  const AngleSample origin = AngleSample::from_radians(std::vector<double>{0.0});
  CHECK(wc_estimate(origin, 0.5, single_point(0.0)).values()[0] ==
        doctest::Approx(3.0 / kTwoPi).epsilon(1e-14));
  CHECK(wc_estimate(origin, 0.5, single_point(-kPi)).values()[0] ==
        doctest::Approx(oracle::wc_fourier(kPi, 0.5)).epsilon(1e-14));
  CHECK(wc_estimate(origin, 0.5, single_point(-kPi)).values()[0] ==
        doctest::Approx(1.0 / (6.0 * kPi)).epsilon(1e-14));
  const auto flat = wc_estimate(random_sample(5, 2), 0.0, EvalGrid::uniform(16));
  for (double v : flat.values()) {
    CHECK(v == doctest::Approx(1.0 / kTwoPi));
  }
  CHECK_THROWS_AS(wc_estimate(origin, 1.0 - 1e-9, EvalGrid::uniform(4)), DomainError);
  CHECK_THROWS_AS(wc_estimate(origin, -0.2, EvalGrid::uniform(4)), DomainError);
}

TEST_CASE("caratheodory_estimate examples") {
  const AngleSample origin = AngleSample::from_radians(std::vector<double>{0.0});
  const auto centre = caratheodory_estimate(origin, DiskPoint(0.0, Angle(1.0)));
  CHECK(centre.value.real() == doctest::Approx(1.0));
  CHECK(centre.value.imag() == doctest::Approx(0.0));
  CHECK(centre.density_part == doctest::Approx(1.0 / kTwoPi));

  const auto axis = caratheodory_estimate(origin, DiskPoint(0.5, Angle(0.0)));
  CHECK(axis.value.real() == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(axis.density_part == doctest::Approx(3.0 / kTwoPi).epsilon(1e-15));

  // Hand-evaluated terms: (1 + 0.5)/(1 - 0.5) = 3 and (-1 + 0.5)/(-1 - 0.5) = 1/3.
  const AngleSample pair = AngleSample::from_radians(std::vector<double>{0.0, kPi});
  const auto two = caratheodory_estimate(pair, DiskPoint(0.5, Angle(0.0)));
  CHECK(two.value.real() == doctest::Approx(5.0 / 3.0).epsilon(1e-14));
  CHECK(two.value.imag() == doctest::Approx(0.0));
  CHECK(two.density_part == doctest::Approx(5.0 / (3.0 * kTwoPi)).epsilon(1e-14));
  CHECK(two.density_part == two.value.real() / kTwoPi);

  CHECK_THROWS_AS(caratheodory_estimate(origin, DiskPoint(1.0 - 1e-9, Angle(0.0))), DomainError);
}

TEST_CASE("opuc_density_estimate examples") {
  const AngleSample origin = AngleSample::from_radians(std::vector<double>{0.0});
  const auto flat = opuc_density_estimate(origin, 0.0, EvalGrid::uniform(8));
  for (double v : flat.values()) {
    CHECK(v == doctest::Approx(1.0 / kTwoPi).epsilon(1e-15));
  }
  CHECK(opuc_density_estimate(origin, 0.5, single_point(0.0)).values()[0] ==
        doctest::Approx(3.0 / kTwoPi).epsilon(1e-14));

  const AngleSample sample = random_sample(50, 3);
  const EvalGrid grid = EvalGrid::uniform(512);
  CHECK(max_abs_diff(opuc_density_estimate(sample, 0.9, grid).values(),
                     wc_estimate(sample, 0.9, grid).values()) < 1e-10);
  CHECK_THROWS_AS(opuc_density_estimate(origin, 1.0, grid), DomainError);
}

TEST_CASE("equivalence of kernel and Caratheodory estimates") {
  const EvalGrid grid = EvalGrid::uniform(512);
  std::uint64_t seed = 100;
  for (std::size_t n : {1u, 2u, 10u, 100u, 1000u}) {
    const AngleSample sample = random_sample(n, ++seed);
    for (double r : {0.0, 0.5, 0.9, 0.99, 1.0 - 1e-6, kMaxRadius}) {
      const auto kernel = wc_estimate(sample, r, grid);
      const auto disk = opuc_density_estimate(sample, r, grid);
      CHECK(max_abs_diff(kernel.values(), disk.values()) < 1e-10);
      for (std::size_t k = 0; k < grid.size(); ++k) {
        CHECK(kernel.values()[k] > 0.0);
        CHECK(disk.values()[k] > 0.0);
      }
    }
  }
}

TEST_CASE("equivalence survives samples sitting on grid points") {
  // Delta == 0 exactly is the hardest case for both paths.
  const EvalGrid grid = EvalGrid::uniform(64);
  const AngleSample on_grid = AngleSample::from_radians(std::vector<double>{grid[0].radians(), grid[10].radians()});
  for (double r : {0.9, 0.999, 1.0 - 1e-6}) {
    CHECK(max_abs_diff(wc_estimate(on_grid, r, grid).values(),
                       opuc_density_estimate(on_grid, r, grid).values()) < 1e-10);
  }
}

TEST_CASE("trig_moments examples") {
  const AngleSample origin = AngleSample::from_radians(std::vector<double>{0.0});
  const auto m = trig_moments(origin, 4);
  REQUIRE(m.n_star() == 4);
  for (std::size_t n = 1; n <= 4; ++n) {
    CHECK(m.c(n).real() == 1.0);
    CHECK(m.c(n).imag() == 0.0);
  }

  const AngleSample pair = AngleSample::from_radians(std::vector<double>{0.0, kPi});
  const auto p = trig_moments(pair, 2);
  CHECK(std::abs(p.c(1)) < 1e-15);
  CHECK(p.c(2).real() == doctest::Approx(1.0));
  CHECK(std::abs(p.c(2).imag()) < 1e-15);

  // Analytic wrapped Cauchy moment c_1 = rho.
  const AngleSample draws = sample_wrapped_cauchy(WrappedCauchyParams(Angle(0.0), 0.6), 10000, 4);
  const auto c1 = trig_moments(draws, 1).c(1);
  CHECK(std::abs(c1 - Complex(0.6, 0.0)) < 0.02);

  CHECK_THROWS_AS(trig_moments(origin, 0), DomainError);
}

TEST_CASE("trig moment bounds") {
  const AngleSample sample = random_sample(37, 5);
  for (const Complex& c : trig_moments(sample, 50).moments) {
    CHECK(std::abs(c) <= 1.0 + 1e-15);
  }
  // A uniform grid of N points has vanishing moments below N.
  const EvalGrid grid = EvalGrid::uniform(24);
  const AngleSample lattice(std::vector<Angle>(grid.points().begin(), grid.points().end()));
  const auto m = trig_moments(lattice, 23);
  for (const Complex& c : m.moments) {
    CHECK(std::abs(c) < 1e-12);
  }
}

TEST_CASE("series_estimate examples") {
  const AngleSample origin = AngleSample::from_radians(std::vector<double>{0.0});
  const auto flat = series_estimate(random_sample(9, 6), 0, EvalGrid::uniform(8));
  for (double v : flat.values()) {
    CHECK(v == doctest::Approx(1.0 / kTwoPi));
  }
  CHECK_FALSE(flat.meta().has_negative);

  const auto peak = series_estimate(origin, 1, single_point(0.0));
  CHECK(peak.values()[0] == doctest::Approx(3.0 / kTwoPi).epsilon(1e-15));

  const auto trough = series_estimate(origin, 1, single_point(-kPi));
  CHECK(trough.values()[0] == doctest::Approx(-1.0 / kTwoPi).epsilon(1e-15));
  CHECK(trough.meta().has_negative);
  CHECK(trough.meta().n_star == 1u);
}

TEST_CASE("series_estimate agrees with the direct double sum") {
  const EvalGrid grid = EvalGrid::uniform(128);
  for (std::uint64_t seed : {7u, 8u, 9u}) {
    const AngleSample sample = random_sample(25, seed);
    const std::vector<double> raw = sample.radians();
    for (std::size_t n_star : {1u, 3u, 12u, 40u}) {
      const auto est = series_estimate(sample, n_star, grid);
      for (std::size_t k = 0; k < grid.size(); ++k) {
        CHECK(std::abs(est.values()[k] - oracle::series_direct(raw, n_star, grid[k].radians())) < 1e-12);
      }
    }
  }
}

TEST_CASE("weighted_series_estimate examples") {
  const AngleSample origin = AngleSample::from_radians(std::vector<double>{0.0});
  const auto flat = weighted_series_estimate(random_sample(4, 10), 0.7, 0, EvalGrid::uniform(8));
  for (double v : flat.values()) {
    CHECK(v == doctest::Approx(1.0 / kTwoPi));
  }
  const double got = weighted_series_estimate(origin, 0.5, 30, single_point(0.0)).values()[0];
  CHECK(std::abs(got - 3.0 / kTwoPi) <= 2.0 * std::pow(0.5, 31) / (kTwoPi * 0.5));

  const AngleSample sample = random_sample(40, 11);
  const EvalGrid grid = EvalGrid::uniform(256);
  std::size_t n_star = 0;
  while (std::pow(0.9, n_star + 1) / 0.1 >= 1e-9) {
    ++n_star;
  }
  CHECK(max_abs_diff(weighted_series_estimate(sample, 0.9, n_star, grid).values(),
                     opuc_density_estimate(sample, 0.9, grid).values()) < 1e-8);
  CHECK_THROWS_AS(weighted_series_estimate(sample, 1.0, 3, grid), DomainError);
}

TEST_CASE("weighted series converges within the geometric tail bound") {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> radius(0.0, 0.95);
  std::uniform_int_distribution<int> terms(0, 60);
  const EvalGrid grid = EvalGrid::uniform(128);
  for (int i = 0; i < 30; ++i) {
    const AngleSample sample = random_sample(20, 1000 + i);
    const double r = radius(gen);
    const auto n_star = static_cast<std::size_t>(terms(gen));
    const double bound = std::pow(r, n_star + 1) / (kPi * (1.0 - r));
    CHECK(max_abs_diff(weighted_series_estimate(sample, r, n_star, grid).values(),
                       opuc_density_estimate(sample, r, grid).values()) <= bound + 1e-13);
  }
}

TEST_CASE("estimates are normalised") {
  const EvalGrid grid = EvalGrid::uniform(4096);
  const AngleSample sample = random_sample(60, 12);
  for (double rho : {0.0, 0.3, 0.8, 0.99}) {
    CHECK(std::abs(integrate(wc_estimate(sample, rho, grid)) - 1.0) < 1e-8);
  }
  for (double nu : {0.0, 3.0, 50.0}) {
    CHECK(std::abs(integrate(kernel_estimate(sample, KernelSpec::von_mises(nu), grid)) - 1.0) < 1e-8);
  }
  for (std::size_t n_star : {0u, 1u, 7u, 30u}) {
    CHECK(std::abs(integrate(series_estimate(sample, n_star, grid)) - 1.0) < 1e-8);
  }
  // Coarse grids stay inside the quadrature-error envelope for moderate rho.
  const EvalGrid coarse = EvalGrid::uniform(64);
  const double h = kTwoPi / 64.0;
  CHECK(std::abs(integrate(wc_estimate(sample, 0.5, coarse)) - 1.0) <= 10.0 * h * h);
}

TEST_CASE("estimates are linear in the empirical measure") {
  const EvalGrid grid = EvalGrid::uniform(200);
  const AngleSample a = random_sample(30, 13);
  const AngleSample b = random_sample(30, 14);
  std::vector<Angle> pooled(a.angles().begin(), a.angles().end());
  pooled.insert(pooled.end(), b.angles().begin(), b.angles().end());
  const AngleSample both(pooled);

  const auto check = [&](auto estimator) {
    const auto fa = estimator(a);
    const auto fb = estimator(b);
    const auto fab = estimator(both);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      CHECK(std::abs(fab.values()[k] - 0.5 * (fa.values()[k] + fb.values()[k])) < 1e-12);
    }
  };
  check([&](const AngleSample& s) { return wc_estimate(s, 0.7, grid); });
  check([&](const AngleSample& s) { return opuc_density_estimate(s, 0.7, grid); });
  check([&](const AngleSample& s) { return series_estimate(s, 9, grid); });
  check([&](const AngleSample& s) { return kernel_estimate(s, KernelSpec::von_mises(4.0), grid); });
}

TEST_CASE("estimates are rotation equivariant") {
  const std::size_t m = 240;
  const EvalGrid grid = EvalGrid::uniform(m);
  const AngleSample sample = random_sample(25, 15);
  for (std::size_t shift : {1u, 37u, 120u}) {
    const double alpha = kTwoPi * static_cast<double>(shift) / static_cast<double>(m);
    std::vector<double> moved = sample.radians();
    for (double& x : moved) {
      x += alpha;
    }
    const AngleSample rotated = AngleSample::from_radians(moved);
    const auto check = [&](auto estimator) {
      const auto base = estimator(sample);
      const auto turned = estimator(rotated);
      for (std::size_t k = 0; k < m; ++k) {
        // f_rotated(theta_k) == f(theta_k - alpha) == f(theta_{k - shift})
        const std::size_t src = (k + m - shift) % m;
        CHECK(std::abs(turned.values()[k] - base.values()[src]) < 1e-12);
      }
    };
    check([&](const AngleSample& s) { return wc_estimate(s, 0.6, grid); });
    check([&](const AngleSample& s) { return opuc_density_estimate(s, 0.6, grid); });
    check([&](const AngleSample& s) { return series_estimate(s, 5, grid); });
  }
}
