#include <doctest.h>

#include <fstream>
#include <json.hpp>

#include "oracles.hpp"
#include "rmlab/lcd.hpp"
#include "rmlab/random_stream.hpp"
#include "rmlab/realify.hpp"

using namespace rmlab;

namespace {

ComplexVector random_unit(Eigen::Index n, RandomStream& s) {
  ComplexVector v(n);
  for (auto& z : v) z = {s.gaussian(), s.gaussian()};
  return v / v.norm();
}

void check_witness(const ComplexVector& v, const LcdParams& params, const LcdResult& r) {
  REQUIRE(r.finite());
  REQUIRE(r.witness_theta);
  const Feasibility f = lcd_feasibility(v, *r.witness_theta, params);
  CHECK(f.feasible);
  CHECK(r.witness_theta->norm() == doctest::Approx(r.value).epsilon(1e-12));
  CHECK(r.certified_lower <= r.value);
  CHECK(r.value - r.certified_lower <= r.certified_resolution + 1e-12);
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((LcdParams{1.0, 0.0}.validate()), DomainError);
  CHECK_THROWS_AS((LcdParams{1.0, 1.0}.validate()), DomainError);
  CHECK_THROWS_AS((LcdParams{0.0, 0.1}.validate()), DomainError);
  CHECK_NOTHROW((LcdParams{0.5, 0.5}.validate()));
  CHECK_THROWS_AS(complex_lcd(ComplexVector::Constant(2, 1.0), LcdParams{}, 10.0, 0.01), DomainError);
  CHECK_THROWS_AS(complex_lcd(ComplexVector::Unit(2, 0), LcdParams{}, 0.0, 0.01), DomainError);
  CHECK_THROWS_AS(real_lcd(RealVector::Unit(2, 0), LcdParams{}, -1.0, 0.01), DomainError);
}

TEST_CASE("feasibility predicate") {
  const ComplexVector e1 = ComplexVector::Unit(3, 0);
  const LcdParams params{1.0, 0.1};
  const Feasibility zero = lcd_feasibility(e1, Point2::Zero(), params);
  CHECK_FALSE(zero.feasible);
  CHECK(zero.residual == 0.0);
  const Feasibility one = lcd_feasibility(e1, Point2(1.0, 0.0), LcdParams{1e-6, 1e-6});
  CHECK(one.feasible);
  CHECK(one.residual == 0.0);
  CHECK(one.nearest_p(0) == 1);
  CHECK(one.nearest_p(3) == 0);
}

TEST_CASE("feasibility residual is invariant under the quarter turn") {
  RandomStream s(41);
  const LcdParams params{2.0, 0.3};
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexVector v = random_unit(5, s);
    const Point2 theta(4.0 * s.gaussian(), 4.0 * s.gaussian());
    const Feasibility f = lcd_feasibility(v, theta, params);
    const auto [turned, p] = symmetry_swap(theta, f.nearest_p);
    const Feasibility g = lcd_feasibility(v, turned, params);
    CHECK(std::abs(f.residual - g.residual) <= 1e-12);
    CHECK(f.feasible == g.feasible);
    CHECK(g.nearest_p == p);
  }
}

TEST_CASE("real lcd examples") {
  RealVector v34(2);
  v34 << 0.6, 0.8;
  const LcdResult a = real_lcd(v34, LcdParams{4.0, 0.05}, 6.0, 1e-4);
  CHECK(a.finite());
  CHECK(std::abs(a.value - 5.0 / 1.05) <= 1e-4);
  const auto grid = oracle::grid_real_lcd(v34, 4.0, 0.05, 6.0, 1e-5);
  REQUIRE(grid);
  CHECK(std::abs(*grid - a.value) <= 1e-4);

  const LcdResult b = real_lcd(RealVector::Unit(3, 0), LcdParams{2.0, 0.1}, 10.0, 1e-4);
  CHECK(std::abs(b.value - 1.0 / 1.1) <= 1e-4);

  const RealVector flat9 = RealVector::Constant(9, 1.0 / 3.0);
  const LcdResult c = real_lcd(flat9, LcdParams{100.0, 0.1}, 10.0, 1e-4);
  CHECK(std::abs(c.value - 3.0 / 1.1) <= 1e-4);

  const LcdResult capped = real_lcd(flat9, LcdParams{100.0, 0.1}, 2.0, 1e-4);
  CHECK_FALSE(capped.finite());
  CHECK(capped.value == 2.0);
}

TEST_CASE("complex lcd of e1 and a rotated scalar") {
  const LcdParams params{1.0, 0.1};
  for (Eigen::Index n : {1, 2, 5}) {
    const ComplexVector e1 = ComplexVector::Unit(n, 0);
    const LcdResult r = complex_lcd(e1, params, 10.0, 1e-3);
    check_witness(e1, params, r);
    CHECK(std::abs(r.value - 1.0 / 1.1) <= 1e-3);
  }
  ComplexVector rot(1);
  rot << Complex(1.0, 1.0) / std::sqrt(2.0);
  const LcdResult r = complex_lcd(rot, params, 10.0, 1e-3);
  check_witness(rot, params, r);
  CHECK(std::abs(r.value - 1.0 / 1.1) <= 1e-3);
}

TEST_CASE("complex lcd respects the search cap") {
  ComplexVector flat = ComplexVector::Constant(16, Complex(1.0, 0.0) / 4.0);
  const LcdResult r = complex_lcd(flat, LcdParams{1.0, 0.1}, 2.0, 1e-3);
  CHECK_FALSE(r.finite());
  CHECK(r.value == 2.0);
  CHECK(r.lower_bound() == 2.0);
}

TEST_CASE("complex lcd agrees with the dense grid oracle within one cell") {
  RandomStream s(42);
  const LcdParams params{1.0, 0.1};
  const double h = 0.01;
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = 1 + trial % 8;
    const ComplexVector v = random_unit(n, s);
    const LcdResult r = complex_lcd(v, params, 40.0, h / 4.0);
    check_witness(v, params, r);
    const auto grid = oracle::grid_lcd(v, params.alpha, params.gamma, r.value + 3.0 * h, h);
    REQUIRE(grid);
    CHECK(r.certified_lower <= *grid + 1e-12);
    CHECK(*grid - r.value <= std::sqrt(2.0) * h);
  }
}

TEST_CASE("lcd is invariant under a global phase") {
  RandomStream s(43);
  const LcdParams params{1.0, 0.1};
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexVector v = random_unit(4, s);
    const LcdResult a = complex_lcd(v, params, 40.0, 1e-3);
    const LcdResult b = complex_lcd(Complex(0.0, 1.0) * v, params, 40.0, 1e-3);
    CHECK(std::abs(a.value - b.value) <= 2e-3);
  }
}

TEST_CASE("unit vectors never have lcd below 1 / (2 ||v||_inf)") {
  RandomStream s(44);
  const LcdParams params{1.0, 0.5};
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexVector v = random_unit(1 + trial % 10, s);
    const LcdResult r = complex_lcd(v, params, 40.0, 1e-3);
    CHECK(r.lower_bound() >= 0.5 / v.cwiseAbs().maxCoeff() - 1e-12);
  }
}

TEST_CASE("derived constants: k threshold and invariants") {
  CHECK(derive_lcd_constants(SpreadParams{1.0, 0.1, 2.0}).k == 3);
  const SpreadParams defaults = SpreadParams::defaults_for(DecompParams{});
  const LcdConstants c = derive_lcd_constants(defaults);
  CHECK(c.satisfies_invariants(defaults));
  CHECK(1.0 / (c.k * c.k) < defaults.nu1 / 4.0);
  CHECK(1.0 / ((c.k - 1.0) * (c.k - 1.0)) >= defaults.nu1 / 4.0);
  const double a = defaults.nu2 * std::sqrt(defaults.nu1) / (2.0 * std::sqrt(2.0));
  CHECK(std::sqrt(1.0 - c.c_prime * c.c_prime) * a - c.c_prime * c.k > 0.0);
  CHECK(c.gamma < std::min(c.c_prime * a, std::sqrt(1.0 - c.c_prime * c.c_prime) * a - c.c_prime * c.k));
  CHECK((defaults.nu3 + c.k + std::sqrt(2.0) * c.gamma / std::sqrt(defaults.nu1)) * c.lambda < 1.0);

  // Independent maximization of the objective on a fine grid.
  double best = -1.0;
  for (int i = 1; i < 1'000'000; ++i) {
    const double cp = i * 1e-6;
    best = std::max(best, std::min(cp * a, std::sqrt(1.0 - cp * cp) * a - cp * c.k));
  }
  CHECK(c.gamma == doctest::Approx(0.99 * best).epsilon(1e-6));

  std::ifstream in(std::string(RMLAB_GOLDEN_DIR) + "/lcd_constants.json");
  REQUIRE(in);
  const auto golden = nlohmann::json::parse(in);
  CHECK(c.k == golden["k"].get<int>());
  CHECK(c.c_prime == doctest::Approx(golden["c_prime"].get<double>()).epsilon(1e-9));
  CHECK(c.gamma == doctest::Approx(golden["gamma"].get<double>()).epsilon(1e-9));
  CHECK(c.lambda == doctest::Approx(golden["lambda"].get<double>()).epsilon(1e-9));
}

TEST_CASE("invalid spread parameters are rejected") {
  CHECK_THROWS_AS(derive_lcd_constants(SpreadParams{0.1, 2.0, 1.0}), DomainError);
  CHECK_THROWS_AS(derive_lcd_constants(SpreadParams{0.0, 0.1, 1.0}), DomainError);
  // Tiny nu1 forces a large k but a small positive c' still exists.
  const LcdConstants tiny = derive_lcd_constants(SpreadParams{1e-6, 0.1, 2.0});
  CHECK(tiny.k == 2001);
  CHECK(tiny.satisfies_invariants(SpreadParams{1e-6, 0.1, 2.0}));
}
