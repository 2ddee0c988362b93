#include <doctest.h>

#include <cmath>

#include "racmod/critical.hpp"
#include "racmod/error.hpp"
#include "racmod/pressure.hpp"

using namespace racmod;

namespace {

const double kTauDodec = std::log(4.0 + std::sqrt(15.0));

PressureEstimate synthetic(const std::vector<double>& s_values, const std::vector<double>& P) {
  PressureEstimate pe;
  pe.s_grid = s_values;
  pe.P_values = P;
  pe.bracketed.assign(P.size(), true);
  pe.s0 = s_values.front();
  pe.p_step = 0.05;
  return pe;
}

}  // namespace

TEST_CASE("decay fit") {
  WeightSequence ws;
  for (int k = 1; k <= 8; ++k) ws.scales.push_back({k, {3 * std::pow(0.4, k), 0.1 * std::pow(0.4, k)}});
  const auto f = fit_decay(ws);
  CHECK(f.K == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(f.lambda == doctest::Approx(0.4).epsilon(1e-12));

  WeightSequence flat;
  for (int k = 1; k <= 5; ++k) flat.scales.push_back({k, {1.0}});
  CHECK_THROWS_AS(fit_decay(flat), DomainError);
}

TEST_CASE("upper bound from decay") {
  CHECK(upper_bound_from_decay(kTauDodec, 3, 0.5) == doctest::Approx(3.9768).epsilon(1e-4));
  CHECK(upper_bound_from_decay(kTauDodec, 2, 0.3) == doctest::Approx(kTauDodec / std::log(1 / 0.3)));
  CHECK(upper_bound_from_decay(kTauDodec, 5, std::exp(-1.0)) ==
        doctest::Approx(kTauDodec + std::log(4.0)));
  CHECK_THROWS_AS(upper_bound_from_decay(kTauDodec, 3, 1.0), DomainError);
}

TEST_CASE("s0") {
  CHECK(s_zero(kTauDodec, 3) == doctest::Approx(-2.9769).epsilon(1e-4));
  CHECK(s_zero(std::log(2.0), 3) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(s_zero(kTauDodec, 2), DomainError);
}

TEST_CASE("geometric weights reproduce the closed-form pressure") {
  for (int q : {3, 4}) {
    for (double lambda : {0.3, 0.5}) {
      const double tau = kTauDodec;
      const double lq = std::log(q - 1.0);
      auto ws = geometric_weights(tau, 2.0, lambda, 2, 9);
      PressureOptions po;
      po.s_grid = parse_grid("-3:1:0.25");
      po.s_grid.front() = -tau / lq;
      po.p_grid = parse_grid("0:12:0.05");
      const auto pe = estimate_pressure(ws, q, po);
      CHECK(pe.s0 == doctest::Approx(-tau / lq).epsilon(1e-9));
      for (std::size_t i = 0; i < pe.s_grid.size(); ++i) {
        if (pe.s_grid[i] < pe.s0) continue;
        const double expected = (tau + pe.s_grid[i] * lq) / std::log(1 / lambda);
        CHECK(std::abs(pe.P_values[i] - expected) <= pe.p_step);
      }
      CHECK(std::abs(pe.P_values.front()) <= pe.p_step);
      CHECK(convexity_check(pe).violations == 0);
    }
  }
}

TEST_CASE("rescaled weights have the same pressure") {
  PressureOptions po;
  po.s_grid = parse_grid("-1:1:0.5");
  po.p_grid = parse_grid("0:8:0.05");
  const auto a = estimate_pressure(geometric_weights(1.2, 1.0, 0.4, 2, 9), 3, po);
  const auto b = estimate_pressure(geometric_weights(1.2, 7.0, 0.4, 2, 9), 3, po);
  for (std::size_t i = 0; i < a.P_values.size(); ++i)
    CHECK(a.P_values[i] == doctest::Approx(b.P_values[i]).epsilon(1e-9));
}

TEST_CASE("pressure argument checks") {
  const auto ws = geometric_weights(1.0, 1.0, 0.5, 1, 6);
  PressureOptions po;
  po.s_grid = {0.0};
  po.p_grid = parse_grid("0:3:0.1");
  CHECK_THROWS_AS(estimate_pressure(ws, 2, po), DomainError);
  po.p_grid = {1.0};
  CHECK_THROWS_AS(estimate_pressure(ws, 3, po), DomainError);
}

TEST_CASE("convexity check") {
  const std::vector<double> s{-2, -1.5, -1, -0.5, 0, 0.5, 1};
  std::vector<double> linear, kink, concave;
  for (double x : s) {
    linear.push_back(1 + 0.5 * x);
    kink.push_back(std::max(0.2 * x + 1, 1.5 * x + 1.5));
    concave.push_back(1 + 0.5 * x);
  }
  concave[3] += 0.5;  // bump in the middle
  CHECK(convexity_check(synthetic(s, linear)).violations == 0);
  CHECK(convexity_check(synthetic(s, kink)).violations == 0);
  const auto bad = convexity_check(synthetic(s, concave));
  CHECK(bad.violations > 0);
  CHECK(bad.worst_violation > 0);
  CHECK(convexity_check(synthetic(s, concave), 1.0).violations == 0);
}

TEST_CASE("convexity lower bound") {
  CHECK(convexity_lower_bound(2.0, -2.9769) == doctest::Approx(2.6719).epsilon(1e-4));
  CHECK(convexity_lower_bound(1.7, -1e12) == doctest::Approx(1.7));
  CHECK(convexity_lower_bound(1.0, -1.0) == 2.0);
  CHECK_THROWS_AS(convexity_lower_bound(1.0, 0.5), DomainError);
}
