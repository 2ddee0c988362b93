#include <doctest.h>

#include <cmath>

#include "racmod/approximation.hpp"
#include "racmod/error.hpp"
#include "racmod/report.hpp"
#include "racmod/serialize.hpp"

using namespace racmod;

namespace {

const double kTauDodec = std::log(4.0 + std::sqrt(15.0));

}  // namespace

TEST_CASE("theorem 1 bounds") {
  const auto b = theorem1_bounds(2.0, kTauDodec, 3, 0.5);
  CHECK(std::abs(b.lower - 2.6719) < 1e-3);
  CHECK(b.upper == doctest::Approx(3.9768).epsilon(1e-4));
  CHECK(b.C == doctest::Approx(1 / std::log(2.0)));

  const auto b2 = theorem1_bounds(1.4, kTauDodec, 2, 0.5);
  CHECK(b2.lower == 1.4);
  CHECK(b2.upper == doctest::Approx(kTauDodec / std::log(2.0)));

  // The lower bound grows like Q2 log(q-1) / tau2.
  const auto big = theorem1_bounds(2.0, kTauDodec, 1'000'000, 0.5);
  CHECK(big.lower / (2.0 * std::log(999'999.0) / kTauDodec) == doctest::Approx(1.0).epsilon(0.2));

  CHECK_THROWS_AS(theorem1_bounds(0.5, kTauDodec, 3, 0.5), DomainError);
  CHECK_THROWS_AS(theorem1_bounds(2.0, 0.0, 3, 0.5), DomainError);
  CHECK_THROWS_AS(theorem1_bounds(2.0, kTauDodec, 1, 0.5), DomainError);
  CHECK_THROWS_AS(theorem1_bounds(2.0, kTauDodec, 3, 1.0), DomainError);
  CHECK_THROWS_AS(theorem1_bounds(2.0, kTauDodec, 3, 0.0), DomainError);
}

TEST_CASE("pentagon report at q = 2") {
  ReportOptions opts;
  opts.q = 2;
  opts.q2 = 1.0;
  const auto r = full_report(graphs::cycle(5), opts);
  CHECK(r.failures.empty());
  REQUIRE(r.lower_bound);
  CHECK(*r.lower_bound == 1.0);
  REQUIRE(r.upper_bound);
  REQUIRE(r.q_est_2);
  CHECK(r.q_est_2->estimate >= *r.lower_bound - 0.2);
  CHECK(r.q_est_2->estimate <= *r.upper_bound);
  CHECK_FALSE(r.s0);
  CHECK_FALSE(r.pressure);
}

TEST_CASE("pentagon report at q = 3") {
  ReportOptions opts;
  const auto r = full_report(graphs::cycle(5), opts);
  CHECK(r.failures.empty());
  CHECK(r.q2_source == "estimated");
  REQUIRE(r.decay);
  CHECK(r.decay->lambda < 1.0);
  REQUIRE(r.weights_p);
  CHECK(*r.weights_p > r.q_est_2->estimate);
  REQUIRE(r.convexity);
  CHECK(r.convexity->violations == 0);
  REQUIRE(r.pressure_at_zero);
  CHECK(*r.pressure_at_zero >= r.q_est_2->estimate - r.pressure->p_step);
  REQUIRE(r.pressure_at_s0);
  CHECK(std::abs(*r.pressure_at_s0) <= r.pressure->p_step);
  REQUIRE(r.consistent);
  CHECK(*r.consistent);
  CHECK(*r.lower_bound <= *r.upper_bound);
  CHECK(r.q_est_q->estimate >= *r.lower_bound - 0.2);
  CHECK(r.q_est_q->estimate <= *r.upper_bound);
}

TEST_CASE("dodecahedron bounds survive a failing modulus stage") {
  ReportOptions opts;
  opts.q2 = 2.0;
  opts.keep_going = true;
  opts.sweep.tile_cap = 100;
  const auto r = full_report(graphs::dodecahedron(), opts);
  REQUIRE_FALSE(r.failures.empty());
  CHECK(r.failures.front().stage == "modulus");
  CHECK(r.failures.front().kind == "resource");
  CHECK(r.tau2 == doctest::Approx(kTauDodec).epsilon(1e-12));
  REQUIRE(r.s0);
  CHECK(*r.s0 == doctest::Approx(-2.9769).epsilon(1e-4));
  REQUIRE(r.lower_bound);
  CHECK(std::abs(*r.lower_bound - 2.6719) < 1e-3);
  CHECK_FALSE(r.upper_bound);

  opts.keep_going = false;
  CHECK_THROWS_AS(full_report(graphs::dodecahedron(), opts), ResourceError);
}

TEST_CASE("square is refused with its witness") {
  try {
    full_report(graphs::cycle(4), ReportOptions{});
    FAIL("expected an assumption failure");
  } catch (const AssumptionError& e) {
    CHECK(std::string(e.what()).find("induced square") != std::string::npos);
  }
}

TEST_CASE("report JSON is deterministic and every section has params") {
  ReportOptions opts;
  opts.k_max = 6;
  const auto a = report_json(full_report(graphs::cycle(5), opts)).dump(2);
  const auto b = report_json(full_report(graphs::cycle(5), opts)).dump(2);
  CHECK(a == b);
  const auto j = Json::parse(a);
  for (const char* section : {"graph", "growth", "modulus", "decay", "pressure", "bounds"}) {
    REQUIRE(j.contains(section));
    CHECK(j[section].contains("params"));
  }
}

TEST_CASE("approximation JSON round trip") {
  const auto a = build_approximation(GroupSpec(graphs::cycle(5), 2), 4, 2);
  const auto j = approximation_json(a);
  const auto b = approximation_from_json(Json::parse(j.dump()));
  CHECK(b.tile_count() == a.tile_count());
  CHECK(b.incidence() == a.incidence());
  auto tampered = j;
  tampered["incidence"].erase(tampered["incidence"].begin());
  CHECK_THROWS_AS(approximation_from_json(tampered), ValidationError);
}

TEST_CASE("weights JSON round trip") {
  const auto ws = geometric_weights(1.1, 2.0, 0.4, 2, 6);
  const auto back = weights_from_json(Json::parse(weights_json(ws).dump()));
  REQUIRE(back.scales.size() == ws.scales.size());
  for (std::size_t i = 0; i < ws.scales.size(); ++i) {
    CHECK(back.scales[i].scale == ws.scales[i].scale);
    CHECK(back.scales[i].values == ws.scales[i].values);
    CHECK(back.scales[i].multiplicity == ws.scales[i].multiplicity);
  }
}

TEST_CASE("weights exponent selection") {
  const auto sweep = modulus_sweep(graphs::cycle(5), 3, 7, parse_grid("1.0:3.0:0.5"));
  const double p = select_weights_exponent(sweep, 1.0);
  CHECK(p > 1.0);
  const double lambda = fit_decay(weights_from_sweep(sweep, p)).lambda;
  for (double other : {1.5, 2.0, 2.5, 3.0}) {
    try {
      CHECK(lambda <= fit_decay(weights_from_sweep(sweep, other)).lambda);
    } catch (const DomainError&) {
    }
  }
  CHECK_THROWS_AS(select_weights_exponent(sweep, 3.0), DomainError);
}
