#include "erlanga/fluid.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

using namespace erlanga;

namespace {

const ErlangAParams fig_a{10.0, 1.0, 0.5, 30};
const ErlangAParams fig_e{40.0, 1.0, 0.5, 30};
const ErlangAParams fig_g{40.0, 1.0, 2.0, 30};

}  // namespace

TEST_CASE("fluid right-hand side")
{
  CHECK(fluid_ode_rhs(fig_a, 10.0) == 0.0);
  CHECK(fluid_ode_rhs(fig_a, 50.0) == doctest::Approx(-30.0));
  CHECK(fluid_ode_rhs(fig_g, 35.0) == doctest::Approx(0.0));

  // finite difference of the closed form at t = 0
  const double h = 1e-6;
  const double fd = (fluid_queue(fig_a, 50.0, h) - fluid_queue(fig_a, 50.0, 0.0)) / h;
  CHECK(fd == doctest::Approx(-30.0).epsilon(1e-5));
  CHECK_THROWS_AS(fluid_ode_rhs(fig_a, -1.0), std::invalid_argument);
}

TEST_CASE("crossing times")
{
  const auto down = crossing_time(fig_a, 50.0);
  CHECK(down.kind == CrossingKind::down_through_c);
  CHECK(down.t_star == doctest::Approx(2.0 * std::log(1.5)).epsilon(1e-14));
  CHECK(std::abs(down.t_star - 0.8109302162163288) < 1e-12);

  const auto up = crossing_time(fig_e, 10.0);
  CHECK(up.kind == CrossingKind::up_through_c);
  CHECK(std::abs(up.t_star - std::log(3.0)) < 1e-12);

  CHECK(crossing_time(fig_a, 10.0).kind == CrossingKind::none);
  CHECK(crossing_time(fig_e, 50.0).kind == CrossingKind::none);
  CHECK(std::isinf(crossing_time(fig_a, 10.0).t_star));

  // root-finding oracle: bisection on the brute-force integrator
  auto root = [](const ErlangAParams& p, double q0) {
    double lo = 0.0;
    double hi = 5.0;
    const bool falling = q0 > p.c();
    for (int i = 0; i < 40; ++i) {
      const double mid = 0.5 * (lo + hi);
      const double q = oracle::integrate_brute(p, q0, 0.0, mid, 1e-4).q;
      ((q > p.c()) == falling ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  CHECK(down.t_star == doctest::Approx(root(fig_a, 50.0)).epsilon(1e-8));
  CHECK(up.t_star == doctest::Approx(root(fig_e, 10.0)).epsilon(1e-8));
}

TEST_CASE("fluid closed form examples")
{
  // -10 + 60 e^{-1/4}
  CHECK(std::abs(fluid_queue(fig_a, 50.0, 0.5) - 36.72804698428429) < 1e-10);
  CHECK(std::abs(fluid_queue(fig_a, 50.0, 0.5) - oracle::integrate_brute(fig_a, 50.0, 0.0, 0.5).q) < 1e-8);
  CHECK(std::abs(fluid_queue(fig_g, 50.0, 20.0) - 35.0) < 1e-8);
  CHECK(std::abs(fluid_queue(fig_e, 10.0, std::log(3.0)) - 30.0) < 1e-9);
  for (double t : {0.0, 0.3, 2.0, 7.5}) {
    CHECK(fluid_queue(fig_a, 10.0, t) == 10.0);
    CHECK(fluid_queue(fig_g, 35.0, t) == doctest::Approx(35.0).epsilon(1e-14));
  }
}

TEST_CASE("fluid steady state")
{
  CHECK(fluid_steady_state(fig_a) == 10.0);
  CHECK(fluid_steady_state(fig_e) == doctest::Approx(50.0));
  CHECK(fluid_steady_state(fig_g) == doctest::Approx(35.0));
  CHECK(fluid_steady_state({10.0, 1.0, 2.0, 30}) == 10.0);
  // boundary: both branches give c
  const ErlangAParams edge{30.0, 1.0, 0.7, 30};
  CHECK(fluid_steady_state(edge) == 30.0);
  CHECK(overloaded_fixed_point(edge) == doctest::Approx(30.0));
  CHECK(std::abs(fluid_queue(fig_e, 10.0, 200.0) - 50.0) < 1e-9);
}

TEST_CASE("numeric integration matches on the examples")
{
  const TimeGrid grid = TimeGrid::uniform(3.0, 0.5);
  const auto curve = fluid_queue_numeric(fig_a, 50.0, grid);
  CHECK(std::abs(curve.values[1] - 36.72804698428429) < 1e-6);
  const auto flat = fluid_queue_numeric(fig_g, 35.0, grid);
  CHECK((flat.values.array() - 35.0).abs().maxCoeff() < 1e-9);

  const TimeGrid at_cross(Eigen::Vector2d(0.0, std::log(3.0)));
  CHECK(std::abs(fluid_queue_numeric(fig_e, 10.0, at_cross).values[1] - 30.0) < 1e-6);
}

TEST_CASE("randomized sweep: closed form, continuity, betweenness, semigroup")
{
  for (const auto& s : oracle::random_sweep(200, 11)) {
    const auto& p = s.params;
    CAPTURE(describe(p));
    CAPTURE(s.q0);
    const double horizon = 5.0 / std::min(p.mu, p.theta);
    const TimeGrid grid = TimeGrid::uniform(horizon, horizon / 99.0);
    REQUIRE(grid.size() == 100);

    const Eigen::VectorXd closed = fluid_queue(p, s.q0, grid);
    const Eigen::VectorXd numeric = fluid_queue_numeric(p, s.q0, grid).values;
    CHECK((closed - numeric).cwiseAbs().maxCoeff() <= 1e-6);

    const double q_inf = fluid_steady_state(p);
    const double lo = std::min(s.q0, q_inf) - 1e-9;
    const double hi = std::max(s.q0, q_inf) + 1e-9;
    CHECK(closed.minCoeff() >= lo);
    CHECK(closed.maxCoeff() <= hi);
    CHECK(closed.minCoeff() >= 0.0);

    const auto cross = crossing_time(p, s.q0);
    if (cross.kind != CrossingKind::none) {
      CHECK(cross.t_star > 0.0);
      CHECK(std::abs(fluid_queue(p, s.q0, cross.t_star) - p.c()) <= 1e-9);
    }

    for (double a : {0.1, 0.7, 2.3}) {
      const double sa = a / p.mu;
      const double tb = 1.3 / p.theta;
      const double chained = fluid_queue(p, fluid_queue(p, s.q0, sa), tb);
      CHECK(std::abs(chained - fluid_queue(p, s.q0, sa + tb)) <= 1e-9);
    }
  }
}

TEST_CASE("invalid input")
{
  CHECK_THROWS_AS(fluid_queue(fig_a, -1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(fluid_queue(fig_a, 1.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(fluid_queue({10.0, 1.0, 0.0, 30}, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(fluid_queue({10.0, 1.0, 1.0, 0}, 1.0, 1.0), std::invalid_argument);
}
