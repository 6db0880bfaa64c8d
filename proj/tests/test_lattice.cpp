#include "doctest.h"
#include "helical/lattice.hpp"
#include "support.hpp"

using namespace helical;
using helical::testing::kPi;

TEST_CASE("grid node count and index sets") {
  SUBCASE("eps = 1/4") {
    Grid g(0.25);
    CHECK(g.n() == 4);
    CHECK(g.count_nn_hor() == 8);  // i in {0,1}, j in {0..3}
    CHECK(g.count_n_hor() == 12);
  }
  SUBCASE("eps just below 1/2 still admits node 2") {
    // 2*(1/2 - 1e-9) < 1, so nodes {0, 1, 2} lie in [0,1)
    Grid g(0.5 - 1e-9);
    CHECK(g.n() == 3);
    CHECK(g.count_nn_hor() == 3);
  }
  SUBCASE("eps = 1/5") {
    Grid g(0.2);
    CHECK(g.n() == 5);
    CHECK(g.count_nn_hor() == 15);
  }
  SUBCASE("all node coordinates lie in [0,1)") {
    for (double eps : {0.3, 0.11, 1.0 / 64.0, 0.49}) {
      Grid g(eps);
      CHECK(g.n() * eps >= 1.0 - 1e-15);
      CHECK((g.n() - 1) * eps < 1.0);
    }
  }
  CHECK_THROWS_AS(Grid(0.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid(0.5), std::invalid_argument);
  CHECK_THROWS_AS(Grid(-0.1), std::invalid_argument);
}

TEST_CASE("model params") {
  ModelParams p(0.3, 0.12);
  CHECK(p.gamma() == doctest::Approx(std::sqrt(0.3 / 0.12)));
  CHECK(p.theta_opt_hor() == doctest::Approx(std::acos(0.7)));
  CHECK(p.theta_opt_ver() == doctest::Approx(std::acos(0.88)));
  CHECK(p.theta_opt_hor() > 0.0);
  CHECK(p.theta_opt_hor() < 0.5 * kPi);
  CHECK_THROWS_AS(ModelParams(0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams(0.5, 1.0), std::invalid_argument);
}

TEST_CASE("rotate") {
  const Vec2 a = rotate(Vec2{0.0, 1.0}, 0.0);
  CHECK(a.x == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(a.y == doctest::Approx(1.0).epsilon(1e-15));
  const Vec2 b = rotate(Vec2{0.0, 1.0}, 0.5 * kPi);
  CHECK(b.x == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(b.y) < 1e-12);
  const Vec2 c = rotate(Vec2{1.0, 0.0}, kPi);
  CHECK(c.x == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(c.y) < 1e-12);
  CHECK(norm(b) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("angles from spins") {
  Grid g(0.125);
  SUBCASE("constant field gives zero angles") {
    SpinField u(g);
    AngularField th = angles_from_spins(u);
    for (double v : th.hor) CHECK(v == 0.0);
    for (double v : th.ver) CHECK(v == 0.0);
  }
  SUBCASE("uniform helix angle recovered") {
    const double theta = 0.7;
    SpinField u(g);
    for (int j = 0; j < g.n(); ++j) {
      for (int i = 0; i < g.n(); ++i) u.at(i, j) = rotate(Vec2{0.0, 1.0}, (i + j) * theta);
    }
    AngularField th = angles_from_spins(u);
    for (int j = 0; j < g.n(); ++j) {
      for (int i = 0; i + 1 < g.n(); ++i) {
        CHECK(th.hor_at(i, j) == doctest::Approx(theta).epsilon(1e-12));
      }
    }
    for (int j = 0; j + 1 < g.n(); ++j) {
      for (int i = 0; i < g.n(); ++i) {
        CHECK(th.ver_at(i, j) == doctest::Approx(theta).epsilon(1e-12));
      }
    }
  }
  SUBCASE("antipodal neighbors map to -pi (sign(0) = -1)") {
    SpinField u(g);
    u.at(1, 0) = Vec2{0.0, -1.0};
    AngularField th = angles_from_spins(u);
    CHECK(th.hor_at(0, 0) == doctest::Approx(-kPi));
    CHECK(th.hor_at(1, 0) == doctest::Approx(-kPi));
  }
  SUBCASE("angles always lie in [-pi, pi)") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      SpinField u = helical::testing::random_spins(g, rng);
      AngularField th = angles_from_spins(u);
      for (double v : th.hor) {
        CHECK(v >= -kPi);
        CHECK(v < kPi);
      }
      for (double v : th.ver) {
        CHECK(v >= -kPi);
        CHECK(v < kPi);
      }
    }
  }
}

TEST_CASE("spins from angles") {
  Grid g(1.0 / 16.0);
  SUBCASE("zero angles reproduce the seed everywhere") {
    AngularField th(g);
    SpinField u = spins_from_angles(th, Vec2{0.0, 1.0});
    for (const Vec2& s : u.spins) {
      CHECK(s.x == doctest::Approx(0.0).epsilon(1e-15));
      CHECK(s.y == doctest::Approx(1.0).epsilon(1e-15));
    }
  }
  SUBCASE("constant optimal angles give the helix") {
    ModelParams p = ModelParams::isotropic(0.3);
    const double t = p.theta_opt_hor();
    AngularField th(g);
    for (int j = 0; j < g.n(); ++j) {
      for (int i = 0; i + 1 < g.n(); ++i) th.hor_at(i, j) = t;
    }
    for (int j = 0; j + 1 < g.n(); ++j) {
      for (int i = 0; i < g.n(); ++i) th.ver_at(i, j) = t;
    }
    SpinField u = spins_from_angles(th, Vec2{0.0, 1.0});
    for (int j = 0; j < g.n(); ++j) {
      for (int i = 0; i < g.n(); ++i) {
        const Vec2 want = rotate(Vec2{0.0, 1.0}, (i + j) * t);
        CHECK(u.at(i, j).x == doctest::Approx(want.x).epsilon(1e-10));
        CHECK(u.at(i, j).y == doctest::Approx(want.y).epsilon(1e-10));
      }
    }
  }
  SUBCASE("round trip through a random curl-free field") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
      AngularField th = helical::testing::random_curlfree_angles(g, rng);
      SpinField u = spins_from_angles(th, Vec2{0.0, 1.0});
      AngularField back = angles_from_spins(u);
      for (std::size_t k = 0; k < th.hor.size(); ++k) {
        CHECK(std::abs(back.hor[k] - th.hor[k]) < 1e-9);
        CHECK(std::abs(back.ver[k] - th.ver[k]) < 1e-9);
      }
    }
  }
  SUBCASE("spin-to-angle-to-spin round trip") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
      SpinField u = helical::testing::random_spins(g, rng);
      SpinField back = spins_from_angles(angles_from_spins(u), u.at(0, 0));
      for (std::size_t k = 0; k < u.spins.size(); ++k) {
        CHECK(std::abs(back.spins[k].x - u.spins[k].x) < 1e-9);
        CHECK(std::abs(back.spins[k].y - u.spins[k].y) < 1e-9);
      }
    }
  }
  SUBCASE("curl violations are reported with the plaquette") {
    AngularField th(g);
    th.hor_at(1, 1) = 1.0;  // lone bond angle breaks the plaquette sums around it
    CHECK_THROWS_AS(spins_from_angles(th, Vec2{0.0, 1.0}), CurlViolation);
    try {
      spins_from_angles(th, Vec2{0.0, 1.0});
    } catch (const CurlViolation& cv) {
      CHECK(cv.i == 1);
      CHECK(cv.j == 0);
    }
  }
}

TEST_CASE("chirality from angles") {
  Grid g(0.125);
  ModelParams p(0.3, 0.2);
  SUBCASE("optimal angles map to +-1 exactly") {
    AngularField th(g);
    for (int j = 0; j < g.n(); ++j) {
      for (int i = 0; i + 1 < g.n(); ++i) th.hor_at(i, j) = -p.theta_opt_hor();
    }
    for (int j = 0; j + 1 < g.n(); ++j) {
      for (int i = 0; i < g.n(); ++i) th.ver_at(i, j) = p.theta_opt_ver();
    }
    ChiralityField c = chirality_from_angles(th, p);
    for (int j = 0; j < g.n(); ++j) {
      for (int i = 0; i + 1 < g.n(); ++i) CHECK(c.w_at(i, j) == doctest::Approx(-1.0).epsilon(1e-12));
    }
    for (int j = 0; j + 1 < g.n(); ++j) {
      for (int i = 0; i < g.n(); ++i) CHECK(c.z_at(i, j) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("zero angles map to (0,0)") {
    AngularField th(g);
    ChiralityField c = chirality_from_angles(th, p);
    for (double v : c.w) CHECK(v == 0.0);
    for (double v : c.z) CHECK(v == 0.0);
  }
  SUBCASE("bounds |w| <= sqrt(2/delta)") {
    std::mt19937_64 rng(3);
    SpinField u = helical::testing::random_spins(g, rng);
    ChiralityField c = chirality_from_angles(angles_from_spins(u), p);
    for (double v : c.w) CHECK(std::abs(v) <= std::sqrt(2.0 / p.delta_hor()) + 1e-12);
    for (double v : c.z) CHECK(std::abs(v) <= std::sqrt(2.0 / p.delta_ver()) + 1e-12);
  }
  SUBCASE("scaled map multiplies w by gamma") {
    std::mt19937_64 rng(5);
    SpinField u = helical::testing::random_spins(g, rng);
    ChiralityField c = chirality_from_angles(angles_from_spins(u), p);
    ChiralityField t = scaled_chirality(c, p);
    for (std::size_t k = 0; k < c.w.size(); ++k) {
      CHECK(t.w[k] == doctest::Approx(p.gamma() * c.w[k]));
      CHECK(t.z[k] == c.z[k]);
    }
  }
}
