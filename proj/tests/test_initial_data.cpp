#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>

#include "kgs/initial_data.hpp"
#include "test_util.hpp"

using namespace kgs;

TEST_CASE("splitmix64 reference sequence") {
  // first outputs for seed 0 from the published reference implementation
  SplitMix64 g(0);
  CHECK(g.next() == 0xe220a8397b1dcdafULL);
  CHECK(g.next() == 0x6e789e6aa1b965f4ULL);
  CHECK(g.next() == 0x06c45d188009454fULL);
  SplitMix64 h(7);
  for (int i = 0; i < 1000; ++i) {
    const double x = h.uniform_pm1();
    REQUIRE(x >= -1.0);
    REQUIRE(x < 1.0);
  }
  CHECK(derive_seed(42, 1) != derive_seed(42, 2));
  CHECK(derive_seed(42, 1) == derive_seed(42, 1));
}

TEST_CASE("random_sobolev is deterministic and normalized") {
  auto g = Grid::create(1, 128);
  for (bool real : {false, true}) {
    const RegularitySpec spec{3.0, 99, real};
    const Field a = random_sobolev(g, spec);
    const Field b = random_sobolev(g, spec);
    for (std::size_t i = 0; i < g->size(); ++i) REQUIRE(a[i] == b[i]);
    CHECK(std::abs(sobolev_norm(a, 3.0) - 1.0) < 1e-12);
    if (real) CHECK(is_conjugate_symmetric(a, 1e-15));
  }
  const Field c = random_sobolev(g, {3.0, 100, false});
  CHECK(sobolev_norm(c - random_sobolev(g, {3.0, 99, false}), 0.0) > 1e-3);

  auto g2 = Grid::create(2, 16);
  const Field d = random_sobolev(g2, {2.0, 5, true});
  CHECK(std::abs(sobolev_norm(d, 2.0) - 1.0) < 1e-12);
  CHECK(is_conjugate_symmetric(d, 1e-15));
}

TEST_CASE("random_sobolev spectral decay") {
  auto g = Grid::create(1, 256);
  for (double theta : {2.0, 4.0}) {
    const Field f = random_sobolev(g, {theta, 11, false});
    auto k2 = g->k_squared();
    std::vector<double> x, y;
    for (std::size_t i = 0; i < g->size(); ++i) {
      if (k2[i] == 0.0) continue;
      x.push_back(std::log(1.0 + k2[i]));
      y.push_back(std::log(std::abs(f[i])));
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
    mx /= x.size();
    my /= x.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) sxy += (x[i] - mx) * (y[i] - my), sxx += (x[i] - mx) * (x[i] - mx);
    INFO("theta = " << theta);
    CHECK(std::abs(sxy / sxx + (theta + 0.51) / 2.0) < 0.1);
  }
}

TEST_CASE("twist examples") {
  auto g = Grid::create(1, 32);
  const Field z0 = test::smooth_field(g, 3, true);
  const Field zero(g);
  CHECK(sobolev_norm(twist(z0, zero, CParam(5.0)) - z0, 0.0) == 0.0);

  // z0 = 0, zt0 = cos x at c = 1 gives -(i/sqrt 2) cos x
  const Field cosx = 0.5 * (Field::mode(g, {1, 0, 0}) + Field::mode(g, {-1, 0, 0}));
  const Field u = twist(zero, cosx, CParam(1.0));
  CHECK(std::abs(u.coeff({1, 0, 0}) - Complex(0.0, -0.5 / std::sqrt(2.0))) < 1e-15);
  CHECK(std::abs(u.coeff({-1, 0, 0}) - Complex(0.0, -0.5 / std::sqrt(2.0))) < 1e-15);
  CHECK(sobolev_norm(u, 0.0) == Catch::Approx(std::sqrt(2.0) * 0.5 / std::sqrt(2.0)).epsilon(1e-14));

  const Field zt0 = test::smooth_field(g, 4, true, 5.0);
  for (double c : {1.0, 10.0, 1e4}) CHECK(sobolev_norm(untwist(twist(z0, zt0, CParam(c))) - z0, 0.0) < 1e-15);

  CHECK_THROWS_AS(twist(test::smooth_field(g, 1, false), zero, CParam(1.0)), Error);
  CHECK_THROWS_AS(twist(z0, test::smooth_field(g, 1, false), CParam(1.0)), Error);
  CHECK_THROWS_AS(twist(z0, Field(Grid::create(1, 64)), CParam(1.0)), GridMismatch);
}

TEST_CASE("untwist") {
  auto g = Grid::create(1, 32);
  const Field r = test::smooth_field(g, 8, true);
  CHECK(sobolev_norm(untwist(r) - r, 0.0) < 1e-16);
  CHECK(sobolev_norm(untwist(Complex(0.0, 1.0) * r), 0.0) < 1e-16);
  CHECK(is_conjugate_symmetric(untwist(test::random_field(g, 3)), 1e-15));
}

TEST_CASE("make_state") {
  auto g = Grid::create(1, 64);
  const KgsState a = make_state(g, CParam(10.0), 6.0, 4.0, 42);
  const KgsState b = make_state(g, CParam(10.0), 6.0, 4.0, 42);
  for (std::size_t i = 0; i < g->size(); ++i) {
    REQUIRE(a.u[i] == b.u[i]);
    REQUIRE(a.psi[i] == b.psi[i]);
  }
  CHECK(std::abs(sobolev_norm(a.psi, 6.0) - 1.0) < 1e-12);
  CHECK_FALSE(is_conjugate_symmetric(a.u, 1e-6));
  CHECK(is_conjugate_symmetric(untwist(a.u), 1e-15));
  CHECK(std::abs(sobolev_norm(untwist(a.u), 4.0) - 1.0) < 1e-12);
  CHECK_THROWS_AS(KgsState(a.u, Field(Grid::create(1, 32))), GridMismatch);
}

TEST_CASE("state dump roundtrip") {
  for (int dim : {1, 2}) {
    auto g = Grid::create(dim, dim == 1 ? 32 : 8, 3.0);
    const KgsState s = make_state(g, CParam(2.0), 3.0, 3.0, 17);
    const KgsState t = state_from_json(state_to_json(s));
    CHECK(t.grid().same_as(s.grid()));
    for (std::size_t i = 0; i < g->size(); ++i) {
      REQUIRE(t.u[i] == s.u[i]);
      REQUIRE(t.psi[i] == s.psi[i]);
    }
  }
  auto g = Grid::create(1, 16);
  const KgsState s = make_state(g, CParam(1.0), 2.0, 2.0, 1);
  const auto dir = std::filesystem::temp_directory_path() / "kgs_state_test";
  std::filesystem::create_directories(dir);
  save_state(s, dir / "s.json");
  const KgsState r = load_state(dir / "s.json");
  CHECK(sobolev_norm(r.psi - s.psi, 0.0) == 0.0);
  std::filesystem::remove_all(dir);

  CHECK_THROWS_AS(state_from_json("{}"), Error);
  CHECK_THROWS_AS(state_from_json("not json"), Error);
  CHECK_THROWS_AS(state_from_json(R"({"format":"kgs-state","version":2})"), Error);
  CHECK_THROWS_AS(load_state("/nonexistent/kgs.json"), Error);
}
