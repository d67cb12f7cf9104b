#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <thread>

#include "kgs/field.hpp"
#include "kgs/symbols.hpp"
#include "test_util.hpp"

using namespace kgs;
using Catch::Matchers::WithinAbs;

TEST_CASE("grid validation and wavenumbers") {
  REQUIRE_THROWS_AS(Grid(1, 2), Error);
  REQUIRE_THROWS_AS(Grid(1, 7), Error);
  REQUIRE_THROWS_AS(Grid(4, 8), Error);
  Grid g(1, 8);
  auto f = g.frequencies();
  REQUIRE(f.size() == 8);
  CHECK(std::count(f.begin(), f.end(), 0) == 1);
  CHECK(*std::min_element(f.begin(), f.end()) == -4);
  CHECK(*std::max_element(f.begin(), f.end()) == 3);
  CHECK(g.wavenumber(3) == Catch::Approx(3.0));
  Grid h(1, 8, 4.0 * std::numbers::pi);
  CHECK(h.wavenumber(3) == Catch::Approx(1.5));
  Grid g2(2, 8);
  CHECK(g2.size() == 64);
  CHECK(g2.index_of(g2.mode(37)) == 37);
  CHECK(g2.mode(g2.negated(g2.index_of({1, -2, 0})))[0] == -1);
}

TEST_CASE("single modes map to plane waves") {
  auto g = Grid::create(1, 8);
  auto s = to_physical(Field::constant(g, 1.0));
  for (auto x : s) CHECK(std::abs(x - Complex(1.0)) < 1e-15);
  auto w = to_physical(Field::mode(g, {1, 0, 0}));
  auto xs = g->points();
  for (std::size_t j = 0; j < xs.size(); ++j) CHECK(std::abs(w[j] - std::polar(1.0, xs[j])) < 1e-14);
}

TEST_CASE("from_physical of constants and cosines") {
  auto g = Grid::create(1, 16);
  std::vector<Complex> ones(16, 1.0), cosx(16);
  auto xs = g->points();
  for (int j = 0; j < 16; ++j) cosx[j] = std::cos(xs[j]);
  Field a = from_physical(g, ones);
  CHECK(std::abs(a.coeff({0, 0, 0}) - 1.0) < 1e-13);
  Field b = from_physical(g, cosx);
  CHECK(std::abs(b.coeff({1, 0, 0}) - 0.5) < 1e-13);
  CHECK(std::abs(b.coeff({-1, 0, 0}) - 0.5) < 1e-13);
  CHECK(std::abs(b.coeff({2, 0, 0})) < 1e-13);
  std::vector<Complex> wrong(15);
  CHECK_THROWS_AS(from_physical(g, wrong), Error);
}

TEST_CASE("transform roundtrip") {
  for (int dim : {1, 2}) {
    auto g = Grid::create(dim, 32);
    Field f = test::random_field(g, 7 + dim);
    Field back = from_physical(g, to_physical(f));
    CHECK(test::rel_diff(back, f) < 1e-13);
  }
}

TEST_CASE("apply_symbol") {
  auto g = Grid::create(1, 16);
  Field f = test::random_field(g, 3);
  CHECK(test::rel_diff(apply_symbol(identity_symbol(g), f), f) == 0.0);
  Field m3 = Field::mode(g, {3, 0, 0}, Complex(0.5, 2.0));
  Field l = apply_symbol(build_base(BaseKind::Laplacian, g, CParam(1.0)), m3);
  CHECK(std::abs(l.coeff({3, 0, 0}) + 9.0 * Complex(0.5, 2.0)) < 1e-14);
  auto other = Grid::create(1, 32);
  CHECK_THROWS_AS(apply_symbol(identity_symbol(other), f), GridMismatch);
}

TEST_CASE("modulus-one symbols are isometries") {
  auto g = Grid::create(1, 64);
  Field f = test::smooth_field(g, 5, false, 2.0);
  const double tau = 0.37;
  for (double c : {1.0, 100.0, 1e4}) {
    Symbol cn = build_base(BaseKind::CNabla, g, CParam(c));
    Symbol e = lift([tau](Complex x) { return std::exp(Complex(0.0, tau) * x); }, cn);
    Symbol d = lift([tau](Complex x) { return std::exp(Complex(0.0, tau) * x); },
                    build_base(BaseKind::Laplacian, g, CParam(c)));
    for (double r : {0.0, 1.0, 3.5}) {
      CHECK(std::abs(sobolev_norm(apply_symbol(e, f), r) / sobolev_norm(f, r) - 1.0) < 1e-12);
      CHECK(std::abs(sobolev_norm(apply_symbol(d, f), r) / sobolev_norm(f, r) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("pointwise products") {
  auto g = Grid::create(1, 32);
  Field f = test::random_field(g, 11);
  CHECK(test::rel_diff(pointwise_product(f, Field::constant(g, 1.0)), f) < 1e-13);
  Field p = pointwise_product(Field::mode(g, {1, 0, 0}), Field::mode(g, {2, 0, 0}));
  CHECK(std::abs(p.coeff({3, 0, 0}) - 1.0) < 1e-14);
  Field h = test::random_field(g, 12);
  const Complex alpha(0.3, -1.7);
  CHECK(test::rel_diff(pointwise_product(alpha * f, h), alpha * pointwise_product(f, h)) < 1e-12);

  // 2/3 rule: e^{10ix} * e^{2ix} lands on mode 12 > 32/3 and is removed
  Field q = pointwise_product(Field::mode(g, {10, 0, 0}), Field::mode(g, {2, 0, 0}), {true});
  CHECK(sobolev_norm(q, 0.0) < 1e-15);
  Field kept = pointwise_product(Field::mode(g, {4, 0, 0}), Field::mode(g, {2, 0, 0}), {true});
  CHECK(std::abs(kept.coeff({6, 0, 0}) - 1.0) < 1e-14);
}

TEST_CASE("conjugation") {
  auto g = Grid::create(1, 16);
  Field real = test::smooth_field(g, 4, true);
  CHECK(test::rel_diff(conj_field(real), real) < 1e-15);
  Field f = Field::mode(g, {1, 0, 0}, Complex(0.0, 1.0));
  Field cf = conj_field(f);
  CHECK(std::abs(cf.coeff({-1, 0, 0}) - Complex(0.0, -1.0)) < 1e-15);
  Field r = test::random_field(g, 9);
  CHECK(test::rel_diff(conj_field(conj_field(r)), r) == 0.0);
}

TEST_CASE("conjugate symmetry is preserved") {
  auto g = Grid::create(1, 32);
  Field a = test::smooth_field(g, 1, true), b = test::smooth_field(g, 2, true);
  CHECK(is_conjugate_symmetric(a));
  CHECK(is_conjugate_symmetric(apply_symbol(build_base(BaseKind::InvCNabla, g, CParam(3.0)), a)));
  CHECK(is_conjugate_symmetric(pointwise_product(a, b)));
}

TEST_CASE("Sobolev norms") {
  auto g = Grid::create(1, 16);
  CHECK(sobolev_norm(Field::constant(g, 1.0), 3.0) == Catch::Approx(1.0));
  CHECK_THAT(sobolev_norm(Field::mode(g, {1, 0, 0}), 1.0), WithinAbs(1.4142135624, 1e-10));
  CHECK_THROWS_AS(SobolevIndex(-0.5), Error);
}

TEST_CASE("bilinear estimate with a fitted constant") {
  auto g = Grid::create(1, 64);
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 40; ++s) {
    Field f = test::smooth_field(g, 100 + s, false, 1.0 + 0.1 * (s % 5));
    Field h = test::smooth_field(g, 200 + s, false, 1.0 + 0.1 * (s % 3));
    worst = std::max(worst, sobolev_norm(pointwise_product(f, h), 1.0) / (sobolev_norm(f, 1.0) * sobolev_norm(h, 1.0)));
  }
  // H^1 is an algebra in one dimension: C = sqrt(2) * sum (1+k^2)^{-1}/(2pi) is far below 3.
  CHECK(worst < 3.0);
}

namespace {

// -2 grad v . grad w, computed from derivative fields.
Field minus_two_grad_dot(const Field& v, const Field& w) {
  const Grid& g = v.grid();
  Field acc(v.grid_ptr());
  for (int d = 0; d < g.dim(); ++d) {
    std::vector<Complex> dv(v.size()), dw(w.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double k = g.wavenumber(g.mode(i)[d]);
      dv[i] = Complex(0.0, k) * v[i];
      dw[i] = Complex(0.0, k) * w[i];
    }
    acc = acc + pointwise_product(Field(v.grid_ptr(), dv), Field(w.grid_ptr(), dw));
  }
  return Complex(-2.0) * acc;
}

}  // namespace

TEST_CASE("commutator identity") {
  for (int dim : {1, 2}) {
    auto g = Grid::create(dim, dim == 1 ? 128 : 32);
    Field v = test::smooth_field(g, 21, false, 6.0 + dim), w = test::smooth_field(g, 22, false, 6.0 + dim);
    // band-limit so that products are exact on the grid
    std::vector<Complex> vb(v.size()), wb(w.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto m = g->mode(i);
      const bool low = std::abs(m[0]) < g->n() / 4 && std::abs(m[1]) < g->n() / 4;
      vb[i] = low ? v[i] : 0.0;
      wb[i] = low ? w[i] : 0.0;
    }
    Field vl(g, vb), wl(g, wb);
    Field lhs = commutator_quad(vl, wl);
    CHECK(test::rel_diff(lhs, minus_two_grad_dot(vl, wl)) < 1e-10);
  }
  auto g = Grid::create(1, 32);
  CHECK(sobolev_norm(commutator_quad(Field::constant(g, 2.0), test::smooth_field(g, 5)), 0.0) < 1e-13);
  Field e1 = Field::mode(g, {1, 0, 0});
  Field q = commutator_quad(e1, e1);
  CHECK(std::abs(q.coeff({2, 0, 0}) - 2.0) < 1e-13);
}

TEST_CASE("commutator bound constant does not grow with n") {
  // the same functions at every resolution: draw on the finest grid, truncate
  auto fine = Grid::create(1, 512);
  auto restrict_to = [&](const GridPtr& g, const Field& f) {
    std::vector<Complex> c(g->size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      const auto m = g->mode(i);
      if (std::abs(m[0]) < g->n() / 2) c[i] = f.coeff(m);
    }
    return Field(g, c);
  };
  std::vector<double> k1;
  for (int n : {64, 128, 256, 512}) {
    auto g = Grid::create(1, n);
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 10; ++s) {
      Field v = restrict_to(g, test::smooth_field(fine, 300 + s, false, 3.0));
      Field w = restrict_to(g, test::smooth_field(fine, 400 + s, false, 3.0));
      worst = std::max(worst, sobolev_norm(commutator_quad(v, w), 1.0) / (sobolev_norm(v, 2.0) * sobolev_norm(w, 2.0)));
    }
    k1.push_back(worst);
  }
  INFO("K1 at n = 64..512: " << k1[0] << " " << k1[1] << " " << k1[2] << " " << k1[3]);
  CHECK(k1.back() <= 1.05 * k1.front());
}

TEST_CASE("concurrent transforms agree") {
  auto g = Grid::create(1, 256);
  Field f = test::random_field(g, 77);
  const auto expected = to_physical(f);
  std::vector<std::thread> pool;
  std::vector<int> ok(4, 0);
  for (int t = 0; t < 4; ++t) {
    pool.emplace_back([&, t] {
      bool good = true;
      for (int i = 0; i < 50; ++i) {
        auto s = to_physical(f);
        for (std::size_t j = 0; j < s.size(); ++j) good = good && s[j] == expected[j];
      }
      ok[t] = good;
    });
  }
  for (auto& th : pool) th.join();
  for (int v : ok) CHECK(v == 1);
}
