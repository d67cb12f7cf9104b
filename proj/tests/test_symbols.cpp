#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "kgs/initial_data.hpp"
#include "kgs/symbols.hpp"

using namespace kgs;

namespace {

struct ScalarCase {
  double x;
  double re;
  double im;
};

// 50-digit evaluations of (e^{ix} - 1)/(ix) and (e^{ix} - phi1(ix))/(ix), taken at
// the double nearest to each decimal x (this matters at x = 123456.789).
const ScalarCase kPhi1[] = {
    {0.001, 0.99999983333334166667, 0.00049999995833333473263},
    {0.0099, 0.9999836650800494807, 0.0049499595710070821268},
    {0.01, 0.99998333341666646825, 0.0049999583334722220783},
    {0.0101, 0.99998299842005012355, 0.0050499570709376398204},
    {0.5, 0.95885107720840600055, 0.24483487621925456777},
    {1, 0.84147098480789650665, 0.4596976941318602826},
    {2, 0.4546487134128408477, 0.7080734182735711935},
    {10, -0.05440211108893698134, 0.18390715290764524523},
    {1000, 0.00082687954053200256026, 0.00043762092370929700892},
    {123456.789, -8.0891791405916485522e-6, 7.6814525548797367818e-6},
    {1e8, 9.3163902710972600803e-9, 1.3633850893556905539e-8},
    {-0.00999, 0.99998336673300030244, -0.0049949584583465708935},
    {-7.5, 0.12506666356996518106, -0.08711529095532989187},
};

const ScalarCase kPsi2[] = {
    {0.001, 0.49999987500000694444, 0.00033333330000000119742},
    {0.0099, 0.4999877488167078928, 0.0032999676568132131668},
    {0.01, 0.49998750006944427083, 0.003333300000119047468},
    {0.0101, 0.49998724882226398307, 0.0033666323234251198754},
    {0.5, 0.46918132476989686501, 0.16253703063606656886},
    {1, 0.38177329067603622405, 0.30116867893975678925},
    {2, 0.10061200427605525095, 0.43539777497999161735},
    {10, -0.072792826379701505863, 0.078466941798751547092},
    {1000, 0.00082644191960829326325, -0.00056155219675017098852},
    {123456.789, -8.0892413603579092779e-6, -4.1861304118189865207e-7},
    {1e8, 9.3163901347587511447e-9, 3.6338509867208082497e-9},
    {-0.00999, 0.49998752505666691048, -0.0033299667666851535565},
    {-7.5, 0.11345129144258786214, 0.029542487235341417322},
};

double rel(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }

}  // namespace

TEST_CASE("phi1 against extended-precision values") {
  CHECK(phi1(0.0) == Complex(1.0));
  CHECK(rel(phi1(Complex(0.0, std::numbers::pi)), Complex(0.0, 2.0 / std::numbers::pi)) < 1e-13);
  for (const auto& c : kPhi1) {
    INFO("x = " << c.x);
    CHECK(rel(phi1(Complex(0.0, c.x)), Complex(c.re, c.im)) < 1e-13);
  }
  // off the imaginary axis
  CHECK(rel(phi1(Complex(-0.003, 0.004)), Complex(0.99849883820394199816, 0.0019960018361290075988)) < 1e-13);
  CHECK(rel(phi1(Complex(0.2, -1.3)), Complex(0.80653478284891057723, -0.64198703806392035921)) < 1e-13);
  CHECK(rel(phi1(Complex(-5, 40)), Complex(0.0032143324836311786637, 0.024710553272323246065)) < 1e-13);
}

TEST_CASE("psi2 against extended-precision values") {
  CHECK(psi2(0.0) == Complex(0.5));
  for (const auto& c : kPsi2) {
    INFO("x = " << c.x);
    CHECK(rel(psi2(Complex(0.0, c.x)), Complex(c.re, c.im)) < 1e-12);
  }
  CHECK(rel(psi2(Complex(-0.003, 0.004)), Complex(0.49899912889634056196, 0.0013303348023296255974)) < 1e-12);
  CHECK(rel(psi2(Complex(0.2, -1.3)), Complex(0.34648269842528133884, -0.42239039649790861271)) < 1e-12);
  CHECK(rel(psi2(Complex(-5, 40)), Complex(-0.00046096011235329761283, 0.00025032315891208506659)) < 1e-12);
  CHECK(std::abs(std::abs(psi2(Complex(0.0, 2.0))) - 0.447) < 1e-3);
}

TEST_CASE("series and direct branches meet continuously") {
  for (double x : {0.5 * kSeriesThreshold, 0.999 * kSeriesThreshold, kSeriesThreshold, 1.001 * kSeriesThreshold}) {
    const Complex a = phi1(Complex(0.0, x)), b = phi1(Complex(0.0, x * (1 + 1e-9)));
    CHECK(std::abs(a - b) < 1e-9 * x);
    const Complex p = psi2(Complex(0.0, x)), q = psi2(Complex(0.0, x * (1 + 1e-9)));
    CHECK(std::abs(p - q) < 1e-9 * x);
  }
}

TEST_CASE("sampled bounds on the imaginary axis") {
  SplitMix64 rng(2024);
  bool phi_ok = true, psi_ok = true;
  for (int i = 0; i < 200000; ++i) {
    const double x = 1e8 * rng.uniform_pm1() * std::pow(10.0, -8.0 * (0.5 + 0.5 * rng.uniform_pm1()));
    phi_ok = phi_ok && std::abs(phi1(Complex(0.0, x))) <= 1.0 + 1e-15;
    psi_ok = psi_ok && std::abs(psi2(Complex(0.0, x))) <= 1.0;
  }
  CHECK(phi_ok);
  CHECK(psi_ok);
  bool ac2 = true, ac3 = true;
  for (double c : {10.0, 100.0, 1000.0}) {
    for (int i = 0; i < 2000; ++i) {
      const double tau = 0.5 * (1.0 + rng.uniform_pm1());
      if (tau == 0.0) continue;
      const double c2 = c * c;
      ac2 = ac2 && tau * std::abs(phi1(Complex(0.0, tau * c2))) <= 2.0 / c2 * (1 + 1e-14);
      ac2 = ac2 && tau * std::abs(phi1(Complex(0.0, -tau * c2))) <= 2.0 / c2 * (1 + 1e-14);
      ac3 = ac3 && tau * std::abs(psi2(Complex(0.0, tau * c2))) <= 2.0 / c2;
    }
  }
  CHECK(ac2);
  CHECK(ac3);
}

TEST_CASE("base symbols") {
  auto g = Grid::create(1, 64);
  CHECK(build_base(BaseKind::CNabla, g, CParam(1.0))[0] == Complex(1.0));
  CHECK(build_base(BaseKind::InvCNabla, g, CParam(1.0))[0] == Complex(1.0));
  CHECK_THROWS_AS(CParam(0.0), Error);
  CHECK_THROWS_AS(CParam(-1.0), Error);
  for (double c : {0.1, 1.0, 37.0, 1e4}) {
    Symbol inv = build_base(BaseKind::InvCNabla, g, CParam(c));
    for (auto v : inv.values()) CHECK(v.real() <= 1.0);
    for (auto kind : {BaseKind::Laplacian, BaseKind::CNabla, BaseKind::InvCNabla, BaseKind::Residual}) {
      Symbol s = build_base(kind, g, CParam(c));
      for (std::size_t i = 0; i < g->size(); ++i) {
        CHECK(s[i].imag() == 0.0);
        CHECK(s[i] == s[g->negated(i)]);
      }
    }
  }
}

TEST_CASE("residual symbol against extended precision") {
  struct Case {
    double c, k, want;
  };
  const Case cases[] = {
      {10, 1, -0.0012437887910972978074},   {10, 2, -0.019609728144303399436},
      {10, 7, -2.434443842662970481},       {10, 128, -7008.0996923436773317},
      {10000, 1, -1.2499999937500000391e-9}, {10000, 2, -1.999999960000001e-8},
      {10000, 7, -3.0012492646939751875e-6}, {10000, 128, -0.33551683502373258875},
      {1, 2, -0.76393202250021030359},      {100, 7, -0.029939193792973463675},
  };
  for (const auto& c : cases) {
    INFO("c = " << c.c << ", k = " << c.k);
    CHECK(std::abs(residual_value(c.k * c.k, c.c) - c.want) <= 1e-10 * std::abs(c.want));
  }
  CHECK(residual_value(0.0, 10.0) == 0.0);
  // the naive form has no correct digits at c = 1e4, k = 1
  const double c = 1e4;
  const double naive = c * std::sqrt(c * c + 1.0) - c * c - 0.5;
  CHECK(std::abs(naive - (-1.2499999937500000391e-9)) > 1e-10);
}

TEST_CASE("residual asymptotic bound") {
  auto g = Grid::create(1, 256);
  for (double c : {1.0, 10.0, 1e4}) {
    Symbol r = build_base(BaseKind::Residual, g, CParam(c));
    auto k2 = g->k_squared();
    for (std::size_t i = 0; i < g->size(); ++i) CHECK(std::abs(r[i].real()) <= k2[i] * k2[i] / (8 * c * c) * (1 + 1e-14));
  }
}

TEST_CASE("lift and symbol arithmetic") {
  auto g = Grid::create(1, 16);
  const double tau = 0.5;
  Symbol e = lift([tau](Complex x) { return std::exp(Complex(0.0, tau) * x); }, build_base(BaseKind::CNabla, g, CParam(2.0)));
  CHECK(std::abs(e[0] - std::exp(Complex(0.0, 2.0))) < 1e-15);
  const double c = 3.0;
  Symbol arg = Complex(0.0, tau) * (build_base(BaseKind::Laplacian, g, CParam(c)) - Complex(c * c));
  Symbol p = lift([](Complex x) { return phi1(x); }, arg);
  CHECK(std::abs(p[0] - phi1(Complex(0.0, -tau * c * c))) < 1e-15);
  Symbol one = lift([](Complex) { return Complex(1.0); }, arg);
  for (auto v : one.values()) CHECK(v == Complex(1.0));
  // cancellation-free c<nabla>_c - c^2 matches the direct difference at small c
  Symbol direct = build_base(BaseKind::CNabla, g, CParam(c)) - Complex(c * c);
  Symbol stable = cnabla_minus_c2(g, CParam(c));
  for (std::size_t i = 0; i < g->size(); ++i) CHECK(std::abs(direct[i] - stable[i]) < 1e-12);
}

TEST_CASE("modulated phi1 stays close to its k = 0 value") {
  // |s phi1(i s sigma) - s phi1(i s c^2)| <= s^2 (k^2/2 + k^4/(8c^2)),  sigma = c sqrt(c^2+k^2) + k^2/2
  auto g = Grid::create(1, 128);
  auto k2 = g->k_squared();
  bool ok = true;
  for (double c : {1.0, 10.0, 1e3, 1e4}) {
    const double c2 = c * c;
    for (double s : {1e-3, 0.01, 0.1, 0.5, 1.0}) {
      for (std::size_t i = 0; i < g->size(); ++i) {
        const double q = k2[i];
        const double sigma = c2 + q + residual_value(q, c);
        const double lhs = s * std::abs(phi1(Complex(0.0, s * sigma)) - phi1(Complex(0.0, s * c2)));
        ok = ok && lhs <= s * s * (q / 2 + q * q / (8 * c2)) + 1e-15;
      }
    }
  }
  CHECK(ok);
}
