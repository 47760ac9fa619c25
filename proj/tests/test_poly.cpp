#include <random>

#include "averma/poly.hpp"
#include "doctest.h"

using namespace averma;

namespace {

PolyS randomPoly(std::mt19937& rng, int rank, int maxDeg, int maxTerms) {
  std::uniform_int_distribution<int> deg(0, maxDeg), coef(-5, 5), nt(1, maxTerms);
  PolyS p;
  int terms = nt(rng);
  for (int t = 0; t < terms; ++t) {
    Mono m;
    for (int i = 0; i < rank; ++i) m.e[i] = static_cast<int16_t>(deg(rng));
    m.e[kHbar] = static_cast<int16_t>(deg(rng));
    p.addTerm(m, Rat(coef(rng)));
  }
  return p;
}

}  // namespace

TEST_CASE("polynomial ring axioms on random samples") {
  std::mt19937 rng(20240817);
  for (int it = 0; it < 60; ++it) {
    PolyS a = randomPoly(rng, 3, 3, 4), b = randomPoly(rng, 3, 3, 4), c = randomPoly(rng, 3, 3, 4);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a - a).isZero());
  }
}

TEST_CASE("hbar binomials") {
  PolyS a = PolyS::var(0), h = PolyS::hbar();
  CHECK(hbarBinom(a, 0) == PolyS(Rat(1)));
  CHECK(hbarBinom(a, 2) == a * (a - h) * Rat(1, 2));
  // m! * (P choose m) equals the falling product
  PolyS p = a * a + h;
  PolyS fall(Rat(1));
  for (int i = 0; i < 3; ++i) fall *= (p - h * Rat(i));
  CHECK(hbarBinom(p, 3) * factorial(3) == fall);
}

TEST_CASE("specialization sends a to mu*h") {
  // P = a1 + h at mu = -3 gives -2h
  PolyS p = PolyS::var(0) + PolyS::hbar();
  auto s = p.specializeMu({Rat(-3)});
  CHECK(s == PolyS::hbar() * Rat(-2));
  CHECK((PolyS::hbar() * PolyS::hbar()).specializeMu({Rat(7)}) == PolyS::hbar() * PolyS::hbar());
  CHECK(PolyS::var(0).specializeMu({Rat(0)}).isZero());
  // hbar binomial specialization identity (4.5.3): (a choose m) at s*mu with
  // n = -mu(a) >= m equals hbar^m * C(n, m)
  int n = 4, m = 1;
  PolyS b = hbarBinom(PolyS::var(0), m);
  auto v = b.specializeMu({Rat(n)});  // s*mu pairs with the coroot by +n
  CHECK(v == PolyS::hbar() * binomial(Rat(n), m));
  CHECK(v == PolyS::hbar() * Rat(4));
}

TEST_CASE("divideExact and homogeneity") {
  PolyS a = PolyS::var(0), h = PolyS::hbar();
  PolyS prod = (a - h) * (a + h * Rat(2)) * Rat(3, 7);
  bool ok = false;
  CHECK(prod.divideExact(a - h, &ok) == (a + h * Rat(2)) * Rat(3, 7));
  CHECK(ok);
  prod.divideExact(a + h, &ok);
  CHECK_FALSE(ok);
  CHECK(prod.isHomogeneous());
  CHECK(prod.degree() == 4);
  CHECK_FALSE((a * a + h).isHomogeneous());
}

TEST_CASE("textual form") {
  PolyS p = PolyS::var(0) * PolyS::var(0) * Rat(-3, 2) + PolyS::var(1) * PolyS::hbar() + PolyS(Rat(1));
  CHECK(p.str() == "-3/2*a1^2 + a2*h + 1");
  CHECK(PolyS().str() == "0");
}

TEST_CASE("laurent arithmetic") {
  HbarLaurent x = HbarLaurent::hbarPow(-2) * Rat(3) + HbarLaurent(Rat(1));
  HbarLaurent y = HbarLaurent::hbarPow(2);
  CHECK((x * y) == HbarLaurent(Rat(3)) + HbarLaurent::hbarPow(2));
  CHECK(x.shifted(2) == HbarLaurent(Rat(3)) + HbarLaurent::hbarPow(2));
  CHECK((x - x).isZero());
}

TEST_CASE("specialization composed with the weight twist") {
  // specialize_mu(twist_lambda(P, lambda), mu) = specialize_mu(P, mu - lambda)
  std::mt19937 rng(332211);
  std::uniform_int_distribution<int> c(-4, 4);
  for (int trial = 0; trial < 40; ++trial) {
    PolyS p = randomPoly(rng, 2, 3, 4);
    std::vector<Rat> lam{Rat(c(rng)), Rat(c(rng))}, mu{Rat(c(rng)), Rat(c(rng))};
    std::vector<Rat> diff{mu[0] - lam[0], mu[1] - lam[1]};
    CHECK(twistLambda(p, lam, 2).specializeMu(mu) == p.specializeMu(diff));
  }
  // twist_lambda(., 0) = id; twist by hbar-only is trivial on hbar
  PolyS q = PolyS::var(0) * PolyS::var(1) + PolyS::hbar();
  CHECK(twistLambda(q, {Rat(0), Rat(0)}, 2) == q);
  CHECK(twistLambda(PolyS::hbar(), {Rat(5), Rat(7)}, 2) == PolyS::hbar());
  // twists compose additively
  std::vector<Rat> l1{Rat(2), Rat(-1)}, l2{Rat(1), Rat(3)}, l12{Rat(3), Rat(2)};
  CHECK(twistLambda(twistLambda(q, l1, 2), l2, 2) == twistLambda(q, l12, 2));
}
