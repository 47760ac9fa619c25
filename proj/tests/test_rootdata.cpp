#include <random>

#include "averma/rootdata.hpp"
#include "doctest.h"

using namespace averma;

TEST_CASE("positive root counts and Cartan sanity") {
  CHECK(RootDatum::fromType("A1").numPositive() == 1);
  CHECK(RootDatum::fromType("A2").numPositive() == 3);
  CHECK(RootDatum::fromType("B2").numPositive() == 4);
  CHECK(RootDatum::fromType("A1xA1").numPositive() == 2);
  auto rd = RootDatum::fromType("B2");
  for (auto& beta : rd.positiveRoots())
    for (int c : beta.rootCoord) CHECK(c >= 0);
}

TEST_CASE("reflections") {
  auto a1 = RootDatum::fromType("A1");
  CHECK(a1.reflect(0, Weight({3})) == Weight({-3}));
  auto a2 = RootDatum::fromType("A2");
  CHECK(a2.reflect(0, Weight({1, 0})) == Weight({-1, 1}));
  CHECK(a2.reflect(1, Weight({4, 0})) == Weight({4, 0}));  // pairing zero: fixed
  // involution on a grid
  for (long x = -3; x <= 3; ++x)
    for (long y = -3; y <= 3; ++y) {
      Weight w({x, y});
      CHECK(a2.reflect(0, a2.reflect(0, w)) == w);
      CHECK(a2.reflect(1, a2.reflect(1, w)) == w);
    }
}

TEST_CASE("braid relation in A2 on a weight grid") {
  auto a2 = RootDatum::fromType("A2");
  WeylWord w121{0, 1, 0}, w212{1, 0, 1};
  for (long x = -4; x <= 4; ++x)
    for (long y = -4; y <= 4; ++y) {
      Weight w({x, y});
      CHECK(a2.act(w121, w) == a2.act(w212, w));
    }
  CHECK(a2.sameElement(w121, w212));
}

TEST_CASE("dot action") {
  auto a1 = RootDatum::fromType("A1");
  CHECK(a1.dotReflect(WeylWord{}, Weight({5})) == Weight({5}));
  // s . mu has pairing -n-2
  for (long n = -4; n <= 4; ++n)
    CHECK(a1.dotReflect(WeylWord{0}, Weight({n})) == Weight({-n - 2}));
  auto a2 = RootDatum::fromType("A2");
  Weight m2rho = a2.dotReflect(a2.longestElement(), Weight::zero(2));
  CHECK(m2rho == Weight({-2, -2}));
  // (xy) . mu = x . (y . mu)
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> d(-5, 5);
  for (auto& x : a2.allElements())
    for (auto& y : a2.allElements()) {
      Weight mu({d(rng), d(rng)});
      CHECK(a2.dotReflect(a2.concat(x, y), mu) == a2.dotReflect(x, a2.dotReflect(y, mu)));
    }
}

TEST_CASE("longest elements") {
  auto a1 = RootDatum::fromType("A1");
  CHECK(a1.longestElement() == WeylWord{0});
  auto a2 = RootDatum::fromType("A2");
  auto w0 = a2.longestElement();
  CHECK(w0.length() == 3);
  CHECK(a2.act(w0, a2.act(w0, Weight({2, 5}))) == Weight({2, 5}));
  CHECK(a2.act(w0, Weight({1, 2})) == Weight({-2, -1}));
  auto b2 = RootDatum::fromType("B2");
  CHECK(b2.longestElement().length() == 4);
  CHECK(b2.act(b2.longestElement(), Weight({1, 2})) == Weight({-1, -2}));
  CHECK(static_cast<int>(a2.allElements().size()) == 6);
  CHECK(static_cast<int>(b2.allElements().size()) == 8);
}

TEST_CASE("reduced words and inversions") {
  auto b2 = RootDatum::fromType("B2");
  WeylWord messy{0, 0, 1, 0, 1, 1, 0};
  auto red = b2.reducedWord(messy);
  CHECK(b2.sameElement(messy, red));
  CHECK(red.length() == b2.length(messy));
  CHECK(static_cast<int>(b2.inversions(b2.longestElement()).size()) == 4);
}

TEST_CASE("weyl action on polynomials") {
  auto a1 = RootDatum::fromType("A1");
  PolyS a = PolyS::var(0);
  CHECK(a1.weylActPoly(WeylWord{0}, a) == -a);
  CHECK(a1.weylActPoly(WeylWord{0}, PolyS::hbar()) == PolyS::hbar());
  auto a2 = RootDatum::fromType("A2");
  // s1 sends coroot1 -> -coroot1, coroot2 -> coroot1 + coroot2
  CHECK(a2.weylActPoly(WeylWord{0}, PolyS::var(0)) == -PolyS::var(0));
  CHECK(a2.weylActPoly(WeylWord{0}, PolyS::var(1)) == PolyS::var(0) + PolyS::var(1));
  // twist composition: acting by a word equals acting letterwise
  WeylWord w{0, 1};
  PolyS p = PolyS::var(0) * PolyS::var(1) + PolyS::hbar() * PolyS::var(0);
  CHECK(a2.weylActPoly(w, p) ==
        a2.weylActPoly(WeylWord{0}, a2.weylActPoly(WeylWord{1}, p)));
}

TEST_CASE("pairings") {
  auto a2 = RootDatum::fromType("A2");
  CHECK(a2.pairTwoRhoCheck(Weight({1, 0})) == 2);
  CHECK(a2.pairTwoRhoCheck(Weight({1, 1})) == 4);
  auto b2 = RootDatum::fromType("B2");
  // theta = a1 + 2 a2 is the long root with coroot a1v + a2v
  int id = b2.rootIndex({1, 2});
  REQUIRE(id >= 0);
  CHECK(b2.positiveRoots()[id].corootCoord == std::vector<int>({1, 1}));
  int ids = b2.rootIndex({1, 1});
  REQUIRE(ids >= 0);
  CHECK(b2.positiveRoots()[ids].corootCoord == std::vector<int>({2, 1}));
}

TEST_CASE("error paths: bad reflection index and unsupported type") {
  auto a2 = RootDatum::fromType("A2");
  CHECK_THROWS(a2.reflect(2, Weight({1, 0})));
  CHECK_THROWS(a2.reflect(-1, Weight({1, 0})));
  CHECK_THROWS(RootDatum::fromType("E8"));
}
