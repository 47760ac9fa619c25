#include <set>

#include "averma/bk.hpp"
#include "doctest.h"

using namespace averma;

TEST_CASE("rank-one BK filtration jumps at k") {
  // e^m v_{nu-k alpha} = k(k-1)...(k-m+1) v_{nu-(k-m)alpha}: the kernel of
  // e^{i+1} on the line is nonzero exactly when i >= k
  ChevalleyAlgebra alg(RootDatum::fromType("A1"));
  for (long n = 1; n <= 4; ++n) {
    WeightModule V = buildIrrep(alg, Weight({n}));
    for (long k = 0; k <= n; ++k) {
      Filtration f = bkFiltration(V, Weight({n - 2 * k}));
      REQUIRE(f.ambient == 1);
      for (size_t i = 0; i < f.dims.size(); ++i)
        CHECK(f.dims[i] == (static_cast<long>(i) >= k ? 1 : 0));
      CHECK(static_cast<long>(f.dims.size()) == k + 1);
    }
  }
}

TEST_CASE("highest weight is killed by e immediately") {
  ChevalleyAlgebra alg(RootDatum::fromType("B2"));
  WeightModule V = buildIrrep(alg, Weight({1, 1}));
  Filtration f = bkFiltration(V, Weight({1, 1}));
  REQUIRE(!f.dims.empty());
  CHECK(f.dims[0] == 1);
}

TEST_CASE("A2 adjoint zero weight space: ad e injective on t, dims 0,1,2") {
  ChevalleyAlgebra alg(RootDatum::fromType("A2"));
  WeightModule V = buildIrrep(alg, Weight({1, 1}));
  Filtration f = bkFiltration(V, Weight::zero(2));
  CHECK(f.dims == std::vector<int>({0, 1, 2}));
}

TEST_CASE("admissible phi") {
  ChevalleyAlgebra a1(RootDatum::fromType("A1"));
  auto phi1 = admissiblePhi(a1);
  CHECK(phi1[0] != 0);
  ChevalleyAlgebra a2(RootDatum::fromType("A2"));
  auto phi2 = admissiblePhi(a2);
  // regular: nonzero on every coroot
  for (auto& beta : a2.rootDatum().positiveRoots()) {
    Rat p(0);
    for (int i = 0; i < 2; ++i) p += phi2[i] * Rat(beta.corootCoord[i]);
    CHECK(p != 0);
  }
  // (ad* e)^2 phi = 0 is enforced inside sliceFiltration; a wrong phi throws
  ThetaContext ctx(a2, LeviDatum::full(a2));
  WeightModule V = buildIrrep(a2, Weight({1, 1}));
  std::vector<Rat> bad{phi2[0] + 1, phi2[1]};
  CHECK_THROWS(sliceFiltration(ctx, V, Weight::zero(2), bad));
}

TEST_CASE("slice filtration matches BK stepwise in rank one") {
  ChevalleyAlgebra alg(RootDatum::fromType("A1"));
  ThetaContext ctx(alg, LeviDatum::full(alg));
  auto phi = admissiblePhi(alg);
  WeightModule V = buildIrrep(alg, Weight({3}));
  for (long k = 0; k <= 3; ++k) {
    Weight lam({3 - 2 * k});
    Filtration bk = bkFiltration(V, lam);
    Filtration sl = sliceFiltration(ctx, V, lam, phi);
    CHECK(bk.dims == sl.dims);
  }
}

TEST_CASE("slice filtration matches BK on the A2 adjoint") {
  ChevalleyAlgebra alg(RootDatum::fromType("A2"));
  ThetaContext ctx(alg, LeviDatum::full(alg));
  auto phi = admissiblePhi(alg);
  WeightModule V = buildIrrep(alg, Weight({1, 1}));
  std::set<Weight> weights(V.wt.begin(), V.wt.end());
  for (auto& lam : weights) {
    Filtration bk = bkFiltration(V, lam);
    Filtration sl = sliceFiltration(ctx, V, lam, phi);
    CHECK(bk.dims == sl.dims);
  }
}

TEST_CASE("trivial module gives the one-step filtration") {
  ChevalleyAlgebra alg(RootDatum::fromType("A2"));
  ThetaContext ctx(alg, LeviDatum::full(alg));
  WeightModule V = buildIrrep(alg, Weight::zero(2));
  auto phi = admissiblePhi(alg);
  Filtration sl = sliceFiltration(ctx, V, Weight::zero(2), phi);
  CHECK(sl.dims == std::vector<int>({1}));
}

TEST_CASE("filtration dimensions are invariant under scaling phi") {
  ChevalleyAlgebra alg(RootDatum::fromType("A2"));
  ThetaContext ctx(alg, LeviDatum::full(alg));
  auto phi = admissiblePhi(alg);
  std::vector<Rat> phi3 = phi;
  for (auto& x : phi3) x *= 3;
  WeightModule V = buildIrrep(alg, Weight({1, 1}));
  for (auto lam : {Weight::zero(2), Weight({1, 1}), Weight({-1, 2})}) {
    CHECK(sliceFiltration(ctx, V, lam, phi).dims == sliceFiltration(ctx, V, lam, phi3).dims);
  }
}
