#include "averma/dynweyl.hpp"
#include "doctest.h"

using namespace averma;

namespace {

struct Ctx {
  ChevalleyAlgebra alg;
  LeviDatum levi;
  ThetaContext theta;
  IntertwinerOracle oracle;
  explicit Ctx(const std::string& type)
      : alg(RootDatum::fromType(type)), levi(LeviDatum::full(alg)), theta(alg, levi), oracle(alg) {}
};

}  // namespace

TEST_CASE("dictionary: right action matches the classical action through x -> -x/hbar") {
  Ctx c("A2");
  WeightModule V = buildIrrep(c.alg, Weight({1, 1}));
  Weight eta({1, 0});
  VermaModule M(c.levi, eta);
  const ClassicalVerma& cv = c.oracle.verma(eta);
  // basis spec vectors v (x) bar-v f^k; check m.x = -hbar (x o m) for e and f
  std::vector<Pbw> ks{{0, 0, 0}, {1, 0, 0}, {0, 1, 1}, {2, 1, 0}};
  for (int v = 0; v < V.dim; v += 3)
    for (auto& k : ks) {
      SpecTensorVec x;
      x.V = &V;
      x.add(v, k, HbarLaurent(Rat(1)));
      for (int gen = 0; gen < 2; ++gen) {
        for (bool isE : {true, false}) {
          SpecTensorVec lhs = isE ? specRightActE(M, x, gen) : specRightActF(M, x, gen);
          // classical side: diagonal action on fromSpec(x)
          ClassicalVec y = c.oracle.fromSpec(x);
          ClassicalVec res;
          res.V = &V;
          for (auto& [key, h] : y.c) {
            for (int v2 = 0; v2 < V.dim; ++v2) {
              const Rat& a = isE ? V.eMat[gen].at(v2, key.first) : V.fMat[gen].at(v2, key.first);
              if (a != 0) res.add(v2, key.second, h * a);
            }
            ClassicalVerma::Vec mono;
            mono[key.second] = 1;
            auto acted = isE ? cv.actE(gen, mono) : cv.actF(gen, mono);
            for (auto& [k2, q] : acted) res.add(key.first, k2, h * q);
          }
          SpecTensorVec rhs = c.oracle.toSpec(res).scaled(HbarLaurent::hbarPow(1) * Rat(-1));
          CHECK(lhs == rhs);
        }
      }
    }
}

TEST_CASE("trivial representation gives the one-by-one identity") {
  Ctx c("A1");
  WeightModule V = buildIrrep(c.alg, Weight({0}));
  QMatrix dw = c.oracle.dwMatrix(V, Weight({0}), WeylWord{0}, Weight({-5}));
  REQUIRE(dw.rows() == 1);
  CHECK(dw.at(0, 0) == 1);
  DWMatrix sym = dwAlg(c.theta, V, Weight({0}), WeylWord{0});
  CHECK(sym.m[0][0].equals(RatS::of(PolyS(Rat(1)))));
}

TEST_CASE("identity word") {
  Ctx c("A1");
  WeightModule V = buildIrrep(c.alg, Weight({3}));
  DWMatrix sym = dwAlg(c.theta, V, Weight({1}), WeylWord{});
  CHECK(sym.m[0][0].equals(RatS::of(PolyS(Rat(1)))));
}

TEST_CASE("singular spaces have dimension dim V_lambda at admissible mu") {
  Ctx c("A2");
  WeightModule V = buildIrrep(c.alg, Weight({1, 1}));
  for (auto lam : {Weight({1, 1}), Weight({0, 0}), Weight({-1, 2})}) {
    Weight mu = sufficientlyLarge(V, lam, 0);
    auto basis = c.oracle.singularBasis(V, lam, mu);
    CHECK(basis.size() == V.weightSpace(lam).size());
  }
}

TEST_CASE("A1 oracle agreement across nu <= 4 and all lambda, three mu each") {
  Ctx c("A1");
  for (long n = 0; n <= 4; ++n) {
    WeightModule V = buildIrrep(c.alg, Weight({n}));
    for (long k = 0; k <= n; ++k) {
      Weight lam({n - 2 * k});
      DWMatrix sym = dwAlg(c.theta, V, lam, WeylWord{0});
      for (int margin = 0; margin < 3; ++margin) {
        Weight mu = sufficientlyLarge(V, lam, 2 * margin);
        QMatrix dw = c.oracle.dwMatrix(V, lam, WeylWord{0}, mu);
        Weight wmu = c.alg.rootDatum().reflect(0, mu);
        CHECK(dwMatchesOracle(c.alg.rootDatum(), sym, dw, wmu));
      }
    }
  }
}

TEST_CASE("A2 adjoint: dw matrices for simple reflections and w0, oracle certified") {
  Ctx c("A2");
  const auto& rd = c.alg.rootDatum();
  WeightModule V = buildIrrep(c.alg, Weight({1, 1}));
  Weight lam({1, 1});
  for (auto& w : {WeylWord{0}, WeylWord{1}, WeylWord{0, 1, 0}}) {
    DWMatrix sym = dwAlg(c.theta, V, lam, w);
    for (int margin = 0; margin < 3; ++margin) {
      Weight mu = sufficientlyLarge(V, lam, 2 * margin);
      QMatrix dw = c.oracle.dwMatrix(V, lam, w, mu);
      CHECK(dwMatchesOracle(rd, sym, dw, rd.act(w, mu)));
    }
  }
}

TEST_CASE("A2 adjoint at lambda = 0: two-dimensional dw blocks agree with the oracle") {
  Ctx c("A2");
  const auto& rd = c.alg.rootDatum();
  WeightModule V = buildIrrep(c.alg, Weight({1, 1}));
  Weight lam({0, 0});
  DWMatrix sym = dwAlg(c.theta, V, lam, WeylWord{0});
  REQUIRE(sym.m.size() == 2);
  Weight mu = sufficientlyLarge(V, lam, 0);
  QMatrix dw = c.oracle.dwMatrix(V, lam, WeylWord{0}, mu);
  CHECK(dwMatchesOracle(rd, sym, dw, rd.reflect(0, mu)));
}

TEST_CASE("path independence of dw along both reduced words of w0 in A2") {
  Ctx c("A2");
  WeightModule V = buildIrrep(c.alg, Weight({1, 1}));
  Weight lam({1, 1});
  DWMatrix a = dwAlg(c.theta, V, lam, WeylWord{0, 1, 0});
  DWMatrix b = dwAlg(c.theta, V, lam, WeylWord{1, 0, 1});
  REQUIRE(a.m.size() == b.m.size());
  for (size_t r = 0; r < a.m.size(); ++r)
    for (size_t s = 0; s < a.m[r].size(); ++s) CHECK(a.m[r][s].equals(b.m[r][s]));
}

TEST_CASE("denominator discipline: dw denominators factor into coroot + n hbar forms") {
  Ctx c("A2");
  const auto& rd = c.alg.rootDatum();
  WeightModule V = buildIrrep(c.alg, Weight({1, 1}));
  for (auto lam : {Weight({1, 1}), Weight({0, 0})}) {
    DWMatrix sym = dwAlg(c.theta, V, lam, WeylWord{0, 1, 0});
    for (auto& row : sym.m)
      for (auto& entry : row) {
        if (entry.isZero()) continue;
        CHECK(factorLinearForms(rd, entry.den, nullptr));
      }
  }
}

TEST_CASE("mu too small is rejected") {
  Ctx c("A1");
  WeightModule V = buildIrrep(c.alg, Weight({2}));
  // psi step needs (lambda + mu)(coroot) <= 0
  CHECK_THROWS(c.oracle.dwMatrix(V, Weight({2}), WeylWord{0}, Weight({-1})));
}

TEST_CASE("theta specialization certificate in rank one (4.5.2)") {
  Ctx c("A1");
  const auto& rd = c.alg.rootDatum();
  for (long n = 1; n <= 3; ++n) {
    WeightModule V = buildIrrep(c.alg, Weight({n}));
    for (long k = 0; k <= n; ++k) {
      Weight lam({n - 2 * k});
      auto& basis = c.theta.invariants(V, lam);
      TensorVec th = c.theta.thetaS(basis.gens[0], 0);
      for (int margin = 0; margin < 3; ++margin) {
        Weight mu = sufficientlyLarge(V, lam, 2 * margin);
        // LHS: Sp_{s mu} Theta_s(x); RHS: n(s, lambda, mu) Psi_{s,mu}(Sp_mu x)
        SpecTensorVec lhs = spMu(th, rd.reflect(0, mu));
        ClassicalVec y = c.oracle.fromSpec(spMu(basis.gens[0], mu));
        ClassicalVec img = c.oracle.psiStep(y, lam, mu, 0);
        SpecTensorVec rhs = c.oracle.toSpec(img).scaled(
            thetaSpecScalar(rd, WeylWord{0}, lam, mu));
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("theta specialization certificate for A2 words") {
  Ctx c("A2");
  const auto& rd = c.alg.rootDatum();
  WeightModule V = buildIrrep(c.alg, Weight({1, 1}));
  Weight lam({1, 1});
  auto& basis = c.theta.invariants(V, lam);
  for (auto& w : {WeylWord{0}, WeylWord{1, 0}, WeylWord{0, 1, 0}}) {
    TensorVec th = c.theta.thetaWord(basis.gens[0], w);
    Weight mu = sufficientlyLarge(V, lam, 0);
    SpecTensorVec lhs = spMu(th, rd.act(w, mu));
    ClassicalVec y = c.oracle.fromSpec(spMu(basis.gens[0], mu));
    ClassicalVec img = c.oracle.psiWord(y, lam, mu, w);
    SpecTensorVec rhs = c.oracle.toSpec(img).scaled(thetaSpecScalar(rd, w, lam, mu));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("A1 standard representation at the sample specialization points") {
  Ctx c("A1");
  const auto& rd = c.alg.rootDatum();
  WeightModule V = buildIrrep(c.alg, Weight({1}));
  DWMatrix sym = dwAlg(c.theta, V, Weight({1}), WeylWord{0});
  for (long m : {-5L, -7L, -9L}) {
    Weight mu({m});
    QMatrix dw = c.oracle.dwMatrix(V, Weight({1}), WeylWord{0}, mu);
    CHECK(dwMatchesOracle(rd, sym, dw, rd.reflect(0, mu)));
  }
}

TEST_CASE("B2 and A1xA1 dynamical Weyl matrices agree with the oracle") {
  {
    Ctx c("B2");
    const auto& rd = c.alg.rootDatum();
    WeightModule V = buildIrrep(c.alg, Weight({1, 1}));
    Weight lam({0, 1});
    for (auto& w : {WeylWord{0}, WeylWord{1}, WeylWord{1, 0}}) {
      DWMatrix sym = dwAlg(c.theta, V, lam, w);
      Weight mu = sufficientlyLarge(V, lam, 0);
      CHECK(dwMatchesOracle(rd, sym, c.oracle.dwMatrix(V, lam, w, mu), rd.act(w, mu)));
    }
  }
  {
    Ctx c("A1xA1");
    const auto& rd = c.alg.rootDatum();
    WeightModule V = buildIrrep(c.alg, Weight({2, 1}));
    CHECK(V.dim == 6);
    for (auto lam : {Weight({0, 1}), Weight({-2, -1})}) {
      auto& b = c.theta.invariants(V, lam);
      CHECK(b.rank == 1);
      CHECK(isBInvariant(c.theta.thetaWord(b.gens[0], WeylWord{0, 1}), c.levi));
      DWMatrix sym = dwAlg(c.theta, V, lam, WeylWord{0, 1});
      Weight mu = sufficientlyLarge(V, lam, 0);
      CHECK(dwMatchesOracle(rd, sym, c.oracle.dwMatrix(V, lam, WeylWord{0, 1}, mu),
                            rd.act(WeylWord{0, 1}, mu)));
    }
  }
}
