#include "averma/weylops.hpp"

#include <cassert>
#include <stdexcept>

namespace averma {

ThetaContext::ThetaContext(const ChevalleyAlgebra& alg, LeviDatum levi)
    : alg_(&alg), levi_(std::move(levi)) {}

const VermaModule& ThetaContext::module(const Weight& lambda) {
  auto key = std::make_pair(lambda, levi_.posIds);
  auto it = pool_.find(key);
  if (it == pool_.end())
    it = pool_.emplace(key, std::make_unique<VermaModule>(levi_, lambda)).first;
  return *it->second;
}

const VermaModule& ThetaContext::moduleRootLast(const Weight& lambda, int posId) {
  std::vector<int> order;
  for (int p : levi_.posIds)
    if (p != posId) order.push_back(p);
  order.push_back(posId);
  auto key = std::make_pair(lambda, order);
  auto it = pool_.find(key);
  if (it == pool_.end())
    it = pool_.emplace(key, std::make_unique<VermaModule>(levi_, lambda, order)).first;
  return *it->second;
}

TensorVec ThetaContext::restraighten(const TensorVec& x, const VermaModule& target) {
  assert(x.M->lambda() == target.lambda());
  TensorVec out;
  out.V = x.V;
  out.M = &target;
  if (x.M->sameOrdering(target)) {
    out.c = x.c;
    return out;
  }
  for (auto& [key, p] : x.c) {
    const auto& [v, k] = key;
    VermaModule::Vec cur;
    cur[Pbw(target.numSlots(), 0)] = PolyS(Rat(1));
    for (int s = 0; s < x.M->numSlots(); ++s)
      for (int rep = 0; rep < k[s]; ++rep) cur = target.actF(x.M->posOfSlot(s), cur);
    for (auto& [k2, q] : cur) out.add(v, k2, p * q);
  }
  return out;
}

const InvariantBasis& ThetaContext::invariants(const WeightModule& V, const Weight& lambda) {
  auto key = std::make_pair(V.label, lambda);
  auto it = invCache_.find(key);
  if (it == invCache_.end() || it->second.owner != &V) {
    CachedBasis cb{&V, bInvariants(V, module(lambda))};
    it = invCache_.insert_or_assign(key, std::move(cb)).first;
  }
  return it->second.basis;
}

const InvariantBasis& ThetaContext::classicalInvariants(const WeightModule& V, const Weight& lambda) {
  auto key = std::make_pair(V.label, lambda);
  auto it = clInvCache_.find(key);
  if (it == clInvCache_.end() || it->second.owner != &V) {
    CachedBasis cb{&V, classicalBInvariants(V, module(lambda))};
    it = clInvCache_.insert_or_assign(key, std::move(cb)).first;
  }
  return it->second.basis;
}

PolyS polyDet(const std::vector<std::vector<PolyS>>& m) {
  size_t n = m.size();
  if (n == 0) return PolyS(Rat(1));
  if (n == 1) return m[0][0];
  PolyS det;
  for (size_t j = 0; j < n; ++j) {
    if (m[0][j].isZero()) continue;
    std::vector<std::vector<PolyS>> minor(n - 1, std::vector<PolyS>(n - 1));
    for (size_t r = 1; r < n; ++r) {
      size_t cc = 0;
      for (size_t c = 0; c < n; ++c) {
        if (c == j) continue;
        minor[r - 1][cc++] = m[r][c];
      }
    }
    PolyS t = m[0][j] * polyDet(minor);
    det += (j % 2) ? -t : t;
  }
  return det;
}

std::vector<PolyS> ThetaContext::thetaKappa(const TensorVec& x, int simpleIdx, bool classical) {
  const auto& rd = alg_->rootDatum();
  const Weight& lambda = x.M->lambda();
  const VermaModule& src = moduleRootLast(lambda, simpleIdx);
  TensorVec xs;
  if (classical) {
    // hbar = 0: the letters commute and reordering is a slot permutation
    xs.V = x.V;
    xs.M = &src;
    for (auto& [key, p] : x.c) {
      Pbw k2(src.numSlots(), 0);
      for (int s2 = 0; s2 < x.M->numSlots(); ++s2)
        k2[src.slotOfPos(x.M->posOfSlot(s2))] = key.second[s2];
      xs.add(key.first, k2, p);
    }
  } else {
    xs = restraighten(x, src);
  }
  Weight slam = rd.reflect(simpleIdx, lambda);
  long nLambda = -lambda[simpleIdx];
  int lastSlot = src.numSlots() - 1;
  WeylWord s{simpleIdx};
  std::vector<Rat> corootPoly(rd.rank(), Rat(0));
  for (int i = 0; i < rd.rank(); ++i)
    corootPoly[i] = Rat(rd.positiveRoots()[simpleIdx].corootCoord[i]);
  PolyS alphaCheck = PolyS::linear(corootPoly, Rat(0));
  auto slots = x.V->weightSpace(slam);
  std::vector<PolyS> out(slots.size());
  for (auto& [key, p] : xs.c) {
    const auto& [j, k] = key;
    bool pure = true;
    for (int s2 = 0; s2 < lastSlot; ++s2)
      if (k[s2]) pure = false;
    if (!pure) continue;  // only the f_alpha-pure column reaches kappa
    long i = k[lastSlot];
    long m = i - nLambda;
    if (m < 0) continue;
    PolyS sp = rd.weylActPoly(s, p);
    PolyS coeff = classical
                      ? [&] {
                          PolyS apow(Rat(1));
                          for (long t = 0; t < m; ++t) apow *= alphaCheck;
                          return apow * (Rat(1) / factorial(static_cast<int>(m)));
                        }()
                      : hbarBinom(alphaCheck, static_cast<int>(m));
    coeff = coeff * sp;
    if (m % 2) coeff = -coeff;
    std::vector<Rat> fmv(x.V->dim, Rat(0));
    fmv[j] = 1;
    for (long t = 0; t < m; ++t) fmv = x.V->fMat[simpleIdx].apply(fmv);
    for (size_t a = 0; a < slots.size(); ++a)
      if (fmv[slots[a]] != 0) out[a] += coeff * fmv[slots[a]];
  }
  return out;
}

TensorVec ThetaContext::solveAgainstBasis(const std::vector<PolyS>& kappaVec,
                                          const InvariantBasis& basis, const char* who) {
  size_t m = basis.gens.size();
  assert(kappaVec.size() == m);
  std::vector<std::vector<PolyS>> K(m, std::vector<PolyS>(m));
  for (size_t j = 0; j < m; ++j) {
    auto kj = kappaAlg(basis.gens[j]);
    for (size_t a = 0; a < m; ++a) K[a][j] = kj[a];
  }
  PolyS det = polyDet(K);
  if (det.isZero()) throw std::runtime_error(std::string(who) + ": kappa matrix is singular");
  TensorVec out;
  if (!basis.gens.empty()) {
    out.V = basis.gens[0].V;
    out.M = basis.gens[0].M;
  }
  for (size_t j = 0; j < m; ++j) {
    std::vector<std::vector<PolyS>> Kj = K;
    for (size_t a = 0; a < m; ++a) Kj[a][j] = kappaVec[a];
    bool ok = false;
    PolyS q = polyDet(Kj).divideExact(det, &ok);
    if (!ok)
      throw std::runtime_error(std::string(who) + ": image does not lie in the invariant module");
    out = out + basis.gens[j].scaled(q);
  }
  return out;
}

TensorVec ThetaContext::thetaS(const TensorVec& x, int simpleIdx) {
  const auto& rd = alg_->rootDatum();
  const Weight& lambda = x.M->lambda();
  if (!isBInvariant(x, levi_)) throw std::runtime_error("thetaS: input is not B-invariant");
  Weight slam = rd.reflect(simpleIdx, lambda);
  auto kv = thetaKappa(x, simpleIdx, false);
  TensorVec out = solveAgainstBasis(kv, invariants(*x.V, slam), "thetaS");
  if (!isBInvariant(out, levi_))
    throw std::runtime_error("thetaS: output failed the B-invariance certificate");
  return out;
}

TensorVec ThetaContext::thetaWord(const TensorVec& x, const WeylWord& w) {
  TensorVec cur = x;
  for (int pos = w.length() - 1; pos >= 0; --pos) cur = thetaS(cur, w.w[pos]);
  return cur;
}

TensorVec ThetaContext::sigmaS(const TensorVec& xbar, int simpleIdx) {
  const auto& rd = alg_->rootDatum();
  const Weight& lambda = xbar.M->lambda();
  Weight slam = rd.reflect(simpleIdx, lambda);
  auto kv = thetaKappa(xbar, simpleIdx, true);
  TensorVec out = solveAgainstBasis(kv, classicalInvariants(*xbar.V, slam), "sigmaS");
  for (int i : levi_.simples)
    if (!classicalAdjointE(out, i).isZero())
      throw std::runtime_error("sigmaS: output failed the classical invariance certificate");
  return out;
}

TensorVec ThetaContext::sigmaWord(const TensorVec& xbar, const WeylWord& w) {
  TensorVec cur = xbar;
  for (int pos = w.length() - 1; pos >= 0; --pos) cur = sigmaS(cur, w.w[pos]);
  return cur;
}

std::pair<long, long> ThetaContext::shiftPair(const Weight& lambda, const WeylWord& w) const {
  const auto& rd = alg_->rootDatum();
  return {rd.pairTwoRhoCheck(lambda), rd.pairTwoRhoCheck(rd.act(w, lambda))};
}

TensorVec convAlg(const TensorVec& phi, const TensorVec& psi, const WeightModule& VW,
                  const VermaModule& Mout) {
  const WeightModule& V = *phi.V;
  const WeightModule& Vp = *psi.V;
  assert(VW.dim == V.dim * Vp.dim);
  const Weight& lambda = phi.M->lambda();
  std::vector<Rat> mlam(lambda.rank());
  for (int i = 0; i < lambda.rank(); ++i) mlam[i] = Rat(-lambda[i]);
  int rank = Mout.algebra().rank();
  assert(psi.M->sameOrdering(Mout));

  // In this presentation S_h<<lambda>> (x) psi sends (P, f^k) to
  // P . twist_{-lambda}(coefficients of psi(v_0) . f^k), the right action
  // taken in M(mu).
  TensorVec out;
  out.V = &VW;
  out.M = &Mout;
  for (auto& [key, p] : phi.c) {
    const auto& [i, k] = key;
    TensorVec cur = psi;
    for (int s = 0; s < phi.M->numSlots(); ++s)
      for (int rep = 0; rep < k[s]; ++rep) cur = rightActF(cur, phi.M->posOfSlot(s));
    for (auto& [key2, q] : cur.c)
      out.add(i * Vp.dim + key2.first, key2.second, p * twistLambda(q, mlam, rank));
  }
  return out;
}

std::vector<std::vector<PolyS>> kappaGradedPiece(const TensorVec& z, const WeightModule& V,
                                                 const WeightModule& Vp, const Weight& lambda,
                                                 const Weight& mu) {
  auto la = V.weightSpace(lambda);
  auto mb = Vp.weightSpace(mu);
  std::vector<std::vector<PolyS>> out(la.size(), std::vector<PolyS>(mb.size()));
  Pbw zero(z.M->numSlots(), 0);
  for (size_t a = 0; a < la.size(); ++a)
    for (size_t b = 0; b < mb.size(); ++b) {
      auto it = z.c.find({la[a] * Vp.dim + mb[b], zero});
      if (it != z.c.end()) out[a][b] = it->second;
    }
  return out;
}

std::vector<std::vector<PolyS>> thetaMatrix(ThetaContext& ctx, const WeightModule& V,
                                            const Weight& lambda, const WeylWord& w) {
  const auto& rd = ctx.algebra().rootDatum();
  const InvariantBasis& src = ctx.invariants(V, lambda);
  Weight wlam = rd.act(w, lambda);
  const InvariantBasis& dst = ctx.invariants(V, wlam);
  size_t m = dst.gens.size();
  std::vector<std::vector<PolyS>> K(m, std::vector<PolyS>(m));
  for (size_t j = 0; j < m; ++j) {
    auto kj = kappaAlg(dst.gens[j]);
    for (size_t a = 0; a < m; ++a) K[a][j] = kj[a];
  }
  PolyS det = polyDet(K);
  std::vector<std::vector<PolyS>> out(m, std::vector<PolyS>(src.gens.size()));
  for (size_t j = 0; j < src.gens.size(); ++j) {
    TensorVec th = ctx.thetaWord(src.gens[j], w);
    auto kv = kappaAlg(th);
    for (size_t i = 0; i < m; ++i) {
      std::vector<std::vector<PolyS>> Ki = K;
      for (size_t a = 0; a < m; ++a) Ki[a][i] = kv[a];
      bool ok = false;
      out[i][j] = polyDet(Ki).divideExact(det, &ok);
      if (!ok) throw std::runtime_error("thetaMatrix: image not in the invariant module");
    }
  }
  return out;
}

HbarLaurent thetaSpecScalar(const RootDatum& rd, const WeylWord& w, const Weight& lambda,
                            const Weight& mu) {
  HbarLaurent n(Rat(1));
  for (int b : rd.inversions(w)) {
    const Root& beta = rd.positiveRoots()[b];
    long lb = rd.pair(lambda, beta), mb = rd.pair(mu, beta);
    if (lb > 0) {
      Rat prod(1);
      for (long j = 0; j < lb; ++j) prod *= Rat(-mb - j);
      n = n * (HbarLaurent::hbarPow(static_cast<int>(lb)) * (prod * ((lb % 2) ? -1 : 1)));
    } else if (lb < 0) {
      Rat prod(1);
      for (long j = 1; j <= -lb; ++j) prod *= Rat(-mb + j);
      Rat sign((-lb) % 2 ? -1 : 1);
      if (prod == 0) throw std::runtime_error("thetaSpecScalar: mu not admissible");
      n = n * (HbarLaurent::hbarPow(static_cast<int>(lb)) * (sign / prod));
    }
  }
  return n;
}

}  // namespace averma
