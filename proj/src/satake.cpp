#include "averma/satake.hpp"

#include <stdexcept>

namespace averma {

PolyS kashiwaraProduct(const RootDatum& rd, const Weight& nu) {
  if (!nu.isDominant()) throw std::runtime_error("kashiwaraProduct: nu must be dominant");
  WeylWord w0 = rd.longestElement();
  Weight w0nu = rd.act(w0, nu);
  PolyS out(Rat(1));
  for (auto& beta : rd.positiveRoots()) {
    long count = -rd.pair(w0nu, beta);  // -nu(w0 beta-check)
    std::vector<Rat> co(rd.rank());
    for (int i = 0; i < rd.rank(); ++i) co[i] = Rat(beta.corootCoord[i]);
    PolyS coroot = PolyS::linear(co, Rat(0));
    for (long j = 0; j < count; ++j) out *= (coroot - PolyS::hbar() * Rat(j));
  }
  return out;
}

Rank1Prediction rank1Predictions(long n, long k) {
  if (k < 0 || k > n) throw std::runtime_error("rank1Predictions: k out of range");
  Rank1Prediction p;
  p.n = n;
  p.k = k;
  p.lambdaPair = n - 2 * k;
  p.nLambda = std::abs(p.lambdaPair);
  PolyS a = PolyS::var(0), h = PolyS::hbar();
  p.generator = PolyS(Rat(1));
  for (long j = 0; j < k; ++j) p.generator *= (a + h * Rat(n - k - j));
  p.eulerProduct = PolyS(Rat(1));
  for (long j = 1; j <= k; ++j) {
    p.strata.push_back({-1, -(p.lambdaPair + j)});
    p.eulerProduct *= (-a - h * Rat(p.lambdaPair + j));
  }
  p.sliceFactor = PolyS(Rat(1));
  if (p.lambdaPair < 0)
    for (long j = 0; j < -p.lambdaPair; ++j) p.sliceFactor *= (-a + h * Rat(j));
  return p;
}

namespace {

// computed = unit * predicted for a rational unit?
bool matchUpToUnit(const PolyS& computed, const PolyS& predicted, Rat* unit) {
  if (computed.isZero() && predicted.isZero()) {
    *unit = 1;
    return true;
  }
  if (computed.isZero() || predicted.isZero()) return false;
  Rat u = computed.leadingCoeff() / predicted.leadingCoeff();
  if (computed == predicted * u) {
    *unit = u;
    return true;
  }
  return false;
}

}  // namespace

Verdict checkImageEquality(ThetaContext& ctx, const WeightModule& V, const Weight& nu,
                           const Weight& lambda) {
  const auto& rd = ctx.algebra().rootDatum();
  Verdict verdict;
  WeylWord w0 = rd.longestElement();
  Weight w0nu = rd.act(w0, nu);
  bool rankOne = rd.rank() == 1 && rd.numPositive() == 1;
  if (!rankOne && !(lambda == w0nu) && !(lambda == nu)) {
    verdict.kind = "unchecked";
    verdict.note = "no closed-form oracle for this (nu, lambda)";
    return verdict;
  }
  const InvariantBasis& basis = ctx.invariants(V, lambda);
  verdict.checked = true;
  if (!basis.lambdaIsWeight) {
    // empty invariants match an empty prediction only in rank one when
    // lambda is not a weight
    verdict.kind = rankOne ? "rank-one" : "kashiwara";
    verdict.pass = !V.hasWeight(lambda);
    verdict.note = "lambda is not a weight of V";
    return verdict;
  }
  if (basis.rank != 1)
    throw std::runtime_error("checkImageEquality: oracle weights must be multiplicity one");
  auto image = kappaAlg(basis.gens[0]);
  verdict.computed = image[0];

  if (rankOne) {
    verdict.kind = "rank-one";
    long n = nu[0];
    long k = (n - lambda[0]) / 2;
    Rank1Prediction p = rank1Predictions(n, k);
    // sign pinned by the A.1.1-normalized basis
    verdict.predicted = (k % 2) ? -p.generator : p.generator;
    verdict.unit = 1;
    verdict.pass = verdict.computed == verdict.predicted;
    return verdict;
  }
  if (lambda == nu) {
    verdict.kind = "unit";
    verdict.predicted = PolyS(Rat(1));
    verdict.pass = matchUpToUnit(verdict.computed, verdict.predicted, &verdict.unit) &&
                   verdict.computed.isConstant();
    return verdict;
  }
  verdict.kind = "kashiwara";
  verdict.predicted = kashiwaraProduct(rd, nu);
  verdict.pass = matchUpToUnit(verdict.computed, verdict.predicted, &verdict.unit);
  return verdict;
}

}  // namespace averma
