#include "averma/dynweyl.hpp"

#include <cassert>
#include <sstream>
#include <stdexcept>

namespace averma {

void ClassicalVec::add(int vIdx, const std::vector<int>& k, const HbarLaurent& h) {
  if (h.isZero()) return;
  auto key = std::make_pair(vIdx, k);
  auto it = c.find(key);
  if (it == c.end()) {
    c[key] = h;
  } else {
    it->second += h;
    if (it->second.isZero()) c.erase(it);
  }
}

bool ClassicalVec::operator==(const ClassicalVec& o) const { return c == o.c; }

IntertwinerOracle::IntertwinerOracle(const ChevalleyAlgebra& alg) : alg_(&alg) {}

const ClassicalVerma& IntertwinerOracle::verma(const Weight& eta) {
  auto it = vermaPool_.find(eta);
  if (it == vermaPool_.end()) {
    // bar-M_loc(eta) corresponds to V(-eta-rho)
    std::vector<Rat> etaCl(eta.rank());
    for (int i = 0; i < eta.rank(); ++i) etaCl[i] = Rat(-eta[i] - 1);
    it = vermaPool_.emplace(eta, std::make_unique<ClassicalVerma>(*alg_, etaCl)).first;
  }
  return *it->second;
}

ClassicalVec IntertwinerOracle::fromSpec(const SpecTensorVec& x) {
  ClassicalVec y;
  y.V = x.V;
  for (auto& [key, h] : x.c) {
    int total = 0;
    for (int e : key.second) total += e;
    HbarLaurent d = h.shifted(total) * Rat(total % 2 ? -1 : 1);
    y.add(key.first, key.second, d);
  }
  return y;
}

SpecTensorVec IntertwinerOracle::toSpec(const ClassicalVec& y) {
  SpecTensorVec x;
  x.V = y.V;
  for (auto& [key, h] : y.c) {
    int total = 0;
    for (int e : key.second) total += e;
    HbarLaurent d = h.shifted(-total) * Rat(total % 2 ? -1 : 1);
    x.add(key.first, key.second, d);
  }
  return x;
}

std::vector<ClassicalVec> IntertwinerOracle::singularBasis(const WeightModule& V,
                                                           const Weight& lambda,
                                                           const Weight& mu) {
  const auto& rd = alg_->rootDatum();
  const ClassicalVerma& cv = verma(lambda + mu);
  // candidate terms (v, k) with wt(v) = lambda + gamma(k)
  std::vector<std::pair<int, std::vector<int>>> terms;
  for (int v = 0; v < V.dim; ++v) {
    auto gc = rd.weightInRootCoords(V.wt[v] - lambda);
    std::vector<long> g(rd.rank());
    bool ok = true;
    for (int i = 0; i < rd.rank(); ++i) {
      if (!isInteger(gc[i]) || gc[i] < 0) {
        ok = false;
        break;
      }
      g[i] = toLong(gc[i]);
    }
    if (!ok) continue;
    for (auto& k : monomialsWithRootSum(rd, g)) terms.push_back({v, k});
  }
  // rows: coefficients of e_i . (v (x) c_k) over output keys
  std::map<std::pair<int, std::pair<int, std::vector<int>>>, std::map<int, Rat>> rows;
  for (size_t u = 0; u < terms.size(); ++u) {
    auto& [v, k] = terms[u];
    for (int i = 0; i < rd.rank(); ++i) {
      for (int v2 = 0; v2 < V.dim; ++v2) {
        const Rat& a = V.eMat[i].at(v2, v);
        if (a != 0) rows[{i, {v2, k}}][static_cast<int>(u)] += a;
      }
      ClassicalVerma::Vec mono;
      mono[k] = 1;
      for (auto& [k2, q] : cv.actE(i, mono)) rows[{i, {v, k2}}][static_cast<int>(u)] += q;
    }
  }
  std::vector<std::map<int, Rat>> rowList;
  for (auto& [key, row] : rows) {
    std::map<int, Rat> clean;
    for (auto& [col, val] : row)
      if (val != 0) clean[col] = val;
    if (!clean.empty()) rowList.push_back(std::move(clean));
  }
  auto kernel = sparseKernel(std::move(rowList), static_cast<int>(terms.size()));
  std::vector<ClassicalVec> out;
  for (auto& kv : kernel) {
    ClassicalVec y;
    y.V = &V;
    for (size_t u = 0; u < kv.size(); ++u)
      if (kv[u] != 0) y.add(terms[u].first, terms[u].second, HbarLaurent(kv[u]));
    out.push_back(std::move(y));
  }
  return out;
}

std::vector<HbarLaurent> IntertwinerOracle::expectation(const ClassicalVec& y,
                                                        const Weight& lambda) {
  auto slots = y.V->weightSpace(lambda);
  std::vector<int> zero(alg_->numPos(), 0);
  std::vector<HbarLaurent> out(slots.size());
  for (size_t a = 0; a < slots.size(); ++a) {
    auto it = y.c.find({slots[a], zero});
    if (it != y.c.end()) out[a] = it->second;
  }
  return out;
}

ClassicalVec IntertwinerOracle::psiStep(const ClassicalVec& y, const Weight& lambda,
                                        const Weight& mu, int simpleIdx) {
  const auto& rd = alg_->rootDatum();
  long n = -mu[simpleIdx];
  if (n <= 0) throw std::runtime_error("psiStep: mu(coroot) must be negative");
  long nPrime = -(lambda[simpleIdx] + mu[simpleIdx]);
  if (nPrime < 0) throw std::runtime_error("psiStep: mu is not sufficiently large for lambda");
  const ClassicalVerma& cv = verma(lambda + mu);
  const WeightModule& V = *y.V;

  // z = (1/n!) f_a^n . y with the diagonal classical action
  std::map<std::pair<int, std::vector<int>>, HbarLaurent> z = y.c;
  for (long rep = 0; rep < n; ++rep) {
    std::map<std::pair<int, std::vector<int>>, HbarLaurent> nz;
    auto addTo = [&nz](int v, const std::vector<int>& k, const HbarLaurent& h) {
      if (h.isZero()) return;
      auto key = std::make_pair(v, k);
      auto it = nz.find(key);
      if (it == nz.end())
        nz[key] = h;
      else {
        it->second += h;
        if (it->second.isZero()) nz.erase(it);
      }
    };
    for (auto& [key, h] : z) {
      auto& [v, k] = key;
      for (int v2 = 0; v2 < V.dim; ++v2) {
        const Rat& a = V.fMat[simpleIdx].at(v2, v);
        if (a != 0) addTo(v2, k, h * a);
      }
      ClassicalVerma::Vec mono;
      mono[k] = 1;
      for (auto& [k2, q] : cv.actF(simpleIdx, mono)) addTo(v, k2, h * q);
    }
    z = std::move(nz);
  }
  Rat invFact = Rat(1) / factorial(static_cast<int>(n));
  for (auto& [key, h] : z) h = h * invFact;

  // solve (id (x) i^s)(y') = z: the image of the basis vector v (x) c_k is
  // (1/n'!) v (x) [f^{k, descending} . f_a^{n'} . 1] in V(-(lambda+mu)-rho)
  Weight slam = rd.reflect(simpleIdx, lambda);
  std::vector<std::pair<int, std::vector<int>>> unknowns;
  for (int v = 0; v < V.dim; ++v) {
    auto gc = rd.weightInRootCoords(V.wt[v] - slam);
    std::vector<long> g(rd.rank());
    bool ok = true;
    for (int i = 0; i < rd.rank(); ++i) {
      if (!isInteger(gc[i]) || gc[i] < 0) {
        ok = false;
        break;
      }
      g[i] = toLong(gc[i]);
    }
    if (!ok) continue;
    for (auto& k : monomialsWithRootSum(rd, g)) unknowns.push_back({v, k});
  }
  // images per unknown, grouped by the V index (the map is M-factor only)
  ClassicalVerma::Vec seed;
  seed[std::vector<int>(alg_->numPos(), 0)] = Rat(1);
  for (long rep = 0; rep < nPrime; ++rep) seed = cv.actF(simpleIdx, seed);
  Rat invFactP = Rat(1) / factorial(static_cast<int>(nPrime));
  std::map<int, std::vector<size_t>> byV;
  std::vector<ClassicalVerma::Vec> images(unknowns.size());
  for (size_t u = 0; u < unknowns.size(); ++u) {
    auto& [v, k] = unknowns[u];
    ClassicalVerma::Vec img = seed;
    for (int slot = 0; slot < alg_->numPos(); ++slot)
      for (int rep = 0; rep < k[slot]; ++rep) img = cv.actF(slot, img);
    for (auto& [m, q] : img) img[m] = q * invFactP;
    images[u] = std::move(img);
    byV[v].push_back(u);
  }
  // z grouped by V index
  std::map<int, std::map<std::vector<int>, HbarLaurent>> zByV;
  for (auto& [key, h] : z) zByV[key.first][key.second] = h;

  ClassicalVec out;
  out.V = &V;
  for (auto& [v, us] : byV) {
    // collect the monomial support
    std::map<std::vector<int>, int> rowIndex;
    for (size_t u : us)
      for (auto& [m, q] : images[u])
        if (!rowIndex.count(m)) rowIndex[m] = static_cast<int>(rowIndex.size());
    auto zit = zByV.find(v);
    if (zit != zByV.end())
      for (auto& [m, h] : zit->second)
        if (!rowIndex.count(m)) rowIndex[m] = static_cast<int>(rowIndex.size());
    if (rowIndex.empty()) continue;
    QMatrix A(static_cast<int>(rowIndex.size()), static_cast<int>(us.size()));
    for (size_t j = 0; j < us.size(); ++j)
      for (auto& [m, q] : images[us[j]]) A.at(rowIndex[m], static_cast<int>(j)) = q;
    // split the rhs by hbar power
    std::map<int, std::vector<Rat>> rhs;
    if (zit != zByV.end())
      for (auto& [m, h] : zit->second)
        for (auto& [pw, cc] : h.terms()) {
          auto& col = rhs[pw];
          if (col.empty()) col.assign(rowIndex.size(), Rat(0));
          col[rowIndex[m]] = cc;
        }
    for (auto& [pw, b] : rhs) {
      auto sol = A.solve(b);
      if (!sol) throw std::runtime_error("psiStep: transported vector not in the image");
      for (size_t j = 0; j < us.size(); ++j)
        if ((*sol)[j] != 0)
          out.add(unknowns[us[j]].first, unknowns[us[j]].second,
                  HbarLaurent::hbarPow(pw) * (*sol)[j]);
    }
    // consistency: A sol = b is guaranteed by solve; nothing else to check
  }
  // zero rhs components for v's without unknowns must indeed be zero
  for (auto& [v, zm] : zByV)
    if (!byV.count(v) && !zm.empty())
      throw std::runtime_error("psiStep: transported vector escapes the target support");
  return out;
}

ClassicalVec IntertwinerOracle::psiWord(const ClassicalVec& y, const Weight& lambda,
                                        const Weight& mu, const WeylWord& w) {
  const auto& rd = alg_->rootDatum();
  ClassicalVec cur = y;
  Weight lam = lambda, m = mu;
  for (int pos = w.length() - 1; pos >= 0; --pos) {
    int a = w.w[pos];
    cur = psiStep(cur, lam, m, a);
    lam = rd.reflect(a, lam);
    m = rd.reflect(a, m);
  }
  return cur;
}

QMatrix IntertwinerOracle::dwMatrix(const WeightModule& V, const Weight& lambda,
                                    const WeylWord& w, const Weight& mu) {
  const auto& rd = alg_->rootDatum();
  auto basis = singularBasis(V, lambda, mu);
  size_t m = basis.size();
  auto lamSlots = V.weightSpace(lambda);
  if (m != lamSlots.size())
    throw std::runtime_error("dwMatrix: mu is not sufficiently large (rank drop)");
  auto asRat = [](const HbarLaurent& h) {
    if (h.isZero()) return Rat(0);
    assert(h.terms().size() == 1 && h.terms().begin()->first == 0);
    return h.terms().begin()->second;
  };
  QMatrix E0(static_cast<int>(m), static_cast<int>(m));
  for (size_t j = 0; j < m; ++j) {
    auto e = expectation(basis[j], lambda);
    for (size_t a = 0; a < m; ++a) E0.at(static_cast<int>(a), static_cast<int>(j)) = asRat(e[a]);
  }
  auto inv = E0.inverse();
  if (!inv) throw std::runtime_error("dwMatrix: expectation map not invertible (mu too small)");
  Weight wlam = rd.act(w, lambda);
  QMatrix E1(static_cast<int>(m), static_cast<int>(m));
  for (size_t j = 0; j < m; ++j) {
    ClassicalVec img = psiWord(basis[j], lambda, mu, w);
    auto e = expectation(img, wlam);
    assert(e.size() == m);
    for (size_t a = 0; a < m; ++a) E1.at(static_cast<int>(a), static_cast<int>(j)) = asRat(e[a]);
  }
  return E1 * (*inv);
}

// -----------------------------------------------------------------------

RatS RatS::operator+(const RatS& o) const {
  return RatS{num * o.den + o.num * den, den * o.den};
}

RatS RatS::operator*(const RatS& o) const { return RatS{num * o.num, den * o.den}; }

bool RatS::equals(const RatS& o) const { return num * o.den == o.num * den; }

std::string RatS::str() const {
  if (den.isConstant()) {
    Rat d = den.constantTerm();
    return (num * (Rat(1) / d)).str();
  }
  return "(" + num.str() + ") / (" + den.str() + ")";
}

namespace {

std::vector<PolyS> linearFormCandidates(const RootDatum& rd, int maxN) {
  std::vector<PolyS> out;
  for (auto& beta : rd.positiveRoots()) {
    std::vector<Rat> co(rd.rank());
    for (int i = 0; i < rd.rank(); ++i) co[i] = Rat(beta.corootCoord[i]);
    for (int sign : {1, -1}) {
      std::vector<Rat> c = co;
      for (auto& x : c) x *= sign;
      for (int n = -maxN; n <= maxN; ++n) out.push_back(PolyS::linear(c, Rat(n)));
    }
  }
  return out;
}

}  // namespace

bool factorLinearForms(const RootDatum& rd, const PolyS& p, std::vector<PolyS>* factors) {
  PolyS rem = p;
  if (rem.isZero()) return false;
  int maxN = rem.degree() / 2 + 8;
  auto cands = linearFormCandidates(rd, maxN);
  bool progress = true;
  while (!rem.isConstant() && progress) {
    progress = false;
    for (auto& L : cands) {
      bool ok = false;
      PolyS q = rem.divideExact(L, &ok);
      if (ok) {
        if (factors) factors->push_back(L);
        rem = q;
        progress = true;
        break;
      }
    }
  }
  return rem.isConstant();
}

RatS reduceRatS(const RootDatum& rd, RatS r) {
  if (r.num.isZero()) return RatS{PolyS(), PolyS(Rat(1))};
  std::vector<PolyS> denFactors;
  if (!factorLinearForms(rd, r.den, &denFactors)) return r;  // leave unreduced
  PolyS denRebuilt(Rat(1));
  for (auto& L : denFactors) denRebuilt *= L;
  bool okc = false;
  PolyS constPart = r.den.divideExact(denRebuilt, &okc);
  assert(okc && constPart.isConstant());
  PolyS num = r.num * (Rat(1) / constPart.constantTerm());
  PolyS newDen(Rat(1));
  for (auto& L : denFactors) {
    bool ok = false;
    PolyS q = num.divideExact(L, &ok);
    if (ok)
      num = q;
    else
      newDen *= L;
  }
  return RatS{num, newDen};
}

DWMatrix dwAlg(ThetaContext& ctx, const WeightModule& V, const Weight& lambda,
               const WeylWord& w) {
  const auto& rd = ctx.algebra().rootDatum();
  if (w.length() == 0) {
    size_t m = V.weightSpace(lambda).size();
    DWMatrix out;
    out.lambda = lambda;
    out.wlambda = lambda;
    out.m.assign(m, std::vector<RatS>(m, RatS::of(PolyS())));
    for (size_t a = 0; a < m; ++a) out.m[a][a] = RatS::of(PolyS(Rat(1)));
    return out;
  }
  // peel the leftmost letter: w = s_a w', M_w = M_{s_a}^{w' lambda} . s_a(M_{w'})
  int a = w.w.front();
  WeylWord rest(std::vector<int>(w.w.begin() + 1, w.w.end()));
  DWMatrix inner = dwAlg(ctx, V, lambda, rest);
  Weight lam1 = rd.act(rest, lambda);
  // simple-reflection matrix at lam1
  const InvariantBasis& b0 = ctx.invariants(V, lam1);
  Weight slam1 = rd.reflect(a, lam1);
  size_t m = b0.gens.size();
  // the kappa^{-1} coefficients live in the Q_h slot of the localized tensor
  // and pick up the s-twist under the final identification, so the matrix of
  // 'DW is T s(K)^{-1}
  WeylWord sTw{a};
  std::vector<std::vector<PolyS>> K(m, std::vector<PolyS>(m)), T(m, std::vector<PolyS>(m));
  for (size_t j = 0; j < m; ++j) {
    auto kj = kappaAlg(b0.gens[j]);
    for (size_t r = 0; r < m; ++r) K[r][j] = rd.weylActPoly(sTw, kj[r]);
    TensorVec th = ctx.thetaS(b0.gens[j], a);
    auto tj = kappaAlg(th);
    for (size_t r = 0; r < m; ++r) T[r][j] = tj[r];
  }
  PolyS det = polyDet(K);
  if (det.isZero()) throw std::runtime_error("dwAlg: kappa matrix singular");
  // adjugate of K
  std::vector<std::vector<PolyS>> adj(m, std::vector<PolyS>(m));
  for (size_t r = 0; r < m; ++r)
    for (size_t cidx = 0; cidx < m; ++cidx) {
      std::vector<std::vector<PolyS>> minor(m - 1, std::vector<PolyS>(m - 1));
      for (size_t i = 0, ii = 0; i < m; ++i) {
        if (i == cidx) continue;
        for (size_t j = 0, jj = 0; j < m; ++j) {
          if (j == r) continue;
          minor[ii][jj++] = K[i][j];
        }
        ++ii;
      }
      PolyS cof = polyDet(minor);
      adj[r][cidx] = ((r + cidx) % 2) ? -cof : cof;
    }
  // scalar of Lemma 8.3.1 at lam1
  long la = lam1[a];
  std::vector<Rat> co(rd.rank());
  for (int i = 0; i < rd.rank(); ++i) co[i] = Rat(-rd.positiveRoots()[a].corootCoord[i]);
  PolyS minusCoroot = PolyS::linear(co, Rat(0));
  RatS scalar = RatS::of(PolyS(Rat(1)));
  if (la >= 0) {
    PolyS p(Rat(1));
    for (long j = 0; j < la; ++j) p *= (minusCoroot + PolyS::hbar() * Rat(j));
    scalar = RatS{PolyS(Rat(1)), p};
  } else {
    PolyS p(Rat(1));
    for (long j = 1; j <= -la; ++j) p *= (minusCoroot - PolyS::hbar() * Rat(j));
    scalar = RatS::of(p);
  }
  DWMatrix step;
  step.lambda = lam1;
  step.wlambda = slam1;
  step.m.assign(m, std::vector<RatS>(m, RatS::of(PolyS())));
  for (size_t r = 0; r < m; ++r)
    for (size_t cidx = 0; cidx < m; ++cidx) {
      PolyS numSum;
      for (size_t j = 0; j < m; ++j) numSum += T[r][j] * adj[j][cidx];
      step.m[r][cidx] = reduceRatS(rd, RatS{numSum * scalar.num, det * scalar.den});
    }
  // compose: M_w = step . s_a(inner)
  WeylWord sa{a};
  DWMatrix out;
  out.lambda = lambda;
  out.wlambda = rd.reflect(a, lam1);
  size_t rows = step.m.size(), cols = inner.m.empty() ? 0 : inner.m[0].size();
  out.m.assign(rows, std::vector<RatS>(cols, RatS::of(PolyS())));
  for (size_t r = 0; r < rows; ++r)
    for (size_t cidx = 0; cidx < cols; ++cidx) {
      RatS acc = RatS::of(PolyS());
      for (size_t j = 0; j < step.m[r].size(); ++j) {
        const RatS& in = inner.m[j][cidx];
        RatS tw{rd.weylActPoly(sa, in.num), rd.weylActPoly(sa, in.den)};
        acc = acc + step.m[r][j] * tw;
      }
      out.m[r][cidx] = reduceRatS(rd, acc);
    }
  return out;
}

bool dwMatchesOracle(const RootDatum& rd, const DWMatrix& dw, const QMatrix& oracle,
                     const Weight& wmu) {
  std::vector<Rat> pt(wmu.rank());
  for (int i = 0; i < wmu.rank(); ++i) pt[i] = Rat(wmu[i]);
  for (size_t r = 0; r < dw.m.size(); ++r)
    for (size_t c = 0; c < dw.m[r].size(); ++c) {
      PolyS numEv = dw.m[r][c].num.specializeMu(pt);
      PolyS denEv = dw.m[r][c].den.specializeMu(pt);
      if (denEv.isZero()) return false;
      // entry equals oracle(r,c) iff numEv == q denEv in Q[hbar, 1/hbar]
      if (!(numEv == denEv * oracle.at(static_cast<int>(r), static_cast<int>(c)))) return false;
    }
  return true;
}

}  // namespace averma
