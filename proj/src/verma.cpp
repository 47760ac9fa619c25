#include "averma/verma.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace averma {

LeviDatum LeviDatum::full(const ChevalleyAlgebra& alg) {
  std::vector<int> simples;
  for (int i = 0; i < alg.rank(); ++i) simples.push_back(i);
  return sub(alg, simples);
}

LeviDatum LeviDatum::sub(const ChevalleyAlgebra& alg, std::vector<int> simples) {
  LeviDatum l;
  l.alg = &alg;
  std::sort(simples.begin(), simples.end());
  l.simples = std::move(simples);
  const auto& rd = alg.rootDatum();
  std::vector<bool> in(rd.rank(), false);
  for (int i : l.simples) in[i] = true;
  for (int id = 0; id < rd.numPositive(); ++id) {
    const auto& beta = rd.positiveRoots()[id].rootCoord;
    bool ok = true;
    for (int i = 0; i < rd.rank(); ++i)
      if (beta[i] != 0 && !in[i]) ok = false;
    if (ok) l.posIds.push_back(id);
  }
  l.rhoPair.assign(rd.rank(), Rat(0));
  for (int id : l.posIds)
    for (int i = 0; i < rd.rank(); ++i)
      l.rhoPair[i] += Rat(rd.rootPairCoroot(rd.positiveRoots()[id].rootCoord, i)) / 2;
  return l;
}

bool LeviDatum::isFull() const {
  return static_cast<int>(simples.size()) == alg->rank();
}

VermaModule::VermaModule(LeviDatum levi, Weight lambda)
    : VermaModule(std::move(levi), std::move(lambda), {}) {}

VermaModule::VermaModule(LeviDatum levi, Weight lambda, std::vector<int> slotToPos)
    : levi_(std::move(levi)), lambda_(std::move(lambda)), slotToPos_(std::move(slotToPos)) {
  if (slotToPos_.empty()) slotToPos_ = levi_.posIds;
  assert(slotToPos_.size() == levi_.posIds.size());
  for (int s = 0; s < numSlots(); ++s) posToSlot_[slotToPos_[s]] = s;
}

VermaModule VermaModule::withRootLast(int posId) const {
  std::vector<int> order;
  for (int p : slotToPos_)
    if (p != posId) order.push_back(p);
  assert(posToSlot_.count(posId));
  order.push_back(posId);
  return VermaModule(levi_, lambda_, order);
}

int VermaModule::slotOfPos(int posId) const {
  auto it = posToSlot_.find(posId);
  return it == posToSlot_.end() ? -1 : it->second;
}

Weight VermaModule::gammaOf(const Pbw& k) const {
  const auto& rd = algebra().rootDatum();
  Weight g = Weight::zero(rd.rank());
  for (int s = 0; s < numSlots(); ++s)
    if (k[s])
      for (int i = 0; i < rd.rank(); ++i)
        g[i] += k[s] * rd.rootPairCoroot(rd.positiveRoots()[slotToPos_[s]].rootCoord, i);
  return g;
}

long VermaModule::heightOf(const Pbw& k) const {
  long h = 0;
  for (int x : k) h += x;
  return h;
}

namespace {

int lastSlot(const Pbw& k) {
  for (int s = static_cast<int>(k.size()) - 1; s >= 0; --s)
    if (k[s]) return s;
  return -1;
}

void vecAdd(VermaModule::Vec& a, const VermaModule::Vec& b, const PolyS& c) {
  if (c.isZero()) return;
  for (auto& [m, p] : b) {
    PolyS q = p * c;
    if (q.isZero()) continue;
    auto it = a.find(m);
    if (it == a.end()) {
      a[m] = std::move(q);
    } else {
      it->second += q;
      if (it->second.isZero()) a.erase(it);
    }
  }
}

}  // namespace

// multiplier for a Cartan element moved to the far left across f^k and the
// tensor boundary: h + hbar (lambda + rho_L + gamma(k))(h)
PolyS VermaModule::hMultiplier(const std::vector<Rat>& h, const Pbw& k) const {
  const auto& rd = algebra().rootDatum();
  PolyS lin = PolyS::linear(h, Rat(0));
  Rat shift(0);
  Weight gamma = gammaOf(k);
  for (int i = 0; i < rd.rank(); ++i)
    shift += h[i] * (Rat(lambda_[i]) + levi_.rhoPair[i] + Rat(gamma[i]));
  return lin + PolyS::hbar() * shift;
}

VermaModule::Vec VermaModule::actFMono(int posId, const Pbw& k) const {
  auto key = std::make_pair(posId, k);
  auto hit = fCache_.find(key);
  if (hit != fCache_.end()) return hit->second;
  int slot = slotOfPos(posId);
  assert(slot >= 0 && "actF: root not in this module");
  Vec r;
  int last = lastSlot(k);
  if (last <= slot) {
    Pbw k2 = k;
    k2[slot] += 1;
    r[k2] = PolyS(Rat(1));
  } else {
    Pbw k1 = k;
    k1[last] -= 1;
    // f^k f_b = (f^{k'} f_b) f_last + hbar f^{k'} [f_last, f_b]
    r = actF(slotToPos_[last], actFMono(posId, k1));
    if (auto ff = algebra().ffBracket(slotToPos_[last], posId))
      vecAdd(r, actFMono(ff->second, k1), PolyS::hbar() * ff->first);
  }
  fCache_[key] = r;
  return r;
}

VermaModule::Vec VermaModule::actEMono(int posId, const Pbw& k) const {
  auto key = std::make_pair(posId, k);
  auto hit = eCache_.find(key);
  if (hit != eCache_.end()) return hit->second;
  Vec r;
  int last = lastSlot(k);
  if (last >= 0) {
    Pbw k1 = k;
    k1[last] -= 1;
    // f^k e = (f^{k'} e) f_last - hbar f^{k'} [e, f_last]
    r = actF(slotToPos_[last], actEMono(posId, k1));
    const AlgElt& br = algebra().efBracket(posId, slotToPos_[last]);
    PolyS mh = -PolyS::hbar();
    if (!br.h.empty()) {
      Vec t;
      t[k1] = hMultiplier(br.h, k1);
      vecAdd(r, t, mh);
    }
    for (auto& [id, c] : br.e) vecAdd(r, actEMono(id, k1), mh * c);
    for (auto& [id, c] : br.f) vecAdd(r, actFMono(id, k1), mh * c);
  }
  eCache_[key] = r;
  return r;
}

VermaModule::Vec VermaModule::actE(int posId, const Vec& v) const {
  Vec r;
  for (auto& [k, p] : v) vecAdd(r, actEMono(posId, k), p);
  return r;
}

VermaModule::Vec VermaModule::actF(int posId, const Vec& v) const {
  Vec r;
  for (auto& [k, p] : v) vecAdd(r, actFMono(posId, k), p);
  return r;
}

VermaModule::Vec VermaModule::actH(const std::vector<Rat>& h, const Vec& v) const {
  Vec r;
  for (auto& [k, p] : v) {
    PolyS q = p * hMultiplier(h, k);
    if (!q.isZero()) r[k] = std::move(q);
  }
  return r;
}

void TensorVec::add(int vIdx, const Pbw& k, const PolyS& p) {
  if (p.isZero()) return;
  auto key = std::make_pair(vIdx, k);
  auto it = c.find(key);
  if (it == c.end()) {
    c[key] = p;
  } else {
    it->second += p;
    if (it->second.isZero()) c.erase(it);
  }
}

TensorVec TensorVec::operator+(const TensorVec& o) const {
  assert(V == o.V);
  TensorVec r = *this;
  for (auto& [key, p] : o.c) r.add(key.first, key.second, p);
  return r;
}

TensorVec TensorVec::operator-(const TensorVec& o) const {
  assert(V == o.V);
  TensorVec r = *this;
  for (auto& [key, p] : o.c) r.add(key.first, key.second, -p);
  return r;
}

TensorVec TensorVec::scaled(const PolyS& s) const {
  TensorVec r;
  r.V = V;
  r.M = M;
  for (auto& [key, p] : c) {
    PolyS q = p * s;
    if (!q.isZero()) r.c[key] = std::move(q);
  }
  return r;
}

bool TensorVec::operator==(const TensorVec& o) const { return c == o.c; }

std::optional<int> TensorVec::homogeneousDegree() const {
  std::optional<int> d;
  for (auto& [key, p] : c) {
    if (!p.isHomogeneous()) return std::nullopt;
    int dd = p.degree() + 2 * static_cast<int>(M->heightOf(key.second));
    if (d && *d != dd) return std::nullopt;
    d = dd;
  }
  return d;
}

bool TensorVec::hasAdjointWeightZero() const {
  for (auto& [key, p] : c) {
    Weight w = V->wt[key.first] - M->lambda() - M->gammaOf(key.second);
    if (!w.isZero()) return false;
  }
  return true;
}

std::string TensorVec::str() const {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [key, p] : c) {
    if (!first) os << " + ";
    first = false;
    os << "v" << key.first << "(x)[" << p.str() << "](x)f(";
    for (size_t s = 0; s < key.second.size(); ++s) os << (s ? "," : "") << key.second[s];
    os << ")";
  }
  return os.str();
}

TensorVec rightActE(const TensorVec& x, int posId) {
  TensorVec r;
  r.V = x.V;
  r.M = x.M;
  PolyS mh = -PolyS::hbar();
  for (auto& [key, p] : x.c) {
    const auto& [v, k] = key;
    VermaModule::Vec mono;
    mono[k] = PolyS(Rat(1));
    for (auto& [k2, q] : x.M->actE(posId, mono)) r.add(v, k2, p * q);
    for (int v2 = 0; v2 < x.V->dim; ++v2) {
      const Rat& a = x.V->eMat[posId].at(v2, v);
      if (a != 0) r.add(v2, k, p * mh * a);
    }
  }
  return r;
}

TensorVec rightActF(const TensorVec& x, int posId) {
  TensorVec r;
  r.V = x.V;
  r.M = x.M;
  PolyS mh = -PolyS::hbar();
  for (auto& [key, p] : x.c) {
    const auto& [v, k] = key;
    VermaModule::Vec mono;
    mono[k] = PolyS(Rat(1));
    for (auto& [k2, q] : x.M->actF(posId, mono)) r.add(v, k2, p * q);
    for (int v2 = 0; v2 < x.V->dim; ++v2) {
      const Rat& a = x.V->fMat[posId].at(v2, v);
      if (a != 0) r.add(v2, k, p * mh * a);
    }
  }
  return r;
}

TensorVec rightActH(const TensorVec& x, const std::vector<Rat>& h) {
  TensorVec r;
  r.V = x.V;
  r.M = x.M;
  const auto& rd = x.M->algebra().rootDatum();
  for (auto& [key, p] : x.c) {
    const auto& [v, k] = key;
    VermaModule::Vec mono;
    mono[k] = PolyS(Rat(1));
    for (auto& [k2, q] : x.M->actH(h, mono)) r.add(v, k2, p * q);
    Rat wpair = rd.pairT(x.V->wt[v], h);
    if (wpair != 0) r.add(v, k, p * (-PolyS::hbar()) * wpair);
  }
  return r;
}

TensorVec adjointE(const TensorVec& x, int simpleIdx) {
  // hbar ad e(x) = hbar (e.x on the V factor) - (module-side right action);
  // the module part is divisible by hbar and the quotient is exact
  TensorVec r;
  r.V = x.V;
  r.M = x.M;
  int posId = simpleIdx;  // simple roots head the canonical root order
  assert(x.M->algebra().rootDatum().positiveRoots()[posId].height() == 1);
  for (auto& [key, p] : x.c) {
    const auto& [v, k] = key;
    for (int v2 = 0; v2 < x.V->dim; ++v2) {
      const Rat& a = x.V->eMat[posId].at(v2, v);
      if (a != 0) r.add(v2, k, p * a);
    }
    VermaModule::Vec mono;
    mono[k] = PolyS(Rat(1));
    for (auto& [k2, q] : x.M->actE(posId, mono)) {
      bool ok = false;
      PolyS divided = q.divideExact(PolyS::hbar(), &ok);
      if (!ok) throw std::runtime_error("adjointE: module action not divisible by hbar");
      r.add(v, k2, p * (-divided));
    }
  }
  return r;
}

bool isBInvariant(const TensorVec& x, const LeviDatum& levi) {
  if (!x.hasAdjointWeightZero()) return false;
  for (int i : levi.simples)
    if (!adjointE(x, i).isZero()) return false;
  return true;
}

std::vector<PolyS> kappaAlg(const TensorVec& x) {
  auto slots = x.V->weightSpace(x.M->lambda());
  std::vector<PolyS> out(slots.size());
  Pbw zero(x.M->numSlots(), 0);
  for (size_t j = 0; j < slots.size(); ++j) {
    auto it = x.c.find({slots[j], zero});
    if (it != x.c.end()) out[j] = it->second;
  }
  return out;
}

bool SpecTensorVec::operator==(const SpecTensorVec& o) const { return c == o.c; }

void SpecTensorVec::add(int vIdx, const Pbw& k, const HbarLaurent& h) {
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

SpecTensorVec SpecTensorVec::operator-(const SpecTensorVec& o) const {
  SpecTensorVec r = *this;
  for (auto& [key, h] : o.c) r.add(key.first, key.second, h * Rat(-1));
  return r;
}

SpecTensorVec SpecTensorVec::scaled(const HbarLaurent& s) const {
  SpecTensorVec r;
  r.V = V;
  for (auto& [key, h] : c) {
    HbarLaurent q = h * s;
    if (!q.isZero()) r.c[key] = std::move(q);
  }
  return r;
}

std::string SpecTensorVec::str() const {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [key, h] : c) {
    if (!first) os << " + ";
    first = false;
    os << "v" << key.first << "(x)[" << h.str() << "](x)f(";
    for (size_t s = 0; s < key.second.size(); ++s) os << (s ? "," : "") << key.second[s];
    os << ")";
  }
  return os.str();
}

SpecTensorVec spMu(const TensorVec& x, const std::vector<Rat>& mu) {
  SpecTensorVec r;
  r.V = x.V;
  for (auto& [key, p] : x.c) {
    HbarLaurent h = toLaurent(p.specializeMu(mu));
    if (!h.isZero()) r.c[key] = std::move(h);
  }
  return r;
}

SpecTensorVec spMu(const TensorVec& x, const Weight& mu) {
  std::vector<Rat> m(mu.rank());
  for (int i = 0; i < mu.rank(); ++i) m[i] = Rat(mu[i]);
  return spMu(x, m);
}

namespace {
HbarLaurent specialize0(const PolyS& p, int rank) {
  std::vector<Rat> zero(rank, Rat(0));
  return toLaurent(p.specializeMu(zero));
}
}  // namespace

SpecTensorVec specRightActE(const VermaModule& eta, const SpecTensorVec& x, int posId) {
  SpecTensorVec r;
  r.V = x.V;
  int rank = eta.algebra().rank();
  for (auto& [key, h] : x.c) {
    const auto& [v, k] = key;
    VermaModule::Vec mono;
    mono[k] = PolyS(Rat(1));
    for (auto& [k2, q] : eta.actE(posId, mono)) r.add(v, k2, h * specialize0(q, rank));
    for (int v2 = 0; v2 < x.V->dim; ++v2) {
      const Rat& a = x.V->eMat[posId].at(v2, v);
      if (a != 0) r.add(v2, k, h * (HbarLaurent::hbarPow(1) * Rat(-a)));
    }
  }
  return r;
}

SpecTensorVec specRightActF(const VermaModule& eta, const SpecTensorVec& x, int posId) {
  SpecTensorVec r;
  r.V = x.V;
  int rank = eta.algebra().rank();
  for (auto& [key, h] : x.c) {
    const auto& [v, k] = key;
    VermaModule::Vec mono;
    mono[k] = PolyS(Rat(1));
    for (auto& [k2, q] : eta.actF(posId, mono)) r.add(v, k2, h * specialize0(q, rank));
    for (int v2 = 0; v2 < x.V->dim; ++v2) {
      const Rat& a = x.V->fMat[posId].at(v2, v);
      if (a != 0) r.add(v2, k, h * (HbarLaurent::hbarPow(1) * Rat(-a)));
    }
  }
  return r;
}

TensorVec classicalLimit(const TensorVec& x) {
  TensorVec r;
  r.V = x.V;
  r.M = x.M;
  for (auto& [key, p] : x.c) {
    PolyS q = p.setHbarZero();
    if (!q.isZero()) r.c[key] = std::move(q);
  }
  return r;
}

TensorVec classicalAdjointE(const TensorVec& x, int simpleIdx) {
  TensorVec r;
  r.V = x.V;
  r.M = x.M;
  const VermaModule& M = *x.M;
  const auto& alg = M.algebra();
  int posId = simpleIdx;
  for (auto& [key, p] : x.c) {
    const auto& [v, k] = key;
    for (int v2 = 0; v2 < x.V->dim; ++v2) {
      const Rat& a = x.V->eMat[posId].at(v2, v);
      if (a != 0) r.add(v2, k, p * a);
    }
    // derivation over the y-monomial: [e_i, f_beta] taken mod u
    for (int s = 0; s < M.numSlots(); ++s) {
      if (!k[s]) continue;
      const AlgElt& br = alg.efBracket(posId, M.posOfSlot(s));
      Pbw k1 = k;
      k1[s] -= 1;
      if (!br.h.empty()) {
        PolyS hp = PolyS::linear(br.h, Rat(0));  // the coroot as a t-polynomial
        r.add(v, k1, p * hp * Rat(k[s]));
      }
      for (auto& [id, cc] : br.f) {
        int s2 = M.slotOfPos(id);
        assert(s2 >= 0);
        Pbw k2 = k1;
        k2[s2] += 1;
        r.add(v, k2, p * (cc * Rat(k[s])));
      }
      // e parts vanish in S(g/u)
    }
  }
  return r;
}

bool isClassicalInvariant(const TensorVec& x, const LeviDatum& levi) {
  if (!x.hasAdjointWeightZero()) return false;
  for (int i : levi.simples)
    if (!classicalAdjointE(x, i).isZero()) return false;
  return true;
}

TensorVec restrictLevi(const TensorVec& x, const VermaModule& target) {
  assert(target.lambda() == x.M->lambda());
  TensorVec r;
  r.V = x.V;
  r.M = &target;
  for (auto& [key, p] : x.c) {
    const auto& [v, k] = key;
    Pbw k2(target.numSlots(), 0);
    bool keep = true;
    for (int s = 0; s < x.M->numSlots(); ++s) {
      if (!k[s]) continue;
      int s2 = target.slotOfPos(x.M->posOfSlot(s));
      if (s2 < 0) {
        keep = false;
        break;
      }
      k2[s2] = k[s];
    }
    if (keep) r.add(v, k2, p);
  }
  return r;
}

long monomialCount(int halfDegree, int nvars) {
  if (halfDegree < 0) return 0;
  Rat c(1);
  for (int i = 1; i <= nvars - 1; ++i) c *= Rat(halfDegree + i) / Rat(i);
  return toLong(c);
}

Weight sufficientlyLarge(const WeightModule& V, const Weight& lambda, int margin) {
  int d = V.depth();
  Weight mu = Weight::zero(lambda.rank());
  for (int i = 0; i < lambda.rank(); ++i)
    mu[i] = -(d + std::abs(lambda[i]) + 2 + margin);
  return mu;
}

// ---------------------------------------------------------------------------
// degreewise invariant solver

namespace {

// monomials over module slots with prescribed lowered root-sum
std::vector<Pbw> slotMonomialsWithGamma(const VermaModule& M, const std::vector<long>& gammaRoot) {
  const auto& rd = M.algebra().rootDatum();
  std::vector<Pbw> out;
  Pbw cur(M.numSlots(), 0);
  std::function<void(int, std::vector<long>)> rec = [&](int slot, std::vector<long> rest) {
    bool zero = true;
    for (long x : rest)
      if (x != 0) zero = false;
    if (zero) {
      out.push_back(cur);
      return;
    }
    if (slot >= M.numSlots()) return;
    const auto& beta = rd.positiveRoots()[M.posOfSlot(slot)].rootCoord;
    for (int kk = 0;; ++kk) {
      std::vector<long> r2 = rest;
      bool ok = true;
      for (int i = 0; i < rd.rank(); ++i) {
        r2[i] -= static_cast<long>(kk) * beta[i];
        if (r2[i] < 0) ok = false;
      }
      if (!ok) break;
      cur[slot] = kk;
      rec(slot + 1, r2);
    }
    cur[slot] = 0;
  };
  rec(0, gammaRoot);
  std::sort(out.begin(), out.end());
  return out;
}

// coefficient monomials of given total degree in the first `rank` t-variables
// and, when withHbar, in hbar
std::vector<Mono> coeffMonomials(int deg, int rank, bool withHbar) {
  std::vector<Mono> out;
  if (deg < 0) return out;
  Mono cur{};
  std::function<void(int, int)> rec = [&](int var, int rest) {
    if (var == rank) {
      if (withHbar) {
        cur.e[kHbar] = static_cast<int16_t>(rest);
        out.push_back(cur);
        cur.e[kHbar] = 0;
      } else if (rest == 0) {
        out.push_back(cur);
      }
      return;
    }
    for (int d = 0; d <= rest; ++d) {
      cur.e[var] = static_cast<int16_t>(d);
      rec(var + 1, rest - d);
    }
    cur.e[var] = 0;
  };
  rec(0, deg);
  return out;
}

struct PairTable {
  std::vector<std::pair<int, Pbw>> pairs;  // (vIdx, k) with wt(v) = lambda + gamma(k)
  std::map<std::pair<int, Pbw>, int> index;
  // adjoint action of each Levi-simple on v (x) 1 (x) f^k
  std::vector<std::map<std::pair<int, Pbw>, PolyS>> ad;  // [si * pairs.size() + p]
  std::vector<int> simples;
};

PairTable buildPairs(const WeightModule& V, const VermaModule& M, bool classical) {
  const auto& rd = M.algebra().rootDatum();
  PairTable t;
  t.simples = M.levi().simples;
  for (int v = 0; v < V.dim; ++v) {
    Weight gamma = V.wt[v] - M.lambda();
    auto gc = rd.weightInRootCoords(gamma);
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
    for (auto& k : slotMonomialsWithGamma(M, g)) t.pairs.push_back({v, k});
  }
  for (size_t p = 0; p < t.pairs.size(); ++p) t.index[t.pairs[p]] = static_cast<int>(p);
  t.ad.resize(t.simples.size() * t.pairs.size());
  for (size_t si = 0; si < t.simples.size(); ++si)
    for (size_t p = 0; p < t.pairs.size(); ++p) {
      TensorVec x;
      x.V = &V;
      x.M = &M;
      x.c[t.pairs[p]] = PolyS(Rat(1));
      TensorVec a = classical ? classicalAdjointE(x, t.simples[si]) : adjointE(x, t.simples[si]);
      t.ad[si * t.pairs.size() + p] = std::move(a.c);
    }
  return t;
}

}  // namespace

static InvariantBasis solveInvariants(const WeightModule& V, const VermaModule& M,
                                      SolverOptions opt, bool classical) {
  const auto& rd = M.algebra().rootDatum();
  InvariantBasis out;
  out.rank = static_cast<int>(V.weightSpace(M.lambda()).size());
  out.lambdaIsWeight = out.rank > 0;
  int maxHalf = opt.maxHalfDegree >= 0 ? opt.maxHalfDegree : V.depth() + 3;
  out.truncationHalfDegree = maxHalf;
  const int nvars = rd.rank() + (classical ? 0 : 1);

  PairTable table = buildPairs(V, M, classical);

  std::vector<TensorVec> gens;
  std::vector<int> genHalf;

  for (int d = 0; d <= maxHalf; ++d) {
    std::vector<std::pair<int, Mono>> unknowns;
    struct KeyLess {
      bool operator()(const std::pair<int, Mono>& a, const std::pair<int, Mono>& b) const {
        if (a.first != b.first) return a.first < b.first;
        return MonoLess{}(a.second, b.second);
      }
    };
    std::map<std::pair<int, Mono>, int, KeyLess> uindex;
    for (size_t p = 0; p < table.pairs.size(); ++p) {
      int h = static_cast<int>(M.heightOf(table.pairs[p].second));
      if (h > d) continue;
      for (auto& m : coeffMonomials(d - h, rd.rank(), !classical)) {
        uindex[{static_cast<int>(p), m}] = static_cast<int>(unknowns.size());
        unknowns.push_back({static_cast<int>(p), m});
      }
    }
    struct RowKeyLess {
      bool operator()(const std::tuple<int, std::pair<int, Pbw>, Mono>& a,
                      const std::tuple<int, std::pair<int, Pbw>, Mono>& b) const {
        if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
        if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
        return MonoLess{}(std::get<2>(a), std::get<2>(b));
      }
    };
    std::map<std::tuple<int, std::pair<int, Pbw>, Mono>, std::map<int, Rat>, RowKeyLess> rows;
    for (size_t u = 0; u < unknowns.size(); ++u) {
      auto [p, mono] = unknowns[u];
      for (size_t si = 0; si < table.simples.size(); ++si) {
        for (auto& [outKey, poly] : table.ad[si * table.pairs.size() + p]) {
          for (auto& [pm, pc] : poly.terms()) {
            Mono om = pm;
            for (int i = 0; i <= kMaxRank; ++i) om.e[i] = static_cast<int16_t>(om.e[i] + mono.e[i]);
            auto& row = rows[{static_cast<int>(si), outKey, om}];
            row[static_cast<int>(u)] += pc;
            if (row[static_cast<int>(u)] == 0) row.erase(static_cast<int>(u));
          }
        }
      }
    }
    std::vector<std::map<int, Rat>> rowList;
    rowList.reserve(rows.size());
    for (auto& [key, row] : rows)
      if (!row.empty()) rowList.push_back(std::move(row));
    auto kernel = sparseKernel(std::move(rowList), static_cast<int>(unknowns.size()));
    long hd = static_cast<long>(kernel.size());
    out.hilbert.push_back(hd);

    long expected = 0;
    for (int g : genHalf) expected += monomialCount(d - g, nvars);
    if (hd < expected)
      throw std::runtime_error("bInvariants: invariant space smaller than the free prediction");
    if (hd > expected) {
      // sparse row space spanned by monomial multiples of known generators
      std::map<int, std::map<int, Rat>> span;
      auto reduce = [&](std::map<int, Rat> row) {
        while (!row.empty()) {
          auto it = span.find(row.begin()->first);
          if (it == span.end()) break;
          Rat f = row.begin()->second;
          for (auto& [col, val] : it->second) {
            auto jt = row.find(col);
            if (jt == row.end()) {
              Rat nv = -f * val;
              if (nv != 0) row[col] = nv;
            } else {
              jt->second -= f * val;
              if (jt->second == 0) row.erase(jt);
            }
          }
        }
        return row;
      };
      auto insert = [&](std::map<int, Rat> row) {
        row = reduce(std::move(row));
        if (row.empty()) return;
        Rat f = row.begin()->second;
        for (auto& [col, val] : row) val /= f;
        span[row.begin()->first] = std::move(row);
      };
      auto toRow = [&](const TensorVec& g) {
        std::map<int, Rat> row;
        for (auto& [key, poly] : g.c) {
          auto pit = table.index.find(key);
          assert(pit != table.index.end());
          for (auto& [pm, pc] : poly.terms()) {
            auto it = uindex.find({pit->second, pm});
            assert(it != uindex.end());
            row[it->second] += pc;
            if (row[it->second] == 0) row.erase(it->second);
          }
        }
        return row;
      };
      for (size_t j = 0; j < gens.size(); ++j)
        for (auto& m : coeffMonomials(d - genHalf[j], rd.rank(), !classical)) {
          PolyS mp;
          mp.addTerm(m, Rat(1));
          insert(toRow(gens[j].scaled(mp)));
        }
      for (auto& kv : kernel) {
        std::map<int, Rat> row;
        for (size_t u = 0; u < kv.size(); ++u)
          if (kv[u] != 0) row[static_cast<int>(u)] = kv[u];
        row = reduce(std::move(row));
        if (row.empty()) continue;
        TensorVec g;
        g.V = &V;
        g.M = &M;
        for (auto& [u, val] : row) {
          auto [pi, mono] = unknowns[u];
          PolyS mp;
          mp.addTerm(mono, val);
          g.add(table.pairs[pi].first, table.pairs[pi].second, mp);
        }
        // deterministic normalization: leading coefficient of the first
        // stored term becomes one
        Rat lead = g.c.begin()->second.leadingCoeff();
        g = g.scaled(PolyS(Rat(1) / lead));
        gens.push_back(g);
        genHalf.push_back(d);
        Rat f = row.begin()->second;
        for (auto& [col, val] : row) val /= f;
        span[row.begin()->first] = std::move(row);
      }
    }
    if (static_cast<int>(gens.size()) == out.rank) {
      int lastGen = genHalf.empty() ? 0 : *std::max_element(genHalf.begin(), genHalf.end());
      if (d >= lastGen + opt.verifyWindow) {
        out.truncationHalfDegree = d;
        break;
      }
    }
  }

  if (static_cast<int>(gens.size()) != out.rank)
    throw std::runtime_error("bInvariants: generator count disagrees with dim V_lambda");
  out.gens = std::move(gens);
  for (int g : genHalf) out.degrees.push_back(2 * g);
  out.freenessCertified = true;
  return out;
}

InvariantBasis bInvariants(const WeightModule& V, const VermaModule& M, SolverOptions opt) {
  return solveInvariants(V, M, opt, false);
}

InvariantBasis classicalBInvariants(const WeightModule& V, const VermaModule& M, SolverOptions opt) {
  return solveInvariants(V, M, opt, true);
}

}  // namespace averma
