#include "averma/liealg.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <stdexcept>

namespace averma {

bool AlgElt::isZero() const {
  if (!e.empty() || !f.empty()) return false;
  for (auto& x : h)
    if (x != 0) return false;
  return true;
}

namespace {

AlgElt scaled(const AlgElt& x, const Rat& c) {
  AlgElt r;
  if (c == 0) return r;
  for (auto& [i, v] : x.e) r.e[i] = v * c;
  for (auto& [i, v] : x.f) r.f[i] = v * c;
  if (!x.h.empty()) {
    r.h = x.h;
    for (auto& v : r.h) v *= c;
  }
  return r;
}

void addInto(AlgElt& a, const AlgElt& b, const Rat& c) {
  if (c == 0) return;
  for (auto& [i, v] : b.e) {
    a.e[i] += v * c;
    if (a.e[i] == 0) a.e.erase(i);
  }
  for (auto& [i, v] : b.f) {
    a.f[i] += v * c;
    if (a.f[i] == 0) a.f.erase(i);
  }
  if (!b.h.empty()) {
    if (a.h.empty()) a.h.assign(b.h.size(), Rat(0));
    for (size_t i = 0; i < b.h.size(); ++i) a.h[i] += b.h[i] * c;
  }
}

std::vector<int> negated(const std::vector<int>& v) {
  std::vector<int> r = v;
  for (auto& x : r) x = -x;
  return r;
}

}  // namespace

ChevalleyAlgebra::ChevalleyAlgebra(RootDatum rd) : rd_(std::move(rd)) {
  solveSigns();
  if (!jacobiHolds()) throw std::runtime_error("Chevalley constants violate Jacobi");
}

ChevalleyAlgebra::ChevalleyAlgebra(RootDatum rd, std::map<std::pair<int, int>, Rat> table)
    : rd_(std::move(rd)), n_(std::move(table)) {
  if (!jacobiHolds()) throw std::runtime_error("stored Chevalley constants violate Jacobi");
}

int ChevalleyAlgebra::stringDown(const std::vector<int>& gamma, const std::vector<int>& beta) const {
  int i = 1;
  while (true) {
    std::vector<int> g = gamma;
    for (size_t j = 0; j < g.size(); ++j) g[j] -= i * beta[j];
    bool zero = true;
    for (int x : g)
      if (x != 0) zero = false;
    if (zero || !rd_.isRoot(g)) return i - 1;
    ++i;
  }
}

void ChevalleyAlgebra::solveSigns() {
  const int n = rd_.numPositive();
  // signed root of a code
  auto rootOf = [&](int code) {
    std::vector<int> r = rd_.positiveRoots()[code / 2].rootCoord;
    if (code % 2) r = negated(r);
    return r;
  };
  auto codeOf = [&](const std::vector<int>& root) -> int {
    int id = rd_.rootIndex(root);
    if (id >= 0) return 2 * id;
    id = rd_.rootIndex(negated(root));
    assert(id >= 0);
    return 2 * id + 1;
  };
  auto negCode = [&](int code) { return code ^ 1; };

  // collect unordered pair orbits {(a,b),(b,a),(-a,-b),(-b,-a)} for pairs
  // whose sum is a nonzero root
  struct Orbit {
    int repA, repB;  // canonical representative
    int magnitude;
  };
  std::vector<Orbit> orbits;
  std::map<std::pair<int, int>, std::pair<int, Rat>> where;  // pair -> (orbit, sign vs rep)
  for (int a = 0; a < 2 * n; ++a)
    for (int b = 0; b < 2 * n; ++b) {
      if (a == b || a == negCode(b)) continue;
      auto ra = rootOf(a), rb = rootOf(b);
      std::vector<int> sum = ra;
      for (size_t j = 0; j < sum.size(); ++j) sum[j] += rb[j];
      bool zero = true;
      for (int x : sum)
        if (x != 0) zero = false;
      if (zero || !rd_.isRoot(sum)) continue;
      if (where.count({a, b})) continue;
      int mag = stringDown(rb, ra) + 1;
      int o = static_cast<int>(orbits.size());
      orbits.push_back(Orbit{a, b, mag});
      where[{a, b}] = {o, Rat(1)};
      where[{b, a}] = {o, Rat(-1)};
      where[{negCode(a), negCode(b)}] = {o, Rat(-1)};
      where[{negCode(b), negCode(a)}] = {o, Rat(1)};
    }

  // pin extraspecial orbits: for each composite positive root delta, the
  // positive pair (beta, gamma), beta+gamma=delta with minimal beta id
  std::vector<int> pinned(orbits.size(), 0);  // 0 free, +1/-1 forced sign of rep
  for (int d = 0; d < n; ++d) {
    const auto& delta = rd_.positiveRoots()[d].rootCoord;
    int bestB = -1, bestG = -1;
    for (int b = 0; b < n; ++b) {
      std::vector<int> g = delta;
      bool ok = true;
      for (size_t j = 0; j < g.size(); ++j) {
        g[j] -= rd_.positiveRoots()[b].rootCoord[j];
        if (g[j] < 0) ok = false;
      }
      if (!ok) continue;
      int gi = rd_.rootIndex(g);
      if (gi < 0 || gi == b) continue;
      if (bestB < 0 || b < bestB) {
        bestB = b;
        bestG = gi;
      }
    }
    if (bestB < 0) continue;  // simple root
    auto it = where.find({2 * bestB, 2 * bestG});
    assert(it != where.end());
    auto [o, sgn] = it->second;
    // force N_{bestB,bestG} = +magnitude
    pinned[o] = sgn > 0 ? 1 : -1;
  }

  std::vector<int> freeIdx;
  for (size_t o = 0; o < orbits.size(); ++o)
    if (!pinned[o]) freeIdx.push_back(static_cast<int>(o));
  if (freeIdx.size() > 20) throw std::runtime_error("root system too large for sign search");

  std::vector<int> signs(orbits.size(), 0);
  auto install = [&](const std::vector<int>& s) {
    n_.clear();
    for (auto& [key, loc] : where) {
      auto [o, sgn] = loc;
      n_[key] = Rat(orbits[o].magnitude) * Rat(s[o]) * sgn;
    }
  };
  long total = 1L << freeIdx.size();
  for (long mask = 0; mask < total; ++mask) {
    for (size_t o = 0; o < orbits.size(); ++o) signs[o] = pinned[o] ? pinned[o] : 0;
    for (size_t i = 0; i < freeIdx.size(); ++i)
      signs[freeIdx[i]] = (mask >> i) & 1 ? 1 : -1;
    install(signs);
    efCache_.clear();
    if (jacobiHolds()) return;
  }
  throw std::runtime_error("no Jacobi-consistent sign assignment found");
}

AlgElt ChevalleyAlgebra::bracketBasis(int codeA, int codeB) const {
  AlgElt r;
  int ia = codeA / 2, ib = codeB / 2;
  bool na = codeA % 2, nb = codeB % 2;
  const auto& ra = rd_.positiveRoots()[ia].rootCoord;
  const auto& rb = rd_.positiveRoots()[ib].rootCoord;
  std::vector<int> sum(ra.size());
  for (size_t j = 0; j < sum.size(); ++j)
    sum[j] = (na ? -ra[j] : ra[j]) + (nb ? -rb[j] : rb[j]);
  bool zero = true;
  for (int x : sum)
    if (x != 0) zero = false;
  if (zero) {
    // [e_beta, f_beta] = coroot(beta); [f,e] is the negative
    assert(ia == ib && na != nb);
    r.h.assign(rd_.rank(), Rat(0));
    for (int i = 0; i < rd_.rank(); ++i)
      r.h[i] = Rat(rd_.positiveRoots()[ia].corootCoord[i]) * (na ? -1 : 1);
    return r;
  }
  auto it = n_.find({codeA, codeB});
  if (it == n_.end()) return r;
  int id = rd_.rootIndex(sum);
  if (id >= 0)
    r.e[id] = it->second;
  else
    r.f[rd_.rootIndex(negated(sum))] = it->second;
  return r;
}

AlgElt ChevalleyAlgebra::bracket(const AlgElt& x, const AlgElt& y) const {
  AlgElt r;
  for (auto& [a, ca] : x.e) {
    for (auto& [b, cb] : y.e) addInto(r, bracketBasis(2 * a, 2 * b), ca * cb);
    for (auto& [b, cb] : y.f) addInto(r, bracketBasis(2 * a, 2 * b + 1), ca * cb);
  }
  for (auto& [a, ca] : x.f) {
    for (auto& [b, cb] : y.e) addInto(r, bracketBasis(2 * a + 1, 2 * b), ca * cb);
    for (auto& [b, cb] : y.f) addInto(r, bracketBasis(2 * a + 1, 2 * b + 1), ca * cb);
  }
  if (!x.h.empty()) {
    // [h, e_b] = beta(h) e_b, [h, f_b] = -beta(h) f_b
    for (auto& [b, cb] : y.e) {
      Rat p(0);
      for (int i = 0; i < rd_.rank(); ++i)
        p += x.h[i] * rd_.rootPairCoroot(rd_.positiveRoots()[b].rootCoord, i);
      AlgElt t;
      t.e[b] = 1;
      addInto(r, t, p * cb);
    }
    for (auto& [b, cb] : y.f) {
      Rat p(0);
      for (int i = 0; i < rd_.rank(); ++i)
        p += x.h[i] * rd_.rootPairCoroot(rd_.positiveRoots()[b].rootCoord, i);
      AlgElt t;
      t.f[b] = 1;
      addInto(r, t, -p * cb);
    }
  }
  if (!y.h.empty()) {
    for (auto& [a, ca] : x.e) {
      Rat p(0);
      for (int i = 0; i < rd_.rank(); ++i)
        p += y.h[i] * rd_.rootPairCoroot(rd_.positiveRoots()[a].rootCoord, i);
      AlgElt t;
      t.e[a] = 1;
      addInto(r, t, -p * ca);
    }
    for (auto& [a, ca] : x.f) {
      Rat p(0);
      for (int i = 0; i < rd_.rank(); ++i)
        p += y.h[i] * rd_.rootPairCoroot(rd_.positiveRoots()[a].rootCoord, i);
      AlgElt t;
      t.f[a] = 1;
      addInto(r, t, p * ca);
    }
  }
  return r;
}

const AlgElt& ChevalleyAlgebra::efBracket(int i, int beta) const {
  auto key = std::make_pair(i, beta);
  auto it = efCache_.find(key);
  if (it != efCache_.end()) return it->second;
  return efCache_[key] = bracketBasis(2 * i, 2 * beta + 1);
}

std::optional<std::pair<Rat, int>> ChevalleyAlgebra::ffBracket(int a, int b) const {
  std::vector<int> sum = rd_.positiveRoots()[a].rootCoord;
  for (size_t j = 0; j < sum.size(); ++j) sum[j] += rd_.positiveRoots()[b].rootCoord[j];
  int id = rd_.rootIndex(sum);
  if (id < 0) return std::nullopt;
  auto it = n_.find({2 * a + 1, 2 * b + 1});
  if (it == n_.end() || it->second == 0) return std::nullopt;
  return std::make_pair(it->second, id);
}

bool ChevalleyAlgebra::jacobiHolds() const {
  std::vector<AlgElt> basis;
  for (int i = 0; i < rd_.numPositive(); ++i) {
    AlgElt e, f;
    e.e[i] = 1;
    f.f[i] = 1;
    basis.push_back(e);
    basis.push_back(f);
  }
  for (int i = 0; i < rd_.rank(); ++i) {
    AlgElt h;
    h.h.assign(rd_.rank(), Rat(0));
    h.h[i] = 1;
    basis.push_back(h);
  }
  const size_t m = basis.size();
  for (size_t a = 0; a < m; ++a)
    for (size_t b = a + 1; b < m; ++b)
      for (size_t c = b + 1; c < m; ++c) {
        AlgElt s = bracket(basis[a], bracket(basis[b], basis[c]));
        addInto(s, bracket(basis[b], bracket(basis[c], basis[a])), Rat(1));
        addInto(s, bracket(basis[c], bracket(basis[a], basis[b])), Rat(1));
        if (!s.isZero()) return false;
      }
  return true;
}

ClassicalVerma::ClassicalVerma(const ChevalleyAlgebra& alg, std::vector<Rat> eta)
    : alg_(&alg), eta_(std::move(eta)) {
  assert(static_cast<int>(eta_.size()) == alg.rank());
}

std::vector<Rat> ClassicalVerma::weightOf(const Mono& m) const {
  const auto& rd = alg_->rootDatum();
  std::vector<Rat> w = eta_;
  for (int s = 0; s < static_cast<int>(m.size()); ++s)
    if (m[s])
      for (int i = 0; i < rd.rank(); ++i)
        w[i] -= Rat(m[s]) * rd.rootPairCoroot(rd.positiveRoots()[s].rootCoord, i);
  return w;
}

namespace {
int topSlot(const std::vector<int>& m) {
  for (int s = static_cast<int>(m.size()) - 1; s >= 0; --s)
    if (m[s]) return s;
  return -1;
}
void vecAdd(ClassicalVerma::Vec& a, const ClassicalVerma::Vec& b, const Rat& c) {
  if (c == 0) return;
  for (auto& [m, v] : b) {
    auto it = a.find(m);
    if (it == a.end()) {
      a[m] = v * c;
    } else {
      it->second += v * c;
      if (it->second == 0) a.erase(it);
    }
  }
}
}  // namespace

ClassicalVerma::Vec ClassicalVerma::actFMono(int b, const Mono& m) const {
  auto key = std::make_pair(b, m);
  auto hit = fCache_.find(key);
  if (hit != fCache_.end()) return hit->second;
  Vec r;
  int t = topSlot(m);
  if (t <= b) {  // prepending keeps the descending normal form
    Mono m2 = m;
    m2[b] += 1;
    r[m2] = 1;
  } else {
    Mono m1 = m;
    m1[t] -= 1;
    // f_b f_t = f_t f_b + [f_b, f_t]
    Vec inner = actFMono(b, m1);
    for (auto& [mm, c] : inner) vecAdd(r, actFMono(t, mm), c);
    if (auto ff = alg_->ffBracket(b, t)) vecAdd(r, actFMono(ff->second, m1), ff->first);
  }
  fCache_[key] = r;
  return r;
}

ClassicalVerma::Vec ClassicalVerma::actEMono(int a, const Mono& m) const {
  auto key = std::make_pair(a, m);
  auto hit = eCache_.find(key);
  if (hit != eCache_.end()) return hit->second;
  Vec r;
  int t = topSlot(m);
  if (t >= 0) {
    Mono m1 = m;
    m1[t] -= 1;
    // e_a f_t = f_t e_a + [e_a, f_t]
    Vec inner = actEMono(a, m1);
    for (auto& [mm, c] : inner) vecAdd(r, actFMono(t, mm), c);
    const AlgElt& br = alg_->efBracket(a, t);
    if (!br.h.empty()) {
      Vec hv;
      hv[m1] = 1;
      vecAdd(r, actH(br.h, hv), Rat(1));
    }
    for (auto& [id, c] : br.e) vecAdd(r, actEMono(id, m1), c);
    for (auto& [id, c] : br.f) vecAdd(r, actFMono(id, m1), c);
  }
  eCache_[key] = r;
  return r;
}

ClassicalVerma::Vec ClassicalVerma::actE(int rootId, const Vec& v) const {
  Vec r;
  for (auto& [m, c] : v) vecAdd(r, actEMono(rootId, m), c);
  return r;
}

ClassicalVerma::Vec ClassicalVerma::actF(int rootId, const Vec& v) const {
  Vec r;
  for (auto& [m, c] : v) vecAdd(r, actFMono(rootId, m), c);
  return r;
}

ClassicalVerma::Vec ClassicalVerma::actH(const std::vector<Rat>& h, const Vec& v) const {
  Vec r;
  for (auto& [m, c] : v) {
    auto w = weightOf(m);
    Rat p(0);
    for (size_t i = 0; i < h.size(); ++i) p += h[i] * w[i];
    if (p * c != 0) r[m] = p * c;
  }
  return r;
}

ClassicalVerma::Vec ClassicalVerma::act(const AlgElt& x, const Vec& v) const {
  Vec r;
  for (auto& [id, c] : x.e) vecAdd(r, actE(id, v), c);
  for (auto& [id, c] : x.f) vecAdd(r, actF(id, v), c);
  if (!x.h.empty()) vecAdd(r, actH(x.h, v), Rat(1));
  return r;
}

std::vector<int> WeightModule::weightSpace(const Weight& lam) const {
  std::vector<int> out;
  for (int i = 0; i < dim; ++i)
    if (wt[i] == lam) out.push_back(i);
  return out;
}

QMatrix WeightModule::actT(const std::vector<Rat>& h) const {
  QMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    Rat p(0);
    for (size_t j = 0; j < h.size(); ++j) p += h[j] * Rat(wt[i][static_cast<int>(j)]);
    m.at(i, i) = p;
  }
  return m;
}

bool WeightModule::bracketRelationsHold() const {
  const auto& rd = alg->rootDatum();
  std::vector<std::pair<AlgElt, QMatrix>> gens;
  for (int b = 0; b < rd.numPositive(); ++b) {
    AlgElt e, f;
    e.e[b] = 1;
    f.f[b] = 1;
    gens.push_back({e, eMat[b]});
    gens.push_back({f, fMat[b]});
  }
  for (int i = 0; i < rd.rank(); ++i) {
    AlgElt h;
    h.h.assign(rd.rank(), Rat(0));
    h.h[i] = 1;
    gens.push_back({h, actT(h.h)});
  }
  auto matOf = [&](const AlgElt& x) {
    QMatrix m(dim, dim);
    for (auto& [id, c] : x.e)
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m.at(i, j) += c * eMat[id].at(i, j);
    for (auto& [id, c] : x.f)
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m.at(i, j) += c * fMat[id].at(i, j);
    if (!x.h.empty()) {
      QMatrix t = actT(x.h);
      for (int i = 0; i < dim; ++i) m.at(i, i) += t.at(i, i);
    }
    return m;
  };
  for (auto& [x, mx] : gens)
    for (auto& [y, my] : gens) {
      QMatrix lhs = mx * my - my * mx;
      if (!(lhs == matOf(alg->bracket(x, y)))) return false;
    }
  return true;
}

int WeightModule::depth() const {
  const auto& rd = alg->rootDatum();
  int d = 0;
  for (int i = 0; i < dim; ++i) {
    auto c = rd.weightInRootCoords(highest - wt[i]);
    Rat h(0);
    for (auto& x : c) h += x;
    assert(isInteger(h));
    d = std::max(d, static_cast<int>(toLong(h)));
  }
  return d;
}

std::map<Weight, long> freudenthalMultiplicities(const RootDatum& rd, const Weight& nu) {
  if (!nu.isDominant()) throw std::runtime_error("freudenthal: non-dominant highest weight");
  Weight w0nu = rd.act(rd.longestElement(), nu);
  auto box = rd.weightInRootCoords(nu - w0nu);
  std::vector<long> lim(rd.rank());
  for (int i = 0; i < rd.rank(); ++i) {
    assert(isInteger(box[i]) && box[i] >= 0);
    lim[i] = toLong(box[i]);
  }
  // enumerate gamma in the box, grouped by height
  std::vector<std::vector<std::vector<long>>> byHeight;
  std::vector<long> gamma(rd.rank(), 0);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == rd.rank()) {
      long h = 0;
      for (long x : gamma) h += x;
      if (static_cast<size_t>(h) >= byHeight.size()) byHeight.resize(h + 1);
      byHeight[h].push_back(gamma);
      return;
    }
    for (long v = 0; v <= lim[pos]; ++v) {
      gamma[pos] = v;
      rec(pos + 1);
    }
    gamma[pos] = 0;
  };
  rec(0);

  auto weightOfGamma = [&](const std::vector<long>& g) {
    Weight mu = nu;
    for (int i = 0; i < rd.rank(); ++i) {
      std::vector<int> ai(rd.rank(), 0);
      ai[i] = 1;
      for (int j = 0; j < rd.rank(); ++j) mu[j] -= g[i] * rd.rootPairCoroot(ai, j);
    }
    return mu;
  };
  auto rootAsWeight = [&](const Root& beta) {
    Weight w = Weight::zero(rd.rank());
    for (int j = 0; j < rd.rank(); ++j) w[j] = rd.rootPairCoroot(beta.rootCoord, j);
    return w;
  };

  std::map<std::vector<long>, long> mult;
  std::map<Weight, long> out;
  Weight rho = rd.rho();
  Rat topNorm = rd.innerProduct(nu + rho, nu + rho);
  for (size_t h = 0; h < byHeight.size(); ++h)
    for (auto& g : byHeight[h]) {
      if (h == 0) {
        mult[g] = 1;
        out[nu] = 1;
        continue;
      }
      Weight mu = weightOfGamma(g);
      Rat num(0);
      for (auto& beta : rd.positiveRoots()) {
        std::vector<long> g2 = g;
        while (true) {
          bool ok = true;
          for (int i = 0; i < rd.rank(); ++i) {
            g2[i] -= beta.rootCoord[i];
            if (g2[i] < 0) ok = false;
          }
          if (!ok) break;
          auto it = mult.find(g2);
          long m = it == mult.end() ? 0 : it->second;
          if (m) {
            Weight muj = weightOfGamma(g2);
            num += Rat(2 * m) * rd.innerProduct(muj, rootAsWeight(beta));
          }
        }
      }
      Rat den = topNorm - rd.innerProduct(mu + rho, mu + rho);
      if (den == 0) {  // mu + rho is W-conjugate to nu + rho, so mult is 0
        assert(num == 0);
        mult[g] = 0;
        continue;
      }
      Rat m = num / den;
      assert(isInteger(m) && m >= 0);
      long mm = toLong(m);
      mult[g] = mm;
      if (mm > 0) out[mu] = mm;
    }
  return out;
}

long weylDimension(const RootDatum& rd, const Weight& nu) {
  Weight rho = rd.rho();
  Rat d(1);
  for (auto& beta : rd.positiveRoots()) {
    Weight bw = Weight::zero(rd.rank());
    for (int j = 0; j < rd.rank(); ++j) bw[j] = rd.rootPairCoroot(beta.rootCoord, j);
    d *= rd.innerProduct(nu + rho, bw) / rd.innerProduct(rho, bw);
  }
  assert(isInteger(d));
  return toLong(d);
}

namespace {
}  // namespace

// all exponent vectors over positive roots with given root-coordinate sum
std::vector<std::vector<int>> monomialsWithRootSum(const RootDatum& rd, const std::vector<long>& target) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(rd.numPositive(), 0);
  std::function<void(int, std::vector<long>)> rec = [&](int slot, std::vector<long> rest) {
    bool zero = true;
    for (long x : rest)
      if (x != 0) zero = false;
    if (zero) {
      out.push_back(cur);  // remaining slots are forced to zero
      return;
    }
    if (slot >= rd.numPositive()) return;
    const auto& beta = rd.positiveRoots()[slot].rootCoord;
    for (int k = 0;; ++k) {
      bool ok = true;
      std::vector<long> r2 = rest;
      for (int i = 0; i < rd.rank(); ++i) {
        r2[i] -= static_cast<long>(k) * beta[i];
        if (r2[i] < 0) ok = false;
      }
      if (!ok) break;
      cur[slot] = k;
      rec(slot + 1, r2);
    }
    cur[slot] = 0;
  };
  rec(0, target);
  std::sort(out.begin(), out.end());
  return out;
}

WeightModule buildIrrep(const ChevalleyAlgebra& alg, const Weight& nu) {
  const auto& rd = alg.rootDatum();
  if (!nu.isDominant()) throw std::runtime_error("buildIrrep: non-dominant highest weight");
  WeightModule V;
  V.alg = &alg;
  V.highest = nu;
  V.label = rd.name() + ":" + nu.str();

  if (rd.rank() == 1 && rd.numPositive() == 1) {
    // rank one: basis pinned by e.v_k = k v_{k-1}, coroot.v_k = (n-2k) v_k
    long n = nu[0];
    V.dim = static_cast<int>(n + 1);
    V.eMat.assign(1, QMatrix(V.dim, V.dim));
    V.fMat.assign(1, QMatrix(V.dim, V.dim));
    for (long k = 0; k <= n; ++k) {
      Weight w = Weight::zero(1);
      w[0] = n - 2 * k;
      V.wt.push_back(w);
      if (k >= 1) V.eMat[0].at(static_cast<int>(k - 1), static_cast<int>(k)) = Rat(k);
      if (k < n) V.fMat[0].at(static_cast<int>(k + 1), static_cast<int>(k)) = Rat(n - k);
    }
    return V;
  }

  auto mults = freudenthalMultiplicities(rd, nu);
  std::vector<Rat> etaQ(rd.rank());
  for (int i = 0; i < rd.rank(); ++i) etaQ[i] = Rat(nu[i]);
  ClassicalVerma verma(alg, etaQ);

  struct Space {
    Weight mu;
    std::vector<std::vector<int>> monos;      // candidate monomials
    std::vector<int> pivots;                  // chosen basis monomial indices
    QMatrix gram;                             // full gram on monos
    std::vector<int> globalIndex;             // per pivot
  };
  std::vector<Space> spaces;
  std::map<Weight, int> spaceOf;

  auto contravariantPairing = [&](const std::vector<int>& a, const std::vector<int>& b) {
    // < f^a . 1, f^b . 1 > = coefficient of 1 in tau(f^a) f^b . 1, where the
    // transpose of f_{n-1}^{a}...f_0^{a} acts with the highest id innermost
    ClassicalVerma::Vec v;
    v[b] = 1;
    for (int id = rd.numPositive() - 1; id >= 0; --id)
      for (int k = 0; k < a[id]; ++k) v = verma.actE(id, v);
    std::vector<int> empty(rd.numPositive(), 0);
    auto it = v.find(empty);
    return it == v.end() ? Rat(0) : it->second;
  };

  int globalDim = 0;
  for (auto& [mu, mult] : mults) {
    Space sp;
    sp.mu = mu;
    auto gammaCoords = rd.weightInRootCoords(nu - mu);
    std::vector<long> g(rd.rank());
    for (int i = 0; i < rd.rank(); ++i) {
      assert(isInteger(gammaCoords[i]));
      g[i] = toLong(gammaCoords[i]);
    }
    sp.monos = monomialsWithRootSum(rd, g);
    int m = static_cast<int>(sp.monos.size());
    sp.gram = QMatrix(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        Rat p = contravariantPairing(sp.monos[i], sp.monos[j]);
        sp.gram.at(i, j) = p;
        sp.gram.at(j, i) = p;
      }
    std::vector<int> piv;
    sp.gram.rref(&piv);
    if (static_cast<long>(piv.size()) != mult)
      throw std::runtime_error("buildIrrep: rank disagrees with Freudenthal");
    sp.pivots = piv;
    spaceOf[mu] = static_cast<int>(spaces.size());
    for (size_t i = 0; i < piv.size(); ++i) {
      sp.globalIndex.push_back(globalDim++);
      V.wt.push_back(mu);
    }
    spaces.push_back(std::move(sp));
  }
  V.dim = globalDim;
  if (V.dim != weylDimension(rd, nu)) throw std::runtime_error("buildIrrep: dimension mismatch");

  // a Verma vector with zero image in the quotient pairs to zero against
  // every monomial of its weight space
  auto assertRadical = [&](const ClassicalVerma::Vec& vec, const Weight& mu) {
    if (vec.empty()) return;
    auto gammaCoords = rd.weightInRootCoords(nu - mu);
    std::vector<long> g(rd.rank());
    for (int i = 0; i < rd.rank(); ++i) {
      if (!isInteger(gammaCoords[i]) || gammaCoords[i] < 0)
        throw std::runtime_error("buildIrrep: nonzero vector outside the Verma support");
      g[i] = toLong(gammaCoords[i]);
    }
    for (auto& mono : monomialsWithRootSum(rd, g)) {
      Rat p(0);
      for (auto& [m, c] : vec) p += c * contravariantPairing(mono, m);
      if (p != 0) throw std::runtime_error("buildIrrep: image escapes the form radical");
    }
  };

  // project a Verma vector of weight mu onto the chosen basis modulo the
  // form radical: solve Gram[:,pivots] c = Gram . coords
  auto project = [&](const ClassicalVerma::Vec& vec, const Weight& mu) {
    std::vector<std::pair<int, Rat>> out;  // (global index, coeff)
    if (vec.empty()) return out;
    auto it = spaceOf.find(mu);
    if (it == spaceOf.end()) {
      assertRadical(vec, mu);
      return out;
    }
    const Space& sp = spaces[it->second];
    int m = static_cast<int>(sp.monos.size());
    std::vector<Rat> coords(m, Rat(0));
    for (auto& [mono, c] : vec) {
      auto pos = std::lower_bound(sp.monos.begin(), sp.monos.end(), mono);
      assert(pos != sp.monos.end() && *pos == mono);
      coords[pos - sp.monos.begin()] = c;
    }
    std::vector<Rat> rhs = sp.gram.apply(coords);
    QMatrix a(m, static_cast<int>(sp.pivots.size()));
    for (int i = 0; i < m; ++i)
      for (size_t j = 0; j < sp.pivots.size(); ++j) a.at(i, static_cast<int>(j)) = sp.gram.at(i, sp.pivots[j]);
    auto sol = a.solve(rhs);
    assert(sol.has_value());
    for (size_t j = 0; j < sol->size(); ++j)
      if ((*sol)[j] != 0) out.push_back({sp.globalIndex[j], (*sol)[j]});
    return out;
  };

  V.eMat.assign(rd.numPositive(), QMatrix(V.dim, V.dim));
  V.fMat.assign(rd.numPositive(), QMatrix(V.dim, V.dim));
  for (auto& sp : spaces) {
    for (size_t j = 0; j < sp.pivots.size(); ++j) {
      ClassicalVerma::Vec v;
      v[sp.monos[sp.pivots[j]]] = 1;
      int col = sp.globalIndex[j];
      for (int id = 0; id < rd.numPositive(); ++id) {
        Weight betaW = Weight::zero(rd.rank());
        for (int i = 0; i < rd.rank(); ++i)
          betaW[i] = rd.rootPairCoroot(rd.positiveRoots()[id].rootCoord, i);
        auto ev = verma.actE(id, v);
        for (auto& [gi, c] : project(ev, sp.mu + betaW)) V.eMat[id].at(gi, col) = c;
        auto fv = verma.actF(id, v);
        for (auto& [gi, c] : project(fv, sp.mu - betaW)) V.fMat[id].at(gi, col) = c;
      }
    }
  }
  return V;
}

WeightModule tensorModule(const WeightModule& a, const WeightModule& b) {
  if (a.alg != b.alg) throw std::runtime_error("tensorModule: algebra mismatch");
  const auto& rd = a.alg->rootDatum();
  WeightModule V;
  V.alg = a.alg;
  V.dim = a.dim * b.dim;
  V.highest = a.highest + b.highest;
  V.label = a.label + "(x)" + b.label;
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < b.dim; ++j) V.wt.push_back(a.wt[i] + b.wt[j]);
  auto mix = [&](const QMatrix& ma, const QMatrix& mb) {
    QMatrix m(V.dim, V.dim);
    for (int i = 0; i < a.dim; ++i)
      for (int i2 = 0; i2 < a.dim; ++i2) {
        if (ma.at(i2, i) == 0) continue;
        for (int j = 0; j < b.dim; ++j) m.at(i2 * b.dim + j, i * b.dim + j) += ma.at(i2, i);
      }
    for (int j = 0; j < b.dim; ++j)
      for (int j2 = 0; j2 < b.dim; ++j2) {
        if (mb.at(j2, j) == 0) continue;
        for (int i = 0; i < a.dim; ++i) m.at(i * b.dim + j2, i * b.dim + j) += mb.at(j2, j);
      }
    return m;
  };
  for (int id = 0; id < rd.numPositive(); ++id) {
    V.eMat.push_back(mix(a.eMat[id], b.eMat[id]));
    V.fMat.push_back(mix(a.fMat[id], b.fMat[id]));
  }
  return V;
}

}  // namespace averma
