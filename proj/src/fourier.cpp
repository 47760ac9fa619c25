#include "averma/fourier.hpp"

#include <cassert>
#include <sstream>
#include <stdexcept>

#include "averma/qmatrix.hpp"

namespace averma {

WeylElt WeylElt::gen(int pairs, bool isX, int i) {
  WeylElt g(pairs);
  WeylMono m{std::vector<int>(pairs, 0), std::vector<int>(pairs, 0)};
  (isX ? m.x : m.d)[i] = 1;
  g.c_[m] = PolyS(Rat(1));
  return g;
}

void WeylElt::add(const WeylMono& m, const PolyS& p) {
  if (p.isZero()) return;
  auto it = c_.find(m);
  if (it == c_.end()) {
    c_[m] = p;
  } else {
    it->second += p;
    if (it->second.isZero()) c_.erase(it);
  }
}

WeylElt WeylElt::operator+(const WeylElt& o) const {
  assert(n_ == o.n_);
  WeylElt r = *this;
  for (auto& [m, p] : o.c_) r.add(m, p);
  return r;
}

WeylElt WeylElt::operator-(const WeylElt& o) const {
  assert(n_ == o.n_);
  WeylElt r = *this;
  for (auto& [m, p] : o.c_) r.add(m, -p);
  return r;
}

WeylElt WeylElt::operator*(const Rat& s) const {
  WeylElt r(n_);
  if (s == 0) return r;
  for (auto& [m, p] : c_) r.c_[m] = p * s;
  return r;
}

bool WeylElt::operator==(const WeylElt& o) const { return c_ == o.c_; }

int WeylElt::xefWeight() const {
  bool first = true;
  int w = 0;
  for (auto& [m, p] : c_) {
    int t = 0;
    for (int v : m.x) t += v;
    for (int v : m.d) t -= v;
    if (first) {
      w = t;
      first = false;
    } else if (t != w) {
      throw std::runtime_error("xefWeight: element is not weight-homogeneous");
    }
  }
  return w;
}

std::string WeylElt::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [m, p] : c_) {
    if (!first) os << " + ";
    first = false;
    os << "[" << p.str() << "]";
    for (int i = 0; i < n_; ++i)
      if (m.x[i]) {
        os << "*x" << (i + 1);
        if (m.x[i] > 1) os << "^" << m.x[i];
      }
    for (int i = 0; i < n_; ++i)
      if (m.d[i]) {
        os << "*D" << (i + 1);
        if (m.d[i] > 1) os << "^" << m.d[i];
      }
  }
  return os.str();
}

WeylElt weylMul(const WeylElt& a, const WeylElt& b) {
  if (a.pairs() != b.pairs()) throw std::runtime_error("weylMul: size mismatch");
  int n = a.pairs();
  WeylElt r(n);
  for (auto& [ma, pa] : a.terms())
    for (auto& [mb, pb] : b.terms()) {
      // normal-order D^{ma.d} x^{mb.x} per pair:
      // D^m x^k = sum_j j! C(m,j) C(k,j) hbar^j x^{k-j} D^{m-j}
      std::vector<std::pair<WeylMono, PolyS>> parts{{WeylMono{std::vector<int>(n, 0), std::vector<int>(n, 0)}, pa * pb}};
      for (int i = 0; i < n; ++i) {
        int m = ma.d[i], k = mb.x[i];
        std::vector<std::pair<WeylMono, PolyS>> next;
        for (int j = 0; j <= std::min(m, k); ++j) {
          Rat coef = factorial(j) * binomial(Rat(m), j) * binomial(Rat(k), j);
          PolyS hj(coef);
          for (int t = 0; t < j; ++t) hj *= PolyS::hbar();
          for (auto& [mono, poly] : parts) {
            WeylMono m2 = mono;
            m2.x[i] += k - j;
            m2.d[i] += m - j;
            next.push_back({m2, poly * hj});
          }
        }
        parts = std::move(next);
      }
      for (auto& [mono, poly] : parts) {
        WeylMono m2 = mono;
        for (int i = 0; i < n; ++i) {
          m2.x[i] += ma.x[i];
          m2.d[i] += mb.d[i];
        }
        r.add(m2, poly);
      }
    }
  return r;
}

WeylElt weylCommutator(const WeylElt& a, const WeylElt& b) {
  return weylMul(a, b) - weylMul(b, a);
}

WeylElt fourierSp2(const WeylElt& a) {
  if (a.pairs() != 2) throw std::runtime_error("fourierSp2: needs two pairs");
  WeylElt x1 = WeylElt::gen(2, true, 0), x2 = WeylElt::gen(2, true, 1);
  WeylElt d1 = WeylElt::gen(2, false, 0), d2 = WeylElt::gen(2, false, 1);
  WeylElt Fx1 = d2, Fx2 = d1 * Rat(-1), Fd1 = x2 * Rat(-1), Fd2 = x1;
  WeylElt out(2);
  for (auto& [m, p] : a.terms()) {
    WeylElt term(2);
    term.add(WeylMono{std::vector<int>(2, 0), std::vector<int>(2, 0)}, p);
    for (int rep = 0; rep < m.x[0]; ++rep) term = weylMul(term, Fx1);
    for (int rep = 0; rep < m.x[1]; ++rep) term = weylMul(term, Fx2);
    for (int rep = 0; rep < m.d[0]; ++rep) term = weylMul(term, Fd1);
    for (int rep = 0; rep < m.d[1]; ++rep) term = weylMul(term, Fd2);
    out = out + term;
  }
  return out;
}

Sl2Fields sl2Realization() {
  // left-action fields on C^2, the orientation fixed by the evaluation
  // normalization at (v1, eta2): e = x2 D1, f = x1 D2, h = x2 D2 - x1 D1
  WeylElt x1 = WeylElt::gen(2, true, 0), x2 = WeylElt::gen(2, true, 1);
  WeylElt d1 = WeylElt::gen(2, false, 0), d2 = WeylElt::gen(2, false, 1);
  Sl2Fields s;
  s.e = weylMul(x2, d1);
  s.f = weylMul(x1, d2);
  s.h = weylMul(x2, d2) - weylMul(x1, d1);
  return s;
}

namespace {

// (1/hbar)[A, a]: exact division asserted
WeylElt adAction(const WeylElt& A, const WeylElt& a) {
  WeylElt c = weylCommutator(A, a);
  WeylElt out(a.pairs());
  for (auto& [m, p] : c.terms()) {
    bool ok = false;
    PolyS q = p.divideExact(PolyS::hbar(), &ok);
    if (!ok) throw std::runtime_error("adAction: commutator not divisible by hbar");
    out.add(m, q);
  }
  return out;
}

std::vector<WeylMono> monosOfDegreeAndWeight(int total, int weight) {
  std::vector<WeylMono> out;
  // x-degree a, D-degree b with a + b = total, a - b = weight
  if ((total + weight) % 2 != 0) return out;
  int a = (total + weight) / 2, b = (total - weight) / 2;
  if (a < 0 || b < 0) return out;
  for (int a1 = 0; a1 <= a; ++a1)
    for (int b1 = 0; b1 <= b; ++b1)
      out.push_back(WeylMono{{a1, a - a1}, {b1, b - b1}});
  return out;
}

}  // namespace

std::vector<WeylElt> fourierInvariant(const WeightModule& V, long lambda, int windowExtra) {
  long nu = V.highest[0];
  Sl2Fields fields = sl2Realization();
  int window = static_cast<int>(nu) + 2 + windowExtra;
  for (int total = static_cast<int>(std::abs(lambda)); total <= window; total += 2) {
    // unknowns: (k, mono) with V-weight + field-weight = 0 and x - D = lambda
    struct Term {
      int v;
      WeylMono m;
    };
    std::vector<Term> terms;
    for (int v = 0; v < V.dim; ++v) {
      long wv = V.wt[v][0];
      for (auto& m : monosOfDegreeAndWeight(total, static_cast<int>(lambda))) {
        // h-invariance: wt(v) + [h-grading of m] = 0, where the h field grades
        // x2, D1 by +1 and x1, D2 by -1
        long hm = -m.x[0] + m.x[1] + m.d[0] - m.d[1];
        if (wv + hm == 0) terms.push_back({v, m});
      }
    }
    if (terms.empty()) continue;
    // invariance rows for e and f; coefficients of the commutators are
    // hbar-polynomials, expanded per hbar power
    std::map<std::tuple<int, int, WeylMono, int>, std::map<int, Rat>> rows;
    for (size_t u = 0; u < terms.size(); ++u) {
      for (int gi = 0; gi < 2; ++gi) {
        const WeylElt& A = gi == 0 ? fields.e : fields.f;
        const QMatrix& mat = gi == 0 ? V.eMat[0] : V.fMat[0];
        WeylElt unit(2);
        unit.add(terms[u].m, PolyS(Rat(1)));
        WeylElt acted = adAction(A, unit);
        for (auto& [m2, p] : acted.terms())
          for (auto& [pm, pc] : p.terms())
            rows[{gi, terms[u].v, m2, pm.e[kHbar]}][static_cast<int>(u)] += pc;
        for (int v2 = 0; v2 < V.dim; ++v2) {
          const Rat& a = mat.at(v2, terms[u].v);
          if (a != 0) rows[{gi, v2, terms[u].m, 0}][static_cast<int>(u)] += a;
        }
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
    if (kernel.empty()) continue;
    if (kernel.size() > 1)
      throw std::runtime_error("fourierInvariant: invariant space not a line at minimal degree");
    std::vector<WeylElt> y(V.dim, WeylElt(2));
    for (size_t u = 0; u < kernel[0].size(); ++u)
      if (kernel[0][u] != 0) {
        WeylElt add(2);
        add.add(terms[u].m, PolyS(kernel[0][u]));
        y[terms[u].v] = y[terms[u].v] + add;
      }
    // normalization: evaluation of the classical limit at (v1, eta2):
    // x1 -> 1, x2 -> 0, D1 -> 0, D2 -> 1; must give exactly v_nu
    std::vector<Rat> ev(V.dim, Rat(0));
    for (int v = 0; v < V.dim; ++v)
      for (auto& [m, p] : y[v].terms()) {
        if (m.x[1] || m.d[0]) continue;
        PolyS cl = p.setHbarZero();
        if (!cl.isZero()) ev[v] += cl.constantTerm();
      }
    auto hw = V.weightSpace(V.highest);
    assert(hw.size() == 1);
    if (ev[hw[0]] == 0)
      throw std::runtime_error("fourierInvariant: evaluation normalization vanished");
    for (int v = 0; v < V.dim; ++v)
      if (v != hw[0] && ev[v] != 0)
        throw std::runtime_error("fourierInvariant: evaluation has components off the highest weight");
    Rat c = Rat(1) / ev[hw[0]];
    for (auto& e : y) e = e * c;
    return y;
  }
  throw std::runtime_error("fourierInvariant: no invariant found in the search window");
}

A21Result checkLemmaA21(long nu, long lambda, int windowExtra) {
  A21Result res;
  res.nu = nu;
  res.lambda = lambda;
  if (std::abs(lambda) > nu || (lambda - nu) % 2 != 0) {
    res.note = "lambda is not a weight of V^nu";
    res.pass = true;  // both sides vanish
    return res;
  }
  ChevalleyAlgebra alg(RootDatum::fromType("A1"));
  WeightModule V = buildIrrep(alg, Weight({nu}));
  auto y = fourierInvariant(V, lambda, windowExtra);
  auto target = fourierInvariant(V, -lambda, windowExtra);
  res.pass = true;
  for (int v = 0; v < V.dim; ++v) {
    WeylElt img = fourierSp2(y[v]);
    if (!(img == target[v])) res.pass = false;
  }
  for (auto& e : y) res.y.push_back(e);
  if (!res.pass) res.note = "Fourier image differs from the reflected generator";
  return res;
}

}  // namespace averma
