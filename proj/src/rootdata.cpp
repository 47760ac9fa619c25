#include "averma/rootdata.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>
#include <stdexcept>

namespace averma {

bool Weight::isZero() const {
  for (long x : v)
    if (x != 0) return false;
  return true;
}

bool Weight::isDominant() const {
  for (long x : v)
    if (x < 0) return false;
  return true;
}

Weight Weight::operator+(const Weight& o) const {
  Weight r = *this;
  for (size_t i = 0; i < v.size(); ++i) r.v[i] += o.v[i];
  return r;
}

Weight Weight::operator-(const Weight& o) const {
  Weight r = *this;
  for (size_t i = 0; i < v.size(); ++i) r.v[i] -= o.v[i];
  return r;
}

Weight Weight::operator-() const {
  Weight r = *this;
  for (auto& x : r.v) x = -x;
  return r;
}

std::string Weight::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

std::string WeylWord::str() const {
  if (w.empty()) return "e";
  std::ostringstream os;
  for (size_t i = 0; i < w.size(); ++i) os << (i ? "." : "") << "s" << (w[i] + 1);
  return os.str();
}

int Root::height() const {
  int h = 0;
  for (int c : rootCoord) h += c;
  return h;
}

RootDatum RootDatum::fromType(const std::string& type) {
  if (type == "A1") return fromCartan({{2}}, type);
  if (type == "A2") return fromCartan({{2, -1}, {-1, 2}}, type);
  // B2: alpha1 long, alpha2 short
  if (type == "B2") return fromCartan({{2, -1}, {-2, 2}}, type);
  if (type == "A1xA1") return fromCartan({{2, 0}, {0, 2}}, type);
  throw std::runtime_error("unsupported root datum type: " + type);
}

RootDatum RootDatum::fromCartan(std::vector<std::vector<int>> cartan, std::string name) {
  RootDatum rd;
  rd.rank_ = static_cast<int>(cartan.size());
  if (rd.rank_ > kMaxRank) throw std::runtime_error("rank exceeds kMaxRank");
  rd.name_ = std::move(name);
  for (int i = 0; i < rd.rank_; ++i) {
    if (static_cast<int>(cartan[i].size()) != rd.rank_ || cartan[i][i] != 2)
      throw std::runtime_error("invalid Cartan matrix");
    for (int j = 0; j < rd.rank_; ++j)
      if (i != j && cartan[i][j] > 0) throw std::runtime_error("invalid Cartan matrix");
  }
  rd.cartan_ = std::move(cartan);

  // reflection closure on (root, coroot) pairs
  std::set<std::pair<std::vector<int>, std::vector<int>>> all;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> queue;
  for (int i = 0; i < rd.rank_; ++i) {
    std::vector<int> e(rd.rank_, 0), f(rd.rank_, 0);
    e[i] = 1;
    f[i] = 1;
    all.insert({e, f});
    queue.push_back({e, f});
  }
  while (!queue.empty()) {
    auto [root, coroot] = queue.back();
    queue.pop_back();
    for (int i = 0; i < rd.rank_; ++i) {
      std::vector<int> r = root, c = coroot;
      long pr = 0, pc = 0;
      for (int j = 0; j < rd.rank_; ++j) {
        pr += static_cast<long>(rd.cartan_[i][j]) * root[j];   // beta(coroot_i)
        pc += static_cast<long>(rd.cartan_[j][i]) * coroot[j]; // alpha_i(beta-coroot)
      }
      r[i] -= static_cast<int>(pr);
      c[i] -= static_cast<int>(pc);
      if (all.insert({r, c}).second) {
        queue.push_back({r, c});
        if (all.size() > 4096) throw std::runtime_error("root system is not finite");
      }
    }
  }
  for (auto& [root, coroot] : all) {
    bool positive = true;
    for (int x : root)
      if (x < 0) positive = false;
    if (positive) rd.pos_.push_back(Root{root, coroot});
  }
  // canonical order: by height, then reverse-lexicographically, so that the
  // simple root alpha_i sits at index i
  std::sort(rd.pos_.begin(), rd.pos_.end(), [](const Root& a, const Root& b) {
    if (a.height() != b.height()) return a.height() < b.height();
    return a.rootCoord > b.rootCoord;
  });
  for (int i = 0; i < rd.rank_; ++i) assert(rd.pos_[i].rootCoord[i] == 1);
  for (int i = 0; i < static_cast<int>(rd.pos_.size()); ++i)
    rd.posIndex_[rd.pos_[i].rootCoord] = i;
  return rd;
}

int RootDatum::rootIndex(const std::vector<int>& rootCoord) const {
  auto it = posIndex_.find(rootCoord);
  return it == posIndex_.end() ? -1 : it->second;
}

bool RootDatum::isRoot(const std::vector<int>& rootCoord) const {
  if (rootIndex(rootCoord) >= 0) return true;
  std::vector<int> neg = rootCoord;
  for (auto& x : neg) x = -x;
  return rootIndex(neg) >= 0;
}

Weight RootDatum::rho() const { return Weight(std::vector<long>(rank_, 1)); }

long RootDatum::pair(const Weight& lam, const Root& beta) const {
  long s = 0;
  for (int i = 0; i < rank_; ++i) s += lam[i] * beta.corootCoord[i];
  return s;
}

long RootDatum::pairTwoRhoCheck(const Weight& lam) const {
  long s = 0;
  for (auto& b : pos_) s += pair(lam, b);
  return s;
}

Rat RootDatum::pairT(const Weight& lam, const std::vector<Rat>& t) const {
  Rat s(0);
  for (int i = 0; i < rank_; ++i) s += Rat(lam[i]) * t[i];
  return s;
}

long RootDatum::rootPairCoroot(const std::vector<int>& rootCoord, int i) const {
  long s = 0;
  for (int j = 0; j < rank_; ++j) s += static_cast<long>(cartan_[i][j]) * rootCoord[j];
  return s;
}

Weight RootDatum::reflect(int i, const Weight& lam) const {
  if (i < 0 || i >= rank_) throw std::runtime_error("reflect: index out of range");
  Weight r = lam;
  for (int j = 0; j < rank_; ++j) r[j] -= lam[i] * cartan_[j][i];
  return r;
}

Weight RootDatum::act(const WeylWord& w, const Weight& lam) const {
  Weight r = lam;
  for (int i = w.length() - 1; i >= 0; --i) r = reflect(w.w[i], r);
  return r;
}

Weight RootDatum::dotReflect(const WeylWord& w, const Weight& mu) const {
  return act(w, mu + rho()) - rho();
}

std::vector<int> RootDatum::reflectRoot(int i, const std::vector<int>& rootCoord) const {
  std::vector<int> r = rootCoord;
  long p = rootPairCoroot(rootCoord, i);
  r[i] -= static_cast<int>(p);
  return r;
}

std::vector<int> RootDatum::actRoot(const WeylWord& w, std::vector<int> rootCoord) const {
  for (int i = w.length() - 1; i >= 0; --i) rootCoord = reflectRoot(w.w[i], rootCoord);
  return rootCoord;
}

std::vector<Rat> RootDatum::actCoroot(const WeylWord& w, std::vector<Rat> c) const {
  for (int k = w.length() - 1; k >= 0; --k) {
    int i = w.w[k];
    // s_i(coroot_j) = coroot_j - cartan[j][i] * coroot_i
    Rat p(0);
    for (int j = 0; j < rank_; ++j) p += Rat(cartan_[j][i]) * c[j];
    c[i] -= p;
  }
  return c;
}

PolyS RootDatum::weylActPoly(const WeylWord& w, const PolyS& p) const {
  std::vector<PolyS> images;
  for (int i = 0; i < rank_; ++i) {
    std::vector<Rat> unit(rank_, Rat(0));
    unit[i] = 1;
    auto im = actCoroot(w, unit);
    images.push_back(PolyS::linear(im, Rat(0)));
  }
  return p.substT(images, rank_);
}

std::vector<std::vector<long>> RootDatum::actionMatrix(const WeylWord& w) const {
  std::vector<std::vector<long>> m(rank_, std::vector<long>(rank_, 0));
  for (int j = 0; j < rank_; ++j) {
    Weight e = Weight::zero(rank_);
    e[j] = 1;
    Weight img = act(w, e);
    for (int i = 0; i < rank_; ++i) m[i][j] = img[i];
  }
  return m;
}

int RootDatum::length(const WeylWord& w) const { return static_cast<int>(inversions(w).size()); }

std::vector<int> RootDatum::inversions(const WeylWord& w) const {
  std::vector<int> inv;
  for (int b = 0; b < numPositive(); ++b) {
    auto img = actRoot(w, pos_[b].rootCoord);
    bool neg = true;
    for (int x : img)
      if (x > 0) neg = false;
    if (neg) inv.push_back(b);
  }
  return inv;
}

WeylWord RootDatum::reducedWord(const WeylWord& w) const {
  // peel descents from the right
  auto m = actionMatrix(w);
  auto applyMat = [&](const std::vector<std::vector<long>>& mm, const Weight& lam) {
    Weight r = Weight::zero(rank_);
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j) r[i] += mm[i][j] * lam[j];
    return r;
  };
  std::vector<int> word;
  while (true) {
    // find i with w(alpha_i) negative; test the sign of the 2 rho-check
    // pairing of the image (positive roots pair positively with rho-check)
    int found = -1;
    for (int i = 0; i < rank_; ++i) {
      Weight apair = Weight::zero(rank_);
      for (int j = 0; j < rank_; ++j) apair[j] = cartan_[j][i];
      Weight img = applyMat(m, apair);
      if (pairTwoRhoCheck(img) < 0) {
        found = i;
        break;
      }
    }
    if (found < 0) break;
    word.push_back(found);
    // w <- w * s_found : multiply matrix on the right by s_found
    WeylWord s{{found}};
    auto sm = actionMatrix(s);
    std::vector<std::vector<long>> nm(rank_, std::vector<long>(rank_, 0));
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j)
        for (int k = 0; k < rank_; ++k) nm[i][j] += m[i][k] * sm[k][j];
    m = nm;
    if (static_cast<int>(word.size()) > numPositive())
      throw std::runtime_error("reducedWord: failed to terminate");
  }
  // now m should be the identity; word holds letters peeled from the right
  std::reverse(word.begin(), word.end());
  return WeylWord{word};
}

WeylWord RootDatum::longestElement() const {
  // ascend from the identity: multiply by any s_i that increases length
  WeylWord w{};
  while (true) {
    int cur = length(w);
    bool moved = false;
    for (int i = 0; i < rank_; ++i) {
      WeylWord cand = w;
      cand.w.push_back(i);
      if (length(cand) > cur) {
        w = cand;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  return reducedWord(w);
}

std::vector<WeylWord> RootDatum::allElements() const {
  std::map<std::vector<std::vector<long>>, WeylWord> seen;
  std::vector<WeylWord> queue{WeylWord{}};
  seen[actionMatrix(WeylWord{})] = WeylWord{};
  size_t head = 0;
  while (head < queue.size()) {
    WeylWord w = queue[head++];
    for (int i = 0; i < rank_; ++i) {
      WeylWord cand = w;
      cand.w.push_back(i);
      cand = reducedWord(cand);
      auto m = actionMatrix(cand);
      if (!seen.count(m)) {
        seen[m] = cand;
        queue.push_back(cand);
      }
    }
  }
  std::vector<WeylWord> out;
  for (auto& [m, w] : seen) out.push_back(w);
  std::sort(out.begin(), out.end(), [this](const WeylWord& a, const WeylWord& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a.w < b.w;
  });
  return out;
}

bool RootDatum::sameElement(const WeylWord& a, const WeylWord& b) const {
  return actionMatrix(a) == actionMatrix(b);
}

WeylWord RootDatum::concat(const WeylWord& a, const WeylWord& b) const {
  WeylWord r = a;
  r.w.insert(r.w.end(), b.w.begin(), b.w.end());
  return r;
}

std::vector<Rat> RootDatum::weightInRootCoords(const Weight& lam) const {
  // solve lam_j = sum_i c_i * cartan[j][i] by Gaussian elimination
  int n = rank_;
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n + 1));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) m[j][i] = cartan_[j][i];
    m[j][n] = lam[j];
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (m[r][col] != 0) {
        piv = r;
        break;
      }
    assert(piv >= 0);
    std::swap(m[col], m[piv]);
    Rat p = m[col][col];
    for (int c = col; c <= n; ++c) m[col][c] /= p;
    for (int r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rat f = m[r][col];
      for (int c = col; c <= n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  std::vector<Rat> out(n);
  for (int i = 0; i < n; ++i) out[i] = m[i][n];
  return out;
}

std::vector<Rat> RootDatum::symmetrizers() const {
  // d_i with d_i a_ij = d_j a_ji, normalized so min d_i = 1
  int n = rank_;
  std::vector<Rat> d(n, Rat(0));
  d[0] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (cartan_[i][j] == 0) continue;
        if (d[i] != 0 && d[j] == 0) {
          d[j] = d[i] * Rat(cartan_[i][j]) / Rat(cartan_[j][i]);
          changed = true;
        }
      }
    for (int i = 0; i < n; ++i)
      if (d[i] == 0) {  // other component, e.g. A1xA1
        d[i] = 1;
        changed = true;
      }
  }
  Rat mn = d[0];
  for (auto& x : d) mn = std::min(mn, x);
  for (auto& x : d) x /= mn;
  return d;
}

Rat RootDatum::innerProduct(const Weight& a, const Weight& b) const {
  auto c = weightInRootCoords(b);
  auto d = symmetrizers();
  Rat s(0);
  for (int j = 0; j < rank_; ++j) s += c[j] * d[j] * Rat(a[j]);
  return s;
}

int RootDatum::depth(const Weight& nu) const {
  Weight w0nu = act(longestElement(), nu);
  auto c = weightInRootCoords(nu - w0nu);
  Rat h(0);
  for (auto& x : c) h += x;
  assert(isInteger(h));
  return static_cast<int>(toLong(h));
}

}  // namespace averma
