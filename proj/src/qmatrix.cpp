#include "averma/qmatrix.hpp"

#include <cassert>

namespace averma {

QMatrix QMatrix::identity(int n) {
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.a_[i][i] = 1;
  return m;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
  assert(c_ == o.r_);
  QMatrix m(r_, o.c_);
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < c_; ++k) {
      if (a_[i][k] == 0) continue;
      for (int j = 0; j < o.c_; ++j) m.a_[i][j] += a_[i][k] * o.a_[k][j];
    }
  return m;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
  assert(r_ == o.r_ && c_ == o.c_);
  QMatrix m = *this;
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) m.a_[i][j] += o.a_[i][j];
  return m;
}

QMatrix QMatrix::operator-(const QMatrix& o) const {
  assert(r_ == o.r_ && c_ == o.c_);
  QMatrix m = *this;
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) m.a_[i][j] -= o.a_[i][j];
  return m;
}

bool QMatrix::operator==(const QMatrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

QMatrix QMatrix::transpose() const {
  QMatrix m(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) m.a_[j][i] = a_[i][j];
  return m;
}

bool QMatrix::isZero() const {
  for (auto& row : a_)
    for (auto& x : row)
      if (x != 0) return false;
  return true;
}

QMatrix QMatrix::rref(std::vector<int>* pivots) const {
  QMatrix m = *this;
  if (pivots) pivots->clear();
  int row = 0;
  for (int col = 0; col < c_ && row < r_; ++col) {
    int piv = -1;
    for (int i = row; i < r_; ++i)
      if (m.a_[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m.a_[row], m.a_[piv]);
    Rat p = m.a_[row][col];
    for (int j = col; j < c_; ++j) m.a_[row][j] /= p;
    for (int i = 0; i < r_; ++i) {
      if (i == row || m.a_[i][col] == 0) continue;
      Rat f = m.a_[i][col];
      for (int j = col; j < c_; ++j) m.a_[i][j] -= f * m.a_[row][j];
    }
    if (pivots) pivots->push_back(col);
    ++row;
  }
  return m;
}

int QMatrix::rank() const {
  std::vector<int> piv;
  rref(&piv);
  return static_cast<int>(piv.size());
}

std::vector<std::vector<Rat>> QMatrix::kernelBasis() const {
  std::vector<int> piv;
  QMatrix m = rref(&piv);
  std::vector<bool> isPivot(c_, false);
  for (int p : piv) isPivot[p] = true;
  std::vector<std::vector<Rat>> basis;
  for (int free = 0; free < c_; ++free) {
    if (isPivot[free]) continue;
    std::vector<Rat> v(c_, Rat(0));
    v[free] = 1;
    for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m.a_[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Rat>> QMatrix::solve(const std::vector<Rat>& b) const {
  assert(static_cast<int>(b.size()) == r_);
  QMatrix aug(r_, c_ + 1);
  for (int i = 0; i < r_; ++i) {
    for (int j = 0; j < c_; ++j) aug.a_[i][j] = a_[i][j];
    aug.a_[i][c_] = b[i];
  }
  std::vector<int> piv;
  QMatrix m = aug.rref(&piv);
  for (int p : piv)
    if (p == c_) return std::nullopt;
  std::vector<Rat> x(c_, Rat(0));
  for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = m.a_[i][c_];
  return x;
}

std::optional<QMatrix> QMatrix::inverse() const {
  assert(r_ == c_);
  QMatrix aug(r_, 2 * r_);
  for (int i = 0; i < r_; ++i) {
    for (int j = 0; j < r_; ++j) aug.a_[i][j] = a_[i][j];
    aug.a_[i][r_ + i] = 1;
  }
  std::vector<int> piv;
  QMatrix m = aug.rref(&piv);
  if (static_cast<int>(piv.size()) != r_) return std::nullopt;
  for (int i = 0; i < r_; ++i)
    if (piv[i] != i) return std::nullopt;
  QMatrix inv(r_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < r_; ++j) inv.a_[i][j] = m.a_[i][r_ + j];
  return inv;
}

std::vector<Rat> QMatrix::apply(const std::vector<Rat>& x) const {
  assert(static_cast<int>(x.size()) == c_);
  std::vector<Rat> y(r_, Rat(0));
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j)
      if (a_[i][j] != 0 && x[j] != 0) y[i] += a_[i][j] * x[j];
  return y;
}

// exact kernel of a sparse system; rows are maps col -> coeff
std::vector<std::vector<Rat>> sparseKernel(std::vector<std::map<int, Rat>> rows, int ncols) {
  std::map<int, std::map<int, Rat>> pivotRows;
  auto reduceRow = [&](std::map<int, Rat>& row) {
    while (!row.empty()) {
      auto it = pivotRows.find(row.begin()->first);
      if (it == pivotRows.end()) break;
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
  };
  for (auto& row : rows) {
    reduceRow(row);
    if (row.empty()) continue;
    Rat f = row.begin()->second;
    for (auto& [col, val] : row) val /= f;
    int lead = row.begin()->first;
    pivotRows[lead] = std::move(row);
  }
  // back substitution: reduce each pivot row against the later pivots
  for (auto it = pivotRows.rbegin(); it != pivotRows.rend(); ++it) {
    auto& row = it->second;
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto jt = std::next(row.begin()); jt != row.end(); ++jt) {
        auto pt = pivotRows.find(jt->first);
        if (pt == pivotRows.end()) continue;
        Rat f = jt->second;
        for (auto& [col, val] : pt->second) {
          auto kt = row.find(col);
          if (kt == row.end()) {
            Rat nv = -f * val;
            if (nv != 0) row[col] = nv;
          } else {
            kt->second -= f * val;
            if (kt->second == 0) row.erase(kt);
          }
        }
        changed = true;
        break;
      }
    }
  }
  std::vector<std::vector<Rat>> kernel;
  std::vector<bool> isPivot(ncols, false);
  for (auto& [p, row] : pivotRows) isPivot[p] = true;
  for (int free = 0; free < ncols; ++free) {
    if (isPivot[free]) continue;
    std::vector<Rat> v(ncols, Rat(0));
    v[free] = 1;
    for (auto& [p, row] : pivotRows) {
      auto it = row.find(free);
      if (it != row.end()) v[p] = -it->second;
    }
    kernel.push_back(std::move(v));
  }
  return kernel;
}


}  // namespace averma
