#pragma once

#include <map>
#include <optional>
#include <vector>

#include "averma/poly.hpp"

namespace averma {

// Dense exact-rational matrix with just enough linear algebra for the
// degreewise solvers: rref, kernels, solving, inversion.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(int rows, int cols) : r_(rows), c_(cols), a_(rows, std::vector<Rat>(cols, Rat(0))) {}
  static QMatrix identity(int n);

  int rows() const { return r_; }
  int cols() const { return c_; }
  Rat& at(int i, int j) { return a_[i][j]; }
  const Rat& at(int i, int j) const { return a_[i][j]; }

  QMatrix operator*(const QMatrix&) const;
  QMatrix operator+(const QMatrix&) const;
  QMatrix operator-(const QMatrix&) const;
  bool operator==(const QMatrix&) const;
  QMatrix transpose() const;
  bool isZero() const;

  int rank() const;
  // reduced row echelon form; pivots receives pivot column indices
  QMatrix rref(std::vector<int>* pivots = nullptr) const;
  std::vector<std::vector<Rat>> kernelBasis() const;
  // solve A x = b; nullopt if inconsistent
  std::optional<std::vector<Rat>> solve(const std::vector<Rat>& b) const;
  std::optional<QMatrix> inverse() const;
  std::vector<Rat> apply(const std::vector<Rat>& x) const;

 private:
  int r_ = 0, c_ = 0;
  std::vector<std::vector<Rat>> a_;
};

// exact kernel of a sparse linear system; rows are maps col -> coeff
std::vector<std::vector<Rat>> sparseKernel(std::vector<std::map<int, Rat>> rows, int ncols);

}  // namespace averma
