#include "averma/bk.hpp"

#include <cassert>
#include <stdexcept>

namespace averma {

Filtration bkFiltration(const WeightModule& V, const Weight& lambda) {
  const auto& rd = V.alg->rootDatum();
  auto slots = V.weightSpace(lambda);
  Filtration f;
  f.ambient = static_cast<int>(slots.size());
  if (slots.empty()) return f;
  QMatrix E(V.dim, V.dim);
  for (int i = 0; i < rd.rank(); ++i) E = E + V.eMat[i];
  QMatrix P = E;  // e^{i+1}
  while (true) {
    // kernel of P restricted to the lambda weight space
    QMatrix R(V.dim, static_cast<int>(slots.size()));
    for (size_t j = 0; j < slots.size(); ++j)
      for (int i = 0; i < V.dim; ++i) R.at(i, static_cast<int>(j)) = P.at(i, slots[j]);
    int dim = static_cast<int>(slots.size()) - R.rank();
    f.dims.push_back(dim);
    if (dim == f.ambient) break;
    P = E * P;
    if (static_cast<int>(f.dims.size()) > 4 * V.dim)
      throw std::runtime_error("bkFiltration: principal nilpotent does not stabilize");
  }
  return f;
}

std::vector<Rat> admissiblePhi(const ChevalleyAlgebra& alg) {
  const auto& rd = alg.rootDatum();
  AlgElt e;
  for (int i = 0; i < rd.rank(); ++i) e.e[i] = 1;
  // condition: phi((ad e)^2 f_beta restricted to t) = 0 for every beta
  QMatrix cond(rd.numPositive(), rd.rank());
  for (int b = 0; b < rd.numPositive(); ++b) {
    AlgElt fb;
    fb.f[b] = 1;
    AlgElt twice = alg.bracket(e, alg.bracket(e, fb));
    if (!twice.h.empty())
      for (int i = 0; i < rd.rank(); ++i) cond.at(b, i) = twice.h[i];
  }
  // phi in coroot-pairing coordinates phi_i = phi(coroot_i): phi(sum c_i coroot_i)
  // = sum c_i phi_i, so the conditions are rows of cond applied to (phi_i)
  auto kernel = cond.kernelBasis();
  if (kernel.empty()) throw std::runtime_error("admissiblePhi: no solution");
  // deterministic integral pick, smallest combination that is regular
  auto isRegular = [&](const std::vector<Rat>& phi) {
    for (auto& beta : rd.positiveRoots()) {
      Rat p(0);
      for (int i = 0; i < rd.rank(); ++i) p += phi[i] * Rat(beta.corootCoord[i]);
      if (p == 0) return false;
    }
    return true;
  };
  for (long range = 1; range <= 8; ++range) {
    std::vector<long> coef(kernel.size(), -range);
    while (true) {
      std::vector<Rat> phi(rd.rank(), Rat(0));
      for (size_t j = 0; j < kernel.size(); ++j)
        for (int i = 0; i < rd.rank(); ++i) phi[i] += Rat(coef[j]) * kernel[j][i];
      bool nonzero = false;
      for (auto& x : phi)
        if (x != 0) nonzero = true;
      if (nonzero && isRegular(phi)) return phi;
      size_t pos = 0;
      while (pos < coef.size() && coef[pos] == range) coef[pos++] = -range;
      if (pos == coef.size()) break;
      coef[pos] += 1;
    }
  }
  throw std::runtime_error("admissiblePhi: no regular solution in range");
}

Filtration sliceFiltration(ThetaContext& ctx, const WeightModule& V, const Weight& lambda,
                           const std::vector<Rat>& phi) {
  const auto& rd = ctx.algebra().rootDatum();
  // reject inadmissible phi with the violated constraint spelled out
  {
    AlgElt e;
    for (int i = 0; i < rd.rank(); ++i) e.e[i] = 1;
    for (int b = 0; b < rd.numPositive(); ++b) {
      AlgElt fb;
      fb.f[b] = 1;
      AlgElt twice = ctx.algebra().bracket(e, ctx.algebra().bracket(e, fb));
      Rat val(0);
      if (!twice.h.empty())
        for (int i = 0; i < rd.rank(); ++i) val += phi[i] * twice.h[i];
      if (val != 0) throw std::runtime_error("sliceFiltration: (ad* e)^2 phi != 0");
    }
    for (auto& beta : rd.positiveRoots()) {
      Rat p(0);
      for (int i = 0; i < rd.rank(); ++i) p += phi[i] * Rat(beta.corootCoord[i]);
      if (p == 0) throw std::runtime_error("sliceFiltration: phi is not regular");
    }
  }
  auto slots = V.weightSpace(lambda);
  Filtration f;
  f.ambient = static_cast<int>(slots.size());
  if (slots.empty()) return f;
  const InvariantBasis& cl = ctx.classicalInvariants(V, lambda);
  assert(cl.rank == f.ambient);

  // substitute t -> phi in the generators; coordinates over (v, k)
  struct Coord {
    std::map<std::pair<int, Pbw>, Rat> c;
    long maxDeg = 0;
  };
  std::vector<Coord> gens;
  for (auto& g : cl.gens) {
    Coord co;
    for (auto& [key, p] : g.c) {
      Rat val = p.eval(phi, Rat(0));  // classical coefficients carry no hbar
      if (val != 0) {
        co.c[key] = val;
        long deg = 0;
        for (int x : key.second) deg += x;
        co.maxDeg = std::max(co.maxDeg, deg);
      }
    }
    gens.push_back(std::move(co));
  }
  long degCap = 0;
  for (auto& g : gens) degCap = std::max(degCap, g.maxDeg);

  // evaluation at phi (y -> 0): the (v in V_lambda, k = 0) components
  Pbw zero(ctx.module(lambda).numSlots(), 0);
  auto evaluate = [&](const std::vector<Rat>& coef) {
    std::vector<Rat> out(slots.size(), Rat(0));
    for (size_t j = 0; j < gens.size(); ++j) {
      if (coef[j] == 0) continue;
      for (size_t a = 0; a < slots.size(); ++a) {
        auto it = gens[j].c.find({slots[a], zero});
        if (it != gens[j].c.end()) out[a] += coef[j] * it->second;
      }
    }
    return out;
  };
  // the full slice space must evaluate isomorphically onto V_lambda
  {
    QMatrix L(static_cast<int>(slots.size()), static_cast<int>(gens.size()));
    for (size_t j = 0; j < gens.size(); ++j) {
      std::vector<Rat> unit(gens.size(), Rat(0));
      unit[j] = 1;
      auto ev = evaluate(unit);
      for (size_t a = 0; a < slots.size(); ++a) L.at(static_cast<int>(a), static_cast<int>(j)) = ev[a];
    }
    if (L.rank() != f.ambient)
      throw std::runtime_error("sliceFiltration: evaluation at phi is not an isomorphism");
  }

  for (long d = 0;; ++d) {
    // combinations with y-degree <= d: kill all higher-degree components
    std::map<std::pair<int, Pbw>, int> rowOf;
    for (auto& g : gens)
      for (auto& [key, val] : g.c) {
        long deg = 0;
        for (int x : key.second) deg += x;
        if (deg > d && !rowOf.count(key)) rowOf[key] = static_cast<int>(rowOf.size());
      }
    QMatrix A(static_cast<int>(rowOf.size()), static_cast<int>(gens.size()));
    for (size_t j = 0; j < gens.size(); ++j)
      for (auto& [key, val] : gens[j].c) {
        auto it = rowOf.find(key);
        if (it != rowOf.end()) A.at(it->second, static_cast<int>(j)) = val;
      }
    auto kernel = A.kernelBasis();
    // dimension of the image of this piece under evaluation at phi
    QMatrix Ev(static_cast<int>(slots.size()), static_cast<int>(kernel.size()));
    for (size_t j = 0; j < kernel.size(); ++j) {
      auto ev = evaluate(kernel[j]);
      for (size_t a = 0; a < slots.size(); ++a) Ev.at(static_cast<int>(a), static_cast<int>(j)) = ev[a];
    }
    f.dims.push_back(Ev.rank());
    if (f.dims.back() == f.ambient) break;
    if (d > degCap + 2)
      throw std::runtime_error("sliceFiltration: filtration failed to exhaust V_lambda");
  }
  return f;
}

}  // namespace averma
