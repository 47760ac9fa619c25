#pragma once

#include "averma/weylops.hpp"

namespace averma {

// Closed-form predictions for the images of the kappa projections, and the
// image-equality checker they certify.

// prod over positive roots of prod_{j=0}^{-nu(w0 alpha-check)-1} (coroot - j hbar)
PolyS kashiwaraProduct(const RootDatum& rd, const Weight& nu);

// rank-one data for nu(coroot) = n and 0 <= k <= n
struct Rank1Prediction {
  long n = 0, k = 0;
  long lambdaPair = 0;                          // n - 2k
  PolyS generator;                              // k linear factors
  std::vector<std::pair<long, long>> strata;    // A-weights (-coroot - c hbar) as (-1, -c)
  PolyS eulerProduct;                           // product of the strata weights
  PolyS sliceFactor;                            // nonempty iff lambda < 0
  long nLambda = 0;                             // sum over R+ of |lambda(coroot)|
};
Rank1Prediction rank1Predictions(long n, long k);

struct Verdict {
  std::string kind;       // "rank-one" | "kashiwara" | "unit" | "unchecked"
  bool checked = false;
  bool pass = false;
  PolyS computed, predicted;
  Rat unit;               // computed = unit * predicted when pass
  std::string note;
};

// Image-equality checker: compares the computed kappa image generator at
// (V^nu, lambda) with the closed-form oracle where one exists: rank one
// (exact, signs pinned by the A.1.1 basis), lambda = w0 nu (Kashiwara
// product, up to a rational unit), lambda = nu (unit ideal).
Verdict checkImageEquality(ThetaContext& ctx, const WeightModule& V, const Weight& nu,
                           const Weight& lambda);

}  // namespace averma
