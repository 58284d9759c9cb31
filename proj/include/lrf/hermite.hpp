#pragma once

#include <functional>
#include <vector>

namespace lrf {

// Probabilists' Hermite polynomials H_m: H_0 = 1, H_1 = x,
// H_{m+1}(x) = x H_m(x) - m H_{m-1}(x). No physicists' variant anywhere
// in this library.

inline constexpr int kMaxHermiteDegree = 60;

double hermite_eval(int m, double x);

// Gauss quadrature adapted to the standard normal weight: integrates
// p(x) phi(x) exactly for polynomials p up to degree 2*count - 1.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;  // sum to 1
};
GaussHermiteRule gauss_hermite_rule(int count);

inline constexpr int kHermiteRankUndefined = -1;

struct HermiteExpansion {
  std::vector<double> coeffs;  // C_j, j = 0..J
  int truncation_degree = 0;
  int rank = kHermiteRankUndefined;
  double l2_norm_sq = 0.0;

  // Residual of Parseval's identity at the stored truncation.
  double parseval_residual() const;
};

inline constexpr int kDefaultQuadNodes = 128;
inline constexpr double kDefaultRankTolerance = 1e-9;

// C_j = integral of S(x) H_j(x) phi(x) dx by Gauss-Hermite quadrature.
// Requires quad_nodes >= 2 * degree. Rank is filled in with the default
// tolerance; hermite_rank() re-derives it for other tolerances.
HermiteExpansion expand(const std::function<double(double)>& S, int degree,
                        int quad_nodes = kDefaultQuadNodes);

// Smallest j >= 1 with |C_j| above rank_tolerance * sqrt(l2_norm_sq).
// C_0 is ignored by definition. Throws when every coefficient up to the
// truncation is below tolerance.
int hermite_rank(const HermiteExpansion& exp, double rank_tolerance = kDefaultRankTolerance);

}  // namespace lrf
