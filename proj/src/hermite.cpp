#include "lrf/hermite.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "lrf/errors.hpp"

namespace lrf {

double hermite_eval(int m, double x) {
  if (m < 0) throw ValidationError("hermite_eval: negative degree");
  if (m > kMaxHermiteDegree)
    throw ValidationError("hermite_eval: degree " + std::to_string(m) + " above supported maximum " +
                          std::to_string(kMaxHermiteDegree));
  if (m == 0) return 1.0;
  if (m == 1) return x;
  double hm1 = 1.0, h = x;
  for (int k = 1; k < m; ++k) {
    const double next = x * h - static_cast<double>(k) * hm1;
    hm1 = h;
    h = next;
  }
  return h;
}

namespace {

// Orthonormal Hermite values q_k(x) = H_k(x)/sqrt(k!) for k = 0..count;
// the normalized recurrence keeps magnitudes bounded near the nodes even
// for large counts where k! overflows.
void orthonormal_column(int count, double x, std::vector<double>& q) {
  q.resize(static_cast<std::size_t>(count) + 1);
  q[0] = 1.0;
  if (count == 0) return;
  q[1] = x;
  for (int k = 1; k < count; ++k)
    q[k + 1] = (x * q[k] - std::sqrt(static_cast<double>(k)) * q[k - 1]) /
               std::sqrt(static_cast<double>(k + 1));
}

}  // namespace

// Golub-Welsch eigenvalues of the Jacobi matrix of the probabilists'
// recurrence (off-diagonal sqrt(k)) give ~1e-13 node accuracy; two Newton
// polish steps on the orthonormal polynomial push that to machine
// precision, and the weights follow from the Christoffel function
// w_i = 1 / sum_{k < count} q_k(x_i)^2 (the zeroth moment of phi is 1).
GaussHermiteRule gauss_hermite_rule(int count) {
  if (count < 1) throw ValidationError("gauss_hermite_rule: need at least one node");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(count, count);
  for (int k = 1; k < count; ++k) {
    const double b = std::sqrt(static_cast<double>(k));
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi, Eigen::EigenvaluesOnly);
  GaussHermiteRule rule;
  rule.nodes.resize(count);
  rule.weights.resize(count);
  std::vector<double> q;
  const double root_count = std::sqrt(static_cast<double>(count));
  for (int i = 0; i < count; ++i) {
    double x = solver.eigenvalues()(i);
    for (int step = 0; step < 3; ++step) {
      orthonormal_column(count, x, q);
      const double deriv = root_count * q[static_cast<std::size_t>(count) - 1];
      if (deriv == 0.0) break;
      const double dx = q[static_cast<std::size_t>(count)] / deriv;
      x -= dx;
      if (std::abs(dx) < 1e-16 * (1.0 + std::abs(x))) break;
    }
    orthonormal_column(count, x, q);
    double christoffel = 0.0;
    for (int k = 0; k < count; ++k) christoffel += q[static_cast<std::size_t>(k)] * q[static_cast<std::size_t>(k)];
    rule.nodes[i] = x;
    rule.weights[i] = 1.0 / christoffel;
  }
  return rule;
}

double HermiteExpansion::parseval_residual() const {
  double sum = 0.0;
  double factorial = 1.0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (j > 0) factorial *= static_cast<double>(j);
    sum += coeffs[j] * coeffs[j] / factorial;
  }
  return std::abs(sum - l2_norm_sq);
}

HermiteExpansion expand(const std::function<double(double)>& S, int degree, int quad_nodes) {
  if (degree < 0) throw ValidationError("expand: negative truncation degree");
  if (degree > kMaxHermiteDegree) throw ValidationError("expand: truncation degree above maximum");
  if (quad_nodes < 2 * degree) quad_nodes = std::max(2 * degree, kDefaultQuadNodes);

  const GaussHermiteRule rule = gauss_hermite_rule(quad_nodes);
  std::vector<double> s_vals(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    s_vals[i] = S(rule.nodes[i]);
    if (!std::isfinite(s_vals[i]))
      throw ValidationError("expand: non-finite S at quadrature node x = " +
                            std::to_string(rule.nodes[i]));
  }

  HermiteExpansion exp;
  exp.truncation_degree = degree;
  exp.coeffs.assign(static_cast<std::size_t>(degree) + 1, 0.0);
  exp.l2_norm_sq = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    exp.l2_norm_sq += rule.weights[i] * s_vals[i] * s_vals[i];

  // One recurrence sweep per node fills every C_j.
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i];
    const double ws = rule.weights[i] * s_vals[i];
    double hm1 = 0.0, h = 1.0;
    for (int j = 0; j <= degree; ++j) {
      exp.coeffs[static_cast<std::size_t>(j)] += ws * h;
      const double next = x * h - static_cast<double>(j) * hm1;
      hm1 = h;
      h = next;
    }
  }

  try {
    exp.rank = hermite_rank(exp);
  } catch (const ValidationError&) {
    exp.rank = kHermiteRankUndefined;
  }
  return exp;
}

int hermite_rank(const HermiteExpansion& exp, double rank_tolerance) {
  if (exp.truncation_degree < 1 || exp.coeffs.size() < 2)
    throw ValidationError("hermite_rank: expansion must reach degree >= 1");
  const double scale = std::sqrt(std::max(exp.l2_norm_sq, 0.0));
  const double threshold = rank_tolerance * std::max(scale, 1e-300);
  for (std::size_t j = 1; j < exp.coeffs.size(); ++j)
    if (std::abs(exp.coeffs[j]) > threshold) return static_cast<int>(j);
  throw ValidationError(
      "hermite_rank: no coefficient above tolerance up to degree " +
      std::to_string(exp.truncation_degree) + "; try a larger truncation");
}

}  // namespace lrf
