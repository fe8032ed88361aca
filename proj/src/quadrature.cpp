#include "glasslab/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace glasslab {

namespace {

QuadratureRule from_jacobi(const Eigen::VectorXd& diag,
                           const Eigen::VectorXd& offdiag, double mass) {
  int n = int(diag.size());
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    J(i, i) = diag(i);
    if (i + 1 < n) {
      J(i, i + 1) = offdiag(i);
      J(i + 1, i) = offdiag(i);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  QuadratureRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    r.x[i] = es.eigenvalues()(i);
    double v0 = es.eigenvectors()(0, i);
    r.w[i] = mass * v0 * v0;
  }
  return r;
}

}  // namespace

QuadratureRule gauss_hermite_prob(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite_prob: n < 1");
  Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd e(n - 1 > 0 ? n - 1 : 0);
  for (int k = 1; k < n; ++k) e(k - 1) = std::sqrt(double(k));
  return from_jacobi(d, e, 1.0);
}

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
  Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd e(n - 1 > 0 ? n - 1 : 0);
  for (int k = 1; k < n; ++k) e(k - 1) = k / std::sqrt(4.0 * k * k - 1.0);
  QuadratureRule ref = from_jacobi(d, e, 2.0);  // weight 1 on [-1,1]
  QuadratureRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    r.x[i] = 0.5 * (b - a) * ref.x[i] + 0.5 * (a + b);
    r.w[i] = 0.5 * (b - a) * ref.w[i];
  }
  return r;
}

}  // namespace glasslab
