#pragma once

#include "glasslab/clusters.hpp"
#include "glasslab/moment_oracle.hpp"

namespace glasslab {

// Limiting constants for cluster structures, computed two independent ways:
// exact big-rational expansion through the Gaussian moment oracle, and
// Gauss-Hermite quadrature sized for polynomial exactness.
struct LimitConstant {
  BigRat exact;
  double quadrature;
  double value() const { return double(exact); }
  double disagreement() const;
};

// u_{k,l}(p)^2 = (1/(k! l! p!^{k/2})) E[H_l(eta) H_k(H_p(eta)/sqrt(p!))],
// the N->infinity limit of |S_{(k,p),l}| / N^{(kp+l)/2}.
LimitConstant u_squared(int k, int l, int p);

// Mixed counterpart over two uniformities.
LimitConstant u_squared_mixed(int a_e, int p_e, int a_o, int p_o, int b);

// v_{(k,p),l}(beta,rho)^2 = beta^{2k} rho^{2l} u_{k,l}(p)^2.
LimitConstant v_squared(int k, int l, int p, double beta, double rho);

// v for ((a_e,p_e),(a_o,p_o),b) with mixture weights theta.
LimitConstant v_squared_mixed(int a_e, int p_e, int a_o, int p_o, int b,
                              double beta, double rho, double theta_e,
                              double theta_o);

// Structure-driven front end used by the CLI; dispatches on the number of
// uniformities in c.
LimitConstant u_squared_for(const ClusterStructure& c);
LimitConstant v_squared_for(const ClusterStructure& c, double beta, double rho,
                            double theta_first = 1.0, double theta_second = 1.0);

}  // namespace glasslab
