#pragma once

#include "ineq/types.hpp"

namespace ineq {

struct QuadratureRule {
  Vector nodes;    // strictly increasing
  Vector weights;  // > 0
  Index size() const { return nodes.size(); }
};

// Gauss rule for the Jacobi weight (1-x)^alpha (1+x)^beta on [-1,1].
// Weights carry the physical mass of the weight function, i.e.
// sum(weights) = 2^(alpha+beta+1) B(alpha+1, beta+1).
// Nodes and weights come from the Golub-Welsch eigenvalue method applied to
// the monic three-term recurrence.
QuadratureRule gauss_jacobi(int n, Real alpha, Real beta);

// Symmetric special case, weight (1-x^2)^alpha. Node/weight symmetry about 0
// is enforced exactly so that odd-moment identities hold to machine precision.
QuadratureRule gauss_jacobi_symmetric(int n, Real alpha);

// Gauss rule for the Gaussian probability weight e^{-pi x^2} dx on R
// (variance 1/(2 pi), total mass exactly 1).
QuadratureRule gauss_hermite_pi(int n);

// Plain Gauss-Legendre on [-1,1], mass 2. Used for auxiliary dense integrals.
QuadratureRule gauss_legendre(int n);

}  // namespace ineq
