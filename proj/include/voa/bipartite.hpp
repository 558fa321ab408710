#pragma once

#include "voa/qstate.hpp"

namespace voa {

// Result of the two-qubit spin flip (sy x sy) conj(rho) (sy x sy). Tagged so
// a flipped matrix is not mistaken for a state.
struct SpinFlipped {
  CMatrix mat;
};

// Two-qubit (4x4) input; complex conjugation is part of the map.
SpinFlipped spin_flip(const CMatrix& rho);
SpinFlipped spin_flip(const DensityMatrix& rho);

// 2|a00 a11 - a01 a10| on a [2,2] ket. Subnormalized input scales the result
// by the squared norm.
double concurrence_pure(const Ket& k);

// Descending square roots of the eigenvalues of sqrt(rho) rho_tilde sqrt(rho)
// for a 4x4 PSD matrix; their sum equals fidelity(rho, rho_tilde).
std::vector<double> wootters_lambdas(const CMatrix& rho);

// max(0, l1 - l2 - l3 - l4) over the Wootters spectrum.
double concurrence_mixed(const CMatrix& rho);
double concurrence_mixed(const DensityMatrix& rho);

// d * (prod eigenvalues of Adag A)^(1/d) where A is the d x d amplitude
// matrix of a [d,d] ket, 2 <= d <= 8. Coincides with concurrence_pure at d=2.
double gen_concurrence_pure(const Ket& k);

}  // namespace voa
