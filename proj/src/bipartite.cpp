#include "voa/bipartite.hpp"

#include <algorithm>
#include <cmath>

namespace voa {

namespace {

// (sy x sy) is real: anti-diagonal -1, 1, 1, -1
const double kFlipSign[4] = {-1.0, 1.0, 1.0, -1.0};

}  // namespace

SpinFlipped spin_flip(const CMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw StructuralError("spin_flip: expected a two-qubit (4x4) matrix");
  CMatrix out(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      out(i, j) = kFlipSign[i] * kFlipSign[j] * std::conj(rho(3 - i, 3 - j));
  return SpinFlipped{std::move(out)};
}

SpinFlipped spin_flip(const DensityMatrix& rho) {
  if (rho.dims != std::vector<std::size_t>{2, 2})
    throw StructuralError("spin_flip: expected dims [2,2]");
  return spin_flip(rho.mat);
}

double concurrence_pure(const Ket& k) {
  if (k.dims != std::vector<std::size_t>{2, 2})
    throw StructuralError("concurrence_pure: expected a [2,2] ket");
  return 2.0 * std::abs(k.amps[0] * k.amps[3] - k.amps[1] * k.amps[2]);
}

std::vector<double> wootters_lambdas(const CMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw StructuralError("wootters_lambdas: expected a 4x4 matrix");
  CMatrix s = sqrtm_psd(rho);
  CMatrix inner = s * spin_flip(rho).mat * s;
  HermEigResult e = herm_eig(inner);
  double cutoff = 1e-13 * std::max(e.eigenvalues.back(), 0.0);
  std::vector<double> lambdas(4);
  for (std::size_t i = 0; i < 4; ++i) {
    double lam = e.eigenvalues[3 - i];
    if (lam < -1e-10) throw NumericalError("wootters_lambdas: input not PSD");
    lambdas[i] = lam > cutoff ? std::sqrt(lam) : 0.0;
  }
  return lambdas;
}

double concurrence_mixed(const CMatrix& rho) {
  std::vector<double> l = wootters_lambdas(rho);
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

double concurrence_mixed(const DensityMatrix& rho) {
  if (rho.dims != std::vector<std::size_t>{2, 2})
    throw StructuralError("concurrence_mixed: expected dims [2,2]");
  return concurrence_mixed(rho.mat);
}

double gen_concurrence_pure(const Ket& k) {
  if (k.arity() != 2 || k.dims[0] != k.dims[1])
    throw StructuralError("gen_concurrence_pure: expected a [d,d] ket");
  std::size_t d = k.dims[0];
  if (d < 2 || d > 8)
    throw StructuralError("gen_concurrence_pure: dimension must be in [2,8]");
  CMatrix a(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) a(i, j) = k.amps[i * d + j];
  HermEigResult e = herm_eig(a.adjoint() * a);
  double logprod = 0.0;
  for (double lam : e.eigenvalues) {
    double clamped = std::max(lam, 0.0);
    if (clamped == 0.0) return 0.0;
    logprod += std::log(clamped);
  }
  return static_cast<double>(d) * std::exp(logprod / static_cast<double>(d));
}

}  // namespace voa
