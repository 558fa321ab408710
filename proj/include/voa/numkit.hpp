#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace voa {

using cplx = std::complex<double>;

// Structural misuse: shape mismatches, bad indices, malformed input documents.
struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical contract violations: non-Hermitian, non-PSD, inconsistent values.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dense complex matrix, row-major. Sized for few-qubit work (<= 16x16 in
// practice); no attempt at sparsity or blocking.
class CMatrix {
 public:
  CMatrix() : rows_(0), cols_(0) {}
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0, 0.0)) {}
  CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data);
  CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static CMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  const std::vector<cplx>& data() const { return data_; }

  CMatrix adjoint() const;
  CMatrix transpose() const;
  CMatrix conjugate() const;
  cplx trace() const;
  double max_abs() const;
  bool is_hermitian(double tol) const;
  bool all_finite() const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cplx s);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
  friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

 private:
  std::size_t rows_, cols_;
  std::vector<cplx> data_;
};

// |u><v| for column vectors given as flat arrays.
CMatrix outer(const std::vector<cplx>& u, const std::vector<cplx>& v);

CMatrix kron(const CMatrix& a, const CMatrix& b);

// Trace out every subsystem not listed in `keep`. `dims` are the subsystem
// dimensions, first factor most significant; `keep` must be strictly
// increasing. The kept subsystems stay in their original relative order.
CMatrix partial_trace(const CMatrix& m, const std::vector<std::size_t>& dims,
                      const std::vector<std::size_t>& keep);

struct HermEigResult {
  std::vector<double> eigenvalues;  // ascending
  CMatrix eigenvectors;             // column k pairs with eigenvalues[k]
};

// Cyclic complex Jacobi rotations; converges when the largest off-diagonal
// magnitude drops below 1e-13 or after 100 sweeps. Input must be Hermitian
// within 1e-10 (it is symmetrized before iterating).
HermEigResult herm_eig(const CMatrix& m);

// Principal square root of a PSD Hermitian matrix. Eigenvalues in
// [-1e-10, 0) are clamped to zero; anything more negative throws.
CMatrix sqrtm_psd(const CMatrix& m);

// Uhlmann fidelity Tr sqrt(sqrt(rho) sigma sqrt(rho)) for PSD inputs.
// Degree one jointly in (rho, sigma) scale, so subnormalized inputs are fine.
double fidelity(const CMatrix& rho, const CMatrix& sigma);

}  // namespace voa
