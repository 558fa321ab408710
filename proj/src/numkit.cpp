#include "voa/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace voa {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_)
    throw StructuralError("CMatrix: data size does not match shape");
  if (!all_finite()) throw NumericalError("CMatrix: non-finite entry");
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw StructuralError("CMatrix: ragged rows");
    for (cplx z : r) data_.push_back(z);
  }
  if (!all_finite()) throw NumericalError("CMatrix: non-finite entry");
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

CMatrix CMatrix::transpose() const {
  CMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

CMatrix CMatrix::conjugate() const {
  CMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = std::conj(data_[i]);
  return r;
}

cplx CMatrix::trace() const {
  if (rows_ != cols_) throw StructuralError("trace: matrix not square");
  cplx t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (cplx z : data_) m = std::max(m, std::abs(z));
  return m;
}

bool CMatrix::is_hermitian(double tol) const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
  return true;
}

bool CMatrix::all_finite() const {
  for (cplx z : data_)
    if (!finite(z)) return false;
  return true;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw StructuralError("matrix add: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw StructuralError("matrix sub: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) throw StructuralError("matrix mul: shape mismatch");
  CMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      cplx aik = a(i, k);
      if (aik == cplx(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

CMatrix outer(const std::vector<cplx>& u, const std::vector<cplx>& v) {
  CMatrix r(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) r(i, j) = u[i] * std::conj(v[j]);
  return r;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      cplx aij = a(i, j);
      if (aij == cplx(0.0, 0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return r;
}

CMatrix partial_trace(const CMatrix& m, const std::vector<std::size_t>& dims,
                      const std::vector<std::size_t>& keep) {
  std::size_t total = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw StructuralError("partial_trace: zero dimension");
    total *= d;
  }
  if (m.rows() != total || m.cols() != total)
    throw StructuralError("partial_trace: matrix size does not factor over dims");
  if (keep.empty() || keep.size() > dims.size())
    throw StructuralError("partial_trace: bad keep list");
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] >= dims.size())
      throw StructuralError("partial_trace: keep index out of range");
    if (i > 0 && keep[i] <= keep[i - 1])
      throw StructuralError("partial_trace: keep list must be strictly increasing");
  }

  std::vector<std::size_t> traced;
  for (std::size_t i = 0; i < dims.size(); ++i)
    if (std::find(keep.begin(), keep.end(), i) == keep.end()) traced.push_back(i);

  // stride of subsystem i in the flat index (first factor most significant)
  std::vector<std::size_t> stride(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) stride[i - 1] = stride[i] * dims[i];

  auto offsets = [&](const std::vector<std::size_t>& subs) {
    std::size_t count = 1;
    for (std::size_t s : subs) count *= dims[s];
    std::vector<std::size_t> off(count, 0);
    for (std::size_t flat = 0; flat < count; ++flat) {
      std::size_t rem = flat, base = 0;
      for (std::size_t k = subs.size(); k-- > 0;) {
        base += (rem % dims[subs[k]]) * stride[subs[k]];
        rem /= dims[subs[k]];
      }
      off[flat] = base;
    }
    return off;
  };

  std::vector<std::size_t> kept_off = offsets(keep);
  std::vector<std::size_t> traced_off = offsets(traced);

  CMatrix out(kept_off.size(), kept_off.size());
  for (std::size_t a = 0; a < kept_off.size(); ++a)
    for (std::size_t b = 0; b < kept_off.size(); ++b) {
      cplx acc = 0.0;
      for (std::size_t t : traced_off) acc += m(kept_off[a] + t, kept_off[b] + t);
      out(a, b) = acc;
    }
  return out;
}

HermEigResult herm_eig(const CMatrix& m) {
  if (m.rows() != m.cols()) throw StructuralError("herm_eig: matrix not square");
  if (!m.is_hermitian(1e-10)) throw NumericalError("herm_eig: matrix not Hermitian");
  const std::size_t n = m.rows();

  CMatrix a = m;
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = cplx(a(i, i).real(), 0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      cplx avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
  CMatrix v = CMatrix::identity(n);

  const int max_sweeps = 100;
  const double off_tol = 1e-13;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off < off_tol) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = std::abs(a(p, q));
        if (apq <= 0.0) continue;
        cplx phase = a(p, q) / apq;
        double app = a(p, p).real();
        double aqq = a(q, q).real();
        double tau = (aqq - app) / (2.0 * apq);
        double t = tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                              : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = t * c;
        cplx jpq = s * phase;             // J(p,q)
        cplx jqp = -s * std::conj(phase); // J(q,p)

        // A <- A J (columns p, q)
        for (std::size_t k = 0; k < n; ++k) {
          cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp + jqp * akq;
          a(k, q) = jpq * akp + c * akq;
        }
        // A <- J^dagger A (rows p, q)
        for (std::size_t k = 0; k < n; ++k) {
          cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + c * aqk;
        }
        // V <- V J
        for (std::size_t k = 0; k < n; ++k) {
          cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp + jqp * vkq;
          v(k, q) = jpq * vkp + c * vkq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = cplx(a(p, p).real(), 0.0);
        a(q, q) = cplx(a(q, q).real(), 0.0);
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() < a(y, y).real();
  });

  HermEigResult res;
  res.eigenvalues.resize(n);
  res.eigenvectors = CMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    res.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) res.eigenvectors(i, k) = v(i, order[k]);
  }
  return res;
}

CMatrix sqrtm_psd(const CMatrix& m) {
  HermEigResult e = herm_eig(m);
  const std::size_t n = m.rows();
  for (double lam : e.eigenvalues)
    if (lam < -1e-10) throw NumericalError("sqrtm_psd: matrix not PSD");
  // eigenvalues below numerical resolution are exact zeros; keeping their
  // noise would smear rank-deficient inputs by sqrt(eps)
  double cutoff = 1e-13 * std::max(e.eigenvalues.back(), 0.0);
  CMatrix r(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    double lam = e.eigenvalues[k] <= cutoff ? 0.0 : e.eigenvalues[k];
    double s = std::sqrt(lam);
    if (s == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      cplx vik = e.eigenvectors(i, k);
      if (vik == cplx(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < n; ++j)
        r(i, j) += s * vik * std::conj(e.eigenvectors(j, k));
    }
  }
  return r;
}

double fidelity(const CMatrix& rho, const CMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw StructuralError("fidelity: shape mismatch");
  CMatrix s = sqrtm_psd(rho);
  CMatrix inner = s * sigma * s;
  HermEigResult e = herm_eig(inner);
  double cutoff = 1e-13 * std::max(e.eigenvalues.back(), 0.0);
  double f = 0.0;
  for (double lam : e.eigenvalues) {
    if (lam < -1e-10) throw NumericalError("fidelity: second argument not PSD");
    if (lam > cutoff) f += std::sqrt(lam);
  }
  return f;
}

}  // namespace voa
