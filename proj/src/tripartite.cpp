#include "voa/tripartite.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>

#include "voa/bipartite.hpp"
#include "voa/optim.hpp"

namespace voa {

namespace {

void require_qubits(const Ket& k, std::size_t arity, const char* who) {
  if (k.arity() != arity || !k.all_qubits())
    throw StructuralError(std::string(who) + ": expected a " +
                          std::to_string(arity) + "-qubit ket");
}

CMatrix reduced(const Ket& k, const std::vector<std::size_t>& keep) {
  return partial_trace(outer(k.amps, k.amps), k.dims, keep);
}

double largest_eigenvalue(const CMatrix& m) {
  return herm_eig(m).eigenvalues.back();
}

// 1 - max over bipartitions of the largest reduced eigenvalue, for any
// arity in [2,4]. Complementary cuts share their nonzero spectrum, so one
// side of each bipartition suffices: all singletons, plus pairs {0,j} at
// arity 4.
double ggm_any(const Ket& k) {
  const std::size_t n = k.arity();
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    best = std::max(best, largest_eigenvalue(reduced(k, {i})));
  if (n == 4)
    for (std::size_t j = 1; j < 4; ++j)
      best = std::max(best, largest_eigenvalue(reduced(k, {0, j})));
  return 1.0 - best;
}

// Project qubit `measured` onto direction (theta, phi) and its orthogonal
// complement; returns the measurement-averaged ggm of the post-measurement
// (n-1)-qubit states.
double averaged_ggm(const Ket& k, std::size_t measured, double theta,
                    double phi) {
  const std::size_t n = k.arity();
  const std::size_t high = n - 1 - measured;       // qubits above `measured`
  const std::size_t block = std::size_t{1} << high;  // stride of its bit
  const double ct = std::cos(theta / 2.0);
  const double st = std::sin(theta / 2.0);
  const cplx eip = std::polar(1.0, phi);

  // <v0| and <v1| for |v0> = ct|0> + e^{i phi} st|1>, |v1> its complement.
  const std::vector<cplx> bra0 = {cplx(ct), st * std::conj(eip)};
  const std::vector<cplx> bra1 = {-st * eip, cplx(ct)};

  std::vector<std::size_t> rest_dims(n - 1, 2);
  double total = 0.0;
  for (int branch = 0; branch < 2; ++branch) {
    const std::vector<cplx>& bra = branch == 0 ? bra0 : bra1;
    std::vector<cplx> amps(k.size() / 2);
    for (std::size_t r = 0; r < amps.size(); ++r) {
      const std::size_t upper = r / block, lower = r % block;
      const std::size_t base = upper * 2 * block + lower;
      amps[r] = bra[0] * k.amps[base] + bra[1] * k.amps[base + block];
    }
    double p = 0.0;
    for (const cplx& a : amps) p += std::norm(a);
    if (p < 1e-15) continue;
    const double scale = 1.0 / std::sqrt(p);
    for (cplx& a : amps) a *= scale;
    total += p * ggm_any(Ket{rest_dims, std::move(amps)});
  }
  return total;
}

}  // namespace

void MeasureReport::add(const std::string& name, double value,
                        const std::string& method,
                        std::map<std::string, std::string> metadata) {
  entries.push_back({name, MeasureEntry{value, method, std::move(metadata)}});
}

double coa(const Ket& k, std::size_t assisting) {
  require_qubits(k, 3, "coa");
  if (assisting > 2) throw StructuralError("coa: assisting party out of range");
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < 3; ++i)
    if (i != assisting) keep.push_back(i);
  const CMatrix rho = reduced(k, keep);
  return fidelity(rho, spin_flip(rho).mat);
}

double voa3(const Ket& k) {
  require_qubits(k, 3, "voa3");
  return std::cbrt(coa(k, 0) * coa(k, 1) * coa(k, 2));
}

double three_tangle_pure(const Ket& k) {
  require_qubits(k, 3, "three_tangle_pure");

  auto tangle_from_pivot = [&](std::size_t pivot) {
    const CMatrix rho_p = reduced(k, {pivot});
    const cplx det = rho_p(0, 0) * rho_p(1, 1) - rho_p(0, 1) * rho_p(1, 0);
    const double c_cut_sq = 4.0 * std::max(det.real(), 0.0);
    double t = c_cut_sq;
    for (std::size_t other = 0; other < 3; ++other) {
      if (other == pivot) continue;
      std::vector<std::size_t> keep = {std::min(pivot, other),
                                       std::max(pivot, other)};
      const double c = concurrence_mixed(reduced(k, keep));
      t -= c * c;
    }
    return t;
  };

  double tau = tangle_from_pivot(0);
  assert(std::abs(tau - tangle_from_pivot(1)) < 1e-9);
  assert(std::abs(tau - tangle_from_pivot(2)) < 1e-9);
  if (tau < -1e-9)
    throw NumericalError("three_tangle_pure: tangle below round-off floor");
  // The difference of order-one squared concurrences carries ~1e-13 of
  // cancellation noise. Below 1e-12 the tangle is indistinguishable from
  // zero, and downstream square roots would smear exact zeros into ~1e-6.
  return tau < 1e-12 ? 0.0 : tau;
}

double mpc(const Ket& k) {
  require_qubits(k, 3, "mpc");
  const double tau = three_tangle_pure(k);
  double best = 2.0;
  const std::size_t pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (const auto& pr : pairs) {
    const double c = concurrence_mixed(reduced(k, {pr[0], pr[1]}));
    best = std::min(best, std::sqrt(c * c + tau));
  }
  return best;
}

double ggm(const Ket& k) {
  if ((k.arity() != 3 && k.arity() != 4) || !k.all_qubits())
    throw StructuralError("ggm: expected a 3- or 4-qubit ket");
  return ggm_any(k);
}

double lggm(const Ket& k, std::size_t measured) {
  if ((k.arity() != 3 && k.arity() != 4) || !k.all_qubits())
    throw StructuralError("lggm: expected a 3- or 4-qubit ket");
  if (measured >= k.arity())
    throw StructuralError("lggm: measured party out of range");

  constexpr int kGrid = 64;
  struct Point {
    double theta, phi, value;
  };
  std::vector<Point> grid;
  grid.reserve(kGrid * kGrid);
  for (int i = 0; i < kGrid; ++i) {
    const double theta = M_PI * i / (kGrid - 1);
    for (int j = 0; j < kGrid; ++j) {
      const double phi = 2.0 * M_PI * j / kGrid;
      grid.push_back({theta, phi, averaged_ggm(k, measured, theta, phi)});
    }
  }
  std::stable_sort(grid.begin(), grid.end(),
                   [](const Point& a, const Point& b) { return a.value > b.value; });

  double best = grid.front().value;
  SimplexOptions opts;
  opts.max_iters = 30;
  opts.step = M_PI / (kGrid - 1);
  for (int s = 0; s < 3; ++s) {
    const Point& p = grid[s];
    auto neg = [&](const std::vector<double>& x) {
      return -averaged_ggm(k, measured, x[0], x[1]);
    };
    SimplexResult r = minimize_simplex(neg, {p.theta, p.phi}, opts);
    best = std::max(best, -r.value);
  }
  return best;
}

double gcoa_diagonal(const std::vector<double>& p) {
  const std::size_t d = p.size();
  if (d < 2 || d > 8)
    throw StructuralError("gcoa_diagonal: need between 2 and 8 probabilities");
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0))
      throw StructuralError("gcoa_diagonal: negative probability");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw StructuralError("gcoa_diagonal: probabilities must sum to 1");

  double logprod = 0.0;
  for (double v : p) {
    if (v == 0.0) return 0.0;
    logprod += std::log(v);
  }
  return static_cast<double>(d) * std::exp(logprod / static_cast<double>(d));
}

double voa3_mixed_estimate(const DensityMatrix& rho, double tangle) {
  if (rho.dims != std::vector<std::size_t>{2, 2, 2})
    throw StructuralError("voa3_mixed_estimate: expected a 3-qubit state");
  validate_density_matrix(rho);
  if (tangle < 0.0)
    throw StructuralError("voa3_mixed_estimate: negative tangle");

  double prod = 1.0;
  const std::size_t pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (const auto& pr : pairs) {
    const double c =
        concurrence_mixed(partial_trace(rho.mat, rho.dims, {pr[0], pr[1]}));
    prod *= c * c + tangle;
  }
  return std::pow(prod, 1.0 / 6.0);
}

}  // namespace voa
