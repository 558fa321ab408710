#include "voa/quadripartite.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "voa/optim.hpp"
#include "voa/tripartite.hpp"

namespace voa {

namespace {

// splitmix64 finalizer, used to derive independent per-restart streams.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct Stream {
  std::uint64_t state;
  double centered() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = mix64(state - 0x9e3779b97f4a7c15ULL);
    return 2.0 * (static_cast<double>(z >> 11) * 0x1.0p-53) - 1.0;
  }
};

// Sum of the two singular values of a 2x2 matrix:
// (s1 + s2)^2 = |.|_F^2 + 2|det|.
double nuclear_norm_2x2(cplx a, cplx b, cplx c, cplx d) {
  const double fro2 =
      std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d);
  const double det = 2.0 * std::abs(a * d - b * c);
  return std::sqrt(std::max(fro2 + det, 0.0));
}

// Assistance concurrence of a (possibly subnormalized) pure 3-qubit state
// w.r.t. party r: nuclear norm of the 2x2 bilinear form M^T (sy(x)sy) M,
// where M reshapes the amplitudes with party r as the column register.
// Equals the fidelity between the kept pair's reduced state and its spin
// flip; this form skips the eigensolves.
double coa_pure_fast(const std::vector<cplx>& a, std::size_t r) {
  // Pair-basis index p in {0..3} maps to the amplitude with party r's bit
  // spliced back in; sy(x)sy flips p -> 3-p with signs {-,+,+,-}.
  static const double sign[4] = {-1.0, 1.0, 1.0, -1.0};
  const std::size_t shift = 2 - r;  // bit position of party r
  const std::size_t low_mask = (std::size_t{1} << shift) - 1;
  // splice bit c of party r into pair index p
  auto idx = [&](std::size_t p, std::size_t c) {
    const std::size_t upper = p >> shift, lower = p & low_mask;
    return (upper << (shift + 1)) | (c << shift) | lower;
  };
  cplx t[2][2];
  for (std::size_t c0 = 0; c0 < 2; ++c0)
    for (std::size_t c1 = 0; c1 < 2; ++c1) {
      cplx sum(0.0);
      for (std::size_t p = 0; p < 4; ++p)
        sum += sign[p] * a[idx(p, c0)] * a[idx(3 - p, c1)];
      t[c0][c1] = sum;
    }
  return nuclear_norm_2x2(t[0][0], t[0][1], t[1][0], t[1][1]);
}

double voa3_pure_fast(const std::vector<cplx>& a) {
  return std::cbrt(coa_pure_fast(a, 0) * coa_pure_fast(a, 1) *
                   coa_pure_fast(a, 2));
}

void require_norm(const Ket& k, const char* who) {
  if (std::abs(k.norm() - 1.0) > 1e-9)
    throw StructuralError(std::string(who) + ": ket must be normalized");
}

}  // namespace

CMatrix unitary_from_params(std::size_t m, const std::vector<double>& params) {
  if (m == 0) throw StructuralError("unitary_from_params: m must be positive");
  if (params.size() != m * m)
    throw StructuralError("unitary_from_params: need m^2 parameters");

  // Hermitian H from the parameters; the unitary is exp(iH).
  CMatrix h(m, m);
  for (std::size_t i = 0; i < m; ++i) h(i, i) = params[i];
  std::size_t at = m;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      const cplx z(params[at], params[at + 1]);
      at += 2;
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }

  const HermEigResult e = herm_eig(h);
  CMatrix u(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      cplx sum(0.0);
      for (std::size_t k = 0; k < m; ++k)
        sum += e.eigenvectors(i, k) * std::polar(1.0, e.eigenvalues[k]) *
               std::conj(e.eigenvectors(j, k));
      u(i, j) = sum;
    }

  const CMatrix gram = u.adjoint() * u;
  CMatrix dev = gram;
  for (std::size_t i = 0; i < m; ++i) dev(i, i) -= 1.0;
  if (dev.max_abs() > 1e-10)
    throw NumericalError("unitary_from_params: generator exponential drifted");
  return u;
}

DecompositionCertificate optimize_decomposition(
    const DensityMatrix& rho, const std::function<double(const Ket&)>& f,
    Direction direction, const OptimizerConfig& config) {
  validate_density_matrix(rho);
  if (config.restarts < 1)
    throw StructuralError("optimize_decomposition: need at least one restart");

  const std::size_t dim = rho.mat.rows();
  const HermEigResult e = herm_eig(rho.mat);

  // Subnormalized eigen-members sqrt(lambda) * v, largest eigenvalue first.
  std::vector<std::vector<cplx>> members;
  for (std::size_t k = dim; k-- > 0;) {
    if (e.eigenvalues[k] <= 1e-10) break;
    const double w = std::sqrt(e.eigenvalues[k]);
    std::vector<cplx> v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = w * e.eigenvectors(i, k);
    members.push_back(std::move(v));
  }
  const std::size_t rank = members.size();
  if (rank == 0)
    throw NumericalError("optimize_decomposition: state has no support");

  DecompositionCertificate cert;
  cert.direction = direction;
  cert.tolerance = config.tolerance;
  cert.seed = config.seed;

  if (rank == 1) {
    double inv = 1.0 / std::sqrt(e.eigenvalues[dim - 1]);
    std::vector<cplx> v = members[0];
    for (cplx& z : v) z *= inv;
    Ket k{rho.dims, std::move(v)};
    cert.objective = f(k);
    cert.ensemble.push_back({1.0, std::move(k)});
    return cert;
  }

  const std::size_t m =
      config.m == 0 ? std::max(rank, std::min(rank + 4, std::size_t{16}))
                    : config.m;
  if (m < rank)
    throw StructuralError(
        "optimize_decomposition: ensemble size below the state's rank");

  const double flip = direction == Direction::kMax ? -1.0 : 1.0;
  long long total_iters = 0;

  // Mixed ensemble and weighted objective for one unitary.
  auto evaluate = [&](const CMatrix& u,
                      std::vector<std::pair<double, Ket>>* out) {
    double acc = 0.0;
    for (std::size_t l = 0; l < m; ++l) {
      std::vector<cplx> chi(dim, cplx(0.0));
      for (std::size_t k = 0; k < rank; ++k) {
        const cplx c = std::conj(u(l, k));
        for (std::size_t i = 0; i < dim; ++i) chi[i] += c * members[k][i];
      }
      double p = 0.0;
      for (const cplx& z : chi) p += std::norm(z);
      if (p < 1e-14) continue;
      const double inv = 1.0 / std::sqrt(p);
      for (cplx& z : chi) z *= inv;
      Ket kk{rho.dims, std::move(chi)};
      acc += p * f(kk);
      if (out) out->push_back({p, std::move(kk)});
    }
    return acc;
  };

  auto objective = [&](const std::vector<double>& params) {
    return flip * evaluate(unitary_from_params(m, params), nullptr);
  };

  std::vector<double> best_params;
  double best = 0.0;
  bool have_best = false;

  // Each restart spends its iteration budget in rounds with shrinking
  // simplex edges, re-centering on the round's best point; this polishes
  // plateau maxima far better than one long run.
  const double round_steps[4] = {0.3, 0.08, 0.02, 0.005};
  for (int r = 0; r < config.restarts; ++r) {
    std::vector<double> start(m * m, 0.0);
    if (r > 0) {
      Stream stream{mix64(config.seed ^ mix64(static_cast<std::uint64_t>(r)))};
      for (double& p : start) p = 1.2 * stream.centered();
    }
    double val = 0.0;
    for (int round = 0; round < 4; ++round) {
      SimplexOptions opts;
      opts.max_iters = config.max_iters / 4;
      opts.f_tolerance = config.tolerance;
      opts.step = round_steps[round];
      SimplexResult res = minimize_simplex(objective, start, opts);
      start = res.x;
      val = res.value;
      total_iters += res.iterations;
    }
    if (!have_best || val < best) {
      best = val;
      best_params = start;
      have_best = true;
    }
  }

  cert.restarts_used = config.restarts;
  cert.iterations = total_iters;
  cert.objective = evaluate(unitary_from_params(m, best_params), &cert.ensemble);
  return cert;
}

AssistBounds coa4_certified(const Ket& k, std::size_t assisting,
                            const OptimizerConfig& config,
                            DecompositionCertificate& certificate) {
  if (k.arity() != 4 || !k.all_qubits())
    throw StructuralError("coa4: expected a 4-qubit ket");
  if (assisting > 3)
    throw StructuralError("coa4: assisting party out of range");
  require_norm(k, "coa4");

  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < 4; ++i)
    if (i != assisting) keep.push_back(i);
  DensityMatrix rho{{2, 2, 2},
                    partial_trace(outer(k.amps, k.amps), k.dims, keep)};

  auto f = [](const Ket& member) { return voa3_pure_fast(member.amps); };
  certificate = optimize_decomposition(rho, f, Direction::kMax, config);
  return {certificate.objective, 1.0};
}

AssistBounds coa4(const Ket& k, std::size_t assisting,
                  const OptimizerConfig& config) {
  DecompositionCertificate cert;
  return coa4_certified(k, assisting, config, cert);
}

AssistBounds voa4(const Ket& k, const OptimizerConfig& config) {
  if (k.arity() != 4 || !k.all_qubits())
    throw StructuralError("voa4: expected a 4-qubit ket");
  require_norm(k, "voa4");
  double prod = 1.0;
  for (std::size_t party = 0; party < 4; ++party)
    prod *= coa4(k, party, config).lower;
  return {std::pow(prod, 0.25), 1.0};
}

}  // namespace voa
