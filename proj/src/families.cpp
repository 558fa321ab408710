#include "voa/families.hpp"

#include <cmath>
#include <cstdio>

#include "voa/tripartite.hpp"

namespace voa {

namespace {

CMatrix pauli(char which) {
  CMatrix m(2, 2);
  switch (which) {
    case 'x':
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case 'y':
      m(0, 1) = cplx(0.0, -1.0);
      m(1, 0) = cplx(0.0, 1.0);
      break;
    default:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
  }
  return m;
}

CMatrix on_site(const CMatrix& op, std::size_t site) {
  CMatrix full = CMatrix::identity(1);
  for (std::size_t i = 0; i < 3; ++i)
    full = kron(full, i == site ? op : CMatrix::identity(2));
  return full;
}

CMatrix two_site(const CMatrix& op, std::size_t a, std::size_t b) {
  CMatrix full = CMatrix::identity(1);
  for (std::size_t i = 0; i < 3; ++i)
    full = kron(full, (i == a || i == b) ? op : CMatrix::identity(2));
  return full;
}

void require_grid(const std::vector<double>& grid, double lo, double hi,
                  const char* who) {
  if (grid.empty()) throw StructuralError(std::string(who) + ": empty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < lo - 1e-12 || grid[i] > hi + 1e-12)
      throw StructuralError(std::string(who) + ": grid point out of range");
    if (i > 0 && grid[i] <= grid[i - 1])
      throw StructuralError(std::string(who) + ": grid must strictly increase");
  }
}

std::string format_g12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

CMatrix heisenberg_hamiltonian(const HeisenbergParams& p) {
  if (!std::isfinite(p.J) || !std::isfinite(p.B1) || !std::isfinite(p.B2) ||
      !std::isfinite(p.alpha))
    throw StructuralError("heisenberg_hamiltonian: parameters must be finite");
  if (p.alpha < -1e-12 || p.alpha > 2.0 * M_PI + 1e-12)
    throw StructuralError("heisenberg_hamiltonian: alpha outside [0, 2pi]");

  const CMatrix sx = pauli('x'), sy = pauli('y'), sz = pauli('z');
  CMatrix h(8, 8);

  const std::size_t bonds[3][2] = {{0, 1}, {1, 2}, {2, 0}};
  const std::size_t nbonds = p.open_chain ? 2 : 3;
  for (std::size_t b = 0; b < nbonds; ++b) {
    h += cplx(p.J / 2.0) * two_site(sx, bonds[b][0], bonds[b][1]);
    h += cplx(p.J / 2.0) * two_site(sy, bonds[b][0], bonds[b][1]);
  }
  h += cplx(p.B1 / 2.0) * (on_site(sz, 0) + on_site(sz, 2));
  h += cplx(p.B2 / 2.0 * std::cos(p.alpha)) * on_site(sz, 1);
  h += cplx(p.B2 / 2.0 * std::sin(p.alpha)) * on_site(sx, 1);
  return h;
}

GroundState ground_state(const CMatrix& h) {
  if (h.rows() != h.cols() || h.rows() < 2)
    throw StructuralError("ground_state: need a square matrix");
  if (!h.is_hermitian(1e-10))
    throw NumericalError("ground_state: matrix is not Hermitian");

  const HermEigResult e = herm_eig(h);
  const std::size_t n = h.rows();
  std::vector<cplx> amps(n);
  double norm2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    amps[i] = e.eigenvectors(i, 0);
    norm2 += std::norm(amps[i]);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (cplx& a : amps) a *= inv;

  GroundState g;
  g.energy = e.eigenvalues[0];
  g.state = Ket{{n}, std::move(amps)};
  g.degenerate = n > 1 && e.eigenvalues[1] - e.eigenvalues[0] < 1e-9;
  return g;
}

ScanTable scan_heisenberg(double J, double B, const std::vector<double>& alphas,
                          bool open_chain) {
  require_grid(alphas, 0.0, 2.0 * M_PI, "scan_heisenberg");

  ScanTable t;
  t.param_name = "alpha";
  t.columns = {"voa3", "energy", "degenerate"};
  t.provenance = "J=" + format_g12(J) + ",B=" + format_g12(B) +
                 (open_chain ? ",chain=open" : ",chain=ring");
  t.rows.reserve(alphas.size());
  for (double alpha : alphas) {
    HeisenbergParams p;
    p.J = J;
    p.B1 = B;
    p.B2 = B;
    p.alpha = alpha;
    p.open_chain = open_chain;
    const GroundState g = ground_state(heisenberg_hamiltonian(p));
    const Ket k{{2, 2, 2}, g.state.amps};
    t.rows.push_back({alpha, {voa3(k), g.energy, g.degenerate ? 1.0 : 0.0}});
  }
  return t;
}

DensityMatrix ghz_w_state(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw StructuralError("ghz_w_state: weight outside [0,1]");
  const Ket ghz = named_state("ghz");
  const Ket w = named_state("w");
  CMatrix m = cplx(p) * outer(ghz.amps, ghz.amps) +
              cplx(1.0 - p) * outer(w.amps, w.amps);
  return {{2, 2, 2}, std::move(m)};
}

double ghz_w_tangle(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw StructuralError("ghz_w_tangle: weight outside [0,1]");
  constexpr double kZeroUpTo = 0.6269;
  constexpr double kCrossover = 0.7087;
  if (p <= kZeroUpTo) return 0.0;
  if (p <= kCrossover) {
    const double g1 =
        p * p - (8.0 * std::sqrt(6.0) / 9.0) * std::sqrt(p * (1.0 - p) *
                                                         (1.0 - p) * (1.0 - p));
    return std::max(0.0, g1);
  }
  const double g2 =
      1.0 - (1.0 - p) * (1.5 + std::sqrt(465.0) / 18.0);
  return std::max(0.0, g2);
}

double ghz_w_pair_concurrence(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw StructuralError("ghz_w_pair_concurrence: weight outside [0,1]");
  const double c =
      (2.0 / 3.0) * (1.0 - p) - std::sqrt(p * (p + 2.0) / 3.0);
  return std::max(0.0, c);
}

ScanTable scan_ghz_w(const std::vector<double>& ps) {
  require_grid(ps, 0.0, 1.0, "scan_ghz_w");
  ScanTable t;
  t.param_name = "p";
  t.columns = {"tangle", "estimate"};
  t.provenance = "family=ghz-w";
  t.rows.reserve(ps.size());
  for (double p : ps) {
    const double tau = ghz_w_tangle(p);
    const double c = ghz_w_pair_concurrence(p);
    t.rows.push_back({p, {tau, std::sqrt(c * c + tau)}});
  }
  return t;
}

std::string to_csv(const ScanTable& t) {
  for (std::size_t i = 1; i < t.rows.size(); ++i)
    if (t.rows[i].param <= t.rows[i - 1].param)
      throw StructuralError("to_csv: parameter column must strictly increase");

  std::string out = t.param_name;
  for (const std::string& c : t.columns) {
    out += ',';
    out += c;
  }
  out += '\n';
  for (const ScanRow& row : t.rows) {
    if (row.values.size() != t.columns.size())
      throw StructuralError("to_csv: row width does not match header");
    out += format_g12(row.param);
    for (double v : row.values) {
      if (!std::isfinite(v)) throw NumericalError("to_csv: non-finite value");
      out += ',';
      out += format_g12(v);
    }
    out += '\n';
  }
  return out;
}

}  // namespace voa
