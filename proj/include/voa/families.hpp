#pragma once

#include <string>
#include <vector>

#include "voa/qstate.hpp"

namespace voa {

struct HeisenbergParams {
  double J = 1.0;   // exchange coupling
  double B1 = 0.0;  // field on the outer sites, z-direction
  double B2 = 0.0;  // field on the middle site, tilted by alpha
  double alpha = 0.0;
  // Drop the bond between the last and first site instead of closing the
  // ring; kept as a sensitivity switch.
  bool open_chain = false;
};

// Three-site XY chain with a tilted middle field:
// J/2 sum_i (sx_i sx_{i+1} + sy_i sy_{i+1})
//   + B1/2 (sz_1 + sz_3) + B2/2 (sz_2 cos a + sx_2 sin a).
// Periodic ring by default (site 4 = site 1). Hermitian, traceless.
CMatrix heisenberg_hamiltonian(const HeisenbergParams& p);

struct GroundState {
  double energy = 0.0;
  Ket state;  // dims {n} for an n-dimensional input
  // Set when the gap to the next level is below 1e-9; the returned vector
  // is then just the solver's first one.
  bool degenerate = false;
};

GroundState ground_state(const CMatrix& h);

// Ordered scan rows for figure reproduction.
struct ScanRow {
  double param = 0.0;
  std::vector<double> values;
};

struct ScanTable {
  std::string param_name;
  std::vector<std::string> columns;
  std::vector<ScanRow> rows;
  std::string provenance;
};

// Ground-state volume across a strictly increasing alpha grid in [0, 2pi],
// with B applied to both field terms. Columns: voa3, energy, degenerate.
ScanTable scan_heisenberg(double J, double B, const std::vector<double>& alphas,
                          bool open_chain = false);

// p |GHZ><GHZ| + (1-p) |W><W|.
DensityMatrix ghz_w_state(double p);

// Piecewise-exact residual tangle of the mixture; breakpoints at the
// printed four-decimal precision (0.6269, 0.7087).
double ghz_w_tangle(double p);

// Common pairwise concurrence of the mixture; positive branch up to its
// zero crossing near 0.2918, zero beyond.
double ghz_w_pair_concurrence(double p);

// Columns: tangle, estimate, where estimate = sqrt(c_pair^2 + tangle) (the
// sixth-root product collapses because the three pairs agree).
ScanTable scan_ghz_w(const std::vector<double>& ps);

// CSV with header `param,<columns...>`, 12 significant digits, LF endings.
std::string to_csv(const ScanTable& t);

}  // namespace voa
