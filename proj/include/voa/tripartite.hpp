#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "voa/qstate.hpp"

namespace voa {

// Named measure values for one state, in insertion order. `method` records
// how each value was produced: "closed-form", "optimizer-lower-bound" or
// "piecewise-exact"; optimizer entries carry restart/tolerance metadata.
struct MeasureEntry {
  double value = 0.0;
  std::string method;
  std::map<std::string, std::string> metadata;
};

struct MeasureReport {
  std::string state;
  std::vector<std::pair<std::string, MeasureEntry>> entries;

  void add(const std::string& name, double value, const std::string& method,
           std::map<std::string, std::string> metadata = {});
};

// Concurrence of assistance: the fidelity between the reduced state of the
// two non-assisting parties and its spin flip. Subnormalized kets are
// accepted; the value then scales by the squared norm.
double coa(const Ket& k, std::size_t assisting);

// Geometric mean of the three single-party assistance concurrences.
double voa3(const Ket& k);

// Residual tangle of a normalized three-qubit ket. Round-off values in
// [-1e-9, 0) clamp to zero; anything more negative throws NumericalError.
double three_tangle_pure(const Ket& k);

// Minimum over pairs {jk} of sqrt(C_jk^2 + tangle).
double mpc(const Ket& k);

// Generalized geometric measure: 1 minus the largest reduced-state
// eigenvalue over every nontrivial bipartition. Arity 3 or 4.
double ggm(const Ket& k);

// Best found value of the measurement-averaged ggm over rank-1 projective
// measurements on qubit `measured`: 64x64 Bloch-sphere grid plus simplex
// refinement from the best grid points. A lower bound on the supremum.
double lggm(const Ket& k, std::size_t measured);

// Generalized assistance concurrence of sum_i sqrt(p_i)|iii>, d = p.size()
// in [2,8]: d * (prod p_i)^(1/d).
double gcoa_diagonal(const std::vector<double>& p);

// Mixed-state estimate: sixth root of prod over pairs of (C_jk^2 + tangle).
// The tangle is supplied by the caller (exact, numeric, or a 0 lower bound).
double voa3_mixed_estimate(const DensityMatrix& rho, double tangle);

}  // namespace voa
