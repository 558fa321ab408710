#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "voa/qstate.hpp"

namespace voa {

struct OptimizerConfig {
  // Ensemble size; 0 selects max(rank, min(rank + 4, 16)). Slightly
  // overcomplete ensembles unlock better maxima than rank-sized ones.
  std::size_t m = 0;
  int restarts = 16;
  int max_iters = 400;  // simplex iteration budget per restart
  double tolerance = 1e-7;
  std::uint64_t seed = 42;
};

enum class Direction { kMax, kMin };

// Concrete ensemble witnessing an optimizer bound. The ensemble reconstructs
// the source density matrix within 1e-7 (max entry), weights sum to 1 within
// 1e-9, and `objective` is their weighted measure within 1e-9.
struct DecompositionCertificate {
  std::vector<std::pair<double, Ket>> ensemble;
  double objective = 0.0;
  Direction direction = Direction::kMax;
  int restarts_used = 0;
  long long iterations = 0;
  double tolerance = 0.0;
  std::uint64_t seed = 0;
};

// m x m unitary from m^2 real parameters via the exponential of an
// anti-Hermitian generator; satisfies max|U'U - I| <= 1e-10.
CMatrix unitary_from_params(std::size_t m, const std::vector<double>& params);

// Searches over ensemble decompositions of rho for the extremum of the
// weighted measure sum(w_i * f(k_i)), f evaluated on normalized kets.
// direction=kMax returns a lower bound on the supremum, kMin an upper bound
// on the infimum. Deterministic given the seed; restart r depends only on
// (seed, r), so enlarging the restart budget never worsens the result.
DecompositionCertificate optimize_decomposition(
    const DensityMatrix& rho, const std::function<double(const Ket&)>& f,
    Direction direction, const OptimizerConfig& config = {});

struct AssistBounds {
  double lower = 0.0;
  double upper = 1.0;
};

// Assistance volume w.r.t. one party of a normalized 4-qubit ket: the best
// found average volume over decompositions of the remaining three qubits.
// The upper bound is the trivial 1.
AssistBounds coa4(const Ket& k, std::size_t assisting,
                  const OptimizerConfig& config = {});
AssistBounds coa4_certified(const Ket& k, std::size_t assisting,
                            const OptimizerConfig& config,
                            DecompositionCertificate& certificate);

// Geometric mean of the four per-party assistance bounds.
AssistBounds voa4(const Ket& k, const OptimizerConfig& config = {});

}  // namespace voa
