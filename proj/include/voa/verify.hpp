#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "voa/numkit.hpp"
#include "voa/qstate.hpp"

namespace voa {

// Deterministic random stream (splitmix64). Identical seeds reproduce
// identical draws. split(i) derives an independent stream for sub-task i from
// the base seed alone, so per-trial streams do not depend on how much of the
// parent stream was consumed.
class RandomModel {
 public:
  explicit RandomModel(std::uint64_t seed = 42);

  std::uint64_t seed() const { return seed_; }
  RandomModel split(std::uint64_t index) const;

  std::uint64_t next();
  double uniform();  // [0, 1)
  double normal();   // standard normal

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

// Two-outcome single-qubit instrument acting on `party`:
// m0^dag m0 + m1^dag m1 = I within 1e-10.
struct KrausPair {
  CMatrix m0{2, 2};
  CMatrix m1{2, 2};
  std::size_t party = 0;
};

struct PropertyReport {
  std::string property;
  int trials = 0;
  double worst_violation = 0.0;
  double slack = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> notes;

  std::string to_json() const;
};

// Haar-uniform ket: complex-normal amplitudes, normalized. Every dim >= 2.
Ket random_pure_ket(const std::vector<std::size_t>& dims, RandomModel& model);

// Instrument from a Haar 4x2 isometry split into two 2x2 blocks; party 0.
KrausPair random_kraus_pair(RandomModel& model);

// Outcome branches (probability, normalized post-measurement ket) of `pair`
// applied to one qubit of `k`. Branches below probability 1e-12 are dropped.
// Throws NumericalError if the pair is not complete.
std::vector<std::pair<double, Ket>> apply_instrument(const Ket& k,
                                                     const KrausPair& pair);

// Residual of coa^2 = pair_concurrence^2 + tangle over Haar kets, all three
// assisting parties. Slack 1e-8.
PropertyReport check_monogamy(int trials, const RandomModel& model);

// Average-measure excess under `rounds` single-qubit instruments with
// classical feed-forward (fresh instrument per branch per round). Measures:
// "voa3", "mpc", "ggm", "coa0".."coa2" (fixed assisting party), and the
// deliberately non-monotone "coa-max" negative control. Slack 1e-7; rounds
// capped at 12. `instrument` overrides the branch instrument source (used to
// drive the harness with restricted instrument classes); default is
// random_kraus_pair.
PropertyReport check_locc_monotonicity(
    const std::string& measure, int trials, int rounds,
    const RandomModel& model,
    const std::function<KrausPair(RandomModel&)>& instrument = {});

// Asserts voa3(c k) = |c|^2 voa3(k) at slack 1e-9. Also fits the exponent of
// voa3((A ox I ox I) k) / voa3(k) against |det A| over random GL(2) maps and
// reports it in notes (det_exponent, det_scatter_rms, det_samples) without
// asserting a value.
PropertyReport check_homogeneity_and_det_scaling(int trials,
                                                 const RandomModel& model);

// |voa3_mixed_estimate(|k><k|, tangle(k)) - voa3(k)| over Haar kets.
// Slack 1e-8.
PropertyReport check_estimator_consistency(int trials,
                                           const RandomModel& model);

}  // namespace voa
