#include "voa/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include "json.hpp"
#include "voa/bipartite.hpp"
#include "voa/tripartite.hpp"

namespace voa {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::string format_note(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// 2x2 operator applied to the qubit whose bit sits `shift` positions above
// the least significant one.
std::vector<cplx> act_on_qubit(const std::vector<cplx>& a, std::size_t shift,
                               const CMatrix& m) {
  const std::size_t mask = std::size_t{1} << shift;
  std::vector<cplx> out(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    const std::size_t bit = (j >> shift) & 1;
    const std::size_t base = j & ~mask;
    out[j] = m(bit, 0) * a[base] + m(bit, 1) * a[base | mask];
  }
  return out;
}

double norm_sq(const std::vector<cplx>& a) {
  double s = 0.0;
  for (const cplx& x : a) s += std::norm(x);
  return s;
}

void require_complete(const KrausPair& pair) {
  if (pair.m0.rows() != 2 || pair.m0.cols() != 2 || pair.m1.rows() != 2 ||
      pair.m1.cols() != 2)
    throw StructuralError("apply_instrument: operators must be 2x2");
  double dev = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < 2; ++k)
        s += std::conj(pair.m0(k, i)) * pair.m0(k, j) +
             std::conj(pair.m1(k, i)) * pair.m1(k, j);
      dev = std::max(dev, std::abs(s - (i == j ? cplx(1.0) : cplx(0.0))));
    }
  }
  if (dev > 1e-10)
    throw NumericalError("apply_instrument: instrument is not complete");
}

double pair_concurrence_of(const Ket& k, std::size_t assisting) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < k.arity(); ++i)
    if (i != assisting) keep.push_back(i);
  return concurrence_mixed(partial_trace(outer(k.amps, k.amps), k.dims, keep));
}

using MeasureFn = std::function<double(const Ket&)>;

// Returns the measure plus the party the feed-forward protocol starts from.
std::pair<MeasureFn, std::size_t> resolve_measure(const std::string& name) {
  if (name == "voa3") return {[](const Ket& k) { return voa3(k); }, 0};
  if (name == "mpc") return {[](const Ket& k) { return mpc(k); }, 0};
  if (name == "ggm") return {[](const Ket& k) { return ggm(k); }, 0};
  if (name == "coa0" || name == "coa1" || name == "coa2") {
    const std::size_t p = static_cast<std::size_t>(name[3] - '0');
    return {[p](const Ket& k) { return coa(k, p); }, p};
  }
  if (name == "coa-max") {
    return {[](const Ket& k) {
              return std::max({coa(k, 0), coa(k, 1), coa(k, 2)});
            },
            0};
  }
  throw StructuralError("check_locc_monotonicity: unknown measure '" + name +
                        "'");
}

void require_trials(int trials, const char* who) {
  if (trials < 1)
    throw StructuralError(std::string(who) + ": trials must be >= 1");
}

}  // namespace

RandomModel::RandomModel(std::uint64_t seed) : seed_(seed), state_(seed) {}

RandomModel RandomModel::split(std::uint64_t index) const {
  return RandomModel(mix64(seed_ ^ mix64(index)));
}

std::uint64_t RandomModel::next() {
  state_ += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double RandomModel::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double RandomModel::normal() {
  const double u1 = (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  const double u2 = static_cast<double>(next() >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::string PropertyReport::to_json() const {
  nlohmann::ordered_json j;
  j["property"] = property;
  j["trials"] = trials;
  j["worst_violation"] = worst_violation;
  j["slack"] = slack;
  j["pass"] = pass;
  j["seed"] = seed;
  if (!notes.empty()) j["notes"] = notes;
  return j.dump(2);
}

Ket random_pure_ket(const std::vector<std::size_t>& dims, RandomModel& model) {
  if (dims.empty()) throw StructuralError("random_pure_ket: no subsystems");
  std::size_t total = 1;
  for (std::size_t d : dims) {
    if (d < 2) throw StructuralError("random_pure_ket: dims must be >= 2");
    total *= d;
  }
  std::vector<cplx> amps(total);
  double n2 = 0.0;
  do {
    for (cplx& a : amps) a = cplx(model.normal(), model.normal());
    n2 = norm_sq(amps);
  } while (n2 < 1e-12);
  const double inv = 1.0 / std::sqrt(n2);
  for (cplx& a : amps) a *= inv;
  return make_ket(dims, std::move(amps));
}

KrausPair random_kraus_pair(RandomModel& model) {
  // Gram-Schmidt on two Gaussian 4-vectors gives a Haar 4x2 isometry; its
  // upper and lower 2x2 blocks form a complete pair.
  std::vector<cplx> c0(4), c1(4);
  while (true) {
    for (cplx& x : c0) x = cplx(model.normal(), model.normal());
    for (cplx& x : c1) x = cplx(model.normal(), model.normal());
    const double n0 = std::sqrt(norm_sq(c0));
    if (n0 < 1e-8) continue;
    for (cplx& x : c0) x /= n0;
    cplx ov = 0.0;
    for (std::size_t i = 0; i < 4; ++i) ov += std::conj(c0[i]) * c1[i];
    for (std::size_t i = 0; i < 4; ++i) c1[i] -= ov * c0[i];
    const double n1 = std::sqrt(norm_sq(c1));
    if (n1 < 1e-8) continue;
    for (cplx& x : c1) x /= n1;
    break;
  }
  KrausPair pair;
  for (std::size_t r = 0; r < 2; ++r) {
    pair.m0(r, 0) = c0[r];
    pair.m0(r, 1) = c1[r];
    pair.m1(r, 0) = c0[2 + r];
    pair.m1(r, 1) = c1[2 + r];
  }
  return pair;
}

std::vector<std::pair<double, Ket>> apply_instrument(const Ket& k,
                                                     const KrausPair& pair) {
  if (!k.all_qubits())
    throw StructuralError("apply_instrument: qubit registers only");
  if (pair.party >= k.arity())
    throw StructuralError("apply_instrument: party out of range");
  require_complete(pair);
  const std::size_t shift = k.arity() - 1 - pair.party;
  std::vector<std::pair<double, Ket>> branches;
  for (const CMatrix* op : {&pair.m0, &pair.m1}) {
    std::vector<cplx> b = act_on_qubit(k.amps, shift, *op);
    const double p = norm_sq(b);
    if (p < 1e-12) continue;
    const double inv = 1.0 / std::sqrt(p);
    for (cplx& x : b) x *= inv;
    branches.emplace_back(p, Ket{k.dims, std::move(b)});
  }
  return branches;
}

PropertyReport check_monogamy(int trials, const RandomModel& model) {
  require_trials(trials, "check_monogamy");
  PropertyReport rep;
  rep.property = "monogamy";
  rep.trials = trials;
  rep.slack = 1e-8;
  rep.seed = model.seed();
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    RandomModel rng = model.split(static_cast<std::uint64_t>(t));
    const Ket k = random_pure_ket({2, 2, 2}, rng);
    const double tau = three_tangle_pure(k);
    for (std::size_t p = 0; p < 3; ++p) {
      const double ca = coa(k, p);
      const double c = pair_concurrence_of(k, p);
      worst = std::max(worst, std::abs(ca * ca - (c * c + tau)));
    }
  }
  rep.worst_violation = worst;
  rep.pass = worst <= rep.slack;
  return rep;
}

PropertyReport check_locc_monotonicity(
    const std::string& measure, int trials, int rounds,
    const RandomModel& model,
    const std::function<KrausPair(RandomModel&)>& instrument) {
  require_trials(trials, "check_locc_monotonicity");
  if (rounds < 1 || rounds > 12)
    throw StructuralError("check_locc_monotonicity: rounds must be in 1..12");
  const auto [f, start_party] = resolve_measure(measure);
  std::function<KrausPair(RandomModel&)> gen = instrument;
  if (!gen) gen = [](RandomModel& r) { return random_kraus_pair(r); };
  PropertyReport rep;
  rep.property = "locc-monotonicity:" + measure;
  rep.trials = trials;
  rep.slack = 1e-7;
  rep.seed = model.seed();
  double worst = 0.0;
  bool first = true;
  for (int t = 0; t < trials; ++t) {
    RandomModel rng = model.split(static_cast<std::uint64_t>(t));
    const Ket k = random_pure_ket({2, 2, 2}, rng);
    const double base = f(k);
    // Even trials walk the parties cyclically from the measure's assisting
    // party; odd trials pick the party per round at random.
    const bool randomized = (t % 2 == 1);
    std::vector<std::pair<double, Ket>> branches{{1.0, k}};
    for (int r = 0; r < rounds; ++r) {
      const std::size_t party =
          randomized ? static_cast<std::size_t>(rng.next() % 3)
                     : (start_party + static_cast<std::size_t>(r)) % 3;
      std::vector<std::pair<double, Ket>> grown;
      for (const auto& [pb, kb] : branches) {
        KrausPair pair = gen(rng);
        pair.party = party;
        for (auto& [pc, kc] : apply_instrument(kb, pair))
          grown.emplace_back(pb * pc, std::move(kc));
      }
      branches = std::move(grown);
    }
    double avg = 0.0;
    for (const auto& [pb, kb] : branches) avg += pb * f(kb);
    const double excess = avg - base;
    if (first || excess > worst) worst = excess;
    first = false;
  }
  rep.worst_violation = worst;
  rep.pass = worst <= rep.slack;
  return rep;
}

PropertyReport check_homogeneity_and_det_scaling(int trials,
                                                 const RandomModel& model) {
  require_trials(trials, "check_homogeneity_and_det_scaling");
  PropertyReport rep;
  rep.property = "homogeneity";
  rep.trials = trials;
  rep.slack = 1e-9;
  rep.seed = model.seed();
  double worst = 0.0;
  std::vector<double> xs, ys;
  for (int t = 0; t < trials; ++t) {
    RandomModel rng = model.split(static_cast<std::uint64_t>(t));
    const Ket k = random_pure_ket({2, 2, 2}, rng);
    const double v = voa3(k);

    const cplx c =
        std::polar(0.3 + 1.7 * rng.uniform(), 2.0 * M_PI * rng.uniform());
    Ket ck = k;
    for (cplx& a : ck.amps) a *= c;
    worst = std::max(worst, std::abs(voa3(ck) - std::norm(c) * v));

    CMatrix a(2, 2);
    double adet = 0.0;
    do {
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
          a(i, j) = cplx(rng.normal(), rng.normal());
      adet = std::abs(a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0));
    } while (adet < 0.05);
    const Ket ak{k.dims, act_on_qubit(k.amps, 2, a)};
    const double va = voa3(ak);
    if (v > 1e-8 && va > 1e-12) {
      xs.push_back(std::log(adet));
      ys.push_back(std::log(va / v));
    }
  }
  if (xs.size() >= 2) {
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx > 1e-12) {
      const double slope = sxy / sxx;
      double rss = 0.0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - my - slope * (xs[i] - mx);
        rss += r * r;
      }
      rep.notes["det_exponent"] = format_note(slope);
      rep.notes["det_scatter_rms"] =
          format_note(std::sqrt(rss / static_cast<double>(xs.size())));
      rep.notes["det_samples"] = std::to_string(xs.size());
    }
  }
  rep.worst_violation = worst;
  rep.pass = worst <= rep.slack;
  return rep;
}

PropertyReport check_estimator_consistency(int trials,
                                           const RandomModel& model) {
  require_trials(trials, "check_estimator_consistency");
  PropertyReport rep;
  rep.property = "estimator-consistency";
  rep.trials = trials;
  rep.slack = 1e-8;
  rep.seed = model.seed();
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    RandomModel rng = model.split(static_cast<std::uint64_t>(t));
    const Ket k = random_pure_ket({2, 2, 2}, rng);
    const double est = voa3_mixed_estimate(dm_from_ket(k), three_tangle_pure(k));
    worst = std::max(worst, std::abs(est - voa3(k)));
  }
  rep.worst_violation = worst;
  rep.pass = worst <= rep.slack;
  return rep;
}

}  // namespace voa
