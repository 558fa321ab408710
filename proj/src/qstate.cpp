#include "voa/qstate.hpp"

#include <cmath>
#include <numbers>

#include "json.hpp"

namespace voa {

namespace {

using nlohmann::json;

constexpr double kParamTol = 1e-9;
constexpr double kParseTol = 1e-4;

std::size_t dim_product(const std::vector<std::size_t>& dims) {
  std::size_t p = 1;
  for (std::size_t d : dims) p *= d;
  return p;
}

void check_dims(const std::vector<std::size_t>& dims) {
  if (dims.empty()) throw StructuralError("state: empty dims");
  for (std::size_t d : dims)
    if (d < 2) throw StructuralError("state: subsystem dimension must be >= 2");
}

Ket qubit_ket(std::size_t arity, const std::vector<std::pair<std::size_t, cplx>>& terms) {
  Ket k;
  k.dims.assign(arity, 2);
  k.amps.assign(std::size_t(1) << arity, cplx(0.0, 0.0));
  for (auto& [idx, amp] : terms) k.amps[idx] += amp;
  double n = k.norm();
  for (auto& a : k.amps) a /= n;
  return k;
}

void check_unit_sum_of_squares(const std::vector<double>& xs, const char* what) {
  double s = 0.0;
  for (double x : xs) {
    if (x < -kParamTol) throw NumericalError(std::string(what) + ": negative parameter");
    s += x * x;
  }
  if (std::abs(s - 1.0) > kParamTol)
    throw NumericalError(std::string(what) + ": parameters must have unit sum of squares");
}

}  // namespace

double Ket::norm() const {
  double s = 0.0;
  for (cplx a : amps) s += std::norm(a);
  return std::sqrt(s);
}

bool Ket::all_qubits() const {
  for (std::size_t d : dims)
    if (d != 2) return false;
  return true;
}

Ket make_ket(std::vector<std::size_t> dims, std::vector<cplx> amps,
             bool require_normalized) {
  check_dims(dims);
  if (amps.size() != dim_product(dims))
    throw StructuralError("ket: amplitude count does not match dims");
  for (cplx a : amps)
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      throw NumericalError("ket: non-finite amplitude");
  Ket k{std::move(dims), std::move(amps)};
  if (require_normalized && std::abs(k.norm() - 1.0) > 1e-12)
    throw NumericalError("ket: not normalized");
  return k;
}

Ket tensor_product(const Ket& a, const Ket& b) {
  Ket k;
  k.dims = a.dims;
  k.dims.insert(k.dims.end(), b.dims.begin(), b.dims.end());
  k.amps.resize(a.amps.size() * b.amps.size());
  for (std::size_t i = 0; i < a.amps.size(); ++i)
    for (std::size_t j = 0; j < b.amps.size(); ++j)
      k.amps[i * b.amps.size() + j] = a.amps[i] * b.amps[j];
  return k;
}

void validate_density_matrix(const DensityMatrix& dm, double expected_trace,
                             double tol) {
  check_dims(dm.dims);
  std::size_t side = dim_product(dm.dims);
  if (dm.mat.rows() != side || dm.mat.cols() != side)
    throw StructuralError("density matrix: shape does not match dims");
  if (!dm.mat.is_hermitian(1e-10))
    throw NumericalError("density matrix: not Hermitian");
  if (std::abs(dm.mat.trace().real() - expected_trace) > tol ||
      std::abs(dm.mat.trace().imag()) > tol)
    throw NumericalError("density matrix: trace mismatch");
  HermEigResult e = herm_eig(dm.mat);
  if (e.eigenvalues.front() < -1e-10)
    throw NumericalError("density matrix: not positive semidefinite");
}

DensityMatrix dm_from_ket(const Ket& k) {
  if (std::abs(k.norm() - 1.0) > 1e-12)
    throw NumericalError("dm_from_ket: ket not normalized");
  return DensityMatrix{k.dims, outer(k.amps, k.amps)};
}

Ket named_state(const std::string& name, const std::vector<double>& params) {
  const double r2 = std::sqrt(2.0);
  auto expect_params = [&](std::size_t n) {
    if (params.size() != n)
      throw StructuralError("named_state: '" + name + "' expects " +
                            std::to_string(n) + " parameter(s)");
  };

  if (name == "ghz") {
    expect_params(0);
    return qubit_ket(3, {{0, 1.0}, {7, 1.0}});
  }
  if (name == "w") {
    expect_params(0);
    return qubit_ket(3, {{4, 1.0}, {2, 1.0}, {1, 1.0}});
  }
  if (name == "psi_w") {
    expect_params(0);
    return qubit_ket(3, {{4, 0.5}, {2, 0.5}, {1, 0.5 * r2}});
  }
  if (name == "psi2") {
    expect_params(0);
    const double t = std::numbers::pi / 8.0;
    return qubit_ket(3, {{0, std::cos(t)}, {7, std::sin(t)}});
  }
  if (name == "psi3") {
    expect_params(0);
    return qubit_ket(3, {{0, 0.5}, {4, 0.5}, {7, 0.5 * r2}});
  }
  if (name == "psi4") {
    expect_params(0);
    const double c = 1.0 / (2.0 * r2);
    return qubit_ket(3, {{0, c * r2}, {4, c}, {5, c}, {7, 2.0 * c}});
  }
  if (name == "ghz4") {
    expect_params(0);
    return qubit_ket(4, {{0, 1.0}, {15, 1.0}});
  }
  if (name == "w4") {
    expect_params(0);
    return qubit_ket(4, {{8, 1.0}, {4, 1.0}, {2, 1.0}, {1, 1.0}});
  }
  if (name == "c4") {
    expect_params(0);
    return qubit_ket(4, {{0, 1.0}, {3, 1.0}, {12, 1.0}, {15, -1.0}});
  }
  if (name == "hs") {
    expect_params(0);
    const cplx w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    const cplx w2 = w * w;
    return qubit_ket(4, {{3, 1.0}, {12, 1.0}, {5, w}, {10, w}, {6, w2}, {9, w2}});
  }
  if (name == "gghz") {
    expect_params(1);
    double a = params[0];
    if (a < -kParamTol || a > 1.0 + kParamTol)
      throw NumericalError("named_state: gghz parameter must lie in [0,1]");
    a = std::clamp(a, 0.0, 1.0);
    double b = std::sqrt(std::max(0.0, 1.0 - a * a));
    return qubit_ket(3, {{0, a}, {7, b}});
  }
  if (name == "gw") {
    expect_params(3);
    check_unit_sum_of_squares(params, "named_state: gw");
    return qubit_ket(3, {{4, params[0]}, {2, params[1]}, {1, params[2]}});
  }
  if (name == "phi1") {
    expect_params(3);
    check_unit_sum_of_squares(params, "named_state: phi1");
    return qubit_ket(3, {{0, params[0]}, {4, params[1]}, {7, params[2]}});
  }
  if (name == "phi2") {
    expect_params(4);
    check_unit_sum_of_squares(params, "named_state: phi2");
    // companion constraint: mu^2 + l2^2 must equal the squared middle weight
    // left over from l0 and l4
    double l1sq = 1.0 - params[0] * params[0] - params[3] * params[3];
    if (std::abs(params[1] * params[1] + params[2] * params[2] - l1sq) > kParamTol)
      throw NumericalError("named_state: phi2 middle-weight constraint violated");
    return qubit_ket(
        3, {{0, params[0]}, {4, params[1]}, {5, params[2]}, {7, params[3]}});
  }
  if (name == "diag") {
    std::size_t d = params.size();
    if (d < 2 || d > 8)
      throw StructuralError("named_state: diag expects between 2 and 8 weights");
    double s = 0.0;
    for (double p : params) {
      if (p < -kParamTol) throw NumericalError("named_state: diag weight negative");
      s += p;
    }
    if (std::abs(s - 1.0) > kParamTol)
      throw NumericalError("named_state: diag weights must sum to one");
    Ket k;
    k.dims = {d, d, d};
    k.amps.assign(d * d * d, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < d; ++i)
      k.amps[i * d * d + i * d + i] = std::sqrt(std::max(params[i], 0.0));
    double n = k.norm();
    for (auto& a : k.amps) a /= n;
    return k;
  }
  throw StructuralError("named_state: unknown name '" + name + "'");
}

namespace {

cplx parse_entry(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw StructuralError("state document: entries must be [re, im] pairs");
  double re = j[0].get<double>();
  double im = j[1].get<double>();
  if (!std::isfinite(re) || !std::isfinite(im))
    throw NumericalError("state document: non-finite entry");
  return cplx(re, im);
}

json entry_json(cplx z) { return json::array({z.real(), z.imag()}); }

}  // namespace

State parse_state(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw StructuralError(std::string("state document: ") + e.what());
  }
  if (!doc.is_object()) throw StructuralError("state document: not an object");
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (it.key() != "kind" && it.key() != "dims" && it.key() != "data")
      throw StructuralError("state document: unknown key '" + it.key() + "'");
  if (!doc.contains("kind") || !doc.contains("dims") || !doc.contains("data"))
    throw StructuralError("state document: kind, dims and data are required");

  if (!doc["kind"].is_string())
    throw StructuralError("state document: kind must be a string");
  std::string kind = doc["kind"].get<std::string>();
  if (kind != "ket" && kind != "dm")
    throw StructuralError("state document: kind must be 'ket' or 'dm'");

  if (!doc["dims"].is_array() || doc["dims"].empty())
    throw StructuralError("state document: dims must be a non-empty array");
  std::vector<std::size_t> dims;
  for (const auto& d : doc["dims"]) {
    if (!d.is_number_integer() || d.get<long long>() < 2)
      throw StructuralError("state document: dims entries must be integers >= 2");
    dims.push_back(static_cast<std::size_t>(d.get<long long>()));
  }
  std::size_t side = dim_product(dims);

  const json& data = doc["data"];
  if (!data.is_array()) throw StructuralError("state document: data must be an array");

  if (kind == "ket") {
    if (data.size() != side)
      throw StructuralError("state document: amplitude count does not match dims");
    std::vector<cplx> amps;
    amps.reserve(side);
    for (const auto& e : data) amps.push_back(parse_entry(e));
    Ket k = make_ket(dims, std::move(amps), false);
    double n = k.norm();
    if (std::abs(n - 1.0) > kParseTol)
      throw NumericalError("state document: ket norm is " + std::to_string(n));
    if (std::abs(n - 1.0) > 1e-12)
      for (auto& a : k.amps) a /= n;
    return k;
  }

  if (data.size() != side)
    throw StructuralError("state document: row count does not match dims");
  CMatrix m(side, side);
  for (std::size_t i = 0; i < side; ++i) {
    const auto& row = data[i];
    if (!row.is_array() || row.size() != side)
      throw StructuralError("state document: dm rows must match dims");
    for (std::size_t j = 0; j < side; ++j) m(i, j) = parse_entry(row[j]);
  }
  double tr = m.trace().real();
  if (std::abs(tr - 1.0) > kParseTol || std::abs(m.trace().imag()) > kParseTol)
    throw NumericalError("state document: dm trace is " + std::to_string(tr));
  if (std::abs(tr - 1.0) > 1e-12) m *= cplx(1.0 / tr, 0.0);
  DensityMatrix dm{dims, std::move(m)};
  validate_density_matrix(dm, 1.0, 1e-10);
  return dm;
}

std::string serialize_state(const Ket& k) {
  json doc;
  doc["kind"] = "ket";
  doc["dims"] = k.dims;
  json data = json::array();
  for (cplx a : k.amps) data.push_back(entry_json(a));
  doc["data"] = data;
  return doc.dump(2) + "\n";
}

std::string serialize_state(const DensityMatrix& dm) {
  json doc;
  doc["kind"] = "dm";
  doc["dims"] = dm.dims;
  json data = json::array();
  for (std::size_t i = 0; i < dm.mat.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < dm.mat.cols(); ++j) row.push_back(entry_json(dm.mat(i, j)));
    data.push_back(row);
  }
  doc["data"] = data;
  return doc.dump(2) + "\n";
}

std::string serialize_state(const State& s) {
  if (std::holds_alternative<Ket>(s)) return serialize_state(std::get<Ket>(s));
  return serialize_state(std::get<DensityMatrix>(s));
}

}  // namespace voa
