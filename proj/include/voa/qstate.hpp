#pragma once

#include <string>
#include <variant>
#include <vector>

#include "voa/numkit.hpp"

namespace voa {

// Pure state over a tensor product of small subsystems. Flat amplitude index
// puts the FIRST subsystem most significant: for dims [2,2,2], |110> sits at
// index 6. Boundary constructors produce unit-norm kets; a few operations
// explicitly accept subnormalized ones and say so.
struct Ket {
  std::vector<std::size_t> dims;
  std::vector<cplx> amps;

  std::size_t arity() const { return dims.size(); }
  std::size_t size() const { return amps.size(); }
  double norm() const;
  bool all_qubits() const;
};

// Validates shape and finiteness; enforces unit norm (1e-12) unless
// require_normalized is false.
Ket make_ket(std::vector<std::size_t> dims, std::vector<cplx> amps,
             bool require_normalized = true);

Ket tensor_product(const Ket& a, const Ket& b);

struct DensityMatrix {
  std::vector<std::size_t> dims;
  CMatrix mat;
};

// Shape, hermiticity (1e-10), PSD (eigenvalues >= -1e-10), trace within tol
// of expected_trace.
void validate_density_matrix(const DensityMatrix& dm, double expected_trace = 1.0,
                             double tol = 1e-10);

// Requires a normalized ket.
DensityMatrix dm_from_ket(const Ket& k);

// Catalog of named states. Parameterless: ghz, w, psi_w, psi2, psi3, psi4,
// ghz4, w4, c4, hs. Parameterized: gghz (alpha), gw (x1,x2,x3),
// phi1 (l0,l1,l4), phi2 (l0,mu,l2,l4), diag (p0..p{d-1}, 2<=d<=8).
// Parameter constraints are enforced within 1e-9 and the result is
// renormalized to machine precision.
Ket named_state(const std::string& name, const std::vector<double>& params = {});

using State = std::variant<Ket, DensityMatrix>;

// JSON document: {"kind": "ket"|"dm", "dims": [..], "data": ...} with data a
// list of [re, im] pairs (ket) or a list of rows of pairs (dm). Unknown keys
// are rejected. Norm/trace may be off by up to 1e-4 (hand-written documents);
// the parsed state is renormalized.
State parse_state(const std::string& text);
std::string serialize_state(const Ket& k);
std::string serialize_state(const DensityMatrix& dm);
std::string serialize_state(const State& s);

}  // namespace voa
