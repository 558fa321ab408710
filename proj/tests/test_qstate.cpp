#include <cmath>

#include "doctest.h"
#include "test_helpers.hpp"
#include "voa/qstate.hpp"

using voa::cplx;
using voa::Ket;

namespace {

const double R2 = std::sqrt(2.0);

double amp_diff(const Ket& a, const Ket& b) {
  REQUIRE(a.amps.size() == b.amps.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.amps.size(); ++i)
    m = std::max(m, std::abs(a.amps[i] - b.amps[i]));
  return m;
}

}  // namespace

TEST_SUITE("qstate") {

TEST_CASE("flat amplitude index puts the first subsystem most significant") {
  std::vector<cplx> amps(8, 0.0);
  amps[6] = 1.0;  // |110>
  Ket k = voa::make_ket({2, 2, 2}, amps);
  CHECK(k.arity() == 3);
  CHECK(std::abs(k.amps[6] - 1.0) < 1e-15);
  // first qubit must be |1>: reduced state of subsystem 0 is |1><1|
  auto rho = voa::dm_from_ket(k);
  auto a = voa::partial_trace(rho.mat, rho.dims, {0});
  CHECK(std::abs(a(1, 1) - 1.0) < 1e-14);
  auto c = voa::partial_trace(rho.mat, rho.dims, {2});
  CHECK(std::abs(c(0, 0) - 1.0) < 1e-14);
}

TEST_CASE("catalog states have the right support and are normalized") {
  Ket ghz = voa::named_state("ghz");
  CHECK(std::abs(ghz.amps[0] - 1.0 / R2) < 1e-15);
  CHECK(std::abs(ghz.amps[7] - 1.0 / R2) < 1e-15);

  Ket w = voa::named_state("w");
  for (std::size_t i : {1, 2, 4})
    CHECK(std::abs(w.amps[i] - 1.0 / std::sqrt(3.0)) < 1e-15);

  Ket p2 = voa::named_state("psi2");
  CHECK(std::abs(p2.amps[0] - std::cos(std::acos(-1.0) / 8.0)) < 1e-15);
  CHECK(std::abs(p2.amps[7] - std::sin(std::acos(-1.0) / 8.0)) < 1e-15);

  Ket p3 = voa::named_state("psi3");
  CHECK(std::abs(p3.amps[0] - 0.5) < 1e-15);
  CHECK(std::abs(p3.amps[4] - 0.5) < 1e-15);
  CHECK(std::abs(p3.amps[7] - R2 / 2.0) < 1e-15);

  Ket p4 = voa::named_state("psi4");
  CHECK(std::abs(p4.amps[0] - 0.5) < 1e-15);
  CHECK(std::abs(p4.amps[4] - 1.0 / (2.0 * R2)) < 1e-15);
  CHECK(std::abs(p4.amps[5] - 1.0 / (2.0 * R2)) < 1e-15);
  CHECK(std::abs(p4.amps[7] - 1.0 / R2) < 1e-15);

  for (const char* name : {"ghz", "w", "psi_w", "psi2", "psi3", "psi4", "ghz4",
                           "w4", "c4", "hs"}) {
    Ket k = voa::named_state(name);
    CHECK(std::abs(k.norm() - 1.0) < 1e-14);
  }
}

TEST_CASE("four-qubit catalog states sit on the documented basis kets") {
  Ket w4 = voa::named_state("w4");
  CHECK(w4.arity() == 4);
  for (std::size_t i : {1, 2, 4, 8}) CHECK(std::abs(w4.amps[i] - 0.5) < 1e-15);

  Ket c4 = voa::named_state("c4");
  CHECK(std::abs(c4.amps[0] - 0.5) < 1e-15);
  CHECK(std::abs(c4.amps[3] - 0.5) < 1e-15);
  CHECK(std::abs(c4.amps[12] - 0.5) < 1e-15);
  CHECK(std::abs(c4.amps[15] + 0.5) < 1e-15);

  Ket hs = voa::named_state("hs");
  const cplx w = std::polar(1.0, 2.0 * std::acos(-1.0) / 3.0);
  const double s6 = std::sqrt(6.0);
  CHECK(std::abs(hs.amps[3] - 1.0 / s6) < 1e-15);
  CHECK(std::abs(hs.amps[12] - 1.0 / s6) < 1e-15);
  CHECK(std::abs(hs.amps[5] - w / s6) < 1e-15);
  CHECK(std::abs(hs.amps[10] - w / s6) < 1e-15);
  CHECK(std::abs(hs.amps[6] - w * w / s6) < 1e-15);
  CHECK(std::abs(hs.amps[9] - w * w / s6) < 1e-15);
}

TEST_CASE("psi_w is the gw state at weights 1/2, 1/2, sqrt2/2") {
  Ket a = voa::named_state("psi_w");
  Ket b = voa::named_state("gw", {0.5, 0.5, R2 / 2.0});
  CHECK(amp_diff(a, b) < 1e-14);
}

TEST_CASE("gghz interpolates between product and ghz") {
  Ket k = voa::named_state("gghz", {0.6});
  CHECK(std::abs(k.amps[0] - 0.6) < 1e-14);
  CHECK(std::abs(k.amps[7] - 0.8) < 1e-14);
  Ket edge = voa::named_state("gghz", {1.0});
  CHECK(std::abs(edge.amps[0] - 1.0) < 1e-14);
}

TEST_CASE("phi1 and phi2 sit on their documented basis kets") {
  Ket f1 = voa::named_state("phi1", {0.6, 0.48, 0.64});
  CHECK(std::abs(f1.amps[0] - 0.6) < 1e-12);
  CHECK(std::abs(f1.amps[4] - 0.48) < 1e-12);
  CHECK(std::abs(f1.amps[7] - 0.64) < 1e-12);

  double l0 = 0.6, mu = 0.3, l4 = 0.64;
  double l2 = std::sqrt(1.0 - l0 * l0 - mu * mu - l4 * l4);
  Ket f2 = voa::named_state("phi2", {l0, mu, l2, l4});
  CHECK(std::abs(f2.amps[0] - l0) < 1e-12);
  CHECK(std::abs(f2.amps[4] - mu) < 1e-12);
  CHECK(std::abs(f2.amps[5] - l2) < 1e-12);
  CHECK(std::abs(f2.amps[7] - l4) < 1e-12);
}

TEST_CASE("diag builds the correlated qudit state on the diagonal") {
  Ket k = voa::named_state("diag", {0.5, 0.3, 0.2});
  REQUIRE(k.dims == std::vector<std::size_t>{3, 3, 3});
  CHECK(std::abs(k.amps[0] - std::sqrt(0.5)) < 1e-14);
  CHECK(std::abs(k.amps[13] - std::sqrt(0.3)) < 1e-14);  // |111> over d=3
  CHECK(std::abs(k.amps[26] - std::sqrt(0.2)) < 1e-14);  // |222>
  CHECK(std::abs(k.norm() - 1.0) < 1e-14);
}

TEST_CASE("named_state rejects unknown names, bad arity and broken constraints") {
  CHECK_THROWS_AS(voa::named_state("nope"), voa::StructuralError);
  CHECK_THROWS_AS(voa::named_state("ghz", {0.5}), voa::StructuralError);
  CHECK_THROWS_AS(voa::named_state("gghz", {1.5}), voa::NumericalError);
  CHECK_THROWS_AS(voa::named_state("gw", {0.5, 0.5, 0.5}), voa::NumericalError);
  CHECK_THROWS_AS(voa::named_state("gw", {-0.5, 0.5, std::sqrt(0.5)}),
                  voa::NumericalError);
  CHECK_THROWS_AS(voa::named_state("phi1", {0.9, 0.9, 0.9}), voa::NumericalError);
  CHECK_THROWS_AS(voa::named_state("phi2", {0.6, 0.3, 0.1, 0.64}),
                  voa::NumericalError);
  CHECK_THROWS_AS(voa::named_state("diag", {1.0}), voa::StructuralError);
  CHECK_THROWS_AS(voa::named_state("diag", {0.4, 0.4}), voa::NumericalError);
}

TEST_CASE("dm_from_ket produces the projector and validates") {
  auto rho = voa::dm_from_ket(voa::named_state("ghz"));
  voa::validate_density_matrix(rho);
  CHECK(std::abs(rho.mat(0, 0) - 0.5) < 1e-14);
  CHECK(std::abs(rho.mat(0, 7) - 0.5) < 1e-14);
  CHECK(std::abs(rho.mat(7, 7) - 0.5) < 1e-14);
  CHECK(std::abs(rho.mat(3, 3)) < 1e-14);

  Ket sub = voa::make_ket({2}, {0.5, 0.5}, false);
  CHECK_THROWS_AS(voa::dm_from_ket(sub), voa::NumericalError);
}

TEST_CASE("validate_density_matrix rejects trace, hermiticity and psd breaks") {
  voa::DensityMatrix dm{{2}, voa::CMatrix::identity(2)};
  dm.mat *= cplx(0.45, 0.0);  // trace 0.9
  CHECK_THROWS_AS(voa::validate_density_matrix(dm), voa::NumericalError);

  voa::DensityMatrix nh{{2}, voa::CMatrix{{0.5, 0.1}, {0.3, 0.5}}};
  CHECK_THROWS_AS(voa::validate_density_matrix(nh), voa::NumericalError);

  voa::DensityMatrix neg{{2}, voa::CMatrix{{1.2, 0.0}, {0.0, -0.2}}};
  CHECK_THROWS_AS(voa::validate_density_matrix(neg), voa::NumericalError);
}

TEST_CASE("state documents round trip value-identically") {
  for (const char* name : {"ghz", "hs", "psi4"}) {
    Ket k = voa::named_state(name);
    voa::State back = voa::parse_state(voa::serialize_state(k));
    REQUIRE(std::holds_alternative<Ket>(back));
    CHECK(amp_diff(k, std::get<Ket>(back)) == 0.0);
  }
  auto dm = voa::dm_from_ket(voa::named_state("w"));
  voa::State back = voa::parse_state(voa::serialize_state(dm));
  REQUIRE(std::holds_alternative<voa::DensityMatrix>(back));
  CHECK((std::get<voa::DensityMatrix>(back).mat - dm.mat).max_abs() == 0.0);
}

TEST_CASE("hand-rounded ket documents are accepted and renormalized") {
  std::string text = R"({
    "kind": "ket",
    "dims": [2, 2],
    "data": [[0.7071, 0.0], [0.0, 0.0], [0.0, 0.0], [0.7071, 0.0]]
  })";
  voa::State s = voa::parse_state(text);
  REQUIRE(std::holds_alternative<Ket>(s));
  const Ket& k = std::get<Ket>(s);
  CHECK(std::abs(k.norm() - 1.0) < 1e-14);
  CHECK(std::abs(k.amps[0] - 1.0 / R2) < 1e-4);
}

TEST_CASE("state documents with structural problems are rejected") {
  using voa::parse_state;
  CHECK_THROWS_AS(parse_state("not json"), voa::StructuralError);
  CHECK_THROWS_AS(parse_state(R"({"kind":"ket","dims":[2],"data":[[1,0],[0,0]],"extra":1})"),
                  voa::StructuralError);
  CHECK_THROWS_AS(parse_state(R"({"kind":"bra","dims":[2],"data":[[1,0],[0,0]]})"),
                  voa::StructuralError);
  CHECK_THROWS_AS(parse_state(R"({"kind":"ket","dims":[1],"data":[[1,0]]})"),
                  voa::StructuralError);
  CHECK_THROWS_AS(parse_state(R"({"kind":"ket","dims":[2],"data":[[1,0]]})"),
                  voa::StructuralError);
  CHECK_THROWS_AS(parse_state(R"({"kind":"ket","dims":[2],"data":[[1,0],[0,0,0]]})"),
                  voa::StructuralError);
  CHECK_THROWS_AS(parse_state(R"({"kind":"dm","dims":[2],"data":[[[1,0]],[[0,0]]]})"),
                  voa::StructuralError);
}

TEST_CASE("state documents with numerical problems are rejected") {
  // badly subnormalized ket
  CHECK_THROWS_AS(voa::parse_state(R"({"kind":"ket","dims":[2],"data":[[0.5,0],[0.5,0]]})"),
                  voa::NumericalError);
  // dm with trace 0.9
  CHECK_THROWS_AS(voa::parse_state(
                      R"({"kind":"dm","dims":[2],"data":[[[0.45,0],[0,0]],[[0,0],[0.45,0]]]})"),
                  voa::NumericalError);
  // dm that is not PSD
  CHECK_THROWS_AS(voa::parse_state(
                      R"({"kind":"dm","dims":[2],"data":[[[0.2,0],[0.5,0]],[[0.5,0],[0.8,0]]]})"),
                  voa::NumericalError);
}

TEST_CASE("whitespace-heavy documents parse fine") {
  std::string text =
      "{\n\t\"kind\" :  \"ket\" ,\n  \"dims\":[ 2 ,2 ]\n, \"data\" : [ [0.7071,0]"
      ", [0,0] ,\n\n [0,0], [0.7071 , 0] ] }";
  CHECK_NOTHROW(voa::parse_state(text));
}

TEST_CASE("tensor product stacks dims and multiplies amplitudes") {
  Ket bell = voa::make_ket({2, 2}, {1.0 / R2, 0.0, 0.0, 1.0 / R2});
  Ket zero = voa::make_ket({2}, {1.0, 0.0});
  Ket k = voa::tensor_product(bell, zero);
  REQUIRE(k.arity() == 3);
  CHECK(std::abs(k.amps[0] - 1.0 / R2) < 1e-15);
  CHECK(std::abs(k.amps[6] - 1.0 / R2) < 1e-15);
  CHECK(std::abs(k.norm() - 1.0) < 1e-15);
}

}  // TEST_SUITE
