#include <cmath>
#include <complex>

#include "doctest.h"
#include "test_helpers.hpp"
#include "voa/numkit.hpp"

using voa::CMatrix;
using voa::cplx;

namespace {

const cplx I(0.0, 1.0);

CMatrix pauli_y() { return CMatrix{{0.0, -I}, {I, 0.0}}; }

double residual(const CMatrix& a, const CMatrix& b) { return (a - b).max_abs(); }

}  // namespace

TEST_SUITE("numkit") {

TEST_CASE("kron of two pauli y matrices is the real anti-diagonal -1,1,1,-1") {
  CMatrix yy = voa::kron(pauli_y(), pauli_y());
  REQUIRE(yy.rows() == 4);
  CMatrix expected{{0.0, 0.0, 0.0, -1.0},
                   {0.0, 0.0, 1.0, 0.0},
                   {0.0, 1.0, 0.0, 0.0},
                   {-1.0, 0.0, 0.0, 0.0}};
  CHECK(residual(yy, expected) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("kron shapes multiply and mixed-size products place blocks correctly") {
  CMatrix a{{1.0, 2.0}};            // 1x2
  CMatrix b{{1.0}, {10.0}, {0.0}};  // 3x1
  CMatrix k = voa::kron(a, b);
  REQUIRE(k.rows() == 3);
  REQUIRE(k.cols() == 2);
  CHECK(k(0, 0) == cplx(1.0));
  CHECK(k(1, 0) == cplx(10.0));
  CHECK(k(0, 1) == cplx(2.0));
  CHECK(k(1, 1) == cplx(20.0));
}

TEST_CASE("partial trace of a bell projector leaves a maximally mixed qubit") {
  std::vector<cplx> bell = {1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0)};
  CMatrix rho = voa::outer(bell, bell);
  for (std::vector<std::size_t> keep : {std::vector<std::size_t>{0}, std::vector<std::size_t>{1}}) {
    CMatrix red = voa::partial_trace(rho, {2, 2}, keep);
    REQUIRE(red.rows() == 2);
    CHECK(std::abs(red(0, 0) - 0.5) < 1e-14);
    CHECK(std::abs(red(1, 1) - 0.5) < 1e-14);
    CHECK(std::abs(red(0, 1)) < 1e-14);
  }
}

TEST_CASE("partial trace keeps subsystems in original order on a basis state") {
  // |110> over dims [2,2,2]: amplitude lives at flat index 6
  std::vector<cplx> k(8, 0.0);
  k[6] = 1.0;
  CMatrix rho = voa::outer(k, k);
  CMatrix ab = voa::partial_trace(rho, {2, 2, 2}, {0, 1});
  CHECK(std::abs(ab(3, 3) - 1.0) < 1e-14);  // |11><11|
  CMatrix bc = voa::partial_trace(rho, {2, 2, 2}, {1, 2});
  CHECK(std::abs(bc(2, 2) - 1.0) < 1e-14);  // |10><10|
  CMatrix ac = voa::partial_trace(rho, {2, 2, 2}, {0, 2});
  CHECK(std::abs(ac(2, 2) - 1.0) < 1e-14);  // |10><10|
}

TEST_CASE("partial trace over different subsystems preserves trace") {
  testutil::Rng rng(11);
  CMatrix rho = testutil::random_psd(8, rng);
  cplx t = rho.trace();
  for (auto keep : {std::vector<std::size_t>{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}}) {
    CMatrix red = voa::partial_trace(rho, {2, 2, 2}, keep);
    CHECK(std::abs(red.trace() - t) < 1e-12);
  }
}

TEST_CASE("partial trace with qudit dims works on a product state") {
  // dims [3,2]; |2>|1| -> flat index 2*2+1 = 5
  std::vector<cplx> k(6, 0.0);
  k[5] = 1.0;
  CMatrix rho = voa::outer(k, k);
  CMatrix left = voa::partial_trace(rho, {3, 2}, {0});
  REQUIRE(left.rows() == 3);
  CHECK(std::abs(left(2, 2) - 1.0) < 1e-14);
  CMatrix right = voa::partial_trace(rho, {3, 2}, {1});
  REQUIRE(right.rows() == 2);
  CHECK(std::abs(right(1, 1) - 1.0) < 1e-14);
}

TEST_CASE("partial trace rejects bad arguments") {
  CMatrix rho(4, 4);
  CHECK_THROWS_AS(voa::partial_trace(rho, {2, 2, 2}, {0}), voa::StructuralError);
  CHECK_THROWS_AS(voa::partial_trace(rho, {2, 2}, {}), voa::StructuralError);
  CHECK_THROWS_AS(voa::partial_trace(rho, {2, 2}, {1, 0}), voa::StructuralError);
  CHECK_THROWS_AS(voa::partial_trace(rho, {2, 2}, {2}), voa::StructuralError);
}

TEST_CASE("herm_eig solves a known 2x2 case exactly") {
  CMatrix m{{1.0, I}, {-I, 1.0}};
  voa::HermEigResult e = voa::herm_eig(m);
  REQUIRE(e.eigenvalues.size() == 2);
  CHECK(std::abs(e.eigenvalues[0]) < 1e-12);
  CHECK(std::abs(e.eigenvalues[1] - 2.0) < 1e-12);
}

TEST_CASE("herm_eig returns ascending eigenvalues with orthonormal vectors") {
  testutil::Rng rng(5);
  for (std::size_t n : {2, 4, 8, 16}) {
    CMatrix m = testutil::random_hermitian(n, rng);
    voa::HermEigResult e = voa::herm_eig(m);
    for (std::size_t k = 1; k < n; ++k) CHECK(e.eigenvalues[k] >= e.eigenvalues[k - 1]);
    CMatrix vtv = e.eigenvectors.adjoint() * e.eigenvectors;
    CHECK(residual(vtv, CMatrix::identity(n)) < 1e-10);

    CMatrix recon(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<cplx> col(n);
      for (std::size_t i = 0; i < n; ++i) col[i] = e.eigenvectors(i, k);
      recon += e.eigenvalues[k] * voa::outer(col, col);
    }
    CHECK(residual(recon, m) < 1e-10);
  }
}

TEST_CASE("herm_eig is exact on diagonal input and deterministic across calls") {
  CMatrix d(3, 3);
  d(0, 0) = 3.0;
  d(1, 1) = -1.0;
  d(2, 2) = 0.5;
  voa::HermEigResult e = voa::herm_eig(d);
  CHECK(e.eigenvalues[0] == -1.0);
  CHECK(e.eigenvalues[1] == 0.5);
  CHECK(e.eigenvalues[2] == 3.0);

  testutil::Rng rng(99);
  CMatrix m = testutil::random_hermitian(8, rng);
  voa::HermEigResult a = voa::herm_eig(m);
  voa::HermEigResult b = voa::herm_eig(m);
  CHECK(residual(a.eigenvectors, b.eigenvectors) == 0.0);
  for (std::size_t k = 0; k < 8; ++k) CHECK(a.eigenvalues[k] == b.eigenvalues[k]);
}

TEST_CASE("herm_eig rejects non-hermitian and non-square input") {
  CMatrix bad{{0.0, 1.0}, {0.0, 0.0}};
  CHECK_THROWS_AS(voa::herm_eig(bad), voa::NumericalError);
  CMatrix rect(2, 3);
  CHECK_THROWS_AS(voa::herm_eig(rect), voa::StructuralError);
}

TEST_CASE("sqrtm_psd squares back to the input") {
  testutil::Rng rng(7);
  for (std::size_t n : {2, 4, 8}) {
    CMatrix m = testutil::random_psd(n, rng);
    CMatrix s = voa::sqrtm_psd(m);
    CHECK(residual(s * s, m) < 1e-8);
    CHECK(s.is_hermitian(1e-10));
  }
}

TEST_CASE("sqrtm_psd of a projector is the projector and rank is kept") {
  std::vector<cplx> bell = {1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0)};
  CMatrix p = voa::outer(bell, bell);
  CMatrix s = voa::sqrtm_psd(p);
  CHECK(residual(s, p) < 1e-12);
}

TEST_CASE("sqrtm_psd clamps tiny negatives and rejects real ones") {
  CMatrix nearly(2, 2);
  nearly(0, 0) = 1.0;
  nearly(1, 1) = -5e-11;  // inside the clamp band
  CMatrix s = voa::sqrtm_psd(nearly);
  CHECK(std::abs(s(0, 0) - 1.0) < 1e-12);
  CHECK(std::abs(s(1, 1)) < 1e-12);

  CMatrix bad(2, 2);
  bad(0, 0) = 1.0;
  bad(1, 1) = -1e-6;
  CHECK_THROWS_AS(voa::sqrtm_psd(bad), voa::NumericalError);
}

TEST_CASE("fidelity of commuting diagonal states is the classical bhattacharyya sum") {
  CMatrix rho(3, 3), sigma(3, 3);
  double p[3] = {0.5, 0.3, 0.2};
  double q[3] = {0.1, 0.6, 0.3};
  double expected = 0.0;
  for (int i = 0; i < 3; ++i) {
    rho(i, i) = p[i];
    sigma(i, i) = q[i];
    expected += std::sqrt(p[i] * q[i]);
  }
  CHECK(std::abs(voa::fidelity(rho, sigma) - expected) < 1e-12);
}

TEST_CASE("fidelity is symmetric, one on identical states, overlap on pure pairs") {
  testutil::Rng rng(21);
  CMatrix rho = testutil::random_psd(4, rng);
  rho *= cplx(1.0 / rho.trace().real(), 0.0);
  CMatrix sig = testutil::random_psd(4, rng);
  sig *= cplx(1.0 / sig.trace().real(), 0.0);
  CHECK(std::abs(voa::fidelity(rho, sig) - voa::fidelity(sig, rho)) < 1e-9);
  CHECK(std::abs(voa::fidelity(rho, rho) - 1.0) < 1e-10);

  auto u = testutil::random_ket(4, rng);
  auto v = testutil::random_ket(4, rng);
  cplx ov = 0.0;
  for (std::size_t i = 0; i < 4; ++i) ov += std::conj(u[i]) * v[i];
  // sqrt of near-zero eigenvalue noise caps the achievable accuracy here
  double f = voa::fidelity(voa::outer(u, u), voa::outer(v, v));
  CHECK(std::abs(f - std::abs(ov)) < 1e-10);
}

TEST_CASE("fidelity scales linearly with joint input scale") {
  testutil::Rng rng(33);
  CMatrix rho = testutil::random_psd(4, rng);
  CMatrix sig = testutil::random_psd(4, rng);
  double f1 = voa::fidelity(rho, sig);
  double c = 0.37;
  double f2 = voa::fidelity(cplx(c, 0.0) * rho, cplx(c, 0.0) * sig);
  CHECK(std::abs(f2 - c * f1) < 1e-9 * std::max(1.0, f1));
}

TEST_CASE("fidelity rejects shape mismatch and non-psd input") {
  CMatrix a(2, 2), b(3, 3);
  CHECK_THROWS_AS(voa::fidelity(a, b), voa::StructuralError);
  CMatrix neg(2, 2);
  neg(0, 0) = 1.0;
  neg(1, 1) = -0.5;
  CMatrix id = CMatrix::identity(2);
  CHECK_THROWS_AS(voa::fidelity(neg, id), voa::NumericalError);
  CHECK_THROWS_AS(voa::fidelity(id, neg), voa::NumericalError);
}

TEST_CASE("matrix constructors refuse non-finite entries") {
  std::vector<cplx> data = {cplx(1.0, 0.0), cplx(std::nan(""), 0.0)};
  CHECK_THROWS_AS(CMatrix(1, 2, data), voa::NumericalError);
}

}  // TEST_SUITE
