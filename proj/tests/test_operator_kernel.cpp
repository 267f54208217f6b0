#include <doctest.h>

#include <gaugelab/operator_kernel.hpp>

#include <random>

using namespace gaugelab;

TEST_CASE("tensor product lays out the left factor on the slow index") {
  Matrix t = tensor(pauli_x(), pauli_z());
  CHECK(t.rows() == 4);
  CHECK(t(0, 2) == Cplx(1, 0));   // X_01 * Z_00
  CHECK(t(1, 3) == Cplx(-1, 0));  // X_01 * Z_11
  CHECK(t(0, 1) == Cplx(0, 0));
  CHECK(tensor_power(identity(2), 3).isApprox(identity(8)));
}

TEST_CASE("embed equals explicit tensor with identities") {
  Matrix a = pauli_z();
  Matrix direct = tensor_many({identity(2), pauli_z(), identity(2)});
  CHECK(embed(a, {2}, chain(3), 2).isApprox(direct, 1e-14));

  Matrix two = tensor(pauli_x(), pauli_z());
  Matrix direct2 = tensor_many({pauli_x(), pauli_z(), identity(2)});
  CHECK(embed(two, {1, 2}, chain(3), 2).isApprox(direct2, 1e-14));
}

TEST_CASE("partial trace undoes embedding up to the traced dimension") {
  std::mt19937_64 rng(11);
  Matrix a = random_hermitian(4, rng).mat();
  Matrix big = embed(a, {1, 3}, chain(3), 2);
  Matrix back = partial_trace(big, {1, 3}, chain(3), 2);
  CHECK(back.isApprox(2.0 * a, 1e-12));
}

TEST_CASE("spectral calculus: expm, logm, apply_spectral") {
  std::mt19937_64 rng(7);
  HermitianOp a = random_hermitian(6, rng);

  HermitianOp e = expm(a);
  CHECK(logm(e).mat().isApprox(a.mat(), 1e-10));

  EigSys es = eig_hermitian(a.mat());
  Matrix sq = apply_spectral(es, [](double x) { return x * x; });
  CHECK(sq.isApprox(a.mat() * a.mat(), 1e-10));

  CHECK(expm(HermitianOp::from(Matrix::Zero(3, 3))).mat().isApprox(identity(3), 1e-14));
}

TEST_CASE("eigen system is sorted ascending and reconstructs") {
  std::mt19937_64 rng(3);
  HermitianOp a = random_hermitian(5, rng);
  EigSys es = eig_hermitian(a.mat());
  for (int i = 0; i + 1 < 5; ++i) CHECK(es.values(i) <= es.values(i + 1));
  Matrix rebuilt = es.vectors * es.values.asDiagonal() * es.vectors.adjoint();
  CHECK(rebuilt.isApprox(a.mat(), 1e-12));
}

TEST_CASE("operator norms on known matrices") {
  CHECK(op_norm(pauli_x()) == doctest::Approx(1.0));
  CHECK(trace_norm(pauli_z()) == doctest::Approx(2.0));
  CHECK(commutator_norm(pauli_x(), pauli_x()) == doctest::Approx(0.0));
  CHECK(commutator_norm(pauli_x(), pauli_z()) > 0.0);
}

TEST_CASE("hermiticity guard rejects a lopsided matrix") {
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 1) = Cplx(1, 0);
  CHECK_THROWS_AS(HermitianOp::from(bad), DomainError);
  CHECK_NOTHROW(HermitianOp::trusted(bad));
}

TEST_CASE("random generators are seed-deterministic") {
  std::mt19937_64 a(42), b(42);
  CHECK(random_hermitian(4, a).mat() == random_hermitian(4, b).mat());
  Matrix rho = random_density(4, a);
  CHECK(rho.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  CHECK(es.eigenvalues().minCoeff() >= -1e-12);
}

TEST_CASE("capacity gate trips above the configured cap") {
  int old = max_dimension();
  set_max_dimension(64);
  CHECK_THROWS_AS(check_capacity(65, "test"), CapacityError);
  CHECK_NOTHROW(check_capacity(64, "test"));
  set_max_dimension(old);
}

TEST_CASE("is_diagonal tolerates only the diagonal") {
  CHECK(is_diagonal(pauli_z()));
  CHECK_FALSE(is_diagonal(pauli_x()));
}
