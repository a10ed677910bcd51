#include <gtest/gtest.h>

#include <random>

#include "horizon/vqe.hpp"

#include "oracles.hpp"

using namespace horizon;

namespace {

RealVector uniform_theta(Eigen::Index n, std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  RealVector t(n);
  for (auto& x : t) x = u(rng);
  return t;
}

ComplexVector random_state(Eigen::Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  ComplexVector v(dim);
  for (auto& x : v) x = cplx(normal(rng), normal(rng));
  return v / v.norm();
}

ComplexMatrix random_unitary(Eigen::Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  ComplexMatrix a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = cplx(normal(rng), normal(rng));
  return oracle::taylor_expm(0.5 * (a - a.adjoint()));
}

// u acting on `qubits` (first listed = most significant local bit) inside n qubits.
ComplexMatrix embed_oracle(const ComplexMatrix& u, const std::vector<int>& qubits, int n) {
  const Eigen::Index d = Eigen::Index{1} << n;
  const int k = static_cast<int>(qubits.size());
  auto bit = [&](Eigen::Index x, int q) { return (x >> (n - 1 - q)) & 1; };
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) {
      bool rest_equal = true;
      for (int q = 0; q < n; ++q) {
        if (std::find(qubits.begin(), qubits.end(), q) == qubits.end() && bit(r, q) != bit(c, q)) rest_equal = false;
      }
      if (!rest_equal) continue;
      Eigen::Index lr = 0, lc = 0;
      for (int j = 0; j < k; ++j) {
        lr = 2 * lr + bit(r, qubits[j]);
        lc = 2 * lc + bit(c, qubits[j]);
      }
      out(r, c) = u(lr, lc);
    }
  }
  return out;
}

oracle::CMat heisenberg_oracle(int n, bool periodic) {
  const Eigen::Index d = Eigen::Index{1} << n;
  oracle::CMat h = oracle::CMat::Zero(d, d);
  const int bonds = periodic && n > 2 ? n : n - 1;
  for (int b = 0; b < bonds; ++b) {
    const int i = b, j = (b + 1) % n;
    for (char a : {'X', 'Y', 'Z'}) {
      std::string w(static_cast<std::size_t>(n), 'I');
      w[static_cast<std::size_t>(i)] = a;
      w[static_cast<std::size_t>(j)] = a;
      h += 0.25 * oracle::pauli_word(w);
    }
  }
  return h;
}

const std::vector<std::pair<std::string, GateKind>>& all_gates() {
  static const std::vector<std::pair<std::string, GateKind>> g{
      {"su4/su2-spin-half", GateKind::Horizontal}, {"su4/su2-spin-half", GateKind::Equivariant},
      {"su4/u3", GateKind::Stabilizer},            {"su4", GateKind::FullUnitary},
      {"so4/so3", GateKind::Stabilizer},           {"so4", GateKind::FullUnitary},
      {"su4/su2xsu2", GateKind::KAK},              {"su2/u1", GateKind::Horizontal}};
  return g;
}

}  // namespace

// ---- gates --------------------------------------------------------------

TEST(Gates, ParameterCounts) {
  EXPECT_EQ(make_gate("su4/su2-spin-half", GateKind::Horizontal).param_count(), 12u);
  EXPECT_EQ(make_gate("su4/su2-spin-half", GateKind::Equivariant).param_count(), 1u);
  EXPECT_EQ(make_gate("su4/u3", GateKind::Stabilizer).param_count(), 6u);
  EXPECT_EQ(make_gate("su4", GateKind::FullUnitary).param_count(), 15u);
  EXPECT_EQ(make_gate("so4/so3", GateKind::Stabilizer).param_count(), 3u);
  EXPECT_EQ(make_gate("so4", GateKind::FullUnitary).param_count(), 6u);
  EXPECT_EQ(make_gate("bloch", GateKind::Horizontal).param_count(), 2u);
  EXPECT_EQ(make_gate("su4/su2xsu2", GateKind::KAK).param_count(), 9u);
}

TEST(Gates, RejectsUnsupportedKinds) {
  EXPECT_THROW(make_gate("su4/su2-spin-half", GateKind::KAK), Error);
  EXPECT_THROW(make_gate("su4/sp2", GateKind::Stabilizer), Error);
  EXPECT_THROW(make_gate("su4", GateKind::Horizontal), Error);
}

TEST(Gates, ExponentialGateMatchesTaylor) {
  for (const auto& [id, kind] : all_gates()) {
    if (kind == GateKind::KAK) continue;
    const GateSpec g = make_gate(id, kind);
    const RealVector t = uniform_theta(static_cast<Eigen::Index>(g.param_count()), 3);
    ComplexMatrix a = ComplexMatrix::Zero(g.dim(), g.dim());
    for (std::size_t j = 0; j < g.generators.size(); ++j) a += t(static_cast<Eigen::Index>(j)) * g.generators[j];
    EXPECT_LT((gate_unitary(g, t) - oracle::taylor_expm(a)).norm(), 1e-12) << id;
  }
}

TEST(Gates, GeneratorsScaledBySqrtDimension) {
  const GateSpec g = make_gate("su4/su2-spin-half", GateKind::Horizontal);
  for (const auto& x : g.generators) EXPECT_NEAR(trace_inner(x, x), 4.0, 1e-12);
}

TEST(Gates, DerivativesMatchFiniteDifferences) {
  for (const auto& [id, kind] : all_gates()) {
    const GateSpec g = make_gate(id, kind);
    const RealVector t = uniform_theta(static_cast<Eigen::Index>(g.param_count()), 5, -0.5, 0.5);
    const GateEval e = evaluate_gate(g, t);
    ASSERT_EQ(e.du.size(), g.param_count());
    const double h = 1e-6;
    for (std::size_t j = 0; j < g.param_count(); ++j) {
      RealVector tp = t, tm = t;
      tp(static_cast<Eigen::Index>(j)) += h;
      tm(static_cast<Eigen::Index>(j)) -= h;
      const ComplexMatrix fd = (gate_unitary(g, tp) - gate_unitary(g, tm)) / (2 * h);
      EXPECT_LT((e.du[j] - fd).cwiseAbs().maxCoeff(), 1e-7) << id << " param " << j;
    }
  }
}

TEST(Gates, ParameterLengthIsChecked) {
  const GateSpec g = make_gate("bloch", GateKind::Horizontal);
  try {
    gate_unitary(g, RealVector::Zero(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParamLengthMismatch);
  }
}

TEST(Gates, ReparameterizeUnderSymmetry) {
  const GateSpec g = make_gate("su4/su2-spin-half", GateKind::Horizontal);
  const auto s = make_space("su4/su2-spin-half");
  const ComplexMatrix k = oracle::taylor_expm(0.3 * s.k.element(0) + 1.2 * s.k.element(1) - 0.8 * s.k.element(2));
  const RealVector t = uniform_theta(12, 17);
  const RealVector tp = reparameterize_under_symmetry(g, k, t);
  EXPECT_LT((gate_unitary(g, t) * k - k * gate_unitary(g, tp)).norm(), 1e-10);
  try {
    reparameterize_under_symmetry(g, oracle::taylor_expm(0.4 * oracle::i_pauli_sum("XZ")), t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SymmetryLeakage);
  }
}

TEST(Gates, KakGateIsConjugatedTorus) {
  const auto c = make_space("su4/su2xsu2").cartan();
  const RealVector alpha = uniform_theta(6, 8), phi = uniform_theta(3, 9, -0.3, 0.3);
  const ComplexMatrix u = kak_gate_unitary(alpha, phi, c);
  ComplexMatrix b = ComplexMatrix::Zero(4, 4), h = ComplexMatrix::Zero(4, 4);
  for (Eigen::Index j = 0; j < 6; ++j) b += 2.0 * alpha(j) * c.k.element(static_cast<std::size_t>(j));
  for (Eigen::Index j = 0; j < 3; ++j) h += 2.0 * phi(j) * c.h.element(static_cast<std::size_t>(j));
  const ComplexMatrix kb = oracle::taylor_expm(b);
  EXPECT_LT((u - kb * oracle::taylor_expm(h) * kb.adjoint()).norm(), 1e-11);
  EXPECT_THROW(kak_gate_unitary(alpha, RealVector::Zero(2), c), Error);
}

TEST(Gates, RotationConventions) {
  const double t = 0.37;
  EXPECT_LT((rz(t) - oracle::taylor_expm(-0.5 * t * kI * oracle::pauli1('Z'))).norm(), 1e-14);
  EXPECT_LT((rx(t) - oracle::taylor_expm(-0.5 * t * kI * oracle::pauli1('X'))).norm(), 1e-14);
  EXPECT_LT((ry(t) - oracle::taylor_expm(-0.5 * t * kI * oracle::pauli1('Y'))).norm(), 1e-14);
  EXPECT_LT((r3(0.1, 0.2, 0.3) - rz(0.3) * ry(0.2) * rz(0.1)).norm(), 1e-15);
  ComplexMatrix cx = ComplexMatrix::Zero(4, 4);
  cx(0, 0) = cx(1, 1) = cx(2, 3) = cx(3, 2) = 1.0;
  EXPECT_LT((cnot(0, 1) - cx).norm(), 1e-15);
  EXPECT_LT((cnot(1, 0) - embed_oracle(cx, {1, 0}, 2)).norm(), 1e-15);
  EXPECT_THROW(cnot(0, 0), Error);
}

TEST(Gates, VatanBlockIsCanonical) {
  for (std::uint64_t s = 1; s <= 20; ++s) {
    const RealVector t = uniform_theta(3, s, -oracle::kPi, oracle::kPi);
    const auto c = vatan_map(t(0), t(1), t(2));
    const auto chk = oracle::check_canonical(vatan_block(t(0), t(1), t(2)), c);
    EXPECT_LT(chk.off_diagonal, 1e-12);
    EXPECT_LT(chk.phase_error, 1e-12);
    EXPECT_LT(phase_distance(vatan_block(t(0), t(1), t(2)), canonical_gate(c[0], c[1], c[2])), 1e-12);
    const auto back = vatan_map_inverse(c[0], c[1], c[2]);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(back[static_cast<std::size_t>(i)], t(i), 1e-12);
  }
}

TEST(Gates, KakCircuitIsConjugatedCanonicalGate) {
  const std::array<double, 3> a1{0.2, -0.5, 0.9}, a2{-1.1, 0.3, 0.4}, th{0.3, -0.2, 0.1};
  const ComplexMatrix k = kron(r3(a1[0], a1[1], a1[2]), r3(a2[0], a2[1], a2[2]));
  const auto c = vatan_map(th[0], th[1], th[2]);
  EXPECT_LT(phase_distance(kak_circuit(a1, a2, th), k.adjoint() * canonical_gate(c[0], c[1], c[2]) * k), 1e-12);
}

TEST(Gates, TwoQubitKakFactorization) {
  const auto c = make_space("su4/su2xsu2").cartan();
  const RealVector coords = uniform_theta(static_cast<Eigen::Index>(c.m.dim()), 23);
  ComplexMatrix x = ComplexMatrix::Zero(4, 4);
  for (std::size_t j = 0; j < c.m.dim(); ++j) x += coords(static_cast<Eigen::Index>(j)) * c.m.element(j);
  const TwoQubitKak f = kak_factorize(x);
  EXPECT_TRUE(is_unitary(f.k, 1e-12));
  EXPECT_LT(c.k.residual(ComplexMatrix(logm_unitary(f.k))), 1e-9);
  EXPECT_LT((f.h - kI * (f.c(0) * oracle::pauli_word("XX") + f.c(1) * oracle::pauli_word("YY") +
                         f.c(2) * oracle::pauli_word("ZZ")))
                .norm(),
            1e-12);
  EXPECT_LT((f.k * oracle::taylor_expm(f.h) * f.k.adjoint() - oracle::taylor_expm(x)).norm(), 1e-10);
  EXPECT_THROW(kak_factorize(oracle::i_pauli_sum("XI")), Error);
}

// ---- simulator ----------------------------------------------------------

TEST(Simulator, ApplyGateMatchesDenseEmbedding) {
  const ComplexVector psi = random_state(16, 2);
  for (const std::vector<int>& qs : {std::vector<int>{2, 0}, {3}, {1, 3}, {0, 1, 2}}) {
    const ComplexMatrix u = random_unitary(Eigen::Index{1} << qs.size(), 7);
    Statevector s(4, psi);
    apply_gate(s, u, qs);
    EXPECT_LT((s.amplitudes() - embed_oracle(u, qs, 4) * psi).norm(), 1e-13);
  }
  Statevector s(2);
  EXPECT_THROW(apply_gate(s, random_unitary(4, 1), {0, 0}), Error);
  EXPECT_THROW(apply_gate(s, random_unitary(4, 1), {0, 2}), Error);
  EXPECT_THROW(apply_gate(s, 2.0 * random_unitary(4, 1), {0, 1}), Error);
}

TEST(Simulator, StatevectorLimits) {
  EXPECT_THROW(Statevector(0), Error);
  EXPECT_THROW(Statevector(15), Error);
  EXPECT_EQ(Statevector(3).amplitudes()(0), cplx(1.0));
}

TEST(Simulator, BrickLayout) {
  const GateSpec g = make_gate("su4/su2-spin-half", GateKind::Horizontal);
  auto pairs = [](const BrickCircuit& c) {
    std::vector<std::vector<int>> out;
    for (const auto& b : c.blocks()) out.push_back(b.qubits);
    return out;
  };
  const std::vector<std::vector<int>> periodic4{{0, 1}, {2, 3}, {1, 2}, {3, 0}};
  EXPECT_EQ(pairs(BrickCircuit(4, 1, g, Boundary::Periodic)), periodic4);
  const std::vector<std::vector<int>> open4{{0, 1}, {2, 3}, {1, 2}};
  EXPECT_EQ(pairs(BrickCircuit(4, 1, g, Boundary::Open)), open4);
  // odd n: the wrap pair would collide with both rows, so it is left out
  const std::vector<std::vector<int>> periodic5{{0, 1}, {2, 3}, {1, 2}, {3, 4}};
  EXPECT_EQ(pairs(BrickCircuit(5, 1, g, Boundary::Periodic)), periodic5);
  EXPECT_EQ(BrickCircuit(2, 3, g, Boundary::Periodic).blocks().size(), 3u);
  const BrickCircuit deep(8, 8, g);
  EXPECT_EQ(deep.blocks().size(), 64u);
  EXPECT_EQ(deep.param_count(), 64u * 12u);
  EXPECT_EQ(deep.blocks().back().layer, 7u);
  EXPECT_EQ(deep.blocks()[5].offset, 60u);
  EXPECT_THROW(BrickCircuit(1, 1, g), Error);
  EXPECT_EQ(BrickCircuit(3, 2, make_gate("bloch", GateKind::Horizontal)).blocks().size(), 6u);
}

TEST(Simulator, ObservableMatchesOracle) {
  const Observable h = Observable::pauli_sum(3, {{0.5, PauliString("XYZ")}, {-1.25, PauliString("ZZI")}});
  const oracle::CMat ref = 0.5 * oracle::pauli_word("XYZ") - 1.25 * oracle::pauli_word("ZZI");
  EXPECT_LT((h.matrix() - ref).norm(), 1e-15);
  const ComplexVector psi = random_state(8, 4);
  EXPECT_LT((h.apply(psi) - ref * psi).norm(), 1e-14);
  EXPECT_NEAR(expectation(psi, h), (psi.adjoint() * ref * psi)(0).real(), 1e-14);
  EXPECT_THROW(Observable::pauli_sum(2, {{1.0, PauliString("XYZ")}}), Error);
  EXPECT_THROW(Observable::pauli_sum(1, {{1.0, PauliString("X", kI)}}), Error);
  EXPECT_THROW(Observable::dense(oracle::i_pauli_sum("XY")), Error);
  const Observable d = Observable::dense(ref);
  EXPECT_TRUE(d.is_dense());
  EXPECT_LT((d.apply(psi) - ref * psi).norm(), 1e-14);
}

TEST(Simulator, CircuitStateMatchesDenseProduct) {
  const GateSpec g = make_gate("su4/su2-spin-half", GateKind::Horizontal);
  const BrickCircuit c(4, 2, g);
  const RealVector t = uniform_theta(static_cast<Eigen::Index>(c.param_count()), 31);
  ComplexMatrix u = ComplexMatrix::Identity(16, 16);
  for (const auto& b : c.blocks()) {
    ComplexMatrix a = ComplexMatrix::Zero(4, 4);
    for (std::size_t j = 0; j < 12; ++j) a += t(static_cast<Eigen::Index>(b.offset + j)) * g.generators[j];
    u = embed_oracle(oracle::taylor_expm(a), b.qubits, 4) * u;
  }
  const ComplexVector psi = random_state(16, 5);
  EXPECT_LT((circuit_state(c, t, Statevector(4, psi)).amplitudes() - u * psi).norm(), 1e-11);
  EXPECT_THROW(circuit_state(c, RealVector::Zero(3), Statevector(4)), Error);
  EXPECT_THROW(circuit_state(c, t, Statevector(3)), Error);
}

TEST(Simulator, AdjointGradientMatchesFiniteDifferences) {
  const Observable h = build_hamiltonian({HamiltonianKind::HeisenbergRandom, 4, Boundary::Periodic, 3});
  for (const auto& [id, kind] : all_gates()) {
    const GateSpec g = make_gate(id, kind);
    const BrickCircuit c(4, 1, g, Boundary::Open);
    const RealVector t = uniform_theta(static_cast<Eigen::Index>(c.param_count()), 41, -0.7, 0.7);
    const Statevector psi0(4, random_state(16, 6));
    const EnergyGradient eg = energy_and_gradient(c, t, psi0, h);
    auto energy = [&](const RealVector& x) { return expectation(circuit_state(c, x, psi0), h); };
    EXPECT_NEAR(eg.energy, energy(t), 1e-12);
    for (Eigen::Index i = 0; i < t.size(); ++i) {
      EXPECT_NEAR(eg.gradient(i), oracle::central_difference(energy, t, i), 1e-7) << id << " " << i;
    }
  }
}

TEST(Simulator, TotalSpinValues) {
  const Observable s2 = total_spin_observable(4);
  EXPECT_NEAR(expectation(initial_state(InitialKind::Zeros, 4), s2), 24.0, 1e-12);
  EXPECT_NEAR(expectation(initial_state(InitialKind::BellSinglet, 4), s2), 0.0, 1e-12);
  EXPECT_NEAR(expectation(initial_state(InitialKind::BellTriplet, 2), total_spin_observable(2)), 8.0, 1e-12);
  EXPECT_THROW(initial_state(InitialKind::BellSinglet, 3), Error);
  const Statevector haar = initial_state(InitialKind::HaarRandom, 3, 9);
  EXPECT_NEAR(haar.norm(), 1.0, 1e-14);
  EXPECT_EQ(haar.amplitudes(), initial_state(InitialKind::HaarRandom, 3, 9).amplitudes());
}

// ---- vqe ----------------------------------------------------------------

TEST(Vqe, HeisenbergGroundEnergyAgainstJacobi) {
  for (bool periodic : {true, false}) {
    const Observable h = build_hamiltonian({HamiltonianKind::HeisenbergUniform, 6,
                                            periodic ? Boundary::Periodic : Boundary::Open, 0});
    const oracle::CMat ref = heisenberg_oracle(6, periodic);
    EXPECT_LT((h.matrix() - ref).norm(), 1e-13);
    const auto ev = oracle::jacobi_eigenvalues(ref.real());
    const GroundInfo g = exact_ground_energy(h);
    EXPECT_NEAR(g.e_min, ev(0), 1e-10);
    EXPECT_NEAR(g.e_max, ev(ev.size() - 1), 1e-10);
  }
  EXPECT_EQ(chain_bonds(2, Boundary::Periodic).size(), 1u);
  EXPECT_EQ(chain_bonds(5, Boundary::Periodic).size(), 5u);
}

TEST(Vqe, SectorGroundEnergyAgainstDicke) {
  const int n = 6;
  const Observable h = build_hamiltonian({HamiltonianKind::HeisenbergRandom, 6, Boundary::Periodic, 4});
  const oracle::CMat d = oracle::dicke_basis(n);
  const oracle::CMat restricted = d.adjoint() * h.matrix() * d;
  const double smax = 4.0 * (n / 2.0) * (n / 2.0 + 1.0);
  EXPECT_NEAR(sector_ground_energy(h, total_spin_observable(n), smax), oracle::jacobi_eigenvalues(restricted.real())(0),
              1e-9);
  EXPECT_THROW(sector_ground_energy(h, total_spin_observable(n), 1.5), Error);
}

TEST(Vqe, RandomEnsembles) {
  const Observable gue = build_hamiltonian({HamiltonianKind::Gue, 3, Boundary::Periodic, 5});
  EXPECT_TRUE(gue.is_dense());
  EXPECT_GT(gue.matrix().imag().norm(), 0.1);
  const Observable goe = build_hamiltonian({HamiltonianKind::Goe, 3, Boundary::Periodic, 5});
  EXPECT_EQ(goe.matrix().imag().norm(), 0.0);
  const auto ev = oracle::hermitian_eigenvalues(gue.matrix());
  EXPECT_NEAR(exact_ground_energy(gue).e_min, ev(0), 1e-10);
  EXPECT_EQ(build_hamiltonian({HamiltonianKind::Gue, 3, Boundary::Periodic, 5}).matrix(), gue.matrix());
}

TEST(Vqe, RelativeError) {
  EXPECT_DOUBLE_EQ(relative_error(-1.0, -2.0, 2.0), 0.25);
  try {
    relative_error(0.0, 1.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateSpectrum);
  }
}

TEST(Vqe, OptimizerParsing) {
  EXPECT_EQ(parse_algorithm("adam"), Algorithm::Adam);
  EXPECT_EQ(parse_lr_schedule("cosine"), LrSchedule::Cosine);
  EXPECT_THROW(parse_lr_schedule("linear"), Error);
  EXPECT_THROW(parse_algorithm("lbfgs"), Error);
  OptimizerConfig o;
  o.schedule = LrSchedule::Cosine;
  o.learning_rate = 0.2;
  o.max_iters = 10;
  EXPECT_DOUBLE_EQ(o.rate(0), 0.2);
  EXPECT_NEAR(o.rate(5), 0.1, 1e-15);
  o.learning_rate = 0.0;
  EXPECT_THROW(o.validate(), Error);
}

TEST(Vqe, GradientDescentDecreasesEnergy) {
  const Observable h = build_hamiltonian({HamiltonianKind::HeisenbergUniform, 4, Boundary::Periodic, 0});
  const BrickCircuit c(4, 2, make_gate("su4/su2-spin-half", GateKind::Horizontal));
  OptimizerConfig o;
  o.algorithm = Algorithm::GradientDescent;
  o.learning_rate = 0.01;
  o.max_iters = 60;
  o.seed = 3;
  const RunRecord r = run_vqe(h, c, initial_state(InitialKind::Zeros, 4), o, false);
  ASSERT_EQ(r.trajectory.size(), 60u);
  for (std::size_t i = 1; i < r.trajectory.size(); ++i) {
    EXPECT_LE(r.trajectory[i].energy, r.trajectory[i - 1].energy + 1e-12);
  }
  EXPECT_LT(r.final_energy, r.trajectory.front().energy);
  EXPECT_GE(r.final_delta_e, -1e-12);
}

TEST(Vqe, RunsAreDeterministic) {
  const Observable h = build_hamiltonian({HamiltonianKind::HeisenbergRandom, 4, Boundary::Periodic, 8});
  const BrickCircuit c(4, 2, make_gate("su4", GateKind::FullUnitary));
  OptimizerConfig o;
  o.max_iters = 25;
  o.seed = 12;
  const auto psi0 = initial_state(InitialKind::BellSinglet, 4);
  const RunRecord a = run_vqe(h, c, psi0, o, true), b = run_vqe(h, c, psi0, o, true);
  ASSERT_EQ(a.trajectory.size(), b.trajectory.size());
  for (std::size_t i = 0; i < a.trajectory.size(); ++i) {
    EXPECT_EQ(a.trajectory[i].energy, b.trajectory[i].energy);
    EXPECT_EQ(a.trajectory[i].s2, b.trajectory[i].s2);
  }
  EXPECT_EQ(a.final_theta, b.final_theta);
}

TEST(Vqe, EquivariantRunPreservesTotalSpin) {
  const Observable h = build_hamiltonian({HamiltonianKind::HeisenbergRandom, 4, Boundary::Periodic, 2});
  const BrickCircuit c(4, 2, make_gate("su4/su2-spin-half", GateKind::Equivariant));
  OptimizerConfig o;
  o.max_iters = 30;
  o.learning_rate = 0.1;
  const RunRecord r = run_vqe(h, c, initial_state(InitialKind::BellSinglet, 4), o, true);
  for (const auto& p : r.trajectory) EXPECT_NEAR(p.s2, 0.0, 1e-10);
  EXPECT_NEAR(r.final_s2, 0.0, 1e-10);
}

TEST(Vqe, CompareIdenticalGatesGivesZero) {
  const Observable h = build_hamiltonian({HamiltonianKind::Goe, 4, Boundary::Periodic, 1});
  const GateSpec g = make_gate("so4/so3", GateKind::Stabilizer);
  OptimizerConfig o;
  o.max_iters = 20;
  const Comparison c = compare_experiment(g, g, h, 2, Boundary::Periodic, initial_state(InitialKind::Zeros, 4), o);
  EXPECT_EQ(c.delta_relative_final, 0.0);
  EXPECT_EQ(c.a.final_energy, c.b.final_energy);
}

TEST(Vqe, InitialParameterLengthIsChecked) {
  const Observable h = build_hamiltonian({HamiltonianKind::HeisenbergUniform, 4, Boundary::Open, 0});
  const BrickCircuit c(4, 1, make_gate("su4/su2-spin-half", GateKind::Equivariant), Boundary::Open);
  EXPECT_THROW(run_vqe(h, c, Statevector(4), OptimizerConfig{}, false, std::nullopt, RealVector::Zero(7)), Error);
}
