#pragma once

// Hamiltonian builders, exact-diagonalization reference, and the optimizer
// loop that records VQE trajectories.

#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "horizon/simulator.hpp"

namespace horizon {

enum class HamiltonianKind { HeisenbergUniform, HeisenbergRandom, Gue, Goe };

inline HamiltonianKind parse_hamiltonian_kind(const std::string& s) {
  if (s == "heisenberg_uniform" || s == "heisenberg") return HamiltonianKind::HeisenbergUniform;
  if (s == "heisenberg_random") return HamiltonianKind::HeisenbergRandom;
  if (s == "gue") return HamiltonianKind::Gue;
  if (s == "goe") return HamiltonianKind::Goe;
  throw Error(ErrorKind::ParseError, "unknown Hamiltonian kind '" + s + "'");
}

inline std::string to_string(HamiltonianKind k) {
  switch (k) {
    case HamiltonianKind::HeisenbergUniform: return "heisenberg_uniform";
    case HamiltonianKind::HeisenbergRandom: return "heisenberg_random";
    case HamiltonianKind::Gue: return "gue";
    case HamiltonianKind::Goe: return "goe";
  }
  return "?";
}

struct HamiltonianSpec {
  HamiltonianKind kind = HamiltonianKind::HeisenbergUniform;
  std::size_t n_q = 8;
  Boundary boundary = Boundary::Periodic;
  std::uint64_t seed = 0;
};

/// Nearest-neighbour bonds; the periodic wrap (n-1, 0) is skipped for n = 2
/// since it would repeat (0, 1).
inline std::vector<std::pair<std::size_t, std::size_t>> chain_bonds(std::size_t n, Boundary b) {
  std::vector<std::pair<std::size_t, std::size_t>> bonds;
  for (std::size_t i = 0; i + 1 < n; ++i) bonds.emplace_back(i, i + 1);
  if (b == Boundary::Periodic && n > 2) bonds.emplace_back(n - 1, 0);
  return bonds;
}

/// Heisenberg: (1/4) sum_bonds h_b (XX + YY + ZZ), h_b = 1 or N(0,1) per bond.
/// GUE: (A + A^dag)/2 with standard complex Gaussian A; GOE: real analogue.
inline Observable build_hamiltonian(const HamiltonianSpec& spec) {
  const std::size_t n = spec.n_q;
  if (n < 2) throw Error(ErrorKind::TooFewQubits, "Hamiltonians need at least 2 qubits");
  if (n > kMaxQubits) throw Error(ErrorKind::QubitRange, "at most 14 qubits");
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal;
  switch (spec.kind) {
    case HamiltonianKind::HeisenbergUniform:
    case HamiltonianKind::HeisenbergRandom: {
      Observable::Terms terms;
      for (const auto& [i, j] : chain_bonds(n, spec.boundary)) {
        const double hb = spec.kind == HamiltonianKind::HeisenbergRandom ? normal(rng) : 1.0;
        for (char a : {'X', 'Y', 'Z'}) {
          std::string w(n, 'I');
          w[i] = a;
          w[j] = a;
          terms.emplace_back(0.25 * hb, PauliString(w));
        }
      }
      return Observable::pauli_sum(n, std::move(terms));
    }
    case HamiltonianKind::Gue:
    case HamiltonianKind::Goe: {
      const Eigen::Index d = Eigen::Index{1} << n;
      ComplexMatrix a(d, d);
      for (Eigen::Index c = 0; c < d; ++c) {
        for (Eigen::Index r = 0; r < d; ++r) {
          const double re = normal(rng);
          const double im = spec.kind == HamiltonianKind::Gue ? normal(rng) : 0.0;
          a(r, c) = cplx(re, im);
        }
      }
      return Observable::dense(0.5 * (a + a.adjoint()));
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown Hamiltonian kind");
}

struct Spectrum {
  double e_min = 0.0;
  double e_max = 0.0;
  ComplexVector ground;
  RealVector values;  // full ascending spectrum
  ComplexMatrix vectors;
};

inline Spectrum exact_spectrum(const Observable& h) {
  if (h.qubit_count() > 12) throw Error(ErrorKind::QubitRange, "exact diagonalization is limited to 12 qubits");
  HermEig e = herm_eig(h.matrix());
  Spectrum s;
  s.values = e.values;
  s.vectors = std::move(e.vectors);
  s.e_min = s.values(0);
  s.e_max = s.values(s.values.size() - 1);
  s.ground = s.vectors.col(0);
  return s;
}

struct GroundInfo {
  double e_min = 0.0;
  double e_max = 0.0;
  ComplexVector ground;
};

inline GroundInfo exact_ground_energy(const Observable& h) {
  Spectrum s = exact_spectrum(h);
  return {s.e_min, s.e_max, s.ground};
}

/// Lowest energy inside the eigenspace of `sector_op` with eigenvalue `value`.
inline double sector_ground_energy(const Observable& h, const Observable& sector_op, double value, double tol = 1e-6) {
  const HermEig s = herm_eig(sector_op.matrix());
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < s.values.size(); ++i) {
    if (std::abs(s.values(i) - value) < tol) cols.push_back(i);
  }
  if (cols.empty()) throw Error(ErrorKind::EmptySubspace, "no eigenvectors in the requested sector");
  ComplexMatrix basis(s.vectors.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) basis.col(static_cast<Eigen::Index>(i)) = s.vectors.col(cols[i]);
  const ComplexMatrix restricted = basis.adjoint() * h.matrix() * basis;
  return herm_eig(0.5 * (restricted + restricted.adjoint())).values(0);
}

inline double relative_error(double e, double e_min, double e_max, const Tolerance& tol = {}) {
  if (e_max - e_min < tol.eq_tol) throw Error(ErrorKind::DegenerateSpectrum, "E_max - E_min is below tolerance");
  return (e - e_min) / (e_max - e_min);
}

enum class Algorithm { GradientDescent, Adam };

inline Algorithm parse_algorithm(const std::string& s) {
  if (s == "adam") return Algorithm::Adam;
  if (s == "gd" || s == "gradient_descent") return Algorithm::GradientDescent;
  throw Error(ErrorKind::ParseError, "unknown optimizer '" + s + "'");
}

inline std::string to_string(Algorithm a) { return a == Algorithm::Adam ? "adam" : "gradient_descent"; }

enum class LrSchedule { Constant, Cosine };

inline LrSchedule parse_lr_schedule(const std::string& s) {
  if (s == "constant") return LrSchedule::Constant;
  if (s == "cosine") return LrSchedule::Cosine;
  throw Error(ErrorKind::ParseError, "unknown learning-rate schedule '" + s + "'");
}

inline std::string to_string(LrSchedule s) { return s == LrSchedule::Cosine ? "cosine" : "constant"; }

struct OptimizerConfig {
  Algorithm algorithm = Algorithm::Adam;
  double learning_rate = 0.05;
  std::size_t max_iters = 500;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double init_scale = 1e-3;  // theta_0 ~ N(0, init_scale), 0 disables
  std::uint64_t seed = 0;
  double grad_tol = 1e-8;
  LrSchedule schedule = LrSchedule::Constant;  // cosine: lr * (1 + cos(pi t / max_iters)) / 2

  double rate(std::size_t it) const {
    if (schedule == LrSchedule::Constant) return learning_rate;
    return 0.5 * learning_rate * (1.0 + std::cos(kPi * static_cast<double>(it) / static_cast<double>(max_iters)));
  }

  void validate() const {
    if (!(learning_rate > 0.0)) throw Error(ErrorKind::InvalidArgument, "learning_rate must be positive");
    if (max_iters == 0) throw Error(ErrorKind::InvalidArgument, "max_iters must be positive");
    if (init_scale < 0.0) throw Error(ErrorKind::InvalidArgument, "init_scale must be non-negative");
  }
};

struct TrajectoryPoint {
  std::size_t iter = 0;
  double energy = 0.0;
  double delta_e = 0.0;
  double s2 = std::numeric_limits<double>::quiet_NaN();
  double grad_norm = 0.0;
};

struct RunRecord {
  std::vector<TrajectoryPoint> trajectory;  // state before each update
  RealVector final_theta;
  double final_energy = 0.0;
  double final_delta_e = 0.0;
  double final_s2 = std::numeric_limits<double>::quiet_NaN();
  double e_min = 0.0;
  double e_max = 0.0;
  OptimizerConfig config;
  std::string gate_space;
  GateKind gate_kind = GateKind::Horizontal;
  std::size_t param_count = 0;
  double wall_seconds = 0.0;
  bool converged = false;  // stopped on the gradient-norm criterion

  double final_relative() const { return relative_error(final_energy, e_min, e_max); }
};

inline RealVector initial_parameters(std::size_t count, const OptimizerConfig& opt) {
  RealVector theta = RealVector::Zero(static_cast<Eigen::Index>(count));
  if (opt.init_scale > 0.0) {
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> normal(0.0, opt.init_scale);
    for (Eigen::Index i = 0; i < theta.size(); ++i) theta(i) = normal(rng);
  }
  return theta;
}

/// Runs the optimizer. `ground` supplies (E_min, E_max); when absent it is
/// computed by exact diagonalization.
inline RunRecord run_vqe(const Observable& h, const BrickCircuit& circuit, const Statevector& psi0,
                         const OptimizerConfig& opt, bool track_spin,
                         const std::optional<GroundInfo>& ground = std::nullopt,
                         std::optional<RealVector> theta0 = std::nullopt) {
  opt.validate();
  const auto start = std::chrono::steady_clock::now();
  const GroundInfo g = ground ? *ground : exact_ground_energy(h);
  RunRecord rec;
  rec.config = opt;
  rec.e_min = g.e_min;
  rec.e_max = g.e_max;
  rec.gate_space = circuit.gate().space_id;
  rec.gate_kind = circuit.gate().kind;
  rec.param_count = circuit.gate().param_count();
  const std::optional<Observable> s2 = track_spin ? std::optional<Observable>(total_spin_observable(circuit.qubit_count()))
                                                  : std::nullopt;
  RealVector theta = theta0 ? *theta0 : initial_parameters(circuit.param_count(), opt);
  if (static_cast<std::size_t>(theta.size()) != circuit.param_count()) {
    throw Error(ErrorKind::ParamLengthMismatch, "initial parameter vector has the wrong length");
  }
  RealVector m1 = RealVector::Zero(theta.size());
  RealVector m2 = RealVector::Zero(theta.size());
  double b1t = 1.0, b2t = 1.0;
  for (std::size_t it = 0; it < opt.max_iters; ++it) {
    const EnergyGradient eg = energy_and_gradient(circuit, theta, psi0, h);
    TrajectoryPoint pt;
    pt.iter = it;
    pt.energy = eg.energy;
    pt.delta_e = eg.energy - g.e_min;
    pt.grad_norm = eg.gradient.norm();
    if (s2) pt.s2 = expectation(eg.state, *s2);
    rec.trajectory.push_back(pt);
    if (pt.grad_norm < opt.grad_tol) {
      rec.converged = true;
      break;
    }
    if (opt.algorithm == Algorithm::GradientDescent) {
      theta -= opt.rate(it) * eg.gradient;
    } else {
      b1t *= opt.beta1;
      b2t *= opt.beta2;
      m1 = opt.beta1 * m1 + (1.0 - opt.beta1) * eg.gradient;
      m2 = opt.beta2 * m2 + (1.0 - opt.beta2) * eg.gradient.cwiseAbs2();
      const RealVector mhat = m1 / (1.0 - b1t);
      const RealVector vhat = m2 / (1.0 - b2t);
      theta -= opt.rate(it) * mhat.cwiseQuotient((vhat.cwiseSqrt().array() + opt.epsilon).matrix());
    }
  }
  const Statevector fin = circuit_state(circuit, theta, psi0);
  rec.final_theta = theta;
  rec.final_energy = expectation(fin, h);
  rec.final_delta_e = rec.final_energy - g.e_min;
  if (s2) rec.final_s2 = expectation(fin, *s2);
  rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

struct Comparison {
  RunRecord a;
  RunRecord b;
  double delta_relative_final = 0.0;  // rel(a) - rel(b)
};

/// Runs two gate choices on the same Hamiltonian, layout, initial state and seeds.
inline Comparison compare_experiment(const GateSpec& gate_a, const GateSpec& gate_b, const Observable& h,
                                     std::size_t depth, Boundary boundary, const Statevector& psi0,
                                     const OptimizerConfig& opt, bool track_spin = false) {
  const GroundInfo g = exact_ground_energy(h);
  Comparison c;
  c.a = run_vqe(h, BrickCircuit(h.qubit_count(), depth, gate_a, boundary), psi0, opt, track_spin, g);
  c.b = run_vqe(h, BrickCircuit(h.qubit_count(), depth, gate_b, boundary), psi0, opt, track_spin, g);
  c.delta_relative_final = c.a.final_relative() - c.b.final_relative();
  return c;
}

}  // namespace horizon
