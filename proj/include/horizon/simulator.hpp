#pragma once

// Dense statevector simulation of bricklayer circuits with adjoint-method
// gradients through the exact gate derivatives.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "horizon/gates.hpp"

namespace horizon {

inline constexpr std::size_t kMaxQubits = 14;

/// Qubit 0 is the leftmost tensor factor (most significant index bit).
class Statevector {
 public:
  Statevector() = default;

  explicit Statevector(std::size_t n) : n_(check_n(n)), amp_(ComplexVector::Zero(Eigen::Index{1} << n)) { amp_(0) = 1.0; }

  Statevector(std::size_t n, ComplexVector amps) : n_(check_n(n)), amp_(std::move(amps)) {
    if (amp_.size() != (Eigen::Index{1} << n)) throw Error(ErrorKind::DimensionMismatch, "amplitude count is not 2^n");
    const double nrm = amp_.norm();
    if (std::abs(nrm - 1.0) > 1e-10) throw Error(ErrorKind::InvalidArgument, "state is not normalized");
  }

  std::size_t qubit_count() const { return n_; }
  const ComplexVector& amplitudes() const { return amp_; }
  ComplexVector& amplitudes() { return amp_; }
  double norm() const { return amp_.norm(); }

 private:
  static std::size_t check_n(std::size_t n) {
    if (n == 0 || n > kMaxQubits) throw Error(ErrorKind::QubitRange, "qubit count must be in 1..14");
    return n;
  }
  std::size_t n_ = 0;
  ComplexVector amp_;
};

namespace detail {

struct Targets {
  std::vector<std::uint64_t> offsets;  // index offset of each local basis state
  std::vector<std::uint64_t> bases;    // all indices with target bits cleared
};

inline Targets make_targets(std::size_t n, const std::vector<int>& qubits) {
  Targets t;
  std::uint64_t mask = 0;
  std::vector<std::uint64_t> bits;
  for (int q : qubits) {
    if (q < 0 || static_cast<std::size_t>(q) >= n) throw Error(ErrorKind::QubitRange, "qubit " + std::to_string(q) + " out of range");
    const std::uint64_t b = std::uint64_t{1} << (n - 1 - static_cast<std::size_t>(q));
    if (mask & b) throw Error(ErrorKind::QubitRange, "gate qubits must be distinct");
    mask |= b;
    bits.push_back(b);
  }
  const std::size_t k = qubits.size();
  t.offsets.resize(std::size_t{1} << k);
  for (std::size_t local = 0; local < t.offsets.size(); ++local) {
    std::uint64_t off = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (local & (std::size_t{1} << (k - 1 - j))) off |= bits[j];
    }
    t.offsets[local] = off;
  }
  const std::uint64_t dim = std::uint64_t{1} << n;
  t.bases.reserve(dim >> k);
  for (std::uint64_t b = 0; b < dim; ++b) {
    if ((b & mask) == 0) t.bases.push_back(b);
  }
  return t;
}

inline void apply_unchecked(ComplexVector& amp, const ComplexMatrix& u, const Targets& t) {
  const auto d = static_cast<Eigen::Index>(t.offsets.size());
  ComplexVector in(d), out(d);
  for (std::uint64_t base : t.bases) {
    for (Eigen::Index i = 0; i < d; ++i) in(i) = amp(static_cast<Eigen::Index>(base + t.offsets[i]));
    out.noalias() = u * in;
    for (Eigen::Index i = 0; i < d; ++i) amp(static_cast<Eigen::Index>(base + t.offsets[i])) = out(i);
  }
}

// R_ab = sum over the other qubits of conj(lambda_a) phi_b.
inline ComplexMatrix reduced_overlap(const ComplexVector& lambda, const ComplexVector& phi, const Targets& t) {
  const auto d = static_cast<Eigen::Index>(t.offsets.size());
  ComplexMatrix r = ComplexMatrix::Zero(d, d);
  for (std::uint64_t base : t.bases) {
    for (Eigen::Index a = 0; a < d; ++a) {
      const cplx la = std::conj(lambda(static_cast<Eigen::Index>(base + t.offsets[a])));
      for (Eigen::Index b = 0; b < d; ++b) r(a, b) += la * phi(static_cast<Eigen::Index>(base + t.offsets[b]));
    }
  }
  return r;
}

}  // namespace detail

/// Applies U to the listed qubits; qubits[0] is the most significant local index.
inline void apply_gate(Statevector& state, const ComplexMatrix& u, const std::vector<int>& qubits, double unitary_tol = 1e-9) {
  if (u.rows() != (Eigen::Index{1} << qubits.size()) || u.cols() != u.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "gate size does not match its qubit count");
  }
  if (!is_unitary(u, unitary_tol)) throw Error(ErrorKind::NonUnitary, "gate matrix is not unitary");
  detail::apply_unchecked(state.amplitudes(), u, detail::make_targets(state.qubit_count(), qubits));
}

enum class Boundary { Open, Periodic };

inline Boundary parse_boundary(const std::string& s) {
  if (s == "open") return Boundary::Open;
  if (s == "periodic") return Boundary::Periodic;
  throw Error(ErrorKind::ParseError, "boundary must be open or periodic, got '" + s + "'");
}

inline std::string to_string(Boundary b) { return b == Boundary::Open ? "open" : "periodic"; }

struct PlacedGate {
  std::size_t layer = 0;
  std::vector<int> qubits;
  std::size_t offset = 0;  // first index in the flat parameter vector
};

/// Bricklayer layout. Layer l pairs (o, o+1), (o+2, o+3), ... with o = l mod 2;
/// a periodic odd layer also pairs (n-1, 0) when both are free. Parameters are
/// flat, layer-major, then block left to right, then local index.
class BrickCircuit {
 public:
  BrickCircuit(std::size_t n, std::size_t depth, GateSpec gate, Boundary boundary = Boundary::Periodic)
      : n_(n), depth_(depth), boundary_(boundary), gate_(std::move(gate)) {
    if (n < 1 || n > kMaxQubits) throw Error(ErrorKind::QubitRange, "qubit count must be in 1..14");
    const std::size_t width = gate_.qubit_count();
    if (width == 1) {
      for (std::size_t l = 0; l < depth; ++l) {
        for (std::size_t q = 0; q < n; ++q) add(l, {static_cast<int>(q)});
      }
    } else if (width == 2) {
      if (n < 2) throw Error(ErrorKind::TooFewQubits, "two-qubit bricks need at least 2 qubits");
      // one layer = even row (0,1),(2,3),... then odd row (1,2),... plus the wrap pair
      for (std::size_t l = 0; l < depth; ++l) {
        for (std::size_t o = 0; o < 2; ++o) {
          std::size_t q = o;
          for (; q + 1 < n; q += 2) add(l, {static_cast<int>(q), static_cast<int>(q + 1)});
          if (boundary == Boundary::Periodic && o == 1 && q == n - 1 && n > 2) add(l, {static_cast<int>(n - 1), 0});
        }
      }
    } else {
      throw Error(ErrorKind::InvalidArgument, "bricklayer circuits take one- or two-qubit gates");
    }
  }

  std::size_t qubit_count() const { return n_; }
  std::size_t depth() const { return depth_; }
  Boundary boundary() const { return boundary_; }
  const GateSpec& gate() const { return gate_; }
  const std::vector<PlacedGate>& blocks() const { return blocks_; }
  std::size_t param_count() const { return blocks_.size() * gate_.param_count(); }

 private:
  void add(std::size_t layer, std::vector<int> qubits) {
    blocks_.push_back({layer, std::move(qubits), blocks_.size() * gate_.param_count()});
  }

  std::size_t n_;
  std::size_t depth_;
  Boundary boundary_;
  GateSpec gate_;
  std::vector<PlacedGate> blocks_;
};

/// Either a real-weighted Pauli sum or a dense Hermitian matrix.
class Observable {
 public:
  using Terms = std::vector<std::pair<double, PauliString>>;

  Observable() = default;

  static Observable pauli_sum(std::size_t n, Terms terms) {
    Observable o;
    o.n_ = n;
    for (const auto& [c, p] : terms) {
      if (p.qubit_count() != n) throw Error(ErrorKind::DimensionMismatch, "Pauli term has the wrong length");
      if (p.phase() != cplx{1.0, 0.0}) throw Error(ErrorKind::NotHermitian, "Pauli terms must carry phase +1");
    }
    o.terms_ = std::move(terms);
    return o;
  }

  static Observable dense(ComplexMatrix h, const Tolerance& tol = {}) {
    const std::size_t n = qubits_for_dim(h.rows());
    if (n == std::size_t(-1) || h.rows() != h.cols()) throw Error(ErrorKind::DimensionMismatch, "dense observable must be 2^n square");
    if (!is_hermitian(h, tol.eq_tol * std::max(1.0, h.cwiseAbs().maxCoeff()))) {
      throw Error(ErrorKind::NotHermitian, "observable is not Hermitian");
    }
    Observable o;
    o.n_ = n;
    o.dense_ = 0.5 * (h + h.adjoint());
    o.is_dense_ = true;
    return o;
  }

  std::size_t qubit_count() const { return n_; }
  bool is_dense() const { return is_dense_; }
  const Terms& terms() const { return terms_; }

  ComplexVector apply(const ComplexVector& psi) const {
    if (psi.size() != (Eigen::Index{1} << n_)) throw Error(ErrorKind::DimensionMismatch, "state size does not match observable");
    if (is_dense_) return dense_ * psi;
    ComplexVector out = ComplexVector::Zero(psi.size());
    for (const auto& [c, p] : terms_) p.apply_add(psi, out, c);
    return out;
  }

  ComplexMatrix matrix() const {
    if (is_dense_) return dense_;
    const Eigen::Index d = Eigen::Index{1} << n_;
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    for (const auto& [c, p] : terms_) m += c * p.matrix();
    return m;
  }

 private:
  std::size_t n_ = 0;
  Terms terms_;
  ComplexMatrix dense_;
  bool is_dense_ = false;
};

inline double expectation(const ComplexVector& psi, const Observable& h) {
  const cplx v = psi.dot(h.apply(psi));
  if (std::abs(v.imag()) > 1e-10 * std::max(1.0, std::abs(v.real()))) {
    throw Error(ErrorKind::NotHermitian, "expectation value has an imaginary part");
  }
  return v.real();
}

inline double expectation(const Statevector& s, const Observable& h) { return expectation(s.amplitudes(), h); }

namespace detail {

inline void check_theta(const BrickCircuit& c, const RealVector& theta) {
  if (static_cast<std::size_t>(theta.size()) != c.param_count()) {
    throw Error(ErrorKind::ParamLengthMismatch, "circuit expects " + std::to_string(c.param_count()) +
                                                    " parameters, got " + std::to_string(theta.size()));
  }
}

inline void check_state(const BrickCircuit& c, const Statevector& s) {
  if (s.qubit_count() != c.qubit_count()) throw Error(ErrorKind::DimensionMismatch, "state and circuit qubit counts differ");
}

}  // namespace detail

inline Statevector circuit_state(const BrickCircuit& c, const RealVector& theta, const Statevector& psi0) {
  detail::check_theta(c, theta);
  detail::check_state(c, psi0);
  Statevector s = psi0;
  const auto p = static_cast<Eigen::Index>(c.gate().param_count());
  for (const auto& b : c.blocks()) {
    const ComplexMatrix u = gate_unitary(c.gate(), theta.segment(static_cast<Eigen::Index>(b.offset), p));
    detail::apply_unchecked(s.amplitudes(), u, detail::make_targets(c.qubit_count(), b.qubits));
  }
  return s;
}

struct EnergyGradient {
  double energy = 0.0;
  RealVector gradient;
  Statevector state;  // final circuit state
};

/// E(theta) and its exact gradient. Forward sweep evaluates every block; the
/// backward sweep carries lambda = (later gates)^dag H psi and un-applies each
/// block from psi, so dE/dtheta_j = 2 Re <lambda| dU_j |phi_before>.
inline EnergyGradient energy_and_gradient(const BrickCircuit& c, const RealVector& theta, const Statevector& psi0,
                                          const Observable& h) {
  detail::check_theta(c, theta);
  detail::check_state(c, psi0);
  const auto p = static_cast<Eigen::Index>(c.gate().param_count());
  const auto& blocks = c.blocks();
  std::vector<GateEval> evals;
  std::vector<detail::Targets> targets;
  evals.reserve(blocks.size());
  targets.reserve(blocks.size());
  ComplexVector psi = psi0.amplitudes();
  for (const auto& b : blocks) {
    evals.push_back(evaluate_gate(c.gate(), theta.segment(static_cast<Eigen::Index>(b.offset), p)));
    targets.push_back(detail::make_targets(c.qubit_count(), b.qubits));
    detail::apply_unchecked(psi, evals.back().u, targets.back());
  }
  EnergyGradient out;
  out.state = Statevector(c.qubit_count(), psi);
  ComplexVector lambda = h.apply(psi);
  out.energy = psi.dot(lambda).real();
  out.gradient = RealVector::Zero(theta.size());
  for (std::size_t i = blocks.size(); i-- > 0;) {
    const GateEval& e = evals[i];
    detail::apply_unchecked(psi, e.u.adjoint(), targets[i]);
    const ComplexMatrix r = detail::reduced_overlap(lambda, psi, targets[i]);
    for (Eigen::Index j = 0; j < p; ++j) {
      out.gradient(static_cast<Eigen::Index>(blocks[i].offset) + j) =
          2.0 * e.du[static_cast<std::size_t>(j)].cwiseProduct(r).sum().real();
    }
    detail::apply_unchecked(lambda, e.u.adjoint(), targets[i]);
  }
  return out;
}

inline RealVector gradient(const BrickCircuit& c, const RealVector& theta, const Statevector& psi0, const Observable& h) {
  return energy_and_gradient(c, theta, psi0, h).gradient;
}

enum class InitialKind { Zeros, BellSinglet, BellTriplet, HaarRandom };

inline InitialKind parse_initial_kind(const std::string& s) {
  if (s == "zeros") return InitialKind::Zeros;
  if (s == "singlet" || s == "bell_singlet") return InitialKind::BellSinglet;
  if (s == "triplet" || s == "bell_triplet") return InitialKind::BellTriplet;
  if (s == "haar" || s == "haar_random") return InitialKind::HaarRandom;
  throw Error(ErrorKind::ParseError, "unknown initial state '" + s + "'");
}

inline std::string to_string(InitialKind k) {
  switch (k) {
    case InitialKind::Zeros: return "zeros";
    case InitialKind::BellSinglet: return "singlet";
    case InitialKind::BellTriplet: return "triplet";
    case InitialKind::HaarRandom: return "haar";
  }
  return "?";
}

/// zeros: |0...0>; singlet/triplet: (|01> -+ |10>)/sqrt2 on (0,1), (2,3), ...;
/// haar: normalized complex Gaussian vector from `seed`.
inline Statevector initial_state(InitialKind kind, std::size_t n, std::uint64_t seed = 0) {
  switch (kind) {
    case InitialKind::Zeros: return Statevector(n);
    case InitialKind::BellSinglet:
    case InitialKind::BellTriplet: {
      if (n % 2 != 0) throw Error(ErrorKind::OddQubits, "Bell product needs an even qubit count");
      const double s = std::sqrt(0.5);
      const double sign = kind == InitialKind::BellSinglet ? -1.0 : 1.0;
      ComplexVector pair(4);
      pair << 0.0, s, sign * s, 0.0;
      ComplexVector v = ComplexVector::Ones(1);
      for (std::size_t i = 0; i < n / 2; ++i) v = kron(v, pair);
      return Statevector(n, v);
    }
    case InitialKind::HaarRandom: {
      std::mt19937_64 rng(seed);
      std::normal_distribution<double> normal;
      ComplexVector v(Eigen::Index{1} << n);
      for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        v(i) = cplx(re, im);
      }
      v /= v.norm();
      return Statevector(n, v);
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown initial state");
}

/// S^2 = sum_a (sum_i sigma_i^a)^2 = 3n I + 2 sum_{i<j} (X_i X_j + Y_i Y_j + Z_i Z_j).
inline Observable total_spin_observable(std::size_t n) {
  if (n < 1) throw Error(ErrorKind::TooFewQubits, "S^2 needs at least one qubit");
  Observable::Terms terms;
  terms.emplace_back(3.0 * static_cast<double>(n), PauliString(std::string(n, 'I')));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (char a : {'X', 'Y', 'Z'}) {
        std::string w(n, 'I');
        w[i] = a;
        w[j] = a;
        terms.emplace_back(2.0, PauliString(w));
      }
    }
  }
  return Observable::pauli_sum(n, std::move(terms));
}

}  // namespace horizon
