#pragma once

// Parameterized gate families: horizontal exp(sum theta_j M_j), equivariant,
// KAK-form, stabilizer-derived and full-group gates, plus the two-qubit
// circuit pieces behind the KAK decomposition.

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "horizon/spaces.hpp"

namespace horizon {

enum class GateKind { Horizontal, Equivariant, KAK, Stabilizer, FullUnitary };

inline std::string to_string(GateKind k) {
  switch (k) {
    case GateKind::Horizontal: return "horizontal";
    case GateKind::Equivariant: return "equivariant";
    case GateKind::KAK: return "kak";
    case GateKind::Stabilizer: return "stabilizer";
    case GateKind::FullUnitary: return "full";
  }
  return "?";
}

inline GateKind parse_gate_kind(const std::string& s) {
  if (s == "horizontal") return GateKind::Horizontal;
  if (s == "equivariant") return GateKind::Equivariant;
  if (s == "kak") return GateKind::KAK;
  if (s == "stabilizer") return GateKind::Stabilizer;
  if (s == "full") return GateKind::FullUnitary;
  throw Error(ErrorKind::ParseError, "unknown gate kind '" + s + "'");
}

/// A parameterized gate. Exponential kinds use U = exp(sum theta_j G_j).
/// KAK gates use U = exp(B) exp(H) exp(-B), B = sum alpha_j K_j, H = sum phi_j h_j,
/// with theta = (alpha..., phi...).
struct GateSpec {
  GateKind kind = GateKind::Horizontal;
  std::string space_id;
  std::vector<ComplexMatrix> generators;  // exponential kinds
  std::vector<ComplexMatrix> kak_k;       // KAK only
  std::vector<ComplexMatrix> kak_h;       // KAK only
  std::vector<std::string> labels;
  std::vector<int> qubit_span;

  std::size_t param_count() const {
    return kind == GateKind::KAK ? kak_k.size() + kak_h.size() : generators.size();
  }

  Eigen::Index dim() const {
    if (!generators.empty()) return generators.front().rows();
    if (!kak_h.empty()) return kak_h.front().rows();
    return 0;
  }

  std::size_t qubit_count() const { return qubits_for_dim(dim()); }
};

namespace detail {

inline void check_params(const GateSpec& spec, const RealVector& theta) {
  if (static_cast<std::size_t>(theta.size()) != spec.param_count()) {
    throw Error(ErrorKind::ParamLengthMismatch, "gate expects " + std::to_string(spec.param_count()) +
                                                    " parameters, got " + std::to_string(theta.size()));
  }
}

inline ComplexMatrix combine(const std::vector<ComplexMatrix>& basis, const RealVector& c, Eigen::Index offset = 0) {
  ComplexMatrix a = ComplexMatrix::Zero(basis.front().rows(), basis.front().cols());
  for (std::size_t j = 0; j < basis.size(); ++j) a += c(offset + static_cast<Eigen::Index>(j)) * basis[j];
  return a;
}

/// Subspace basis rescaled by sqrt(N): orthonormal under Tr(A^dag B)/N, so a
/// Pauli direction i P / sqrt(N) becomes i P.
inline std::vector<ComplexMatrix> gate_scaled(const Subspace& s) {
  std::vector<ComplexMatrix> out;
  const double scale = std::sqrt(static_cast<double>(s.ambient()->ambient_dim()));
  for (std::size_t i = 0; i < s.dim(); ++i) out.push_back(scale * s.element(i));
  return out;
}

inline std::vector<int> default_span(Eigen::Index dim) {
  std::vector<int> span;
  const std::size_t n = qubits_for_dim(dim);
  if (n == std::size_t(-1)) return span;
  for (std::size_t q = 0; q < n; ++q) span.push_back(static_cast<int>(q));
  return span;
}

}  // namespace detail

/// Generators [[0, x], [-x^dag, 0]] of SU(N)/U(N-1), ordered (Re x_1, Im x_1, Re x_2, ...).
/// With `real_only` only the Re parts are kept, giving SO(N)/O(N-1).
inline std::vector<ComplexMatrix> stabilizer_generators(Eigen::Index n, bool real_only = false) {
  if (n < 2) throw Error(ErrorKind::BadDims, "stabilizer gate needs N >= 2");
  std::vector<ComplexMatrix> out;
  for (Eigen::Index j = 1; j < n; ++j) {
    ComplexMatrix re = ComplexMatrix::Zero(n, n);
    re(0, j) = 1.0;
    re(j, 0) = -1.0;
    out.push_back(re);
    if (real_only) continue;
    ComplexMatrix im = ComplexMatrix::Zero(n, n);
    im(0, j) = kI;
    im(j, 0) = kI;
    out.push_back(im);
  }
  return out;
}

/// exp([[0, x], [-x^dag, 0]]) for x in C^{N-1}.
inline ComplexMatrix stabilizer_gate_su_n_u_nm1(const ComplexVector& x, Eigen::Index n) {
  if (n < 2) throw Error(ErrorKind::BadDims, "stabilizer gate needs N >= 2");
  if (x.size() != n - 1) throw Error(ErrorKind::ParamLengthMismatch, "x must have length N-1");
  ComplexMatrix a = ComplexMatrix::Zero(n, n);
  a.block(0, 1, 1, n - 1) = x.transpose();
  a.block(1, 0, n - 1, 1) = -x.conjugate();
  return expm_skew(a);
}

inline GateSpec exponential_gate(GateKind kind, std::string space_id, std::vector<ComplexMatrix> gens) {
  if (gens.empty()) throw Error(ErrorKind::EmptySubspace, "gate " + space_id + " has no generators");
  GateSpec s;
  s.kind = kind;
  s.space_id = std::move(space_id);
  s.generators = std::move(gens);
  for (const auto& g : s.generators) s.labels.push_back(pauli_label(g));
  s.qubit_span = detail::default_span(s.dim());
  return s;
}

/// Gate of the requested kind for a catalog space. Extra ids "su2", "su4",
/// "so4" name the full-group gates.
inline GateSpec make_gate(const std::string& space_id, GateKind kind, const Tolerance& tol = {}) {
  if (space_id == "su2" || space_id == "su4" || space_id == "so4") {
    if (kind != GateKind::FullUnitary) throw Error(ErrorKind::InvalidArgument, space_id + " only has a full gate");
    auto g = std::make_shared<const AlgebraBasis>(space_id == "so4" ? so_basis(4)
                                                                   : su_basis(space_id == "su2" ? 2 : 4));
    return exponential_gate(kind, space_id, detail::gate_scaled(Subspace::full(g)));
  }
  const HomogeneousSpace space = make_space(space_id);
  const std::string id = space.id;
  switch (kind) {
    case GateKind::Horizontal:
      return exponential_gate(kind, id, detail::gate_scaled(horizontal_complement(space.k, tol)));
    case GateKind::Equivariant:
      return exponential_gate(kind, id, detail::gate_scaled(commutant(space.k, tol)));
    case GateKind::Stabilizer:
      if (id == "su4/u3") return exponential_gate(kind, id, stabilizer_generators(4));
      if (id == "so4/so3") return exponential_gate(kind, id, stabilizer_generators(4, true));
      if (id == "su2/u1") return exponential_gate(kind, id, stabilizer_generators(2));
      throw Error(ErrorKind::InvalidArgument, id + " has no stabilizer form");
    case GateKind::KAK: {
      const CartanDecomposition cd = space.cartan(tol);
      if (!cd.report.symmetric() || cd.h.is_empty()) {
        throw Error(ErrorKind::InvalidArgument, id + " is not a symmetric space; no KAK form");
      }
      GateSpec s;
      s.kind = kind;
      s.space_id = id;
      s.kak_k = detail::gate_scaled(cd.k);
      s.kak_h = detail::gate_scaled(cd.h);
      for (const auto& g : s.kak_k) s.labels.push_back(pauli_label(g));
      for (const auto& g : s.kak_h) s.labels.push_back(pauli_label(g));
      s.qubit_span = detail::default_span(s.dim());
      return s;
    }
    case GateKind::FullUnitary:
      return make_gate(space.g->ambient_dim() == 2 ? "su2" : (id.rfind("so4", 0) == 0 ? "so4" : "su4"), kind, tol);
  }
  throw Error(ErrorKind::InvalidArgument, "unhandled gate kind");
}

/// Default gate per catalog row: stabilizer form for su4/u3 and so4/so3,
/// horizontal otherwise.
inline GateSpec gate_catalog(const std::string& space_id) {
  const std::string id = canonical_space_id(space_id);
  if (id == "su4/u3" || id == "so4/so3") return make_gate(id, GateKind::Stabilizer);
  if (id == "su2" || id == "su4" || id == "so4") return make_gate(id, GateKind::FullUnitary);
  return make_gate(id, GateKind::Horizontal);
}

/// exp(B) exp(H) exp(-B) with B = sum alpha_j K_j, H = sum phi_j h_j.
inline ComplexMatrix kak_gate_unitary(const RealVector& alpha, const RealVector& phi,
                                      const std::vector<ComplexMatrix>& k_basis,
                                      const std::vector<ComplexMatrix>& h_basis) {
  if (static_cast<std::size_t>(alpha.size()) != k_basis.size() ||
      static_cast<std::size_t>(phi.size()) != h_basis.size()) {
    throw Error(ErrorKind::ParamLengthMismatch, "KAK parameters do not match the k/h bases");
  }
  const ComplexMatrix b = detail::combine(k_basis, alpha);
  const ComplexMatrix eb = expm_skew(b);
  return eb * expm_skew(detail::combine(h_basis, phi)) * eb.adjoint();
}

/// Same, using the (sqrt(N)-scaled) k and h of a Cartan decomposition.
inline ComplexMatrix kak_gate_unitary(const RealVector& alpha, const RealVector& phi,
                                      const CartanDecomposition& space) {
  return kak_gate_unitary(alpha, phi, detail::gate_scaled(space.k), detail::gate_scaled(space.h));
}

struct GateEval {
  ComplexMatrix u;
  std::vector<ComplexMatrix> du;  // dU / dtheta_j
};

/// U(theta) and every partial derivative, exact through the eigendecomposition.
inline GateEval evaluate_gate(const GateSpec& spec, const RealVector& theta, bool with_derivatives = true) {
  detail::check_params(spec, theta);
  GateEval out;
  if (spec.kind != GateKind::KAK) {
    const SkewExp e(detail::combine(spec.generators, theta));
    out.u = e.value();
    if (with_derivatives) {
      for (const auto& g : spec.generators) out.du.push_back(e.derivative(g));
    }
    return out;
  }
  const auto nk = static_cast<Eigen::Index>(spec.kak_k.size());
  const ComplexMatrix b = detail::combine(spec.kak_k, theta);
  const SkewExp e1(b), e3(-b);
  const SkewExp e2(detail::combine(spec.kak_h, theta, nk));
  const ComplexMatrix right = e2.value() * e3.value();
  out.u = e1.value() * right;
  if (with_derivatives) {
    const ComplexMatrix left = e1.value() * e2.value();
    for (const auto& k : spec.kak_k) out.du.push_back(e1.derivative(k) * right + left * e3.derivative(-k));
    for (const auto& h : spec.kak_h) out.du.push_back(e1.value() * e2.derivative(h) * e3.value());
  }
  return out;
}

inline ComplexMatrix gate_unitary(const GateSpec& spec, const RealVector& theta) {
  return evaluate_gate(spec, theta, false).u;
}

/// Omega_j = U^dag dU/dtheta_j, so that dU/dtheta_j = U Omega_j.
inline std::vector<ComplexMatrix> effective_generators(const GateSpec& spec, const RealVector& theta) {
  GateEval e = evaluate_gate(spec, theta);
  std::vector<ComplexMatrix> out;
  for (const auto& d : e.du) out.push_back(e.u.adjoint() * d);
  return out;
}

/// theta' with sum theta'_j G_j = k^dag (sum theta_j G_j) k, hence U(theta) k = k U(theta').
inline RealVector reparameterize_under_symmetry(const GateSpec& spec, const ComplexMatrix& k, const RealVector& theta,
                                                const Tolerance& tol = {}) {
  if (spec.kind == GateKind::KAK) throw Error(ErrorKind::InvalidArgument, "reparameterize expects an exponential gate");
  detail::check_params(spec, theta);
  if (k.rows() != spec.dim() || !is_unitary(k, 10.0 * tol.eq_tol)) {
    throw Error(ErrorKind::NonUnitary, "symmetry element must be a unitary of the gate's size");
  }
  const ComplexMatrix a = detail::combine(spec.generators, theta);
  const ComplexMatrix conj = k.adjoint() * a * k;
  RealVector out(theta.size());
  for (std::size_t j = 0; j < spec.generators.size(); ++j) {
    const ComplexMatrix& g = spec.generators[j];
    out(static_cast<Eigen::Index>(j)) = trace_inner(g, conj) / trace_inner(g, g);
  }
  const double leak = (conj - detail::combine(spec.generators, out)).norm();
  if (leak > tol.eq_tol * std::max(1.0, a.norm())) {
    throw Error(ErrorKind::SymmetryLeakage, "k^dag A k leaves the generator span (residual " + std::to_string(leak) + ")");
  }
  return out;
}

// ---- circuit primitives -------------------------------------------------

enum class PrimitiveKind { RX, RY, RZ, R3, CNOT };

struct CircuitPrimitive {
  PrimitiveKind kind;
  std::vector<int> qubits;     // CNOT: (control, target)
  std::vector<double> params;  // R3: (phi, theta, omega)
};

/// R_a(t) = exp(-i t P_a / 2).
inline ComplexMatrix rot(char axis, double t) {
  return std::cos(t / 2) * ComplexMatrix::Identity(2, 2) - kI * std::sin(t / 2) * PauliString::letter_matrix(axis);
}
inline ComplexMatrix rx(double t) { return rot('X', t); }
inline ComplexMatrix ry(double t) { return rot('Y', t); }
inline ComplexMatrix rz(double t) { return rot('Z', t); }

/// General SU(2) element R3(phi, theta, omega) = Rz(omega) Ry(theta) Rz(phi).
inline ComplexMatrix r3(double phi, double theta, double omega) { return rz(omega) * ry(theta) * rz(phi); }

/// CNOT on an n-qubit register (big-endian).
inline ComplexMatrix cnot(int control, int target, int n = 2) {
  if (control == target || control < 0 || target < 0 || control >= n || target >= n) {
    throw Error(ErrorKind::QubitRange, "bad CNOT qubits");
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  const Eigen::Index cbit = Eigen::Index{1} << (n - 1 - control);
  const Eigen::Index tbit = Eigen::Index{1} << (n - 1 - target);
  for (Eigen::Index b = 0; b < dim; ++b) m((b & cbit) ? (b ^ tbit) : b, b) = 1.0;
  return m;
}

/// Single-qubit matrix on qubit q of an n-qubit register.
inline ComplexMatrix embed1(const ComplexMatrix& u, int q, int n) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int i = 0; i < n; ++i) out = kron(out, i == q ? u : ComplexMatrix::Identity(2, 2));
  return out;
}

inline ComplexMatrix primitive_matrix(const CircuitPrimitive& p, int n) {
  auto need = [&](std::size_t nq, std::size_t np) {
    if (p.qubits.size() != nq || p.params.size() != np) throw Error(ErrorKind::ParamLengthMismatch, "bad primitive arity");
    for (int q : p.qubits) {
      if (q < 0 || q >= n) throw Error(ErrorKind::QubitRange, "primitive qubit out of range");
    }
  };
  switch (p.kind) {
    case PrimitiveKind::RX: need(1, 1); return embed1(rx(p.params[0]), p.qubits[0], n);
    case PrimitiveKind::RY: need(1, 1); return embed1(ry(p.params[0]), p.qubits[0], n);
    case PrimitiveKind::RZ: need(1, 1); return embed1(rz(p.params[0]), p.qubits[0], n);
    case PrimitiveKind::R3: need(1, 3); return embed1(r3(p.params[0], p.params[1], p.params[2]), p.qubits[0], n);
    case PrimitiveKind::CNOT: need(2, 0); return cnot(p.qubits[0], p.qubits[1], n);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown primitive");
}

/// Product of primitives applied in list order (first element acts first).
inline ComplexMatrix circuit_unitary(const std::vector<CircuitPrimitive>& ops, int n) {
  ComplexMatrix u = ComplexMatrix::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
  for (const auto& op : ops) u = primitive_matrix(op, n) * u;
  return u;
}

/// Middle block of the two-qubit KAK circuit, qubit 0 drawn on top:
/// Rz(pi/2) on q1; CNOT(1->0); Rz(t1) on q0, Ry(t2) on q1; CNOT(0->1);
/// Ry(t3) on q1; CNOT(1->0); Rz(-pi/2) on q0.
inline std::vector<CircuitPrimitive> vatan_block_ops(double t1, double t2, double t3) {
  return {{PrimitiveKind::RZ, {1}, {kPi / 2}},  {PrimitiveKind::CNOT, {1, 0}, {}},
          {PrimitiveKind::RZ, {0}, {t1}},       {PrimitiveKind::RY, {1}, {t2}},
          {PrimitiveKind::CNOT, {0, 1}, {}},    {PrimitiveKind::RY, {1}, {t3}},
          {PrimitiveKind::CNOT, {1, 0}, {}},    {PrimitiveKind::RZ, {0}, {-kPi / 2}}};
}

inline ComplexMatrix vatan_block(double t1, double t2, double t3) {
  return circuit_unitary(vatan_block_ops(t1, t2, t3), 2);
}

/// Frozen map: vatan_block(t) equals exp(i(c1 XX + c2 YY + c3 ZZ)) up to phase.
inline std::array<double, 3> vatan_map(double t1, double t2, double t3) {
  return {kPi / 4 - t2 / 2, kPi / 4 + t3 / 2, kPi / 4 - t1 / 2};
}

inline std::array<double, 3> vatan_map_inverse(double c1, double c2, double c3) {
  return {kPi / 2 - 2 * c3, kPi / 2 - 2 * c1, 2 * c2 - kPi / 2};
}

/// exp(i(c1 XX + c2 YY + c3 ZZ)).
inline ComplexMatrix canonical_gate(double c1, double c2, double c3) {
  return expm_skew(kI * (c1 * PauliString("XX").matrix() + c2 * PauliString("YY").matrix() +
                         c3 * PauliString("ZZ").matrix()));
}

/// Full horizontal SU(4)/(SU(2)xSU(2)) circuit: R3 layer, middle block, inverse R3 layer.
inline ComplexMatrix kak_circuit(const std::array<double, 3>& a1, const std::array<double, 3>& a2,
                                  const std::array<double, 3>& theta) {
  const ComplexMatrix k = kron(r3(a1[0], a1[1], a1[2]), r3(a2[0], a2[1], a2[2]));
  return k.adjoint() * vatan_block(theta[0], theta[1], theta[2]) * k;
}

/// Magic basis: columns map so(4) to su(2)+su(2) and real diagonal to span{XX, YY, ZZ}.
inline ComplexMatrix magic_basis() {
  ComplexMatrix q(4, 4);
  const double s = std::sqrt(0.5);
  q << 1, 0, 0, kI, 0, kI, 1, 0, 0, kI, -1, 0, 1, 0, 0, -kI;
  return s * q;
}

struct TwoQubitKak {
  ComplexMatrix k;   // in SU(2) x SU(2)
  RealVector c;      // h = i(c0 XX + c1 YY + c2 ZZ)
  ComplexMatrix h;   // the generator itself
};

/// For X in the horizontal space of SU(4)/(SU(2)xSU(2)), returns k and h with
/// exp(X) = k exp(h) k^dag, via the real-symmetric diagonalization in the magic basis.
inline TwoQubitKak kak_factorize(const ComplexMatrix& x, const Tolerance& tol = {}) {
  if (x.rows() != 4 || x.cols() != 4) throw Error(ErrorKind::DimensionMismatch, "two-qubit KAK needs a 4x4 input");
  if (!is_skew_hermitian(x, tol.eq_tol * std::max(1.0, x.norm()))) {
    throw Error(ErrorKind::NotSkewHermitian, "KAK input must be skew-Hermitian");
  }
  const ComplexMatrix q = magic_basis();
  const ComplexMatrix s = -kI * (q.adjoint() * x * q);
  if (s.imag().cwiseAbs().maxCoeff() > 1e-8 * std::max(1.0, x.norm())) {
    throw Error(ErrorKind::SymmetryLeakage, "input has a component along the local algebra");
  }
  Eigen::SelfAdjointEigenSolver<RealMatrix> eig(RealMatrix(0.5 * (s.real() + s.real().transpose())));
  RealMatrix o = eig.eigenvectors();
  if (o.determinant() < 0) o.col(0) *= -1.0;
  TwoQubitKak out;
  out.k = q * o.cast<cplx>() * q.adjoint();
  out.h = q * (kI * eig.eigenvalues().cast<cplx>()).asDiagonal() * q.adjoint();
  out.c.resize(3);
  const char* words[] = {"XX", "YY", "ZZ"};
  for (int i = 0; i < 3; ++i) out.c(i) = (PauliString(words[i]).matrix() * (-kI * out.h)).trace().real() / 4.0;
  return out;
}

}  // namespace horizon
