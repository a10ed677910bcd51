#pragma once

// Classical involutions (AI ... DIII plus custom conjugation forms) and the
// +-1 eigenspace split g = k ⊕ m they induce.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "horizon/algebra.hpp"

namespace horizon {

enum class StructureName { Ipq, Jn, Kpq };

/// I_{p,q} = diag(-I_p, I_q); J_n = [[0, I_n], [-I_n, 0]];
/// K_{p,q} = diag(-I_p, I_q, -I_p, I_q). For Jn only `p` is read (as n).
inline ComplexMatrix structure_matrix(StructureName name, int p, int q = 0) {
  switch (name) {
    case StructureName::Ipq: {
      if (p < 0 || q < 0 || p + q == 0) throw Error(ErrorKind::BadDims, "I_{p,q} needs p, q >= 0, p + q > 0");
      ComplexMatrix m = ComplexMatrix::Identity(p + q, p + q);
      m.topLeftCorner(p, p) *= -1.0;
      return m;
    }
    case StructureName::Jn: {
      if (p <= 0) throw Error(ErrorKind::BadDims, "J_n needs n > 0");
      ComplexMatrix m = ComplexMatrix::Zero(2 * p, 2 * p);
      m.topRightCorner(p, p).setIdentity();
      m.bottomLeftCorner(p, p) = -ComplexMatrix::Identity(p, p);
      return m;
    }
    case StructureName::Kpq: {
      if (p < 0 || q < 0 || p + q == 0) throw Error(ErrorKind::BadDims, "K_{p,q} needs p, q >= 0, p + q > 0");
      const int n = p + q;
      ComplexMatrix m = ComplexMatrix::Identity(2 * n, 2 * n);
      m.block(0, 0, p, p) *= -1.0;
      m.block(n, n, p, p) *= -1.0;
      return m;
    }
  }
  throw Error(ErrorKind::BadDims, "unknown structure matrix");
}

enum class InvolutionKind { AI, AII, AIII, BDI, CI, CII, DIII, Custom };

inline std::string to_string(InvolutionKind k) {
  switch (k) {
    case InvolutionKind::AI: return "AI";
    case InvolutionKind::AII: return "AII";
    case InvolutionKind::AIII: return "AIII";
    case InvolutionKind::BDI: return "BDI";
    case InvolutionKind::CI: return "CI";
    case InvolutionKind::CII: return "CII";
    case InvolutionKind::DIII: return "DIII";
    case InvolutionKind::Custom: return "custom";
  }
  return "?";
}

/// phi(A) = sign * C op(A) C^dag, op in {identity, conjugate, transpose}.
struct CustomAction {
  enum class Op { None, Conjugate, Transpose };
  ComplexMatrix c;
  double sign = 1.0;
  Op op = Op::None;
  std::string name;
};

struct Involution {
  InvolutionKind kind = InvolutionKind::AI;
  int n = 0;  // AI: N; AII, CI, DIII: n
  int p = 0;
  int q = 0;
  std::optional<CustomAction> custom;

  /// Matrix size of the natural algebra this involution acts on.
  Eigen::Index matrix_dim() const {
    switch (kind) {
      case InvolutionKind::AI: return n;
      case InvolutionKind::AII: return 2 * n;
      case InvolutionKind::AIII: return p + q;
      case InvolutionKind::BDI: return p + q;
      case InvolutionKind::CI: return 2 * n;
      case InvolutionKind::CII: return 2 * (p + q);
      case InvolutionKind::DIII: return 2 * n;
      case InvolutionKind::Custom: return custom ? custom->c.rows() : 0;
    }
    return 0;
  }

  std::string id() const {
    switch (kind) {
      case InvolutionKind::AIII:
      case InvolutionKind::BDI:
      case InvolutionKind::CII:
        return to_string(kind) + ":p=" + std::to_string(p) + ",q=" + std::to_string(q);
      case InvolutionKind::Custom: return "custom:" + (custom ? custom->name : std::string("?"));
      default: return to_string(kind) + ":n=" + std::to_string(n);
    }
  }
};

/// phi(A) = -X A^T X on su(2): fixes iZ, negates iX and iY.
inline Involution bloch_involution() {
  Involution inv;
  inv.kind = InvolutionKind::Custom;
  inv.custom = CustomAction{PauliString("X").matrix(), -1.0, CustomAction::Op::Transpose, "bloch"};
  return inv;
}

/// phi(A) = -(YY) A^T (YY) on su(4): k = local su(2) + su(2), m = two-body terms.
inline Involution su2xsu2_involution() {
  Involution inv;
  inv.kind = InvolutionKind::Custom;
  inv.custom = CustomAction{PauliString("YY").matrix(), -1.0, CustomAction::Op::Transpose, "su2xsu2"};
  return inv;
}

namespace detail {

inline int parse_positive(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(value, &used);
  } catch (const std::exception&) {
    throw Error(ErrorKind::ParseError, "bad integer for " + key + ": '" + value + "'");
  }
  if (used != value.size() || v <= 0) {
    throw Error(ErrorKind::ParseError, key + " must be a positive integer, got '" + value + "'");
  }
  return v;
}

}  // namespace detail

/// Parses ids such as "AIII:p=1,q=3", "AII:n=2", "custom:bloch".
inline Involution parse_involution(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error(ErrorKind::ParseError, "involution id needs 'TYPE:args': " + text);
  const std::string type = text.substr(0, colon);
  const std::string args = text.substr(colon + 1);
  if (type == "custom") {
    if (args == "bloch") return bloch_involution();
    if (args == "su2xsu2") return su2xsu2_involution();
    throw Error(ErrorKind::UnknownSpace, "unknown custom involution '" + args + "'");
  }
  static const std::map<std::string, InvolutionKind> kinds{
      {"AI", InvolutionKind::AI},   {"AII", InvolutionKind::AII}, {"AIII", InvolutionKind::AIII},
      {"BDI", InvolutionKind::BDI}, {"CI", InvolutionKind::CI},   {"CII", InvolutionKind::CII},
      {"DIII", InvolutionKind::DIII}};
  const auto it = kinds.find(type);
  if (it == kinds.end()) throw Error(ErrorKind::UnknownSpace, "unknown involution type '" + type + "'");
  Involution inv;
  inv.kind = it->second;
  std::map<std::string, int> kv;
  std::size_t start = 0;
  while (start <= args.size()) {
    const auto comma = args.find(',', start);
    const std::string item = args.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::ParseError, "expected key=value in '" + item + "'");
    const std::string key = item.substr(0, eq);
    kv[key] = detail::parse_positive(key, item.substr(eq + 1));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  const bool pq = inv.kind == InvolutionKind::AIII || inv.kind == InvolutionKind::BDI ||
                  inv.kind == InvolutionKind::CII;
  if (pq) {
    if (!kv.count("p") || !kv.count("q") || kv.size() != 2) {
      throw Error(ErrorKind::ParseError, type + " takes p=..,q=..");
    }
    inv.p = kv["p"];
    inv.q = kv["q"];
  } else {
    if (!kv.count("n") || kv.size() != 1) throw Error(ErrorKind::ParseError, type + " takes n=..");
    inv.n = kv["n"];
    if (inv.kind == InvolutionKind::AI && inv.n < 2) throw Error(ErrorKind::BadDims, "AI needs n >= 2");
  }
  return inv;
}

inline ComplexMatrix apply_involution(const Involution& phi, const ComplexMatrix& a) {
  const Eigen::Index dim = phi.matrix_dim();
  if (a.rows() != dim || a.cols() != dim) {
    throw Error(ErrorKind::ShapeMismatch, phi.id() + " acts on " + std::to_string(dim) + "x" +
                                              std::to_string(dim) + " matrices");
  }
  switch (phi.kind) {
    case InvolutionKind::AI:
    case InvolutionKind::CI:
      return a.conjugate();
    case InvolutionKind::AII: {
      const ComplexMatrix j = structure_matrix(StructureName::Jn, phi.n);
      return j * a.conjugate() * j.transpose();
    }
    case InvolutionKind::AIII:
    case InvolutionKind::BDI: {
      const ComplexMatrix i = structure_matrix(StructureName::Ipq, phi.p, phi.q);
      return i * a * i;
    }
    case InvolutionKind::CII: {
      const ComplexMatrix k = structure_matrix(StructureName::Kpq, phi.p, phi.q);
      return k * a * k;
    }
    case InvolutionKind::DIII: {
      const ComplexMatrix j = structure_matrix(StructureName::Jn, phi.n);
      return j * a * j.transpose();
    }
    case InvolutionKind::Custom: {
      const CustomAction& c = *phi.custom;
      ComplexMatrix t;
      switch (c.op) {
        case CustomAction::Op::None: t = a; break;
        case CustomAction::Op::Conjugate: t = a.conjugate(); break;
        case CustomAction::Op::Transpose: t = a.transpose(); break;
      }
      return c.sign * c.c * t * c.c.adjoint();
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unhandled involution kind");
}

/// sp(n) inside su(2n): elements with J A^* J^T = A (the AII-fixed subalgebra).
inline AlgebraBasis sp_basis(int n) {
  if (n < 1) throw Error(ErrorKind::BadDims, "sp(n) needs n >= 1");
  Involution aii;
  aii.kind = InvolutionKind::AII;
  aii.n = n;
  auto g = std::make_shared<const AlgebraBasis>(su_basis(2 * n));
  RealMatrix phi(static_cast<Eigen::Index>(g->dim()), static_cast<Eigen::Index>(g->dim()));
  for (std::size_t j = 0; j < g->dim(); ++j) phi.col(static_cast<Eigen::Index>(j)) = g->coords(apply_involution(aii, (*g)[j]));
  const RealMatrix fixed = null_space(RealMatrix(phi - RealMatrix::Identity(phi.rows(), phi.cols())));
  return Subspace::span(g, RealMatrix(fixed.transpose())).as_basis();
}

/// The algebra an involution naturally acts on: su, so or sp of the right size.
inline AlgebraBasis natural_algebra(const Involution& phi) {
  switch (phi.kind) {
    case InvolutionKind::AI:
    case InvolutionKind::AII:
    case InvolutionKind::AIII:
    case InvolutionKind::Custom:
      return su_basis(phi.matrix_dim());
    case InvolutionKind::BDI:
    case InvolutionKind::DIII:
      return so_basis(phi.matrix_dim());
    case InvolutionKind::CI:
      return sp_basis(phi.n);
    case InvolutionKind::CII:
      return sp_basis(phi.p + phi.q);
  }
  throw Error(ErrorKind::InvalidArgument, "unhandled involution kind");
}

struct SymmetricReport {
  double kk_residual = 0.0;
  double km_residual = 0.0;
  double mm_residual = 0.0;

  bool symmetric(double tol = 1e-8) const {
    return kk_residual < tol && km_residual < tol && mm_residual < tol;
  }
};

inline SymmetricReport verify_symmetric(const Subspace& k, const Subspace& m) {
  detail::require_same_ambient(k, m);
  SymmetricReport r;
  r.kk_residual = bracket_residual(k, k, k);
  r.km_residual = bracket_residual(k, m, m);
  r.mm_residual = bracket_residual(m, m, k);
  return r;
}

struct CartanDecomposition {
  Subspace k;  // +1 eigenspace
  Subspace m;  // -1 eigenspace
  Subspace h;  // maximal abelian in m (empty when m is)
  SymmetricReport report;
  double eigen_residual = 0.0;  // max over bases of |phi(X) -+ X|
};

/// Matrix of phi in the basis of g, column j = coords(phi(X_j)). Throws when
/// phi leaves g, is not an involution, or fails the bracket test on any pair.
inline RealMatrix involution_matrix(const AlgebraBasis& g, const Involution& phi, const Tolerance& tol = {}) {
  const auto d = static_cast<Eigen::Index>(g.dim());
  RealMatrix mat(d, d);
  std::vector<ComplexMatrix> images;
  images.reserve(g.dim());
  for (std::size_t j = 0; j < g.dim(); ++j) {
    images.push_back(apply_involution(phi, g[j]));
    const Expansion e = expand_in_basis(images.back(), g);
    if (e.residual > tol.eq_tol) {
      throw Error(ErrorKind::NotAutomorphism, phi.id() + " maps basis element " + std::to_string(j) +
                                                  " outside g (residual " + std::to_string(e.residual) + ")");
    }
    mat.col(static_cast<Eigen::Index>(j)) = e.coords;
  }
  const double inv_err = (mat * mat - RealMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (inv_err > tol.eq_tol) {
    throw Error(ErrorKind::NotInvolutive, phi.id() + " squared differs from the identity by " + std::to_string(inv_err));
  }
  for (std::size_t i = 0; i < g.dim(); ++i) {
    for (std::size_t j = i + 1; j < g.dim(); ++j) {
      const ComplexMatrix lhs = apply_involution(phi, commutator(g[i], g[j]));
      const ComplexMatrix rhs = commutator(images[i], images[j]);
      const double err = (lhs - rhs).norm();
      if (err > tol.eq_tol * std::max(1.0, rhs.norm())) {
        throw Error(ErrorKind::NotAutomorphism, phi.id() + " fails phi([A,B]) = [phi(A),phi(B)] on basis pair (" +
                                                    std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  return mat;
}

inline CartanDecomposition split_by_involution(const AlgebraPtr& g, const Involution& phi,
                                               const std::vector<ComplexMatrix>& h_seeds = {},
                                               const Tolerance& tol = {}) {
  const RealMatrix mat = involution_matrix(*g, phi, tol);
  const auto d = mat.rows();
  const RealMatrix id = RealMatrix::Identity(d, d);
  CartanDecomposition out;
  const RealMatrix kplus = null_space(RealMatrix(mat - id), tol);
  const RealMatrix kminus = null_space(RealMatrix(mat + id), tol);
  out.k = kplus.cols() ? Subspace::span(g, RealMatrix(kplus.transpose()), tol) : Subspace::empty(g);
  out.m = kminus.cols() ? Subspace::span(g, RealMatrix(kminus.transpose()), tol) : Subspace::empty(g);
  for (std::size_t i = 0; i < out.k.dim(); ++i) {
    const ComplexMatrix x = out.k.element(i);
    out.eigen_residual = std::max(out.eigen_residual, (apply_involution(phi, x) - x).norm());
  }
  for (std::size_t i = 0; i < out.m.dim(); ++i) {
    const ComplexMatrix x = out.m.element(i);
    out.eigen_residual = std::max(out.eigen_residual, (apply_involution(phi, x) + x).norm());
  }
  out.h = out.m.is_empty() ? Subspace::empty(g) : cartan_subalgebra(out.m, h_seeds, tol);
  out.report = verify_symmetric(out.k, out.m);
  return out;
}

}  // namespace horizon
