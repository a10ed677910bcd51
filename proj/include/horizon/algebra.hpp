#pragma once

// Matrix Lie algebras over an orthonormal skew-Hermitian basis: subspaces
// in coordinates, complements, commutants, centers, the four-way
// horizontal/equivariant split, Cartan subalgebras and DLA closure.

#include <algorithm>
#include <cmath>
#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "horizon/numeric.hpp"
#include "horizon/pauli.hpp"

namespace horizon {

/// Ordered basis of skew-Hermitian N x N matrices, orthonormal under
/// Re Tr(A^dag B), so the trace inner product is the dot product of coordinates.
class AlgebraBasis {
 public:
  AlgebraBasis() = default;

  AlgebraBasis(std::vector<ComplexMatrix> elements, std::vector<std::string> labels,
               const Tolerance& tol = {})
      : elements_(std::move(elements)), labels_(std::move(labels)) {
    if (elements_.empty()) throw Error(ErrorKind::EmptySubspace, "algebra basis is empty");
    ambient_dim_ = elements_.front().rows();
    for (const auto& e : elements_) {
      if (e.rows() != ambient_dim_ || e.cols() != ambient_dim_) {
        throw Error(ErrorKind::DimensionMismatch, "basis elements differ in size");
      }
      if (!is_skew_hermitian(e, tol.eq_tol)) {
        throw Error(ErrorKind::NotSkewHermitian, "basis element is not skew-Hermitian");
      }
    }
    if (labels_.size() != elements_.size()) {
      labels_.clear();
      for (const auto& e : elements_) labels_.push_back(pauli_label(e));
    }
    const Eigen::Index n2 = ambient_dim_ * ambient_dim_;
    stacked_.resize(n2, static_cast<Eigen::Index>(elements_.size()));
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      stacked_.col(static_cast<Eigen::Index>(i)) =
          Eigen::Map<const ComplexVector>(elements_[i].data(), n2);
    }
    const RealMatrix gram = (stacked_.adjoint() * stacked_).real();
    const double err = (gram - RealMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
    if (err > tol.eq_tol) {
      throw Error(ErrorKind::InvalidArgument, "basis is not orthonormal (Gram error " +
                                                  std::to_string(err) + ")");
    }
  }

  /// Gram-Schmidt (twice) over the span of arbitrary skew-Hermitian matrices.
  static AlgebraBasis orthonormalized(const std::vector<ComplexMatrix>& mats,
                                      const Tolerance& tol = {}) {
    std::vector<ComplexMatrix> out;
    for (const auto& m : mats) {
      ComplexMatrix v = 0.5 * (m - m.adjoint());
      const double scale = std::max(1.0, v.norm());
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& b : out) v -= trace_inner(b, v) * b;
      }
      const double nrm = v.norm();
      if (nrm > 1e3 * tol.rank_tol * scale) out.push_back(v / nrm);
    }
    return AlgebraBasis(std::move(out), {}, tol);
  }

  std::size_t dim() const { return elements_.size(); }
  Eigen::Index ambient_dim() const { return ambient_dim_; }
  const std::vector<ComplexMatrix>& elements() const { return elements_; }
  const ComplexMatrix& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// a_j = Re Tr(X_j^dag X).
  RealVector coords(const ComplexMatrix& x) const {
    if (x.rows() != ambient_dim_ || x.cols() != ambient_dim_) {
      throw Error(ErrorKind::DimensionMismatch, "matrix does not match the basis size");
    }
    const Eigen::Map<const ComplexVector> v(x.data(), x.size());
    return (stacked_.adjoint() * v).real();
  }

  ComplexMatrix element(const RealVector& coords) const {
    ComplexVector v = stacked_ * coords.cast<cplx>();
    return Eigen::Map<ComplexMatrix>(v.data(), ambient_dim_, ambient_dim_);
  }

 private:
  Eigen::Index ambient_dim_ = 0;
  std::vector<ComplexMatrix> elements_;
  std::vector<std::string> labels_;
  ComplexMatrix stacked_;  // column i = vec(X_i)
};

using AlgebraPtr = std::shared_ptr<const AlgebraBasis>;

struct Expansion {
  RealVector coords;
  double residual = 0.0;  // || X - sum_j a_j X_j ||_F
};

inline Expansion expand_in_basis(const ComplexMatrix& x, const AlgebraBasis& basis) {
  Expansion e;
  e.coords = basis.coords(x);
  e.residual = (x - basis.element(e.coords)).norm();
  return e;
}

/// Normalized Pauli basis { i P / sqrt(2^n) } of su(2^n), identity excluded,
/// in lexicographic IXYZ order.
inline AlgebraBasis pauli_basis(std::size_t n) {
  std::vector<ComplexMatrix> elems;
  std::vector<std::string> labels;
  const double scale = 1.0 / std::sqrt(static_cast<double>(std::size_t{1} << n));
  for (const auto& w : pauli_words(n)) {
    if (w.find_first_not_of('I') == std::string::npos) continue;
    elems.push_back(kI * scale * PauliString(w).matrix());
    labels.push_back("i" + w);
  }
  return AlgebraBasis(std::move(elems), std::move(labels));
}

/// Normalized basis spanned by the given Pauli words, each i P / sqrt(2^n).
inline AlgebraBasis pauli_subset_basis(const std::vector<std::string>& words) {
  if (words.empty()) throw Error(ErrorKind::EmptySubspace, "no Pauli words given");
  std::vector<ComplexMatrix> elems;
  std::vector<std::string> labels;
  const double scale = 1.0 / std::sqrt(static_cast<double>(std::size_t{1} << words.front().size()));
  for (const auto& w : words) {
    elems.push_back(kI * scale * PauliString(w).matrix());
    labels.push_back("i" + w);
  }
  return AlgebraBasis(std::move(elems), std::move(labels));
}

/// su(N): Pauli basis when N = 2^n, generalized Gell-Mann otherwise.
inline AlgebraBasis su_basis(Eigen::Index n) {
  if (n < 2) throw Error(ErrorKind::BadDims, "su(N) needs N >= 2");
  if (const auto q = qubits_for_dim(n); q != std::size_t(-1)) return pauli_basis(q);
  std::vector<ComplexMatrix> elems;
  std::vector<std::string> labels;
  const double r2 = std::sqrt(0.5);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      ComplexMatrix a = ComplexMatrix::Zero(n, n);
      a(i, j) = r2;
      a(j, i) = -r2;
      elems.push_back(a);
      labels.push_back("A(" + std::to_string(i) + "," + std::to_string(j) + ")");
      ComplexMatrix s = ComplexMatrix::Zero(n, n);
      s(i, j) = kI * r2;
      s(j, i) = kI * r2;
      elems.push_back(s);
      labels.push_back("S(" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }
  for (Eigen::Index l = 1; l < n; ++l) {
    ComplexMatrix d = ComplexMatrix::Zero(n, n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
    for (Eigen::Index i = 0; i < l; ++i) d(i, i) = kI * norm;
    d(l, l) = -kI * norm * static_cast<double>(l);
    elems.push_back(d);
    labels.push_back("D(" + std::to_string(l) + ")");
  }
  return AlgebraBasis(std::move(elems), std::move(labels));
}

/// so(N) as real antisymmetric matrices. For N = 2^n this is the span of i P
/// over Pauli words with an odd number of Y letters (same span, Pauli labels).
inline AlgebraBasis so_basis(Eigen::Index n) {
  if (n < 2) throw Error(ErrorKind::BadDims, "so(N) needs N >= 2");
  if (const auto q = qubits_for_dim(n); q != std::size_t(-1)) {
    std::vector<std::string> words;
    for (const auto& w : pauli_words(q)) {
      if (std::count(w.begin(), w.end(), 'Y') % 2 == 1) words.push_back(w);
    }
    return pauli_subset_basis(words);
  }
  std::vector<ComplexMatrix> elems;
  std::vector<std::string> labels;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      ComplexMatrix a = ComplexMatrix::Zero(n, n);
      a(i, j) = std::sqrt(0.5);
      a(j, i) = -std::sqrt(0.5);
      elems.push_back(a);
      labels.push_back("E(" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }
  return AlgebraBasis(std::move(elems), std::move(labels));
}

/// Subspace of an ambient algebra g, stored as orthonormal coordinate rows.
class Subspace {
 public:
  Subspace() = default;

  /// `rows` must already be orthonormal.
  Subspace(AlgebraPtr ambient, RealMatrix rows) : ambient_(std::move(ambient)), coords_(std::move(rows)) {
    if (!ambient_) throw Error(ErrorKind::InvalidArgument, "subspace needs an ambient basis");
    if (coords_.rows() == 0) coords_.resize(0, static_cast<Eigen::Index>(ambient_->dim()));
    if (coords_.cols() != static_cast<Eigen::Index>(ambient_->dim())) {
      throw Error(ErrorKind::DimensionMismatch, "coordinate rows do not match dim(g)");
    }
  }

  static Subspace empty(AlgebraPtr ambient) {
    const auto n = static_cast<Eigen::Index>(ambient->dim());
    return Subspace(std::move(ambient), RealMatrix(0, n));
  }

  static Subspace full(AlgebraPtr ambient) {
    const auto n = static_cast<Eigen::Index>(ambient->dim());
    return Subspace(std::move(ambient), RealMatrix::Identity(n, n));
  }

  /// Span of arbitrary coordinate rows, re-expressed in the canonical basis.
  static Subspace span(AlgebraPtr ambient, const RealMatrix& rows, const Tolerance& tol = {}) {
    const auto n = static_cast<Eigen::Index>(ambient->dim());
    if (rows.rows() == 0) return empty(std::move(ambient));
    // Row space = orthogonal complement of the null space of `rows`.
    const RealMatrix null = null_space(rows, tol);
    const RealMatrix range = null_space(RealMatrix(null.transpose()), tol);
    Subspace s(std::move(ambient), RealMatrix(range.transpose()));
    (void)n;
    return s.canonical();
  }

  /// Span of matrices that must lie in g (residual <= eq_tol * norm).
  static Subspace from_elements(AlgebraPtr ambient, const std::vector<ComplexMatrix>& mats,
                                const Tolerance& tol = {}) {
    RealMatrix rows(static_cast<Eigen::Index>(mats.size()), static_cast<Eigen::Index>(ambient->dim()));
    for (std::size_t i = 0; i < mats.size(); ++i) {
      const Expansion e = expand_in_basis(mats[i], *ambient);
      if (e.residual > tol.eq_tol * std::max(1.0, mats[i].norm())) {
        throw Error(ErrorKind::InvalidArgument,
                    "element " + std::to_string(i) + " lies outside the ambient algebra (residual " +
                        std::to_string(e.residual) + ")");
      }
      rows.row(static_cast<Eigen::Index>(i)) = e.coords.transpose();
    }
    return span(std::move(ambient), rows, tol);
  }

  const AlgebraPtr& ambient() const { return ambient_; }
  const RealMatrix& coords() const { return coords_; }
  std::size_t dim() const { return static_cast<std::size_t>(coords_.rows()); }
  bool is_empty() const { return coords_.rows() == 0; }

  ComplexMatrix element(std::size_t i) const {
    return ambient_->element(coords_.row(static_cast<Eigen::Index>(i)).transpose());
  }

  std::vector<ComplexMatrix> elements() const {
    std::vector<ComplexMatrix> out;
    for (std::size_t i = 0; i < dim(); ++i) out.push_back(element(i));
    return out;
  }

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < dim(); ++i) out.push_back(pauli_label(element(i)));
    return out;
  }

  RealMatrix projector() const { return coords_.transpose() * coords_; }

  /// Norm of the component of coordinate vector v outside this subspace.
  double residual(const RealVector& v) const {
    if (is_empty()) return v.norm();
    return (v - coords_.transpose() * (coords_ * v)).norm();
  }

  /// Residual of a matrix: the part outside g plus the part of its g-coordinates outside us.
  double residual(const ComplexMatrix& x) const {
    const Expansion e = expand_in_basis(x, *ambient_);
    const double inside = residual(e.coords);
    return std::sqrt(e.residual * e.residual + inside * inside);
  }

  /// Rebasis by projecting ambient basis vectors in order and orthonormalizing,
  /// so Pauli-aligned subspaces come out with Pauli-aligned, readable bases.
  Subspace canonical() const {
    const Eigen::Index n = coords_.cols();
    const Eigen::Index d = coords_.rows();
    if (d == 0) return *this;
    const RealMatrix proj = projector();
    std::vector<RealVector> chosen;
    for (double threshold : {1e-3, 1e-8}) {
      for (Eigen::Index i = 0; i < n && static_cast<Eigen::Index>(chosen.size()) < d; ++i) {
        RealVector v = proj.col(i);
        for (int pass = 0; pass < 2; ++pass) {
          for (const auto& c : chosen) v -= c.dot(v) * c;
        }
        const double nrm = v.norm();
        if (nrm > threshold) chosen.push_back(v / nrm);
      }
      if (static_cast<Eigen::Index>(chosen.size()) == d) break;
    }
    RealMatrix rows(static_cast<Eigen::Index>(chosen.size()), n);
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      // Flip sign so the first significant coordinate is positive.
      RealVector v = chosen[i];
      for (Eigen::Index j = 0; j < n; ++j) {
        if (std::abs(v(j)) > 1e-9) {
          if (v(j) < 0) v = -v;
          break;
        }
      }
      rows.row(static_cast<Eigen::Index>(i)) = v.transpose();
    }
    return Subspace(ambient_, rows);
  }

  /// Materialize as a standalone algebra basis (e.g. to use k as a new ambient).
  AlgebraBasis as_basis() const { return AlgebraBasis(elements(), labels()); }

 private:
  AlgebraPtr ambient_;
  RealMatrix coords_;
};

namespace detail {

inline void require_same_ambient(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient() && a.ambient()->dim() != b.ambient()->dim()) {
    throw Error(ErrorKind::DimensionMismatch, "subspaces live in different algebras");
  }
}

}  // namespace detail

/// Worst residual between two spans: each basis of one projected onto the other.
inline double span_distance(const Subspace& a, const Subspace& b) {
  detail::require_same_ambient(a, b);
  if (a.dim() != b.dim()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.coords().rows(); ++i) {
    worst = std::max(worst, b.residual(RealVector(a.coords().row(i).transpose())));
  }
  for (Eigen::Index i = 0; i < b.coords().rows(); ++i) {
    worst = std::max(worst, a.residual(RealVector(b.coords().row(i).transpose())));
  }
  return worst;
}

/// Largest |<a_i, b_j>| between the two bases; zero for orthogonal subspaces.
inline double overlap(const Subspace& a, const Subspace& b) {
  detail::require_same_ambient(a, b);
  if (a.is_empty() || b.is_empty()) return 0.0;
  return (a.coords() * b.coords().transpose()).cwiseAbs().maxCoeff();
}

/// a ∩ b.
inline Subspace intersection(const Subspace& a, const Subspace& b, const Tolerance& tol = {}) {
  detail::require_same_ambient(a, b);
  if (a.is_empty() || b.is_empty()) return Subspace::empty(a.ambient());
  const auto n = static_cast<Eigen::Index>(a.ambient()->dim());
  const RealMatrix outside_b = RealMatrix::Identity(n, n) - b.projector();
  const RealMatrix sel = null_space(RealMatrix(outside_b * a.coords().transpose()), tol);
  if (sel.cols() == 0) return Subspace::empty(a.ambient());
  return Subspace::span(a.ambient(), RealMatrix((a.coords().transpose() * sel).transpose()), tol);
}

/// Orthogonal complement of `sub` inside `parent` (sub need not lie in parent).
inline Subspace complement_within(const Subspace& sub, const Subspace& parent,
                                  const Tolerance& tol = {}) {
  detail::require_same_ambient(sub, parent);
  if (parent.is_empty()) return Subspace::empty(parent.ambient());
  if (sub.is_empty()) return parent.canonical();
  const RealMatrix sel = null_space(RealMatrix(sub.coords() * parent.coords().transpose()), tol);
  if (sel.cols() == 0) return Subspace::empty(parent.ambient());
  return Subspace::span(parent.ambient(), RealMatrix((parent.coords().transpose() * sel).transpose()),
                        tol);
}

/// m = k^⊥ inside g, via the kernel of k's coordinate matrix.
inline Subspace horizontal_complement(const Subspace& k, const Tolerance& tol = {}) {
  if (k.is_empty()) return Subspace::full(k.ambient()).canonical();
  const RealMatrix kernel = null_space(k.coords(), tol);
  if (kernel.cols() == 0) return Subspace::empty(k.ambient());
  return Subspace::span(k.ambient(), RealMatrix(kernel.transpose()), tol);
}

namespace detail {

// Columns: g-coordinates of [y, c_j] over the rows c_j of `domain`.
inline RealMatrix ad_matrix(const ComplexMatrix& y, const Subspace& domain) {
  const AlgebraBasis& g = *domain.ambient();
  RealMatrix out(static_cast<Eigen::Index>(g.dim()), static_cast<Eigen::Index>(domain.dim()));
  for (std::size_t j = 0; j < domain.dim(); ++j) {
    out.col(static_cast<Eigen::Index>(j)) = g.coords(commutator(y, domain.element(j)));
  }
  return out;
}

// Elements of `domain` commuting with every matrix in `with`.
inline Subspace joint_kernel(const std::vector<ComplexMatrix>& with, const Subspace& domain,
                             const Tolerance& tol) {
  if (domain.is_empty()) return domain;
  if (with.empty()) return domain.canonical();
  const auto n = static_cast<Eigen::Index>(domain.ambient()->dim());
  const auto d = static_cast<Eigen::Index>(domain.dim());
  RealMatrix stacked(n * static_cast<Eigen::Index>(with.size()), d);
  for (std::size_t i = 0; i < with.size(); ++i) {
    stacked.middleRows(static_cast<Eigen::Index>(i) * n, n) = ad_matrix(with[i], domain);
  }
  const RealMatrix sel = null_space(stacked, tol);
  if (sel.cols() == 0) return Subspace::empty(domain.ambient());
  return Subspace::span(domain.ambient(), RealMatrix((domain.coords().transpose() * sel).transpose()),
                        tol);
}

}  // namespace detail

/// g^k: joint kernel of ad_Y over the basis of k, restricted to g.
inline Subspace commutant(const Subspace& k, const Tolerance& tol = {}) {
  return detail::joint_kernel(k.elements(), Subspace::full(k.ambient()), tol);
}

/// Worst residual of [k_i, k_j] outside k.
inline double closure_residual(const Subspace& k) {
  double worst = 0.0;
  const auto elems = k.elements();
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = i + 1; j < elems.size(); ++j) {
      worst = std::max(worst, k.residual(commutator(elems[i], elems[j])));
    }
  }
  return worst;
}

/// Worst residual of [a_i, b_j] outside `target`.
inline double bracket_residual(const Subspace& a, const Subspace& b, const Subspace& target) {
  double worst = 0.0;
  const auto ea = a.elements();
  const auto eb = b.elements();
  for (const auto& x : ea) {
    for (const auto& y : eb) worst = std::max(worst, target.residual(commutator(x, y)));
  }
  return worst;
}

inline void require_subalgebra(const Subspace& k, const Tolerance& tol) {
  const double res = closure_residual(k);
  if (res > tol.eq_tol) {
    throw Error(ErrorKind::NotSubalgebra,
                "commutators leave the subspace (residual " + std::to_string(res) + ")");
  }
}

/// z(k): elements of k commuting with all of k.
inline Subspace center(const Subspace& k, const Tolerance& tol = {}) {
  require_subalgebra(k, tol);
  return detail::joint_kernel(k.elements(), k, tol);
}

/// g = r ⊕ g^k_o ⊕ z(k) ⊕ k_o, with m = r ⊕ g^k_o and k = z(k) ⊕ k_o.
struct Decomposition {
  Subspace r;
  Subspace gk_o;
  Subspace z_k;
  Subspace k_o;
  Subspace m;   // r ⊕ gk_o
  Subspace k;   // z_k ⊕ k_o
  Subspace gk;  // gk_o ⊕ z_k
  double kk_residual = 0.0;
  double km_residual = 0.0;
  double orthogonality = 0.0;  // worst overlap between distinct parts

  std::array<std::size_t, 4> dims() const { return {r.dim(), gk_o.dim(), z_k.dim(), k_o.dim()}; }
};

inline Decomposition full_decomposition(const Subspace& k, const Tolerance& tol = {}) {
  require_subalgebra(k, tol);
  Decomposition d;
  d.k = k.canonical();
  d.m = horizontal_complement(k, tol);
  d.gk = commutant(k, tol);
  d.gk_o = intersection(d.gk, d.m, tol);
  d.z_k = intersection(d.gk, d.k, tol);
  d.r = complement_within(d.gk_o, d.m, tol);
  d.k_o = complement_within(d.z_k, d.k, tol);
  d.kk_residual = closure_residual(d.k);
  d.km_residual = bracket_residual(d.k, d.m, d.m);
  const Subspace* parts[] = {&d.r, &d.gk_o, &d.z_k, &d.k_o};
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) d.orthogonality = std::max(d.orthogonality, overlap(*parts[i], *parts[j]));
  }
  return d;
}

/// Overload taking g explicitly; k must live in g's coordinates.
inline Decomposition full_decomposition(const AlgebraPtr& g, const Subspace& k, const Tolerance& tol = {}) {
  if (k.ambient()->dim() != g->dim()) {
    throw Error(ErrorKind::DimensionMismatch, "k is not expressed in the coordinates of g");
  }
  return full_decomposition(k, tol);
}

/// Maximal abelian subspace of m built by the iterative kernel-intersection
/// procedure. `seed_order` lists preferred elements, tried in order at each
/// step; when none fits, the first canonical kernel vector outside the current
/// span is used.
inline Subspace cartan_subalgebra(const Subspace& m, const std::vector<ComplexMatrix>& seed_order = {},
                                  const Tolerance& tol = {}) {
  if (m.is_empty()) throw Error(ErrorKind::EmptySubspace, "cannot pick a Cartan subalgebra of {0}");
  const AlgebraBasis& g = *m.ambient();
  std::vector<RealVector> h;
  std::vector<ComplexMatrix> h_mats;
  Subspace current = m.canonical();
  auto outside_h = [&](RealVector v) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : h) v -= b.dot(v) * b;
    }
    return v;
  };
  while (!current.is_empty()) {
    std::optional<RealVector> pick;
    for (const auto& seed : seed_order) {
      const Expansion e = expand_in_basis(seed, g);
      const double scale = std::max(1.0, e.coords.norm());
      if (e.residual > tol.eq_tol * scale || current.residual(e.coords) > 1e3 * tol.eq_tol * scale) continue;
      RealVector v = outside_h(e.coords);
      if (v.norm() > 1e-6 * scale) {
        pick = v / v.norm();
        break;
      }
    }
    if (!pick) {
      for (Eigen::Index i = 0; i < current.coords().rows(); ++i) {
        RealVector v = outside_h(current.coords().row(i).transpose());
        if (v.norm() > 1e-6) {
          pick = v / v.norm();
          break;
        }
      }
    }
    if (!pick) break;
    h.push_back(*pick);
    h_mats.push_back(g.element(*pick));
    current = detail::joint_kernel({h_mats.back()}, current, tol);
  }
  RealMatrix rows(static_cast<Eigen::Index>(h.size()), static_cast<Eigen::Index>(g.dim()));
  for (std::size_t i = 0; i < h.size(); ++i) rows.row(static_cast<Eigen::Index>(i)) = h[i].transpose();
  return Subspace(m.ambient(), rows);
}

/// Elements of m outside span(h) that commute with all of h; empty iff h is maximal abelian in m.
inline Subspace cartan_defect(const Subspace& h, const Subspace& m, const Tolerance& tol = {}) {
  const Subspace ker = detail::joint_kernel(h.elements(), m, tol);
  return complement_within(h, ker, tol);
}

struct AdInvariance {
  bool invariant = false;
  double residual = 0.0;
};

/// Checks Ad(k) m ⊆ m for one group element k.
inline AdInvariance is_ad_invariant(const ComplexMatrix& k_sample, const Subspace& m,
                                    const Tolerance& tol = {}) {
  if (!is_unitary(k_sample, tol.eq_tol * 10.0)) {
    throw Error(ErrorKind::NonUnitary, "symmetry sample is not unitary");
  }
  AdInvariance out;
  for (std::size_t j = 0; j < m.dim(); ++j) {
    const ComplexMatrix conj = k_sample * m.element(j) * k_sample.adjoint();
    out.residual = std::max(out.residual, m.residual(conj));
  }
  out.invariant = out.residual < tol.eq_tol;
  return out;
}

/// Smallest Lie algebra containing the generators, by breadth-first nested
/// commutators with orthonormalization; stops when no bracket adds a direction.
inline AlgebraBasis generate_dla(const std::vector<ComplexMatrix>& generators, const Tolerance& tol = {}) {
  std::vector<ComplexMatrix> basis;
  std::deque<std::size_t> frontier;
  auto try_add = [&](ComplexMatrix v) {
    v = 0.5 * (v - v.adjoint());
    const double scale = std::max(1.0, v.norm());
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) v -= trace_inner(b, v) * b;
    }
    const double nrm = v.norm();
    if (nrm <= 1e-8 * scale) return;
    basis.push_back(v / nrm);
    frontier.push_back(basis.size() - 1);
  };
  for (const auto& g : generators) {
    if (!is_skew_hermitian(g, tol.eq_tol * std::max(1.0, g.norm()))) {
      throw Error(ErrorKind::NotSkewHermitian, "DLA generator is not skew-Hermitian");
    }
    try_add(g);
  }
  while (!frontier.empty()) {
    const std::size_t i = frontier.front();
    frontier.pop_front();
    for (std::size_t j = 0; j < i; ++j) {
      try_add(commutator(basis[j], basis[i]));
    }
  }
  if (basis.empty()) throw Error(ErrorKind::EmptySubspace, "generators span the zero algebra");
  std::vector<std::string> labels;
  for (const auto& b : basis) labels.push_back(pauli_label(b));
  return AlgebraBasis(std::move(basis), std::move(labels), tol);
}

}  // namespace horizon
