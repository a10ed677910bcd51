#pragma once

// Named homogeneous spaces G/K used throughout: each entry carries g, k and,
// for symmetric spaces, the involution and preferred Cartan seeds.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "horizon/symmetric_space.hpp"

namespace horizon {

struct HomogeneousSpace {
  std::string id;
  std::string title;  // e.g. "SU(4)/SU(2) spin-1/2"
  AlgebraPtr g;
  Subspace k;
  bool symmetric = false;
  std::optional<Involution> involution;
  std::vector<ComplexMatrix> h_seeds;  // preferred Cartan picks, tried in order

  Decomposition decompose(const Tolerance& tol = {}) const { return full_decomposition(k, tol); }

  /// Cartan split; for spaces without an involution, m = k^perp and h is
  /// only filled when [m, m] ⊆ k holds.
  CartanDecomposition cartan(const Tolerance& tol = {}) const {
    if (involution) return split_by_involution(g, *involution, h_seeds, tol);
    CartanDecomposition out;
    out.k = k.canonical();
    out.m = horizontal_complement(k, tol);
    out.report = verify_symmetric(out.k, out.m);
    out.h = (out.report.symmetric() && !out.m.is_empty()) ? cartan_subalgebra(out.m, h_seeds, tol)
                                                          : Subspace::empty(g);
    return out;
  }
};

namespace detail {

inline ComplexMatrix ipauli(const std::string& w) { return kI * PauliString(w).matrix(); }

/// i * (sum of signed Pauli words), e.g. "-IXX + ZXX".
inline ComplexMatrix ipauli_sum(const std::string& expr) {
  ComplexMatrix out;
  double sign = 1.0;
  std::string word;
  auto flush = [&] {
    if (word.empty()) return;
    const ComplexMatrix p = PauliString(word).matrix();
    if (out.size() == 0) out = ComplexMatrix::Zero(p.rows(), p.cols());
    out += sign * kI * p;
    word.clear();
    sign = 1.0;
  };
  for (char c : expr) {
    if (c == '+' || c == '-') {
      flush();
      sign = c == '-' ? -1.0 : 1.0;
    } else if (c == 'I' || c == 'X' || c == 'Y' || c == 'Z') {
      word.push_back(c);
    } else if (c != ' ') {
      throw Error(ErrorKind::ParseError, "bad character in Pauli sum '" + expr + "'");
    }
  }
  flush();
  if (out.size() == 0) throw Error(ErrorKind::ParseError, "empty Pauli sum");
  return out;
}

inline HomogeneousSpace from_involution(std::string id, std::string title, AlgebraPtr g, Involution inv,
                                        std::vector<ComplexMatrix> seeds = {}) {
  HomogeneousSpace s;
  s.id = std::move(id);
  s.title = std::move(title);
  s.g = g;
  s.involution = inv;
  s.symmetric = true;
  s.h_seeds = std::move(seeds);
  s.k = split_by_involution(g, inv, {}).k;
  return s;
}

inline HomogeneousSpace from_k(std::string id, std::string title, AlgebraPtr g,
                               const std::vector<ComplexMatrix>& k, bool symmetric = false,
                               std::vector<ComplexMatrix> seeds = {}) {
  HomogeneousSpace s;
  s.id = std::move(id);
  s.title = std::move(title);
  s.g = g;
  s.k = Subspace::from_elements(g, k);
  s.symmetric = symmetric;
  s.h_seeds = std::move(seeds);
  return s;
}

inline ComplexMatrix unit(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

inline AlgebraPtr shared(AlgebraBasis b) { return std::make_shared<const AlgebraBasis>(std::move(b)); }

/// so(4) in the Pauli basis i{IY, YI, XY, YX, YZ, ZY}/2.
inline AlgebraPtr so4_pauli() { return shared(pauli_subset_basis({"IY", "YI", "XY", "YX", "YZ", "ZY"})); }

inline std::vector<ComplexMatrix> spin_three_halves() {
  const double s3 = std::sqrt(3.0);
  ComplexMatrix sx = ComplexMatrix::Zero(4, 4), sy = ComplexMatrix::Zero(4, 4), sz = ComplexMatrix::Zero(4, 4);
  sx(0, 1) = sx(1, 0) = s3;
  sx(1, 2) = sx(2, 1) = 2.0;
  sx(2, 3) = sx(3, 2) = s3;
  sy(0, 1) = -kI * s3;
  sy(1, 0) = kI * s3;
  sy(1, 2) = -2.0 * kI;
  sy(2, 1) = 2.0 * kI;
  sy(2, 3) = -kI * s3;
  sy(3, 2) = kI * s3;
  sz.diagonal() << 3.0, 1.0, -1.0, -3.0;
  return {kI * sx, kI * sy, kI * sz};
}

}  // namespace detail

/// Spin-3/2 generators i{S_x, S_y, S_z} (unnormalized, integer-spaced S_z).
inline std::vector<ComplexMatrix> spin_three_halves_generators() { return detail::spin_three_halves(); }

inline const std::map<std::string, std::string>& space_aliases() {
  static const std::map<std::string, std::string> aliases{
      {"bloch", "su2/u1"}, {"so4/o3", "so4/so3"}, {"su4/spin-half", "su4/su2-spin-half"}};
  return aliases;
}

inline std::vector<std::string> space_ids() {
  return {"su2/u1",          "su4/su2-spin-half", "su4/su2xsu2",   "su4/u3",
          "so4/so3",         "su4/su2-spin-three-halves", "su4/sp2", "so4/su2",
          "so4/1xso2x1",     "su8/s(u2xu6)",      "so4/u2"};
}

inline std::string canonical_space_id(const std::string& id) {
  const auto it = space_aliases().find(id);
  return it == space_aliases().end() ? id : it->second;
}

inline HomogeneousSpace make_space(const std::string& raw_id) {
  using namespace detail;
  const std::string id = canonical_space_id(raw_id);
  if (id == "su2/u1") {
    return from_involution(id, "SU(2)/U(1)", shared(su_basis(2)), bloch_involution(), {ipauli("Y")});
  }
  if (id == "su4/su2-spin-half") {
    return from_k(id, "SU(4)/SU(2) spin-1/2", shared(su_basis(4)),
                  {ipauli_sum("XI + IX"), ipauli_sum("YI + IY"), ipauli_sum("ZI + IZ")});
  }
  if (id == "su4/su2xsu2") {
    return from_involution(id, "SU(4)/(SU(2)xSU(2))", shared(su_basis(4)), su2xsu2_involution(),
                           {ipauli("XX"), ipauli("YY"), ipauli("ZZ")});
  }
  if (id == "su4/u3") {
    return from_involution(id, "SU(4)/U(3)", shared(su_basis(4)), parse_involution("AIII:p=1,q=3"));
  }
  if (id == "so4/so3") {
    return from_involution(id, "SO(4)/SO(3)", so4_pauli(), parse_involution("BDI:p=1,q=3"));
  }
  if (id == "su4/su2-spin-three-halves") {
    return from_k(id, "SU(4)/SU(2) spin-3/2", shared(su_basis(4)), spin_three_halves());
  }
  if (id == "su4/sp2") {
    return from_involution(id, "SU(4)/Sp(2)", shared(su_basis(4)), parse_involution("AII:n=2"), {ipauli("IX")});
  }
  if (id == "so4/su2") {
    return from_k(id, "SO(4)/SU(2)", so4_pauli(),
                  {ipauli_sum("YI + IY"), ipauli_sum("XY + YX"), ipauli_sum("ZY + YZ")}, true);
  }
  if (id == "so4/1xso2x1") {
    const ComplexMatrix givens = unit(4, 1, 2) - unit(4, 2, 1);  // = i(0 + Y + 0)
    return from_k(id, "SO(4)/(1xSO(2)x1)", so4_pauli(), {givens}, false,
                  {ipauli("XY"), ipauli("YX")});
  }
  if (id == "su8/s(u2xu6)") {
    return from_involution(id, "SU(8)/S(U(2)xU(6))", shared(su_basis(8)), parse_involution("AIII:p=2,q=6"));
  }
  if (id == "so4/u2") {
    return from_involution(id, "SO(4)/U(2)", so4_pauli(), parse_involution("DIII:n=2"));
  }
  throw Error(ErrorKind::UnknownSpace, "unknown space id '" + raw_id + "'");
}

}  // namespace horizon
