#pragma once

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "horizon/numeric.hpp"

namespace horizon {

/// Tensor product of single-qubit Paulis times a phase in {+1, -1, +i, -i}.
/// Qubit 0 is the leftmost letter and the leftmost Kronecker factor.
class PauliString {
 public:
  PauliString() = default;

  PauliString(std::string letters, cplx phase = 1.0) : letters_(std::move(letters)), phase_(phase) {
    for (char c : letters_) {
      if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
        throw Error(ErrorKind::ParseError, "bad Pauli letter '" + std::string(1, c) + "'");
      }
    }
    const bool unit = std::abs(std::abs(phase_.real()) + std::abs(phase_.imag()) - 1.0) < 1e-12 &&
                      (phase_.real() == 0.0 || phase_.imag() == 0.0);
    if (!unit) throw Error(ErrorKind::InvalidArgument, "Pauli phase must be one of +-1, +-i");
  }

  /// Accepts an optional sign prefix: "XZ", "+XZ", "-XZ", "iXZ", "-iXZ".
  static PauliString parse(std::string_view text) {
    cplx phase = 1.0;
    std::size_t pos = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      if (text[pos] == '-') phase = -1.0;
      ++pos;
    }
    if (pos < text.size() && text[pos] == 'i') {
      phase *= kI;
      ++pos;
    }
    if (pos == text.size()) throw Error(ErrorKind::ParseError, "empty Pauli string");
    return PauliString(std::string(text.substr(pos)), phase);
  }

  std::size_t qubit_count() const { return letters_.size(); }
  const std::string& letters() const { return letters_; }
  cplx phase() const { return phase_; }
  bool is_identity() const { return letters_.find_first_not_of('I') == std::string::npos; }

  static ComplexMatrix letter_matrix(char c) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    switch (c) {
      case 'I': m(0, 0) = 1.0; m(1, 1) = 1.0; break;
      case 'X': m(0, 1) = 1.0; m(1, 0) = 1.0; break;
      case 'Y': m(0, 1) = -kI; m(1, 0) = kI; break;
      case 'Z': m(0, 0) = 1.0; m(1, 1) = -1.0; break;
      default: throw Error(ErrorKind::ParseError, "bad Pauli letter");
    }
    return m;
  }

  ComplexMatrix matrix() const {
    ComplexMatrix m = ComplexMatrix::Identity(1, 1);
    for (char c : letters_) m = kron(m, letter_matrix(c));
    return phase_ * m;
  }

  /// out = coeff * P * in, accumulated into out. Amplitude index is big-endian.
  void apply_add(const ComplexVector& in, ComplexVector& out, cplx coeff = 1.0) const {
    const std::size_t n = letters_.size();
    std::uint64_t flip = 0, zmask = 0;
    int ycount = 0;
    for (std::size_t q = 0; q < n; ++q) {
      const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
      switch (letters_[q]) {
        case 'X': flip |= bit; break;
        case 'Y': flip |= bit; zmask |= bit; ++ycount; break;
        case 'Z': zmask |= bit; break;
        default: break;
      }
    }
    // Y = i X Z, so P|b> = phase * i^{#Y} (-1)^{popcount(b & zmask)} |b ^ flip>.
    static constexpr cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const cplx base = coeff * phase_ * ipow[ycount % 4];
    const auto dim = static_cast<std::uint64_t>(in.size());
    for (std::uint64_t b = 0; b < dim; ++b) {
      const bool odd = (__builtin_popcountll(b & zmask) & 1) != 0;
      out(static_cast<Eigen::Index>(b ^ flip)) += (odd ? -base : base) * in(static_cast<Eigen::Index>(b));
    }
  }

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.letters_ == b.letters_ && a.phase_ == b.phase_;
  }

  std::string str() const {
    std::string prefix;
    if (phase_ == cplx{-1, 0}) prefix = "-";
    else if (phase_ == cplx{0, 1}) prefix = "i";
    else if (phase_ == cplx{0, -1}) prefix = "-i";
    return prefix + letters_;
  }

 private:
  std::string letters_;
  cplx phase_{1.0, 0.0};
};

/// All 4^n letter strings in lexicographic IXYZ order, identity first.
inline std::vector<std::string> pauli_words(std::size_t n) {
  std::vector<std::string> words{""};
  for (std::size_t q = 0; q < n; ++q) {
    std::vector<std::string> next;
    next.reserve(words.size() * 4);
    for (const auto& w : words) {
      for (char c : {'I', 'X', 'Y', 'Z'}) next.push_back(w + c);
    }
    words = std::move(next);
  }
  return words;
}

inline std::size_t qubits_for_dim(Eigen::Index dim) {
  std::size_t n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  return (Eigen::Index{1} << n) == dim ? n : std::size_t(-1);
}

/// Coefficients c_P with M = sum_P c_P P, skipping |c_P| <= cutoff.
inline std::vector<std::pair<std::string, cplx>> pauli_expand(const ComplexMatrix& m,
                                                             double cutoff = 1e-9) {
  const std::size_t n = qubits_for_dim(m.rows());
  if (n == std::size_t(-1) || m.rows() != m.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "Pauli expansion needs a 2^n square matrix");
  }
  std::vector<std::pair<std::string, cplx>> out;
  const double dim = static_cast<double>(m.rows());
  for (const auto& w : pauli_words(n)) {
    const cplx c = (PauliString(w).matrix().adjoint() * m).trace() / dim;
    if (std::abs(c) > cutoff) out.emplace_back(w, c);
  }
  return out;
}

namespace detail {

inline std::string format_coeff(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

}  // namespace detail

/// Pretty label for a skew-Hermitian matrix A = i * sum_P c_P P with real c_P,
/// e.g. "i(0.5 XI - 0.5 IX)". Coefficients are rounded at 1e-9.
inline std::string pauli_label(const ComplexMatrix& a) {
  if (qubits_for_dim(a.rows()) == std::size_t(-1)) return "<dense>";
  const auto terms = pauli_expand(-kI * a, 1e-9);
  if (terms.empty()) return "0";
  std::ostringstream os;
  os << "i(";
  bool first = true;
  for (const auto& [word, c] : terms) {
    const double v = std::abs(c.real()) > 1e-9 ? c.real() : 0.0;
    if (!first) os << (v < 0 ? " - " : " + ");
    else if (v < 0) os << "-";
    first = false;
    const double mag = std::abs(v);
    if (std::abs(mag - 1.0) > 1e-9) os << detail::format_coeff(mag) << ' ';
    os << word;
  }
  os << ')';
  return os.str();
}

}  // namespace horizon
