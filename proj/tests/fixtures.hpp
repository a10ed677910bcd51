#pragma once

// Published reference bases, transcribed as Pauli sums.

#include <cmath>
#include <string>
#include <vector>

#include "oracles.hpp"

namespace fixture {

using oracle::CMat;

inline std::vector<CMat> parse_all(const std::vector<std::string>& exprs) {
  std::vector<CMat> out;
  for (const auto& e : exprs) out.push_back(oracle::i_pauli_sum(e));
  return out;
}

// SU(4)/SU(2) spin-3/2: twelve horizontal directions.
inline std::vector<CMat> spin_three_halves_m() {
  const double a = 1.0 / std::sqrt(5.0), b = (5.0 + std::sqrt(15.0)) / 10.0, c = (5.0 - std::sqrt(15.0)) / 10.0,
               d = 2.0 / std::sqrt(5.0);
  const oracle::cplx i(0, 1);
  auto p = [](const char* w) { return oracle::pauli_word(w); };
  std::vector<CMat> m{
      i * (a * p("IX") - b * p("XX") + c * p("YY")),
      i * (a * p("IY") + b * p("XY") + c * p("YX")),
      i * (-a * p("IY") + c * p("XY") + b * p("YX")),
      i * (-a * p("IX") - c * p("XX") + b * p("YY")),
      i * (-d * p("IZ") + a * p("ZI")),
  };
  for (const char* w : {"XI", "XZ", "YI", "YZ", "ZX", "ZY", "ZZ"}) m.push_back(i * p(w));
  return m;
}

inline std::vector<CMat> sp2_k() { return parse_all({"IY", "XI", "XX", "XZ", "YI", "YX", "YZ", "ZI", "ZX", "ZZ"}); }
inline std::vector<CMat> sp2_m() { return parse_all({"IX", "IZ", "XY", "YY", "ZY"}); }
inline std::vector<CMat> sp2_h() { return parse_all({"IX"}); }

inline std::vector<CMat> so4_u2_k() { return parse_all({"IY", "YI", "YX", "YZ"}); }
inline std::vector<CMat> so4_u2_m() { return parse_all({"XY", "ZY"}); }
inline std::vector<CMat> so4_u2_center() { return parse_all({"YI"}); }

inline std::vector<CMat> charge_k() { return parse_all({"XY - YX"}); }
inline std::vector<CMat> charge_m() {
  const double r2 = std::sqrt(2.0);
  const oracle::cplx i(0, 1);
  auto p = [](const char* w) { return oracle::pauli_word(w); };
  return {i * p("YI"), i * p("YZ"), i * p("ZY"), i * (r2 * p("IY") + p("XY") + p("YX")),
          i * (-r2 * p("IY") + p("XY") + p("YX"))};
}
inline std::vector<CMat> charge_h() { return parse_all({"XY", "YX"}); }
inline std::vector<CMat> charge_commutant() { return parse_all({"XY - YX", "XY + YX"}); }

inline std::vector<CMat> grassmannian_k() {
  return parse_all({"IIX",        "ZIX",        "IIZ",        "ZIZ",        "-IXX + ZXX", "-IXZ + ZXZ", "-IYX + ZYX",
                    "-IYZ + ZYZ", "IZX",        "ZZX",        "IZZ",        "ZZZ",        "-XIX + XZX", "-XIZ + XZZ",
                    "-XXX - YYX", "-XXZ - YYZ", "-XYX + YXX", "-XYZ + YXZ", "-XIY + XZY", "-XXI - YYI", "-YIX + YZX",
                    "-YIZ + YZZ", "-XYY + YXY", "XII - XZI",  "XXY + YYY",  "XYI - YXI",  "-YIY + YZY", "-YII + YZI",
                    "IIY",        "ZIY",        "-IXI + ZXI", "-IXY + ZXY", "-IYI + ZYI", "-IYY + ZYY", "IZI",
                    "ZZI",        "IZY",        "ZZY",        "ZII"});
}

inline std::vector<CMat> grassmannian_m() {
  return parse_all({"-IXI - ZXI", "-IXY - ZXY", "-IYI - ZYI", "-IYY - ZYY", "-XII - XZI", "-XIY - XZY",
                    "-XXI + YYI", "-XXY + YYY", "-XYI - YXI", "-XYY - YXY", "XIX + XZX",  "XIZ + XZZ",
                    "-YII - YZI", "-YIY - YZY", "XYX + YXX",  "XYZ + YXZ",  "-XXX + YYX", "-XXZ + YYZ",
                    "YIX + YZX",  "YIZ + YZZ",  "IXX + ZXX",  "IXZ + ZXZ",  "IYX + ZYX",  "IYZ + ZYZ"});
}

}  // namespace fixture
