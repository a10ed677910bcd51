#pragma once

// JSON / CSV / SVG output and generator-file parsing.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "horizon/vqe.hpp"

namespace horizon {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Round-trippable text for doubles; non-finite values become "nan"/"inf".
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

inline ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw Error(ErrorKind::ParseError, "dense matrix must be a nested array");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw Error(ErrorKind::ParseError, "ragged dense matrix");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& e = row[static_cast<std::size_t>(c)];
      if (e.is_number()) {
        m(r, c) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        m(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
      } else {
        throw Error(ErrorKind::ParseError, "matrix entries must be numbers or [re, im] pairs");
      }
    }
  }
  return m;
}

inline json basis_to_json(const std::vector<ComplexMatrix>& elems, const std::vector<std::string>& labels) {
  json out;
  out["ambient_dim"] = elems.empty() ? 0 : elems.front().rows();
  out["basis"] = json::array();
  for (const auto& e : elems) out["basis"].push_back(matrix_to_json(e));
  out["labels"] = labels;
  return out;
}

inline json to_json(const AlgebraBasis& b) { return basis_to_json(b.elements(), b.labels()); }

inline json to_json(const Subspace& s) {
  json out = basis_to_json(s.elements(), s.labels());
  out["ambient_dim"] = s.ambient()->ambient_dim();
  out["dim"] = s.dim();
  return out;
}

inline json to_json(const Decomposition& d) {
  json out;
  const auto dims = d.dims();
  out["dims"] = {{"r", dims[0]}, {"gk_o", dims[1]}, {"z_k", dims[2]}, {"k_o", dims[3]}};
  out["r"] = to_json(d.r);
  out["gk_o"] = to_json(d.gk_o);
  out["z_k"] = to_json(d.z_k);
  out["k_o"] = to_json(d.k_o);
  out["residuals"] = {{"kk", d.kk_residual}, {"km", d.km_residual}, {"orthogonality", d.orthogonality}};
  return out;
}

inline json to_json(const GateSpec& g) {
  json out;
  out["kind"] = to_string(g.kind);
  out["space_id"] = g.space_id;
  out["qubit_span"] = g.qubit_span;
  out["param_count"] = g.param_count();
  out["labels"] = g.labels;
  return out;
}

/// One generator: a Pauli-term list [{"coeff_re", "coeff_im", "pauli"}], or
/// {"terms": [...]}, or {"dense": [[[re, im], ...], ...]}.
inline ComplexMatrix generator_from_json(const json& j) {
  if (j.is_object() && j.contains("dense")) return matrix_from_json(j.at("dense"));
  const json& terms = j.is_object() ? j.at("terms") : j;
  if (!terms.is_array() || terms.empty()) throw Error(ErrorKind::ParseError, "generator needs a non-empty term list");
  ComplexMatrix out;
  for (const auto& t : terms) {
    if (!t.is_object() || !t.contains("pauli")) throw Error(ErrorKind::ParseError, "term needs a \"pauli\" string");
    const cplx coeff(t.value("coeff_re", 0.0), t.value("coeff_im", 0.0));
    const ComplexMatrix p = PauliString(t.at("pauli").get<std::string>()).matrix();
    if (out.size() == 0) out = ComplexMatrix::Zero(p.rows(), p.cols());
    if (p.rows() != out.rows()) throw Error(ErrorKind::ParseError, "terms act on different qubit counts");
    out += coeff * p;
  }
  return out;
}

/// A generator file: a JSON array of generators or {"generators": [...]}.
inline std::vector<ComplexMatrix> generators_from_json(const json& j, const Tolerance& tol = {}) {
  const json& list = j.is_object() ? j.at("generators") : j;
  if (!list.is_array() || list.empty()) throw Error(ErrorKind::ParseError, "generator file must list at least one generator");
  std::vector<ComplexMatrix> out;
  for (const auto& g : list) {
    out.push_back(generator_from_json(g));
    if (out.back().rows() != out.front().rows()) throw Error(ErrorKind::ParseError, "generators differ in size");
    if (!is_skew_hermitian(out.back(), tol.eq_tol * std::max(1.0, out.back().norm()))) {
      throw Error(ErrorKind::ParseError, "generator " + std::to_string(out.size() - 1) + " is not skew-Hermitian");
    }
  }
  return out;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  out << text;
}

inline std::string trajectory_csv(const RunRecord& r) {
  std::ostringstream os;
  os << "iter,energy,delta_e,s2,grad_norm\n";
  for (const auto& p : r.trajectory) {
    os << p.iter << ',' << format_double(p.energy) << ',' << format_double(p.delta_e) << ',' << format_double(p.s2)
       << ',' << format_double(p.grad_norm) << '\n';
  }
  return os.str();
}

inline json to_json(const OptimizerConfig& o) {
  return {{"algorithm", to_string(o.algorithm)}, {"learning_rate", o.learning_rate}, {"max_iters", o.max_iters},
          {"beta1", o.beta1},  {"beta2", o.beta2}, {"epsilon", o.epsilon}, {"init_scale", o.init_scale},
          {"seed", o.seed}, {"grad_tol", o.grad_tol}, {"schedule", to_string(o.schedule)}};
}

inline json to_json(const RunRecord& r) {
  json out;
  out["gate"] = {{"space_id", r.gate_space}, {"kind", to_string(r.gate_kind)}, {"param_count_per_block", r.param_count}};
  out["optimizer"] = to_json(r.config);
  out["iterations"] = r.trajectory.size();
  out["converged"] = r.converged;
  out["e_min"] = r.e_min;
  out["e_max"] = r.e_max;
  out["final_energy"] = r.final_energy;
  out["final_delta_e"] = r.final_delta_e;
  out["final_relative_error"] = r.e_max > r.e_min ? json(r.final_relative()) : json(nullptr);
  out["final_s2"] = number_or_null(r.final_s2);
  out["wall_seconds"] = r.wall_seconds;
  out["final_theta"] = std::vector<double>(r.final_theta.data(), r.final_theta.data() + r.final_theta.size());
  return out;
}

/// Self-contained SVG: log10(delta E) against iteration, with <S^2> in a
/// second panel when tracked. Several runs may share one plot.
inline std::string trajectory_svg(const std::vector<std::pair<std::string, const RunRecord*>>& runs) {
  const double w = 640, ph = 220, pad = 50;
  bool spin = false;
  std::size_t iters = 1;
  double lo = 1e300, hi = -1e300, smin = 1e300, smax = -1e300;
  for (const auto& [name, r] : runs) {
    iters = std::max(iters, r->trajectory.size());
    for (const auto& p : r->trajectory) {
      const double v = std::log10(std::max(p.delta_e, 1e-16));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      if (std::isfinite(p.s2)) {
        spin = true;
        smin = std::min(smin, p.s2);
        smax = std::max(smax, p.s2);
      }
    }
  }
  if (!(hi > lo)) hi = lo + 1;
  if (!(smax > smin)) smax = smin + 1;
  const double height = spin ? 2 * ph + 3 * pad : ph + 2 * pad;
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  std::ostringstream os;
  os << std::setprecision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  auto panel = [&](double top, const std::string& title, double vmin, double vmax, auto value) {
    os << "<rect x=\"" << pad << "\" y=\"" << top << "\" width=\"" << w - 2 * pad << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    os << "<text x=\"" << pad << "\" y=\"" << top - 8 << "\" font-size=\"12\">" << title << "</text>\n";
    os << "<text x=\"4\" y=\"" << top + 10 << "\" font-size=\"10\">" << vmax << "</text>\n";
    os << "<text x=\"4\" y=\"" << top + ph << "\" font-size=\"10\">" << vmin << "</text>\n";
    std::size_t idx = 0;
    for (const auto& [name, r] : runs) {
      os << "<polyline fill=\"none\" stroke=\"" << colors[idx % 4] << "\" points=\"";
      for (const auto& p : r->trajectory) {
        const double v = value(p);
        if (!std::isfinite(v)) continue;
        const double x = pad + (w - 2 * pad) * static_cast<double>(p.iter) / static_cast<double>(std::max<std::size_t>(iters - 1, 1));
        const double y = top + ph * (1.0 - (v - vmin) / (vmax - vmin));
        os << x << ',' << y << ' ';
      }
      os << "\"/>\n";
      os << "<text x=\"" << w - pad - 150 << "\" y=\"" << top + 14 + 14 * static_cast<double>(idx) << "\" font-size=\"11\" fill=\""
         << colors[idx % 4] << "\">" << name << "</text>\n";
      ++idx;
    }
  };
  panel(pad, "log10(E - E0) vs iteration", lo, hi,
        [](const TrajectoryPoint& p) { return std::log10(std::max(p.delta_e, 1e-16)); });
  if (spin) panel(2 * pad + ph, "&lt;S^2&gt; vs iteration", smin, smax, [](const TrajectoryPoint& p) { return p.s2; });
  os << "</svg>\n";
  return os.str();
}

}  // namespace horizon
