#pragma once

// Command-line front end: decompose | verify | gate | vqe | catalog.
// Exit codes: 0 ok, 2 verification failure, 3 input error, 4 runtime error.

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "horizon/io.hpp"

namespace horizon::cli {

inline constexpr int kOk = 0;
inline constexpr int kVerifyFailed = 2;
inline constexpr int kInputError = 3;
inline constexpr int kRuntimeError = 4;

inline int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotSubalgebra:
    case ErrorKind::NotInvolutive:
    case ErrorKind::NotAutomorphism:
    case ErrorKind::SymmetryLeakage:
      return kVerifyFailed;
    case ErrorKind::BranchAmbiguity:
    case ErrorKind::NonUnitary:
    case ErrorKind::DegenerateSpectrum:
      return kRuntimeError;
    default:
      return kInputError;
  }
}

inline std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "not a number: '" + item + "'");
    }
  }
  return out;
}

inline RealVector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const RealVector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

inline std::string fixed(double v, int prec = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(prec) << v;
  return os.str();
}

inline void print_matrix(std::ostream& out, const ComplexMatrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out << "  ";
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out << std::setw(10) << fixed(m(r, c).real(), 5) << (m(r, c).imag() < 0 ? " - " : " + ") << std::setw(8)
          << fixed(std::abs(m(r, c).imag()), 5) << "i";
    }
    out << '\n';
  }
}

// ---- decompose ----------------------------------------------------------

struct DecomposeArgs {
  std::string space;
  std::string g_file;
  std::string k_file;
  std::string out_path;
  bool json = false;
};

inline int cmd_decompose(const DecomposeArgs& a, const Tolerance& tol, std::ostream& out) {
  json report;
  report["schema_version"] = kSchemaVersion;
  Decomposition d;
  if (!a.g_file.empty() || !a.k_file.empty()) {
    if (a.g_file.empty() || a.k_file.empty()) throw Error(ErrorKind::ParseError, "--g-file and --k-file go together");
    auto g = std::make_shared<const AlgebraBasis>(generate_dla(generators_from_json(read_json_file(a.g_file), tol), tol));
    const Subspace k = Subspace::from_elements(g, generators_from_json(read_json_file(a.k_file), tol), tol);
    d = full_decomposition(k, tol);
    report["config"] = {{"g_file", a.g_file}, {"k_file", a.k_file}};
    report["g_dim"] = g->dim();
  } else {
    if (a.space.empty()) throw Error(ErrorKind::ParseError, "decompose needs a space id or --g-file/--k-file");
    const HomogeneousSpace s = make_space(a.space);
    d = s.decompose(tol);
    report["config"] = {{"space", s.id}};
    report["title"] = s.title;
    report["g_dim"] = s.g->dim();
  }
  report["decomposition"] = to_json(d);
  if (!a.out_path.empty()) write_text_file(a.out_path, report.dump(2) + "\n");
  if (a.json) {
    out << report.dump(2) << '\n';
    return kOk;
  }
  const auto dims = d.dims();
  out << "space: " << (a.space.empty() ? a.k_file : canonical_space_id(a.space)) << '\n';
  out << "dims (r, gk_o, z_k, k_o): " << dims[0] << ' ' << dims[1] << ' ' << dims[2] << ' ' << dims[3] << '\n';
  out << "residuals: [k,k] " << d.kk_residual << "  [k,m] " << d.km_residual << "  overlap " << d.orthogonality << '\n';
  const std::pair<const char*, const Subspace*> parts[] = {{"r", &d.r}, {"gk_o", &d.gk_o}, {"z_k", &d.z_k}, {"k_o", &d.k_o}};
  for (const auto& [name, sub] : parts) {
    out << name << ":";
    if (sub->is_empty()) out << " {}";
    out << '\n';
    for (const auto& l : sub->labels()) out << "  " << l << '\n';
  }
  return kOk;
}

// ---- verify -------------------------------------------------------------

struct Check {
  std::string name;
  std::string status;  // pass | fail | n/a
  double residual = 0.0;
  std::string note;
};

inline std::vector<Check> verify_space(const HomogeneousSpace& s, const Tolerance& tol, std::uint64_t seed = 7) {
  std::vector<Check> checks;
  const double lim = 1e-8;
  auto add = [&](std::string name, double res, bool applicable = true, std::string note = {}) {
    checks.push_back({std::move(name), applicable ? (res < lim ? "pass" : "fail") : "n/a", res, std::move(note)});
  };
  const Decomposition d = s.decompose(tol);
  add("[k,k] in k", d.kk_residual);
  add("[k,m] in m", d.km_residual);
  add("parts orthogonal", d.orthogonality);
  const auto dims = d.dims();
  const double dim_gap = std::abs(static_cast<double>(dims[0] + dims[1] + dims[2] + dims[3]) - static_cast<double>(s.g->dim()));
  add("dims sum to dim(g)", dim_gap);

  const CartanDecomposition cd = s.cartan(tol);
  if (s.symmetric) {
    add("[m,m] in k", cd.report.mm_residual);
  } else {
    checks.push_back({"[m,m] in k", "n/a", cd.report.mm_residual, "homogeneous, not symmetric"});
  }
  if (s.involution) add("phi eigenspaces", cd.eigen_residual);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  double ad_worst = 0.0;
  for (int t = 0; t < 5; ++t) {
    ComplexMatrix x = ComplexMatrix::Zero(s.g->ambient_dim(), s.g->ambient_dim());
    for (std::size_t i = 0; i < s.k.dim(); ++i) x += normal(rng) * s.k.element(i);
    ad_worst = std::max(ad_worst, is_ad_invariant(expm_skew(x, tol), d.m, tol).residual);
  }
  add("Ad(K) m in m", ad_worst);

  if (s.symmetric && !cd.h.is_empty()) {
    add("h abelian", bracket_residual(cd.h, cd.h, Subspace::empty(s.g)));
    const double defect = static_cast<double>(cartan_defect(cd.h, cd.m, tol).dim());
    checks.push_back({"h maximal abelian", defect == 0 ? "pass" : "fail", defect, "dim h = " + std::to_string(cd.h.dim())});
  } else {
    checks.push_back({"h maximal abelian", "n/a", 0.0, "no Cartan decomposition"});
  }
  return checks;
}

inline int cmd_verify(const std::string& space, bool as_json, const Tolerance& tol, std::ostream& out) {
  const HomogeneousSpace s = make_space(space);
  const auto checks = verify_space(s, tol);
  bool ok = true;
  json report;
  report["schema_version"] = kSchemaVersion;
  report["config"] = {{"space", s.id}};
  report["checks"] = json::array();
  for (const auto& c : checks) {
    ok = ok && c.status != "fail";
    report["checks"].push_back({{"name", c.name}, {"status", c.status}, {"residual", c.residual}, {"note", c.note}});
  }
  report["ok"] = ok;
  if (as_json) {
    out << report.dump(2) << '\n';
  } else {
    out << "verify " << s.id << " (" << s.title << ")\n";
    for (const auto& c : checks) {
      out << "  " << std::left << std::setw(20) << c.name << std::setw(6) << c.status << " residual " << c.residual;
      if (!c.note.empty()) out << "  (" << c.note << ")";
      out << '\n';
    }
    out << (ok ? "all checks passed\n" : "verification FAILED\n");
  }
  return ok ? kOk : kVerifyFailed;
}

// ---- gate ---------------------------------------------------------------

struct GateArgs {
  std::string space;
  std::string kind;
  std::string theta;
  std::optional<std::uint64_t> random_seed;
  bool kak = false;
  std::string alpha;
  std::string phi;
  bool json = false;
};

inline int cmd_gate(const GateArgs& a, const Tolerance& tol, std::ostream& out) {
  json report;
  report["schema_version"] = kSchemaVersion;
  std::mt19937_64 rng(a.random_seed.value_or(0));
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  auto params = [&](const std::string& text, std::size_t count, const char* what) {
    std::vector<double> v;
    if (!text.empty()) {
      v = parse_list(text);
    } else if (a.random_seed) {
      for (std::size_t i = 0; i < count; ++i) v.push_back(unif(rng));
    } else {
      v.assign(count, 0.0);
    }
    if (v.size() != count) {
      throw Error(ErrorKind::ParamLengthMismatch, std::string(what) + " needs " + std::to_string(count) + " values, got " +
                                                      std::to_string(v.size()));
    }
    return v;
  };

  if (a.kak) {
    const HomogeneousSpace s = make_space(a.space);
    const CartanDecomposition cd = s.cartan(tol);
    if (cd.h.is_empty()) throw Error(ErrorKind::InvalidArgument, s.id + " has no KAK form");
    bool ok = true;
    ComplexMatrix u;
    report["config"] = {{"space", s.id}, {"mode", "kak"}};
    if (s.id == "su4/su2xsu2") {
      const auto al = params(a.alpha, 6, "--alpha");
      const auto ph = params(a.phi, 3, "--phi");
      const std::array<double, 3> a1{al[0], al[1], al[2]}, a2{al[3], al[4], al[5]}, t{ph[0], ph[1], ph[2]};
      u = kak_circuit(a1, a2, t);
      const auto c = vatan_map(t[0], t[1], t[2]);
      const ComplexMatrix k = kron(r3(a1[0], a1[1], a1[2]), r3(a2[0], a2[1], a2[2]));
      const ComplexMatrix ref = k.adjoint() * canonical_gate(c[0], c[1], c[2]) * k;
      const double err = max_error_up_to_phase(ref, u);
      const Expansion e = expand_in_basis(logm_unitary(u, tol), *s.g);
      const double k_part = (s.k.coords() * e.coords).norm();
      ok = err < 1e-9 && k_part < 1e-8;
      report["alpha"] = al;
      report["phi"] = ph;
      report["canonical_coefficients"] = {c[0], c[1], c[2]};
      report["circuit_vs_kak_max_error"] = err;
      report["logm_k_projection"] = k_part;
      if (!a.json) {
        out << "KAK circuit for " << s.id << " (R3 layers + CNOT block)\n";
        out << "canonical coefficients c = (" << c[0] << ", " << c[1] << ", " << c[2] << ")\n";
        out << "max |circuit - K^dag exp(i(c1 XX + c2 YY + c3 ZZ)) K| (up to phase): " << err << '\n';
        out << "k-projection of logm: " << k_part << '\n';
      }
    } else {
      const auto al = params(a.alpha, cd.k.dim(), "--alpha");
      const auto ph = params(a.phi, cd.h.dim(), "--phi");
      u = kak_gate_unitary(to_vector(al), to_vector(ph), cd);
      const Expansion e = expand_in_basis(logm_unitary(u, tol), *s.g);
      const double k_part = (cd.k.coords() * e.coords).norm();
      ok = k_part < 1e-8;
      report["alpha"] = al;
      report["phi"] = ph;
      report["logm_k_projection"] = k_part;
      if (!a.json) out << "k-projection of logm: " << k_part << '\n';
    }
    report["unitary"] = matrix_to_json(u);
    report["ok"] = ok;
    if (a.json) {
      out << report.dump(2) << '\n';
    } else {
      print_matrix(out, u);
      out << (ok ? "equality check passed\n" : "equality check FAILED\n");
    }
    return ok ? kOk : kVerifyFailed;
  }

  const GateSpec spec = a.kind.empty() ? gate_catalog(a.space) : make_gate(canonical_space_id(a.space), parse_gate_kind(a.kind), tol);
  const auto theta = params(a.theta, spec.param_count(), "--theta");
  const ComplexMatrix u = gate_unitary(spec, to_vector(theta));
  double residual = 0.0;
  if (spec.kind == GateKind::KAK) {
    const CartanDecomposition cd = make_space(spec.space_id).cartan(tol);
    residual = cd.m.residual(logm_unitary(u, tol));
  } else {
    auto g = std::make_shared<const AlgebraBasis>(su_basis(spec.dim()));
    const Subspace span = Subspace::from_elements(g, spec.generators, tol);
    residual = span.residual(logm_unitary(u, tol));
  }
  report["config"] = {{"space", spec.space_id}, {"kind", to_string(spec.kind)}};
  report["gate"] = to_json(spec);
  report["theta"] = theta;
  report["unitary"] = matrix_to_json(u);
  report["logm_residual_outside_generators"] = residual;
  if (a.json) {
    out << report.dump(2) << '\n';
  } else {
    out << "gate " << spec.space_id << " kind " << to_string(spec.kind) << " params " << spec.param_count() << '\n';
    out << "theta:";
    for (double t : theta) out << ' ' << t;
    out << '\n';
    print_matrix(out, u);
    out << "<0|U|0> = " << u(0, 0).real() << (u(0, 0).imag() < 0 ? " - " : " + ") << std::abs(u(0, 0).imag()) << "i\n";
    out << "logm residual outside the generator span: " << residual << '\n';
  }
  return kOk;
}

// ---- vqe ----------------------------------------------------------------

struct VqeConfig {
  HamiltonianSpec hamiltonian;
  std::string gate = "su4/su2-spin-half";
  GateKind kind = GateKind::Horizontal;
  std::size_t depth = 8;
  Boundary circuit_boundary = Boundary::Periodic;
  InitialKind initial = InitialKind::Zeros;
  std::uint64_t initial_seed = 0;
  OptimizerConfig optimizer;
  bool track_spin = false;
  std::optional<std::pair<std::string, GateKind>> compare;
  std::vector<std::uint64_t> sweep_seeds;
  bool plot = true;
};

inline json to_json(const VqeConfig& c) {
  json j;
  j["hamiltonian"] = {{"kind", to_string(c.hamiltonian.kind)}, {"n_q", c.hamiltonian.n_q},
                      {"boundary", to_string(c.hamiltonian.boundary)}, {"seed", c.hamiltonian.seed}};
  j["circuit"] = {{"gate", c.gate}, {"kind", to_string(c.kind)}, {"depth", c.depth}, {"boundary", to_string(c.circuit_boundary)}};
  j["initial_state"] = {{"kind", to_string(c.initial)}, {"seed", c.initial_seed}};
  j["optimizer"] = horizon::to_json(c.optimizer);
  j["track_spin"] = c.track_spin;
  if (c.compare) j["compare"] = {{"gate", c.compare->first}, {"kind", to_string(c.compare->second)}};
  if (!c.sweep_seeds.empty()) j["sweep"] = {{"seeds", c.sweep_seeds}};
  j["plot"] = c.plot;
  return j;
}

/// Strict reader: unknown keys and wrong types are errors.
inline VqeConfig vqe_config_from_json(const json& raw) {
  const json& j = raw.contains("config") ? raw.at("config") : raw;
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "vqe config must be a JSON object");
  auto expect_keys = [](const json& obj, std::initializer_list<const char*> keys, const char* where) {
    if (!obj.is_object()) throw Error(ErrorKind::ParseError, std::string(where) + " must be an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      bool known = false;
      for (const char* k : keys) known = known || it.key() == k;
      if (!known) throw Error(ErrorKind::ParseError, std::string("unknown key '") + it.key() + "' in " + where);
    }
  };
  VqeConfig c;
  try {
    expect_keys(j, {"schema_version", "hamiltonian", "circuit", "initial_state", "optimizer", "track_spin", "compare", "sweep", "plot"},
                "config");
    if (j.contains("hamiltonian")) {
      const json& h = j.at("hamiltonian");
      expect_keys(h, {"kind", "n_q", "boundary", "seed"}, "hamiltonian");
      if (h.contains("kind")) c.hamiltonian.kind = parse_hamiltonian_kind(h.at("kind").get<std::string>());
      if (h.contains("n_q")) c.hamiltonian.n_q = h.at("n_q").get<std::size_t>();
      if (h.contains("boundary")) c.hamiltonian.boundary = parse_boundary(h.at("boundary").get<std::string>());
      if (h.contains("seed")) c.hamiltonian.seed = h.at("seed").get<std::uint64_t>();
    }
    if (j.contains("circuit")) {
      const json& ci = j.at("circuit");
      expect_keys(ci, {"gate", "kind", "depth", "boundary"}, "circuit");
      if (ci.contains("gate")) c.gate = ci.at("gate").get<std::string>();
      if (ci.contains("kind")) c.kind = parse_gate_kind(ci.at("kind").get<std::string>());
      if (ci.contains("depth")) c.depth = ci.at("depth").get<std::size_t>();
      if (ci.contains("boundary")) c.circuit_boundary = parse_boundary(ci.at("boundary").get<std::string>());
    }
    if (j.contains("initial_state")) {
      const json& is = j.at("initial_state");
      expect_keys(is, {"kind", "seed"}, "initial_state");
      if (is.contains("kind")) c.initial = parse_initial_kind(is.at("kind").get<std::string>());
      if (is.contains("seed")) c.initial_seed = is.at("seed").get<std::uint64_t>();
    }
    if (j.contains("optimizer")) {
      const json& o = j.at("optimizer");
      expect_keys(o, {"algorithm", "learning_rate", "max_iters", "beta1", "beta2", "epsilon", "init_scale", "seed", "grad_tol", "schedule"},
                  "optimizer");
      OptimizerConfig& oc = c.optimizer;
      if (o.contains("algorithm")) oc.algorithm = parse_algorithm(o.at("algorithm").get<std::string>());
      oc.learning_rate = o.value("learning_rate", oc.learning_rate);
      oc.max_iters = o.value("max_iters", oc.max_iters);
      oc.beta1 = o.value("beta1", oc.beta1);
      oc.beta2 = o.value("beta2", oc.beta2);
      oc.epsilon = o.value("epsilon", oc.epsilon);
      oc.init_scale = o.value("init_scale", oc.init_scale);
      oc.seed = o.value("seed", oc.seed);
      oc.grad_tol = o.value("grad_tol", oc.grad_tol);
      if (o.contains("schedule")) oc.schedule = parse_lr_schedule(o.at("schedule").get<std::string>());
    }
    c.track_spin = j.value("track_spin", c.track_spin);
    c.plot = j.value("plot", c.plot);
    if (j.contains("compare")) {
      const json& cmp = j.at("compare");
      expect_keys(cmp, {"gate", "kind"}, "compare");
      c.compare = std::make_pair(cmp.at("gate").get<std::string>(), parse_gate_kind(cmp.value("kind", std::string("horizontal"))));
    }
    if (j.contains("sweep")) {
      const json& sw = j.at("sweep");
      expect_keys(sw, {"seeds"}, "sweep");
      c.sweep_seeds = sw.at("seeds").get<std::vector<std::uint64_t>>();
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("bad vqe config: ") + e.what());
  }
  c.optimizer.validate();
  if (c.depth == 0) throw Error(ErrorKind::InvalidArgument, "circuit depth must be positive");
  return c;
}

struct VqeOverrides {
  std::optional<std::size_t> nq, depth, iters;
  std::optional<std::string> boundary, optimizer;
  std::optional<double> lr;
  std::optional<std::uint64_t> seed;
};

inline void apply_overrides(VqeConfig& c, const VqeOverrides& o) {
  if (o.nq) c.hamiltonian.n_q = *o.nq;
  if (o.depth) c.depth = *o.depth;
  if (o.iters) c.optimizer.max_iters = *o.iters;
  if (o.boundary) c.hamiltonian.boundary = c.circuit_boundary = parse_boundary(*o.boundary);
  if (o.optimizer) c.optimizer.algorithm = parse_algorithm(*o.optimizer);
  if (o.lr) c.optimizer.learning_rate = *o.lr;
  if (o.seed) c.hamiltonian.seed = c.optimizer.seed = c.initial_seed = *o.seed;
  c.optimizer.validate();
}

struct VqeOutcome {
  json report;
  std::vector<RunRecord> runs;
};

inline VqeOutcome execute_vqe(const VqeConfig& c) {
  const Observable h = build_hamiltonian(c.hamiltonian);
  const Statevector psi0 = initial_state(c.initial, c.hamiltonian.n_q, c.initial_seed);
  const GroundInfo g = exact_ground_energy(h);
  VqeOutcome o;
  const GateSpec gate = make_gate(canonical_space_id(c.gate), c.kind);
  o.runs.push_back(run_vqe(h, BrickCircuit(c.hamiltonian.n_q, c.depth, gate, c.circuit_boundary), psi0, c.optimizer, c.track_spin, g));
  if (c.compare) {
    const GateSpec other = make_gate(canonical_space_id(c.compare->first), c.compare->second);
    o.runs.push_back(run_vqe(h, BrickCircuit(c.hamiltonian.n_q, c.depth, other, c.circuit_boundary), psi0, c.optimizer, c.track_spin, g));
  }
  o.report["schema_version"] = kSchemaVersion;
  o.report["config"] = to_json(c);
  o.report["runs"] = json::array();
  for (const auto& r : o.runs) o.report["runs"].push_back(horizon::to_json(r));
  if (o.runs.size() == 2) o.report["delta_relative_final"] = o.runs[0].final_relative() - o.runs[1].final_relative();
  return o;
}

inline void write_vqe_outputs(const VqeOutcome& o, const VqeConfig& c, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_text_file((dir / "run.json").string(), o.report.dump(2) + "\n");
  write_text_file((dir / "trajectory.csv").string(), trajectory_csv(o.runs[0]));
  if (o.runs.size() == 2) write_text_file((dir / "trajectory_compare.csv").string(), trajectory_csv(o.runs[1]));
  if (c.plot) {
    std::vector<std::pair<std::string, const RunRecord*>> arms{{c.gate + " " + to_string(c.kind), &o.runs[0]}};
    if (o.runs.size() == 2) arms.emplace_back(c.compare->first + " " + to_string(c.compare->second), &o.runs[1]);
    write_text_file((dir / "plot.svg").string(), trajectory_svg(arms));
  }
}

inline int cmd_vqe(const std::string& config_path, const std::string& out_dir, bool sweep, const VqeOverrides& ov,
                   bool as_json, std::ostream& out) {
  VqeConfig base = vqe_config_from_json(read_json_file(config_path));
  apply_overrides(base, ov);
  std::vector<std::pair<std::filesystem::path, VqeConfig>> jobs;
  const std::filesystem::path root = out_dir.empty() ? std::filesystem::path("vqe_out") : std::filesystem::path(out_dir);
  if (sweep) {
    if (base.sweep_seeds.empty()) throw Error(ErrorKind::InvalidArgument, "--sweep needs sweep.seeds in the config");
    for (auto s : base.sweep_seeds) {
      VqeConfig c = base;
      c.sweep_seeds.clear();
      c.hamiltonian.seed = c.optimizer.seed = c.initial_seed = s;
      jobs.emplace_back(root / ("seed_" + std::to_string(s)), c);
    }
  } else {
    jobs.emplace_back(root, base);
  }
  json summary = json::array();
  for (const auto& [dir, cfg] : jobs) {
    const VqeOutcome o = execute_vqe(cfg);
    write_vqe_outputs(o, cfg, dir);
    summary.push_back({{"dir", dir.string()}, {"final_delta_e", o.runs[0].final_delta_e},
                       {"final_relative_error", o.runs[0].final_relative()},
                       {"delta_relative_final", o.report.contains("delta_relative_final") ? o.report["delta_relative_final"] : json(nullptr)}});
    if (!as_json) {
      out << dir.string() << ": " << cfg.gate << " " << to_string(cfg.kind) << ", " << o.runs[0].trajectory.size()
          << " iterations, final dE = " << o.runs[0].final_delta_e << ", rel = " << o.runs[0].final_relative();
      if (std::isfinite(o.runs[0].final_s2)) out << ", <S^2> = " << o.runs[0].final_s2;
      if (o.runs.size() == 2) out << "; compare final rel = " << o.runs[1].final_relative() << ", dRel = " << o.report["delta_relative_final"].get<double>();
      out << '\n';
    }
  }
  if (as_json) out << json({{"schema_version", kSchemaVersion}, {"runs", summary}}).dump(2) << '\n';
  return kOk;
}

// ---- catalog ------------------------------------------------------------

inline int cmd_catalog(bool as_json, const Tolerance& tol, std::ostream& out) {
  json list = json::array();
  for (const auto& id : space_ids()) {
    const HomogeneousSpace s = make_space(id);
    const auto dims = s.decompose(tol).dims();
    const GateSpec g = gate_catalog(id);
    list.push_back({{"id", id}, {"title", s.title}, {"symmetric", s.symmetric},
                    {"involution", s.involution ? json(s.involution->id()) : json(nullptr)},
                    {"dims", {dims[0], dims[1], dims[2], dims[3]}}, {"gate_kind", to_string(g.kind)},
                    {"gate_params", g.param_count()}});
  }
  if (as_json) {
    out << json({{"schema_version", kSchemaVersion}, {"spaces", list}}).dump(2) << '\n';
    return kOk;
  }
  out << std::left << std::setw(28) << "id" << std::setw(22) << "G/K" << std::setw(16) << "r,gk_o,z,k_o" << std::setw(14)
      << "involution" << "gate\n";
  for (const auto& e : list) {
    const auto& d = e["dims"];
    std::ostringstream dims;
    dims << d[0] << ',' << d[1] << ',' << d[2] << ',' << d[3];
    out << std::setw(28) << e["id"].get<std::string>() << std::setw(22) << e["title"].get<std::string>() << std::setw(16)
        << dims.str() << std::setw(16) << (e["involution"].is_null() ? "-" : e["involution"].get<std::string>())
        << e["gate_kind"].get<std::string>() << " (" << e["gate_params"] << " params)\n";
  }
  for (const auto& [alias, id] : space_aliases()) out << "alias " << alias << " -> " << id << '\n';
  return kOk;
}

// ---- entry --------------------------------------------------------------

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"horizon: horizontal gates from homogeneous-space decompositions"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output");

  auto* dec = app.add_subcommand("decompose", "split g = r + gk_o + z(k) + k_o");
  DecomposeArgs da;
  dec->add_option("space,--space", da.space, "catalog space id");
  dec->add_option("--g-file", da.g_file, "generators of g (JSON)");
  dec->add_option("--k-file", da.k_file, "basis of k (JSON)");
  dec->add_option("--out", da.out_path, "also write the JSON report here");

  auto* ver = app.add_subcommand("verify", "check closure, Ad-invariance, symmetric and Cartan properties");
  std::string verify_space_id;
  ver->add_option("space,--space", verify_space_id, "catalog space id");

  auto* gate = app.add_subcommand("gate", "print a gate unitary and its logm residual");
  GateArgs ga;
  std::uint64_t gate_seed = 0;
  gate->add_option("space,--space", ga.space, "catalog space id, or su2/su4/so4");
  gate->add_option("--kind", ga.kind, "horizontal|equivariant|kak|stabilizer|full");
  gate->add_option("--theta", ga.theta, "comma-separated parameters");
  auto* rnd = gate->add_option("--random,--seed", gate_seed, "draw parameters uniformly in [-1, 1] from this seed");
  gate->add_flag("--kak", ga.kak, "KAK circuit mode (alpha, phi)");
  gate->add_option("--alpha", ga.alpha, "k-layer parameters");
  gate->add_option("--phi", ga.phi, "h parameters");

  auto* vqe = app.add_subcommand("vqe", "run a VQE experiment from a JSON config");
  std::string config_path, out_dir;
  bool sweep = false;
  VqeOverrides ov;
  vqe->add_option("config", config_path, "config file")->required();
  vqe->add_option("--out-dir", out_dir, "output directory (default vqe_out)");
  vqe->add_flag("--sweep", sweep, "run once per sweep.seeds entry");
  vqe->add_option("--nq", ov.nq, "qubit count");
  vqe->add_option("--depth", ov.depth, "circuit depth");
  vqe->add_option("--boundary", ov.boundary, "open|periodic");
  vqe->add_option("--optimizer", ov.optimizer, "adam|gd");
  vqe->add_option("--lr", ov.lr, "learning rate");
  vqe->add_option("--iters", ov.iters, "max iterations");
  vqe->add_option("--seed", ov.seed, "seed for Hamiltonian, initial state and optimizer");

  auto* cat = app.add_subcommand("catalog", "list the known spaces");
  for (auto* sub : {dec, ver, gate, vqe, cat}) sub->add_flag("--json", as_json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  const bool is_vqe = vqe->parsed();
  try {
    const Tolerance tol = Tolerance::from_env();
    if (dec->parsed()) {
      da.json = as_json;
      return cmd_decompose(da, tol, out);
    }
    if (ver->parsed()) {
      if (verify_space_id.empty()) throw Error(ErrorKind::ParseError, "verify needs a space id");
      return cmd_verify(verify_space_id, as_json, tol, out);
    }
    if (gate->parsed()) {
      if (ga.space.empty()) throw Error(ErrorKind::ParseError, "gate needs a space id");
      if (rnd->count() > 0) ga.random_seed = gate_seed;
      ga.json = as_json;
      return cmd_gate(ga, tol, out);
    }
    if (is_vqe) return cmd_vqe(config_path, out_dir, sweep, ov, as_json, out);
    return cmd_catalog(as_json, tol, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_vqe ? kRuntimeError : exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}

}  // namespace horizon::cli
