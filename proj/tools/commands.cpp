#include <cmath>
#include <numbers>
#include <random>

#include "hclab/criteria.hpp"
#include "hclab/dynamics.hpp"
#include "hclab/grading.hpp"
#include "hclab/nilpotent.hpp"
#include "runner.hpp"

namespace hclab::cli {

namespace {

using linalg::Complex;
using linalg::ComplexMatrix;
using linalg::ComplexVector;
using linalg::Index;

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

long int_param(const json& p, const char* key, long lo) {
  const long v = p.at(key).get<long>();
  if (v < lo) throw InputError(std::string("--") + key + " must be at least " + std::to_string(lo));
  return v;
}

Complex complex_param(const json& p, const char* key) {
  const json& v = p.at(key);
  if (v.size() == 1) return v[0].get<double>();
  if (v.size() == 2) return {v[0].get<double>(), v[1].get<double>()};
  throw InputError(std::string("--") + key + " takes re or re,im");
}

std::vector<unsigned> unsigned_list(const json& v, const char* key) {
  std::vector<unsigned> out;
  for (const auto& e : v) {
    const double d = e.get<double>();
    if (d < 0 || d != std::floor(d)) throw InputError(std::string("--") + key + " takes nonnegative integers");
    out.push_back(static_cast<unsigned>(d));
  }
  return out;
}

ComplexVector vector_or_basis(const json& v, Index d, Index basis_index) {
  if (v.is_null()) {
    ComplexVector e = ComplexVector::Zero(d);
    e(basis_index) = 1.0;
    return e;
  }
  ComplexVector out = io::vector_from_json(v);
  if (out.size() != d) throw InputError("vector has length " + std::to_string(out.size()) + ", expected " + std::to_string(d));
  return out;
}

ComplexMatrix operator_from(const json& p) {
  if (!p.at("matrix").is_null()) {
    ComplexMatrix m = io::matrix_from_json(p.at("matrix"));
    if (m.rows() != m.cols()) throw InputError("--matrix must be square");
    return m;
  }
  const std::string family = p.at("family").get<std::string>();
  const Index d = int_param(p, "dim", 1);
  if (family == "shift") return linalg::backward_shift(d);
  if (family == "unipotent") return ComplexMatrix::Identity(d, d) + linalg::backward_shift(d);
  if (family == "zero") return ComplexMatrix::Zero(d, d);
  if (family == "rotation") {
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    for (Index i = 0; i < d; ++i) m(i, i) = std::polar(1.0, std::numbers::sqrt2 * static_cast<double>(i + 1));
    return m;
  }
  if (family == "integral") {
    if (d < 16) throw InputError("--dim must be at least 16 for the integral family");
    const std::vector<double> alpha(static_cast<std::size_t>(d) + 1, 1.0);
    return operators::integral_op(alpha, [](double x) { return x / 2.0; }, static_cast<unsigned>(d)).T.matrix;
  }
  throw InputError("unknown operator family '" + family + "'");
}

operators::WeightSequence weights_from(const json& p) {
  const std::string file = p.at("weights-file").get<std::string>();
  if (!file.empty()) return operators::WeightSequence::from_json(parse_flag({"weights-file", Kind::Json, nullptr, ""}, "@" + file));
  return operators::WeightSequence::named(p.at("weights").get<std::string>(), p.at("c").get<double>(),
                                          int_param(p, "m0", 0), int_param(p, "window", 0));
}

grading::RationalFunction component_from(const json& j) {
  if (j.is_array()) return grading::RationalFunction(linalg::Polynomial(io::rational_vector_from_json(j)));
  if (j.is_object() && j.contains("num") && j.contains("den")) {
    return {linalg::Polynomial(io::rational_vector_from_json(j["num"])),
            linalg::Polynomial(io::rational_vector_from_json(j["den"]))};
  }
  throw InputError("graded component must be a coefficient list or {\"num\", \"den\"}");
}

grading::GradedVector graded_from(const json& j) {
  if (!j.is_array()) throw InputError("graded vector must be an array of components");
  grading::GradedVector out;
  for (const auto& c : j) out.push_back(component_from(c));
  return out;
}

int verdict_exit(bool ok) { return ok ? kExitOk : kExitViolated; }

Outcome run_detan(const json& p) {
  const long nmax = int_param(p, "max-n", 1);
  const long kmax = int_param(p, "max-k", 1);
  Outcome out;
  json cells = json::array();
  bool all = true;
  Table t{{"n", "k", "agree"}, {}};
  for (long n = 1; n <= nmax; ++n) {
    for (long k = 1; k <= kmax; ++k) {
      const auto d = nilpotent::det_Mnk(static_cast<unsigned>(n), static_cast<unsigned>(k));
      all = all && d.agree();
      json c = io::to_json(d);
      c["n"] = n;
      c["k"] = k;
      cells.push_back(c);
      t.rows.push_back({static_cast<double>(n), static_cast<double>(k), d.agree() ? 1.0 : 0.0});
    }
  }
  out.report = {{"cells", cells}, {"all_agree", all}, {"summary", all ? "recurrence = direct" : "recurrence != direct"}};
  out.exit_code = verdict_exit(all);
  out.table = t;
  return out;
}

Outcome run_jordan(const json& p) {
  const auto n = static_cast<unsigned>(int_param(p, "n", 1));
  const Complex z = complex_param(p, "z");
  const long trials = int_param(p, "trials", 1);
  const long j = int_param(p, "j", 0);
  std::mt19937_64 rng(static_cast<std::uint64_t>(p.at("seed").get<long>()));
  Outcome out;
  Table t{{"trial", "residual_u", "residual_v"}, {}};
  json rows = json::array();
  double max_u = 0.0, max_v = 0.0, max_du = 0.0, max_dv = 0.0;
  auto narrow = [](const std::vector<WideComplex>& w) {
    std::vector<Complex> out;
    for (const auto& c : w) out.push_back(ScalarOps<WideComplex>::to_complex(c));
    return out;
  };
  const WideComplex zw(z.real(), z.imag());
  for (long i = 0; i < trials; ++i) {
    std::vector<WideComplex> u(n), v(n);
    for (auto& x : u) x = 2.0 * unit(rng) - 1.0;
    for (auto& x : v) x = 2.0 * unit(rng) - 1.0;
    const auto s = nilpotent::jordan_solve<WideComplex>(n, zw, u, v);
    max_u = std::max(max_u, s.residual_u);
    max_v = std::max(max_v, s.residual_v);
    rows.push_back({{"x", io::to_json(ComplexVector(Eigen::Map<const ComplexVector>(narrow(s.x).data(), 2 * n)))},
                    {"residual_u", s.residual_u},
                    {"residual_v", s.residual_v}});
    t.rows.push_back({static_cast<double>(i), s.residual_u, s.residual_v});
    if (j > 0) {
      const auto d = nilpotent::discrete_pair<WideComplex>(n, static_cast<unsigned>(j), u, v);
      max_du = std::max(max_du, d.error_u);
      max_dv = std::max(max_dv, d.error_v);
    }
  }
  out.report = {{"trials", rows}, {"max_residual_u", max_u}, {"max_residual_v", max_v}};
  if (j > 0) out.report["discrete"] = {{"j", j}, {"max_error_u", max_du}, {"max_error_v", max_dv}};
  out.table = t;
  return out;
}

Outcome run_tensor(const json& p) {
  const auto blocks = unsigned_list(p.at("blocks"), "blocks");
  const auto exps = unsigned_list(p.at("exponents"), "exponents");
  if (exps.size() != blocks.size()) throw InputError("--exponents needs one entry per block");
  const auto tt = nilpotent::TensorShiftTuple::build(blocks);
  const auto m = static_cast<std::size_t>(int_param(p, "m", 1));
  std::vector<ComplexVector> zs;
  for (std::size_t i = 0; i <= m; ++i) {
    ComplexVector z(static_cast<Index>(blocks.size()));
    for (std::size_t c = 0; c < blocks.size(); ++c) z(static_cast<Index>(c)) = std::pow(static_cast<double>(i + 1), exps[c]);
    zs.push_back(z);
  }
  const ComplexVector u = vector_or_basis(p.at("u"), tt.dim, tt.e_indices.front());
  const ComplexVector v = vector_or_basis(p.at("v"), tt.dim, tt.e_indices.front());
  Outcome out;
  out.report = io::to_json(nilpotent::tensor_approach(tt, zs, u, v, m));
  return out;
}

Outcome run_kerim(const json& p) {
  const ComplexMatrix a = operator_from(p);
  const Complex z = complex_param(p, "z");
  if (std::abs(std::abs(z) - 1.0) > 1e-12) throw InputError("--z must be unimodular");
  const ComplexVector x = vector_or_basis(p.at("x"), a.rows(), 0);
  const auto k = static_cast<unsigned>(int_param(p, "k", 1));
  const auto ki = linalg::kernel_and_image(a);
  const auto pair = nilpotent::unimodular_approach<WideComplex>(promote<WideComplex>(a), WideComplex(z.real(), z.imag()),
                                                               promote<WideComplex>(x), k);
  Outcome out;
  out.report = {{"kernel_dim", ki.kernel.dim()},
                {"image_dim", ki.image.dim()},
                {"chain_length", pair.chain_length},
                {"u", io::to_json(ComplexVector(demote<WideComplex>(pair.u)))},
                {"v", io::to_json(ComplexVector(demote<WideComplex>(pair.v)))},
                {"u_norm", pair.u_norm},
                {"u_image_error", pair.u_image_error},
                {"v_error", pair.v_error},
                {"v_image_norm", pair.v_image_norm}};
  return out;
}

Outcome run_salas(const json& p) {
  const auto w = weights_from(p);
  const std::string kind = p.at("kind").get<std::string>();
  const long m_max = int_param(p, "m-max", 0);
  const long n_max = int_param(p, "n-max", 8);
  const double tol = p.at("tol").get<double>();
  criteria::SalasCertificate c;
  if (kind == "hypercyclic") {
    c = criteria::salas_hypercyclic(w, m_max, n_max, tol);
  } else if (kind == "supercyclic") {
    c = criteria::salas_supercyclic(w, m_max, n_max, tol);
  } else {
    throw InputError("--kind must be hypercyclic or supercyclic");
  }
  Outcome out;
  out.report = io::to_json(c);
  out.report["weights"] = w.to_json();
  out.exit_code = verdict_exit(c.verdict != criteria::SalasVerdict::ViolatedAtHorizon);
  Table t{{"m", "log_min", "log_min_half"}, {}};
  for (std::size_t m = 0; m < c.log_min.size(); ++m) t.rows.push_back({static_cast<double>(m), c.log_min[m], c.log_min_half[m]});
  out.table = t;
  return out;
}

Outcome run_subspaces(const json& p) {
  const std::string mode = p.at("mode").get<std::string>();
  const double tol = p.at("tol").get<double>();
  Outcome out;
  linalg::Subspace span;
  if (mode == "ker-dagger") {
    span = criteria::ker_dagger(operator_from(p), tol);
  } else if (mode == "lambda") {
    const auto lr = criteria::lambda_T_full(operator_from(p), tol);
    span = lr.span;
    out.report = io::to_json(lr);
  } else if (mode == "ebs") {
    const auto tt = nilpotent::TensorShiftTuple::build(unsigned_list(p.at("blocks"), "blocks"));
    span = criteria::ebs_tuple_kernel(tt.T, tol);
  } else {
    throw InputError("--mode must be ker-dagger, lambda or ebs");
  }
  const bool dense = span.dim() == span.ambient();
  out.report["span"] = io::to_json(span);
  out.report["dense"] = dense;
  out.report["mode"] = mode;
  return out;
}

Outcome run_perturb(const json& p) {
  const auto dim = static_cast<std::size_t>(int_param(p, "dim", 1));
  const auto n = static_cast<unsigned>(int_param(p, "n", 1));
  const mpq_class s = io::rational_from_json(p.at("s"));
  const auto sc = criteria::random_ebs_scenario(dim, n, static_cast<std::uint64_t>(p.at("seed").get<long>()));
  const auto r = criteria::ebs_perturb(sc.xi, sc.x1, sc.x2, s);
  Outcome out;
  out.report = io::to_json(r);
  out.report["x1"] = io::to_json(sc.x1);
  out.report["x2"] = io::to_json(sc.x2);
  out.exit_code = verdict_exit(r.nilpotent_2n && r.chain_x1 && r.chain_x2 && r.x_in_kernel);
  return out;
}

Outcome run_regions(const json& p) {
  const std::string name = p.at("builtin").get<std::string>();
  const auto region = name == "disk" ? criteria::region_disk(complex_param(p, "center"), p.at("radius").get<double>())
                                     : criteria::builtin_region(name);
  const auto r = criteria::gs_region_verdict(region, criteria::parse_transform(p.at("transform").get<std::string>()),
                                             static_cast<std::size_t>(int_param(p, "samples", 1)),
                                             static_cast<std::uint64_t>(p.at("seed").get<long>()));
  Outcome out;
  out.report = io::to_json(r);
  out.exit_code = verdict_exit(r.verdict == criteria::RegionVerdict::IntersectsCircle ||
                               r.verdict == criteria::RegionVerdict::Indeterminate);
  return out;
}

Outcome run_symmetry(const json& p) {
  const std::string mode = p.at("mode").get<std::string>();
  const long N = int_param(p, "N", 1);
  const auto seed = static_cast<std::uint64_t>(p.at("seed").get<long>());
  Outcome out;
  if (mode == "weights") {
    std::vector<double> coeffs;
    for (const auto& c : p.at("p")) coeffs.push_back(c.get<double>());
    const auto r = criteria::symmetry_obstruction(weights_from(p), coeffs, static_cast<unsigned>(int_param(p, "trials", 1)), N,
                                                  seed);
    out.report = io::to_json(r);
    out.exit_code = verdict_exit(r.applicable);
    return out;
  }
  if (mode != "bilinear") throw InputError("--mode must be weights or bilinear");
  const std::string target = p.at("target").get<std::string>();
  const Index d = 2 * N + 1;
  ComplexMatrix t, b;
  if (target == "shift") {
    t = operators::bilateral_shift(operators::WeightSequence::constant(1.0, N), N).matrix;
    b = ComplexMatrix::Zero(d, d);
    for (Index i = 0; i < d; ++i) b(i, d - 1 - i) = 1.0;
  } else if (target == "diagonal") {
    t = ComplexMatrix::Zero(d, d);
    for (Index i = 0; i < d; ++i) t(i, i) = 1.0 / static_cast<double>(i + 1);
    b = ComplexMatrix::Identity(d, d);
  } else if (target == "random") {
    std::mt19937_64 rng(seed);
    t = ComplexMatrix(d, d);
    for (Index i = 0; i < d * d; ++i) t.data()[i] = 2.0 * unit(rng) - 1.0;
    b = ComplexMatrix::Identity(d, d);
  } else {
    throw InputError("--target must be shift, diagonal or random");
  }
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  ComplexVector x(d), y(d);
  for (Index i = 0; i < d; ++i) {
    x(i) = 2.0 * unit(rng) - 1.0;
    y(i) = 2.0 * unit(rng) - 1.0;
  }
  const auto r = criteria::b_symmetry_check(t, b, x, y, N, seed);
  out.report = io::to_json(r);
  out.report["target"] = target;
  out.exit_code = verdict_exit(r.symmetric);
  return out;
}

Outcome run_grading(const json& p) {
  const std::string mode = p.at("mode").get<std::string>();
  Outcome out;
  if (mode == "member") {
    const auto r = grading::f_t_x_member(graded_from(p.at("x")), graded_from(p.at("y")));
    out.report = io::to_json(r);
    out.exit_code = verdict_exit(r.member);
    return out;
  }
  std::vector<grading::GradedVector> vs;
  if (!p.at("vectors").is_array()) throw InputError("--vectors must be an array of graded vectors");
  for (const auto& v : p.at("vectors")) vs.push_back(graded_from(v));
  if (mode == "n0") {
    out.report = io::to_json(grading::n0_bound(vs));
  } else if (mode == "independent") {
    const auto r = grading::t_independent(vs);
    out.report = io::to_json(r);
    out.exit_code = verdict_exit(r.independent);
  } else {
    throw InputError("--mode must be n0, independent or member");
  }
  return out;
}

Outcome run_mixing(const json& p) {
  const ComplexMatrix t = operator_from(p);
  const dynamics::Ball U{vector_or_basis(p.at("u"), t.rows(), 0), p.at("radius-u").get<double>()};
  const dynamics::Ball V{vector_or_basis(p.at("v"), t.rows(), std::min<Index>(1, t.rows() - 1)),
                         p.at("radius-v").get<double>()};
  const auto r = dynamics::mixing_window(t, U, V, static_cast<unsigned>(int_param(p, "horizon", 1)),
                                         static_cast<unsigned>(int_param(p, "probes", 0)),
                                         static_cast<std::uint64_t>(p.at("seed").get<long>()));
  Outcome out;
  out.report = io::to_json(r);
  const long k = int_param(p, "k", 0);
  if (k > 0) out.report["transitivity"] = io::to_json(dynamics::transitivity_pair(t, U.center, V.center, static_cast<unsigned>(k)));
  out.exit_code = verdict_exit(r.window_start.has_value());
  Table tab{{"n", "hit"}, {}};
  for (std::size_t n = 0; n < r.hits.size(); ++n) tab.rows.push_back({static_cast<double>(n + 1), r.hits[n] ? 1.0 : 0.0});
  out.table = tab;
  return out;
}

Table coverage_table(const dynamics::CoverageReport& c) {
  Table t{{"row", "col", "hit"}, {}};
  for (unsigned i = 0; i < c.cells; ++i) {
    for (unsigned j = 0; j < c.cells; ++j) {
      t.rows.push_back({static_cast<double>(i), static_cast<double>(j), static_cast<double>(c.hits[i * c.cells + j])});
    }
  }
  return t;
}

Outcome run_density(const json& p, unsigned threads) {
  const std::string mode = p.at("mode").get<std::string>();
  dynamics::NetSpec net;
  net.coord = int_param(p, "coord", 0);
  net.radius = p.at("radius").get<double>();
  net.cells = static_cast<unsigned>(int_param(p, "cells", 1));
  net.base_samples = static_cast<unsigned>(int_param(p, "samples", 1));
  const auto horizon = static_cast<unsigned>(int_param(p, "horizon", 0));
  const auto seed = static_cast<std::uint64_t>(p.at("seed").get<long>());
  Outcome out;
  if (mode == "u3") {
    const std::string scaling = p.at("scaling").get<std::string>();
    if (scaling != "projective" && scaling != "none") throw InputError("--scaling must be projective or none");
    const auto w = weights_from(p);
    const auto op = operators::bilateral_shift(w, w.N());
    const auto c = dynamics::u3_density({op.matrix, scaling == "projective"}, net, horizon, seed, threads);
    out.report = io::to_json(c);
    out.report["dim"] = op.dim();
    out.table = coverage_table(c);
    return out;
  }
  if (mode != "supercyclic") throw InputError("--mode must be u3 or supercyclic");
  const auto r = dynamics::supercyclic_probe(operator_from(p), net, horizon, seed);
  out.report = io::to_json(r);
  out.exit_code = verdict_exit(r.applicable);
  out.table = coverage_table(r.coverage);
  return out;
}

Outcome run_volterra(const json& p) {
  const auto ngrid = static_cast<unsigned>(int_param(p, "ngrid", 16));
  const double q = p.at("q").get<double>();
  const std::string shape = p.at("f").get<std::string>();
  const std::string rule_name = p.at("rule").get<std::string>();
  operators::Quadrature rule;
  if (rule_name == "gregory") {
    rule = operators::Quadrature::Gregory;
  } else if (rule_name == "trapezoid") {
    rule = operators::Quadrature::Trapezoid;
  } else {
    throw InputError("--rule must be gregory or trapezoid");
  }
  std::vector<double> f(ngrid + 1, 0.0);
  if (shape == "bump") {
    for (unsigned i = 0; i <= ngrid; ++i) {
      const double x = static_cast<double>(i) / ngrid;
      if (x < q) f[i] = std::pow(std::sin(std::numbers::pi * x / q), 2);
    }
  } else if (shape != "zero") {
    throw InputError("--f must be bump or zero");
  }
  const auto d = dynamics::volterra_dist(ngrid, q, f, static_cast<unsigned>(int_param(p, "n-max", 0)), rule);
  Outcome out;
  out.report = io::to_json(d);
  Table t{{"n", "d_n"}, {}};
  for (std::size_t n = 0; n < d.d.size(); ++n) t.rows.push_back({static_cast<double>(n), d.d[n]});
  out.table = t;
  return out;
}

Outcome run_saan(const json& p) {
  const auto k = static_cast<unsigned>(int_param(p, "k", 1));
  const long degree = int_param(p, "degree", 0);
  std::size_t count = 1;
  for (unsigned i = 1; i <= k; ++i) count = count * static_cast<std::size_t>(degree + i) / i;
  const auto g = operators::saan_generators(k, count);
  const double scale = p.at("scale").get<double>();
  std::mt19937_64 rng(static_cast<std::uint64_t>(p.at("seed").get<long>()));
  double worst = 0.0, inverse = 0.0, commutator = 0.0;
  for (std::size_t i = 0; i < g.A.size(); ++i) {
    for (std::size_t j = i + 1; j < g.A.size(); ++j) commutator = std::max(commutator, linalg::commutator_norm(g.A[i], g.A[j]));
  }
  auto draw = [&] {
    std::vector<Complex> z(k);
    for (auto& c : z) c = Complex(scale * (2.0 * unit(rng) - 1.0), scale * (2.0 * unit(rng) - 1.0));
    return z;
  };
  const long trials = int_param(p, "trials", 1);
  for (long t = 0; t < trials; ++t) {
    const auto z = draw();
    const auto w = draw();
    worst = std::max(worst, dynamics::group_law_residual(g.A, z, w));
    std::vector<Complex> minus(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) minus[i] = -z[i];
    const ComplexMatrix id = dynamics::exp_group(g.A, z) * dynamics::exp_group(g.A, minus);
    inverse = std::max(inverse, (id - ComplexMatrix::Identity(id.rows(), id.cols())).cwiseAbs().maxCoeff());
  }
  Outcome out;
  out.report = io::to_json(g);
  out.report["dim"] = count;
  out.report["group_law_residual"] = worst;
  out.report["inverse_residual"] = inverse;
  out.report["commutator_norm"] = commutator;
  out.exit_code = verdict_exit(g.coefficient_bound_slack >= 0.0);
  return out;
}

}  // namespace

Outcome execute(const std::string& command, const json& params, unsigned threads) {
  const json p = resolve(find_command(command), params);
  if (command == "detan") return run_detan(p);
  if (command == "jordan") return run_jordan(p);
  if (command == "tensor") return run_tensor(p);
  if (command == "kerim") return run_kerim(p);
  if (command == "salas") return run_salas(p);
  if (command == "subspaces") return run_subspaces(p);
  if (command == "perturb") return run_perturb(p);
  if (command == "regions") return run_regions(p);
  if (command == "symmetry") return run_symmetry(p);
  if (command == "grading") return run_grading(p);
  if (command == "mixing") return run_mixing(p);
  if (command == "density") return run_density(p, threads);
  if (command == "volterra") return run_volterra(p);
  if (command == "saan-group") return run_saan(p);
  throw InputError("unknown subcommand '" + command + "'");
}

Rendered render(const std::string& command, const json& given, const std::string& format, unsigned threads) {
  if (format != "json" && format != "csv") throw InputError("--format must be json or csv");
  const json params = resolve(find_command(command), given);
  Outcome outcome;
  try {
    outcome = execute(command, params, threads);
  } catch (const DomainError& e) {
    outcome = {{{"verdict", "inapplicable"}, {"error", "domain"}, {"message", e.what()}}, kExitViolated, std::nullopt};
  } catch (const PreconditionError& e) {
    outcome = {{{"verdict", "inapplicable"}, {"error", "precondition"}, {"message", e.what()}}, kExitViolated, std::nullopt};
  } catch (const DimensionError& e) {
    outcome = {{{"verdict", "inapplicable"}, {"error", "dimension"}, {"message", e.what()}}, kExitViolated, std::nullopt};
  }
  if (format == "csv") {
    if (!outcome.table) {
      if (outcome.exit_code == kExitViolated) return {io::dump(io::envelope(command, params, outcome.report)), kExitViolated};
      throw InputError(command + " has no CSV form");
    }
    return {io::csv(outcome.table->header, outcome.table->rows), outcome.exit_code};
  }
  return {io::dump(io::envelope(command, params, outcome.report)), outcome.exit_code};
}

}  // namespace hclab::cli
