#include <charconv>
#include <cmath>
#include <fstream>

#include "hclab/io.hpp"

namespace hclab::io {

json to_json(linalg::Complex z) {
  if (z.imag() == 0.0) return z.real();
  return json::array({z.real(), z.imag()});
}

json to_json(const linalg::ComplexVector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

json to_json(const linalg::ComplexMatrix& m) {
  json out = json::array();
  for (Index i = 0; i < m.rows(); ++i) out.push_back(to_json(linalg::ComplexVector(m.row(i).transpose())));
  return out;
}

json to_json(const mpq_class& q) { return q.get_str(); }

json to_json(const linalg::RationalVector& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(to_json(q));
  return out;
}

json to_json(const linalg::RationalMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row(i)));
  return out;
}

json to_json(const linalg::Subspace& s) { return {{"ambient", s.ambient()}, {"dim", s.dim()}}; }

json to_json(const grading::GradedVector& x) {
  json out = json::array();
  for (const auto& r : x) out.push_back(r.to_string());
  return out;
}

linalg::Complex complex_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw InputError("expected a number or a [re, im] pair, got " + j.dump());
}

linalg::ComplexVector vector_from_json(const json& j) {
  if (!j.is_array()) throw InputError("expected a vector (JSON array)");
  linalg::ComplexVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = complex_from_json(j[i]);
  return v;
}

linalg::ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw InputError("expected a matrix (array of rows)");
  const std::size_t cols = j[0].size();
  linalg::ComplexMatrix m(static_cast<Index>(j.size()), static_cast<Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw InputError("matrix rows have different lengths");
    for (std::size_t c = 0; c < cols; ++c) m(static_cast<Index>(r), static_cast<Index>(c)) = complex_from_json(j[r][c]);
  }
  return m;
}

mpq_class rational_from_json(const json& j) {
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const auto dot = s.find('.');
    try {
      if (dot == std::string::npos) {
        mpq_class q(s, 10);
        if (q.get_den() == 0) throw InputError("rational '" + s + "' has a zero denominator");
        q.canonicalize();
        return q;
      }
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      mpz_class den = 1;
      for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
      mpq_class q{mpz_class(digits, 10), den};
      q.canonicalize();
      return q;
    } catch (const std::invalid_argument&) {
      throw InputError("malformed rational '" + s + "'");
    }
  }
  throw InputError("expected an integer or a \"p/q\" string, got " + j.dump());
}

linalg::RationalVector rational_vector_from_json(const json& j) {
  if (!j.is_array()) throw InputError("expected a rational vector (JSON array)");
  linalg::RationalVector v;
  for (const auto& e : j) v.push_back(rational_from_json(e));
  return v;
}

linalg::RationalMatrix rational_matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw InputError("expected a rational matrix (array of rows)");
  linalg::RationalMatrix m(j.size(), j[0].size());
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != m.cols()) throw InputError("matrix rows have different lengths");
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rational_from_json(j[r][c]);
  }
  return m;
}

namespace {

json complex_list(const std::vector<linalg::Complex>& v) {
  json out = json::array();
  for (const auto& z : v) out.push_back(to_json(z));
  return out;
}

json bool_list(const std::vector<bool>& v) {
  json out = json::array();
  for (bool b : v) out.push_back(b);
  return out;
}

}  // namespace

json to_json(const nilpotent::DetMnk& d) {
  return {{"recurrence", to_json(d.recurrence)}, {"direct", to_json(d.direct)}, {"agree", d.agree()}};
}

json to_json(const nilpotent::JordanSolution<linalg::Complex>& s) {
  return {{"x", complex_list(s.x)}, {"residual_u", s.residual_u}, {"residual_v", s.residual_v}};
}

json to_json(const nilpotent::DiscretePair<linalg::Complex>& p) {
  return {{"x", complex_list(p.x)}, {"error_u", p.error_u}, {"error_v", p.error_v}};
}

json to_json(const nilpotent::TensorApproach& a) {
  return {{"x", to_json(a.x)}, {"error_u", a.error_u}, {"error_v", a.error_v}, {"unbounded", bool_list(a.unbounded)}};
}

json to_json(const operators::SaanGenerators& g) {
  json multi = json::array();
  for (const auto& m : g.multi) multi.push_back(m);
  return {{"k", g.k},
          {"enumeration", multi},
          {"coefficient_bound_slack", g.coefficient_bound_slack},
          {"l1_norm", g.l1_norm},
          {"esti_bound", g.esti_bound}};
}

json to_json(const criteria::SalasCertificate& c) {
  return {{"kind", c.kind == criteria::SalasKind::Hypercyclic ? "hypercyclic" : "supercyclic"},
          {"verdict", criteria::to_string(c.verdict)},
          {"reason", c.reason},
          {"m_max", c.m_max},
          {"n_max", c.n_max},
          {"tol", c.tol},
          {"log_min", c.log_min},
          {"log_min_half", c.log_min_half}};
}

json to_json(const criteria::LambdaResult& r) {
  json clusters = json::array();
  for (const auto& c : r.clusters) clusters.push_back({{"center", to_json(c.center)}, {"multiplicity", c.multiplicity}});
  return {{"span", to_json(r.span)}, {"unimodular", complex_list(r.unimodular)}, {"clusters", clusters}};
}

json to_json(const criteria::EbsPerturbation& p) {
  json u = json::array();
  for (const auto& v : p.u) u.push_back(to_json(v));
  json f = json::array();
  for (const auto& v : p.f) f.push_back(to_json(v));
  return {{"n", p.n},
          {"u", u},
          {"f", f},
          {"nilpotent_2n", p.nilpotent_2n},
          {"chain_x1", p.chain_x1},
          {"chain_x2", p.chain_x2},
          {"x_in_kernel", p.x_in_kernel}};
}

json to_json(const criteria::RegionReport& r) {
  return {{"verdict", criteria::to_string(r.verdict)},
          {"exact", r.exact},
          {"certificate", r.certificate},
          {"witnesses", complex_list(r.witnesses)},
          {"samples", r.samples},
          {"in_region", r.in_region},
          {"image_inside", r.image_inside},
          {"image_outside", r.image_outside},
          {"sampling_agrees", r.sampling_agrees},
          {"seed", r.seed}};
}

json to_json(const criteria::SymmetryReport& r) {
  return {{"applicable", r.applicable},
          {"first_violation", r.first_violation ? json(*r.first_violation) : json(nullptr)},
          {"flip_residual", r.flip_residual},
          {"max_residual", r.max_residual},
          {"trials", r.trials},
          {"N", r.N},
          {"seed", r.seed}};
}

json to_json(const criteria::BSymmetryReport& r) {
  json out = {{"symmetric", r.symmetric},
              {"symmetry_residual", r.symmetry_residual},
              {"annihilator_residual", r.annihilator_residual},
              {"N", r.N}};
  out["witness"] = r.witness ? json::array({to_json(r.witness->first), to_json(r.witness->second)}) : json(nullptr);
  return out;
}

json to_json(const grading::Independence& r) {
  json rel = json::array();
  for (const auto& p : r.relation) rel.push_back(p.to_string());
  return {{"independent", r.independent}, {"rank", r.rank}, {"relation", rel}};
}

json to_json(const grading::N0Report& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"d", c.d}, {"trivial", c.trivial}});
  json basis = json::array();
  for (const auto& b : r.reduced_basis) basis.push_back(to_json(b));
  return {{"delta_plus", r.delta_plus},
          {"delta_minus", r.delta_minus},
          {"n0", r.n0},
          {"dim", r.dim},
          {"reduced_basis", basis},
          {"checks", checks},
          {"probe", r.probe ? json{{"d", r.probe->d}, {"trivial", r.probe->trivial}} : json(nullptr)},
          {"counterexample", r.counterexample ? to_json(*r.counterexample) : json(nullptr)}};
}

json to_json(const grading::Membership& r) {
  return {{"member", r.member}, {"p", r.p.to_string()}, {"q", r.q.to_string()}, {"r", r.r.to_string()}};
}

json to_json(const dynamics::CoverageReport& r) {
  return {{"fraction", r.fraction}, {"cells", r.cells}, {"pairs", r.pairs}, {"seed", r.seed}, {"hits", r.hits}};
}

json to_json(const dynamics::HitReport& r) {
  return {{"hits", bool_list(r.hits)},
          {"window_start", r.window_start ? json(*r.window_start) : json(nullptr)},
          {"lambda_probes", r.lambda_probes},
          {"U", {{"center", to_json(r.U.center)}, {"radius", r.U.radius}}},
          {"V", {{"center", to_json(r.V.center)}, {"radius", r.V.radius}}}};
}

json to_json(const dynamics::TransitivityPair& p) {
  return {{"k", p.k}, {"x", to_json(p.x)}, {"residual_u", p.residual_u}, {"residual_v", p.residual_v}};
}

json to_json(const dynamics::SupercyclicReport& r) {
  return {{"applicable", r.applicable},
          {"reason", r.reason},
          {"ladder", r.ladder},
          {"lambdas", r.lambdas},
          {"coverage", to_json(r.coverage)}};
}

json to_json(const dynamics::VolterraDistance& d) {
  return {{"d", d.d},
          {"f_norm", d.f_norm},
          {"min_ratio", d.min_ratio},
          {"argmin", d.argmin},
          {"adjoint_residual", d.adjoint_residual},
          {"decay_exponent", d.decay_exponent}};
}

json envelope(const std::string& command, const json& params, const json& report) {
  return {{"schema_version", kSchemaVersion}, {"command", command}, {"params", params}, {"report", report}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += "\n";
  char buf[64];
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      if (std::isfinite(row[i])) {
        const auto res = std::to_chars(buf, buf + sizeof buf, row[i]);
        out.append(buf, res.ptr);
      } else {
        out += std::isnan(row[i]) ? "nan" : (row[i] > 0 ? "inf" : "-inf");
      }
    }
    out += "\n";
  }
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write output file '" + path + "'");
  f << text;
  if (!f) throw InputError("failed writing output file '" + path + "'");
}

}  // namespace hclab::io
