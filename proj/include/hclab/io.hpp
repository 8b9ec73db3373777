#pragma once

#include <string>
#include <vector>

#include "hclab/criteria.hpp"
#include "hclab/dynamics.hpp"
#include "hclab/grading.hpp"
#include "hclab/nilpotent.hpp"
#include "hclab/operators.hpp"
#include "json.hpp"

namespace hclab::io {

using nlohmann::json;
using linalg::Index;

/// Version tag carried by every serialized report.
inline constexpr int kSchemaVersion = 1;

json to_json(linalg::Complex z);  // number when real, else [re, im]
json to_json(const linalg::ComplexVector& v);
json to_json(const linalg::ComplexMatrix& m);  // list of rows
json to_json(const mpq_class& q);              // "p/q" string
json to_json(const linalg::RationalVector& v);
json to_json(const linalg::RationalMatrix& m);
json to_json(const linalg::Subspace& s);
json to_json(const grading::GradedVector& x);  // component strings

linalg::Complex complex_from_json(const json& j);
linalg::ComplexVector vector_from_json(const json& j);
linalg::ComplexMatrix matrix_from_json(const json& j);
/// Integers, "p/q" strings or decimal strings.
mpq_class rational_from_json(const json& j);
linalg::RationalVector rational_vector_from_json(const json& j);
linalg::RationalMatrix rational_matrix_from_json(const json& j);

json to_json(const nilpotent::DetMnk& d);
json to_json(const nilpotent::JordanSolution<linalg::Complex>& s);
json to_json(const nilpotent::DiscretePair<linalg::Complex>& p);
json to_json(const nilpotent::TensorApproach& a);
json to_json(const operators::SaanGenerators& g);
json to_json(const criteria::SalasCertificate& c);
json to_json(const criteria::LambdaResult& r);
json to_json(const criteria::EbsPerturbation& p);
json to_json(const criteria::RegionReport& r);
json to_json(const criteria::SymmetryReport& r);
json to_json(const criteria::BSymmetryReport& r);
json to_json(const grading::Independence& r);
json to_json(const grading::N0Report& r);
json to_json(const grading::Membership& r);
json to_json(const dynamics::CoverageReport& r);
json to_json(const dynamics::HitReport& r);
json to_json(const dynamics::TransitivityPair& p);
json to_json(const dynamics::SupercyclicReport& r);
json to_json(const dynamics::VolterraDistance& d);

/// {"schema_version", "command", "params", "report"}.
json envelope(const std::string& command, const json& params, const json& report);
/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump(const json& j);

/// Rows of numbers under a header line, with shortest round-trip formatting.
std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);
/// Writes text to path; InputError when the file cannot be written.
void write_file(const std::string& path, const std::string& text);

}  // namespace hclab::io
