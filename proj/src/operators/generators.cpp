#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "hclab/operators.hpp"

namespace hclab::operators {

namespace {

void compositions(unsigned k, unsigned d, std::vector<unsigned>& cur, std::size_t pos,
                  std::vector<std::vector<unsigned>>& out, std::size_t count) {
  if (out.size() >= count) return;
  if (pos + 1 == k) {
    cur[pos] = d;
    out.push_back(cur);
    return;
  }
  for (unsigned first = d + 1; first-- > 0;) {
    cur[pos] = first;
    compositions(k, d - first, cur, pos + 1, out, count);
    if (out.size() >= count) return;
  }
}

unsigned total(const std::vector<unsigned>& m) { return std::accumulate(m.begin(), m.end(), 0u); }

}  // namespace

std::vector<std::vector<unsigned>> graded_lex(unsigned k, std::size_t count) {
  if (k == 0) throw InputError("graded_lex: k must be at least 1");
  std::vector<std::vector<unsigned>> out;
  out.reserve(count);
  std::vector<unsigned> cur(k, 0);
  for (unsigned d = 0; out.size() < count; ++d) compositions(k, d, cur, 0, out, count);
  return out;
}

SaanGenerators saan_generators(unsigned k, std::size_t ntrunc, const std::function<mpq_class(unsigned)>& alpha_in,
                               const std::vector<std::vector<unsigned>>& enumeration) {
  if (k == 0) throw InputError("saan_generators: k must be at least 1");
  if (ntrunc == 0 && enumeration.empty()) throw InputError("saan_generators: empty truncation");

  SaanGenerators g;
  g.k = k;
  g.multi = enumeration.empty() ? graded_lex(k, ntrunc) : enumeration;
  const std::size_t n = g.multi.size();

  std::map<std::vector<unsigned>, std::size_t> phi;
  for (std::size_t i = 0; i < n; ++i) {
    if (g.multi[i].size() != k) throw InputError("saan_generators: multi-index of wrong length");
    if (!phi.emplace(g.multi[i], i).second) throw InputError("saan_generators: enumeration repeats an index");
  }
  for (const auto& m : g.multi) {
    for (unsigned j = 0; j < k; ++j) {
      if (m[j] == 0) continue;
      std::vector<unsigned> prev = m;
      --prev[j];
      if (!phi.count(prev)) throw InputError("saan_generators: enumeration not closed under m -> m - e_j");
    }
  }

  auto alpha = alpha_in ? alpha_in : [](unsigned m) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(m) * (m + 1) / 2);
    return mpq_class(p);
  };
  unsigned max_deg = 0;
  for (const auto& m : g.multi) max_deg = std::max(max_deg, total(m));
  std::vector<mpq_class> a(max_deg + 1);
  for (unsigned m = 0; m <= max_deg; ++m) {
    a[m] = alpha(m);
    if (sgn(a[m]) <= 0) throw PreconditionError("saan_generators: alpha must be positive");
  }
  for (unsigned m = 0; m < max_deg; ++m) {
    mpz_class two_m;
    mpz_ui_pow_ui(two_m.get_mpz_t(), 2, m);
    if (a[m + 1] < two_m * a[m]) {
      throw PreconditionError("saan_generators: alpha violates alpha_{m+1} >= 2^m alpha_m at m = " +
                              std::to_string(m));
    }
  }

  g.coefficient_bound_slack = std::numeric_limits<double>::infinity();
  g.l1_norm = 0.0;
  for (unsigned j = 0; j < k; ++j) {
    RationalMatrix aj(n, n);
    for (std::size_t col = 0; col < n; ++col) {
      const auto& m = g.multi[col];
      if (m[j] == 0) continue;
      std::vector<unsigned> prev = m;
      --prev[j];
      const unsigned deg = total(m);
      const mpq_class c = a[deg - 1] / a[deg];
      aj(phi.at(prev), col) = c;
      g.coefficient_bound_slack = std::min(g.coefficient_bound_slack, std::ldexp(1.0, -static_cast<int>(deg - 1)) - c.get_d());
    }
    ComplexMatrix ac = aj.to_complex();
    g.l1_norm = std::max(g.l1_norm, ac.cwiseAbs().colwise().sum().maxCoeff());
    g.exact.push_back(std::move(aj));
    g.A.push_back(std::move(ac));
  }
  g.esti_bound = 0.0;
  for (const auto& m : g.multi) g.esti_bound += std::ldexp(1.0, -static_cast<int>(total(m)));
  return g;
}

}  // namespace hclab::operators
