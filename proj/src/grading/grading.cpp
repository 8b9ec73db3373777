#include <algorithm>
#include <map>

#include "hclab/grading.hpp"

namespace hclab::grading {

using linalg::RationalMatrix;
using linalg::RationalVector;

bool is_zero(const GradedVector& x) {
  return std::all_of(x.begin(), x.end(), [](const RationalFunction& r) { return r.is_zero(); });
}

long delta(const GradedVector& x) {
  long d = kDegNegInf;
  for (const RationalFunction& r : x) d = std::max(d, deg(r));
  return d;
}

GradedVector scale(const GradedVector& x, const RationalFunction& r) {
  GradedVector out;
  out.reserve(x.size());
  for (const RationalFunction& c : x) out.push_back(c * r);
  return out;
}

GradedVector add(const GradedVector& a, const GradedVector& b) {
  if (a.size() != b.size()) throw InputError("graded vectors have different component counts");
  GradedVector out;
  out.reserve(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) out.push_back(a[j] + b[j]);
  return out;
}

std::string to_string(const GradedVector& x) {
  std::string s = "(";
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j) s += ", ";
    s += x[j].to_string();
  }
  return s + ")";
}

namespace {

std::size_t components(const std::vector<GradedVector>& vs) {
  if (vs.empty()) return 0;
  const std::size_t k = vs.front().size();
  for (const GradedVector& v : vs) {
    if (v.size() != k) throw InputError("graded vectors have different component counts");
  }
  return k;
}

Polynomial lcm(const Polynomial& a, const Polynomial& b) { return (a * b).divmod(linalg::gcd(a, b)).first.monic(); }

/// Columns = coefficient vectors of the vectors after multiplying by a common denominator.
RationalMatrix flatten(const std::vector<GradedVector>& vs) {
  const std::size_t k = components(vs);
  Polynomial common(1L);
  for (const GradedVector& v : vs) {
    for (const RationalFunction& r : v) common = lcm(common, r.den());
  }
  std::vector<std::vector<Polynomial>> polys;
  int top = 0;
  for (const GradedVector& v : vs) {
    std::vector<Polynomial> row;
    for (const RationalFunction& r : v) {
      row.push_back(r.num() * common.divmod(r.den()).first);
      top = std::max(top, row.back().degree());
    }
    polys.push_back(std::move(row));
  }
  const std::size_t slots = static_cast<std::size_t>(top) + 1;
  RationalMatrix m(k * slots, vs.size());
  for (std::size_t c = 0; c < vs.size(); ++c) {
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t e = 0; e < slots; ++e) m(j * slots + e, c) = polys[c][j].coeff(static_cast<unsigned>(e));
    }
  }
  return m;
}

RationalVector leading_vector(const GradedVector& x, long level) {
  RationalVector v;
  v.reserve(x.size());
  for (const RationalFunction& r : x) v.push_back(deg(r) == level ? r.leading() : mpq_class(0));
  return v;
}

GradedVector combine(const std::vector<GradedVector>& vs, const std::vector<std::size_t>& idx,
                     const RationalVector& coeffs, std::size_t k) {
  GradedVector out(k);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (sgn(coeffs[i]) == 0) continue;
    out = add(out, scale(vs[idx[i]], RationalFunction(coeffs[i])));
  }
  return out;
}

/// Reduces a spanning set to a Q-basis with independent leading vectors on every delta level.
std::vector<GradedVector> valuation_reduce(std::vector<GradedVector> basis, std::size_t k) {
  basis.erase(std::remove_if(basis.begin(), basis.end(), [](const GradedVector& x) { return is_zero(x); }),
              basis.end());
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<long, std::vector<std::size_t>> levels;
    for (std::size_t i = 0; i < basis.size(); ++i) levels[delta(basis[i])].push_back(i);
    for (const auto& [level, idx] : levels) {
      std::vector<RationalVector> leads;
      for (std::size_t i : idx) leads.push_back(leading_vector(basis[i], level));
      const std::vector<RationalVector> ker = RationalMatrix::from_columns(leads, k).kernel_basis();
      if (ker.empty()) continue;
      const RationalVector& c = ker.front();
      std::size_t pick = idx.size();
      for (std::size_t i = idx.size(); i-- > 0;) {
        if (sgn(c[i]) != 0) {
          pick = i;
          break;
        }
      }
      GradedVector replacement = combine(basis, idx, c, k);
      if (is_zero(replacement)) {
        basis.erase(basis.begin() + static_cast<long>(idx[pick]));
      } else {
        basis[idx[pick]] = std::move(replacement);
      }
      changed = true;
      break;
    }
  }
  return basis;
}

GradedVector monomial_times(const GradedVector& x, long d) {
  return scale(x, RationalFunction(Polynomial::monomial(static_cast<unsigned>(d))));
}

}  // namespace

std::size_t rational_rank(const std::vector<GradedVector>& vectors) {
  if (vectors.empty()) return 0;
  return flatten(vectors).rank();
}

Independence t_independent(const std::vector<GradedVector>& vectors) {
  const std::size_t k = components(vectors);
  const std::size_t m = vectors.size();
  Independence out;
  if (m == 0) return out;

  // Gauss-Jordan over Q(z) on the k x m matrix whose columns are the vectors.
  std::vector<std::vector<RationalFunction>> a(k, std::vector<RationalFunction>(m));
  for (std::size_t c = 0; c < m; ++c) {
    for (std::size_t r = 0; r < k; ++r) a[r][c] = vectors[c][r];
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m && row < k; ++col) {
    std::size_t p = row;
    while (p < k && a[p][col].is_zero()) ++p;
    if (p == k) continue;
    std::swap(a[p], a[row]);
    const RationalFunction inv = RationalFunction(1L) / a[row][col];
    for (std::size_t c = 0; c < m; ++c) a[row][c] = a[row][c] * inv;
    for (std::size_t r = 0; r < k; ++r) {
      if (r == row || a[r][col].is_zero()) continue;
      const RationalFunction f = a[r][col];
      for (std::size_t c = 0; c < m; ++c) a[r][c] = a[r][c] - f * a[row][c];
    }
    pivot_cols.push_back(col);
    ++row;
  }
  out.rank = pivot_cols.size();
  out.independent = out.rank == m;
  if (out.independent) return out;

  std::size_t free_col = 0;
  while (std::find(pivot_cols.begin(), pivot_cols.end(), free_col) != pivot_cols.end()) ++free_col;
  std::vector<RationalFunction> coeffs(m, RationalFunction());
  coeffs[free_col] = RationalFunction(1L);
  for (std::size_t i = 0; i < pivot_cols.size(); ++i) coeffs[pivot_cols[i]] = -a[i][free_col];

  Polynomial common(1L);
  for (const RationalFunction& c : coeffs) common = lcm(common, c.den());
  Polynomial content;
  for (const RationalFunction& c : coeffs) {
    out.relation.push_back(c.num() * common.divmod(c.den()).first);
    content = linalg::gcd(content, out.relation.back());
  }
  mpq_class lead = 0;
  for (Polynomial& p : out.relation) {
    p = p.divmod(content).first;
    if (sgn(lead) == 0 && !p.is_zero()) lead = p.leading();
  }
  for (Polynomial& p : out.relation) p = p * Polynomial(mpq_class(1) / lead);
  return out;
}

N0Report n0_bound(const std::vector<GradedVector>& generators) {
  const std::size_t k = components(generators);
  N0Report rep;
  rep.reduced_basis = valuation_reduce(generators, k);
  if (rep.reduced_basis.empty()) throw DomainError("n0_bound: L = {0}");
  rep.dim = rep.reduced_basis.size();
  rep.delta_plus = delta(rep.reduced_basis.front());
  rep.delta_minus = rep.delta_plus;
  for (const GradedVector& b : rep.reduced_basis) {
    rep.delta_plus = std::max(rep.delta_plus, delta(b));
    rep.delta_minus = std::min(rep.delta_minus, delta(b));
  }
  rep.n0 = rep.delta_plus - rep.delta_minus + 1;

  auto check = [&](long d, std::optional<GradedVector>* witness) {
    std::vector<GradedVector> all = rep.reduced_basis;
    for (const GradedVector& b : rep.reduced_basis) all.push_back(monomial_times(b, d));
    const RationalMatrix m = flatten(all);
    const std::vector<RationalVector> ker = m.kernel_basis();
    if (!ker.empty() && witness) {
      RationalVector c(ker.front().begin() + static_cast<long>(rep.dim), ker.front().end());
      std::vector<std::size_t> idx(rep.dim);
      for (std::size_t i = 0; i < rep.dim; ++i) idx[i] = i;
      *witness = combine(rep.reduced_basis, idx, c, k);
    }
    return DegreeCheck{d, ker.empty()};
  };
  for (long d = rep.n0; d <= rep.n0 + 3; ++d) rep.checks.push_back(check(d, nullptr));
  if (rep.n0 >= 1) {
    std::optional<GradedVector> witness;
    rep.probe = check(rep.n0 - 1, &witness);
    rep.counterexample = witness;
  }
  return rep;
}

Membership f_t_x_member(const GradedVector& x, const GradedVector& y) {
  if (x.size() != y.size()) throw InputError("f_t_x_member: component counts differ");
  if (is_zero(x)) throw DomainError("f_t_x_member: x must be nonzero");
  Membership out;
  std::size_t j = 0;
  while (x[j].is_zero()) ++j;
  const RationalFunction r = y[j] / x[j];
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] * r == y[i])) return out;
  }
  out.member = true;
  out.r = r;
  out.p = r.den();
  out.q = r.num();
  return out;
}

}  // namespace hclab::grading
