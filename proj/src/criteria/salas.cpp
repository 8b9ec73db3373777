#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "hclab/criteria.hpp"

namespace hclab::criteria {

std::string to_string(SalasVerdict v) {
  switch (v) {
    case SalasVerdict::Satisfied:
      return "satisfied";
    case SalasVerdict::ViolatedAtHorizon:
      return "violated-at-horizon";
    case SalasVerdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

namespace {

/// Neumaier-compensated running sum.
class Accumulator {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

SalasCertificate salas(const WeightSequence& w, long m_max, long n_max, double tol, SalasKind kind) {
  if (m_max < 8 || n_max < 8) throw InputError("salas: horizons m_max and n_max must be at least 8");
  if (!(tol > 0.0)) throw InputError("salas: tol must be positive");
  SalasCertificate cert;
  cert.kind = kind;
  cert.m_max = m_max;
  cert.n_max = n_max;
  cert.tol = tol;
  if (w.first_zero()) {
    cert.verdict = SalasVerdict::ViolatedAtHorizon;
    cert.reason = "range not dense";
    return cert;
  }

  const double log_tol = std::log(tol);
  const long half = n_max / 2;
  bool all_small = true;
  std::optional<long> stalled;
  for (long m = 0; m <= m_max; ++m) {
    std::vector<double> trace(static_cast<std::size_t>(n_max));
    Accumulator left;   // log w~(m-n+1, m)
    Accumulator right;  // log w~(m+1, m+n)
    double min_full = std::numeric_limits<double>::infinity();
    double min_half = min_full;
    for (long n = 1; n <= n_max; ++n) {
      left.add(w.log_abs_at(m - n + 1));
      right.add(w.log_abs_at(m + n));
      const double value = kind == SalasKind::Hypercyclic ? std::max(left.value(), -right.value())
                                                          : left.value() - right.value();
      trace[static_cast<std::size_t>(n - 1)] = value;
      min_full = std::min(min_full, value);
      if (n <= half) min_half = min_full;
    }
    cert.log_traces.push_back(std::move(trace));
    cert.log_min.push_back(min_full);
    cert.log_min_half.push_back(min_half);
    const bool decreasing = min_full < min_half;
    if (!(min_full < log_tol && decreasing)) all_small = false;
    if (min_full >= log_tol && !decreasing && !stalled) stalled = m;
  }

  if (all_small) {
    cert.verdict = SalasVerdict::Satisfied;
    cert.reason = "every trace minimum is below tol and decreasing";
  } else if (stalled) {
    cert.verdict = SalasVerdict::ViolatedAtHorizon;
    cert.reason = "trace minimum at m = " + std::to_string(*stalled) + " stays above tol";
  } else {
    cert.verdict = SalasVerdict::Inconclusive;
    cert.reason = "some trace is still decreasing but above tol, or below tol without decreasing";
  }
  return cert;
}

}  // namespace

SalasCertificate salas_hypercyclic(const WeightSequence& w, long m_max, long n_max, double tol) {
  return salas(w, m_max, n_max, tol, SalasKind::Hypercyclic);
}

SalasCertificate salas_supercyclic(const WeightSequence& w, long m_max, long n_max, double tol) {
  return salas(w, m_max, n_max, tol, SalasKind::Supercyclic);
}

}  // namespace hclab::criteria
