#include <algorithm>
#include <cmath>

#include "hclab/operators.hpp"

namespace hclab::operators {

WeightSequence::WeightSequence(std::vector<Complex> window, Tail tail)
    : N_(static_cast<long>(window.size() / 2)), window_(std::move(window)), tail_(tail) {
  if (window_.size() < 3 || window_.size() % 2 == 0) {
    throw InputError("WeightSequence: window must hold w_{-N}..w_N with N >= 1");
  }
  for (const Complex& w : window_) {
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) throw InputError("WeightSequence: non-finite weight");
  }
  if (tail_.rule == TailRule::Geometric && !(std::abs(tail_.ratio) <= 1.0)) {
    throw InputError("WeightSequence: geometric tail needs |ratio| <= 1");
  }
  if (tail_.rule == TailRule::Constant &&
      !(std::isfinite(std::abs(tail_.plus)) && std::isfinite(std::abs(tail_.minus)))) {
    throw InputError("WeightSequence: non-finite tail constant");
  }
}

WeightSequence WeightSequence::from_function(long N, const std::function<Complex(long)>& f, Tail tail) {
  if (N < 1) throw InputError("WeightSequence: window size N must be at least 1");
  std::vector<Complex> window;
  window.reserve(static_cast<std::size_t>(2 * N + 1));
  for (long n = -N; n <= N; ++n) window.push_back(f(n));
  return WeightSequence(std::move(window), tail);
}

WeightSequence WeightSequence::constant(Complex c, long N) {
  return from_function(N, [c](long) { return c; }, Tail::constant(c, c));
}

WeightSequence WeightSequence::genshi_hypercyclic(double c, long m0, long N) {
  if (!(c > 0.0) || m0 < 0) throw InputError("genshi_hypercyclic: need c > 0 and m0 >= 0");
  if (N <= m0) N = m0 + 1;
  auto f = [c, m0](long n) -> Complex {
    if (n > m0) return c;
    if (n < -m0) return 1.0 / c;
    return 1.0;
  };
  return from_function(N, f, Tail::constant(c, 1.0 / c));
}

WeightSequence WeightSequence::genshi_supercyclic(double c, long m0, long N) {
  if (!(c > 0.0) || m0 < 0) throw InputError("genshi_supercyclic: need c > 0 and m0 >= 0");
  if (N <= m0) N = m0 + 1;
  auto f = [c, m0](long n) -> Complex {
    if (n > m0) return c;
    if (n < -m0) return c / 2.0;
    return 1.0;
  };
  return from_function(N, f, Tail::constant(c, c / 2.0));
}

WeightSequence WeightSequence::symmetric_decay(double base, long N) {
  if (!(base >= 1.0)) throw InputError("symmetric_decay: base must be at least 1");
  return from_function(N, [base](long n) -> Complex { return std::pow(base, -static_cast<double>(std::labs(n))); },
                       Tail::geometric(1.0 / base));
}

WeightSequence WeightSequence::named(const std::string& name, double c, long m0, long N) {
  if (name == "genshi-hc") return genshi_hypercyclic(c, m0, N);
  if (name == "genshi-sc") return genshi_supercyclic(c, m0, N);
  if (name == "constant") return constant(c, std::max(1L, N));
  if (name == "symmetric") return symmetric_decay(c, std::max(1L, N));
  throw InputError("unknown weight family '" + name + "'");
}

Complex WeightSequence::at(long n) const {
  if (n >= -N_ && n <= N_) return window_[static_cast<std::size_t>(n + N_)];
  switch (tail_.rule) {
    case TailRule::Constant:
      return n > N_ ? tail_.plus : tail_.minus;
    case TailRule::Geometric: {
      const long j = n > N_ ? n - N_ : -N_ - n;
      const Complex edge = n > N_ ? window_.back() : window_.front();
      return edge * std::pow(tail_.ratio, static_cast<double>(j));
    }
    case TailRule::Zero:
      break;
  }
  return 0.0;
}

double WeightSequence::log_abs_at(long n) const {
  if (tail_.rule == TailRule::Geometric && (n > N_ || n < -N_)) {
    const long j = n > N_ ? n - N_ : -N_ - n;
    const Complex edge = n > N_ ? window_.back() : window_.front();
    return std::log(std::abs(edge)) + static_cast<double>(j) * std::log(std::abs(tail_.ratio));
  }
  return std::log(std::abs(at(n)));
}

double WeightSequence::sup() const {
  double s = 0.0;
  for (const Complex& w : window_) s = std::max(s, std::abs(w));
  if (tail_.rule == TailRule::Constant) s = std::max({s, std::abs(tail_.plus), std::abs(tail_.minus)});
  return s;
}

std::optional<long> WeightSequence::first_zero() const {
  for (long n = -N_; n <= N_; ++n) {
    if (at(n) == Complex(0.0)) return n;
  }
  switch (tail_.rule) {
    case TailRule::Zero:
      return N_ + 1;
    case TailRule::Constant:
      if (tail_.plus == Complex(0.0)) return N_ + 1;
      if (tail_.minus == Complex(0.0)) return -N_ - 1;
      break;
    case TailRule::Geometric:
      if (tail_.ratio == 0.0) return N_ + 1;
      break;
  }
  return std::nullopt;
}

WeightSequence WeightSequence::moduli() const {
  std::vector<Complex> window;
  for (const Complex& w : window_) window.push_back(std::abs(w));
  Tail t = tail_;
  t.plus = std::abs(t.plus);
  t.minus = std::abs(t.minus);
  t.ratio = std::abs(t.ratio);
  return WeightSequence(std::move(window), t);
}

namespace {

nlohmann::json complex_json(Complex z) {
  if (z.imag() == 0.0) return z.real();
  return nlohmann::json::array({z.real(), z.imag()});
}

Complex complex_from(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw InputError("weight entry must be a number or a [re, im] pair");
}

}  // namespace

nlohmann::json WeightSequence::to_json() const {
  nlohmann::json window = nlohmann::json::array();
  for (const Complex& w : window_) window.push_back(complex_json(w));
  nlohmann::json tail;
  switch (tail_.rule) {
    case TailRule::Constant:
      tail = {{"rule", "constant"}, {"plus", complex_json(tail_.plus)}, {"minus", complex_json(tail_.minus)}};
      break;
    case TailRule::Geometric:
      tail = {{"rule", "geometric"}, {"ratio", tail_.ratio}};
      break;
    case TailRule::Zero:
      tail = {{"rule", "zero"}};
      break;
  }
  return {{"window", window}, {"tail", tail}};
}

WeightSequence WeightSequence::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("window") || !j["window"].is_array()) {
    throw InputError("weight JSON needs a \"window\" array");
  }
  std::vector<Complex> window;
  for (const auto& e : j["window"]) window.push_back(complex_from(e));
  Tail tail;
  if (j.contains("tail")) {
    const auto& t = j["tail"];
    const std::string rule = t.value("rule", "zero");
    if (rule == "constant") {
      tail = Tail::constant(complex_from(t.at("plus")), complex_from(t.at("minus")));
    } else if (rule == "geometric") {
      tail = Tail::geometric(t.at("ratio").get<double>());
    } else if (rule == "zero") {
      tail = Tail::zero();
    } else {
      throw InputError("unknown tail rule '" + rule + "'");
    }
  }
  return WeightSequence(std::move(window), tail);
}

WeightSequence dual_weight(const WeightSequence& w) {
  const long N = w.N() + 1;
  Tail t = w.tail();
  if (t.rule == TailRule::Constant) std::swap(t.plus, t.minus);
  return WeightSequence::from_function(N, [&w](long n) { return w.at(1 - n); }, t);
}

bool same_weights(const WeightSequence& a, const WeightSequence& b, double tol) {
  const long reach = std::max(a.N(), b.N()) + 2;
  for (long n = -reach; n <= reach; ++n) {
    if (std::abs(a.at(n) - b.at(n)) > tol) return false;
  }
  const Tail& ta = a.tail();
  const Tail& tb = b.tail();
  if (ta.rule != tb.rule) return false;
  switch (ta.rule) {
    case TailRule::Constant:
      return std::abs(ta.plus - tb.plus) <= tol && std::abs(ta.minus - tb.minus) <= tol;
    case TailRule::Geometric:
      return std::abs(ta.ratio - tb.ratio) <= tol;
    case TailRule::Zero:
      return true;
  }
  return true;
}

}  // namespace hclab::operators
