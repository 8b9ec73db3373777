#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include <Eigen/SparseCore>

#include "hclab/dynamics.hpp"

namespace hclab::dynamics {

namespace {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

ComplexVector random_box(std::mt19937_64& rng, Index d, double radius) {
  ComplexVector v(d);
  for (Index i = 0; i < d; ++i) v(i) = radius * (2.0 * unit(rng) - 1.0);
  return v;
}

class Net {
 public:
  explicit Net(const NetSpec& spec) : spec_(spec), hits_(static_cast<std::size_t>(spec.cells) * spec.cells, 0) {}

  void mark(double a, double b) {
    const auto ia = cell(a);
    const auto ib = cell(b);
    if (ia < 0 || ib < 0) return;
    hits_[static_cast<std::size_t>(ia) * spec_.cells + static_cast<std::size_t>(ib)] = 1;
  }

  void merge(const Net& other) {
    for (std::size_t i = 0; i < hits_.size(); ++i) hits_[i] |= other.hits_[i];
  }

  CoverageReport report(std::size_t pairs, std::uint64_t seed) const {
    CoverageReport r;
    r.hits = hits_;
    r.cells = spec_.cells;
    r.pairs = pairs;
    r.seed = seed;
    const auto hit = std::count(hits_.begin(), hits_.end(), std::uint8_t{1});
    r.fraction = static_cast<double>(hit) / static_cast<double>(hits_.size());
    return r;
  }

 private:
  long cell(double a) const {
    const double r = spec_.radius;
    if (!(a >= -r && a <= r)) return -1;
    const auto c = static_cast<long>(std::floor((a + r) / (2.0 * r) * spec_.cells));
    return std::min<long>(c, static_cast<long>(spec_.cells) - 1);
  }

  NetSpec spec_;
  std::vector<std::uint8_t> hits_;
};

void validate(const NetSpec& net, Index d) {
  if (net.cells == 0 || net.base_samples == 0) throw InputError("net: empty net");
  if (!(net.radius > 0.0)) throw InputError("net: radius must be positive");
  if (net.coord < 0 || net.coord >= d) throw InputError("net: projection coordinate out of range");
}

}  // namespace

CoverageReport u3_density(const PowerFamily& family, const NetSpec& net, unsigned horizon, std::uint64_t seed,
                          unsigned threads) {
  const Index d = family.T.rows();
  if (family.T.cols() != d || d == 0) throw InputError("u3_density: operator must be square and nonempty");
  validate(net, d);
  const Eigen::SparseMatrix<Complex> t = family.T.sparseView();
  threads = std::max(1u, std::min(threads, net.base_samples));

  std::vector<Net> partial(threads, Net(net));
  std::vector<std::size_t> pair_counts(threads, 0);
  auto work = [&](unsigned w) {
    for (unsigned s = w; s < net.base_samples; s += threads) {
      std::mt19937_64 rng = stream(seed, s);
      const ComplexVector x = random_box(rng, d, net.radius);
      const double first = x(net.coord).real();
      ComplexVector y = x;
      for (unsigned n = 0; n <= horizon; ++n) {
        const double sigma = 2.0 * unit(rng) - 1.0;
        double second = y(net.coord).real();
        if (family.projective) {
          const double ny = y.norm();
          if (ny == 0.0) break;
          second *= net.radius * sigma / ny;
        }
        partial[w].mark(first, second);
        ++pair_counts[w];
        y = t * y;
        if (!y.allFinite()) break;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < threads; ++w) pool.emplace_back(work, w);
  work(0);
  for (std::thread& th : pool) th.join();

  Net total(net);
  std::size_t pairs = 0;
  for (unsigned w = 0; w < threads; ++w) {
    total.merge(partial[w]);
    pairs += pair_counts[w];
  }
  return total.report(pairs, seed);
}

SupercyclicReport supercyclic_probe(const ComplexMatrix& t, const NetSpec& net, unsigned horizon, std::uint64_t seed) {
  const Index d = t.rows();
  if (t.cols() != d || d == 0) throw InputError("supercyclic_probe: operator must be square and nonempty");
  validate(net, d);
  SupercyclicReport rep;
  const double norm = std::max(t.cwiseAbs().colwise().sum().maxCoeff(), 1e-300);

  std::vector<ComplexMatrix> powers{ComplexMatrix::Identity(d, d)};
  std::vector<linalg::Subspace> kernels{linalg::Subspace(d)};
  for (Index n = 1; n <= d; ++n) {
    powers.push_back(powers.back() * t);
    const double scale = std::max(std::pow(norm, static_cast<double>(n)), 1e-300);
    kernels.push_back(linalg::kernel_and_image_scaled(powers.back(), linalg::kDefaultRankTol, scale).kernel);
    rep.ladder.push_back(kernels.back().dim());
  }
  if (rep.ladder.front() == 0) {
    rep.reason = "ker T = {0}: the kernel ladder is trivial";
    return rep;
  }
  if (rep.ladder.back() < d) {
    rep.reason = "the kernels of the powers do not exhaust the space";
    return rep;
  }
  rep.applicable = true;
  rep.reason = "generalized kernel spans the space";

  const unsigned K = std::min<unsigned>(horizon, static_cast<unsigned>(d - 1));
  std::mt19937_64 base_rng = stream(seed, 0);
  std::vector<ComplexVector> seeds;
  for (unsigned i = 0; i < net.base_samples; ++i) seeds.push_back(random_box(base_rng, d, net.radius));

  Net cells(net);
  std::size_t pairs = 0;
  for (unsigned k = 1; k <= K; ++k) {
    Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> cod(powers[k]);
    cod.setThreshold(linalg::kDefaultRankTol);
    std::vector<ComplexVector> pre;
    double biggest = 1.0;
    for (const ComplexVector& b : seeds) {
      pre.push_back(cod.solve(b));
      biggest = std::max(biggest, pre.back().norm());
    }
    const double lambda = std::ldexp(biggest, static_cast<int>(k));
    rep.lambdas.push_back(lambda);
    const ComplexMatrix& kb = kernels[k].basis();
    std::mt19937_64 rng = stream(seed, k);
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      const ComplexVector r = random_box(rng, d, net.radius);
      const ComplexVector c = kb * (kb.adjoint() * r);
      const ComplexVector x = c + pre[i] / lambda;
      const ComplexVector y = lambda * (powers[k] * x);
      cells.mark(x(net.coord).real(), y(net.coord).real());
      ++pairs;
    }
  }
  rep.coverage = cells.report(pairs, seed);
  return rep;
}

}  // namespace hclab::dynamics
