#include <cmath>
#include <random>

#include "hclab/criteria.hpp"

namespace hclab::criteria {

std::string to_string(RegionTransform t) {
  switch (t) {
    case RegionTransform::Shift1:
      return "shift1";
    case RegionTransform::Exponential:
      return "exp";
    case RegionTransform::Identity:
      return "identity";
  }
  return "identity";
}

std::string to_string(RegionVerdict v) {
  switch (v) {
    case RegionVerdict::IntersectsCircle:
      return "intersects-circle";
    case RegionVerdict::InsideDisk:
      return "inside-disk";
    case RegionVerdict::OutsideClosedDisk:
      return "outside-closed-disk";
    case RegionVerdict::Indeterminate:
      return "indeterminate";
  }
  return "indeterminate";
}

RegionTransform parse_transform(const std::string& name) {
  if (name == "shift1" || name == "shift-by-1") return RegionTransform::Shift1;
  if (name == "exp" || name == "exponential") return RegionTransform::Exponential;
  if (name == "identity" || name == "id") return RegionTransform::Identity;
  throw InputError("unknown transform '" + name + "' (expected shift1, exp or identity)");
}

namespace {

bool in_U(const mpq_class& a, const mpq_class& b) { return a < 0 && b < a + 1 && b > -a - 1; }

/// |a| < 1 - sqrt(1 - b^2) with 0 < b < 1, decided without square roots.
bool in_V(const mpq_class& a, const mpq_class& b) {
  if (!(b > 0 && b < 1)) return false;
  const mpq_class rest = 1 - abs(a);
  return rest > 0 && 1 - b * b < rest * rest;
}

Complex apply(RegionTransform t, Complex z) {
  switch (t) {
    case RegionTransform::Shift1:
      return 1.0 + z;
    case RegionTransform::Exponential:
      return std::exp(z);
    case RegionTransform::Identity:
      break;
  }
  return z;
}

/// Uniform double in [0, 1) from the top 53 bits; independent of the standard library's distributions.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct Certificate {
  RegionVerdict verdict;
  std::string statement;
  std::vector<Complex> witnesses;
};

std::optional<Certificate> exact_certificate(const RegionPredicate& region, RegionTransform t) {
  if (region.name == "U") {
    switch (t) {
      case RegionTransform::Shift1: {
        const mpq_class a(-1, 5), b(3, 5);
        const mpq_class re = 1 + a;
        if (in_U(a, b) && re * re + b * b == 1) {
          return Certificate{RegionVerdict::IntersectsCircle,
                             "u = -1/5 + 3/5 i lies in U and |1 + u|^2 = 16/25 + 9/25 = 1", {Complex(-0.2, 0.6)}};
        }
        break;
      }
      case RegionTransform::Exponential:
        return Certificate{RegionVerdict::InsideDisk,
                           "the vertices -1, i, -i have real part <= 0, so Re z < 0 on the open triangle and "
                           "|e^z| = e^{Re z} < 1",
                           {}};
      case RegionTransform::Identity:
        return Certificate{RegionVerdict::InsideDisk,
                           "the vertices -1, i, -i lie on the unit circle, so the open triangle lies in the open disk",
                           {}};
    }
  }
  if (region.name == "V") {
    switch (t) {
      case RegionTransform::Shift1:
        return Certificate{RegionVerdict::OutsideClosedDisk,
                           "1 - |a| > sqrt(1 - b^2) >= 0 gives (1 + a)^2 >= (1 - |a|)^2 > 1 - b^2, "
                           "so |1 + a + bi|^2 > 1",
                           {}};
      case RegionTransform::Exponential: {
        const mpq_class a(0), b(1, 2);
        if (in_V(a, b)) {
          return Certificate{RegionVerdict::IntersectsCircle, "z = i/2 lies in V and |e^{i/2}| = e^0 = 1",
                             {Complex(0.0, 0.5)}};
        }
        break;
      }
      case RegionTransform::Identity: {
        const mpq_class a(7, 25), b(24, 25);
        if (in_V(a, b) && a * a + b * b == 1) {
          return Certificate{RegionVerdict::IntersectsCircle,
                             "z = 7/25 + 24/25 i lies in V and |z|^2 = 49/625 + 576/625 = 1", {Complex(0.28, 0.96)}};
        }
        break;
      }
    }
  }
  if (region.name.rfind("disk", 0) == 0 && t != RegionTransform::Exponential) {
    const Complex c = apply(t, Complex(0.5 * (region.re_min + region.re_max), 0.5 * (region.im_min + region.im_max)));
    const double r = 0.5 * (region.re_max - region.re_min);
    const double m = std::abs(c);
    if (m + r <= 1.0) return Certificate{RegionVerdict::InsideDisk, "|center| + radius <= 1", {}};
    if (m - r > 1.0) return Certificate{RegionVerdict::OutsideClosedDisk, "|center| - radius > 1", {}};
    if (m > 0.0 && std::abs(m - 1.0) < r) {
      const Complex on_circle = c / m;
      const Complex pre = t == RegionTransform::Shift1 ? on_circle - 1.0 : on_circle;
      return Certificate{RegionVerdict::IntersectsCircle, "the point of the circle nearest the center lies in the disk",
                         {pre}};
    }
  }
  return std::nullopt;
}

}  // namespace

RegionPredicate region_U() {
  RegionPredicate r;
  r.name = "U";
  r.contains_exact = in_U;
  r.contains = [](Complex z) { return z.real() < 0.0 && z.imag() < z.real() + 1.0 && z.imag() > -z.real() - 1.0; };
  r.re_min = -1.0;
  r.re_max = 0.0;
  r.im_min = -1.0;
  r.im_max = 1.0;
  return r;
}

RegionPredicate region_V() {
  RegionPredicate r;
  r.name = "V";
  r.contains_exact = in_V;
  r.contains = [](Complex z) {
    const double a = z.real();
    const double b = z.imag();
    return b > 0.0 && b < 1.0 && std::abs(a) < 1.0 - std::sqrt(1.0 - b * b);
  };
  r.re_min = -1.0;
  r.re_max = 1.0;
  r.im_min = 0.0;
  r.im_max = 1.0;
  return r;
}

RegionPredicate region_disk(Complex center, double radius) {
  if (!(radius > 0.0)) throw InputError("region_disk: radius must be positive");
  RegionPredicate r;
  r.name = "disk";
  r.contains = [center, radius](Complex z) { return std::abs(z - center) < radius; };
  r.re_min = center.real() - radius;
  r.re_max = center.real() + radius;
  r.im_min = center.imag() - radius;
  r.im_max = center.imag() + radius;
  return r;
}

RegionPredicate builtin_region(const std::string& name) {
  if (name == "U") return region_U();
  if (name == "V") return region_V();
  throw InputError("unknown builtin region '" + name + "' (expected U or V)");
}

RegionReport gs_region_verdict(const RegionPredicate& region, RegionTransform transform, std::size_t samples,
                               std::uint64_t seed) {
  if (samples < 10000) throw PreconditionError("gs_region_verdict: at least 10^4 samples are required");
  RegionReport rep;
  rep.samples = samples;
  rep.seed = seed;

  std::mt19937_64 rng(seed);
  std::optional<Complex> first_inside;
  std::optional<Complex> first_outside;
  std::size_t on_circle = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double a = region.re_min + (region.re_max - region.re_min) * unit(rng);
    const double b = region.im_min + (region.im_max - region.im_min) * unit(rng);
    const Complex z(a, b);
    if (!region.contains(z)) continue;
    ++rep.in_region;
    const double m = std::abs(apply(transform, z));
    if (m < 1.0) {
      ++rep.image_inside;
      if (!first_inside) first_inside = z;
    } else if (m > 1.0) {
      ++rep.image_outside;
      if (!first_outside) first_outside = z;
    } else {
      ++on_circle;
    }
  }

  const bool crossing = (rep.image_inside > 0 && rep.image_outside > 0) || on_circle > 0;
  const std::optional<Certificate> cert = exact_certificate(region, transform);
  if (cert) {
    rep.verdict = cert->verdict;
    rep.exact = true;
    rep.certificate = cert->statement;
    rep.witnesses = cert->witnesses;
    switch (cert->verdict) {
      case RegionVerdict::IntersectsCircle:
        rep.sampling_agrees = crossing;
        break;
      case RegionVerdict::InsideDisk:
        rep.sampling_agrees = rep.in_region > 0 && rep.image_outside == 0 && on_circle == 0;
        break;
      case RegionVerdict::OutsideClosedDisk:
        rep.sampling_agrees = rep.in_region > 0 && rep.image_inside == 0 && on_circle == 0;
        break;
      case RegionVerdict::Indeterminate:
        break;
    }
    return rep;
  }

  // Without an exact argument only a sampled crossing is conclusive (regions are connected).
  if (crossing && first_inside && first_outside) {
    rep.verdict = RegionVerdict::IntersectsCircle;
    rep.certificate = "sampled points map both inside and outside the unit circle";
    rep.witnesses = {*first_inside, *first_outside};
  } else {
    rep.verdict = RegionVerdict::Indeterminate;
    rep.certificate = "no exact certificate and no sampled crossing";
  }
  return rep;
}

}  // namespace hclab::criteria
