#include "netctl/cavity.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "netctl/error.hpp"

namespace netctl {

namespace {

double integrate01(const auto& f) {
  static thread_local boost::math::quadrature::tanh_sinh<double> ts(12);
  return ts.integrate(f, 0.0, 1.0, 1e-12);
}

// log of the upper incomplete gamma function for any real a (x > 0), via
// downward recurrence Gamma(a,x) = (Gamma(a+1,x) - x^a e^{-x}) / a.
double log_upper_gamma(double a, double x) {
  if (a > 0) {
    double q = boost::math::gamma_q(a, x);
    if (q > 0) return std::log(q) + boost::math::lgamma(a);
    return std::log(boost::math::tgamma(a, x));
  }
  int steps = static_cast<int>(std::ceil(-a));
  double top = a + steps;  // in [0, 1)
  double g;
  if (top == 0.0) {
    g = boost::math::expint(1, x);
  } else {
    g = boost::math::tgamma(top, x);
  }
  for (double s = top - 1; s >= a - 1e-12; s -= 1.0) g = (g - std::pow(x, s) * std::exp(-x)) / s;
  return std::log(g);
}

}  // namespace

DegreeDistribution DegreeDistribution::poisson(double mean) {
  if (!(mean >= 0)) fail(ErrorKind::InvalidArgument, "poisson mean must be >= 0");
  DegreeDistribution d;
  d.kind_ = Kind::Poisson;
  d.mean_ = mean;
  return d;
}

DegreeDistribution DegreeDistribution::sf_static(double k_mean, double gamma) {
  if (!(gamma > 2.0)) fail(ErrorKind::InvalidArgument, "static model needs gamma > 2");
  if (!(k_mean > 0)) fail(ErrorKind::InvalidArgument, "mean degree must be > 0");
  DegreeDistribution d;
  d.kind_ = Kind::SfStatic;
  d.gamma_ = gamma;
  d.mean_ = k_mean / 2.0;
  d.alpha_ = 1.0 / (gamma - 1.0);
  // Node intensity Lambda = xmin u^{-alpha}, u ~ U(0,1); E[Lambda] = mean.
  d.xmin_ = d.mean_ * (1.0 - d.alpha_);
  return d;
}

DegreeDistribution DegreeDistribution::empirical(std::vector<double> hist) {
  double s = 0, m = 0;
  for (size_t k = 0; k < hist.size(); ++k) {
    if (hist[k] < 0) fail(ErrorKind::InvalidArgument, "negative histogram entry");
    s += hist[k];
    m += k * hist[k];
  }
  if (!(s > 0)) fail(ErrorKind::InvalidArgument, "empty histogram");
  for (double& h : hist) h /= s;
  DegreeDistribution d;
  d.kind_ = Kind::Empirical;
  d.hist_ = std::move(hist);
  d.mean_ = m / s;
  return d;
}

DegreeDistribution DegreeDistribution::from_degrees(const std::vector<int>& degrees) {
  int kmax = 0;
  for (int k : degrees) kmax = std::max(kmax, k);
  std::vector<double> h(kmax + 1, 0.0);
  for (int k : degrees) h[k] += 1.0;
  return empirical(std::move(h));
}

double DegreeDistribution::sf_pk_gamma(int k) const {
  double s = k - 1.0 / alpha_;
  double lp = -std::log(alpha_) + std::log(xmin_) / alpha_ + log_upper_gamma(s, xmin_) -
              std::lgamma(k + 1.0);
  return std::exp(lp);
}

double DegreeDistribution::sf_pk_quad(int k) const {
  double lk = std::lgamma(k + 1.0);
  return integrate01([&](double u) {
    if (u <= 0) return 0.0;
    double lam = xmin_ * std::pow(u, -alpha_);
    return std::exp(-lam + k * std::log(lam) - lk);
  });
}

double DegreeDistribution::pk(int k) const {
  if (k < 0) return 0.0;
  switch (kind_) {
    case Kind::Poisson:
      if (mean_ == 0) return k == 0 ? 1.0 : 0.0;
      return std::exp(-mean_ + k * std::log(mean_) - std::lgamma(k + 1.0));
    case Kind::SfStatic:
      // The closed form loses accuracy near the critical exponent.
      return gamma_ <= 2.2 ? sf_pk_quad(k) : sf_pk_gamma(k);
    case Kind::Empirical:
      return k < static_cast<int>(hist_.size()) ? hist_[k] : 0.0;
  }
  return 0.0;
}

double DegreeDistribution::G(double x) const {
  switch (kind_) {
    case Kind::Poisson:
      return std::exp(-mean_ * (1.0 - x));
    case Kind::SfStatic:
      if (x >= 1.0) return 1.0;
      return integrate01([&](double u) {
        if (u <= 0) return 0.0;
        return std::exp(-xmin_ * std::pow(u, -alpha_) * (1.0 - x));
      });
    case Kind::Empirical: {
      double r = 0;
      for (size_t k = hist_.size(); k-- > 0;) r = r * x + hist_[k];
      return r;
    }
  }
  return 0.0;
}

double DegreeDistribution::H(double x) const {
  switch (kind_) {
    case Kind::Poisson:
      return std::exp(-mean_ * (1.0 - x));
    case Kind::SfStatic:
      if (x >= 1.0) return 1.0;
      return integrate01([&](double u) {
               if (u <= 0) return 0.0;
               double lam = xmin_ * std::pow(u, -alpha_);
               return lam * std::exp(-lam * (1.0 - x));
             }) /
             mean_;
    case Kind::Empirical: {
      if (mean_ == 0) return 1.0;
      double r = 0;
      for (size_t k = hist_.size(); k-- > 1;) r = r * x + k * hist_[k];
      return r / mean_;
    }
  }
  return 0.0;
}

namespace {

CavityState step(const DegreeDistribution& din, const DegreeDistribution& dout,
                 const CavityState& s) {
  CavityState n;
  n.w1 = dout.H(s.wh2);
  n.w2 = 1.0 - dout.H(1.0 - s.wh1);
  n.w3 = 1.0 - n.w1 - n.w2;
  n.wh1 = din.H(s.w2);
  n.wh2 = 1.0 - din.H(1.0 - s.w1);
  n.wh3 = 1.0 - n.wh1 - n.wh2;
  return n;
}

double max_diff(const CavityState& a, const CavityState& b) {
  return std::max({std::abs(a.w1 - b.w1), std::abs(a.w2 - b.w2), std::abs(a.w3 - b.w3),
                   std::abs(a.wh1 - b.wh1), std::abs(a.wh2 - b.wh2),
                   std::abs(a.wh3 - b.wh3)});
}

}  // namespace

double cavity_residual(const DegreeDistribution& din, const DegreeDistribution& dout,
                       const CavityState& s) {
  return max_diff(step(din, dout, s), s);
}

double cavity_nd(const DegreeDistribution& din, const DegreeDistribution& dout, double z,
                 const CavityState& s) {
  double a = dout.G(s.wh2) + dout.G(1.0 - s.wh1) - 1.0;
  double b = din.G(s.w2) + din.G(1.0 - s.w1) - 1.0;
  double c = 0.5 * z * (s.wh1 * (1.0 - s.w2) + s.w1 * (1.0 - s.wh2));
  return 0.5 * (a + b + c);
}

CavityResult solve_cavity(const DegreeDistribution& din, const DegreeDistribution& dout, double z,
                          const CavityOptions& opt) {
  if (!(z > 0)) fail(ErrorKind::InvalidArgument, "mean degree z must be > 0");
  CavityResult r;
  CavityState s = opt.init;
  const double keep = opt.damping;
  double change = 1.0;
  int it = 0;
  while (it < opt.max_iter) {
    CavityState n = step(din, dout, s);
    change = max_diff(n, s);
    s.w1 = keep * s.w1 + (1 - keep) * n.w1;
    s.w2 = keep * s.w2 + (1 - keep) * n.w2;
    s.wh1 = keep * s.wh1 + (1 - keep) * n.wh1;
    s.wh2 = keep * s.wh2 + (1 - keep) * n.wh2;
    s.w3 = 1.0 - s.w1 - s.w2;
    s.wh3 = 1.0 - s.wh1 - s.wh2;
    ++it;
    if (change < opt.tol) break;
  }
  r.state = s;
  r.iterations = it;
  r.residual = cavity_residual(din, dout, s);
  if (change >= opt.tol)
    fail(ErrorKind::NonConvergence,
         "cavity iteration did not converge, residual " + std::to_string(r.residual));
  r.n_d = cavity_nd(din, dout, z, s);
  return r;
}

double nd_asymptotic(EnsembleKind kind, double k_mean, double gamma) {
  switch (kind) {
    case EnsembleKind::ER:
      return std::exp(-k_mean / 2.0);
    case EnsembleKind::SfStatic:
      if (!(gamma > 2.0)) fail(ErrorKind::InvalidArgument, "gamma must exceed 2");
      return std::exp(-0.5 * (1.0 - 1.0 / (gamma - 1.0)) * k_mean);
  }
  return 0.0;
}

}  // namespace netctl
