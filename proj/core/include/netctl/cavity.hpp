#pragma once

#include <vector>

namespace netctl {

// Single-direction degree distribution (in or out).
class DegreeDistribution {
 public:
  enum class Kind { Poisson, SfStatic, Empirical };

  // Poisson with the given per-direction mean (<k>/2 for a directed ER graph).
  static DegreeDistribution poisson(double mean);
  // Static model with total mean degree <k> (per direction <k>/2) and exponent gamma > 2.
  static DegreeDistribution sf_static(double k_mean, double gamma);
  // Histogram P(k), k = 0..size-1; normalized on construction.
  static DegreeDistribution empirical(std::vector<double> hist);
  static DegreeDistribution from_degrees(const std::vector<int>& degrees);

  Kind kind() const { return kind_; }
  double mean() const { return mean_; }
  double gamma() const { return gamma_; }

  double pk(int k) const;
  double qk(int k) const { return k * pk(k) / mean_; }  // edge-biased
  double G(double x) const;  // sum_k P(k) x^k
  double H(double x) const;  // sum_k Q(k+1) x^k

 private:
  double sf_pk_gamma(int k) const;
  double sf_pk_quad(int k) const;

  Kind kind_ = Kind::Poisson;
  double mean_ = 0;
  double gamma_ = 0;
  double alpha_ = 0;  // 1/(gamma-1)
  double xmin_ = 0;
  std::vector<double> hist_;
};

struct CavityState {
  double w1 = 0, w2 = 0, w3 = 1;
  double wh1 = 0, wh2 = 0, wh3 = 1;
};

struct CavityOptions {
  double damping = 0.5;
  double tol = 1e-10;
  int max_iter = 100000;
  CavityState init{};
};

struct CavityResult {
  double n_d = 0;
  CavityState state;
  int iterations = 0;
  double residual = 0;
};

// dist_out feeds G and H, dist_in feeds the hatted functions; z = <k>.
CavityResult solve_cavity(const DegreeDistribution& dist_in, const DegreeDistribution& dist_out,
                          double z, const CavityOptions& opt = {});

double cavity_residual(const DegreeDistribution& dist_in, const DegreeDistribution& dist_out,
                       const CavityState& s);
double cavity_nd(const DegreeDistribution& dist_in, const DegreeDistribution& dist_out, double z,
                 const CavityState& s);

enum class EnsembleKind { ER, SfStatic };

// Large-<k> closed forms.
double nd_asymptotic(EnsembleKind kind, double k_mean, double gamma = 0.0);

}  // namespace netctl
