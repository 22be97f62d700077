#pragma once

#include <vector>

#include "netctl/exact.hpp"
#include "netctl/trace.hpp"

namespace netctl {

Mat expm(const Mat& M);

struct GramianResult {
  Mat W;                // int_0^T e^{At} B B^T e^{A^T t} dt
  Mat H;                // e^{-AT} W e^{-A^T T}
  Eigen::VectorXd eta;  // eigenvalues of H, ascending
  Eigen::VectorXd w;    // eigenvalues of W, ascending
  double cond = 0;      // condition number of W
  bool ill_conditioned = false;  // cond > 1e12
};

GramianResult gramian(const DenseSystem& sys, double T);

// Minimum energy v_f^T W^{-1} v_f with v_f = x_f - e^{AT} x_i.
double control_energy(const DenseSystem& sys, const Vec& xi, const Vec& xf, double T);

struct MinEnergyResult {
  SimTrace trace;         // columns u1..uM, x1..xN
  double energy = 0;      // v_f^T W^{-1} v_f
  double energy_quad = 0; // trapezoidal integral of |u|^2 on the grid
  Vec x_final;
  bool ill_conditioned = false;
};

MinEnergyResult min_energy_input(const DenseSystem& sys, const Vec& xi, const Vec& xf, double T,
                                 int n_steps = 1000);

struct EnergyBounds {
  double e_min = 0;
  double e_max = 0;
  bool e_max_infinite = false;
};

EnergyBounds energy_bounds(const DenseSystem& sys, double T);

enum class SpectrumMode {
  Reach,   // from the origin to unit eigen-directions of W: energies 1/w_i
  Return,  // from unit eigen-directions of H back to the origin: energies 1/eta_i
};

struct EnergySpectrum {
  std::vector<double> energies;  // ascending
  Mat directions;                // eigenvectors, column i for energies[i]
  std::vector<double> bin_center;
  std::vector<double> density;   // log-binned P(E)
  double tail_slope = 0;         // log-log slope of P(E) over bins above the median energy
};

EnergySpectrum energy_spectrum(const DenseSystem& sys, double T,
                               SpectrumMode mode = SpectrumMode::Reach, int bins = 20);

}  // namespace netctl
