#pragma once

#include <cmath>
#include <vector>

namespace netctl {

struct MeanErr {
  double mean = 0;
  double stderr_ = 0;
};

inline MeanErr mean_stderr(const std::vector<double>& x) {
  MeanErr r;
  if (x.empty()) return r;
  for (double v : x) r.mean += v;
  r.mean /= static_cast<double>(x.size());
  if (x.size() > 1) {
    double s = 0;
    for (double v : x) s += (v - r.mean) * (v - r.mean);
    r.stderr_ = std::sqrt(s / (x.size() - 1) / x.size());
  }
  return r;
}

struct LineFit {
  double slope = 0;
  double intercept = 0;
};

// Ordinary least squares y = intercept + slope * x.
inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  LineFit f;
  const size_t n = x.size();
  if (n < 2) return f;
  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) mx += x[i], my += y[i];
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  f.slope = sxx > 0 ? sxy / sxx : 0;
  f.intercept = my - f.slope * mx;
  return f;
}

inline LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i] > 0 && y[i] > 0) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  return fit_line(lx, ly);
}

}  // namespace netctl
