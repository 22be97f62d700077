#pragma once

#include <map>
#include <string>
#include <vector>

namespace netctl {

// Time-indexed record emitted by simulators: one row of named columns per sample.
struct SimTrace {
  std::vector<std::string> columns;
  std::vector<double> t;
  std::vector<std::vector<double>> rows;
  std::map<std::string, double> summary;

  void add(double time, std::vector<double> row);
  size_t size() const { return t.size(); }
  int column(const std::string& name) const;  // -1 if absent
  std::vector<double> series(const std::string& name) const;
  std::string to_csv(int precision = 10) const;
};

}  // namespace netctl
