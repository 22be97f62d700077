#include "netctl/trace.hpp"

#include <sstream>

#include "netctl/error.hpp"

namespace netctl {

void SimTrace::add(double time, std::vector<double> row) {
  if (row.size() != columns.size())
    fail(ErrorKind::DimensionMismatch, "trace row width differs from column count");
  t.push_back(time);
  rows.push_back(std::move(row));
}

int SimTrace::column(const std::string& name) const {
  for (size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return static_cast<int>(i);
  return -1;
}

std::vector<double> SimTrace::series(const std::string& name) const {
  int c = column(name);
  if (c < 0) fail(ErrorKind::InvalidArgument, "no trace column " + name);
  std::vector<double> s;
  s.reserve(rows.size());
  for (const auto& r : rows) s.push_back(r[c]);
  return s;
}

std::string SimTrace::to_csv(int precision) const {
  std::ostringstream os;
  os.precision(precision);
  os << 't';
  for (const auto& c : columns) os << ',' << c;
  os << '\n';
  for (size_t i = 0; i < t.size(); ++i) {
    os << t[i];
    for (double v : rows[i]) os << ',' << v;
    os << '\n';
  }
  return os.str();
}

}  // namespace netctl
