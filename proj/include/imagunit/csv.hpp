#pragma once

// CSV output: header row, '.' decimal separator, 17 significant digits.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include "imagunit/grid.hpp"

namespace imagunit::csv {

inline std::string number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_row(std::ostream& os, std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << ',';
    os << number(values[i]);
  }
  os << '\n';
}

inline void write_header(std::ostream& os, std::span<const std::string_view> names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) os << ',';
    os << names[i];
  }
  os << '\n';
}

inline void write_field(std::ostream& os, const RealField& f) {
  os << "x,value\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double row[] = {f.grid().coordinate(i), f[i]};
    write_row(os, row);
  }
}

inline void write_field(std::ostream& os, const ComplexField& f) {
  os << "x,re,im\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double row[] = {f.grid().coordinate(i), f[i].real(), f[i].imag()};
    write_row(os, row);
  }
}

/// Quaternion components are labelled w,i,j,k to keep the coordinate column
/// name unique.
inline void write_field(std::ostream& os, const QuatField& f) {
  os << "x,w,i,j,k\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Quaternion& q = f[i];
    const double row[] = {f.grid().coordinate(i), q.w(), q.x(), q.y(), q.z()};
    write_row(os, row);
  }
}

}  // namespace imagunit::csv
