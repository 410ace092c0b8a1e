#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace airsum {

using BigInt = boost::multiprecision::cpp_int;

// Fixed-point grid with 1.0 == kd << shift ticks. Encoded signals are exact
// multiples of 2^shift ticks (numerators over kd), so adding and subtracting
// them never rounds. Doubles get rounded onto the grid once, on entry.
struct GridScale {
  BigInt kd;
  int shift;
  BigInt unit;

  explicit GridScale(BigInt kd_, int shift_ = 64)
      : kd(std::move(kd_)), shift(shift_), unit(kd << shift_) {}
};

struct GridReal {
  BigInt ticks;

  GridReal() = default;
  explicit GridReal(BigInt t) : ticks(std::move(t)) {}

  GridReal operator+(const GridReal& o) const { return GridReal(ticks + o.ticks); }
  GridReal operator-(const GridReal& o) const { return GridReal(ticks - o.ticks); }
  GridReal operator-() const { return GridReal(-ticks); }
  bool operator==(const GridReal& o) const { return ticks == o.ticks; }
};

// Nearest-tick rounding (ties away from zero) of the exact dyadic value of v.
// The only rounding happens here, and it is deterministic.
GridReal grid_from_double(double v, const GridScale& s);

// value = num / kd, exact.
GridReal grid_from_numerator(const BigInt& num, const GridScale& s);

double grid_to_double(const GridReal& v, const GridScale& s);

}  // namespace airsum
