#include "airsum/grid_real.hpp"

#include <cmath>
#include <stdexcept>

namespace airsum {

GridReal grid_from_double(double v, const GridScale& s) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument("grid_from_double: value must be finite");
  }
  if (v == 0.0) return GridReal(BigInt(0));

  // v = f * 2^e with |f| in [0.5, 1); lifting f by 2^53 makes it an integer,
  // so the tick count mant * kd * 2^(e - 53 + shift) is exact apart from one
  // final halving step when the exponent goes negative.
  int e = 0;
  double f = std::frexp(v, &e);
  auto mant = static_cast<long long>(std::ldexp(f, 53));
  BigInt t = BigInt(mant) * s.kd;
  int sh = e - 53 + s.shift;
  if (sh >= 0) return GridReal(t << sh);

  BigInt half = BigInt(1) << (-sh - 1);
  if (t < 0) return GridReal(-((-t + half) >> -sh));
  return GridReal((t + half) >> -sh);
}

GridReal grid_from_numerator(const BigInt& num, const GridScale& s) {
  return GridReal(num << s.shift);
}

double grid_to_double(const GridReal& v, const GridScale& s) {
  return v.ticks.convert_to<double>() / s.unit.convert_to<double>();
}

}  // namespace airsum
