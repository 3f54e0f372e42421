#pragma once

#include <stdexcept>

namespace wedgegreen {

/// Cutoffs for the doubly infinite wave sums. `m_max` bounds the azimuthal
/// index m and `p_max` bounds the inner index (p for the cylindrical series,
/// n for the spherical one); both are inclusive.
struct Truncation {
  int m_max = 10;
  int p_max = 10;

  void validate() const {
    if (m_max < 1 || p_max < 1) throw std::domain_error("truncation cutoffs must be >= 1");
  }
};

/// Relative size of the outermost ring above which a result is flagged as
/// not converged.
inline constexpr double kDefaultTailTolerance = 1e-3;

/// A truncated series value together with the magnitude of its last ring of
/// terms (all terms with m == m_max or inner index == p_max).
struct SeriesValue {
  double value = 0.0;
  double tail = 0.0;

  bool converged(double rel_tol = kDefaultTailTolerance) const {
    return tail <= rel_tol * (value < 0 ? -value : value) || tail == 0.0;
  }
};

}  // namespace wedgegreen
