#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>

namespace homophily {

using Rational = mpq_class;

inline Rational ratio(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// "num/den" in lowest terms; integers print as "num/1" so the shape is fixed.
inline std::string to_fraction_string(const Rational& q) {
  Rational c(q);
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

/// Nearest double (mpq_class::get_d truncates toward zero).
inline double to_double(const Rational& q) {
  const double t = q.get_d();
  if (!std::isfinite(t)) return t;
  const double away = std::nextafter(t, q >= 0 ? HUGE_VAL : -HUGE_VAL);
  if (!std::isfinite(away)) return t;
  const Rational gap_t = abs(q - Rational(t));
  const Rational gap_away = abs(Rational(away) - q);
  return gap_away < gap_t ? away : t;
}

/// Parses "num/den" or a plain integer.
inline Rational parse_fraction(const std::string& text) {
  Rational q(text, 10);
  q.canonicalize();
  return q;
}

}  // namespace homophily
