#pragma once

#include <map>
#include <optional>
#include <string>

#include "moonshine/cyclotomic.hpp"

namespace moonshine {

// Small exact rational on machine integers, used for series exponents and
// truncation bounds (these stay tiny: denominators divide 24p^2).
struct Frac {
  long num = 0;
  long den = 1;

  Frac() = default;
  Frac(long n) : num(n), den(1) {}
  Frac(long n, long d);

  Frac operator+(const Frac& o) const;
  Frac operator-(const Frac& o) const;
  Frac operator*(long m) const;
  bool operator==(const Frac& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Frac& o) const { return !(*this == o); }
  bool operator<(const Frac& o) const { return num * o.den < o.num * den; }
  bool operator<=(const Frac& o) const { return num * o.den <= o.num * den; }
  std::string str() const;
};

Frac min(const Frac& a, const Frac& b);

// Truncated Laurent series in q^(1/den) with CycNum coefficients.
// Coefficients are valid for exponents strictly below trunc.
class QSeries {
 public:
  QSeries() = default;
  explicit QSeries(Frac trunc) : trunc_(trunc) {}

  static QSeries monomial(const CycNum& c, Frac exponent, Frac trunc);
  static QSeries constant(const CycNum& c, Frac trunc);

  Frac trunc() const { return trunc_; }
  long den() const { return den_; }
  const std::map<long, CycNum>& raw() const { return coeffs_; }
  bool empty() const { return coeffs_.empty(); }

  CycNum coeff(Frac exponent) const;            // 0 if absent (must be < trunc)
  std::optional<Frac> leading_exponent() const;  // lowest stored exponent

  QSeries operator+(const QSeries& o) const;
  QSeries operator-(const QSeries& o) const;
  QSeries operator*(const QSeries& o) const;
  QSeries operator/(const QSeries& o) const;  // throws if o has no terms
  QSeries inverse() const;
  QSeries pow(long e) const;

  QSeries scale(const CycNum& c) const;
  // tau -> m*tau: multiplies every exponent by m (identity at m = 1)
  QSeries rescale(long m) const;
  QSeries truncate(Frac t) const;
  // Galois conjugation applied coefficientwise; exponents unchanged.
  QSeries galois(long k) const;

  std::string pretty() const;
  std::string lines() const;  // "EXP n/d COEFF <cycnum>" per term

  bool operator==(const QSeries& o) const;

  void set(Frac exponent, const CycNum& c);

 private:
  long den_ = 1;
  std::map<long, CycNum> coeffs_;  // key n means exponent n/den_
  Frac trunc_{0, 1};

  void redenominate(long new_den);
  void normalize_den();
};

}  // namespace moonshine
