#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "moonshine/rat.hpp"

namespace moonshine {

// Exact element of the cyclotomic field Q(zeta_M).
//
// Canonical form: coordinates on the power basis {zeta_M^e : 0 <= e < phi(M)},
// reduced modulo the M-th cyclotomic polynomial, then demoted to the smallest
// divisor conductor containing the value. Equal values always have identical
// representations, so zero tests and equality are structural.
class CycNum {
 public:
  CycNum() : conductor_(1) {}
  CycNum(const Rat& r);  // NOLINT: implicit by design, rationals embed
  CycNum(long n) : CycNum(Rat(n)) {}
  CycNum(int n) : CycNum(Rat(n)) {}

  // zeta_M^e
  static CycNum root_of_unity(long M, long e);
  // The Gauss sum sum_a (a/p) zeta_p^a; squares to +p (p=1 mod 4) or -p.
  static CycNum gauss_sum(long p);
  // Real sqrt(n) for n in {5,13} directly, {7,11} via -i * gauss_sum.
  static CycNum sqrt_of(long n);
  static CycNum i();  // zeta_4

  long conductor() const { return conductor_; }
  const std::map<long, Rat>& coords() const { return coords_; }

  bool is_zero() const { return coords_.empty(); }
  bool is_rational() const { return conductor_ == 1; }
  Rat rational_value() const;  // throws if not rational

  CycNum operator-() const;
  CycNum operator+(const CycNum& o) const;
  CycNum operator-(const CycNum& o) const;
  CycNum operator*(const CycNum& o) const;
  CycNum operator/(const CycNum& o) const;  // throws on division by zero
  CycNum& operator+=(const CycNum& o) { return *this = *this + o; }
  CycNum& operator-=(const CycNum& o) { return *this = *this - o; }
  CycNum& operator*=(const CycNum& o) { return *this = *this * o; }
  CycNum& operator/=(const CycNum& o) { return *this = *this / o; }
  bool operator==(const CycNum& o) const {
    return conductor_ == o.conductor_ && coords_ == o.coords_;
  }
  bool operator!=(const CycNum& o) const { return !(*this == o); }

  CycNum inverse() const;
  CycNum pow(long e) const;

  // Galois automorphism zeta_M -> zeta_M^k, gcd(k, M) = 1 (throws otherwise).
  CycNum galois(long k) const;
  // Complex conjugate, = galois(-1).
  CycNum conj() const { return conductor_ == 1 ? *this : galois(-1); }

  // True iff the value is a root of unity; sets order/exponent so that
  // value = zeta_order^expo with gcd(expo, order) = 1 (order 1 for value 1).
  bool as_root_of_unity(long* order, long* expo) const;

  std::complex<double> to_complex() const;

  // "3/2 - 5/2*sqrt5" when the value lies in Q, Q(i), or Q(sqrt±p) for
  // p in {5,7,11,13}; otherwise a sum of c*zM^e terms.
  std::string str() const;
  // Round-trips through str(); also accepts raw zM^e sums and products
  // of rational, i, sqrtN factors.
  static CycNum parse(const std::string& text);

  // Total order (conductor, then coords); for use as map key.
  bool operator<(const CycNum& o) const;

 private:
  long conductor_;
  std::map<long, Rat> coords_;  // exponent -> coefficient, no zero entries

  void canonicalize_from_dense(long M, std::vector<Rat>&& dense);
  void demote();
  friend struct CycParser;
};

std::ostream& operator<<(std::ostream& os, const CycNum& c);

// Exposed for reuse and tests: Phi_M coefficients (monic, degree phi(M)).
const std::vector<Int>& cyclotomic_polynomial(long M);
long euler_phi(long M);

}  // namespace moonshine
