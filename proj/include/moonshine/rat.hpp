#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace moonshine {

// Exact rational on GMP arbitrary-precision integers. mpq_class does not
// canonicalize on construction, so everything goes through make_rat().
using Rat = mpq_class;
using Int = mpz_class;

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Rat make_rat(long num, long den = 1) { return make_rat(Int(num), Int(den)); }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

// Parses "a", "-a", "a/b".
inline Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return make_rat(Int(s), Int(1));
    return make_rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw std::domain_error("bad rational literal: " + s);
  }
}

inline std::string to_string(const Rat& q) { return q.get_str(); }

inline Rat pow_rat(const Rat& q, long e) {
  if (e == 0) return Rat(1);
  if (q == 0 && e < 0) throw std::domain_error("0^negative");
  Rat base = e < 0 ? Rat(1) / q : q;
  long n = e < 0 ? -e : e;
  Rat out(1);
  while (n) {
    if (n & 1) out *= base;
    base *= base;
    n >>= 1;
  }
  return out;
}

}  // namespace moonshine
