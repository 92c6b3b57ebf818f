#include "moonshine/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <sstream>

namespace moonshine {

namespace {

std::mutex g_cache_mutex;

long gcd_long(long a, long b) { return std::gcd(std::abs(a), std::abs(b)); }

std::vector<long> prime_factors(long n) {
  std::vector<long> ps;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) ps.push_back(n);
  return ps;
}

// poly division q = a / b, exact over Z, b monic-leading assumed nonzero
std::vector<Int> poly_div_exact(const std::vector<Int>& a, const std::vector<Int>& b) {
  std::vector<Int> r = a;
  long db = static_cast<long>(b.size()) - 1;
  long da = static_cast<long>(r.size()) - 1;
  std::vector<Int> q(da - db + 1, Int(0));
  for (long i = da; i >= db; --i) {
    if (r[i] == 0) continue;
    Int c = r[i] / b[db];
    q[i - db] = c;
    for (long j = 0; j <= db; ++j) r[i - db + j] -= c * b[j];
  }
  return q;
}

}  // namespace

long euler_phi(long M) {
  long phi = M;
  for (long p : prime_factors(M)) phi = phi / p * (p - 1);
  return phi;
}

const std::vector<Int>& cyclotomic_polynomial(long M) {
  static std::map<long, std::vector<Int>> cache;
  std::lock_guard<std::mutex> lk(g_cache_mutex);
  auto it = cache.find(M);
  if (it != cache.end()) return it->second;

  // Phi_M = (x^M - 1) / prod_{d | M, d < M} Phi_d, recursively (iterative here
  // to keep the lock simple: fill all divisors bottom-up).
  std::vector<long> divs;
  for (long d = 1; d <= M; ++d)
    if (M % d == 0) divs.push_back(d);
  for (long d : divs) {
    if (cache.count(d)) continue;
    std::vector<Int> num(d + 1, Int(0));
    num[0] = -1;
    num[d] = 1;
    for (long e : divs) {
      if (e >= d || d % e != 0) continue;
      num = poly_div_exact(num, cache.at(e));
    }
    cache.emplace(d, std::move(num));
  }
  return cache.at(M);
}

CycNum::CycNum(const Rat& r) : conductor_(1) {
  if (r != 0) coords_[0] = r;
}

void CycNum::canonicalize_from_dense(long M, std::vector<Rat>&& dense) {
  const std::vector<Int>& phi = cyclotomic_polynomial(M);
  long deg = static_cast<long>(phi.size()) - 1;
  for (long i = static_cast<long>(dense.size()) - 1; i >= deg; --i) {
    if (dense[i] == 0) continue;
    Rat c = dense[i];
    dense[i] = 0;
    for (long j = 0; j < deg; ++j)
      if (phi[j] != 0) dense[i - deg + j] -= c * phi[j];
  }
  conductor_ = M;
  coords_.clear();
  for (long e = 0; e < deg && e < static_cast<long>(dense.size()); ++e)
    if (dense[e] != 0) coords_[e] = dense[e];
  demote();
}

namespace {

// sigma_k applied to reduced coords at conductor M, result reduced, no demote
std::map<long, Rat> apply_sigma(long M, const std::map<long, Rat>& coords, long k) {
  std::vector<Rat> dense(M, Rat(0));
  for (const auto& [e, c] : coords) dense[(e * k) % M] += c;
  const std::vector<Int>& phi = cyclotomic_polynomial(M);
  long deg = static_cast<long>(phi.size()) - 1;
  for (long i = M - 1; i >= deg; --i) {
    if (dense[i] == 0) continue;
    Rat c = dense[i];
    dense[i] = 0;
    for (long j = 0; j < deg; ++j)
      if (phi[j] != 0) dense[i - deg + j] -= c * phi[j];
  }
  std::map<long, Rat> out;
  for (long e = 0; e < deg; ++e)
    if (dense[e] != 0) out[e] = dense[e];
  return out;
}

}  // namespace

void CycNum::demote() {
  if (coords_.empty()) {
    conductor_ = 1;
    return;
  }
  if (conductor_ == 1) return;

  bool progress = true;
  while (progress && conductor_ > 1) {
    progress = false;
    for (long q : prime_factors(conductor_)) {
      long d = conductor_ / q;
      // value lies in Q(zeta_d) iff fixed by every sigma_k with k = 1 mod d
      bool fixed = true;
      for (long k = 1 + d; k < conductor_ && fixed; k += d)
        if (gcd_long(k, conductor_) == 1)
          fixed = (apply_sigma(conductor_, coords_, k) == coords_);
      if (!fixed) continue;

      // rewrite on the zeta_d power basis: solve A x = v where column j of A
      // holds the canonical conductor-M coordinates of zeta_M^(j M/d)
      long M = conductor_;
      long phiM = euler_phi(M), phid = euler_phi(d);
      std::vector<std::vector<Rat>> A(phiM, std::vector<Rat>(phid + 1, Rat(0)));
      for (long j = 0; j < phid; ++j) {
        std::map<long, Rat> one{{0, Rat(1)}};
        std::map<long, Rat> col = apply_sigma(M, {{1, Rat(1)}}, (j * (M / d)) % M);
        if (j == 0) col = one;
        for (const auto& [e, c] : col) A[e][j] = c;
      }
      for (const auto& [e, c] : coords_) A[e][phid] = c;

      // exact Gaussian elimination
      long row = 0;
      std::vector<long> pivot_col(phid, -1);
      for (long col = 0; col < phid && row < phiM; ++col) {
        long pr = -1;
        for (long r = row; r < phiM; ++r)
          if (A[r][col] != 0) {
            pr = r;
            break;
          }
        if (pr < 0) continue;
        std::swap(A[row], A[pr]);
        Rat inv = Rat(1) / A[row][col];
        for (long cc = col; cc <= phid; ++cc) A[row][cc] *= inv;
        for (long r = 0; r < phiM; ++r) {
          if (r == row || A[r][col] == 0) continue;
          Rat f = A[r][col];
          for (long cc = col; cc <= phid; ++cc) A[r][cc] -= f * A[row][cc];
        }
        pivot_col[col] = row;
        ++row;
      }
      bool consistent = true;
      for (long r = row; r < phiM; ++r)
        if (A[r][phid] != 0) consistent = false;
      if (!consistent) continue;  // should not happen once fixed

      std::map<long, Rat> newc;
      for (long j = 0; j < phid; ++j)
        if (pivot_col[j] >= 0 && A[pivot_col[j]][phid] != 0) newc[j] = A[pivot_col[j]][phid];
      conductor_ = d;
      coords_ = std::move(newc);
      progress = true;
      break;
    }
  }
}

CycNum CycNum::root_of_unity(long M, long e) {
  if (M < 1) throw std::domain_error("conductor must be positive");
  e %= M;
  if (e < 0) e += M;
  CycNum z;
  std::vector<Rat> dense(M, Rat(0));
  dense[e] = 1;
  z.canonicalize_from_dense(M, std::move(dense));
  return z;
}

CycNum CycNum::gauss_sum(long p) {
  std::vector<Rat> dense(p, Rat(0));
  for (long a = 1; a < p; ++a) {
    // Legendre symbol by squares table
    bool sq = false;
    for (long x = 1; x < p && !sq; ++x)
      if ((x * x) % p == a) sq = true;
    dense[a] = sq ? 1 : -1;
  }
  CycNum z;
  z.canonicalize_from_dense(p, std::move(dense));
  return z;
}

CycNum CycNum::i() { return root_of_unity(4, 1); }

CycNum CycNum::sqrt_of(long n) {
  switch (n) {
    case 5:
    case 13:
      return gauss_sum(n);
    case 7:
    case 11:
      // gauss_sum(p) = i*sqrt(p) here, so sqrt(p) = -i * gauss_sum(p)
      return CycNum(Rat(-1)) * i() * gauss_sum(n);
    default:
      throw std::domain_error("sqrt_of supports n in {5,7,11,13}");
  }
}

Rat CycNum::rational_value() const {
  if (conductor_ != 1) throw std::domain_error("not a rational value");
  return coords_.empty() ? Rat(0) : coords_.begin()->second;
}

CycNum CycNum::operator-() const {
  CycNum out = *this;
  for (auto& [e, c] : out.coords_) c = -c;
  return out;
}

CycNum CycNum::operator+(const CycNum& o) const {
  long L = std::lcm(conductor_, o.conductor_);
  std::vector<Rat> dense(L, Rat(0));
  for (const auto& [e, c] : coords_) dense[e * (L / conductor_)] += c;
  for (const auto& [e, c] : o.coords_) dense[e * (L / o.conductor_)] += c;
  CycNum out;
  out.canonicalize_from_dense(L, std::move(dense));
  return out;
}

CycNum CycNum::operator-(const CycNum& o) const { return *this + (-o); }

CycNum CycNum::operator*(const CycNum& o) const {
  if (coords_.empty() || o.coords_.empty()) return CycNum();
  long L = std::lcm(conductor_, o.conductor_);
  std::vector<Rat> dense(2 * L, Rat(0));
  for (const auto& [e1, c1] : coords_) {
    long f1 = e1 * (L / conductor_);
    for (const auto& [e2, c2] : o.coords_) dense[f1 + e2 * (L / o.conductor_)] += c1 * c2;
  }
  CycNum out;
  out.canonicalize_from_dense(L, std::move(dense));
  return out;
}

CycNum CycNum::inverse() const {
  if (coords_.empty()) throw std::domain_error("division by zero");
  if (conductor_ == 1) return CycNum(Rat(1) / coords_.begin()->second);

  // extended Euclid in Q[x] modulo Phi_M: find t with t*v = 1 (mod Phi)
  long M = conductor_;
  const std::vector<Int>& phiZ = cyclotomic_polynomial(M);
  std::vector<Rat> r0(phiZ.begin(), phiZ.end());
  long dv = coords_.rbegin()->first;
  std::vector<Rat> r1(dv + 1, Rat(0));
  for (const auto& [e, c] : coords_) r1[e] = c;
  std::vector<Rat> t0{Rat(0)}, t1{Rat(1)};

  auto deg = [](const std::vector<Rat>& p) {
    for (long i = static_cast<long>(p.size()) - 1; i >= 0; --i)
      if (p[i] != 0) return i;
    return -1L;
  };
  while (deg(r1) > 0) {
    long d0 = deg(r0), d1 = deg(r1);
    std::vector<Rat> q(std::max(d0 - d1 + 1, 1L), Rat(0));
    std::vector<Rat> rem = r0;
    for (long i = d0; i >= d1; --i) {
      if (rem[i] == 0) continue;
      Rat c = rem[i] / r1[d1];
      q[i - d1] = c;
      for (long j = 0; j <= d1; ++j) rem[i - d1 + j] -= c * r1[j];
    }
    // t_next = t0 - q * t1
    std::vector<Rat> tn(std::max(t0.size(), q.size() + t1.size()), Rat(0));
    for (size_t i = 0; i < t0.size(); ++i) tn[i] = t0[i];
    for (size_t i = 0; i < q.size(); ++i)
      for (size_t j = 0; j < t1.size(); ++j) tn[i + j] -= q[i] * t1[j];
    r0 = r1;
    r1 = rem;
    t0 = t1;
    t1 = tn;
  }
  long d1 = deg(r1);
  if (d1 < 0) throw std::domain_error("inverse: gcd degenerate");
  Rat c = r1[d1];
  std::vector<Rat> dense(t1.size(), Rat(0));
  for (size_t i = 0; i < t1.size(); ++i) dense[i] = t1[i] / c;
  CycNum out;
  out.canonicalize_from_dense(M, std::move(dense));
  return out;
}

CycNum CycNum::operator/(const CycNum& o) const { return *this * o.inverse(); }

CycNum CycNum::pow(long e) const {
  if (e == 0) return CycNum(Rat(1));
  CycNum base = e < 0 ? inverse() : *this;
  long n = std::abs(e);
  CycNum out(Rat(1));
  while (n) {
    if (n & 1) out *= base;
    base *= base;
    n >>= 1;
  }
  return out;
}

CycNum CycNum::galois(long k) const {
  long M = conductor_;
  k %= M;
  if (k < 0) k += M;
  if (M == 1) return *this;
  if (gcd_long(k, M) != 1) throw std::domain_error("galois: k not coprime to conductor");
  std::vector<Rat> dense(M, Rat(0));
  for (const auto& [e, c] : coords_) dense[(e * k) % M] += c;
  CycNum out;
  out.canonicalize_from_dense(M, std::move(dense));
  return out;
}

bool CycNum::as_root_of_unity(long* order, long* expo) const {
  if (coords_.empty()) return false;
  long n = std::lcm(2L, conductor_);  // roots of unity in Q(zeta_M) have order | lcm(2,M)
  if (pow(n) != CycNum(Rat(1))) return false;
  for (long d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    if (pow(d) == CycNum(Rat(1))) {
      if (order) *order = d;
      if (expo)
        for (long e = 0; e < d; ++e)
          if (root_of_unity(d, e) == *this) {
            if (expo) *expo = e;
            break;
          }
      return true;
    }
  }
  return false;
}

std::complex<double> CycNum::to_complex() const {
  std::complex<double> z(0.0, 0.0);
  const double two_pi = 2.0 * 3.14159265358979323846;
  for (const auto& [e, c] : coords_)
    z += c.get_d() * std::exp(std::complex<double>(0.0, two_pi * double(e) / double(conductor_)));
  return z;
}

bool CycNum::operator<(const CycNum& o) const {
  if (conductor_ != o.conductor_) return conductor_ < o.conductor_;
  return std::lexicographical_compare(
      coords_.begin(), coords_.end(), o.coords_.begin(), o.coords_.end(),
      [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
      });
}

namespace {

// x + y * unit recognition over the quadratic subfields we print specially.
// Returns true and fills x, y when the value is x + y*gauss-like-unit.
bool quad_split(const CycNum& v, long p, Rat* x, Rat* y) {
  // canonical coords of gauss_sum(p): e=0: -eps; e=a: (a|p) - eps, a < p-1
  long eps = (p % 4 == 1) ? 1 : -1;
  std::vector<int> legendre(p, 0);
  for (long t = 1; t < p; ++t) legendre[(t * t) % p] = 1;
  Rat yy(0);
  bool have_y = false;
  for (const auto& [e, c] : v.coords()) {
    if (e == 0) continue;
    long le = legendre[e] ? 1 : -1;
    Rat expect_unit = Rat(le - eps);  // coefficient of y at exponent e
    if (expect_unit == 0) {
      if (c != 0) return false;  // coefficient must vanish where the unit has none
      continue;
    }
    Rat cand = c / expect_unit;
    if (!have_y) {
      yy = cand;
      have_y = true;
    } else if (cand != yy) {
      return false;
    }
  }
  if (!have_y) yy = 0;
  // also verify exponents where unit vanishes carry no coordinate
  for (long e = 1; e < p - 1; ++e) {
    long le = legendre[e] ? 1 : -1;
    if (le - eps == 0 && v.coords().count(e)) return false;
  }
  Rat c0 = v.coords().count(0) ? v.coords().at(0) : Rat(0);
  *y = yy;
  *x = c0 + Rat(eps) * yy;
  // cross-check
  CycNum rebuilt = CycNum(*x) + CycNum(*y) * CycNum::gauss_sum(p);
  return rebuilt == v;
}

std::string rat_term(const Rat& r, const std::string& unit, bool leading) {
  std::string sign = (r < 0) ? (leading ? "-" : " - ") : (leading ? "" : " + ");
  Rat a = abs(r);
  if (unit.empty()) return sign + a.get_str();
  if (a == 1) return sign + unit;
  return sign + a.get_str() + "*" + unit;
}

}  // namespace

std::string CycNum::str() const {
  if (coords_.empty()) return "0";
  if (conductor_ == 1) return coords_.begin()->second.get_str();
  if (conductor_ == 4) {
    Rat x = coords_.count(0) ? coords_.at(0) : Rat(0);
    Rat y = coords_.count(1) ? coords_.at(1) : Rat(0);
    std::string s;
    if (x != 0) s += rat_term(x, "", true);
    if (y != 0) s += rat_term(y, "i", s.empty());
    return s;
  }
  if (conductor_ == 5 || conductor_ == 7 || conductor_ == 11 || conductor_ == 13) {
    long p = conductor_;
    Rat x, y;
    if (quad_split(*this, p, &x, &y)) {
      std::string unit = (p % 4 == 1) ? "sqrt" + std::to_string(p) : "i*sqrt" + std::to_string(p);
      std::string s;
      if (x != 0) s += rat_term(x, "", true);
      if (y != 0) s += rat_term(y, unit, s.empty());
      return s;
    }
  }
  std::string s;
  for (const auto& [e, c] : coords_) {
    std::string unit = "z" + std::to_string(conductor_) + (e == 1 ? "" : "^" + std::to_string(e));
    if (e == 0)
      s += rat_term(c, "", s.empty());
    else
      s += rat_term(c, unit, s.empty());
  }
  return s;
}

std::ostream& operator<<(std::ostream& os, const CycNum& c) { return os << c.str(); }

// --- parser -----------------------------------------------------------------

struct CycParser {
  const std::string& s;
  size_t pos = 0;

  explicit CycParser(const std::string& text) : s(text) {}

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw std::domain_error("CycNum parse error at position " + std::to_string(pos) + ": " + what);
  }

  long integer() {
    skip();
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail("expected integer");
    return std::stol(s.substr(start, pos - start));
  }

  CycNum factor() {
    skip();
    if (eat('(')) {
      CycNum v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])))) {
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      Int num(s.substr(start, pos - start));
      if (eat('/')) {
        skip();
        size_t d0 = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == d0) fail("expected denominator");
        return CycNum(make_rat(num, Int(s.substr(d0, pos - d0))));
      }
      return CycNum(make_rat(num, Int(1)));
    }
    if (s.compare(pos, 4, "sqrt") == 0) {
      pos += 4;
      return CycNum::sqrt_of(integer());
    }
    if (pos < s.size() && s[pos] == 'i' &&
        (pos + 1 == s.size() || !std::isalnum(static_cast<unsigned char>(s[pos + 1])))) {
      ++pos;
      return CycNum::i();
    }
    if (pos < s.size() && s[pos] == 'z') {
      ++pos;
      long M = integer();
      long e = 1;
      if (eat('^')) e = integer();
      return CycNum::root_of_unity(M, e);
    }
    fail("expected factor");
  }

  CycNum term() {
    CycNum v = factor();
    while (true) {
      skip();
      if (eat('*')) {
        v *= factor();
      } else if (pos < s.size() && (s[pos] == 'i' || s[pos] == 's' || s[pos] == 'z')) {
        v *= factor();  // juxtaposition like "5/2 i" is not produced, but "i*sqrt7" is covered
      } else {
        break;
      }
    }
    return v;
  }

  CycNum expr() {
    skip();
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    CycNum v = term();
    if (neg) v = -v;
    while (true) {
      skip();
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        break;
    }
    return v;
  }
};

CycNum CycNum::parse(const std::string& text) {
  CycParser p(text);
  CycNum v = p.expr();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing input");
  return v;
}

}  // namespace moonshine
