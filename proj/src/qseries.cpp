#include "moonshine/qseries.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace moonshine {

Frac::Frac(long n, long d) {
  if (d == 0) throw std::domain_error("Frac with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  long g = std::gcd(std::abs(n), d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num = n;
  den = d;
}

Frac Frac::operator+(const Frac& o) const { return Frac(num * o.den + o.num * den, den * o.den); }
Frac Frac::operator-(const Frac& o) const { return Frac(num * o.den - o.num * den, den * o.den); }
Frac Frac::operator*(long m) const { return Frac(num * m, den); }

std::string Frac::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Frac min(const Frac& a, const Frac& b) { return a < b ? a : b; }

void QSeries::normalize_den() {
  long g = den_;
  for (const auto& [n, c] : coeffs_) g = std::gcd(g, std::abs(n));
  if (g > 1 && den_ % g == 0) {
    // keep den_ minimal for the stored support
    std::map<long, CycNum> out;
    for (auto& [n, c] : coeffs_) out[n / g] = c;
    coeffs_ = std::move(out);
    den_ /= g;
  }
}

void QSeries::redenominate(long new_den) {
  if (new_den == den_) return;
  if (new_den % den_ != 0) throw std::logic_error("redenominate: incompatible denominator");
  long f = new_den / den_;
  std::map<long, CycNum> out;
  for (auto& [n, c] : coeffs_) out[n * f] = c;
  coeffs_ = std::move(out);
  den_ = new_den;
}

QSeries QSeries::monomial(const CycNum& c, Frac exponent, Frac trunc) {
  QSeries s(trunc);
  s.set(exponent, c);
  return s;
}

QSeries QSeries::constant(const CycNum& c, Frac trunc) { return monomial(c, Frac(0), trunc); }

void QSeries::set(Frac exponent, const CycNum& c) {
  if (!(exponent < trunc_)) return;  // outside the valid window
  long L = std::lcm(den_, exponent.den);
  redenominate(L);
  long key = exponent.num * (L / exponent.den);
  if (c.is_zero())
    coeffs_.erase(key);
  else
    coeffs_[key] = c;
  normalize_den();
}

CycNum QSeries::coeff(Frac exponent) const {
  if (!(exponent < trunc_))
    throw std::domain_error("coefficient at " + exponent.str() + " is beyond truncation " +
                            trunc_.str());
  if (exponent.den != 0 && den_ % exponent.den == 0) {
    long key = exponent.num * (den_ / exponent.den);
    auto it = coeffs_.find(key);
    return it == coeffs_.end() ? CycNum() : it->second;
  }
  return CycNum();
}

std::optional<Frac> QSeries::leading_exponent() const {
  if (coeffs_.empty()) return std::nullopt;
  return Frac(coeffs_.begin()->first, den_);
}

QSeries QSeries::operator+(const QSeries& o) const {
  QSeries out(min(trunc_, o.trunc_));
  long L = std::lcm(den_, o.den_);
  out.den_ = L;
  for (const auto& [n, c] : coeffs_) {
    Frac e(n, den_);
    if (e < out.trunc_) out.coeffs_[n * (L / den_)] = c;
  }
  for (const auto& [n, c] : o.coeffs_) {
    Frac e(n, o.den_);
    if (!(e < out.trunc_)) continue;
    long key = n * (L / o.den_);
    auto it = out.coeffs_.find(key);
    if (it == out.coeffs_.end()) {
      out.coeffs_[key] = c;
    } else {
      it->second += c;
      if (it->second.is_zero()) out.coeffs_.erase(it);
    }
  }
  out.normalize_den();
  return out;
}

QSeries QSeries::operator-(const QSeries& o) const { return *this + o.scale(CycNum(Rat(-1))); }

QSeries QSeries::operator*(const QSeries& o) const {
  // valid below min(t1 + v2, t2 + v1); empty factors give an empty series
  if (coeffs_.empty() || o.coeffs_.empty()) {
    // best usable window given no information about the vanished factor
    return QSeries(min(trunc_, o.trunc_));
  }
  Frac v1 = *leading_exponent(), v2 = *o.leading_exponent();
  Frac window = min(trunc_ + v2, o.trunc_ + v1);
  QSeries out(window);
  long L = std::lcm(den_, o.den_);
  out.den_ = L;
  long wn;
  {
    // window in units of 1/L, exclusive
    Frac w = window;
    long f = L / w.den;
    if (L % w.den != 0) {
      // round the cut downward onto the 1/L grid
      wn = (w.num * L) / w.den;
      if (Frac(wn, L) < w) ++wn;
    } else {
      wn = w.num * f;
    }
  }
  for (const auto& [n1, c1] : coeffs_) {
    long k1 = n1 * (L / den_);
    for (const auto& [n2, c2] : o.coeffs_) {
      long key = k1 + n2 * (L / o.den_);
      if (key >= wn) continue;
      auto it = out.coeffs_.find(key);
      if (it == out.coeffs_.end()) {
        CycNum prod = c1 * c2;
        if (!prod.is_zero()) out.coeffs_[key] = prod;
      } else {
        it->second += c1 * c2;
        if (it->second.is_zero()) out.coeffs_.erase(it);
      }
    }
  }
  out.normalize_den();
  return out;
}

QSeries QSeries::inverse() const {
  if (coeffs_.empty()) throw std::domain_error("inverse of series with no terms");
  Frac v = *leading_exponent();
  CycNum lead = coeffs_.begin()->second;
  // write *this = lead q^v (1 + u); then 1/this = lead^-1 q^-v sum (-u)^k
  Frac width = trunc_ - v;  // u is known below width
  QSeries u(width);
  u.den_ = den_;
  for (const auto& [n, c] : coeffs_) {
    if (n == coeffs_.begin()->first) continue;
    u.coeffs_[n - coeffs_.begin()->first] = c / lead;
  }
  u.normalize_den();
  QSeries geo = QSeries::constant(CycNum(Rat(1)), width);
  QSeries power = QSeries::constant(CycNum(Rat(1)), width);
  QSeries neg_u = u.scale(CycNum(Rat(-1)));
  // (-u)^k vanishes below width once k * lead(u) >= width
  while (true) {
    power = power * neg_u;
    power = power.truncate(width);
    if (power.coeffs_.empty()) break;
    geo = geo + power;
  }
  QSeries shift = QSeries::monomial(lead.inverse(), Frac(0) - v, width - v);
  return shift * geo;
}

QSeries QSeries::operator/(const QSeries& o) const { return *this * o.inverse(); }

QSeries QSeries::pow(long e) const {
  if (e == 0) return QSeries::constant(CycNum(Rat(1)), trunc_);
  QSeries base = e < 0 ? inverse() : *this;
  long n = std::abs(e);
  QSeries out = base;
  for (long i = 1; i < n; ++i) out = out * base;
  return out;
}

QSeries QSeries::scale(const CycNum& c) const {
  QSeries out(trunc_);
  out.den_ = den_;
  if (!c.is_zero())
    for (const auto& [n, cc] : coeffs_) out.coeffs_[n] = cc * c;
  out.normalize_den();
  return out;
}

QSeries QSeries::rescale(long m) const {
  if (m == 0) throw std::domain_error("rescale by zero");
  QSeries out(Frac(trunc_.num * m, trunc_.den));
  out.den_ = den_;
  for (const auto& [n, c] : coeffs_) out.coeffs_[n * m] = c;
  out.normalize_den();
  return out;
}

QSeries QSeries::truncate(Frac t) const {
  QSeries out(min(t, trunc_));
  out.den_ = den_;
  for (const auto& [n, c] : coeffs_)
    if (Frac(n, den_) < out.trunc_) out.coeffs_[n] = c;
  out.normalize_den();
  return out;
}

QSeries QSeries::galois(long k) const {
  QSeries out(trunc_);
  out.den_ = den_;
  for (const auto& [n, c] : coeffs_) out.coeffs_[n] = c.galois(k);
  return out;
}

bool QSeries::operator==(const QSeries& o) const {
  return den_ == o.den_ && trunc_ == o.trunc_ && coeffs_ == o.coeffs_;
}

std::string QSeries::pretty() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  bool has_neg = coeffs_.begin()->first < 0;
  bool has_pos = coeffs_.rbegin()->first > 0;
  bool zero_written = false;
  for (const auto& [n, c] : coeffs_) {
    Frac e(n, den_);
    if (has_neg && has_pos && e.num > 0 && !zero_written && !coeffs_.count(0)) {
      os << (first ? "0" : " + 0");
      first = false;
      zero_written = true;
    }
    std::string cs = c.str();
    bool needs_paren = cs.find(' ') != std::string::npos;
    std::string coef;
    if (cs == "1" && e.num != 0)
      coef = "";
    else if (cs == "-1" && e.num != 0)
      coef = "-";
    else
      coef = needs_paren ? "(" + cs + ")" : cs;
    std::string qpart;
    if (e.num != 0) {
      if (e == Frac(1))
        qpart = "q";
      else
        qpart = "q^{" + e.str() + "}";
    }
    std::string term;
    if (qpart.empty())
      term = coef.empty() ? "1" : (coef == "-" ? "-1" : coef);
    else if (coef.empty() || coef == "-")
      term = coef + qpart;
    else
      term = coef + "*" + qpart;
    if (first) {
      os << term;
      first = false;
    } else if (!term.empty() && term[0] == '-') {
      os << " - " << term.substr(1);
    } else {
      os << " + " << term;
    }
    if (n == 0) zero_written = true;
  }
  return os.str();
}

std::string QSeries::lines() const {
  std::ostringstream os;
  for (const auto& [n, c] : coeffs_) {
    Frac e(n, den_);
    os << "EXP " << e.num << "/" << e.den << " COEFF " << c.str() << "\n";
  }
  return os.str();
}

}  // namespace moonshine
