#include "moonshine/dsl.hpp"

#include <cctype>
#include <stdexcept>

namespace moonshine {

namespace {

DslTerm merge(const DslTerm& a, const DslTerm& b) {
  DslTerm out;
  out.scalar = a.scalar * b.scalar;
  out.etas = a.etas;
  out.etas.insert(out.etas.end(), b.etas.begin(), b.etas.end());
  out.e4_power = a.e4_power + b.e4_power;
  return out;
}

DslTerm invert(const DslTerm& t) {
  DslTerm out;
  out.scalar = t.scalar.inverse();
  out.etas = t.etas;
  for (auto& f : out.etas) f.exponent = -f.exponent;
  out.e4_power = -t.e4_power;
  return out;
}

DslTerm power(const DslTerm& t, long e) {
  if (e == 0) return DslTerm{};
  DslTerm base = e < 0 ? invert(t) : t;
  long n = std::abs(e);
  DslTerm out = base;
  for (long i = 1; i < n; ++i) out = merge(out, base);
  // collapse repeated identical factors into exponents
  DslTerm packed;
  packed.scalar = t.scalar.pow(e);
  packed.e4_power = t.e4_power * e;
  for (const auto& f : t.etas) {
    EtaFactor g = f;
    g.exponent = f.exponent * e;
    packed.etas.push_back(g);
  }
  return packed;
}

struct Parser {
  const std::string& s;
  size_t pos = 0;
  explicit Parser(const std::string& text) : s(text) {}

  [[noreturn]] void fail(const std::string& what) {
    throw std::domain_error("DSL parse error at position " + std::to_string(pos) + ": " + what);
  }
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
  long integer() {
    skip();
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
      fail("expected integer");
    return std::stol(s.substr(start, pos - start));
  }

  DslExpr primary() {
    skip();
    if (eat('(')) {
      DslExpr inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (s.compare(pos, 3, "eta") == 0) {
      pos += 3;
      EtaFactor f;
      skip();
      if (eat('[')) {
        f.shifted = true;
        f.a = integer();
        if (!eat('/')) fail("expected '/' in eta[a/p]");
        f.p = integer();
        if (!eat(']')) fail("expected ']'");
      } else if (eat('(')) {
        f.shifted = false;
        f.m = integer();
        if (!eat(')')) fail("expected ')'");
      } else {
        f.shifted = false;
        f.m = 1;
      }
      DslTerm t;
      t.etas.push_back(f);
      return DslExpr{{t}};
    }
    if (s.compare(pos, 2, "E4") == 0) {
      pos += 2;
      DslTerm t;
      t.e4_power = 1;
      return DslExpr{{t}};
    }
    if (s.compare(pos, 4, "sqrt") == 0) {
      pos += 4;
      DslTerm t;
      t.scalar = CycNum::sqrt_of(integer());
      return DslExpr{{t}};
    }
    if (pos < s.size() && s[pos] == 'i' &&
        (pos + 1 == s.size() || !std::isalnum(static_cast<unsigned char>(s[pos + 1])))) {
      ++pos;
      DslTerm t;
      t.scalar = CycNum::i();
      return DslExpr{{t}};
    }
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      Int num(s.substr(start, pos - start));
      Int den(1);
      size_t save = pos;
      if (eat('/')) {
        skip();
        size_t d0 = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == d0) {
          pos = save;  // the '/' was a series division, not a rational
        } else {
          // "1/5" inside eta[..] never reaches here; standalone a/b is a rational
          den = Int(s.substr(d0, pos - d0));
        }
      }
      DslTerm t;
      t.scalar = CycNum(make_rat(num, den));
      return DslExpr{{t}};
    }
    fail("expected factor");
  }

  DslExpr factor() {
    DslExpr base = primary();
    skip();
    if (eat('^')) {
      long e = integer();
      if (base.terms.size() != 1) fail("'^' needs a single product");
      return DslExpr{{power(base.terms[0], e)}};
    }
    return base;
  }

  DslExpr term() {
    DslExpr acc = factor();
    while (true) {
      skip();
      if (eat('*')) {
        DslExpr rhs = factor();
        DslExpr out;
        for (const auto& a : acc.terms)
          for (const auto& b : rhs.terms) out.terms.push_back(merge(a, b));
        acc = out;
      } else if (eat('/')) {
        DslExpr rhs = factor();
        if (rhs.terms.size() != 1) fail("division by a sum is not supported");
        DslTerm inv = invert(rhs.terms[0]);
        for (auto& a : acc.terms) a = merge(a, inv);
      } else {
        break;
      }
    }
    return acc;
  }

  DslExpr expr() {
    skip();
    bool neg = eat('-');
    if (!neg) eat('+');
    DslExpr acc = term();
    if (neg)
      for (auto& t : acc.terms) t.scalar = -t.scalar;
    while (true) {
      skip();
      if (eat('+')) {
        for (auto& t : term().terms) acc.terms.push_back(t);
      } else if (eat('-')) {
        for (auto t : term().terms) {
          t.scalar = -t.scalar;
          acc.terms.push_back(t);
        }
      } else {
        break;
      }
    }
    return acc;
  }
};

}  // namespace

DslExpr parse_eta_dsl(const std::string& text) {
  Parser p(text);
  DslExpr e = p.expr();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing input");
  if (e.terms.empty()) p.fail("empty expression");
  return e;
}

QSeries DslExpr::eval(long trunc) const {
  long build_trunc = trunc + 6;
  QSeries acc;
  CycNum constant;
  bool have = false;
  for (const DslTerm& t : terms) {
    if (t.etas.empty() && t.e4_power == 0) {
      constant += t.scalar;
      continue;
    }
    EtaTerm et;
    et.factors = t.etas;
    QSeries prod;
    bool have_series = false;
    if (!t.etas.empty()) {
      EtaQuotientSpec one;
      one.terms.push_back(et);
      one.additive_constant = CycNum();
      prod = build_eta_quotient(one, build_trunc);
      have_series = true;
    }
    if (t.e4_power != 0) {
      QSeries e4 = eisenstein_e4(build_trunc).pow(t.e4_power);
      prod = have_series ? prod * e4 : e4;
    }
    prod = prod.scale(t.scalar);
    acc = have ? acc + prod : prod;
    have = true;
  }
  if (!have) return QSeries::constant(constant, Frac(trunc + 1));
  Frac window = min(acc.trunc(), Frac(trunc + 1));
  acc = acc + QSeries::constant(constant, window);
  return acc.truncate(window);
}

std::optional<EtaQuotientSpec> DslExpr::quotient_spec() const {
  EtaQuotientSpec spec;
  for (const DslTerm& t : terms) {
    if (t.e4_power != 0) return std::nullopt;
    if (t.etas.empty()) {
      spec.additive_constant += t.scalar;
      continue;
    }
    EtaTerm et;
    et.weight = t.scalar;
    et.factors = t.etas;
    spec.terms.push_back(et);
  }
  if (spec.terms.empty()) return std::nullopt;
  return spec;
}

}  // namespace moonshine
