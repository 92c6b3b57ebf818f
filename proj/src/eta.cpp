#include "moonshine/eta.hpp"

#include <stdexcept>

namespace moonshine {

QSeries eta_series(long trunc) {
  if (trunc < 1) throw std::domain_error("eta_series: trunc must be >= 1");
  Frac window(trunc);
  QSeries prod = QSeries::constant(CycNum(Rat(1)), window);
  for (long n = 1; n <= trunc; ++n) {
    QSeries f = QSeries::constant(CycNum(Rat(1)), window);
    f.set(Frac(n), CycNum(Rat(-1)));
    prod = prod * f;
    prod = prod.truncate(window);
  }
  return QSeries::monomial(CycNum(Rat(1)), Frac(1, 24), window + Frac(1, 24)) * prod;
}

QSeries eta_shifted(long a, long p, long trunc) {
  if (a < 0 || a >= p) throw std::domain_error("eta_shifted: need 0 <= a < p");
  Frac window(trunc);
  QSeries prod = QSeries::constant(CycNum(Rat(1)), window);
  for (long n = 1; n <= trunc; ++n) {
    QSeries f = QSeries::constant(CycNum(Rat(1)), window);
    f.set(Frac(n), -CycNum::root_of_unity(p, a * n));
    prod = prod * f;
    prod = prod.truncate(window);
  }
  CycNum prefactor = CycNum::root_of_unity(24 * p, a);
  return QSeries::monomial(prefactor, Frac(1, 24), window + Frac(1, 24)) * prod;
}

QSeries eta_scaled(long m, long trunc) {
  if (m < 1) throw std::domain_error("eta_scaled: m must be >= 1");
  long inner = trunc / m + 2;
  return eta_series(inner).rescale(m).truncate(Frac(trunc) + Frac(m, 24));
}

QSeries eisenstein_e4(long trunc) {
  if (trunc < 1) throw std::domain_error("eisenstein_e4: trunc must be >= 1");
  QSeries s(Frac(trunc + 1));
  s.set(Frac(0), CycNum(Rat(1)));
  for (long n = 1; n <= trunc; ++n) {
    Int sigma3(0);
    for (long d = 1; d <= n; ++d)
      if (n % d == 0) sigma3 += Int(d) * d * d;
    s.set(Frac(n), CycNum(make_rat(Int(240) * sigma3, Int(1))));
  }
  return s;
}

QSeries j_series(long trunc) {
  long w = trunc + 2;
  QSeries e4 = eisenstein_e4(w + 1);
  QSeries eta24 = eta_series(w).pow(24);
  QSeries j = e4.pow(3) / eta24 - QSeries::constant(CycNum(Rat(744)), Frac(w));
  return j.truncate(Frac(trunc + 1));
}

namespace {

QSeries factor_series(const EtaFactor& f, long build_trunc) {
  QSeries base = f.shifted ? eta_shifted(f.a, f.p, build_trunc) : eta_scaled(f.m, build_trunc);
  return base.pow(f.exponent);
}

}  // namespace

CycNum eta_term_phase(const EtaTerm& term) {
  // leading coefficient of the product: every (1 - zeta q^n) opens with 1, so
  // this is the product of the q^(1/24) prefactors alone
  CycNum phase(Rat(1));
  for (const EtaFactor& f : term.factors)
    if (f.shifted) phase *= CycNum::root_of_unity(24 * f.p, f.a).pow(f.exponent);
  return phase;
}

QSeries build_eta_quotient(const EtaQuotientSpec& spec, long trunc) {
  if (spec.terms.empty()) throw std::domain_error("eta quotient spec with no terms");
  long build_trunc = trunc + 6;
  QSeries acc;
  bool have = false;
  for (const EtaTerm& term : spec.terms) {
    if (term.factors.empty()) throw std::domain_error("eta term with no factors");
    QSeries prod = factor_series(term.factors.front(), build_trunc);
    for (size_t i = 1; i < term.factors.size(); ++i)
      prod = prod * factor_series(term.factors[i], build_trunc);
    CycNum lead = prod.raw().begin()->second;
    long order = 0, expo = 0;
    if (lead.as_root_of_unity(&order, &expo) && !(order == 1))
      prod = prod.scale(lead.inverse());
    prod = prod.scale(term.weight);
    acc = have ? acc + prod : prod;
    have = true;
  }
  acc = acc.scale(spec.overall);
  Frac window = min(acc.trunc(), Frac(trunc + 1));
  acc = acc + QSeries::constant(spec.additive_constant, window);
  return acc.truncate(window);
}

}  // namespace moonshine
