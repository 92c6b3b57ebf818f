#include "moonshine/numeric.hpp"

#include <cmath>
#include <stdexcept>

namespace moonshine {

namespace {

constexpr double kPi = 3.14159265358979323846;

Cplx eta_product(Cplx tau) {
  Cplx q = std::exp(Cplx(0.0, 2.0 * kPi) * tau);
  Cplx prod = std::exp(Cplx(0.0, kPi / 12.0) * tau);  // q^(1/24)
  Cplx qn(1.0, 0.0);
  for (int n = 1; n <= 60; ++n) {
    qn *= q;
    prod *= (Cplx(1.0, 0.0) - qn);
  }
  return prod;
}

}  // namespace

Cplx eta_value(Cplx tau) {
  if (tau.imag() <= 0.0) throw std::domain_error("eta_value: Im tau must be positive");
  Cplx multiplier(1.0, 0.0);
  for (int guard = 0; guard < 4096; ++guard) {
    double n = std::round(tau.real());
    if (n != 0.0) {
      tau -= n;
      multiplier *= std::exp(Cplx(0.0, kPi * n / 12.0));
      continue;
    }
    if (std::abs(tau) < 1.0 - 1e-12) {
      // eta(tau) = eta(-1/tau) / sqrt(-i tau)
      multiplier /= std::sqrt(Cplx(0.0, -1.0) * tau);
      tau = Cplx(-1.0, 0.0) / tau;
      continue;
    }
    return multiplier * eta_product(tau);
  }
  throw std::runtime_error("eta_value: fundamental-domain reduction did not terminate");
}

Cplx eval_numeric(const EtaQuotientSpec& spec, Cplx tau) {
  if (tau.imag() <= 0.0) throw std::domain_error("eval_numeric: Im tau must be positive");
  Cplx total = spec.additive_constant.to_complex();
  Cplx overall = spec.overall.to_complex();
  for (const EtaTerm& term : spec.terms) {
    Cplx v = term.weight.to_complex();
    for (const EtaFactor& f : term.factors) {
      Cplx arg = f.shifted ? tau + Cplx(double(f.a) / double(f.p), 0.0)
                           : Cplx(double(f.m), 0.0) * tau;
      v *= std::pow(eta_value(arg), double(f.exponent));
    }
    v /= eta_term_phase(term).to_complex();
    total += overall * v;
  }
  return total;
}

Cplx eval_numeric(const QSeries& s, Cplx tau) {
  if (tau.imag() <= 0.0) throw std::domain_error("eval_numeric: Im tau must be positive");
  Cplx acc(0.0, 0.0);
  for (const auto& [n, c] : s.raw()) {
    Cplx expo = std::exp(Cplx(0.0, 2.0 * kPi) * tau * (double(n) / double(s.den())));
    acc += c.to_complex() * expo;
  }
  return acc;
}

}  // namespace moonshine
