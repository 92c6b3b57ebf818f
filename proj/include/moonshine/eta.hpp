#pragma once

#include <vector>

#include "moonshine/qseries.hpp"

namespace moonshine {

// One eta factor: eta(tau + a/p)^exponent when shifted, else eta(m*tau)^exponent.
struct EtaFactor {
  bool shifted = false;
  long a = 0;
  long p = 1;
  long m = 1;
  long exponent = 1;
};

// weight * (product of factors), with the leading root-of-unity phase of the
// product divided out (Normalised Function Form keeps leading coefficients 1;
// the phase is retained so numeric evaluation applies the same convention).
struct EtaTerm {
  CycNum weight = CycNum(Rat(1));
  std::vector<EtaFactor> factors;
};

struct EtaQuotientSpec {
  std::vector<EtaTerm> terms;
  CycNum additive_constant;
  CycNum overall = CycNum(Rat(1));
};

// eta(tau) = q^(1/24) prod_{n>0} (1 - q^n), exact through q-power `trunc`.
QSeries eta_series(long trunc);
// eta(tau + a/p) = zeta_{24p}^a q^(1/24) prod (1 - zeta_p^{an} q^n)
QSeries eta_shifted(long a, long p, long trunc);
// eta(m*tau)
QSeries eta_scaled(long m, long trunc);
// E_4 = 1 + 240 sum sigma_3(n) q^n
QSeries eisenstein_e4(long trunc);
// J = E_4^3 / eta^24 - 744, coefficients through q^trunc
QSeries j_series(long trunc);

// The assembled quotient: sum of phase-normalized weighted terms, times
// `overall`, plus the additive constant. Exact coefficients through q^trunc.
QSeries build_eta_quotient(const EtaQuotientSpec& spec, long trunc);

// Leading root-of-unity coefficient of a term's eta product (the phase that
// build_eta_quotient divides out). Exposed for the prefactor-cancellation
// checks and for numeric evaluation.
CycNum eta_term_phase(const EtaTerm& term);

}  // namespace moonshine
