#pragma once

#include <optional>
#include <string>
#include <vector>

#include "moonshine/eta.hpp"

namespace moonshine {

// One summand of a parsed expression: scalar * (eta factors) * E4^e4_power.
struct DslTerm {
  CycNum scalar = CycNum(Rat(1));
  std::vector<EtaFactor> etas;
  long e4_power = 0;
};

struct DslExpr {
  std::vector<DslTerm> terms;

  QSeries eval(long trunc) const;
  // The eta-quotient view (for numeric invariance checks); empty when the
  // expression uses E4 or has no eta content at all.
  std::optional<EtaQuotientSpec> quotient_spec() const;
};

// Grammar: sums/differences of products of factors; factors are
//   eta            eta(tau)
//   eta[a/p]       eta(tau + a/p)
//   eta(m)         eta(m tau)
//   E4             Eisenstein series of weight 4
//   sqrtN, i, rationals, parenthesized subexpressions; '^' integer powers.
// Example: "eta[0/5]*eta[2/5]*eta[3/5] / (eta[1/5]*eta[4/5]*eta(25)) + (1 - sqrt5)"
DslExpr parse_eta_dsl(const std::string& text);

}  // namespace moonshine
