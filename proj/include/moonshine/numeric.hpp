#pragma once

#include <complex>

#include "moonshine/eta.hpp"

namespace moonshine {

using Cplx = std::complex<double>;

// Dedekind eta at any point of the upper half plane. Arguments are first
// reduced into the fundamental domain with the classical T and S steps
// (eta(z+1) = e^{i pi/12} eta(z), eta(-1/z) = sqrt(-iz) eta(z)), then the
// defining product is summed; 60 factors leave the error far below 1e-12.
Cplx eta_value(Cplx tau);

// Evaluates the eta factors of the spec by their defining products, including
// the phase normalization that build_eta_quotient applies. Im tau > 0 required.
Cplx eval_numeric(const EtaQuotientSpec& spec, Cplx tau);

// Sums the stored terms of a truncated series at tau.
Cplx eval_numeric(const QSeries& s, Cplx tau);

}  // namespace moonshine
