#pragma once

#include "qheis/hilbert.hpp"

namespace qheis {

// The multiplicative unitary on H (x) H:
//   sigma(x,y,r,x',y',r') = (s x, s y, r + r', x' - s x, y' - s y, r'),  s = e^{-lambda r'}
//   m = s^n ebar[eta(r') beta(s x, y' - s y)]
// Every other operator that needs it is built from this single definition.
WeightedCompositionOp<2> fundamental_unitary(const DeformationParams& params);

}  // namespace qheis
