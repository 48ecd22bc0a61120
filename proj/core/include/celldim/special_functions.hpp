#pragma once

namespace celldim {

// Exponential integral E1(x) = \int_x^\infty e^{-t}/t dt, x > 0.
//
// Power series below x = 1, modified Lentz continued fraction above. Both
// branches reach close to full double precision over (0, inf).
double expint_e1(double x);

// e^x E1(x), evaluated without forming e^x for large x so it stays finite
// (it behaves like 1/x as x -> inf).
double expint_e1_scaled(double x);

}  // namespace celldim
