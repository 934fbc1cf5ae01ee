#pragma once

namespace dequad::detail {

// exp(-(1/s + 1/(1-s))), the un-normalized IMT density.
double imt_density(double s) noexcept;

// Un-normalized int_0^u of the density, u in [0, 1/2].
double imt_lower_integral(double u);

// phi_IMT(u) for u in [0, 1]. Only lower-half integrals are evaluated
// (u > 1/2 goes through 1 - phi(1 - u)), so a small result is never the
// difference of two nearly equal numbers. Memoized.
double imt_cumulative(double u);

}  // namespace dequad::detail
