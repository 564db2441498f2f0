#pragma once

namespace latrel {

/// Standard normal CDF, evaluated through erfc so both tails keep full
/// relative precision.
double standard_normal_cdf(double z) noexcept;

/// Standard normal density.
double standard_normal_pdf(double z) noexcept;

}  // namespace latrel
