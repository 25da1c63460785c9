#ifndef PITCHGUARD_SPECIAL_FUNCTIONS_HPP
#define PITCHGUARD_SPECIAL_FUNCTIONS_HPP

namespace pitchguard {

// Regularized lower incomplete gamma P(a, x); series for x < a+1,
// continued fraction otherwise. Absolute error <= 1e-12 over the
// chi-square range used here.
double gamma_p(double a, double x);

// Upper tail Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

// Chi-square survival function: P[X > x] with df degrees of freedom.
double chi_square_sf(double x, int df);

// Standard normal survival function P[Z > z].
double normal_sf(double z);

} // namespace pitchguard

#endif
