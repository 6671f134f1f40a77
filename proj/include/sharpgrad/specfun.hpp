#pragma once

#include <stdexcept>

// Special functions needed by the gradient-constant computations: log-gamma,
// digamma, Pochhammer symbols, double factorials, beta, and the Gauss 2F1
// restricted to the logarithmic case c = a + b on z in [0, 1).

namespace sharpgrad::specfun {

// Thrown when a series or iteration fails to reach its target accuracy.
// `partial` carries the best value obtained so far.
class accuracy_error : public std::runtime_error {
public:
    accuracy_error(const std::string& what, double partial_value)
        : std::runtime_error(what), partial(partial_value) {}
    double partial;
};

// ln Gamma(x) for x > 0.  Lanczos approximation (g = 7, 9 terms) with the
// reflection formula below x = 0.5.
double log_gamma(double x);

// psi(x) = Gamma'(x)/Gamma(x) for x > 0.  Recurrence into x >= 10, then the
// Bernoulli asymptotic series.
double digamma(double x);

// Rising factorial (a)_k = a (a+1) ... (a+k-1), k >= 0.
double pochhammer(double a, int k);

// m!! for m >= -1 with the conventions (-1)!! = 0!! = 1.  Large arguments are
// evaluated through log_double_factorial to avoid overflow.
double double_factorial(int m);

// ln(m!!) for m >= -1, evaluated through log_gamma so that very large m stays
// in range.
double log_double_factorial(int m);

// Euler beta B(p, q), p, q > 0.
double beta(double p, double q);

// Parameter block for the logarithmic-case Gauss function.  The only
// parameter families used here satisfy c = a + b exactly.
struct Hyp2F1Args {
    double a;
    double b;
    double c;
    double z;

    // Parameters (n-2)/4, n/4, (n-1)/2 used by the dimension-n integrand.
    static Hyp2F1Args for_dimension(int n, double z);
};

// 2F1(a, b; a+b; z) on 0 <= z < 1.  Dispatches between the direct Gauss
// series (z <= crossover) and the 1-z connection series (z > crossover).
// Throws std::domain_error outside the parameter domain and accuracy_error
// if the term cap is reached before the tail becomes negligible.
double hyp2f1_logcase(const Hyp2F1Args& args);

// The two evaluation paths, exposed so they can be checked against each
// other.  Both are valid on the full interval; the direct series just gets
// slow near z = 1.
double hyp2f1_direct_series(const Hyp2F1Args& args);
double hyp2f1_connection(const Hyp2F1Args& args);

// 2F1(a, b; a+b; z) - 1 without cancellation for tiny z (series summed from
// the linear term).  Used where the integrand carries the 2F1 excess only.
double hyp2f1m1_logcase(const Hyp2F1Args& args);

// Plain Gauss series for generic parameters, |z| < 1.  Helper for contiguity
// spot checks; convergence responsibility is on the caller.
double hyp2f1_series(double a, double b, double c, double z);

// z value at which hyp2f1_logcase switches from the direct series to the
// connection series.
inline constexpr double hyp2f1_crossover = 0.75;

// Term caps for the series evaluations.
inline constexpr int hyp2f1_max_terms = 100000;

} // namespace sharpgrad::specfun
