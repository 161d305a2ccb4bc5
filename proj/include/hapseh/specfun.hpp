#pragma once

#include <vector>

// Real-argument special functions needed by the closed forms. Only integer
// Bessel orders and integer hypergeometric parameters are supported.

namespace hapseh::specfun {

/// ln Γ(x) for x > 0. Throws DomainError otherwise.
double ln_gamma(double x);

/// Rising factorial a(a+1)...(a+k-1); (a)_0 = 1.
double pochhammer(double a, unsigned k);

/// K_n(x) for integer n (negative orders map to |n|) and x > 0.
/// Underflows to 0 for large x instead of raising.
double bessel_k_int(int n, double x);

/// ln K_n(x). Finite wherever bessel_k_int would over- or underflow.
double log_bessel_k_int(int n, double x);

/// ln K_0(x) ... ln K_{max_order}(x) from a single seed evaluation.
std::vector<double> log_bessel_k_orders(int max_order, double x);

/// ₁F₁(m2; 1; z) through Kummer's transformation, which leaves a finite
/// polynomial for positive integer m2:
///   exp(z) Σ_{k=0}^{m2-1} (1-m2)_k (-z)^k / (k!)²
/// The k = m2 term of the textbook sum vanishes and is not evaluated.
double hyp1f1_finite(int m2, double z);

/// The polynomial part of hyp1f1_finite, without the exp(z) factor.
double hyp1f1_finite_poly(int m2, double z);

/// Neumaier-compensated accumulator. Summation order still matters for the
/// last bit, so callers that need bit-reproducibility fix the order.
class CompensatedSum {
public:
    void add(double v) noexcept {
        const double t = sum_ + v;
        if ((sum_ >= 0 ? sum_ : -sum_) >= (v >= 0 ? v : -v))
            carry_ += (sum_ - t) + v;
        else
            carry_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const noexcept { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

} // namespace hapseh::specfun
