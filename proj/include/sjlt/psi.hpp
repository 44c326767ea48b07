#pragma once
// The piecewise Psi_p(M, sigma^2) bound: within constant factors it is the
// p-norm of a Poisson-like sum with scale M and variance sigma^2, and it is
// the target shape of the concentration inequalities the experiment suite
// checks. For p >= 2 it is sandwiched between (1/2)sqrt(p)*sigma and
// max{(1/2)sqrt(p)*sigma, p*M/(2e)}.

namespace sjlt {

// Which branch of the piecewise definition fired. Branch conditions are
// probed in order (low_p, then gaussian, then poisson_tail); at boundary
// points where several hold the earliest wins. The fallback only exists to
// make the evaluator total under floating point; mathematically the three
// branches cover the domain.
enum class PsiBranch { fallback = 0, low_p = 1, gaussian = 2, poisson_tail = 3 };

struct PsiValue {
    double value = 0.0;
    PsiBranch branch = PsiBranch::fallback;
};

// Requires p >= 2, scale > 0, sigma_sq > 0, all finite. Natural logs
// throughout.
PsiValue psi_eval(double p, double scale, double sigma_sq);

inline double psi(double p, double scale, double sigma_sq) {
    return psi_eval(p, scale, sigma_sq).value;
}

// True iff (1/2)sqrt(p)*sigma <= Psi_p <= max{(1/2)sqrt(p)*sigma, p*M/(2e)}
// at the evaluated point (with 1e-12 relative slack for rounding).
bool psi_sandwich_ok(double p, double scale, double sigma_sq);

} // namespace sjlt
