#pragma once

// Jacobi theta and Dedekind eta as truncated products, and the determinant
// |exp(pi i a^2 tau) theta(b - tau a, tau) / eta(tau)|^2 of a flat bundle on
// the elliptic curve of modulus tau.

#include <complex>

namespace hkt {

using cplx = std::complex<double>;

// tau with Im tau > 0 and q = exp(i pi tau).
class ModularPoint {
public:
    explicit ModularPoint(cplx tau);
    cplx tau() const { return tau_; }
    cplx q() const { return q_; }

private:
    cplx tau_, q_;
};

// Character A -> exp(2 pi i a), B -> exp(2 pi i b), a and b reduced to [0, 1).
class FlatCharacter {
public:
    FlatCharacter(double a, double b);
    double a() const { return a_; }
    double b() const { return b_; }

private:
    double a_, b_;
};

// Product factors used at most; the loop stops earlier once a factor is within
// 1e-16 of 1.
inline constexpr int kMaxProductTerms = 4096;

// -2 q^{1/4} sin(pi z) prod_{m>=1} (1 - q^{2m})(1 - 2 cos(2 pi z) q^{2m} + q^{4m})
// terms > 0 forces that many factors.
cplx jacobi_theta(cplx z, const ModularPoint& m, int terms = 0);
// q^{1/12} prod_{n>=1} (1 - q^{2n})
cplx dedekind_eta(const ModularPoint& m, int terms = 0);

// Independent representations for cross-checks:
// -2 sum_{n>=0} (-1)^n q^{(n+1/2)^2} sin((2n+1) pi z)
cplx jacobi_theta_series(cplx z, const ModularPoint& m, int terms = 80);
// q^{1/12} sum_{k in Z} (-1)^k q^{k(3k-1)}
cplx dedekind_eta_series(const ModularPoint& m, int terms = 60);

// Formula on raw (a, b), no reduction mod 1.
double ray_singer_det(double a, double b, const ModularPoint& m);
double ray_singer_det(const FlatCharacter& c, const ModularPoint& m);

}  // namespace hkt
