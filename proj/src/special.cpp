#include "hkt/special.hpp"

#include <cmath>

#include "hkt/errors.hpp"

namespace hkt {

namespace {

const cplx kI(0.0, 1.0);

double reduce_mod1(double x)
{
    double r = x - std::floor(x);
    return r >= 1.0 ? 0.0 : r;
}

}  // namespace

ModularPoint::ModularPoint(cplx tau) : tau_(tau)
{
    require(std::isfinite(tau.real()) && std::isfinite(tau.imag()), "tau is not finite");
    require(tau.imag() > 0.0, "tau must lie in the upper half plane");
    q_ = std::exp(kI * M_PI * tau);
}

FlatCharacter::FlatCharacter(double a, double b)
{
    require(std::isfinite(a) && std::isfinite(b), "character angles are not finite");
    a_ = reduce_mod1(a);
    b_ = reduce_mod1(b);
}

cplx jacobi_theta(cplx z, const ModularPoint& m, int terms)
{
    const cplx q = m.q(), q2 = q * q;
    const cplx c2 = 2.0 * std::cos(2.0 * M_PI * z);
    cplx prod = 1.0, qn = 1.0;
    const int cap = terms > 0 ? terms : kMaxProductTerms;
    for (int n = 1; n <= cap; ++n) {
        qn *= q2;
        const cplx f = (1.0 - qn) * (1.0 - c2 * qn + qn * qn);
        prod *= f;
        if (terms <= 0 && std::abs(f - 1.0) < 1e-16) break;
    }
    return -2.0 * std::exp(kI * M_PI * m.tau() / 4.0) * std::sin(M_PI * z) * prod;
}

cplx dedekind_eta(const ModularPoint& m, int terms)
{
    const cplx q2 = m.q() * m.q();
    cplx prod = 1.0, qn = 1.0;
    const int cap = terms > 0 ? terms : kMaxProductTerms;
    for (int n = 1; n <= cap; ++n) {
        qn *= q2;
        prod *= 1.0 - qn;
        if (terms <= 0 && std::abs(qn) < 1e-16) break;
    }
    return std::exp(kI * M_PI * m.tau() / 12.0) * prod;
}

cplx jacobi_theta_series(cplx z, const ModularPoint& m, int terms)
{
    cplx acc = 0.0;
    for (int n = 0; n < terms; ++n) {
        const double e = (n + 0.5) * (n + 0.5);
        acc += ((n % 2) ? -1.0 : 1.0) * std::exp(kI * M_PI * m.tau() * e) * std::sin((2.0 * n + 1.0) * M_PI * z);
    }
    return -2.0 * acc;
}

cplx dedekind_eta_series(const ModularPoint& m, int terms)
{
    cplx acc = 0.0;
    for (int k = -terms; k <= terms; ++k)
        acc += ((k % 2) ? -1.0 : 1.0) * std::exp(kI * M_PI * m.tau() * static_cast<double>(k * (3 * k - 1)));
    return std::exp(kI * M_PI * m.tau() / 12.0) * acc;
}

double ray_singer_det(double a, double b, const ModularPoint& m)
{
    require(std::isfinite(a) && std::isfinite(b), "character angles are not finite");
    const cplx tau = m.tau();
    const cplx v = std::exp(kI * M_PI * a * a * tau) * jacobi_theta(b - tau * a, m) / dedekind_eta(m);
    return std::norm(v);
}

double ray_singer_det(const FlatCharacter& c, const ModularPoint& m) { return ray_singer_det(c.a(), c.b(), m); }

}  // namespace hkt
