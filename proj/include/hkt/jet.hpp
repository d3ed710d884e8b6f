#pragma once

// Second-order forward-mode jets over complex scalars.
//
// A Jet carries f, grad f and hess f with respect to at most kMaxDim real
// coordinates. Constants have n == 0 and broadcast against any dimension.

#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "hkt/errors.hpp"

namespace hkt {

using cplx = std::complex<double>;

inline constexpr int kMaxDim = 10;

struct Jet {
    cplx v{};
    std::array<cplx, kMaxDim> g{};
    std::array<cplx, kMaxDim * kMaxDim> h{};
    int n = 0;
    int order = 2;  // derivatives known exactly up to this order

    Jet() = default;
    Jet(double c) : v(c) {}
    Jet(cplx c) : v(c) {}

    static Jet variable(cplx value, int index, int dim, int order)
    {
        require(dim >= 0 && dim <= kMaxDim, "jet dimension exceeds kMaxDim");
        require(index >= 0 && index < dim, "jet seed index out of range");
        Jet j(value);
        j.n = dim;
        j.order = order;
        j.g[index] = 1.0;
        return j;
    }

    cplx hess(int i, int k) const { return h[i * kMaxDim + k]; }
    cplx& hess(int i, int k) { return h[i * kMaxDim + k]; }
};

using JetVec = std::vector<Jet>;

// Seeds jets for coordinates x at the requested order.
inline JetVec seed(std::span<const double> x, int order)
{
    const int n = static_cast<int>(x.size());
    JetVec out;
    out.reserve(x.size());
    for (int i = 0; i < n; ++i) out.push_back(Jet::variable(x[i], i, n, order));
    return out;
}

namespace detail {

inline int merged_dim(const Jet& a, const Jet& b)
{
    if (a.n && b.n) require(a.n == b.n, "jet dimension mismatch");
    return a.n ? a.n : b.n;
}

inline int merged_order(const Jet& a, const Jet& b)
{
    return a.order < b.order ? a.order : b.order;
}

// f(x) with f0 = f(x.v), f1 = f'(x.v), f2 = f''(x.v)
inline Jet chain(const Jet& x, cplx f0, cplx f1, cplx f2)
{
    Jet r(f0);
    r.n = x.n;
    r.order = x.order;
    for (int i = 0; i < x.n; ++i) r.g[i] = f1 * x.g[i];
    if (x.order >= 2) {
        for (int i = 0; i < x.n; ++i)
            for (int k = 0; k < x.n; ++k)
                r.hess(i, k) = f1 * x.hess(i, k) + f2 * x.g[i] * x.g[k];
    }
    return r;
}

}  // namespace detail

inline Jet operator+(const Jet& a, const Jet& b)
{
    Jet r(a.v + b.v);
    r.n = detail::merged_dim(a, b);
    r.order = detail::merged_order(a, b);
    for (int i = 0; i < r.n; ++i) r.g[i] = a.g[i] + b.g[i];
    if (r.order >= 2)
        for (int i = 0; i < r.n; ++i)
            for (int k = 0; k < r.n; ++k) r.hess(i, k) = a.hess(i, k) + b.hess(i, k);
    return r;
}

inline Jet operator-(const Jet& a)
{
    Jet r = a;
    r.v = -r.v;
    for (int i = 0; i < r.n; ++i) r.g[i] = -r.g[i];
    if (r.order >= 2)
        for (int i = 0; i < r.n; ++i)
            for (int k = 0; k < r.n; ++k) r.hess(i, k) = -r.hess(i, k);
    return r;
}

inline Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }

inline Jet operator*(const Jet& a, const Jet& b)
{
    Jet r(a.v * b.v);
    r.n = detail::merged_dim(a, b);
    r.order = detail::merged_order(a, b);
    for (int i = 0; i < r.n; ++i) r.g[i] = a.v * b.g[i] + b.v * a.g[i];
    if (r.order >= 2)
        for (int i = 0; i < r.n; ++i)
            for (int k = 0; k < r.n; ++k)
                r.hess(i, k) = a.v * b.hess(i, k) + b.v * a.hess(i, k)
                             + a.g[i] * b.g[k] + b.g[i] * a.g[k];
    return r;
}

inline Jet inv(const Jet& a)
{
    if (a.v == cplx(0.0)) throw EvaluationError("jet division by zero");
    const cplx u = 1.0 / a.v;
    return detail::chain(a, u, -u * u, 2.0 * u * u * u);
}

inline Jet operator/(const Jet& a, const Jet& b) { return a * inv(b); }

inline Jet& operator+=(Jet& a, const Jet& b) { return a = a + b; }
inline Jet& operator-=(Jet& a, const Jet& b) { return a = a - b; }
inline Jet& operator*=(Jet& a, const Jet& b) { return a = a * b; }

inline Jet exp(const Jet& a)
{
    const cplx e = std::exp(a.v);
    return detail::chain(a, e, e, e);
}

inline Jet log(const Jet& a)
{
    if (a.v == cplx(0.0)) throw EvaluationError("jet log of zero");
    return detail::chain(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v));
}

inline Jet sin(const Jet& a)
{
    return detail::chain(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v));
}

inline Jet cos(const Jet& a)
{
    return detail::chain(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v));
}

inline Jet sqrt(const Jet& a)
{
    const cplx s = std::sqrt(a.v);
    if (s == cplx(0.0)) throw EvaluationError("jet sqrt at zero");
    return detail::chain(a, s, 0.5 / s, -0.25 / (s * a.v));
}

inline Jet conj(const Jet& a)
{
    // Derivatives are with respect to real coordinates, so conjugation is entrywise.
    Jet r = a;
    r.v = std::conj(r.v);
    for (int i = 0; i < r.n; ++i) r.g[i] = std::conj(r.g[i]);
    if (r.order >= 2)
        for (int i = 0; i < r.n; ++i)
            for (int k = 0; k < r.n; ++k) r.hess(i, k) = std::conj(r.hess(i, k));
    return r;
}

inline Jet pow(const Jet& a, int e)
{
    if (e == 0) return Jet(1.0);
    if (e < 0) return inv(pow(a, -e));
    Jet r = a;
    for (int i = 1; i < e; ++i) r = r * a;
    return r;
}

// Order-1 jets of the partial derivatives of f, using its Hessian.
inline JetVec gradient_jets(const Jet& f)
{
    require(f.order >= 2, "gradient_jets needs an order-2 jet");
    JetVec out(f.n);
    for (int a = 0; a < f.n; ++a) {
        Jet d(f.g[a]);
        d.n = f.n;
        d.order = 1;
        for (int c = 0; c < f.n; ++c) d.g[c] = f.hess(a, c);
        out[a] = d;
    }
    return out;
}

inline Jet real_part(const Jet& a) { return (a + conj(a)) * Jet(0.5); }

}  // namespace hkt
