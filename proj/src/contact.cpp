#include "hkt/contact.hpp"

#include <algorithm>
#include <cmath>

#include "hkt/errors.hpp"
#include "hkt/kform.hpp"

namespace hkt {

bool PairedVector::finite() const
{
    for (int i = 0; i < 2; ++i)
        if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag()) || !std::isfinite(xi[i].real())
            || !std::isfinite(xi[i].imag()))
            return false;
    return true;
}

ProjPoint::ProjPoint(const std::array<cplx, 4>& x) : x_(x)
{
    double norm = 0.0;
    for (const auto& c : x_) {
        require(std::isfinite(c.real()) && std::isfinite(c.imag()), "non-finite homogeneous coordinate");
        norm += std::norm(c);
    }
    require(norm > 0.0, "homogeneous coordinates are all zero");
}

int ProjPoint::best_chart() const
{
    int best = 0;
    for (int i = 1; i < 4; ++i)
        if (std::abs(x_[static_cast<std::size_t>(i)]) > std::abs(x_[static_cast<std::size_t>(best)])) best = i;
    return best;
}

std::array<cplx, 4> ProjPoint::normalized() const
{
    double norm = 0.0;
    for (const auto& c : x_) norm += std::norm(c);
    const cplx lead = x_[static_cast<std::size_t>(best_chart())];
    const cplx scale = std::conj(lead) / (std::abs(lead) * std::sqrt(norm));
    std::array<cplx, 4> r;
    for (std::size_t i = 0; i < 4; ++i) r[i] = x_[i] * scale;
    return r;
}

std::array<cplx, 4> ProjPoint::chart_representative(int chart) const
{
    require(chart >= 0 && chart < 4, "chart index out of range");
    const cplx c = x_[static_cast<std::size_t>(chart)];
    double norm = 0.0;
    for (const auto& a : x_) norm += std::norm(a);
    require(std::abs(c) > 1e-12 * std::sqrt(norm), "point is off this affine chart");
    std::array<cplx, 4> r;
    for (std::size_t i = 0; i < 4; ++i) r[i] = x_[i] / c;
    r[static_cast<std::size_t>(chart)] = 1.0;
    return r;
}

double proj_distance(const ProjPoint& p, const ProjPoint& q)
{
    const auto a = p.normalized(), b = q.normalized();
    cplx ip = 0.0;
    for (std::size_t i = 0; i < 4; ++i) ip += std::conj(b[i]) * a[i];
    // |a - <b, a> b|, avoiding the cancellation in 1 - |<a, b>|^2
    double r = 0.0;
    for (std::size_t i = 0; i < 4; ++i) r += std::norm(a[i] - ip * b[i]);
    return std::sqrt(r);
}

// ---------------------------------------------------------- Eguchi-Hanson

std::pair<int, int> eh_lift_weights(int n) { return {n + 1, 1 - n}; }

PairedVector eh_act(const PairedVector& p, cplx nu, int a, int b)
{
    require(nu != cplx(0.0), "nu must be nonzero");
    const cplx na = std::pow(nu, a), nb = std::pow(nu, b);
    return {{na * p.v[0], na * p.v[1]}, {nb * p.xi[0], nb * p.xi[1]}};
}

double eh_constraint_check_weights(const PairedVector& p, cplx zeta, cplx nu, int a, int b)
{
    require(p.finite(), "non-finite paired vector");
    require(std::abs(p.pairing() - zeta) <= 1e-9 * (1.0 + std::abs(zeta)), "<v, xi> differs from zeta");
    return std::abs(eh_act(p, nu, a, b).pairing() - nu * nu * zeta);
}

double eh_constraint_check(const PairedVector& p, cplx zeta, cplx nu, int n)
{
    const auto [a, b] = eh_lift_weights(n);
    return eh_constraint_check_weights(p, zeta, nu, a, b);
}

LaurentPoly eh_constraint_symbolic(int a, int b)
{
    const Ctx ctx = SymContext::make({"v1", "v2", "xi1", "xi2", "nu"});
    const auto var = [&](int i) { return LaurentPoly::var(ctx, i); };
    const LaurentPoly nu = var(4);
    const LaurentPoly pair = var(0) * var(2) + var(1) * var(3);
    return nu.pow(a) * nu.pow(b) * pair - nu.pow(2) * pair;
}

ProjPoint eh_quotient_coords(const PairedVector& p)
{
    require(p.finite(), "non-finite paired vector");
    return ProjPoint({p.v[0], p.v[1], p.xi[0], p.xi[1]});
}

// ---------------------------------------------------------------- contact

cplx theta_wedge_dtheta(const ChartOneForm& theta, const std::array<cplx, 3>& y)
{
    const double re[3] = {y[0].real(), y[1].real(), y[2].real()};
    const JetVec s = seed(re, 1);
    std::array<Jet, 3> yj;
    for (std::size_t i = 0; i < 3; ++i) yj[i] = s[i] + Jet(cplx(0.0, y[i].imag()));
    const auto comp = theta(yj);
    KFormJ t(3, 1);
    for (std::size_t i = 0; i < 3; ++i) t.slot(i) = comp[i];
    return wedge(value_of(t), exterior_d(t)).slot(0);
}

ChartOneForm contact_form_in_chart(int chart)
{
    require(chart >= 0 && chart < 4, "chart index out of range");
    return [chart](const std::array<Jet, 3>& y) {
        std::array<Jet, 4> x;
        std::array<int, 4> slot{-1, -1, -1, -1};
        for (int i = 0, j = 0; i < 4; ++i) {
            if (i == chart) {
                x[static_cast<std::size_t>(i)] = Jet(1.0);
            } else {
                slot[static_cast<std::size_t>(i)] = j;
                x[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(j++)];
            }
        }
        // theta = xi1 dv1 + xi2 dv2 - v1 dxi1 - v2 dxi2 on (v1, v2, xi1, xi2).
        const std::array<Jet, 4> coeff{x[2], x[3], -x[0], -x[1]};
        std::array<Jet, 3> out{Jet(0.0), Jet(0.0), Jet(0.0)};
        for (int i = 0; i < 4; ++i)
            if (slot[static_cast<std::size_t>(i)] >= 0)
                out[static_cast<std::size_t>(slot[static_cast<std::size_t>(i)])] = coeff[static_cast<std::size_t>(i)];
        return out;
    };
}

std::array<cplx, 3> chart_coordinates(const ProjPoint& p, int chart)
{
    const auto r = p.chart_representative(chart);
    std::array<cplx, 3> y;
    for (int i = 0, j = 0; i < 4; ++i)
        if (i != chart) y[static_cast<std::size_t>(j++)] = r[static_cast<std::size_t>(i)];
    return y;
}

double contact_nondegeneracy_in_chart(const ProjPoint& p, int chart)
{
    return std::abs(theta_wedge_dtheta(contact_form_in_chart(chart), chart_coordinates(p, chart)));
}

double contact_nondegeneracy(const ProjPoint& p) { return contact_nondegeneracy_in_chart(p, p.best_chart()); }

cplx moment_section_value(const ProjPoint& p)
{
    const auto r = p.chart_representative(p.best_chart());
    return r[0] * r[2] + r[1] * r[3];
}

// --------------------------------------------------------------- flat i_Y A

CocycleCheck flat_iYA_check(int k, const std::optional<OneFormSym>& extra)
{
    const FlatTwistor f = flat_twistor(k);
    OneFormSym a_u = flat_connection_forms(k).a_u;
    if (extra) a_u += *extra;
    CocycleCheck c{"flat.iYA-k" + std::to_string(k), {}};
    c.parts.emplace_back("i_Y A_U = 0", contract(f.y_u(), a_u), ExpLaurent(f.charts.ctx));
    c.parts.emplace_back("i_Y i_Y w_U = 0", contract(f.y_u(), contract(f.y_u(), f.omega_u())),
                         ExpLaurent(f.charts.ctx));
    return c;
}

}  // namespace hkt
