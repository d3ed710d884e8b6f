#include "hkt/cocycles.hpp"

#include <algorithm>
#include <cmath>

#include "hkt/calculus.hpp"
#include "hkt/errors.hpp"

namespace hkt {

// ------------------------------------------------------------- CocycleCheck

SymExpr sym_difference(const SymExpr& a, const SymExpr& b)
{
    require(a.index() == b.index(), "identity sides have different kinds");
    return std::visit(
        [&](const auto& x) -> SymExpr {
            using T = std::decay_t<decltype(x)>;
            return x - std::get<T>(b);
        },
        a);
}

std::size_t sym_term_count(const SymExpr& e)
{
    return std::visit([](const auto& x) { return x.term_count(); }, e);
}

std::string sym_str(const SymExpr& e)
{
    return std::visit([](const auto& x) { return x.str(); }, e);
}

IdentityPart::IdentityPart(std::string l, SymExpr a, SymExpr b)
    : label(std::move(l)), lhs(std::move(a)), rhs(std::move(b)), defect(sym_difference(lhs, rhs))
{
}

bool CocycleCheck::pass() const
{
    return std::all_of(parts.begin(), parts.end(), [](const IdentityPart& p) { return p.holds(); });
}

std::size_t CocycleCheck::defect_terms() const
{
    std::size_t n = 0;
    for (const auto& p : parts) n += sym_term_count(p.defect);
    return n;
}

const IdentityPart& CocycleCheck::part(const std::string& label) const
{
    for (const auto& p : parts)
        if (p.label == label) return p;
    throw ContractViolation("no identity part named " + label);
}

// ------------------------------------------------------------------- charts

namespace {

bool contains(const std::vector<int>& v, int i) { return std::find(v.begin(), v.end(), i) != v.end(); }

bool regular_in(const LaurentPoly& q, const std::vector<int>& allowed, const std::vector<int>& forbidden)
{
    for (const auto& [e, c] : q.terms()) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            const int idx = static_cast<int>(i);
            if (e[i] == 0) continue;
            if (contains(forbidden, idx)) return false;
            if (contains(allowed, idx) && e[i] < 0) return false;
        }
    }
    return true;
}

}  // namespace

bool u_regular(const ChartPair& c, const LaurentPoly& q) { return regular_in(q, c.u_vars, c.v_vars); }

bool v_regular(const ChartPair& c, const LaurentPoly& q)
{
    const auto in_v = substitute(q, c.u_in_v).as_poly();
    require(in_v.has_value(), "chart rewrite left an exponential");
    return regular_in(*in_v, c.v_vars, c.u_vars);
}

ExpLaurent retrivialize(const ChartPair& c, const ExpLaurent& g, const LaurentPoly& u_shift, const LaurentPoly& v_shift)
{
    require(u_regular(c, u_shift), "U retrivialization is not holomorphic on U");
    require(v_regular(c, v_shift), "V retrivialization is not holomorphic on V");
    return g * ExpLaurent::exp(-u_shift) * ExpLaurent::exp(-v_shift);
}

namespace {

ExpLaurent ecst(const Ctx& ctx, const GaussRational& c) { return ExpLaurent::constant(ctx, c); }
const GaussRational kI = GaussRational::i();
GaussRational half() { return GaussRational::frac(1, 2); }

// (1/i zeta) as an ExpLaurent.
ExpLaurent inv_i_zeta(const Ctx& ctx, int zeta)
{
    return ExpLaurent(LaurentPoly::var(ctx, zeta).pow(-1) * (-kI));
}

// d zeta / d zetat expressed on U.
ExpLaurent transfer_factor(const ChartPair& c, int zeta, int zetat)
{
    return substitute(c.u_in_v.at(zeta).partial(zetat), c.v_in_u);
}

// Y pushed forward through the chart map and rewritten on V.
VectorFieldSym push_to_v(const ChartPair& c, const VectorFieldSym& y_u)
{
    VectorFieldSym y(c.ctx);
    for (int t : c.v_vars) y.add(t, substitute(y_u.apply(c.v_in_u.at(t)), c.u_in_v));
    return y;
}

}  // namespace

// --------------------------------------------------------------------- flat

FlatTwistor flat_twistor(int k)
{
    require(k >= 1, "k must be positive");
    std::vector<std::string> names;
    for (int i = 1; i <= k; ++i) names.push_back("v" + std::to_string(i));
    for (int i = 1; i <= k; ++i) names.push_back("xi" + std::to_string(i));
    names.push_back("zeta");
    for (int i = 1; i <= k; ++i) names.push_back("vt" + std::to_string(i));
    for (int i = 1; i <= k; ++i) names.push_back("xit" + std::to_string(i));
    names.push_back("zetat");

    FlatTwistor f{k, ChartPair{SymContext::make(names), {}, {}, {}, {}}};
    const Ctx& ctx = f.charts.ctx;
    const LaurentPoly zinv = LaurentPoly::var(ctx, f.zeta()).pow(-1);
    const LaurentPoly ztinv = LaurentPoly::var(ctx, f.zetat()).pow(-1);
    for (int i = 0; i < k; ++i) {
        f.charts.u_vars.push_back(f.v(i));
        f.charts.u_vars.push_back(f.xi(i));
        f.charts.v_vars.push_back(f.vt(i));
        f.charts.v_vars.push_back(f.xit(i));
        f.charts.v_in_u.emplace(f.vt(i), ExpLaurent(f.var(f.v(i)) * zinv));
        f.charts.v_in_u.emplace(f.xit(i), ExpLaurent(f.var(f.xi(i)) * zinv));
        f.charts.u_in_v.emplace(f.v(i), ExpLaurent(f.var(f.vt(i)) * ztinv));
        f.charts.u_in_v.emplace(f.xi(i), ExpLaurent(f.var(f.xit(i)) * ztinv));
    }
    f.charts.u_vars.push_back(f.zeta());
    f.charts.v_vars.push_back(f.zetat());
    f.charts.v_in_u.emplace(f.zetat(), ExpLaurent(zinv));
    f.charts.u_in_v.emplace(f.zeta(), ExpLaurent(ztinv));
    return f;
}

ExpLaurent FlatTwistor::transition() const
{
    const Ctx& ctx = charts.ctx;
    LaurentPoly q(ctx);
    for (int i = 0; i < k; ++i) q += var(v(i)) * var(xi(i));
    return ExpLaurent::exp(q * var(zeta()).pow(-1) * GaussRational::frac(-1, 2));
}

TwoFormSym FlatTwistor::omega_u() const
{
    TwoFormSym w(charts.ctx);
    for (int i = 0; i < k; ++i) w.add(v(i), xi(i), ecst(charts.ctx, half()));
    return w;
}

TwoFormSym FlatTwistor::omega_v() const
{
    TwoFormSym w(charts.ctx);
    for (int i = 0; i < k; ++i) w.add(vt(i), xit(i), ecst(charts.ctx, half()));
    return w;
}

VectorFieldSym FlatTwistor::y_u() const
{
    VectorFieldSym y(charts.ctx);
    for (int i = 0; i < k; ++i) y.add(xi(i), ExpLaurent(var(xi(i)) * kI));
    y.add(zeta(), ExpLaurent(var(zeta()) * kI));
    return y;
}

VectorFieldSym FlatTwistor::y_v() const { return push_to_v(charts, y_u()); }

CocycleCheck flat_cocycle_identity(int k, const std::optional<LaurentPoly>& exponent_shift)
{
    const FlatTwistor f = flat_twistor(k);
    const Ctx& ctx = f.charts.ctx;
    const LaurentPoly zeta = f.var(f.zeta());
    const LaurentPoly zinv = zeta.pow(-1);

    const OneFormSym iy_u = contract(f.y_u(), f.omega_u());
    const OneFormSym iy_v = pullback(contract(f.y_v(), f.omega_v()), f.charts.v_in_u);
    const ExpLaurent t = transfer_factor(f.charts, f.zeta(), f.zetat());
    const OneFormSym lhs = inv_i_zeta(ctx, f.zeta()) * (iy_u - t * iy_v);

    // -(1/2 zeta) sum (xi_i dv_i + zeta^2 vt_i dxit_i)
    OneFormSym displayed(ctx);
    for (int i = 0; i < k; ++i) {
        displayed.add(f.v(i), ExpLaurent(f.var(f.xi(i))));
        displayed.add(f.xit(i), ExpLaurent(zeta * zeta * f.var(f.vt(i))));
    }
    displayed = ExpLaurent(zinv * GaussRational::frac(-1, 2)) * displayed;
    const OneFormSym displayed_u = pullback(displayed, f.charts.v_in_u);

    // -(1/2 zeta) sum (xi_i dv_i + zeta v_i d(xi_i/zeta))
    OneFormSym expanded(ctx);
    for (int i = 0; i < k; ++i) {
        expanded.add(f.v(i), ExpLaurent(f.var(f.xi(i))));
        expanded += ExpLaurent(zeta * f.var(f.v(i))) * formal_d(ExpLaurent(f.var(f.xi(i)) * zinv));
    }
    expanded = ExpLaurent(zinv * GaussRational::frac(-1, 2)) * expanded;

    ExpLaurent g = f.transition();
    if (exponent_shift) g = g * ExpLaurent::exp(*exponent_shift);

    CocycleCheck c{"flat-cocycle-k" + std::to_string(k), {}};
    c.parts.emplace_back("cocycle from Y and omega equals the displayed form", lhs, displayed_u);
    c.parts.emplace_back("displayed form expands in U coordinates", displayed_u, expanded);
    c.parts.emplace_back("cocycle equals dlog g_UV", expanded, dlog(g));
    return c;
}

FlatConnection flat_connection_forms(int k)
{
    const FlatTwistor f = flat_twistor(k);
    const Ctx& ctx = f.charts.ctx;
    const LaurentPoly zinv = f.var(f.zeta()).pow(-1);
    const LaurentPoly ztinv = f.var(f.zetat()).pow(-1);

    OneFormSym a_u(ctx), a_v(ctx);
    for (int i = 0; i < k; ++i) {
        a_u.add(f.v(i), ExpLaurent(f.var(f.xi(i)) * zinv * half()));
        a_v.add(f.xit(i), ExpLaurent(f.var(f.vt(i)) * ztinv * GaussRational::frac(-1, 2)));
    }
    CocycleCheck c{"flat-connection-k" + std::to_string(k), {}};
    c.parts.emplace_back("A_V - A_U = dlog g_UV", pullback(a_v, f.charts.v_in_u) - a_u, dlog(f.transition()));
    c.parts.emplace_back("dA_U on a fibre = -w_U/zeta", formal_d(a_u).restrict_off({f.zeta()}),
                         ExpLaurent(-zinv) * f.omega_u());
    return {a_u, a_v, c};
}

GaussRational flat_fibre_factor(int k)
{
    const FlatTwistor f = flat_twistor(k);
    const FlatConnection fc = flat_connection_forms(k);
    const TwoFormSym da = formal_d(fc.a_u).restrict_off({f.zeta()});
    const TwoFormSym w = ExpLaurent(f.var(f.zeta()).pow(-1)) * f.omega_u();
    require(!w.is_zero() && !da.is_zero(), "fibre forms vanish");
    const auto& [ij, cw] = *w.coefficients().begin();
    const auto pw = cw.as_poly();
    const auto pa = da.coeff(ij.first, ij.second).as_poly();
    require(pw && pa && pw->is_monomial() && pa->is_monomial(), "fibre coefficients are not monomials");
    require(pw->terms().begin()->first == pa->terms().begin()->first, "dA_U is not proportional to w_U/zeta");
    const GaussRational c = pa->terms().begin()->second / pw->terms().begin()->second;
    require((da - ecst(f.charts.ctx, c) * w).is_zero(), "dA_U is not proportional to w_U/zeta");
    return c;
}

std::vector<std::complex<double>> flat_connection_difference_numeric(int k, std::span<const std::complex<double>> x)
{
    using C = std::complex<double>;
    require(static_cast<int>(x.size()) == 2 * k + 1, "point must be (v, xi, zeta)");
    const C zeta = x[static_cast<std::size_t>(2 * k)];
    require(zeta != C(0.0), "zeta = 0 is outside U n V");
    const C zetat = 1.0 / zeta;
    std::vector<C> out(x.size(), 0.0);
    for (int i = 0; i < k; ++i) {
        const C v = x[static_cast<std::size_t>(i)];
        const C xi = x[static_cast<std::size_t>(k + i)];
        const C vt = v / zeta;
        // A_U
        out[static_cast<std::size_t>(i)] -= xi / (2.0 * zeta);
        // A_V = -vt dxit / 2 zetat, with dxit = dxi/zeta - xi dzeta/zeta^2.
        const C coef = -vt / (2.0 * zetat);
        out[static_cast<std::size_t>(k + i)] += coef / zeta;
        out[static_cast<std::size_t>(2 * k)] += coef * (-xi / (zeta * zeta));
    }
    return out;
}

double flat_log_h_u(std::span<const std::complex<double>> z, std::span<const std::complex<double>> w,
                    std::complex<double> zeta)
{
    require(z.size() == w.size(), "z and w differ in length");
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i)
        acc += z[i] * std::conj(z[i]) - w[i] * std::conj(w[i]) + zeta * std::conj(z[i] * w[i])
             + std::conj(zeta) * z[i] * w[i];
    return 0.5 * acc.real();
}

double flat_hermitian_defect(std::span<const std::complex<double>> z, std::span<const std::complex<double>> w,
                             std::complex<double> zeta)
{
    require(zeta != std::complex<double>(0.0), "log h_V needs zeta != 0");
    std::complex<double> vxi = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const auto v = z[i] + zeta * std::conj(w[i]);
        const auto xi = w[i] - zeta * std::conj(z[i]);
        vxi += v * xi;
    }
    const double log_g = -0.5 * (vxi / zeta).real();
    const double log_h_v = -flat_log_h_u(z, w, -1.0 / std::conj(zeta));
    return std::abs(flat_log_h_u(z, w, zeta) - 2.0 * log_g - log_h_v);
}

double flat_hermitian_curvature_defect(std::span<const std::complex<double>> z, std::span<const std::complex<double>> w,
                                       std::complex<double> zeta)
{
    require(z.size() == w.size() && !z.empty(), "z and w must be non-empty and equal in length");
    const int k = static_cast<int>(z.size());
    const int n = 4 * k + 2;
    require(n <= kMaxDim, "too many copies for the jet capacity");
    std::vector<double> x;
    for (int i = 0; i < k; ++i) {
        const auto zi = z[static_cast<std::size_t>(i)], wi = w[static_cast<std::size_t>(i)];
        x.insert(x.end(), {zi.real(), zi.imag(), wi.real(), wi.imag()});
    }
    x.push_back(zeta.real());
    x.push_back(zeta.imag());
    const JetVec s = seed(x, 2);
    const Jet I(cplx(0.0, 1.0));
    auto at = [&](int i) { return s[static_cast<std::size_t>(i)]; };

    const Jet zt = at(n - 2) + I * at(n - 1);
    Jet logh(0.0);
    std::vector<Jet> hol;
    for (int i = 0; i < k; ++i) {
        const Jet zi = at(4 * i) + I * at(4 * i + 1);
        const Jet wi = at(4 * i + 2) + I * at(4 * i + 3);
        logh = logh + zi * conj(zi) - wi * conj(wi) + zt * conj(zi) * conj(wi) + conj(zt) * zi * wi;
        hol.push_back(zi + zt * conj(wi));
        hol.push_back(wi - zt * conj(zi));
    }
    logh = logh * Jet(0.5);
    hol.push_back(zt);

    // Real Jacobian of the holomorphic coordinates, order-1 entries.
    MatJ jac(n);
    for (int m = 0; m < 2 * k + 1; ++m) {
        const JetVec re = gradient_jets(real_part(hol[static_cast<std::size_t>(m)]));
        const JetVec im = gradient_jets(real_part(-I * hol[static_cast<std::size_t>(m)]));
        for (int a = 0; a < n; ++a) {
            jac(2 * m, a) = re[static_cast<std::size_t>(a)];
            jac(2 * m + 1, a) = im[static_cast<std::size_t>(a)];
        }
    }
    Eigen::MatrixXd i0 = Eigen::MatrixXd::Zero(n, n);
    for (int m = 0; m < 2 * k + 1; ++m) {
        i0(2 * m + 1, 2 * m) = 1.0;
        i0(2 * m, 2 * m + 1) = -1.0;
    }
    const MatJ iz = inverse(jac) * MatJ::constant(i0) * jac;

    const JetVec grad = gradient_jets(logh);
    KFormJ dc(n, 1);
    for (int b = 0; b < n; ++b) {
        Jet acc(0.0);
        for (int a = 0; a < n; ++a) acc = acc - grad[static_cast<std::size_t>(a)] * iz(a, b);
        dc.slot(static_cast<std::size_t>(b)) = acc;
    }
    KForm curv = exterior_d(dc);
    curv *= cplx(0.0, 0.5);

    KForm target(n, 2);
    for (int i = 0; i < k; ++i) {
        target.set({4 * i, 4 * i + 1}, cplx(0.0, 1.0));
        target.set({4 * i + 2, 4 * i + 3}, cplx(0.0, -1.0));
    }
    return max_abs(curv - target);
}

// ----------------------------------------------------------------- Taub-NUT

Ctx taubnut_context() { return SymContext::make({"v", "xi", "zeta", "vt", "xit", "eta"}); }

CocycleCheck taubnut_identity(const GaussRational& c)
{
    const Ctx ctx = taubnut_context();
    const int V = 0, XI = 1, Z = 2, VT = 3, XIT = 4, ETA = 5;
    const LaurentPoly v = LaurentPoly::var(ctx, V), xi = LaurentPoly::var(ctx, XI);
    const LaurentPoly zeta = LaurentPoly::var(ctx, Z), zinv = zeta.pow(-1);
    const LaurentPoly t = v * xi * zinv;  // v xi / zeta

    // -(1/zeta)(xi dv + zeta v [d(xi/zeta) - d(v xi/zeta) xi/zeta])
    OneFormSym bracket = formal_d(ExpLaurent(xi * zinv)) - ExpLaurent(xi * zinv) * formal_d(ExpLaurent(t));
    OneFormSym inner = ExpLaurent(zeta * v) * bracket;
    inner.add(V, ExpLaurent(xi));
    const OneFormSym lhs = ExpLaurent(-zinv) * inner;

    // The same cocycle from the chart map vt = e^{v xi/zeta} v/zeta, xit = e^{-v xi/zeta} xi/zeta.
    OneFormSym chart(ctx);
    chart.add(V, ExpLaurent(xi));
    chart.add(XIT, ExpLaurent(zeta * zeta * LaurentPoly::var(ctx, VT)));
    chart = ExpLaurent(-zinv) * chart;
    const Substitution rules{{VT, ExpLaurent::term(v * zinv, t)}, {XIT, ExpLaurent::term(xi * zinv, -t)}};
    const OneFormSym chart_u = pullback(chart, rules);

    const LaurentPoly rhs_exponent = -t + c * t * t;
    const LaurentPoly eta_t = LaurentPoly::var(ctx, ETA) * zinv;
    const LaurentPoly eta_exponent = -eta_t + c * eta_t * eta_t;
    const ExpLaurent eta_sub = substitute(ExpLaurent(eta_exponent), {{ETA, ExpLaurent(v * xi)}});
    const ExpLaurent g = ExpLaurent::exp(*eta_sub.as_poly());

    CocycleCheck out{"taub-nut", {}};
    out.parts.emplace_back("chart cocycle equals the displayed left side", chart_u, lhs);
    out.parts.emplace_back("left side = d(-v xi/zeta + c (v xi/zeta)^2)", lhs, formal_d(ExpLaurent(rhs_exponent)));
    out.parts.emplace_back("eta = v xi gives the exponent", eta_sub, ExpLaurent(rhs_exponent));
    out.parts.emplace_back("dlog g_UV equals the left side", dlog(g), lhs);
    return out;
}

// ----------------------------------------------------------------- Legendre

LegendreSpace legendre_space(int k)
{
    require(k >= 1, "k must be positive");
    std::vector<std::string> names;
    for (int i = 1; i <= k; ++i) names.push_back("eta" + std::to_string(i));
    names.push_back("zeta");
    for (int i = 1; i <= k; ++i) names.push_back("chi" + std::to_string(i));
    for (int i = 1; i <= k; ++i) names.push_back("etat" + std::to_string(i));
    for (int i = 1; i <= k; ++i) names.push_back("chit" + std::to_string(i));
    names.push_back("zetat");
    return {k, SymContext::make(names)};
}

std::vector<int> LegendreSpace::weighted() const
{
    std::vector<int> w;
    for (int i = 0; i < k; ++i) w.push_back(eta(i));
    w.push_back(zeta());
    return w;
}

LegendreResult legendre_transition(const LegendreSpace& s, const LaurentPoly& h)
{
    const Ctx& ctx = s.ctx;
    require(euler_defect(h, s.weighted(), 1).is_zero(), "H is not homogeneous of degree 1 in (eta, zeta)");
    for (int i = 0; i < ctx->size(); ++i)
        if (!contains(s.weighted(), i)) require(h.min_exponent(i) == 0 && h.max_exponent(i) == 0, "H depends on a non-base variable");

    const LaurentPoly zeta = LaurentPoly::var(ctx, s.zeta()), zinv = zeta.pow(-1);
    const LaurentPoly dh_dzeta = h.partial(s.zeta());
    const ExpLaurent g = ExpLaurent::exp(dh_dzeta * GaussRational::frac(-1, 2));

    // chit_i = chi_i + dH/deta_i, etat_i = eta_i/zeta^2 on U n V
    Substitution rules;
    for (int i = 0; i < s.k; ++i) {
        rules.emplace(s.etat(i), ExpLaurent(LaurentPoly::var(ctx, s.eta(i)) * zinv * zinv));
        rules.emplace(s.chit(i), ExpLaurent(LaurentPoly::var(ctx, s.chi(i)) + h.partial(s.eta(i))));
    }
    rules.emplace(s.zetat(), ExpLaurent(zinv));

    OneFormSym chart(ctx), eta_d_dh(ctx);
    TwoFormSym w_u(ctx), w_v(ctx);
    for (int i = 0; i < s.k; ++i) {
        const LaurentPoly eta = LaurentPoly::var(ctx, s.eta(i));
        chart.add(s.chi(i), ExpLaurent(eta));
        chart.add(s.chit(i), ExpLaurent(-(zeta * zeta * LaurentPoly::var(ctx, s.etat(i)))));
        eta_d_dh += ExpLaurent(eta * zinv) * formal_d(ExpLaurent(h.partial(s.eta(i))));
        w_u.add(s.chi(i), s.eta(i), ecst(ctx, 1));
        w_v.add(s.chit(i), s.etat(i), ecst(ctx, 1));
    }
    chart = ExpLaurent(-zinv) * pullback(chart, rules);

    LegendreResult r{g, {"legendre", {}}};
    r.check.parts.emplace_back("on fibres sum dchi^deta = zeta^2 sum dchit^detat", w_u,
                               (ExpLaurent(zeta * zeta) * pullback(w_v, rules)).restrict_off({s.zeta()}));
    r.check.parts.emplace_back("cocycle = (1/zeta) sum eta_i d(dH/deta_i)", chart, eta_d_dh);
    r.check.parts.emplace_back("sum (eta_i/zeta) d(dH/deta_i) = d(-dH/dzeta)", eta_d_dh,
                               formal_d(ExpLaurent(-dh_dzeta)));
    r.check.parts.emplace_back("dlog g_UV is half the cocycle", dlog(g), ecst(ctx, half()) * eta_d_dh);
    return r;
}

CocycleCheck legendre_flat_reduction()
{
    const Ctx ctx = SymContext::make({"v", "xi", "zeta", "vt", "xit", "zetat", "eta"});
    const int V = 0, XI = 1, Z = 2, VT = 3, XIT = 4, ZT = 5, ETA = 6;
    auto var = [&](int i) { return LaurentPoly::var(ctx, i); };
    const LaurentPoly zinv = var(Z).pow(-1), ztinv = var(ZT).pow(-1);
    ChartPair charts{ctx, {V, XI, Z}, {VT, XIT, ZT}, {}, {}};
    charts.v_in_u = {{VT, ExpLaurent(var(V) * zinv)}, {XIT, ExpLaurent(var(XI) * zinv)}, {ZT, ExpLaurent(zinv)}};
    charts.u_in_v = {{V, ExpLaurent(var(VT) * ztinv)}, {XI, ExpLaurent(var(XIT) * ztinv)}, {Z, ExpLaurent(ztinv)}};

    const LaurentPoly h = var(ETA) * var(ETA) * zinv * half();
    const LaurentPoly dh = h.partial(Z);
    const Substitution eta_rule{{ETA, ExpLaurent(var(Z) * var(XI) - var(V))}};
    const ExpLaurent dh_flat = substitute(ExpLaurent(dh), eta_rule);
    const LaurentPoly expanded = var(XI) * var(XI) * GaussRational::frac(-1, 2) + var(V) * var(XI) * zinv
                               - var(V) * var(V) * zinv * zinv * half();

    const ExpLaurent g = ExpLaurent::exp(*dh_flat.as_poly() * GaussRational::frac(-1, 2));
    const LaurentPoly u_shift = var(XI) * var(XI) * GaussRational::frac(1, 4);
    const LaurentPoly v_shift = var(V) * var(V) * zinv * zinv * GaussRational::frac(1, 4);
    const ExpLaurent reduced = retrivialize(charts, g, u_shift, v_shift);
    const ExpLaurent flat_g = ExpLaurent::exp(var(V) * var(XI) * zinv * GaussRational::frac(-1, 2));

    CocycleCheck c{"legendre.flat", {}};
    c.parts.emplace_back("dH/dzeta = -eta^2/2zeta^2", ExpLaurent(dh), ExpLaurent(-(var(ETA) * var(ETA) * zinv * zinv * half())));
    c.parts.emplace_back("eta = zeta xi - v expansion", dh_flat, ExpLaurent(expanded));
    c.parts.emplace_back("retrivialized transition = exp(-v xi/2 zeta)", reduced, flat_g);
    return c;
}

namespace {

LaurentPoly fbar_at_etat(const LegendreSpace& s, const LaurentPoly& f)
{
    const LaurentPoly zinv2 = LaurentPoly::var(s.ctx, s.zeta()).pow(-2);
    Substitution rule;
    for (int i = 0; i < s.k; ++i) rule.emplace(s.eta(i), ExpLaurent(LaurentPoly::var(s.ctx, s.eta(i)) * zinv2));
    return *substitute(ExpLaurent(f.conj_coefficients()), rule).as_poly();
}

void require_quadratic(const LegendreSpace& s, const LaurentPoly& f)
{
    std::vector<int> etas;
    for (int i = 0; i < s.k; ++i) etas.push_back(s.eta(i));
    require(euler_defect(f, etas, 2).is_zero(), "f must be homogeneous of degree 2 in eta");
    for (int i = 0; i < s.ctx->size(); ++i)
        if (!contains(etas, i)) require(f.min_exponent(i) == 0 && f.max_exponent(i) == 0, "f depends on a non-eta variable");
}

}  // namespace

LaurentPoly semiflat_prepotential_h(const LegendreSpace& s, const LaurentPoly& f)
{
    require_quadratic(s, f);
    const LaurentPoly zeta = LaurentPoly::var(s.ctx, s.zeta());
    return (f + zeta.pow(4) * fbar_at_etat(s, f)) * zeta.pow(-1);
}

LaurentPoly semiflat_prepotential_h_untwisted(const LegendreSpace& s, const LaurentPoly& f)
{
    require_quadratic(s, f);
    return (f + fbar_at_etat(s, f)) * LaurentPoly::var(s.ctx, s.zeta()).pow(-1);
}

CocycleCheck semiflat_legendre_check(const LegendreSpace& s, const LaurentPoly& f)
{
    const LaurentPoly zeta = LaurentPoly::var(s.ctx, s.zeta());
    LegendreResult r = legendre_transition(s, semiflat_prepotential_h(s, f));
    const LaurentPoly expected = (f + zeta.pow(4) * fbar_at_etat(s, f)) * zeta.pow(-2) * half();
    r.check.name = "legendre.semiflat";
    r.check.parts.emplace_back("transition = exp((f + zeta^4 fbar(etat))/2 zeta^2)", r.transition, ExpLaurent::exp(expected));
    return r.check;
}

CocycleCheck monopole_transition_check(int k)
{
    require(k >= 2, "k must be at least 2");
    const LegendreSpace s = legendre_space(k);
    auto beta = [&](int i) { return LaurentPoly::var(s.ctx, s.eta(i)); };
    const LaurentPoly zinv = LaurentPoly::var(s.ctx, s.zeta()).pow(-1);
    LaurentPoly e1(s.ctx), e2(s.ctx), p2(s.ctx);
    for (int i = 0; i < k; ++i) {
        e1 += beta(i);
        p2 += beta(i) * beta(i);
        for (int j = i + 1; j < k; ++j) e2 += beta(i) * beta(j);
    }
    const LaurentPoly b1 = -e1, b2 = e2;  // b_{k-1}, b_{k-2}
    const LaurentPoly newton = b2 * GaussRational(2) - b1 * b1;
    const LegendreResult r = legendre_transition(s, -(p2 * zinv));

    CocycleCheck c{"legendre.monopole-k" + std::to_string(k), r.check.parts};
    c.parts.emplace_back("2 b_{k-2} - b_{k-1}^2 = -sum beta_i^2", ExpLaurent(newton), ExpLaurent(-p2));
    c.parts.emplace_back("transition = exp((2 b_{k-2} - b_{k-1}^2)/2 zeta^2)", r.transition,
                         ExpLaurent::exp(newton * zinv * zinv * half()));
    return c;
}

// --------------------------------------------------------------------- Feix

Ctx feix_context(int k)
{
    require(k >= 1, "k must be positive");
    std::vector<std::string> names;
    for (int i = 1; i <= k; ++i) names.push_back("z" + std::to_string(i));
    for (int i = 1; i <= k; ++i) names.push_back("zt" + std::to_string(i));
    for (int i = 1; i <= k; ++i) names.push_back("a" + std::to_string(i));
    names.push_back("zeta");
    return SymContext::make(names);
}

ExpLaurent feix_transition(const Ctx& ctx, int k, const LaurentPoly& f)
{
    const LaurentPoly zinv = LaurentPoly::var(ctx, 3 * k).pow(-1);
    Substitution rule;
    for (int i = 0; i < k; ++i) rule.emplace(k + i, ExpLaurent(LaurentPoly::var(ctx, 2 * k + i) * zinv));
    const auto q = substitute(ExpLaurent(f * GaussRational::frac(-1, 2)), rule).as_poly();
    require(q.has_value(), "Kaehler potential must be exponential-free");
    return ExpLaurent::exp(*q);
}

CocycleCheck feix_flat_reduction(int k)
{
    const Ctx ctx = feix_context(k);
    auto var = [&](int i) { return LaurentPoly::var(ctx, i); };
    LaurentPoly f(ctx), za(ctx);
    for (int i = 0; i < k; ++i) {
        f += var(i) * var(k + i);
        za += var(i) * var(2 * k + i);
    }
    const LaurentPoly zinv = var(3 * k).pow(-1);
    CocycleCheck c{"feix-k" + std::to_string(k), {}};
    c.parts.emplace_back("exp(-f/2) = exp(-sum z_i a_i/2 zeta)", feix_transition(ctx, k, f),
                         ExpLaurent::exp(za * zinv * GaussRational::frac(-1, 2)));
    c.parts.emplace_back("f = 0 gives g_UV = 1", feix_transition(ctx, k, LaurentPoly(ctx)), ecst(ctx, 1));
    return c;
}

// ----------------------------------------------------------------- monopole

namespace {

using CVec = std::vector<std::complex<double>>;

CVec poly_mul(const CVec& a, const CVec& b)
{
    CVec r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

}  // namespace

double monopole_newton_check(std::span<const std::complex<double>> roots)
{
    const std::size_t k = roots.size();
    require(k >= 2, "need at least two roots");
    CVec q{1.0};
    std::complex<double> p2 = 0.0;
    for (const auto& b : roots) {
        q = poly_mul(q, CVec{-b, 1.0});
        p2 += b * b;
    }
    // q[j] is the coefficient of z^j.
    const auto b1 = q[k - 1], b2 = q[k - 2];
    return std::abs(2.0 * b2 - b1 * b1 + p2);
}

Quartic Quartic::real(std::complex<double> c0, std::complex<double> c1, double c2)
{
    Quartic q;
    q.c = {c0, c1, c2, -std::conj(c1), std::conj(c0)};
    return q;
}

bool Quartic::is_real(double tol) const
{
    return std::abs(c[3] + std::conj(c[1])) <= tol && std::abs(c[4] - std::conj(c[0])) <= tol
        && std::abs(c[2].imag()) <= tol;
}

std::complex<double> Quartic::operator()(std::complex<double> z) const
{
    std::complex<double> acc = 0.0;
    for (int j = 4; j >= 0; --j) acc = acc * z + c[static_cast<std::size_t>(j)];
    return acc;
}

std::array<std::complex<double>, 2> rotation_su2(double theta) { return {std::cos(theta / 2), std::sin(theta / 2)}; }

Quartic quartic_moebius(const Quartic& q, std::complex<double> a, std::complex<double> b)
{
    const CVec num{b, a}, den{std::conj(a), -std::conj(b)};
    Quartic r;
    for (int j = 0; j <= 4; ++j) {
        CVec t{q.c[static_cast<std::size_t>(j)]};
        for (int m = 0; m < j; ++m) t = poly_mul(t, num);
        for (int m = j; m < 4; ++m) t = poly_mul(t, den);
        for (std::size_t m = 0; m < 5; ++m) r.c[m] += t[m];
    }
    return r;
}

Quartic quartic_rotate(const Quartic& q, double theta)
{
    require(q.is_real(1e-12), "quartic violates the reality constraint");
    const auto ab = rotation_su2(theta);
    return quartic_moebius(q, ab[0], ab[1]);
}

std::complex<double> eq15_value(const Quartic& q, double theta)
{
    const double s = std::sin(theta), c = std::cos(theta);
    return q.c[2] + 1.5 * s * s * (q.c[0] + q.c[4] - q.c[2]) - 1.5 * s * c * (q.c[1] - q.c[3]);
}

double eq15_defect(const Quartic& q, double theta) { return std::abs(quartic_rotate(q, theta).c[2] - eq15_value(q, theta)); }

namespace {

std::complex<double> quadrupole_difference(const Quartic& q)
{
    require(q.is_real(1e-12), "quartic violates the reality constraint");
    const auto quu = -2.0 * q.c[2];
    const auto qvv = -2.0 * eq15_value(q, M_PI / 2);
    return quu - qvv;
}

}  // namespace

double monopole_quadrupole_relation(const Quartic& q)
{
    return std::abs(quadrupole_difference(q) - (-q.c[2] + 3.0 * (q.c[0] + std::conj(q.c[0]))));
}

double monopole_quadrupole_relation_corrected(const Quartic& q)
{
    return std::abs(quadrupole_difference(q) - (-3.0 * q.c[2] + 3.0 * (q.c[0] + std::conj(q.c[0]))));
}

// ----------------------------------------------------------------- elliptic

Ctx elliptic_context()
{
    return SymContext::make(
        {"v", "xi", "zeta", "pi", "y", "vt", "xit", "zetat", "alpha", "alphabar", "beta", "betabar", "z", "zbar"});
}

CocycleCheck elliptic_laurent_identity(int zeta_power)
{
    const Ctx ctx = elliptic_context();
    enum { V, XI, Z, PI, Y, VT, XIT, ZT, AL, ALB, BE, BEB, ZZ, ZB };
    auto var = [&](int i) { return LaurentPoly::var(ctx, i); };
    const LaurentPoly zinv = var(Z).pow(-1), ztinv = var(ZT).pow(-1);
    const LaurentPoly inv_piy = (var(PI) * var(Y)).pow(-1);
    ChartPair charts{ctx, {V, XI, Z}, {VT, XIT, ZT}, {}, {}};
    charts.v_in_u = {{VT, ExpLaurent(var(V) * zinv)}, {XIT, ExpLaurent(var(XI) * zinv)}, {ZT, ExpLaurent(zinv)}};
    charts.u_in_v = {{V, ExpLaurent(var(VT) * ztinv)}, {XI, ExpLaurent(var(XIT) * ztinv)}, {Z, ExpLaurent(ztinv)}};

    const LaurentPoly s = var(V) + var(XI) * zinv;
    const LaurentPoly full = s * s * inv_piy * half();
    const LaurentPoly sp = var(V) + var(XI) * var(Z).pow(-zeta_power);
    const LaurentPoly full_p = sp * sp * inv_piy * half();
    const LaurentPoly u_part = var(V) * var(V) * inv_piy * half();
    const LaurentPoly middle = var(V) * var(XI) * zinv * inv_piy;
    const LaurentPoly v_part = var(XI) * var(XI) * zinv * zinv * inv_piy * half();

    // pi (z - zbar)^2 / 2y with z = v/pi, zbar = -xi/(zeta pi)
    const LaurentPoly dz = var(ZZ) - var(ZB);
    const LaurentPoly theta_exp = var(PI) * dz * dz * var(Y).pow(-1) * half();
    const Substitution zrule{{ZZ, ExpLaurent(var(V) * var(PI).pow(-1))},
                             {ZB, ExpLaurent(-(var(XI) * zinv * var(PI).pow(-1)))}};

    // 2 pi i z = 2 i y (alpha + zeta betabar), 2 pi i zbar = 2 i y (alphabar - beta/zeta)
    const Substitution section{{V, ExpLaurent((var(AL) + var(Z) * var(BEB)) * var(Y))},
                               {XI, ExpLaurent((var(BE) - var(Z) * var(ALB)) * var(Y))}};
    const GaussRational two_i(0, 2);
    const ExpLaurent z_of_section = substitute(substitute(ExpLaurent(var(ZZ)), zrule), section);
    const ExpLaurent zb_of_section = substitute(substitute(ExpLaurent(var(ZB)), zrule), section);

    CocycleCheck c{"elliptic", {}};
    c.parts.emplace_back("(v + xi/zeta)^2/2piy expands in three terms", ExpLaurent(full_p),
                         ExpLaurent(u_part + middle + v_part));
    c.parts.emplace_back("pi (z - zbar)^2/2y = (v + xi/zeta)^2/2piy", substitute(ExpLaurent(theta_exp), zrule),
                         ExpLaurent(full));
    c.parts.emplace_back("retrivialized isomorphism = exp(v xi/piy zeta)",
                         retrivialize(charts, ExpLaurent::exp(full), u_part, v_part), ExpLaurent::exp(middle));
    c.parts.emplace_back("2 pi i z = 2 i y (alpha + zeta betabar)", ecst(ctx, two_i) * ExpLaurent(var(PI)) * z_of_section,
                         ExpLaurent((var(AL) + var(Z) * var(BEB)) * var(Y) * two_i));
    c.parts.emplace_back("2 pi i zbar = 2 i y (alphabar - beta/zeta)",
                         ecst(ctx, two_i) * ExpLaurent(var(PI)) * zb_of_section,
                         ExpLaurent((var(ALB) - var(BE) * zinv) * var(Y) * two_i));
    return c;
}

}  // namespace hkt
