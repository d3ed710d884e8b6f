#pragma once

// Twistor line-bundle data of the worked examples: cocycles, transition
// functions and connection forms as exact ExpLaurent identities, plus the
// numeric Hermitian-metric and monopole checks.

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hkt/laurent.hpp"

namespace hkt {

using SymExpr = std::variant<ExpLaurent, OneFormSym, TwoFormSym>;

SymExpr sym_difference(const SymExpr& a, const SymExpr& b);
std::size_t sym_term_count(const SymExpr& e);
std::string sym_str(const SymExpr& e);

struct IdentityPart {
    std::string label;
    SymExpr lhs, rhs;
    SymExpr defect;  // normal form of lhs - rhs

    IdentityPart(std::string label, SymExpr lhs, SymExpr rhs);
    bool holds() const { return sym_term_count(defect) == 0; }
};

struct CocycleCheck {
    std::string name;
    std::vector<IdentityPart> parts;

    bool pass() const;
    // Surviving monomials over all parts; 0 iff pass.
    std::size_t defect_terms() const;
    const IdentityPart& part(const std::string& label) const;
};

// Two affine charts U, V of a twistor space over P^1 with the coordinate
// change between them. Variables in neither list are parameters.
struct ChartPair {
    Ctx ctx;
    std::vector<int> u_vars, v_vars;
    Substitution v_in_u;  // V variable -> expression in U variables
    Substitution u_in_v;  // U variable -> expression in V variables
};

// Holomorphic on U: only U variables (and parameters), no negative powers of U variables.
bool u_regular(const ChartPair& c, const LaurentPoly& q);
// Holomorphic on V once rewritten in V variables.
bool v_regular(const ChartPair& c, const LaurentPoly& q);
// g exp(-u_shift) exp(-v_shift); each shift must be regular on its chart.
ExpLaurent retrivialize(const ChartPair& c, const ExpLaurent& g, const LaurentPoly& u_shift, const LaurentPoly& v_shift);

// ------------------------------------------------------------------ flat C^2k

// Variables v1..vk, xi1..xik, zeta, vt1..vtk, xit1..xitk, zetat.
struct FlatTwistor {
    int k;
    ChartPair charts;
    int v(int i) const { return i; }
    int xi(int i) const { return k + i; }
    int zeta() const { return 2 * k; }
    int vt(int i) const { return 2 * k + 1 + i; }
    int xit(int i) const { return 3 * k + 1 + i; }
    int zetat() const { return 4 * k + 1; }

    LaurentPoly var(int idx) const { return LaurentPoly::var(charts.ctx, idx); }
    // exp(-sum v_i xi_i / 2 zeta)
    ExpLaurent transition() const;
    TwoFormSym omega_u() const;
    TwoFormSym omega_v() const;
    VectorFieldSym y_u() const;
    // Y pushed to V coordinates through the chart map.
    VectorFieldSym y_v() const;
};

FlatTwistor flat_twistor(int k);

// (1/i zeta)(i_{Y_U} w_U - (dzeta/dzetat) i_{Y_V} w_V) against the displayed
// right side and dlog g_UV, with g_UV's exponent optionally shifted.
CocycleCheck flat_cocycle_identity(int k, const std::optional<LaurentPoly>& exponent_shift = std::nullopt);

struct FlatConnection {
    OneFormSym a_u, a_v;
    CocycleCheck check;  // A_V - A_U = dlog g_UV, k-independent fibre factor
};
// A_U = sum xi_i dv_i / 2 zeta, A_V = -sum vt_i dxit_i / 2 zetat.
FlatConnection flat_connection_forms(int k);

// Exact factor c with dA_U|_{dzeta=0} = c w_U / zeta (throws if not proportional).
GaussRational flat_fibre_factor(int k);

// Numeric A_V - A_U on U-coordinates (v, xi, zeta), with A_V pulled back
// through the hand-coded chart Jacobian.
std::vector<std::complex<double>> flat_connection_difference_numeric(int k, std::span<const std::complex<double>> u_point);

// log h_U = 1/2 sum (z zbar - w wbar + zeta zbar wbar + zetabar z w)
double flat_log_h_u(std::span<const std::complex<double>> z, std::span<const std::complex<double>> w, std::complex<double> zeta);
// |log h_U - 2 log|g_UV| - log h_V| on the real section through (z, w).
double flat_hermitian_defect(std::span<const std::complex<double>> z, std::span<const std::complex<double>> w,
                             std::complex<double> zeta);
// Max-norm of dbar d log h_U - sum(-dz dzbar + dw dwbar)/2 over real
// coordinates (Re z_i, Im z_i, Re w_i, Im w_i per copy, then Re zeta, Im zeta).
double flat_hermitian_curvature_defect(std::span<const std::complex<double>> z, std::span<const std::complex<double>> w,
                                       std::complex<double> zeta);

// ------------------------------------------------------------------ Taub-NUT

// Variables v, xi, zeta, vt, xit, eta.
Ctx taubnut_context();
// Displayed left side against d(-v xi/zeta + c (v xi/zeta)^2); c = 1 is the
// displayed right side. Also derives the left side from the chart map and
// checks the eta = v xi exponent.
CocycleCheck taubnut_identity(const GaussRational& quadratic_coeff);
inline CocycleCheck taubnut_cocycle_identity() { return taubnut_identity(1); }
inline CocycleCheck taubnut_cocycle_identity_corrected() { return taubnut_identity(GaussRational::frac(1, 2)); }

// ----------------------------------------------------------------- Legendre

// Variables eta1..etak, zeta, chi1..chik, etat1..etatk, chit1..chitk, zetat.
struct LegendreSpace {
    int k;
    Ctx ctx;
    int eta(int i) const { return i; }
    int zeta() const { return k; }
    int chi(int i) const { return k + 1 + i; }
    int etat(int i) const { return 2 * k + 1 + i; }
    int chit(int i) const { return 3 * k + 1 + i; }
    int zetat() const { return 4 * k + 1; }
    std::vector<int> weighted() const;  // eta's and zeta
};
LegendreSpace legendre_space(int k);

struct LegendreResult {
    ExpLaurent transition;  // exp(-dH/dzeta / 2)
    CocycleCheck check;
};
// H must be homogeneous of degree 1 in (eta, zeta); otherwise ContractViolation.
LegendreResult legendre_transition(const LegendreSpace& s, const LaurentPoly& h);

// H = eta^2/2zeta, eta = zeta xi - v, then the U/V retrivialization back to
// exp(-v xi/2 zeta).
CocycleCheck legendre_flat_reduction();

// H = (f(eta) + zeta^4 fbar(etat))/zeta for f homogeneous of degree 2.
LaurentPoly semiflat_prepotential_h(const LegendreSpace& s, const LaurentPoly& f);
// H = (f(eta) + fbar(eta/zeta^2))/zeta, no O(4) twist.
LaurentPoly semiflat_prepotential_h_untwisted(const LegendreSpace& s, const LaurentPoly& f);
CocycleCheck semiflat_legendre_check(const LegendreSpace& s, const LaurentPoly& f);

// H = -sum beta_i^2 / zeta against exp((2 b_{k-2} - b_{k-1}^2)/2 zeta^2) with
// b's the elementary symmetric functions of the roots.
CocycleCheck monopole_transition_check(int k);

// --------------------------------------------------------------------- Feix

// Variables z1..zk, zt1..ztk, a1..ak, zeta.
Ctx feix_context(int k);
// exp(-f/2) with zt_i = a_i/zeta substituted.
ExpLaurent feix_transition(const Ctx& ctx, int k, const LaurentPoly& f);
CocycleCheck feix_flat_reduction(int k = 1);

// ----------------------------------------------------------------- monopole

double monopole_newton_check(std::span<const std::complex<double>> roots);

struct Quartic {
    std::array<std::complex<double>, 5> c{};

    // c0 + c1 z + c2 z^2 - conj(c1) z^3 + conj(c0) z^4
    static Quartic real(std::complex<double> c0, std::complex<double> c1, double c2);
    bool is_real(double tol = 1e-12) const;
    std::complex<double> operator()(std::complex<double> z) const;
};

// SU(2) element for a rotation by theta about the chosen axis: a = cos(theta/2), b = sin(theta/2).
std::array<std::complex<double>, 2> rotation_su2(double theta);
// Weight-4 pullback under z -> (a z + b)/(-conj(b) z + conj(a)).
Quartic quartic_moebius(const Quartic& q, std::complex<double> a, std::complex<double> b);
Quartic quartic_rotate(const Quartic& q, double theta);
std::complex<double> eq15_value(const Quartic& q, double theta);
double eq15_defect(const Quartic& q, double theta);

// |(Q(u,u) - Q(v,v)) - (-c2 + 3(c0 + conj c0))|, the stated relation.
double monopole_quadrupole_relation(const Quartic& q);
// Same with -3 c2, the relation that follows from the rotated c2 formula.
double monopole_quadrupole_relation_corrected(const Quartic& q);

// ------------------------------------------------------------------ elliptic

// Variables v, xi, zeta, pi, y, vt, xit, zetat, alpha, alphabar, beta, betabar.
Ctx elliptic_context();
// zeta_power = 1 is the stated identity; other values are controls.
CocycleCheck elliptic_laurent_identity(int zeta_power = 1);

}  // namespace hkt
