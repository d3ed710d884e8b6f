#pragma once

// Eguchi-Hanson constraint and lifted C* actions, the quotient P(V + V*),
// its contact form and moment section, and the flat i_Y A_U = 0 check.

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <utility>

#include "hkt/cocycles.hpp"
#include "hkt/jet.hpp"
#include "hkt/laurent.hpp"

namespace hkt {

struct PairedVector {
    std::array<cplx, 2> v{};
    std::array<cplx, 2> xi{};

    cplx pairing() const { return v[0] * xi[0] + v[1] * xi[1]; }
    bool finite() const;
};

// Point of P^3 = P(V + V*) with homogeneous coordinates (v1, v2, xi1, xi2).
class ProjPoint {
public:
    // Throws ContractViolation for the zero vector or non-finite entries.
    explicit ProjPoint(const std::array<cplx, 4>& homogeneous);

    const std::array<cplx, 4>& homogeneous() const { return x_; }
    // Unit norm, largest-modulus coordinate real and positive.
    std::array<cplx, 4> normalized() const;
    // Representative with coordinate `chart` equal to 1; throws if it vanishes.
    std::array<cplx, 4> chart_representative(int chart) const;
    // Index of the largest-modulus coordinate.
    int best_chart() const;

private:
    std::array<cplx, 4> x_;
};

// Distance of the unit representative of p from the line q; 0 iff the points agree.
double proj_distance(const ProjPoint& p, const ProjPoint& q);

// (v, xi) -> (nu^{n+1} v, nu^{1-n} xi)
std::pair<int, int> eh_lift_weights(int n);
PairedVector eh_act(const PairedVector& p, cplx nu, int v_weight, int xi_weight);

// |<nu^{n+1} v, nu^{1-n} xi> - nu^2 zeta|; needs <v, xi> = zeta and nu != 0.
double eh_constraint_check(const PairedVector& p, cplx zeta, cplx nu, int n);
// Same with arbitrary weights, for controls.
double eh_constraint_check_weights(const PairedVector& p, cplx zeta, cplx nu, int v_weight, int xi_weight);

// <nu^a v, nu^b xi> - nu^2 <v, xi> in variables v1, v2, xi1, xi2, nu.
LaurentPoly eh_constraint_symbolic(int v_weight, int xi_weight);

ProjPoint eh_quotient_coords(const PairedVector& p);

// Holomorphic 1-form on a 3-dimensional affine chart, components evaluated on jets.
using ChartOneForm = std::function<std::array<Jet, 3>(const std::array<Jet, 3>&)>;

// Coefficient of dy1^dy2^dy3 in theta ^ d theta at y.
cplx theta_wedge_dtheta(const ChartOneForm& theta, const std::array<cplx, 3>& y);

// theta = <xi, dv> - <v, dxi> with homogeneous coordinate `chart` set to 1.
ChartOneForm contact_form_in_chart(int chart);
// The other three homogeneous coordinates, in order.
std::array<cplx, 3> chart_coordinates(const ProjPoint& p, int chart);

// |theta ^ d theta| in the given chart; throws if the point is off the chart.
double contact_nondegeneracy_in_chart(const ProjPoint& p, int chart);
// Same in the chart of the largest-modulus coordinate.
double contact_nondegeneracy(const ProjPoint& p);

// <v, xi> of the representative in the largest-modulus chart.
cplx moment_section_value(const ProjPoint& p);

// i_Y A_U = 0 for the flat model with A_U = sum xi_i dv_i / 2 zeta; `extra`
// is added to A_U (controls).
CocycleCheck flat_iYA_check(int k, const std::optional<OneFormSym>& extra = std::nullopt);

}  // namespace hkt
