#pragma once

// Chart-level hyperkaehler models with a circle action and the identity
// suite evaluated on them.
//
// Conventions: a 2-form w has component matrix Omega with
// w(u,v) = u^T Omega v, and w_i(u,v) = g(I_i u, v), so I_i = -g^{-1} Omega_i.
// d^c_i f is the 1-form Y -> -df(I_i Y).

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "hkt/calculus.hpp"
#include "hkt/report.hpp"

namespace hkt {

class HyperkahlerModel {
public:
    virtual ~HyperkahlerModel() = default;

    virtual std::string id() const = 0;
    virtual int dim() const = 0;
    int k() const { return dim() / 4; }

    virtual MatJ metric(std::span<const Jet> x) const = 0;
    // I, J, K acting on tangent vectors (columns).
    virtual std::array<MatJ, 3> structures(std::span<const Jet> x) const = 0;
    virtual KFormJ omega(int i, std::span<const Jet> x) const = 0;
    virtual JetVec action_field(std::span<const Jet> x) const = 0;
    virtual Jet moment_map(std::span<const Jet> x) const = 0;

    // Values at a point.
    Mat metric_at(const Point& p) const;
    Mat structure_at(int i, const Point& p) const;
    KForm omega_at(int i, const Point& p) const;
    std::vector<cplx> action_at(const Point& p) const;
    double moment_at(const Point& p) const;

    FormField omega_field(int i) const;
    VectorFieldJ action_vector_field() const;
};

// C^{2k} = H^k with z_i = a_i + i b_i, w_i = c_i + i d_i; coordinates
// ordered (a_1, b_1, c_1, d_1, a_2, ...).
class FlatModel final : public HyperkahlerModel {
public:
    explicit FlatModel(int k);

    std::string id() const override { return "flat" + std::to_string(k_); }
    int dim() const override { return 4 * k_; }

    MatJ metric(std::span<const Jet> x) const override;
    std::array<MatJ, 3> structures(std::span<const Jet> x) const override;
    KFormJ omega(int i, std::span<const Jet> x) const override;
    JetVec action_field(std::span<const Jet> x) const override;
    Jet moment_map(std::span<const Jet> x) const override;

private:
    int k_;
    std::array<Eigen::MatrixXd, 3> ijk_;
    std::array<KForm, 3> omega_;
};

// M x R^{2k} with flat coordinates x_1..x_2k, fibre coordinates
// y_1..y_2k, constant symplectic matrix W and quadratic potential
// phi = x^T Q x / 2. Coordinates ordered (x_1..x_2k, y_1..y_2k).
class SemiFlatModel final : public HyperkahlerModel {
public:
    // Throws std::invalid_argument for malformed (W, Q) and when the
    // resulting triple fails validate_model.
    SemiFlatModel(const Eigen::MatrixXd& w, const Eigen::MatrixXd& q, std::string name = "");

    std::string id() const override { return name_; }
    int dim() const override { return 4 * k_; }

    MatJ metric(std::span<const Jet> x) const override;
    std::array<MatJ, 3> structures(std::span<const Jet> x) const override;
    KFormJ omega(int i, std::span<const Jet> x) const override;
    JetVec action_field(std::span<const Jet> x) const override;
    Jet moment_map(std::span<const Jet> x) const override;

    const Eigen::MatrixXd& w() const { return w_; }
    const Eigen::MatrixXd& q() const { return q_; }

    // The stated curvature -sum w_jk dy_j^dy_k.
    KForm claimed_curvature() const;
    // -sum w_jk (dx_j^dx_k + dy_j^dy_k), the curvature under the suite's normalization.
    KForm derived_curvature() const;

private:
    int k_;
    std::string name_;
    Eigen::MatrixXd w_, q_;
    Eigen::MatrixXd g_;
    std::array<Eigen::MatrixXd, 3> big_omega_;
    std::array<Eigen::MatrixXd, 3> ijk_;
    Eigen::MatrixXd action_;  // X = action_ * x on the base block
};

// Registered models: "flat1", "flat2", "semiflat1".
std::vector<std::string> model_ids();
std::unique_ptr<HyperkahlerModel> make_model(const std::string& id);

enum class IdentityId { LIE1, LIE2, LIE3, MOMENT, DDC2, DDC3, LEFSCHETZ, F11_I, F11_J, F11_K, ASD4, IXF };

const std::vector<IdentityId>& all_identity_ids();
// ASD4 needs dimension 4; every other id applies to every model.
bool identity_applies(const HyperkahlerModel& m, IdentityId id);
std::string identity_name(IdentityId id);

// Uniform points in [-1,1]^dim from a seeded stream.
std::vector<Point> sample_points(int dim, int count, std::uint64_t seed);

CheckReport validate_model(const HyperkahlerModel& m, int n_points, std::uint64_t seed, double tol);

double model_identity_defect(const HyperkahlerModel& m, IdentityId id, const Point& p);

KForm dc_mu(const HyperkahlerModel& m, int i, const Point& p);
// Jet-valued d^c_i mu (order 1), for differentiation.
KFormJ dc_mu_jet(const HyperkahlerModel& m, int i, std::span<const Jet> x2);

KForm curvature_F(const HyperkahlerModel& m, const Point& p);

// x(zeta) on the unit sphere; I_zeta = x1 I + x2 J + x3 K.
std::array<double, 3> sphere_point(cplx zeta);
Mat complex_structure_at_zeta(const HyperkahlerModel& m, cplx zeta, const Point& p);

KForm phi_zeta(const HyperkahlerModel& m, cplx zeta, const Point& p);
// Max-norm of the (0,1) part of phi for I_zeta.
double phi_type_defect(const HyperkahlerModel& m, cplx zeta, const Point& p);
// |i_X phi + 2 i zeta g(X,X)|
double phi_contraction_defect(const HyperkahlerModel& m, cplx zeta, const Point& p);

double eq10_defect(const HyperkahlerModel& m, cplx zeta, const Point& p);

// |2 dbar mu - zeta^{-1} phi(dbar X^{1,0})| as stated.
double base_direction_defect(const FlatModel& m, cplx zeta, const Point& p);
// |2i dbar mu - zeta^{-1} phi(dbar X^{1,0})|, the form that holds.
double base_direction_defect_corrected(const FlatModel& m, cplx zeta, const Point& p);

// Max-norm of I_zeta^T F I_zeta - F.
double curvature_type_defect(const HyperkahlerModel& m, cplx zeta, const Point& p);

}  // namespace hkt
