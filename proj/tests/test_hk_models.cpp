#include <doctest.h>

#include <random>

#include "hkt/models.hpp"

using namespace hkt;

namespace {

const cplx I1(0.0, 1.0);

double max_abs_mat(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

// Random semi-flat data: M0 = S + S + ..., Q = A + M0^T A M0, W = Q M0.
SemiFlatModel random_semiflat(int k, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    const int m = 2 * k;
    Eigen::MatrixXd m0 = Eigen::MatrixXd::Zero(m, m);
    for (int c = 0; c < k; ++c) {
        m0(2 * c, 2 * c + 1) = 1;
        m0(2 * c + 1, 2 * c) = -1;
    }
    Eigen::MatrixXd b(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) b(i, j) = u(rng);
    const Eigen::MatrixXd a = b * b.transpose() + Eigen::MatrixXd::Identity(m, m);
    Eigen::MatrixXd q = a + m0.transpose() * a * m0;
    q = 0.5 * (q + q.transpose());
    Eigen::MatrixXd w = q * m0;
    w = 0.5 * (w - w.transpose());
    return SemiFlatModel(w, q);
}

cplx random_zeta(std::mt19937_64& rng, double radius)
{
    std::uniform_real_distribution<double> r(0.05, radius), t(0.0, 2 * M_PI);
    return std::polar(r(rng), t(rng));
}

}  // namespace

TEST_CASE("flat model passes validation")
{
    for (int k = 1; k <= 2; ++k) {
        const CheckReport r = validate_model(FlatModel(k), 32, 1, 1e-10);
        CHECK(r.pass);
        for (const auto& c : r.checks) CHECK(c.max_defect <= 1e-10);
    }
}

TEST_CASE("flat forms match the complex expressions")
{
    const FlatModel m(1);
    const Point p({0.2, 0.1, -0.4, 0.3});
    const KForm w1 = m.omega_at(0, p), w2 = m.omega_at(1, p), w3 = m.omega_at(2, p);
    // w_1 = da^db + dc^dd, w_2 = da^dc - db^dd, w_3 = da^dd + db^dc
    CHECK(w1.at({0, 1}) == cplx(1.0));
    CHECK(w1.at({2, 3}) == cplx(1.0));
    CHECK(w2.at({0, 2}) == cplx(1.0));
    CHECK(w2.at({1, 3}) == cplx(-1.0));
    CHECK(w3.at({0, 3}) == cplx(1.0));
    CHECK(w3.at({1, 2}) == cplx(1.0));
    // w_2 + i w_3 is (2,0) for I: invariant (not anti-invariant) under I^T . I would mean (1,1).
    const Mat i = m.structure_at(0, p);
    const Mat w23 = to_matrix(w2) + I1 * to_matrix(w3);
    CHECK(max_abs_mat(i.transpose() * w23 * i + w23) <= 1e-15);
}

TEST_CASE("semi-flat example w12 = 1, Q = 1 validates; malformed data is rejected")
{
    Eigen::MatrixXd w(2, 2);
    w << 0, 1, -1, 0;
    const SemiFlatModel m(w, Eigen::MatrixXd::Identity(2, 2));
    CHECK(validate_model(m, 32, 3, 1e-10).pass);

    Eigen::MatrixXd q(2, 2);
    q << 1, 0.3, 0.1, 1;
    CHECK_THROWS_AS(SemiFlatModel(w, q), std::invalid_argument);
    // Symmetric positive Q that is not compatible with W.
    Eigen::MatrixXd q2(2, 2);
    q2 << 2, 0, 0, 1;
    CHECK_THROWS_AS(SemiFlatModel(w, q2), std::invalid_argument);
    CHECK_THROWS_AS(SemiFlatModel(Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Identity(2, 2)),
                    std::invalid_argument);
}

TEST_CASE("semi-flat forms agree with a brute-force expansion for k = 1")
{
    // w_1 + i w_2 = d(x1 + i y1)^d(x2 + i y2), w_3 = dx1^dy1 + dx2^dy2; coords (x1, x2, y1, y2).
    Eigen::MatrixXd w(2, 2);
    w << 0, 1, -1, 0;
    const SemiFlatModel m(w, Eigen::MatrixXd::Identity(2, 2));
    const Point p({0.3, -0.2, 0.5, 0.9});
    KForm a(4, 1), b(4, 1);
    a.slot(0) = 1.0;
    a.slot(2) = I1;
    b.slot(1) = 1.0;
    b.slot(3) = I1;
    const KForm w12 = wedge(a, b);
    CHECK(max_abs(m.omega_at(0, p) - real_form(w12)) == 0.0);
    CHECK(max_abs(m.omega_at(1, p) - imag_form(w12)) == 0.0);
    KForm w3(4, 2);
    w3.set({0, 2}, 1.0);
    w3.set({1, 3}, 1.0);
    CHECK(max_abs(m.omega_at(2, p) - w3) == 0.0);
}

TEST_CASE("identity suite on flat models")
{
    for (int k = 1; k <= 2; ++k) {
        const FlatModel m(k);
        for (const Point& p : sample_points(4 * k, 64, 42))
            for (IdentityId id : all_identity_ids()) {
                if (id == IdentityId::ASD4 && k != 1) continue;
                INFO(identity_name(id));
                CHECK(model_identity_defect(m, id, p) <= 1e-9);
            }
    }
    CHECK_THROWS_AS(model_identity_defect(FlatModel(2), IdentityId::ASD4, sample_points(8, 1, 0)[0]),
                    ContractViolation);
}

TEST_CASE("identity suite on semi-flat models")
{
    std::mt19937_64 rng(99);
    std::vector<SemiFlatModel> models;
    Eigen::MatrixXd w(2, 2);
    w << 0, 1, -1, 0;
    models.emplace_back(w, Eigen::MatrixXd::Identity(2, 2));
    models.push_back(random_semiflat(1, rng));
    models.push_back(random_semiflat(2, rng));
    for (const auto& m : models)
        for (const Point& p : sample_points(m.dim(), 32, 5))
            for (IdentityId id : all_identity_ids()) {
                if (id == IdentityId::ASD4 && m.dim() != 4) continue;
                INFO(m.id() << " " << identity_name(id));
                CHECK(model_identity_defect(m, id, p) <= 1e-9);
            }
}

TEST_CASE("d^c conventions on Flat(1)")
{
    const FlatModel m(1);
    std::mt19937_64 rng(4);
    for (const Point& p : sample_points(4, 16, 8)) {
        const double u = p.coords[2], v = p.coords[3];
        // d_1^c mu = v du - u dv at w = u + i v.
        const KForm d1 = dc_mu(m, 1, p);
        CHECK(std::abs(d1.slot(0)) == 0.0);
        CHECK(std::abs(d1.slot(1)) == 0.0);
        CHECK(std::abs(d1.slot(2) - v) <= 1e-15);
        CHECK(std::abs(d1.slot(3) + u) <= 1e-15);
        // dd_1^c mu = -i dw^dwbar.
        KForm dw(4, 1);
        dw.slot(2) = 1.0;
        dw.slot(3) = I1;
        const KForm target = wedge(dw, conj(dw)) * cplx(0.0, -1.0);
        const KForm F = curvature_F(m, p);
        CHECK(max_abs(F - m.omega_at(0, p) - target) <= 1e-15);
        // F = (i/2)(dz^dzbar - dw^dwbar).
        KForm dz(4, 1);
        dz.slot(0) = 1.0;
        dz.slot(1) = I1;
        const KForm ff = (wedge(dz, conj(dz)) - wedge(dw, conj(dw))) * cplx(0.0, 0.5);
        CHECK(max_abs(F - ff) <= 1e-15);
    }
}

TEST_CASE("Lambda_1 F = Lambda_1 w_1 - Delta mu with Delta mu = 2k")
{
    for (int k = 1; k <= 2; ++k) {
        const FlatModel m(k);
        for (const Point& p : sample_points(4 * k, 8, 2)) {
            const Mat g = m.metric_at(p);
            const KForm w1 = m.omega_at(0, p);
            const cplx laplacian = -lefschetz_trace(w1, g, curvature_F(m, p) - w1);
            CHECK(std::abs(laplacian - cplx(2.0 * k)) <= 1e-13);
            CHECK(std::abs(lefschetz_trace(w1, g, curvature_F(m, p)) - (lefschetz_trace(w1, g, w1) - laplacian)) <= 1e-13);
        }
    }
}

TEST_CASE("I_zeta: stereographic family and eigenforms dv, dxi")
{
    const FlatModel m(1);
    const Point p({0.1, 0.2, 0.3, 0.4});
    CHECK(max_abs_mat(complex_structure_at_zeta(m, 0.0, p) - m.structure_at(0, p)) == 0.0);
    std::mt19937_64 rng(12);
    const Mat one = Mat::Identity(4, 4);
    for (int t = 0; t < 32; ++t) {
        const cplx z = random_zeta(rng, 3.0);
        const Mat iz = complex_structure_at_zeta(m, z, p);
        CHECK(max_abs_mat(iz * iz + one) <= 1e-14);
        // Oracle: dv = dz + zeta dwbar, dxi = dw - zeta dzbar as rows over (a, b, c, d).
        Eigen::RowVectorXcd dv(4), dxi(4);
        dv << 1.0, I1, z, -I1 * z;
        dxi << -z, I1 * z, 1.0, I1;
        CHECK((dv * iz - I1 * dv).cwiseAbs().maxCoeff() <= 1e-14);
        CHECK((dxi * iz - I1 * dxi).cwiseAbs().maxCoeff() <= 1e-14);
    }
}

TEST_CASE("phi_zeta: restriction at zeta = 0, type (1,0), contraction with X")
{
    std::mt19937_64 rng(21);
    Eigen::MatrixXd w(2, 2);
    w << 0, 1, -1, 0;
    const SemiFlatModel sf(w, Eigen::MatrixXd::Identity(2, 2));
    const FlatModel f1(1), f2(2);
    const std::vector<const HyperkahlerModel*> models = {&f1, &f2, &sf};
    for (const auto* m : models) {
        for (const Point& p : sample_points(m->dim(), 16, 6)) {
            const KForm phi0 = phi_zeta(*m, 0.0, p);
            CHECK(max_abs(phi0 - (dc_mu(*m, 2, p) + dc_mu(*m, 3, p) * I1)) <= 1e-15);
            const cplx z = random_zeta(rng, 2.0);
            CHECK(phi_type_defect(*m, z, p) <= 1e-12);
            CHECK(phi_contraction_defect(*m, z, p) <= 1e-12);
        }
    }
}

TEST_CASE("dbar_zeta phi = 2 i zeta F on flat and semi-flat models")
{
    std::mt19937_64 rng(31);
    Eigen::MatrixXd w(2, 2);
    w << 0, 1, -1, 0;
    const SemiFlatModel sf(w, Eigen::MatrixXd::Identity(2, 2));
    const SemiFlatModel sf2 = random_semiflat(2, rng);
    const FlatModel f1(1), f2(2);
    const std::vector<const HyperkahlerModel*> models = {&f1, &f2, &sf, &sf2};
    for (const auto* m : models)
        for (const Point& p : sample_points(m->dim(), 16, 9)) {
            CHECK(eq10_defect(*m, 0.0, p) <= 1e-12);
            CHECK(eq10_defect(*m, random_zeta(rng, 2.0), p) <= 1e-12);
        }
}

TEST_CASE("base-direction identity: the factor-i form holds, the displayed form does not")
{
    std::mt19937_64 rng(41);
    for (int k = 1; k <= 2; ++k) {
        const FlatModel m(k);
        for (const Point& p : sample_points(4 * k, 16, 10)) {
            const cplx z = random_zeta(rng, 2.0);
            CHECK(base_direction_defect_corrected(m, z, p) <= 1e-12);
            CHECK(base_direction_defect(m, z, p) > 1e-3);
        }
    }
    // At w = 0 both sides vanish.
    const FlatModel m(1);
    const Point p0({0.4, -0.3, 0.0, 0.0});
    CHECK(base_direction_defect(m, cplx(0.5, 0.5), p0) == 0.0);
    CHECK_THROWS_AS(base_direction_defect(m, 0.0, p0), ContractViolation);
}

TEST_CASE("F is (1,1) for I_zeta on the unit circle")
{
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> t(0, 2 * M_PI);
    for (int k = 1; k <= 2; ++k) {
        const FlatModel m(k);
        for (const Point& p : sample_points(4 * k, 16, 11)) CHECK(curvature_type_defect(m, std::polar(1.0, t(rng)), p) <= 1e-12);
    }
}

TEST_CASE("semi-flat curvature: stated form is not hyperholomorphic, derived form is")
{
    Eigen::MatrixXd w(2, 2);
    w << 0, 1, -1, 0;
    const SemiFlatModel m(w, Eigen::MatrixXd::Identity(2, 2));
    std::mt19937_64 rng(61);
    const SemiFlatModel m2 = random_semiflat(2, rng);
    for (const SemiFlatModel* s : {&m, &m2}) {
        for (const Point& p : sample_points(s->dim(), 16, 12)) {
            const KForm F = curvature_F(*s, p);
            CHECK(max_abs(F - s->derived_curvature()) <= 1e-12);
            CHECK(max_abs(F - s->claimed_curvature()) >= 0.5);
        }
        const Point p = sample_points(s->dim(), 1, 13).front();
        const Mat j = s->structure_at(1, p);
        const Mat claimed = to_matrix(s->claimed_curvature());
        CHECK(max_abs_mat(j.transpose() * claimed * j - claimed) >= 0.5);
    }
}

TEST_CASE("model registry")
{
    for (const auto& id : model_ids()) {
        const auto m = make_model(id);
        REQUIRE(m);
        CHECK(m->id() == id);
        CHECK(validate_model(*m, 8, 0, 1e-10).pass);
    }
    CHECK(make_model("nosuch") == nullptr);
}
