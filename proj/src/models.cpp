#include "hkt/models.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace hkt {

namespace {

const cplx kI(0.0, 1.0);

KFormJ constant_form(const KForm& f)
{
    KFormJ r(f.dim(), f.degree());
    for (std::size_t s = 0; s < f.size(); ++s) r.slot(s) = Jet(f.slot(s));
    return r;
}

KForm form_of(const Eigen::MatrixXd& m) { return from_matrix(m.cast<cplx>()); }

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

// ---- HyperkahlerModel value accessors ----

Mat HyperkahlerModel::metric_at(const Point& p) const { return metric(seed(p.coords, 1)).value(); }

Mat HyperkahlerModel::structure_at(int i, const Point& p) const
{
    require(i >= 0 && i < 3, "structure index must be 0, 1 or 2");
    return structures(seed(p.coords, 1))[static_cast<std::size_t>(i)].value();
}

KForm HyperkahlerModel::omega_at(int i, const Point& p) const { return value_of(omega(i, seed(p.coords, 1))); }

std::vector<cplx> HyperkahlerModel::action_at(const Point& p) const
{
    const JetVec x = action_field(seed(p.coords, 1));
    std::vector<cplx> v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) v[i] = x[i].v;
    return v;
}

double HyperkahlerModel::moment_at(const Point& p) const { return moment_map(seed(p.coords, 1)).v.real(); }

FormField HyperkahlerModel::omega_field(int i) const
{
    return FormField::from_jets(2, [this, i](std::span<const Jet> x) { return omega(i, x); });
}

VectorFieldJ HyperkahlerModel::action_vector_field() const
{
    return [this](std::span<const Jet> x) { return action_field(x); };
}

// ---- FlatModel ----

FlatModel::FlatModel(int k) : k_(k)
{
    require(k >= 1 && 4 * k <= kMaxDim, "flat model rank out of range");
    const int n = 4 * k;
    for (auto& m : ijk_) m = Eigen::MatrixXd::Zero(n, n);
    for (int c = 0; c < k; ++c) {
        const int a = 4 * c, b = a + 1, cc = a + 2, d = a + 3;
        auto& I = ijk_[0];
        auto& J = ijk_[1];
        auto& K = ijk_[2];
        // Columns are images of basis vectors.
        I(b, a) = 1;  I(a, b) = -1;  I(d, cc) = 1;  I(cc, d) = -1;
        J(cc, a) = 1; J(d, b) = -1;  J(a, cc) = -1; J(b, d) = 1;
        K(d, a) = 1;  K(cc, b) = 1;  K(b, cc) = -1; K(a, d) = -1;
    }
    // w_1 = (i/2) sum dz^dzbar + dw^dwbar,  w_2 + i w_3 = sum dz^dw.
    KForm w1(n, 2), w23(n, 2);
    for (int c = 0; c < k; ++c) {
        KForm dz(n, 1), dw(n, 1);
        dz.slot(4 * c) = 1.0;
        dz.slot(4 * c + 1) = kI;
        dw.slot(4 * c + 2) = 1.0;
        dw.slot(4 * c + 3) = kI;
        w1 += (wedge(dz, conj(dz)) + wedge(dw, conj(dw))) * cplx(0.0, 0.5);
        w23 += wedge(dz, dw);
    }
    omega_ = {real_form(w1), real_form(w23), imag_form(w23)};
}

MatJ FlatModel::metric(std::span<const Jet>) const
{
    return MatJ::constant(Eigen::MatrixXd::Identity(dim(), dim()));
}

std::array<MatJ, 3> FlatModel::structures(std::span<const Jet>) const
{
    return {MatJ::constant(ijk_[0]), MatJ::constant(ijk_[1]), MatJ::constant(ijk_[2])};
}

KFormJ FlatModel::omega(int i, std::span<const Jet>) const
{
    require(i >= 0 && i < 3, "omega index must be 0, 1 or 2");
    return constant_form(omega_[static_cast<std::size_t>(i)]);
}

JetVec FlatModel::action_field(std::span<const Jet> x) const
{
    require(static_cast<int>(x.size()) == dim(), "flat model: wrong point dimension");
    // X = i w d_w - i wbar d_wbar, i.e. (c, d) -> (-d, c).
    JetVec v(x.size(), Jet(0.0));
    for (int c = 0; c < k_; ++c) {
        v[4 * c + 2] = -x[4 * c + 3];
        v[4 * c + 3] = x[4 * c + 2];
    }
    return v;
}

Jet FlatModel::moment_map(std::span<const Jet> x) const
{
    require(static_cast<int>(x.size()) == dim(), "flat model: wrong point dimension");
    Jet mu(0.0);
    for (int c = 0; c < k_; ++c) mu += x[4 * c + 2] * x[4 * c + 2] + x[4 * c + 3] * x[4 * c + 3];
    return mu * Jet(-0.5);
}

// ---- SemiFlatModel ----

SemiFlatModel::SemiFlatModel(const Eigen::MatrixXd& w, const Eigen::MatrixXd& q, std::string name)
    : k_(static_cast<int>(w.rows()) / 2), name_(std::move(name)), w_(w), q_(q)
{
    if (w.rows() != w.cols() || w.rows() < 2 || w.rows() % 2 != 0)
        throw std::invalid_argument("semi-flat: W must be square of even size");
    if (q.rows() != w.rows() || q.cols() != w.cols())
        throw std::invalid_argument("semi-flat: Q must have the shape of W");
    if (4 * k_ > kMaxDim) throw std::invalid_argument("semi-flat: dimension exceeds jet capacity");
    const double scale = 1.0 + q.cwiseAbs().maxCoeff() + w.cwiseAbs().maxCoeff();
    if ((q - q.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("semi-flat: Q is not symmetric");
    if ((w + w.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("semi-flat: W is not antisymmetric");
    if (Eigen::LLT<Eigen::MatrixXd>(q).info() != Eigen::Success)
        throw std::invalid_argument("semi-flat: Q is not positive definite");
    if (name_.empty()) name_ = "semiflat" + std::to_string(k_);

    const int m = 2 * k_, n = 4 * k_;
    const Eigen::MatrixXd z = Eigen::MatrixXd::Zero(m, m);
    auto blocks = [&](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const Eigen::MatrixXd& c,
                      const Eigen::MatrixXd& d) {
        Eigen::MatrixXd r(n, n);
        r << a, b, c, d;
        return r;
    };
    // w_1 + i w_2 = sum_{j<k} W_jk d(x_j + i y_j)^d(x_k + i y_k), w_3 = sum Q_jk dx_j^dy_k.
    big_omega_[0] = blocks(w, z, z, -w);
    big_omega_[1] = blocks(z, w, -w.transpose(), z);
    big_omega_[2] = blocks(z, q, -q.transpose(), z);
    g_ = blocks(q, z, z, q);
    const Eigen::MatrixXd gi = g_.inverse();
    for (int i = 0; i < 3; ++i) ijk_[static_cast<std::size_t>(i)] = -gi * big_omega_[static_cast<std::size_t>(i)];
    action_ = -q.inverse() * w;

    const CheckReport r = validate_model(*this, 16, 0, 1e-9);
    if (!r.pass) throw std::invalid_argument("semi-flat: (W, Q) does not define a hyperkaehler triple");
}

MatJ SemiFlatModel::metric(std::span<const Jet>) const { return MatJ::constant(g_); }

std::array<MatJ, 3> SemiFlatModel::structures(std::span<const Jet>) const
{
    return {MatJ::constant(ijk_[0]), MatJ::constant(ijk_[1]), MatJ::constant(ijk_[2])};
}

KFormJ SemiFlatModel::omega(int i, std::span<const Jet>) const
{
    require(i >= 0 && i < 3, "omega index must be 0, 1 or 2");
    return constant_form(form_of(big_omega_[static_cast<std::size_t>(i)]));
}

JetVec SemiFlatModel::action_field(std::span<const Jet> x) const
{
    require(static_cast<int>(x.size()) == dim(), "semi-flat model: wrong point dimension");
    const int m = 2 * k_;
    JetVec v(x.size(), Jet(0.0));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (action_(a, b) != 0.0) v[a] += Jet(action_(a, b)) * x[b];
    return v;
}

Jet SemiFlatModel::moment_map(std::span<const Jet> x) const
{
    require(static_cast<int>(x.size()) == dim(), "semi-flat model: wrong point dimension");
    const int m = 2 * k_;
    Jet phi(0.0);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (q_(a, b) != 0.0) phi += Jet(q_(a, b)) * x[a] * x[b];
    return phi * Jet(-0.5);
}

KForm SemiFlatModel::claimed_curvature() const
{
    const int m = 2 * k_, n = 4 * k_;
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(n, n);
    f.block(m, m, m, m) = -w_;
    return form_of(f);
}

KForm SemiFlatModel::derived_curvature() const
{
    const int m = 2 * k_, n = 4 * k_;
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(n, n);
    f.block(0, 0, m, m) = -w_;
    f.block(m, m, m, m) = -w_;
    return form_of(f);
}

// ---- registry ----

std::vector<std::string> model_ids() { return {"flat1", "flat2", "semiflat1"}; }

std::unique_ptr<HyperkahlerModel> make_model(const std::string& id)
{
    if (id == "flat1") return std::make_unique<FlatModel>(1);
    if (id == "flat2") return std::make_unique<FlatModel>(2);
    if (id == "semiflat1") {
        Eigen::MatrixXd w(2, 2);
        w << 0, 1, -1, 0;
        return std::make_unique<SemiFlatModel>(w, Eigen::MatrixXd::Identity(2, 2), "semiflat1");
    }
    return nullptr;
}

const std::vector<IdentityId>& all_identity_ids()
{
    static const std::vector<IdentityId> ids = {
        IdentityId::LIE1, IdentityId::LIE2,  IdentityId::LIE3,      IdentityId::MOMENT,
        IdentityId::DDC2, IdentityId::DDC3,  IdentityId::LEFSCHETZ, IdentityId::F11_I,
        IdentityId::F11_J, IdentityId::F11_K, IdentityId::ASD4,     IdentityId::IXF};
    return ids;
}

bool identity_applies(const HyperkahlerModel& m, IdentityId id) { return id != IdentityId::ASD4 || m.dim() == 4; }

std::string identity_name(IdentityId id)
{
    switch (id) {
    case IdentityId::LIE1: return "LIE1";
    case IdentityId::LIE2: return "LIE2";
    case IdentityId::LIE3: return "LIE3";
    case IdentityId::MOMENT: return "MOMENT";
    case IdentityId::DDC2: return "DDC2";
    case IdentityId::DDC3: return "DDC3";
    case IdentityId::LEFSCHETZ: return "LEFSCHETZ";
    case IdentityId::F11_I: return "F11_I";
    case IdentityId::F11_J: return "F11_J";
    case IdentityId::F11_K: return "F11_K";
    case IdentityId::ASD4: return "ASD4";
    case IdentityId::IXF: return "IXF";
    }
    return "?";
}

std::vector<Point> sample_points(int dim, int count, std::uint64_t seed)
{
    require(count >= 0, "negative point count");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        std::vector<double> c(static_cast<std::size_t>(dim));
        for (auto& v : c) v = u(rng);
        pts.emplace_back(std::move(c));
    }
    return pts;
}

// ---- validation ----

CheckReport validate_model(const HyperkahlerModel& m, int n_points, std::uint64_t seed, double tol)
{
    require(n_points >= 1, "validate_model needs at least one point");
    double quat = 0.0, closed = 0.0, compat = 0.0, negativity = 0.0;
    double min_eig = std::numeric_limits<double>::infinity();
    const int n = m.dim();
    const Mat id = Mat::Identity(n, n);
    for (const Point& p : sample_points(n, n_points, seed)) {
        const Mat g = m.metric_at(p);
        std::array<Mat, 3> s;
        for (int i = 0; i < 3; ++i) s[static_cast<std::size_t>(i)] = m.structure_at(i, p);
        quat = std::max({quat, max_abs(s[0] * s[0] + id), max_abs(s[1] * s[1] + id), max_abs(s[2] * s[2] + id),
                         max_abs(s[0] * s[1] - s[2])});
        compat = std::max(compat, max_abs(g - g.transpose()));
        for (int i = 0; i < 3; ++i) {
            closed = std::max(closed, max_abs(exterior_derivative(m.omega_field(i), p)));
            compat = std::max(compat, max_abs(to_matrix(m.omega_at(i, p)) + g * s[static_cast<std::size_t>(i)]));
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.real());
        min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
        negativity = std::max(negativity, -es.eigenvalues().minCoeff());
    }
    CheckReport r;
    r.command = "validate";
    r.model = m.id();
    r.seed = seed;
    r.tolerance = tol;
    const std::string pre = m.id() + ".";
    r.add({pre + "QUATERNION", n_points, quat, tol, quat <= tol});
    r.add({pre + "CLOSED", n_points, closed, tol, closed <= tol});
    r.add({pre + "COMPATIBLE", n_points, compat, tol, compat <= tol});
    r.add({pre + "POSITIVE", n_points, std::max(0.0, negativity), tol, min_eig > 0.0});
    return r;
}

// ---- d^c, F, identities ----

KFormJ dc_mu_jet(const HyperkahlerModel& m, int i, std::span<const Jet> x2)
{
    require(i >= 1 && i <= 3, "d^c index must be 1, 2 or 3");
    const Jet mu = m.moment_map(x2);
    const JetVec dmu = gradient_jets(mu);
    const MatJ s = m.structures(x2)[static_cast<std::size_t>(i - 1)];
    const int n = m.dim();
    KFormJ r(n, 1);
    for (int b = 0; b < n; ++b) {
        Jet acc(0.0);
        for (int a = 0; a < n; ++a) acc -= dmu[static_cast<std::size_t>(a)] * s(a, b);
        r.slot(static_cast<std::size_t>(b)) = acc;
    }
    return r;
}

KForm dc_mu(const HyperkahlerModel& m, int i, const Point& p) { return value_of(dc_mu_jet(m, i, seed(p.coords, 2))); }

namespace {

KForm ddc_mu(const HyperkahlerModel& m, int i, const Point& p) { return exterior_d(dc_mu_jet(m, i, seed(p.coords, 2))); }

KForm d_of(const Jet& f)
{
    KForm r(f.n, 1);
    for (int a = 0; a < f.n; ++a) r.slot(static_cast<std::size_t>(a)) = f.g[a];
    return r;
}

int pfaffian_sign(const Mat& w)
{
    const double pf = (w(0, 1) * w(2, 3) - w(0, 2) * w(1, 3) + w(0, 3) * w(1, 2)).real();
    require(pf != 0.0, "degenerate reference form");
    return pf > 0 ? 1 : -1;
}

}  // namespace

KForm curvature_F(const HyperkahlerModel& m, const Point& p) { return m.omega_at(0, p) + ddc_mu(m, 1, p); }

double model_identity_defect(const HyperkahlerModel& m, IdentityId id, const Point& p)
{
    require(p.dim() == m.dim(), "point dimension differs from model dimension");
    const VectorFieldJ x = m.action_vector_field();
    switch (id) {
    case IdentityId::LIE1: return max_abs(lie_derivative_form(x, m.omega_field(0), p));
    case IdentityId::LIE2: return max_abs(lie_derivative_form(x, m.omega_field(1), p) + m.omega_at(2, p));
    case IdentityId::LIE3: return max_abs(lie_derivative_form(x, m.omega_field(2), p) - m.omega_at(1, p));
    case IdentityId::MOMENT: {
        const Jet mu = m.moment_map(seed(p.coords, 1));
        return max_abs(contract(m.action_at(p), m.omega_at(0, p)) - d_of(mu));
    }
    case IdentityId::DDC2: return max_abs(ddc_mu(m, 2, p) + m.omega_at(1, p));
    case IdentityId::DDC3: return max_abs(ddc_mu(m, 3, p) + m.omega_at(2, p));
    case IdentityId::LEFSCHETZ: {
        const Mat g = m.metric_at(p);
        const double two_k = 2.0 * m.k();
        const KForm w1 = m.omega_at(0, p), w2 = m.omega_at(1, p);
        const cplx lam1 = lefschetz_trace(w1, g, w1);
        const cplx lam2 = lefschetz_trace(w2, g, w2);
        const cplx lam_ddc2 = -lefschetz_trace(w2, g, ddc_mu(m, 2, p));
        const cplx laplacian = -lefschetz_trace(w1, g, ddc_mu(m, 1, p));
        return std::max({std::abs(lam1 - two_k), std::abs(lam2 - two_k), std::abs(lam_ddc2 - two_k),
                         std::abs(laplacian - two_k)});
    }
    case IdentityId::F11_I:
    case IdentityId::F11_J:
    case IdentityId::F11_K: {
        const int i = id == IdentityId::F11_I ? 0 : id == IdentityId::F11_J ? 1 : 2;
        const Mat s = m.structure_at(i, p);
        const Mat f = to_matrix(curvature_F(m, p));
        return max_abs(s.transpose() * f * s - f);
    }
    case IdentityId::ASD4: {
        require(m.dim() == 4, "ASD4 is defined in dimension 4 only");
        const KForm f = curvature_F(m, p);
        const int orient = pfaffian_sign(to_matrix(m.omega_at(0, p)));
        return max_abs(f + hodge_star_4d(f, m.metric_at(p), orient));
    }
    case IdentityId::IXF: {
        // i_X F = d(mu + g(X, X)); g(X, X) = dmu(I X).
        const JetVec x1 = seed(p.coords, 1);
        const JetVec xv = m.action_field(x1);
        const MatJ g = m.metric(x1);
        Jet h = m.moment_map(x1);
        for (int a = 0; a < m.dim(); ++a)
            for (int b = 0; b < m.dim(); ++b) h += xv[static_cast<std::size_t>(a)] * g(a, b) * xv[static_cast<std::size_t>(b)];
        return max_abs(contract(m.action_at(p), curvature_F(m, p)) - d_of(h));
    }
    }
    return 0.0;
}

// ---- twistor family ----

std::array<double, 3> sphere_point(cplx zeta)
{
    const double r2 = std::norm(zeta);
    const double s = 1.0 / (1.0 + r2);
    return {(1.0 - r2) * s, 2.0 * zeta.imag() * s, -2.0 * zeta.real() * s};
}

Mat complex_structure_at_zeta(const HyperkahlerModel& m, cplx zeta, const Point& p)
{
    require(std::isfinite(zeta.real()) && std::isfinite(zeta.imag()), "zeta must be finite");
    const auto x = sphere_point(zeta);
    return x[0] * m.structure_at(0, p) + x[1] * m.structure_at(1, p) + x[2] * m.structure_at(2, p);
}

namespace {

KFormJ phi_jet(const HyperkahlerModel& m, cplx zeta, std::span<const Jet> x2)
{
    const cplx c1 = 2.0 * kI * zeta, c2 = 1.0 + zeta * zeta, c3 = kI * (1.0 - zeta * zeta);
    return dc_mu_jet(m, 1, x2) * Jet(c1) + dc_mu_jet(m, 2, x2) * Jet(c2) + dc_mu_jet(m, 3, x2) * Jet(c3);
}

}  // namespace

KForm phi_zeta(const HyperkahlerModel& m, cplx zeta, const Point& p) { return value_of(phi_jet(m, zeta, seed(p.coords, 2))); }

double phi_type_defect(const HyperkahlerModel& m, cplx zeta, const Point& p)
{
    const Eigen::RowVectorXcd phi = to_row(phi_zeta(m, zeta, p));
    const Mat iz = complex_structure_at_zeta(m, zeta, p);
    return (0.5 * (phi + kI * phi * iz)).cwiseAbs().maxCoeff();
}

double phi_contraction_defect(const HyperkahlerModel& m, cplx zeta, const Point& p)
{
    const KForm phi = phi_zeta(m, zeta, p);
    const std::vector<cplx> x = m.action_at(p);
    const Mat g = m.metric_at(p);
    Vec xv(static_cast<Eigen::Index>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) xv(static_cast<Eigen::Index>(i)) = x[i];
    const cplx gxx = (xv.transpose() * g * xv)(0, 0);
    return std::abs(contract(x, phi).slot(0) + 2.0 * kI * zeta * gxx);
}

double eq10_defect(const HyperkahlerModel& m, cplx zeta, const Point& p)
{
    const Mat dphi = to_matrix(exterior_d(phi_jet(m, zeta, seed(p.coords, 2))));
    const Mat iz = complex_structure_at_zeta(m, zeta, p);
    const Mat b11 = 0.5 * (dphi + iz.transpose() * dphi * iz);
    const Mat f = to_matrix(curvature_F(m, p));
    return max_abs(b11 - 2.0 * kI * zeta * f);
}

namespace {

// Returns (dbar mu, zeta^{-1} phi(dbar X^{1,0})) as row covectors.
std::pair<Eigen::RowVectorXcd, Eigen::RowVectorXcd> base_direction_sides(const FlatModel& m, cplx zeta, const Point& p)
{
    require(zeta != cplx(0.0), "base-direction identity needs zeta != 0");
    require(p.dim() == m.dim(), "point dimension differs from model dimension");
    const int n = m.dim();
    const Mat iz = complex_structure_at_zeta(m, zeta, p);
    const Mat one = Mat::Identity(n, n);
    const Mat p10 = 0.5 * (one - kI * iz);
    const Mat p01 = 0.5 * (one + kI * iz);
    const JetVec x1 = seed(p.coords, 1);
    const JetVec xv = m.action_field(x1);
    Mat dx(n, n);  // dx(a, b) = d_b X^a
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) dx(a, b) = xv[static_cast<std::size_t>(a)].g[b];
    const Jet mu = m.moment_map(x1);
    Eigen::RowVectorXcd dmu(n);
    for (int a = 0; a < n; ++a) dmu(a) = mu.g[a];
    // I_zeta is constant on the flat model, so dbar(P10 X) = P10 DX P01.
    const Eigen::RowVectorXcd phi = to_row(phi_zeta(m, zeta, p));
    return {dmu * p01, phi * (p10 * dx * p01) / zeta};
}

}  // namespace

double base_direction_defect(const FlatModel& m, cplx zeta, const Point& p)
{
    const auto [dbar_mu, rhs] = base_direction_sides(m, zeta, p);
    return (2.0 * dbar_mu - rhs).cwiseAbs().maxCoeff();
}

double base_direction_defect_corrected(const FlatModel& m, cplx zeta, const Point& p)
{
    const auto [dbar_mu, rhs] = base_direction_sides(m, zeta, p);
    return (2.0 * kI * dbar_mu - rhs).cwiseAbs().maxCoeff();
}

double curvature_type_defect(const HyperkahlerModel& m, cplx zeta, const Point& p)
{
    const Mat iz = complex_structure_at_zeta(m, zeta, p);
    const Mat f = to_matrix(curvature_F(m, p));
    return max_abs(iz.transpose() * f * iz - f);
}

}  // namespace hkt
