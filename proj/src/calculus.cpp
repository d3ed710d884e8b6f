#include "hkt/calculus.hpp"

#include <cmath>

namespace hkt {

Point::Point(std::vector<double> c) : coords(std::move(c))
{
    require(!coords.empty() && coords.size() % 4 == 0, "point length must be a positive multiple of 4");
    for (double v : coords) require(std::isfinite(v), "point has a non-finite coordinate");
}

ScalarField ScalarField::from_jets(std::function<Jet(std::span<const Jet>)> f)
{
    ScalarField s;
    s.jet = std::move(f);
    return s;
}

ScalarField ScalarField::from_function(std::function<cplx(std::span<const double>)> f)
{
    ScalarField s;
    s.opaque = std::move(f);
    return s;
}

FormField FormField::from_jets(int degree, std::function<KFormJ(std::span<const Jet>)> f)
{
    FormField w;
    w.degree = degree;
    w.jet = std::move(f);
    return w;
}

FormField FormField::from_function(int degree, std::function<KForm(std::span<const double>)> f)
{
    FormField w;
    w.degree = degree;
    w.opaque = std::move(f);
    return w;
}

KForm FormField::eval(std::span<const double> x) const
{
    if (jet) return value_of(jet(seed(x, 1)));
    return opaque(x);
}

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::vector<double> shifted(std::span<const double> x, int i, double hi, int k = -1, double hk = 0.0)
{
    std::vector<double> q(x.begin(), x.end());
    q[static_cast<std::size_t>(i)] += hi;
    if (k >= 0) q[static_cast<std::size_t>(k)] += hk;
    return q;
}

template <class F>
auto richardson(F&& d, double h)
{
    return (4.0 * d(h / 2) - d(h)) / 3.0;
}

}  // namespace

Jet jet_eval(const ScalarField& f, std::span<const double> p, int order)
{
    require(order == 1 || order == 2, "jet order must be 1 or 2");
    const int n = static_cast<int>(p.size());
    require(n >= 1 && n <= kMaxDim, "jet_eval: dimension out of range");
    for (double v : p) require(std::isfinite(v), "jet_eval: non-finite coordinate");
    Jet r;
    if (f.jet) {
        r = f.jet(seed(p, order));
        if (r.n == 0) {
            // Constant field: give it the point's dimension.
            r.n = n;
            r.order = order;
        }
    } else {
        r = Jet(f.opaque(p));
        r.n = n;
        r.order = order;
        for (int i = 0; i < n; ++i) {
            auto d = [&](double h) { return (f.opaque(shifted(p, i, h)) - f.opaque(shifted(p, i, -h))) / (2 * h); };
            r.g[i] = richardson(d, kFdStep);
        }
        if (order == 2) {
            for (int i = 0; i < n; ++i) {
                for (int k = i; k < n; ++k) {
                    auto d = [&](double h) {
                        if (i == k)
                            return (f.opaque(shifted(p, i, h)) - 2.0 * r.v + f.opaque(shifted(p, i, -h))) / (h * h);
                        return (f.opaque(shifted(p, i, h, k, h)) - f.opaque(shifted(p, i, h, k, -h))
                                - f.opaque(shifted(p, i, -h, k, h)) + f.opaque(shifted(p, i, -h, k, -h)))
                             / (4 * h * h);
                    };
                    r.hess(i, k) = r.hess(k, i) = richardson(d, kFdHessStep);
                }
            }
        }
    }
    if (!finite(r.v)) throw EvaluationError("scalar field is not finite at the point");
    if (order == 1)
        for (auto& e : r.h) e = 0.0;
    return r;
}

KForm exterior_derivative(const FormField& w, std::span<const double> p)
{
    const int n = static_cast<int>(p.size());
    require(w.degree + 1 <= n && w.degree + 1 <= kMaxDegree, "exterior derivative: degree overflow");
    if (w.jet) {
        const KFormJ f = w.jet(seed(p, 1));
        require(f.degree() == w.degree, "form field degree mismatch");
        return exterior_d(f);
    }
    // Central differences of each entry, assembled like exterior_d.
    std::vector<KForm> partial;
    partial.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        auto d = [&](double h) { return w.opaque(shifted(p, i, h)) - w.opaque(shifted(p, i, -h)); };
        KForm a = d(kFdStep / 2);
        KForm b = d(kFdStep);
        a *= cplx(4.0 / kFdStep);
        b *= cplx(1.0 / (2 * kFdStep));
        KForm c = a - b;
        c *= cplx(1.0 / 3.0);
        partial.push_back(c);
    }
    KForm r(n, w.degree + 1);
    for (std::size_t s = 0; s < r.size(); ++s) {
        const IndexTuple& t = r.tuple(s);
        cplx acc = 0.0;
        for (int j = 0; j <= w.degree; ++j) {
            int rest[kMaxDegree];
            int c = 0;
            for (int a = 0; a <= w.degree; ++a)
                if (a != j) rest[c++] = t[a];
            int sign = 0;
            const int slot = partial[0].locate(rest, w.degree, sign);
            acc += ((j % 2) ? -1.0 : 1.0) * partial[static_cast<std::size_t>(t[j])].slot(slot);
        }
        r.slot(s) = acc;
    }
    return r;
}

KForm lie_derivative_form(const VectorFieldJ& x, const FormField& w, std::span<const double> p)
{
    require(w.degree >= 1, "Lie derivative implemented for degree >= 1");
    const JetVec xj = x(seed(p, 1));
    require(xj.size() == p.size(), "vector field dimension mismatch");
    std::vector<cplx> xv(xj.size());
    for (std::size_t i = 0; i < xj.size(); ++i) xv[i] = xj[i].v;

    FormField ixw;
    ixw.degree = w.degree - 1;
    if (w.jet) {
        ixw.jet = [&](std::span<const Jet> c) { return contract(x(c), w.jet(c)); };
    } else {
        ixw.opaque = [&](std::span<const double> q) {
            const JetVec xq = x(seed(q, 1));
            std::vector<cplx> v(xq.size());
            for (std::size_t i = 0; i < xq.size(); ++i) v[i] = xq[i].v;
            return contract(v, w.opaque(q));
        };
    }
    KForm out = exterior_derivative(ixw, p);
    if (w.degree + 1 <= static_cast<int>(p.size()) && w.degree + 1 <= kMaxDegree)
        out += contract(xv, exterior_derivative(w, p));
    return out;
}

Mat to_matrix(const KForm& f)
{
    require(f.degree() == 2, "to_matrix needs a 2-form");
    Mat m = Mat::Zero(f.dim(), f.dim());
    for (int i = 0; i < f.dim(); ++i)
        for (int j = i + 1; j < f.dim(); ++j) {
            m(i, j) = f.at({i, j});
            m(j, i) = -m(i, j);
        }
    return m;
}

KForm from_matrix(const Mat& m)
{
    require(m.rows() == m.cols(), "from_matrix needs a square matrix");
    const int n = static_cast<int>(m.rows());
    KForm f(n, 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) f.set({i, j}, 0.5 * (m(i, j) - m(j, i)));
    return f;
}

Eigen::RowVectorXcd to_row(const KForm& f)
{
    require(f.degree() == 1, "to_row needs a 1-form");
    Eigen::RowVectorXcd r(f.dim());
    for (int i = 0; i < f.dim(); ++i) r(i) = f.slot(static_cast<std::size_t>(i));
    return r;
}

KForm from_row(const Eigen::RowVectorXcd& r)
{
    KForm f(static_cast<int>(r.size()), 1);
    for (int i = 0; i < r.size(); ++i) f.slot(static_cast<std::size_t>(i)) = r(i);
    return f;
}

cplx lefschetz_trace(const KForm& omega_ref, const Mat& g, const KForm& f)
{
    require(omega_ref.degree() == 2 && f.degree() == 2, "Lefschetz trace needs 2-forms");
    require(omega_ref.dim() == f.dim(), "Lefschetz trace: dimension mismatch");
    require(g.rows() == f.dim() && g.cols() == f.dim(), "Lefschetz trace: metric shape");
    require((g - g.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + g.cwiseAbs().maxCoeff()),
            "Lefschetz trace: metric not symmetric");
    const Mat w = to_matrix(omega_ref);
    Eigen::FullPivLU<Mat> lu(w);
    require(lu.isInvertible(), "Lefschetz trace: reference form is degenerate");
    return 0.5 * (lu.inverse() * to_matrix(f)).trace();
}

KForm hodge_star_4d(const KForm& f, const Mat& g, int orientation)
{
    require(f.dim() == 4 && f.degree() == 2, "Hodge star implemented for 2-forms in dimension 4");
    require(orientation == 1 || orientation == -1, "orientation must be +1 or -1");
    const Mat gi = g.inverse();
    const cplx vol = std::sqrt(g.determinant());
    const Mat fm = to_matrix(f);
    const Mat up = gi * fm * gi.transpose();  // F^{cd}
    KForm r(4, 2);
    // (*F)_ab = 1/2 sqrt(det g) eps_abcd F^cd
    static const int perm[6][4] = {{0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2},
                                   {1, 2, 0, 3}, {1, 3, 2, 0}, {2, 3, 0, 1}};
    for (const auto& p : perm) r.set({p[0], p[1]}, double(orientation) * vol * up(p[2], p[3]));
    return r;
}

MatJ MatJ::constant(const Eigen::MatrixXd& m)
{
    MatJ r(static_cast<int>(m.rows()));
    for (int i = 0; i < r.n; ++i)
        for (int j = 0; j < r.n; ++j) r(i, j) = Jet(m(i, j));
    return r;
}

Mat MatJ::value() const
{
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = (*this)(i, j).v;
    return m;
}

MatJ operator*(const MatJ& x, const MatJ& y)
{
    require(x.n == y.n, "matrix size mismatch");
    MatJ r(x.n);
    for (int i = 0; i < x.n; ++i)
        for (int j = 0; j < x.n; ++j) {
            Jet acc(0.0);
            for (int k = 0; k < x.n; ++k) acc += x(i, k) * y(k, j);
            r(i, j) = acc;
        }
    return r;
}

MatJ inverse(const MatJ& m)
{
    // Gauss-Jordan with partial pivoting on values.
    const int n = m.n;
    MatJ a = m;
    MatJ r(n);
    for (int i = 0; i < n; ++i) r(i, i) = Jet(1.0);
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int i = c + 1; i < n; ++i)
            if (std::abs(a(i, c).v) > std::abs(a(piv, c).v)) piv = i;
        require(std::abs(a(piv, c).v) > 1e-300, "singular jet matrix");
        if (piv != c)
            for (int j = 0; j < n; ++j) {
                std::swap(a(c, j), a(piv, j));
                std::swap(r(c, j), r(piv, j));
            }
        const Jet inv_p = inv(a(c, c));
        for (int j = 0; j < n; ++j) {
            a(c, j) = a(c, j) * inv_p;
            r(c, j) = r(c, j) * inv_p;
        }
        for (int i = 0; i < n; ++i) {
            if (i == c) continue;
            const Jet f = a(i, c);
            if (f.v == cplx(0.0) && f.n == 0) continue;
            for (int j = 0; j < n; ++j) {
                a(i, j) = a(i, j) - f * a(c, j);
                r(i, j) = r(i, j) - f * r(c, j);
            }
        }
    }
    return r;
}

KFormJ form_from_matrix(const MatJ& m)
{
    KFormJ f(m.n, 2);
    for (int i = 0; i < m.n; ++i)
        for (int j = i + 1; j < m.n; ++j) f.set({i, j}, (m(i, j) - m(j, i)) * Jet(0.5));
    return f;
}

}  // namespace hkt
