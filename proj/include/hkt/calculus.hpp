#pragma once

// Fields on chart domains and the exterior-calculus operations on them.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hkt/jet.hpp"
#include "hkt/kform.hpp"

namespace hkt {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

struct Point {
    std::vector<double> coords;

    Point() = default;
    explicit Point(std::vector<double> c);

    int dim() const { return static_cast<int>(coords.size()); }
};

// Scalar field: exact jet evaluation when built from kernel primitives,
// otherwise an opaque function handled by central differences.
struct ScalarField {
    std::function<Jet(std::span<const Jet>)> jet;
    std::function<cplx(std::span<const double>)> opaque;

    static ScalarField from_jets(std::function<Jet(std::span<const Jet>)> f);
    static ScalarField from_function(std::function<cplx(std::span<const double>)> f);
};

struct FormField {
    int degree = 0;
    std::function<KFormJ(std::span<const Jet>)> jet;
    std::function<KForm(std::span<const double>)> opaque;

    static FormField from_jets(int degree, std::function<KFormJ(std::span<const Jet>)> f);
    static FormField from_function(int degree, std::function<KForm(std::span<const double>)> f);

    KForm eval(std::span<const double> x) const;
};

using VectorFieldJ = std::function<JetVec(std::span<const Jet>)>;

// Finite-difference step and Richardson level for opaque fields.
inline constexpr double kFdStep = 1e-4;
inline constexpr double kFdHessStep = 1e-3;

// Kernel operations take raw chart coordinates; Point overloads forward.
Jet jet_eval(const ScalarField& f, std::span<const double> x, int order);
KForm exterior_derivative(const FormField& w, std::span<const double> x);
KForm lie_derivative_form(const VectorFieldJ& v, const FormField& w, std::span<const double> x);

inline Jet jet_eval(const ScalarField& f, const Point& p, int order) { return jet_eval(f, p.coords, order); }
inline KForm exterior_derivative(const FormField& w, const Point& p) { return exterior_derivative(w, p.coords); }
inline KForm lie_derivative_form(const VectorFieldJ& v, const FormField& w, const Point& p)
{
    return lie_derivative_form(v, w, p.coords);
}

// Lambda(F) = 1/2 tr(Omega_ref^{-1} F); Lambda(w_ref) = dim/2.
cplx lefschetz_trace(const KForm& omega_ref, const Mat& g, const KForm& f);

// Hodge star of a 2-form in dimension 4; orientation +1 or -1.
KForm hodge_star_4d(const KForm& f, const Mat& g, int orientation);

Mat to_matrix(const KForm& two_form);
KForm from_matrix(const Mat& m);

// Row covector of a 1-form and back.
Eigen::RowVectorXcd to_row(const KForm& one_form);
KForm from_row(const Eigen::RowVectorXcd& r);

// Jet-valued square matrix, row-major.
struct MatJ {
    int n = 0;
    std::vector<Jet> a;

    MatJ() = default;
    explicit MatJ(int size) : n(size), a(static_cast<std::size_t>(size * size), Jet(0.0)) {}

    Jet& operator()(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }
    const Jet& operator()(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }

    static MatJ constant(const Eigen::MatrixXd& m);
    Mat value() const;
};

MatJ operator*(const MatJ& x, const MatJ& y);
MatJ inverse(const MatJ& m);
KFormJ form_from_matrix(const MatJ& m);

}  // namespace hkt
