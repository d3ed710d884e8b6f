#pragma once

// Exact algebra of finite sums  sum_j p_j exp(q_j)  with p_j, q_j Laurent
// polynomials over Q(i), plus symbolic 1-forms, 2-forms and vector fields
// with such coefficients.

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hkt/gauss_rational.hpp"

namespace hkt {

// Ordered list of variable names shared by every expression built from it.
class SymContext {
public:
    static std::shared_ptr<const SymContext> make(std::vector<std::string> names);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_.at(static_cast<std::size_t>(i)); }
    const std::vector<std::string>& names() const { return names_; }
    // Throws ContractViolation for an unknown name.
    int index(const std::string& name) const;

private:
    explicit SymContext(std::vector<std::string> names) : names_(std::move(names)) {}
    std::vector<std::string> names_;
};

using Ctx = std::shared_ptr<const SymContext>;
using Exponent = std::vector<int>;

class LaurentPoly {
public:
    explicit LaurentPoly(Ctx ctx) : ctx_(std::move(ctx)) {}

    static LaurentPoly constant(Ctx ctx, const GaussRational& c);
    static LaurentPoly var(Ctx ctx, int i);
    static LaurentPoly var(Ctx ctx, const std::string& name);
    static LaurentPoly monomial(Ctx ctx, Exponent e, const GaussRational& c = 1);

    const Ctx& ctx() const { return ctx_; }
    const std::map<Exponent, GaussRational>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    // True for zero or a lone exponent-0 term.
    bool is_constant() const;
    // Smallest exponent of variable i over all terms (0 for the zero poly).
    int min_exponent(int i) const;
    int max_exponent(int i) const;

    void add_term(const Exponent& e, const GaussRational& c);

    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const GaussRational& c);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(LaurentPoly a, const GaussRational& c) { return a *= c; }
    friend LaurentPoly operator*(const GaussRational& c, LaurentPoly a) { return a *= c; }
    friend LaurentPoly operator-(LaurentPoly a) { return a *= GaussRational(-1); }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);

    // Negative powers need a monomial.
    LaurentPoly pow(int n) const;
    LaurentPoly partial(int i) const;
    LaurentPoly conj_coefficients() const;

    std::complex<double> evaluate(std::span<const std::complex<double>> x) const;
    std::string str() const;

private:
    Ctx ctx_;
    std::map<Exponent, GaussRational> terms_;
};

// Strict weak order on polynomials of one context (map key for exponents).
struct PolyLess {
    bool operator()(const LaurentPoly& a, const LaurentPoly& b) const;
};

class ExpLaurent {
public:
    explicit ExpLaurent(Ctx ctx) : ctx_(std::move(ctx)) {}
    ExpLaurent(const LaurentPoly& p);  // NOLINT(google-explicit-constructor)

    static ExpLaurent constant(Ctx ctx, const GaussRational& c);
    static ExpLaurent exp(const LaurentPoly& q);
    static ExpLaurent term(const LaurentPoly& p, const LaurentPoly& q);

    const Ctx& ctx() const { return ctx_; }
    // exponent q -> prefactor p, p nonzero.
    const std::map<LaurentPoly, LaurentPoly, PolyLess>& summands() const { return sum_; }
    bool is_zero() const { return sum_.empty(); }
    // Single summand whose prefactor is a monomial.
    bool is_unit() const;
    // The polynomial when there is no exponential factor (or the sum is zero).
    std::optional<LaurentPoly> as_poly() const;
    // Total number of monomials over all prefactors.
    std::size_t term_count() const;

    ExpLaurent& operator+=(const ExpLaurent& o);
    ExpLaurent& operator-=(const ExpLaurent& o);
    friend ExpLaurent operator+(ExpLaurent a, const ExpLaurent& b) { return a += b; }
    friend ExpLaurent operator-(ExpLaurent a, const ExpLaurent& b) { return a -= b; }
    friend ExpLaurent operator-(const ExpLaurent& a);
    friend ExpLaurent operator*(const ExpLaurent& a, const ExpLaurent& b);
    friend ExpLaurent operator*(const GaussRational& c, const ExpLaurent& a);
    friend bool operator==(const ExpLaurent& a, const ExpLaurent& b);

    // Negative powers need a unit.
    ExpLaurent pow(int n) const;
    ExpLaurent partial(int i) const;

    std::complex<double> evaluate(std::span<const std::complex<double>> x) const;
    std::string str() const;

private:
    void add_summand(const LaurentPoly& q, const LaurentPoly& p);
    Ctx ctx_;
    std::map<LaurentPoly, LaurentPoly, PolyLess> sum_;
};

// sum_x c_x dx
class OneFormSym {
public:
    explicit OneFormSym(Ctx ctx) : ctx_(std::move(ctx)) {}

    const Ctx& ctx() const { return ctx_; }
    const std::map<int, ExpLaurent>& coefficients() const { return c_; }
    ExpLaurent coeff(int i) const;
    void add(int i, const ExpLaurent& c);
    bool is_zero() const { return c_.empty(); }
    std::size_t term_count() const;

    OneFormSym& operator+=(const OneFormSym& o);
    OneFormSym& operator-=(const OneFormSym& o);
    friend OneFormSym operator+(OneFormSym a, const OneFormSym& b) { return a += b; }
    friend OneFormSym operator-(OneFormSym a, const OneFormSym& b) { return a -= b; }
    friend OneFormSym operator*(const ExpLaurent& f, const OneFormSym& a);
    friend bool operator==(const OneFormSym& a, const OneFormSym& b);

    // Drop the dx components for the given variables (restriction to x = const).
    OneFormSym restrict_off(const std::vector<int>& vars) const;
    std::vector<std::complex<double>> evaluate(std::span<const std::complex<double>> x) const;
    std::string str() const;

private:
    Ctx ctx_;
    std::map<int, ExpLaurent> c_;
};

// sum_{i<j} c_ij dx_i ^ dx_j
class TwoFormSym {
public:
    explicit TwoFormSym(Ctx ctx) : ctx_(std::move(ctx)) {}

    const Ctx& ctx() const { return ctx_; }
    const std::map<std::pair<int, int>, ExpLaurent>& coefficients() const { return c_; }
    // Adds c dx_i ^ dx_j for any i != j.
    void add(int i, int j, const ExpLaurent& c);
    ExpLaurent coeff(int i, int j) const;
    bool is_zero() const { return c_.empty(); }
    std::size_t term_count() const;

    TwoFormSym& operator+=(const TwoFormSym& o);
    TwoFormSym& operator-=(const TwoFormSym& o);
    friend TwoFormSym operator+(TwoFormSym a, const TwoFormSym& b) { return a += b; }
    friend TwoFormSym operator-(TwoFormSym a, const TwoFormSym& b) { return a -= b; }
    friend TwoFormSym operator*(const ExpLaurent& f, const TwoFormSym& a);
    friend bool operator==(const TwoFormSym& a, const TwoFormSym& b);

    TwoFormSym restrict_off(const std::vector<int>& vars) const;
    std::string str() const;

private:
    Ctx ctx_;
    std::map<std::pair<int, int>, ExpLaurent> c_;
};

// sum_x V_x d/dx
class VectorFieldSym {
public:
    explicit VectorFieldSym(Ctx ctx) : ctx_(std::move(ctx)) {}

    const Ctx& ctx() const { return ctx_; }
    const std::map<int, ExpLaurent>& components() const { return c_; }
    void add(int i, const ExpLaurent& c);
    ExpLaurent component(int i) const;

    // V(f)
    ExpLaurent apply(const ExpLaurent& f) const;

private:
    Ctx ctx_;
    std::map<int, ExpLaurent> c_;
};

OneFormSym formal_d(const ExpLaurent& a);
TwoFormSym formal_d(const OneFormSym& a);
TwoFormSym wedge(const OneFormSym& a, const OneFormSym& b);
ExpLaurent contract(const VectorFieldSym& v, const OneFormSym& a);
// i_V (dx_i ^ dx_j) = V_i dx_j - V_j dx_i
OneFormSym contract(const VectorFieldSym& v, const TwoFormSym& a);

// dp/p + dq for a = p exp(q) with p a monomial.
OneFormSym dlog(const ExpLaurent& a);

// Variable index -> replacement. Replacements may be units (any power) or
// plain Laurent polynomials (non-negative powers only). An exponent must
// stay free of exponentials after substitution.
using Substitution = std::map<int, ExpLaurent>;

ExpLaurent substitute(const LaurentPoly& a, const Substitution& s);
ExpLaurent substitute(const ExpLaurent& a, const Substitution& s);
OneFormSym pullback(const OneFormSym& a, const Substitution& s);
TwoFormSym pullback(const TwoFormSym& a, const Substitution& s);

// sum_{i in vars} x_i dH/dx_i - degree H
LaurentPoly euler_defect(const LaurentPoly& h, const std::vector<int>& vars, int degree);
LaurentPoly euler_defect(const LaurentPoly& h, int degree);

}  // namespace hkt
