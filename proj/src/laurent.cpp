#include "hkt/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hkt/errors.hpp"

namespace hkt {

using cplx = std::complex<double>;

std::shared_ptr<const SymContext> SymContext::make(std::vector<std::string> names)
{
    std::set<std::string> seen(names.begin(), names.end());
    require(seen.size() == names.size(), "duplicate variable name");
    return std::shared_ptr<const SymContext>(new SymContext(std::move(names)));
}

int SymContext::index(const std::string& name) const
{
    const auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw ContractViolation("unknown variable: " + name);
    return static_cast<int>(it - names_.begin());
}

namespace {

void same_context(const Ctx& a, const Ctx& b)
{
    if (a == b) return;
    require(a && b && a->names() == b->names(), "variable-context mismatch");
}

int compare(const GaussRational& a, const GaussRational& b)
{
    if (a.re() != b.re()) return a.re() < b.re() ? -1 : 1;
    if (a.im() != b.im()) return a.im() < b.im() ? -1 : 1;
    return 0;
}

cplx power(cplx x, int e)
{
    if (e < 0) {
        if (x == cplx(0.0)) throw EvaluationError("negative power of zero");
        return 1.0 / power(x, -e);
    }
    cplx r = 1.0;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
}

void check_point(const Ctx& ctx, std::span<const cplx> x)
{
    require(static_cast<int>(x.size()) == ctx->size(), "evaluation point has wrong length");
}

}  // namespace

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly LaurentPoly::constant(Ctx ctx, const GaussRational& c)
{
    LaurentPoly p(ctx);
    p.add_term(Exponent(static_cast<std::size_t>(ctx->size()), 0), c);
    return p;
}

LaurentPoly LaurentPoly::var(Ctx ctx, int i)
{
    require(i >= 0 && i < ctx->size(), "variable index out of range");
    Exponent e(static_cast<std::size_t>(ctx->size()), 0);
    e[static_cast<std::size_t>(i)] = 1;
    return monomial(std::move(ctx), e);
}

LaurentPoly LaurentPoly::var(Ctx ctx, const std::string& name)
{
    const int i = ctx->index(name);
    return var(std::move(ctx), i);
}

LaurentPoly LaurentPoly::monomial(Ctx ctx, Exponent e, const GaussRational& c)
{
    require(static_cast<int>(e.size()) == ctx->size(), "exponent length differs from context");
    LaurentPoly p(std::move(ctx));
    p.add_term(e, c);
    return p;
}

bool LaurentPoly::is_constant() const
{
    if (terms_.empty()) return true;
    if (terms_.size() != 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](int v) { return v == 0; });
}

int LaurentPoly::min_exponent(int i) const
{
    int m = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        const int v = e[static_cast<std::size_t>(i)];
        m = first ? v : std::min(m, v);
        first = false;
    }
    return m;
}

int LaurentPoly::max_exponent(int i) const
{
    int m = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        const int v = e[static_cast<std::size_t>(i)];
        m = first ? v : std::max(m, v);
        first = false;
    }
    return m;
}

void LaurentPoly::add_term(const Exponent& e, const GaussRational& c)
{
    require(static_cast<int>(e.size()) == ctx_->size(), "exponent length differs from context");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o)
{
    same_context(ctx_, o.ctx_);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o)
{
    same_context(ctx_, o.ctx_);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(const GaussRational& c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b)
{
    same_context(a.ctx_, b.ctx_);
    LaurentPoly r(a.ctx_);
    Exponent e(static_cast<std::size_t>(a.ctx_->size()));
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b)
{
    same_context(a.ctx_, b.ctx_);
    return a.terms_ == b.terms_;
}

LaurentPoly LaurentPoly::pow(int n) const
{
    if (n < 0) {
        require(is_monomial(), "negative power of a non-monomial");
        const auto& [e, c] = *terms_.begin();
        Exponent r(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) r[i] = e[i] * n;
        GaussRational cr = 1;
        const GaussRational inv = c.inverse();
        for (int i = 0; i < -n; ++i) cr *= inv;
        return monomial(ctx_, r, cr);
    }
    LaurentPoly r = constant(ctx_, 1);
    for (int i = 0; i < n; ++i) r = r * *this;
    return r;
}

LaurentPoly LaurentPoly::partial(int i) const
{
    require(i >= 0 && i < ctx_->size(), "variable index out of range");
    LaurentPoly r(ctx_);
    for (const auto& [e, c] : terms_) {
        const int k = e[static_cast<std::size_t>(i)];
        if (k == 0) continue;
        Exponent f = e;
        f[static_cast<std::size_t>(i)] -= 1;
        r.add_term(f, c * GaussRational(k));
    }
    return r;
}

LaurentPoly LaurentPoly::conj_coefficients() const
{
    LaurentPoly r(ctx_);
    for (const auto& [e, c] : terms_) r.add_term(e, c.conj());
    return r;
}

cplx LaurentPoly::evaluate(std::span<const cplx> x) const
{
    check_point(ctx_, x);
    cplx acc = 0.0;
    for (const auto& [e, c] : terms_) {
        cplx t = c.to_complex();
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) t *= power(x[i], e[i]);
        acc += t;
    }
    return acc;
}

std::string LaurentPoly::str() const
{
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += ctx_->name(static_cast<int>(i));
            if (e[i] != 1) mono += "^" + std::to_string(e[i]);
        }
        std::string coef = c.str();
        std::string t;
        if (mono.empty())
            t = coef;
        else if (c == GaussRational(1))
            t = mono;
        else if (c == GaussRational(-1))
            t = "-" + mono;
        else
            t = coef + "*" + mono;
        if (!first) out += (t[0] == '-') ? " - " + t.substr(1) : " + " + t;
        else out += t;
        first = false;
    }
    return out;
}

bool PolyLess::operator()(const LaurentPoly& a, const LaurentPoly& b) const
{
    auto ia = a.terms().begin();
    auto ib = b.terms().begin();
    for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first;
        const int c = compare(ia->second, ib->second);
        if (c != 0) return c < 0;
    }
    return ia == a.terms().end() && ib != b.terms().end();
}

// ----------------------------------------------------------------- ExpLaurent

ExpLaurent::ExpLaurent(const LaurentPoly& p) : ctx_(p.ctx())
{
    add_summand(LaurentPoly(ctx_), p);
}

ExpLaurent ExpLaurent::constant(Ctx ctx, const GaussRational& c)
{
    return ExpLaurent(LaurentPoly::constant(std::move(ctx), c));
}

ExpLaurent ExpLaurent::exp(const LaurentPoly& q)
{
    return term(LaurentPoly::constant(q.ctx(), 1), q);
}

ExpLaurent ExpLaurent::term(const LaurentPoly& p, const LaurentPoly& q)
{
    same_context(p.ctx(), q.ctx());
    ExpLaurent r(p.ctx());
    r.add_summand(q, p);
    return r;
}

void ExpLaurent::add_summand(const LaurentPoly& q, const LaurentPoly& p)
{
    same_context(ctx_, q.ctx());
    same_context(ctx_, p.ctx());
    if (p.is_zero()) return;
    auto [it, inserted] = sum_.try_emplace(q, p);
    if (!inserted) {
        it->second += p;
        if (it->second.is_zero()) sum_.erase(it);
    }
}

bool ExpLaurent::is_unit() const { return sum_.size() == 1 && sum_.begin()->second.is_monomial(); }

std::optional<LaurentPoly> ExpLaurent::as_poly() const
{
    if (sum_.empty()) return LaurentPoly(ctx_);
    if (sum_.size() == 1 && sum_.begin()->first.is_zero()) return sum_.begin()->second;
    return std::nullopt;
}

std::size_t ExpLaurent::term_count() const
{
    std::size_t n = 0;
    for (const auto& [q, p] : sum_) n += p.size();
    return n;
}

ExpLaurent& ExpLaurent::operator+=(const ExpLaurent& o)
{
    same_context(ctx_, o.ctx_);
    for (const auto& [q, p] : o.sum_) add_summand(q, p);
    return *this;
}

ExpLaurent& ExpLaurent::operator-=(const ExpLaurent& o)
{
    same_context(ctx_, o.ctx_);
    for (const auto& [q, p] : o.sum_) add_summand(q, -p);
    return *this;
}

ExpLaurent operator-(const ExpLaurent& a)
{
    ExpLaurent r(a.ctx_);
    for (const auto& [q, p] : a.sum_) r.add_summand(q, -p);
    return r;
}

ExpLaurent operator*(const ExpLaurent& a, const ExpLaurent& b)
{
    same_context(a.ctx_, b.ctx_);
    ExpLaurent r(a.ctx_);
    for (const auto& [qa, pa] : a.sum_)
        for (const auto& [qb, pb] : b.sum_) r.add_summand(qa + qb, pa * pb);
    return r;
}

ExpLaurent operator*(const GaussRational& c, const ExpLaurent& a)
{
    ExpLaurent r(a.ctx_);
    for (const auto& [q, p] : a.sum_) r.add_summand(q, p * c);
    return r;
}

bool operator==(const ExpLaurent& a, const ExpLaurent& b) { return (a - b).is_zero(); }

ExpLaurent ExpLaurent::pow(int n) const
{
    if (n < 0) {
        require(is_unit(), "negative power of a non-unit");
        const auto& [q, p] = *sum_.begin();
        return term(p.pow(n), q * GaussRational(n));
    }
    ExpLaurent r = constant(ctx_, 1);
    for (int i = 0; i < n; ++i) r = r * *this;
    return r;
}

ExpLaurent ExpLaurent::partial(int i) const
{
    ExpLaurent r(ctx_);
    for (const auto& [q, p] : sum_) r.add_summand(q, p.partial(i) + p * q.partial(i));
    return r;
}

cplx ExpLaurent::evaluate(std::span<const cplx> x) const
{
    cplx acc = 0.0;
    for (const auto& [q, p] : sum_) acc += p.evaluate(x) * std::exp(q.evaluate(x));
    if (!std::isfinite(acc.real()) || !std::isfinite(acc.imag())) throw EvaluationError("non-finite value");
    return acc;
}

std::string ExpLaurent::str() const
{
    if (sum_.empty()) return "0";
    std::string out;
    for (const auto& [q, p] : sum_) {
        if (!out.empty()) out += " + ";
        if (q.is_zero())
            out += "(" + p.str() + ")";
        else
            out += "(" + p.str() + ")*exp(" + q.str() + ")";
    }
    return out;
}

// ------------------------------------------------------------------ OneFormSym

ExpLaurent OneFormSym::coeff(int i) const
{
    const auto it = c_.find(i);
    return it == c_.end() ? ExpLaurent(ctx_) : it->second;
}

void OneFormSym::add(int i, const ExpLaurent& c)
{
    same_context(ctx_, c.ctx());
    require(i >= 0 && i < ctx_->size(), "variable index out of range");
    if (c.is_zero()) return;
    auto [it, inserted] = c_.try_emplace(i, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) c_.erase(it);
    }
}

std::size_t OneFormSym::term_count() const
{
    std::size_t n = 0;
    for (const auto& [i, c] : c_) n += c.term_count();
    return n;
}

OneFormSym& OneFormSym::operator+=(const OneFormSym& o)
{
    for (const auto& [i, c] : o.c_) add(i, c);
    return *this;
}

OneFormSym& OneFormSym::operator-=(const OneFormSym& o)
{
    for (const auto& [i, c] : o.c_) add(i, -c);
    return *this;
}

OneFormSym operator*(const ExpLaurent& f, const OneFormSym& a)
{
    OneFormSym r(a.ctx_);
    for (const auto& [i, c] : a.c_) r.add(i, f * c);
    return r;
}

bool operator==(const OneFormSym& a, const OneFormSym& b) { return (a - b).is_zero(); }

OneFormSym OneFormSym::restrict_off(const std::vector<int>& vars) const
{
    OneFormSym r(ctx_);
    for (const auto& [i, c] : c_)
        if (std::find(vars.begin(), vars.end(), i) == vars.end()) r.add(i, c);
    return r;
}

std::vector<cplx> OneFormSym::evaluate(std::span<const cplx> x) const
{
    std::vector<cplx> r(static_cast<std::size_t>(ctx_->size()), 0.0);
    for (const auto& [i, c] : c_) r[static_cast<std::size_t>(i)] = c.evaluate(x);
    return r;
}

std::string OneFormSym::str() const
{
    if (c_.empty()) return "0";
    std::string out;
    for (const auto& [i, c] : c_) {
        if (!out.empty()) out += " + ";
        out += "[" + c.str() + "] d" + ctx_->name(i);
    }
    return out;
}

// ------------------------------------------------------------------ TwoFormSym

void TwoFormSym::add(int i, int j, const ExpLaurent& c)
{
    same_context(ctx_, c.ctx());
    require(i >= 0 && j >= 0 && i < ctx_->size() && j < ctx_->size(), "variable index out of range");
    if (i == j || c.is_zero()) return;
    const ExpLaurent v = i < j ? c : -c;
    const std::pair<int, int> key{std::min(i, j), std::max(i, j)};
    auto [it, inserted] = c_.try_emplace(key, v);
    if (!inserted) {
        it->second += v;
        if (it->second.is_zero()) c_.erase(it);
    }
}

ExpLaurent TwoFormSym::coeff(int i, int j) const
{
    if (i == j) return ExpLaurent(ctx_);
    const auto it = c_.find({std::min(i, j), std::max(i, j)});
    if (it == c_.end()) return ExpLaurent(ctx_);
    return i < j ? it->second : -it->second;
}

std::size_t TwoFormSym::term_count() const
{
    std::size_t n = 0;
    for (const auto& [ij, c] : c_) n += c.term_count();
    return n;
}

TwoFormSym& TwoFormSym::operator+=(const TwoFormSym& o)
{
    for (const auto& [ij, c] : o.c_) add(ij.first, ij.second, c);
    return *this;
}

TwoFormSym& TwoFormSym::operator-=(const TwoFormSym& o)
{
    for (const auto& [ij, c] : o.c_) add(ij.first, ij.second, -c);
    return *this;
}

TwoFormSym operator*(const ExpLaurent& f, const TwoFormSym& a)
{
    TwoFormSym r(a.ctx_);
    for (const auto& [ij, c] : a.c_) r.add(ij.first, ij.second, f * c);
    return r;
}

bool operator==(const TwoFormSym& a, const TwoFormSym& b) { return (a - b).is_zero(); }

TwoFormSym TwoFormSym::restrict_off(const std::vector<int>& vars) const
{
    TwoFormSym r(ctx_);
    auto dropped = [&](int i) { return std::find(vars.begin(), vars.end(), i) != vars.end(); };
    for (const auto& [ij, c] : c_)
        if (!dropped(ij.first) && !dropped(ij.second)) r.add(ij.first, ij.second, c);
    return r;
}

std::string TwoFormSym::str() const
{
    if (c_.empty()) return "0";
    std::string out;
    for (const auto& [ij, c] : c_) {
        if (!out.empty()) out += " + ";
        out += "[" + c.str() + "] d" + ctx_->name(ij.first) + "^d" + ctx_->name(ij.second);
    }
    return out;
}

// -------------------------------------------------------------- VectorFieldSym

void VectorFieldSym::add(int i, const ExpLaurent& c)
{
    same_context(ctx_, c.ctx());
    require(i >= 0 && i < ctx_->size(), "variable index out of range");
    if (c.is_zero()) return;
    auto [it, inserted] = c_.try_emplace(i, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) c_.erase(it);
    }
}

ExpLaurent VectorFieldSym::component(int i) const
{
    const auto it = c_.find(i);
    return it == c_.end() ? ExpLaurent(ctx_) : it->second;
}

ExpLaurent VectorFieldSym::apply(const ExpLaurent& f) const
{
    ExpLaurent r(ctx_);
    for (const auto& [i, c] : c_) r += c * f.partial(i);
    return r;
}

// ------------------------------------------------------------------- calculus

OneFormSym formal_d(const ExpLaurent& a)
{
    OneFormSym r(a.ctx());
    for (int i = 0; i < a.ctx()->size(); ++i) r.add(i, a.partial(i));
    return r;
}

TwoFormSym formal_d(const OneFormSym& a)
{
    TwoFormSym r(a.ctx());
    for (const auto& [j, c] : a.coefficients())
        for (int i = 0; i < a.ctx()->size(); ++i) r.add(i, j, c.partial(i));
    return r;
}

TwoFormSym wedge(const OneFormSym& a, const OneFormSym& b)
{
    same_context(a.ctx(), b.ctx());
    TwoFormSym r(a.ctx());
    for (const auto& [i, ca] : a.coefficients())
        for (const auto& [j, cb] : b.coefficients()) r.add(i, j, ca * cb);
    return r;
}

ExpLaurent contract(const VectorFieldSym& v, const OneFormSym& a)
{
    same_context(v.ctx(), a.ctx());
    ExpLaurent r(a.ctx());
    for (const auto& [i, c] : a.coefficients()) r += v.component(i) * c;
    return r;
}

OneFormSym contract(const VectorFieldSym& v, const TwoFormSym& a)
{
    same_context(v.ctx(), a.ctx());
    OneFormSym r(a.ctx());
    for (const auto& [ij, c] : a.coefficients()) {
        r.add(ij.second, v.component(ij.first) * c);
        r.add(ij.first, -(v.component(ij.second) * c));
    }
    return r;
}

OneFormSym dlog(const ExpLaurent& a)
{
    require(a.is_unit(), "dlog needs a unit (monomial times exponential)");
    const auto& [q, p] = *a.summands().begin();
    const auto& e = p.terms().begin()->first;
    OneFormSym r = formal_d(ExpLaurent(q));
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        Exponent m(e.size(), 0);
        m[i] = -1;
        r.add(static_cast<int>(i), ExpLaurent(LaurentPoly::monomial(a.ctx(), m, GaussRational(e[i]))));
    }
    return r;
}

// --------------------------------------------------------------- substitution

namespace {

ExpLaurent replacement(const Substitution& s, const Ctx& ctx, int i)
{
    const auto it = s.find(i);
    if (it == s.end()) return ExpLaurent(LaurentPoly::var(ctx, i));
    same_context(ctx, it->second.ctx());
    return it->second;
}

ExpLaurent replacement_power(const Substitution& s, const Ctx& ctx, int i, int n)
{
    const ExpLaurent r = replacement(s, ctx, i);
    if (n < 0 && !r.is_unit())
        throw ContractViolation("substitution of a non-unit under a negative power of " + ctx->name(i));
    return r.pow(n);
}

}  // namespace

ExpLaurent substitute(const LaurentPoly& a, const Substitution& s)
{
    const Ctx& ctx = a.ctx();
    ExpLaurent r(ctx);
    for (const auto& [e, c] : a.terms()) {
        ExpLaurent t = ExpLaurent::constant(ctx, c);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) t = t * replacement_power(s, ctx, static_cast<int>(i), e[i]);
        r += t;
    }
    return r;
}

ExpLaurent substitute(const ExpLaurent& a, const Substitution& s)
{
    ExpLaurent r(a.ctx());
    for (const auto& [q, p] : a.summands()) {
        const auto q_new = substitute(q, s).as_poly();
        if (!q_new) throw ContractViolation("substitution puts an exponential inside an exponent");
        r += substitute(p, s) * ExpLaurent::exp(*q_new);
    }
    return r;
}

OneFormSym pullback(const OneFormSym& a, const Substitution& s)
{
    OneFormSym r(a.ctx());
    for (const auto& [i, c] : a.coefficients()) r += substitute(c, s) * formal_d(replacement(s, a.ctx(), i));
    return r;
}

TwoFormSym pullback(const TwoFormSym& a, const Substitution& s)
{
    TwoFormSym r(a.ctx());
    for (const auto& [ij, c] : a.coefficients())
        r += substitute(c, s)
           * wedge(formal_d(replacement(s, a.ctx(), ij.first)), formal_d(replacement(s, a.ctx(), ij.second)));
    return r;
}

LaurentPoly euler_defect(const LaurentPoly& h, const std::vector<int>& vars, int degree)
{
    LaurentPoly r(h.ctx());
    for (const auto& [e, c] : h.terms()) {
        int w = -degree;
        for (int i : vars) {
            require(i >= 0 && i < h.ctx()->size(), "variable index out of range");
            w += e[static_cast<std::size_t>(i)];
        }
        r.add_term(e, c * GaussRational(w));
    }
    return r;
}

LaurentPoly euler_defect(const LaurentPoly& h, int degree)
{
    std::vector<int> all(static_cast<std::size_t>(h.ctx()->size()));
    for (int i = 0; i < h.ctx()->size(); ++i) all[static_cast<std::size_t>(i)] = i;
    return euler_defect(h, all, degree);
}

}  // namespace hkt
