#pragma once

// Antisymmetric degree-r tensors stored by increasing index tuples.
//
// Entry for the sorted tuple i0 < ... < i_{r-1} is the coefficient of
// dx_{i0}^...^dx_{i_{r-1}}; any other index order is read with the
// permutation sign, so antisymmetry holds by construction.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "hkt/errors.hpp"
#include "hkt/jet.hpp"

namespace hkt {

inline constexpr int kMaxDegree = 4;

using IndexTuple = std::array<int, kMaxDegree>;

// Tables for one (dim, degree): sorted tuples and bitmask -> slot.
struct ComboTable {
    int dim = 0;
    int degree = 0;
    std::vector<IndexTuple> tuples;
    std::vector<int> slot_of_mask;
};

const ComboTable& combo_table(int dim, int degree);

template <class T>
class KFormT {
public:
    KFormT() = default;
    KFormT(int dim, int degree) : dim_(dim), degree_(degree)
    {
        require(dim >= 1 && dim <= kMaxDim, "form dimension out of range");
        require(degree >= 0 && degree <= kMaxDegree, "form degree out of range");
        require(degree <= dim, "form degree exceeds dimension");
        entries_.assign(combo_table(dim, degree).tuples.size(), T(0.0));
    }

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    std::size_t size() const { return entries_.size(); }

    const IndexTuple& tuple(std::size_t slot) const { return combo_table(dim_, degree_).tuples[slot]; }
    T& slot(std::size_t s) { return entries_[s]; }
    const T& slot(std::size_t s) const { return entries_[s]; }

    // Signed read for arbitrary index order; zero on repeated index.
    T at(std::initializer_list<int> idx) const
    {
        int sign = 0;
        const int s = locate(idx.begin(), static_cast<int>(idx.size()), sign);
        if (sign == 0) return T(0.0);
        return sign > 0 ? entries_[s] : T(0.0) - entries_[s];
    }

    // Sets the entry of the given tuple (any order), adjusting for sign.
    void set(std::initializer_list<int> idx, const T& value)
    {
        int sign = 0;
        const int s = locate(idx.begin(), static_cast<int>(idx.size()), sign);
        require(sign != 0, "repeated index in form entry");
        entries_[s] = sign > 0 ? value : T(0.0) - value;
    }

    // Slot and sign for a raw index list (sign 0 when an index repeats).
    int locate(const int* idx, int count, int& sign) const
    {
        require(count == degree_, "index count differs from degree");
        std::uint32_t mask = 0;
        int inversions = 0;
        for (int a = 0; a < count; ++a) {
            require(idx[a] >= 0 && idx[a] < dim_, "form index out of range");
            if (mask & (1u << idx[a])) {
                sign = 0;
                return 0;
            }
            mask |= 1u << idx[a];
            for (int b = a + 1; b < count; ++b)
                if (idx[a] > idx[b]) ++inversions;
        }
        sign = (inversions % 2) ? -1 : 1;
        return combo_table(dim_, degree_).slot_of_mask[mask];
    }

    KFormT& operator+=(const KFormT& o)
    {
        check_same(o);
        for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] = entries_[i] + o.entries_[i];
        return *this;
    }
    KFormT& operator-=(const KFormT& o)
    {
        check_same(o);
        for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] = entries_[i] - o.entries_[i];
        return *this;
    }
    KFormT& operator*=(const T& c)
    {
        for (auto& e : entries_) e = e * c;
        return *this;
    }

    friend KFormT operator+(KFormT a, const KFormT& b) { return a += b; }
    friend KFormT operator-(KFormT a, const KFormT& b) { return a -= b; }
    friend KFormT operator*(KFormT a, const T& c) { return a *= c; }
    friend KFormT operator*(const T& c, KFormT a) { return a *= c; }

    void check_same(const KFormT& o) const
    {
        require(dim_ == o.dim_ && degree_ == o.degree_, "form shape mismatch");
    }

private:
    int dim_ = 0;
    int degree_ = 0;
    std::vector<T> entries_;
};

using KForm = KFormT<cplx>;
using KFormJ = KFormT<Jet>;

// Sign of the shuffle placing the indices of ma before those of mb.
inline int shuffle_sign(std::uint32_t ma, std::uint32_t mb)
{
    int inv = 0;
    for (int i = 0; i < 32; ++i)
        if (mb & (1u << i)) inv += __builtin_popcount(ma & ~((2u << i) - 1u));
    return (inv % 2) ? -1 : 1;
}

inline std::uint32_t tuple_mask(const IndexTuple& t, int degree)
{
    std::uint32_t m = 0;
    for (int i = 0; i < degree; ++i) m |= 1u << t[i];
    return m;
}

template <class T>
KFormT<T> wedge(const KFormT<T>& a, const KFormT<T>& b)
{
    require(a.dim() == b.dim(), "wedge: dimension mismatch");
    require(a.degree() + b.degree() <= kMaxDegree, "wedge: degree exceeds 4");
    require(a.degree() + b.degree() <= a.dim(), "wedge: degree exceeds dimension");
    KFormT<T> r(a.dim(), a.degree() + b.degree());
    const auto& tab = combo_table(a.dim(), r.degree());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::uint32_t ma = tuple_mask(a.tuple(i), a.degree());
        for (std::size_t j = 0; j < b.size(); ++j) {
            const std::uint32_t mb = tuple_mask(b.tuple(j), b.degree());
            if (ma & mb) continue;
            const int s = tab.slot_of_mask[ma | mb];
            const T prod = a.slot(i) * b.slot(j);
            r.slot(s) = shuffle_sign(ma, mb) > 0 ? r.slot(s) + prod : r.slot(s) - prod;
        }
    }
    return r;
}

// i_X a: contraction in the first slot.
template <class T, class V>
KFormT<T> contract(const V& x, const KFormT<T>& a)
{
    require(static_cast<int>(x.size()) == a.dim(), "contract: dimension mismatch");
    require(a.degree() >= 1, "contract: degree-0 form");
    KFormT<T> r(a.dim(), a.degree() - 1);
    for (std::size_t s = 0; s < r.size(); ++s) {
        const IndexTuple& t = r.tuple(s);
        T acc(0.0);
        for (int i = 0; i < a.dim(); ++i) {
            int idx[kMaxDegree];
            idx[0] = i;
            for (int c = 0; c < r.degree(); ++c) idx[c + 1] = t[c];
            int sign = 0;
            const int slot = a.locate(idx, a.degree(), sign);
            if (sign == 0) continue;
            const T term = T(x[i]) * a.slot(slot);
            acc = sign > 0 ? acc + term : acc - term;
        }
        r.slot(s) = acc;
    }
    return r;
}

// Value part of a jet-valued form.
inline KForm value_of(const KFormJ& f)
{
    KForm r(f.dim(), f.degree());
    for (std::size_t s = 0; s < f.size(); ++s) r.slot(s) = f.slot(s).v;
    return r;
}

// Exterior derivative of a jet-valued form from its gradients.
KForm exterior_d(const KFormJ& f);

// Order-1 jets of dF when F carries order-2 jets.
KFormJ exterior_d_jet(const KFormJ& f);

double max_abs(const KForm& f);
KForm conj(const KForm& f);
KForm real_form(const KForm& f);
KForm imag_form(const KForm& f);

}  // namespace hkt
