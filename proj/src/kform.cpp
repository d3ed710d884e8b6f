#include "hkt/kform.hpp"

namespace hkt {

namespace {

ComboTable build_table(int dim, int degree)
{
    ComboTable t;
    t.dim = dim;
    t.degree = degree;
    t.slot_of_mask.assign(std::size_t{1} << dim, -1);
    // Lexicographic order of increasing tuples.
    IndexTuple cur{};
    auto rec = [&](auto&& self, int pos, int start) -> void {
        if (pos == degree) {
            t.slot_of_mask[tuple_mask(cur, degree)] = static_cast<int>(t.tuples.size());
            t.tuples.push_back(cur);
            return;
        }
        for (int i = start; i < dim; ++i) {
            cur[pos] = i;
            self(self, pos + 1, i + 1);
        }
    };
    rec(rec, 0, 0);
    return t;
}

struct AllTables {
    std::vector<ComboTable> tables;
    AllTables()
    {
        for (int d = 0; d <= kMaxDim; ++d)
            for (int r = 0; r <= kMaxDegree; ++r) tables.push_back(build_table(d, r));
    }
};

}  // namespace

const ComboTable& combo_table(int dim, int degree)
{
    static const AllTables all;
    require(dim >= 0 && dim <= kMaxDim && degree >= 0 && degree <= kMaxDegree, "combo table out of range");
    return all.tables[static_cast<std::size_t>(dim * (kMaxDegree + 1) + degree)];
}

KForm exterior_d(const KFormJ& f)
{
    KForm r(f.dim(), f.degree() + 1);
    for (std::size_t s = 0; s < r.size(); ++s) {
        const IndexTuple& t = r.tuple(s);
        cplx acc = 0.0;
        for (int j = 0; j <= f.degree(); ++j) {
            int rest[kMaxDegree];
            int c = 0;
            for (int a = 0; a <= f.degree(); ++a)
                if (a != j) rest[c++] = t[a];
            int sign = 0;
            const int slot = f.locate(rest, f.degree(), sign);
            const cplx term = f.slot(slot).g[t[j]];
            acc += ((j % 2) ? -1.0 : 1.0) * term;
        }
        r.slot(s) = acc;
    }
    return r;
}

KFormJ exterior_d_jet(const KFormJ& f)
{
    KFormJ r(f.dim(), f.degree() + 1);
    for (std::size_t s = 0; s < r.size(); ++s) {
        const IndexTuple& t = r.tuple(s);
        Jet acc(0.0);
        for (int j = 0; j <= f.degree(); ++j) {
            int rest[kMaxDegree];
            int c = 0;
            for (int a = 0; a <= f.degree(); ++a)
                if (a != j) rest[c++] = t[a];
            int sign = 0;
            const int slot = f.locate(rest, f.degree(), sign);
            const Jet& e = f.slot(slot);
            require(e.order >= 2 || e.n == 0, "exterior_d_jet needs order-2 entries");
            Jet d(e.n ? e.g[t[j]] : cplx(0.0));
            d.n = e.n;
            d.order = 1;
            for (int k = 0; k < e.n; ++k) d.g[k] = e.hess(t[j], k);
            acc = (j % 2) ? acc - d : acc + d;
        }
        r.slot(s) = acc;
    }
    return r;
}

double max_abs(const KForm& f)
{
    double m = 0.0;
    for (std::size_t s = 0; s < f.size(); ++s) m = std::max(m, std::abs(f.slot(s)));
    return m;
}

KForm conj(const KForm& f)
{
    KForm r = f;
    for (std::size_t s = 0; s < r.size(); ++s) r.slot(s) = std::conj(r.slot(s));
    return r;
}

KForm real_form(const KForm& f)
{
    KForm r = f;
    for (std::size_t s = 0; s < r.size(); ++s) r.slot(s) = r.slot(s).real();
    return r;
}

KForm imag_form(const KForm& f)
{
    KForm r = f;
    for (std::size_t s = 0; s < r.size(); ++s) r.slot(s) = r.slot(s).imag();
    return r;
}

}  // namespace hkt
