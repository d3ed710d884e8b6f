#include "hkt/parallel.hpp"

#include <cmath>
#include <exception>
#include <limits>

#ifdef HKT_HAVE_OPENMP
#include <omp.h>
#endif

namespace hkt {

namespace {

double as_defect(double d) { return std::isnan(d) ? std::numeric_limits<double>::infinity() : d; }

}  // namespace

int parallel_threads()
{
#ifdef HKT_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

double max_over_serial(std::size_t n, const std::function<double(std::size_t)>& f)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, as_defect(f(i)));
    return worst;
}

double max_over_parallel(std::size_t n, const std::function<double(std::size_t)>& f)
{
    double worst = 0.0;
    std::exception_ptr error;
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic) reduction(max : worst)
    for (long long i = 0; i < count; ++i) {
        try {
            worst = std::max(worst, as_defect(f(static_cast<std::size_t>(i))));
        } catch (...) {
#pragma omp critical(hkt_parallel_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
    return worst;
}

double max_defect_serial(const HyperkahlerModel& m, IdentityId id, std::span<const Point> pts)
{
    return max_over_serial(pts.size(), [&](std::size_t i) { return model_identity_defect(m, id, pts[i]); });
}

double max_defect_parallel(const HyperkahlerModel& m, IdentityId id, std::span<const Point> pts)
{
    return max_over_parallel(pts.size(), [&](std::size_t i) { return model_identity_defect(m, id, pts[i]); });
}

namespace {

std::vector<IdentityId> applicable(const HyperkahlerModel& m)
{
    std::vector<IdentityId> ids;
    for (IdentityId id : all_identity_ids())
        if (identity_applies(m, id)) ids.push_back(id);
    return ids;
}

}  // namespace

SuiteDefects identity_suite_serial(const HyperkahlerModel& m, std::span<const Point> pts)
{
    SuiteDefects out;
    for (IdentityId id : applicable(m)) out.emplace_back(id, max_defect_serial(m, id, pts));
    return out;
}

SuiteDefects identity_suite_parallel(const HyperkahlerModel& m, std::span<const Point> pts)
{
    const auto ids = applicable(m);
    const std::size_t n_id = ids.size();
    std::vector<double> cell(n_id * pts.size());
    max_over_parallel(cell.size(), [&](std::size_t c) {
        cell[c] = model_identity_defect(m, ids[c % n_id], pts[c / n_id]);
        return 0.0;
    });
    SuiteDefects out;
    for (IdentityId id : ids) out.emplace_back(id, 0.0);
    for (std::size_t c = 0; c < cell.size(); ++c)
        out[c % n_id].second = std::max(out[c % n_id].second, as_defect(cell[c]));
    return out;
}

}  // namespace hkt
