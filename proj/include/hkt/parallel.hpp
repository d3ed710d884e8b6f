#pragma once

// Point-parallel maximum-defect kernels with serial references. NaN defects
// count as +inf so a broken evaluation never passes.

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "hkt/models.hpp"

namespace hkt {

// Threads the parallel kernels use (1 without OpenMP).
int parallel_threads();

double max_over_serial(std::size_t n, const std::function<double(std::size_t)>& f);
// Rethrows the first exception raised by f after the loop finishes.
double max_over_parallel(std::size_t n, const std::function<double(std::size_t)>& f);

double max_defect_serial(const HyperkahlerModel& m, IdentityId id, std::span<const Point> pts);
double max_defect_parallel(const HyperkahlerModel& m, IdentityId id, std::span<const Point> pts);

using SuiteDefects = std::vector<std::pair<IdentityId, double>>;

// Max defect per applicable identity, in all_identity_ids() order.
SuiteDefects identity_suite_serial(const HyperkahlerModel& m, std::span<const Point> pts);
SuiteDefects identity_suite_parallel(const HyperkahlerModel& m, std::span<const Point> pts);

}  // namespace hkt
