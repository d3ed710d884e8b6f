// Serial vs OpenMP timing of the identity suite on the registered models.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "hkt/parallel.hpp"

using namespace hkt;

namespace {

template <class F>
double seconds(F&& f)
{
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv)
{
    const int points = argc > 1 ? std::atoi(argv[1]) : 256;
    if (points < 1) {
        std::fprintf(stderr, "usage: hkt_bench [points]\n");
        return 2;
    }
    std::printf("threads %d, points %d\n", parallel_threads(), points);
    std::printf("%-10s %10s %10s %8s %s\n", "model", "serial_s", "omp_s", "speedup", "agree");
    for (const auto& id : model_ids()) {
        const auto m = make_model(id);
        const auto pts = sample_points(m->dim(), points, 1);
        SuiteDefects s, p;
        const double ts = seconds([&] { s = identity_suite_serial(*m, pts); });
        const double tp = seconds([&] { p = identity_suite_parallel(*m, pts); });
        std::printf("%-10s %10.4f %10.4f %8.2f %s\n", id.c_str(), ts, tp, ts / tp, s == p ? "yes" : "NO");
    }
    return 0;
}
