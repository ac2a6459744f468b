// Times the OpenMP kernels against their serial reference implementations
// and checks they agree bit-exactly.

#include <chrono>
#include <cstdio>
#include <vector>

#include "lbee/kernels.hpp"
#include "lbee/rng.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename F>
double time_best_of(F&& f, int reps = 3) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto start = Clock::now();
        f();
        best = std::min(best, seconds_since(start));
    }
    return best;
}

}  // namespace

int main() {
    lbee::Xoshiro256pp rng(7);
    const std::size_t rows = 1500, dim = 128, protos = 32;
    std::vector<double> data(rows * dim), proto_data(protos * dim);
    for (auto& v : data) v = rng.gaussian();
    for (auto& v : proto_data) v = rng.gaussian();

    std::vector<double> a, b;
    const double t_pd_serial = time_best_of(
        [&] { a = lbee::kernels::pairwise_sq_dist_serial(data, rows, dim); });
    const double t_pd_omp =
        time_best_of([&] { b = lbee::kernels::pairwise_sq_dist(data, rows, dim); });
    const bool pd_ok = a == b;

    const double t_dm_serial = time_best_of(
        [&] { a = lbee::kernels::dot_matrix_serial(data, rows, proto_data, protos, dim); });
    const double t_dm_omp = time_best_of(
        [&] { b = lbee::kernels::dot_matrix(data, rows, proto_data, protos, dim); });
    const bool dm_ok = a == b;

    std::vector<std::size_t> idx_a, idx_b;
    std::vector<double> score_a, score_b;
    const double t_am_serial = time_best_of([&] {
        lbee::kernels::argmax_dot_serial(data, rows, proto_data, protos, dim, idx_a, score_a);
    });
    const double t_am_omp = time_best_of([&] {
        lbee::kernels::argmax_dot(data, rows, proto_data, protos, dim, idx_b, score_b);
    });
    const bool am_ok = idx_a == idx_b && score_a == score_b;

    std::printf("kernel              serial(s)  openmp(s)  speedup  match\n");
    std::printf("pairwise_sq_dist    %9.4f  %9.4f  %6.2fx  %s\n", t_pd_serial, t_pd_omp,
                t_pd_serial / t_pd_omp, pd_ok ? "yes" : "NO");
    std::printf("dot_matrix          %9.4f  %9.4f  %6.2fx  %s\n", t_dm_serial, t_dm_omp,
                t_dm_serial / t_dm_omp, dm_ok ? "yes" : "NO");
    std::printf("argmax_dot          %9.4f  %9.4f  %6.2fx  %s\n", t_am_serial, t_am_omp,
                t_am_serial / t_am_omp, am_ok ? "yes" : "NO");
    return (pd_ok && dm_ok && am_ok) ? 0 : 1;
}
