// Benchmark of the OpenMP kernels against their serial reference paths:
// chunked random-integral sampling and the empirical-CF reduction. Both
// paths must agree bit for bit; the table reports times and speedup.

#include <chrono>
#include <cstdio>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "levy/simulate.hpp"

using namespace levy;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Row {
    const char* name;
    double serial_s;
    double parallel_s;
    bool identical;
};

void print_row(const Row& r) {
    std::printf("%-28s serial %7.2fs  parallel %7.2fs  speedup %4.2fx  identical %s\n",
                r.name, r.serial_s, r.parallel_s, r.serial_s / r.parallel_s,
                r.identical ? "yes" : "NO");
}

} // namespace

int main(int argc, char** argv) {
    long n = 100000;
    if (argc > 1) n = std::atol(argv[1]);
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d, n = %ld\n", omp_get_max_threads(), n);
#else
    std::printf("OpenMP disabled at build time, n = %ld\n", n);
#endif

    SimConfig cfg;
    cfg.n_samples = n;
    cfg.seed = 20240101;
    cfg.mesh = 0.1;
    auto driver = make_comp_poisson_exp(2.0, 1.0);

    Row sampling{"random_integral (gamma law)", 0, 0, false};
    SampleBatch serial_batch, parallel_batch;
    {
        cfg.parallel = false;
        const auto t0 = std::chrono::steady_clock::now();
        serial_batch = random_integral(IntegralWeight::exp_decay(cfg.time_horizon), driver, cfg);
        sampling.serial_s = seconds_since(t0);
    }
    {
        cfg.parallel = true;
        const auto t0 = std::chrono::steady_clock::now();
        parallel_batch = random_integral(IntegralWeight::exp_decay(cfg.time_horizon), driver, cfg);
        sampling.parallel_s = seconds_since(t0);
    }
    sampling.identical =
        serial_batch.values.size() == parallel_batch.values.size() &&
        std::memcmp(serial_batch.values.data(), parallel_batch.values.data(),
                    serial_batch.values.size() * sizeof(double)) == 0;
    print_row(sampling);

    Row ecf{"empirical_cf (101 nodes)", 0, 0, false};
    auto grid = symmetric_t_grid(5.0, 101);
    ComplexGridFunction cf_serial, cf_parallel;
    {
        const auto t0 = std::chrono::steady_clock::now();
        cf_serial = empirical_cf_serial(serial_batch.values, grid);
        ecf.serial_s = seconds_since(t0);
    }
    {
        const auto t0 = std::chrono::steady_clock::now();
        cf_parallel = empirical_cf(parallel_batch.values, grid, true);
        ecf.parallel_s = seconds_since(t0);
    }
    ecf.identical = true;
    for (double t : grid) {
        const Complex a = cf_serial(t), b = cf_parallel(t);
        if (std::memcmp(&a, &b, sizeof a) != 0) ecf.identical = false;
    }
    print_row(ecf);

    return sampling.identical && ecf.identical ? 0 : 1;
}
