// Timed comparison of the OpenMP kernels against their serial reference
// implementations: constellation propagation, access-matrix construction,
// satellite selection, and metric-series computation.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "lunarbeam/scenario.hpp"

using namespace lunarbeam;

namespace {

template <typename F>
double time_ms(F&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

ScenarioConfig bench_config(long minutes) {
    ScenarioConfig cfg;
    cfg.name = "bench_40sat_quad";
    cfg.duration_minutes = minutes;
    cfg.constellation.n_sats = 40;
    cfg.constellation.ta_step_deg = 9.0;
    cfg.constellation.raan_list_deg = {0.0, 90.0, 225.0, 315.0};
    cfg.constellation.a = 1837.4;
    cfg.constellation.inc_deg = 90.0;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    long minutes = 2880;  // two days at 1-min cadence
    if (argc > 1) minutes = std::atol(argv[1]);

#ifdef _OPENMP
    const int threads = omp_get_max_threads();
#else
    const int threads = 1;
#endif
    std::printf("lunarbeam kernel benchmark: 40-sat quadruple scheme, %ld minutes, %d thread(s)\n",
                minutes, threads);

    const ScenarioConfig cfg = bench_config(minutes);

    std::vector<Ephemeris> eph_serial, eph_parallel;
    const double t_prop_s = time_ms([&] { eph_serial = propagate_constellation_serial(cfg); });
    const double t_prop_p = time_ms([&] { eph_parallel = propagate_constellation(cfg); });

    AccessMatrices mat_serial, mat_parallel;
    const double t_mat_s = time_ms(
        [&] { mat_serial = build_access_matrices_serial(eph_serial, cfg.rover, 0.0); });
    const double t_mat_p =
        time_ms([&] { mat_parallel = build_access_matrices(eph_serial, cfg.rover, 0.0); });

    SelectionSeries sel_serial, sel_parallel;
    const double t_sel_s = time_ms([&] { sel_serial = select_series_serial(mat_serial); });
    const double t_sel_p = time_ms([&] { sel_parallel = select_series(mat_serial); });

    MetricSeries ser_serial, ser_parallel;
    const double t_ser_s = time_ms(
        [&] { ser_serial = compute_series_serial(sel_serial, cfg.laser, cfg.panel); });
    const double t_ser_p =
        time_ms([&] { ser_parallel = compute_series(sel_serial, cfg.laser, cfg.panel); });

    bool identical = eph_parallel.size() == eph_serial.size() &&
                     mat_parallel.z_km == mat_serial.z_km &&
                     mat_parallel.psi_rad == mat_serial.psi_rad;
    for (std::size_t i = 0; identical && i < eph_serial.size(); ++i) {
        for (std::size_t k = 0; identical && k < eph_serial[i].size(); ++k) {
            identical = eph_serial[i].samples[k].r == eph_parallel[i].samples[k].r &&
                        eph_serial[i].samples[k].v == eph_parallel[i].samples[k].v;
        }
    }
    for (std::size_t i = 0; identical && i < sel_serial.records.size(); ++i) {
        identical = sel_serial.records[i].satellite == sel_parallel.records[i].satellite &&
                    sel_serial.records[i].slant_range_km == sel_parallel.records[i].slant_range_km;
    }
    for (std::size_t i = 0; identical && i < ser_serial.records.size(); ++i) {
        identical = ser_serial.records[i].zeta_fixed_pct == ser_parallel.records[i].zeta_fixed_pct;
    }

    std::printf("%-24s %12s %12s %9s\n", "kernel", "serial [ms]", "openmp [ms]", "speedup");
    auto row = [](const char* name, double s, double p) {
        std::printf("%-24s %12.1f %12.1f %8.2fx\n", name, s, p, p > 0.0 ? s / p : 0.0);
    };
    row("propagate_constellation", t_prop_s, t_prop_p);
    row("build_access_matrices", t_mat_s, t_mat_p);
    row("select_series", t_sel_s, t_sel_p);
    row("compute_series", t_ser_s, t_ser_p);
    std::printf("parallel/serial outputs identical: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
