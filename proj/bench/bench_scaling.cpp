// Timing harness: serial reference kernel against the OpenMP kernel for one,
// half and all hardware threads, plus a bitwise comparison of the outputs.

#include <chrono>
#include <cstdio>
#include <thread>

#include <cutvol/compute.hpp>
#include <cutvol/shapes.hpp>

using namespace cutvol;
using clock_type = std::chrono::steady_clock;

namespace {

double run_ms(const ScalarGrid& g, const ComputeOptions& opt, bool parallel,
              FractionField* out) {
    auto t0 = clock_type::now();
    ComputeResult res =
        parallel ? compute_fractions(g, opt) : compute_fractions_serial(g, opt);
    auto t1 = clock_type::now();
    if (out) *out = std::move(res.field);
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void bench_case(const char* name, const ScalarGrid& g, Method method) {
    ComputeOptions opt;
    opt.method = method;
    FractionField serial_field, par_field;
    double t_serial = run_ms(g, opt, false, &serial_field);
    std::printf("%-24s cells=%-8zu serial %8.1f ms\n", name,
                (std::size_t)(g.cells_x() * g.cells_y() * g.cells_z()),
                t_serial);

    unsigned hw = std::thread::hardware_concurrency();
    int counts[3] = {1, int(hw > 1 ? hw / 2 : 1), int(hw ? hw : 1)};
    for (int nt : counts) {
        opt.threads = nt;
        double t = run_ms(g, opt, true, &par_field);
        bool same = par_field.alpha == serial_field.alpha;
        std::printf("%-24s   threads=%-2d %10.1f ms  speedup %5.2fx  %s\n",
                    "", nt, t, t_serial / t,
                    same ? "output identical" : "OUTPUT MISMATCH");
    }
}

}  // namespace

int main() {
    ScalarGrid g2 = sample_shape(make_double_circle(), 513);
    bench_case("2D double-circle 512^2", g2, Method::Analytic);
    bench_case("2D double-circle linear", g2, Method::Linear);

    ScalarGrid g3 = sample_shape(make_double_sphere(), 65);
    bench_case("3D double-sphere 64^3", g3, Method::Analytic);
    bench_case("3D double-sphere linear", g3, Method::Linear);
    return 0;
}
