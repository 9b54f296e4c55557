#include <chrono>
#include <cstdio>
#include <string>

#include "thermokc/bitstring.hpp"
#include "thermokc/machine.hpp"
#include "thermokc/thermal.hpp"

namespace {

using namespace thermokc;

double seconds(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const std::string& name, double serial_s, double parallel_s, bool identical) {
    std::printf("%-28s %10.3fs %10.3fs %7.2fx  %s\n", name.c_str(), serial_s, parallel_s,
                parallel_s > 0.0 ? serial_s / parallel_s : 0.0,
                identical ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
    std::printf("%-28s %11s %11s %8s  %s\n", "kernel", "serial", "parallel", "speedup",
                "results");

    {
        const BitString target = random_bits(12, 7);
        auto t0 = std::chrono::steady_clock::now();
        const ExactComplexity s = exact_k_serial(target, {}, 22);
        const double ts = seconds(t0);
        t0 = std::chrono::steady_clock::now();
        const ExactComplexity p = exact_k(target, {}, 22);
        const double tp = seconds(t0);
        const bool same = s.value == p.value &&
                          (!s.witness || s.witness->code == p.witness->code);
        report("exact_k(random-12, L=22)", ts, tp, same);
    }

    {
        auto t0 = std::chrono::steady_clock::now();
        const Rational s = kraft_sum_serial(19);
        const double ts = seconds(t0);
        t0 = std::chrono::steady_clock::now();
        const Rational p = kraft_sum(19);
        const double tp = seconds(t0);
        report("kraft_sum(L=19)", ts, tp, s == p);
    }

    {
        const Hamiltonian ham{4, 5, 1.0, 0.25};
        auto t0 = std::chrono::steady_clock::now();
        const ExactThermo s = exact_thermo_serial(ham, 0.4);
        const double ts = seconds(t0);
        t0 = std::chrono::steady_clock::now();
        const ExactThermo p = exact_thermo(ham, 0.4);
        const double tp = seconds(t0);
        const bool same = s.log_z == p.log_z && s.mean_energy == p.mean_energy &&
                          s.entropy_bits == p.entropy_bits;
        report("exact_thermo(4x5, b=0.4)", ts, tp, same);
    }

    return 0;
}
