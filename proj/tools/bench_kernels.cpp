// Compares the OpenMP matrix-product kernel against the serial reference
// and checks they agree.

#include <chrono>
#include <cstdio>
#include <random>

#include "bcl/matcore.hpp"

namespace {

bcl::Matrix random_matrix(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    bcl::Matrix m(n, n);
    for (auto& e : m.entries()) e = bcl::Complex(g(rng), g(rng));
    return m;
}

double time_once(const bcl::Matrix& a, const bcl::Matrix& b, bool parallel,
                 bcl::Matrix& out) {
    const auto t0 = std::chrono::steady_clock::now();
    out = parallel ? bcl::multiply(a, b) : bcl::multiply_serial(a, b);
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main() {
    std::mt19937_64 rng(42);
    std::printf("%8s %12s %12s %10s %12s\n", "n", "serial[s]", "parallel[s]", "speedup",
                "max diff");
    for (std::size_t n : {64, 128, 256, 512}) {
        const bcl::Matrix a = random_matrix(n, rng);
        const bcl::Matrix b = random_matrix(n, rng);
        bcl::Matrix rs, rp;
        const double ts = time_once(a, b, false, rs);
        const double tp = time_once(a, b, true, rp);
        std::printf("%8zu %12.6f %12.6f %10.2f %12.3e\n", n, ts, tp, ts / tp,
                    bcl::max_abs(bcl::subtract(rs, rp)));
    }
    return 0;
}
