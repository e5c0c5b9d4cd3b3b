// Smallest cells-per-difference multiplier at which peeling succeeds in the target fraction of
// seeded trials. Prints one CSV row per multiplier tried.
#include <cstdio>

#include <CLI11.hpp>

#include "blockrecon/common/random.hpp"
#include "blockrecon/iblt/iblt.hpp"

using namespace blockrecon;

int main(int argc, char** argv)
{
    CLI::App app{"IBLT size calibration"};
    std::uint64_t d = 20;
    std::uint32_t trials = 10000;
    std::uint32_t k = 3;
    double target = 0.99;
    double lo = 1.0, hi = 4.0, step = 0.1;
    std::uint64_t seed = 1;
    app.add_option("--d", d, "Symmetric difference")->check(CLI::PositiveNumber);
    app.add_option("--trials", trials, "Seeds per multiplier");
    app.add_option("--k", k, "Hash functions")->check(CLI::Range(1U, 8U));
    app.add_option("--target", target, "Required decode rate");
    app.add_option("--lo", lo);
    app.add_option("--hi", hi);
    app.add_option("--step", step);
    app.add_option("--seed", seed);
    CLI11_PARSE(app, argc, argv);

    std::printf("multiplier,cells,decoded,rate\n");
    for (int i = 0;; ++i) {
        const double mult = lo + i * step;
        if (mult > hi + 1e-9) break;
        const std::uint32_t cells = iblt::iblt_sizing(d, k, mult);
        std::uint32_t ok = 0;
        for (std::uint32_t t = 0; t < trials; ++t) {
            auto rng = make_rng(seed, t);
            iblt::Iblt table(iblt::IbltParams{cells, static_cast<std::uint8_t>(k), 8, 0, rng()});
            // Only the difference matters after subtraction: half the keys on each side.
            for (std::uint64_t j = 0; j < d; ++j) {
                Bytes key(8);
                fill_random(rng, key);
                if (j % 2 == 0) table.insert(key);
                else table.erase(key);
            }
            const auto r = table.decode();
            ok += r.complete && r.only_in_a.size() + r.only_in_b.size() == d ? 1 : 0;
        }
        const double rate = static_cast<double>(ok) / trials;
        std::printf("%.2f,%u,%u,%.4f\n", mult, cells, ok, rate);
        if (rate >= target) return 0;
    }
    return 1;
}
