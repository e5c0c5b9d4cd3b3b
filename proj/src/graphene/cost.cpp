#include "blockrecon/graphene/cost.hpp"

#include <cmath>

#include "blockrecon/common/error.hpp"

namespace blockrecon::graphene {

namespace {

const double kLn2Sq = std::log(2.0) * std::log(2.0);

void check(const CostParams& p)
{
    if (p.n < 1 || p.m <= p.n) throw InvalidArgument("cost_T: need m > n >= 1");
    if (!(p.a > 0.0) || p.a > static_cast<double>(p.m - p.n)) throw InvalidArgument("cost_T: a outside (0, m - n]");
}

} // namespace

double cost_bloom_term(const CostParams& p)
{
    check(p);
    return static_cast<double>(p.n) * -std::log(p.a / static_cast<double>(p.m - p.n)) / (8.0 * kLn2Sq);
}

double cost_iblt_term(const CostParams& p)
{
    check(p);
    return p.a * p.d_mult * p.tau;
}

double cost_T(const CostParams& p) { return cost_bloom_term(p) + cost_iblt_term(p); }

std::uint64_t choose_a(std::uint64_t m, std::uint64_t n, double tau, double d_mult)
{
    if (n < 1 || m <= n) throw InvalidArgument("choose_a: need m > n >= 1");
    if (!(tau * d_mult > 0.0)) throw InvalidArgument("choose_a: tau and d_mult must be positive");
    const std::uint64_t hi = m - n;
    // T is convex in a with its real minimum where n / (8 ln^2 2 a) = d tau.
    const double star = static_cast<double>(n) / (8.0 * kLn2Sq * d_mult * tau);
    auto clamp = [&](double x) {
        if (x < 1.0) return std::uint64_t{1};
        if (x > static_cast<double>(hi)) return hi;
        return static_cast<std::uint64_t>(x);
    };
    const std::uint64_t lo_a = clamp(std::floor(star));
    const std::uint64_t hi_a = clamp(std::ceil(star));
    auto cost = [&](std::uint64_t a) { return cost_T(CostParams{m, n, static_cast<double>(a), tau, d_mult}); };
    return cost(hi_a) < cost(lo_a) ? hi_a : lo_a;
}

} // namespace blockrecon::graphene
