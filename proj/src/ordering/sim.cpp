#include "blockrecon/ordering/sim.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "blockrecon/common/random.hpp"
#include "blockrecon/common/short_id.hpp"
#include "blockrecon/iblt/iblt.hpp"
#include "blockrecon/ordering/buckets.hpp"
#include "blockrecon/ordering/constraints.hpp"
#include "blockrecon/ordering/lex.hpp"

namespace blockrecon::ordering {

namespace {

std::vector<ShortId> random_ids(Rng& rng, std::uint32_t n)
{
    std::set<ShortId> seen;
    std::vector<ShortId> ids;
    ids.reserve(n);
    while (ids.size() < n) {
        ShortId id;
        fill_random(rng, id);
        if (seen.insert(id).second) ids.push_back(id);
    }
    return ids;
}

} // namespace

CspTrial run_csp_trial(const OrderingSimConfig& cfg, std::uint32_t trial)
{
    if (cfg.n == 0) throw InvalidArgument("ordering sim needs n >= 1");
    if (cfg.buckets == 0) throw InvalidArgument("ordering sim needs at least one bucket per cell");
    Rng rng = make_rng(cfg.seed, trial);
    const std::vector<ShortId> canonical = random_ids(rng, cfg.n);

    CspTrial out;
    out.trial = trial;
    const double wanted = std::ceil(cfg.ratio * cfg.n / cfg.buckets - 1e-9);
    out.cells = std::max<std::uint32_t>(cfg.k, static_cast<std::uint32_t>(std::max(0.0, wanted)));
    out.actual_ratio = static_cast<double>(out.cells) * cfg.buckets / cfg.n;

    iblt::IbltParams p{out.cells, cfg.k, static_cast<std::uint8_t>(kShortIdBytes), 0, rng()};
    BucketEncoding probe{cfg.n, cfg.buckets, 1};
    const std::uint32_t width = bucket_width_for(cfg.n, max_bucket_addends(iblt::Iblt(p), canonical, probe));
    const BucketEncoding enc{cfg.n, cfg.buckets, width};
    p.value_width = static_cast<std::uint8_t>(enc.value_width());
    iblt::Iblt t(p);
    encode_block_indices(t, canonical, enc);

    // The decoder only knows the set, so variables follow sorted ShortId order.
    std::vector<ShortId> sorted = canonical;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::uint32_t> truth(cfg.n);
    for (std::uint32_t v = 0; v < cfg.n; ++v)
        truth[v] = static_cast<std::uint32_t>(std::find(canonical.begin(), canonical.end(), sorted[v]) - canonical.begin()) + 1;

    const ConstraintSystem cs = build_constraints(t, sorted, enc);
    out.equations = static_cast<std::uint32_t>(cs.equations.size());
    const SolveOutcome solved = propagate_solve(cs);
    for (std::uint32_t v = 0; v < cfg.n; ++v) {
        if (solved.assignment[v] == 0) continue;
        if (solved.assignment[v] != truth[v]) throw InconsistentSystem("propagation fixed a wrong index");
        ++out.resolved;
    }
    out.complete = solved.complete();

    const FallbackResult fb = square_system_fallback(cs, truth);
    out.unencoded = fb.unencoded;
    out.linear_determined = fb.unencoded == 0 && fb.recovered;
    out.recovered = fb.recovered;
    return out;
}

std::vector<CspTrial> run_csp_sim(const OrderingSimConfig& cfg)
{
    std::vector<CspTrial> out;
    out.reserve(cfg.trials);
    for (std::uint32_t t = 0; t < cfg.trials; ++t) out.push_back(run_csp_trial(cfg, t));
    return out;
}

LexTrial run_lex_trial(const OrderingSimConfig& cfg, std::uint32_t trial)
{
    Rng rng = make_rng(cfg.seed, trial);
    const std::vector<ShortId> canonical = random_ids(rng, cfg.n);
    std::vector<ShortId> shuffled = canonical;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const Bytes payload = lex_order_encode(canonical);
    LexTrial out;
    out.trial = trial;
    out.payload_bytes = payload.size();
    out.round_trip = lex_order_decode(shuffled, payload) == canonical;
    return out;
}

std::vector<LexTrial> run_lex_sim(const OrderingSimConfig& cfg)
{
    std::vector<LexTrial> out;
    out.reserve(cfg.trials);
    for (std::uint32_t t = 0; t < cfg.trials; ++t) out.push_back(run_lex_trial(cfg, t));
    return out;
}

} // namespace blockrecon::ordering
