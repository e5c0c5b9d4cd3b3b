#include "blockrecon/ordering/constraints.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

namespace blockrecon::ordering {

namespace {

constexpr std::uint64_t kPrime = 2147483647ULL; // 2^31 - 1

std::uint64_t mod_p(std::int64_t v)
{
    const auto r = v % static_cast<std::int64_t>(kPrime);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(kPrime) : r);
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e)
{
    std::uint64_t r = 1;
    b %= kPrime;
    while (e != 0) {
        if (e & 1U) r = r * b % kPrime;
        b = b * b % kPrime;
        e >>= 1;
    }
    return r;
}

std::uint64_t inv_mod(std::uint64_t a) { return pow_mod(a, kPrime - 2); }

// Gaussian elimination over GF(p) on the equations that still have unknowns after propagation.
// Columns are the unresolved variables. Rows stay dense; pivots prefer the sparsest candidate
// row to limit fill-in.
class Eliminator {
public:
    Eliminator(const ConstraintSystem& cs, const SolveOutcome& partial)
        : col_of_(cs.n, kNone), vars_(partial.unresolved)
    {
        for (std::uint32_t c = 0; c < vars_.size(); ++c) col_of_[vars_[c]] = c;
        const std::size_t width = vars_.size();
        for (const auto& eq : cs.equations) {
            std::vector<std::uint64_t> row(width, 0);
            std::int64_t rhs = eq.rhs;
            std::uint32_t nnz = 0;
            for (std::uint32_t v : eq.vars) {
                if (partial.assignment[v] != 0) {
                    rhs -= partial.assignment[v];
                } else {
                    row[col_of_[v]] = 1;
                    ++nnz;
                }
            }
            if (nnz == 0) continue;
            rows_.push_back(std::move(row));
            rhs_.push_back(mod_p(rhs));
            nnz_.push_back(nnz);
        }
        pivot_of_col_.assign(width, kNone);
        is_pivot_.assign(rows_.size(), false);
        run();
    }

    std::uint32_t rank() const { return static_cast<std::uint32_t>(order_.size()); }
    std::uint32_t unknowns() const { return static_cast<std::uint32_t>(vars_.size()); }

    std::vector<std::uint32_t> free_vars() const
    {
        std::vector<std::uint32_t> out;
        for (std::uint32_t c = 0; c < vars_.size(); ++c)
            if (pivot_of_col_[c] == kNone) out.push_back(vars_[c]);
        return out;
    }

    // Back substitution for a full-rank system. Returns false if some row is inconsistent.
    bool solve(std::vector<std::uint64_t>& values) const
    {
        for (std::size_t r = 0; r < rows_.size(); ++r)
            if (!is_pivot_[r] && rhs_[r] != 0) return false;
        values.assign(vars_.size(), 0);
        for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
            const std::uint32_t c = it->first;
            const auto& row = rows_[it->second];
            std::uint64_t acc = rhs_[it->second];
            for (std::uint32_t j = 0; j < row.size(); ++j) {
                if (j == c || row[j] == 0) continue;
                acc = (acc + kPrime - row[j] * values[j] % kPrime) % kPrime;
            }
            values[c] = acc * inv_mod(row[c]) % kPrime;
        }
        return true;
    }

    std::uint32_t var_at(std::uint32_t col) const { return vars_[col]; }

private:
    static constexpr std::uint32_t kNone = 0xffffffffU;

    void run()
    {
        const std::uint32_t width = static_cast<std::uint32_t>(vars_.size());
        std::vector<std::uint32_t> pivot_cols;
        for (std::uint32_t c = 0; c < width; ++c) {
            std::uint32_t best = kNone;
            for (std::uint32_t r = 0; r < rows_.size(); ++r) {
                if (is_pivot_[r] || rows_[r][c] == 0) continue;
                if (best == kNone || nnz_[r] < nnz_[best]) best = r;
            }
            if (best == kNone) continue;
            is_pivot_[best] = true;
            pivot_of_col_[c] = best;
            order_.emplace_back(c, best);

            const auto& prow = rows_[best];
            pivot_cols.clear();
            for (std::uint32_t j = c; j < width; ++j)
                if (prow[j] != 0) pivot_cols.push_back(j);
            const std::uint64_t pinv = inv_mod(prow[c]);
            for (std::uint32_t r = 0; r < rows_.size(); ++r) {
                if (is_pivot_[r] || rows_[r][c] == 0) continue;
                auto& row = rows_[r];
                const std::uint64_t f = row[c] * pinv % kPrime;
                for (std::uint32_t j : pivot_cols) {
                    const bool was_zero = row[j] == 0;
                    row[j] = (row[j] + kPrime - f * prow[j] % kPrime) % kPrime;
                    if (was_zero && row[j] != 0) ++nnz_[r];
                    else if (!was_zero && row[j] == 0) --nnz_[r];
                }
                rhs_[r] = (rhs_[r] + kPrime - f * rhs_[best] % kPrime) % kPrime;
            }
        }
    }

    std::vector<std::uint32_t> col_of_;
    std::vector<std::uint32_t> vars_;
    std::vector<std::vector<std::uint64_t>> rows_;
    std::vector<std::uint64_t> rhs_;
    std::vector<std::uint32_t> nnz_;
    std::vector<std::uint32_t> pivot_of_col_;
    std::vector<bool> is_pivot_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> order_; // (column, row) in pivot order
};

} // namespace

ConstraintSystem build_constraints(const iblt::Iblt& t, std::span<const ShortId> ids, const BucketEncoding& enc)
{
    if (ids.size() != enc.n) throw InvalidArgument("build_constraints: id count differs from the encoding's n");
    std::map<std::uint64_t, std::vector<std::uint32_t>> members;
    for (std::uint32_t v = 0; v < ids.size(); ++v) {
        const auto cells = t.cell_indices(ids[v]);
        for (std::size_t i = 0; i < cells.size(); ++i)
            members[static_cast<std::uint64_t>(cells[i]) * enc.bucket_count + bucket_of(ids[v], i, enc)].push_back(v);
    }

    std::map<std::vector<std::uint32_t>, std::int64_t> merged;
    auto add = [&](std::vector<std::uint32_t> vars, std::int64_t rhs) {
        auto [it, fresh] = merged.emplace(std::move(vars), rhs);
        if (!fresh && it->second != rhs) throw InconsistentSystem("two buckets over the same transactions disagree");
    };
    for (auto& [slot, vars] : members) {
        const auto cell = static_cast<std::uint32_t>(slot / enc.bucket_count);
        const auto bucket = static_cast<std::uint32_t>(slot % enc.bucket_count);
        add(std::move(vars), static_cast<std::int64_t>(read_bucket(t, cell, bucket, enc)));
    }
    if (!ids.empty()) {
        std::vector<std::uint32_t> all(ids.size());
        for (std::uint32_t v = 0; v < all.size(); ++v) all[v] = v;
        const auto n = static_cast<std::int64_t>(ids.size());
        add(std::move(all), n * (n + 1) / 2);
    }

    ConstraintSystem cs;
    cs.n = static_cast<std::uint32_t>(ids.size());
    cs.equations.reserve(merged.size());
    for (auto& [vars, rhs] : merged) cs.equations.push_back(Equation{vars, rhs});
    return cs;
}

SolveOutcome propagate_solve(const ConstraintSystem& cs)
{
    return propagate_solve(cs, std::vector<std::uint32_t>(cs.n, 0));
}

SolveOutcome propagate_solve(const ConstraintSystem& cs, const std::vector<std::uint32_t>& known)
{
    if (known.size() != cs.n) throw InvalidArgument("propagate_solve: known values sized for a different system");
    SolveOutcome out;
    out.assignment = known;
    std::vector<bool> used(cs.n + 1, false);
    for (std::uint32_t v : known) {
        if (v == 0) continue;
        if (v > cs.n || used[v]) throw InconsistentSystem("known values are not a partial permutation");
        used[v] = true;
    }

    const std::size_t m = cs.equations.size();
    std::vector<std::int64_t> residual(m);
    std::vector<std::uint32_t> unknown(m, 0);
    std::vector<std::vector<std::uint32_t>> eqs_of(cs.n);
    std::deque<std::uint32_t> ready;
    for (std::uint32_t e = 0; e < m; ++e) {
        residual[e] = cs.equations[e].rhs;
        for (std::uint32_t v : cs.equations[e].vars) {
            if (v >= cs.n) throw InvalidArgument("equation references an unknown variable");
            eqs_of[v].push_back(e);
            if (out.assignment[v] != 0) residual[e] -= out.assignment[v];
            else ++unknown[e];
        }
        if (unknown[e] == 0 && residual[e] != 0) throw InconsistentSystem("equation violated by known values");
        if (unknown[e] == 1) ready.push_back(e);
    }

    while (!ready.empty()) {
        const std::uint32_t e = ready.front();
        ready.pop_front();
        if (unknown[e] != 1) continue;
        const auto& vars = cs.equations[e].vars;
        const std::uint32_t var = *std::find_if(vars.begin(), vars.end(), [&](std::uint32_t v) { return out.assignment[v] == 0; });
        const std::int64_t value = residual[e];
        if (value < 1 || value > static_cast<std::int64_t>(cs.n))
            throw InconsistentSystem("propagation forced an index outside 1..n");
        if (used[static_cast<std::size_t>(value)]) throw InconsistentSystem("propagation forced two transactions to one index");
        used[static_cast<std::size_t>(value)] = true;
        out.assignment[var] = static_cast<std::uint32_t>(value);
        for (std::uint32_t f : eqs_of[var]) {
            residual[f] -= value;
            if (--unknown[f] == 1) ready.push_back(f);
            else if (unknown[f] == 0 && residual[f] != 0) throw InconsistentSystem("propagation contradicts an equation");
        }
    }

    for (std::uint32_t v = 0; v < cs.n; ++v)
        if (out.assignment[v] == 0) out.unresolved.push_back(v);
    return out;
}

ResidualRank residual_rank(const ConstraintSystem& cs, const SolveOutcome& partial)
{
    Eliminator el(cs, partial);
    return ResidualRank{el.unknowns(), el.rank(), el.free_vars()};
}

bool linear_solve(const ConstraintSystem& cs, SolveOutcome& partial)
{
    if (partial.complete()) return true;
    Eliminator el(cs, partial);
    if (el.rank() < el.unknowns()) return false;
    std::vector<std::uint64_t> values;
    if (!el.solve(values)) return false;

    std::vector<bool> used(cs.n + 1, false);
    for (std::uint32_t v : partial.assignment)
        if (v != 0) used[v] = true;
    for (std::uint32_t c = 0; c < values.size(); ++c) {
        if (values[c] < 1 || values[c] > cs.n || used[values[c]]) return false;
        used[values[c]] = true;
        partial.assignment[el.var_at(c)] = static_cast<std::uint32_t>(values[c]);
    }
    partial.unresolved.clear();
    return true;
}

FallbackResult square_system_fallback(const ConstraintSystem& cs, std::span<const std::uint32_t> truth)
{
    if (truth.size() != cs.n) throw InvalidArgument("square_system_fallback: truth sized for a different system");
    FallbackResult res;
    try {
        SolveOutcome partial = propagate_solve(cs);
        if (!partial.complete()) {
            const ResidualRank rr = residual_rank(cs, partial);
            res.unencoded = rr.deficit();
            res.revealed_vars = rr.free_vars;
            auto known = partial.assignment;
            for (std::uint32_t v : rr.free_vars) known[v] = truth[v];
            partial = propagate_solve(cs, known);
            if (!linear_solve(cs, partial)) {
                res.singular = true;
                return res;
            }
        }
        res.assignment = partial.assignment;
        res.recovered = std::equal(res.assignment.begin(), res.assignment.end(), truth.begin(), truth.end());
    } catch (const InconsistentSystem&) {
        res.singular = true;
    }
    return res;
}

std::vector<std::uint32_t> recover_order(const ConstraintSystem& cs,
                                         std::span<const std::pair<std::uint32_t, std::uint32_t>> revealed)
{
    std::vector<std::uint32_t> known(cs.n, 0);
    for (auto [var, index] : revealed) {
        if (var >= cs.n) throw InconsistentSystem("revealed index for an unknown transaction");
        known[var] = index;
    }
    SolveOutcome partial = propagate_solve(cs, known);
    if (!linear_solve(cs, partial)) throw InconsistentSystem("ordering constraints do not determine the block order");
    return partial.assignment;
}

} // namespace blockrecon::ordering
