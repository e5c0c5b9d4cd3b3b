#include "blockrecon/cli/dispatch.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "blockrecon/cli/csv.hpp"
#include "blockrecon/cli/manifest.hpp"
#include "blockrecon/common/random.hpp"
#include "blockrecon/filters/bench.hpp"
#include "blockrecon/filters/solidity.hpp"
#include "blockrecon/frontier/frontier.hpp"
#include "blockrecon/graphene/protocol.hpp"
#include "blockrecon/ordering/sim.hpp"
#include "blockrecon/peerscore/golden.hpp"
#include "blockrecon/simnet/simnet.hpp"

namespace blockrecon::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

struct Globals {
    std::uint64_t seed = 1;
    std::string csv;
    std::string json;
    bool quiet = false;
};

// Where a handler writes its rows and, when a CSV file was requested, its summary.
struct Output {
    std::ostream& csv;
    std::ostream& out;
    bool summary;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write " + path);
    f << text;
}

void write_json_summary(const Globals& g, const ordered_json& j)
{
    if (!g.json.empty()) write_file(g.json, j.dump(2) + "\n");
}

std::vector<double> parse_list(const std::string& text)
{
    std::vector<double> out;
    std::stringstream s(text);
    std::string item;
    while (std::getline(s, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw InvalidArgument("");
        } catch (const std::exception&) {
            throw InvalidArgument("'" + text + "' is not a comma-separated list of numbers");
        }
    }
    return out;
}

// ---- graphene-sim -------------------------------------------------------------------------

struct GrapheneSimOpts {
    std::uint32_t blocks = 10;
    std::uint32_t block_size = 400;
    std::uint64_t mempool = 60000;
    double overlap = 1.0;
    double payload_mean = 300.0;
    std::string ordering = "lex";
    std::uint32_t max_retries = 4;
};

int run_graphene_sim(const Globals& g, const GrapheneSimOpts& o, Output& io)
{
    if (o.block_size == 0) throw InvalidArgument("--block-size must be at least 1");
    graphene::GrapheneConfig cfg;
    cfg.ordering = o.ordering == "csp" ? graphene::OrderingMode::Csp : graphene::OrderingMode::Lex;
    cfg.max_retries = o.max_retries;
    const simnet::ScenarioConfig sc{o.block_size, o.mempool, o.overlap, o.payload_mean, 1, g.seed};

    graphene::Transcript transcript;
    graphene::MempoolSyncTracker tracker;
    std::uint32_t ok = 0;
    std::uint64_t retries = 0;
    std::uint64_t full_bytes = 0;
    for (std::uint32_t b = 0; b < o.blocks; ++b) {
        const auto s = simnet::gen_scenario(sc, b);
        const auto r = graphene::protocol_run(s.block, s.mempool, transcript, derive_seed(g.seed, 0x67736d00ULL + b), cfg,
                                              &tracker, b);
        ok += r.success ? 1 : 0;
        retries += r.retries;
        full_bytes += graphene::full_block_size(s.block);
    }

    CsvWriter w(io.csv);
    w.row({"block", "direction", "msg_type", "bytes"});
    for (const auto& e : transcript.entries())
        w.row({e.block, std::string(graphene::direction_name(e.direction)), std::string(graphene::msg_type_name(e.type)),
               e.bytes});

    const double blocks = o.blocks ? o.blocks : 1;
    ordered_json j;
    j["blocks"] = o.blocks;
    j["successes"] = ok;
    j["mean_retries"] = retries / blocks;
    j["mean_exchange_bytes"] = transcript.total_bytes() / blocks;
    j["mean_graphene_msg_bytes"] = transcript.bytes_of(graphene::MsgType::Graphene) / blocks;
    j["mean_full_block_bytes"] = full_bytes / blocks;
    write_json_summary(g, j);
    if (io.summary)
        io.out << "blocks " << o.blocks << ", recovered " << ok << ", mean bytes "
               << format_double(transcript.total_bytes() / blocks) << " vs full block "
               << format_double(full_bytes / blocks) << "\n";
    return ok == o.blocks ? 0 : 1;
}

// ---- frontier-sim -------------------------------------------------------------------------

struct FrontierSimOpts {
    std::uint64_t accounts = 100000;
    double mean_changes = 50.0;
    std::uint32_t intervals = 60;
    std::string sizing = "exact";
    bool no_retry = false;
    bool timing = false;
};

int run_frontier_sim(const Globals& g, const FrontierSimOpts& o, Output& io)
{
    frontier::FrontierSimConfig cfg;
    cfg.accounts = o.accounts;
    cfg.mean_changes = o.mean_changes;
    cfg.intervals = o.intervals;
    cfg.seed = g.seed;
    cfg.sizing = o.sizing == "previous" ? frontier::DeltaSizing::Previous : frontier::DeltaSizing::Exact;
    cfg.retry = !o.no_retry;
    const auto rows = frontier::frontier_sim(cfg);

    CsvWriter w(io.csv);
    std::vector<CsvField> header{"interval", "changes", "expected_delta", "cells", "full_bytes", "iblt_bytes", "retried", "recovered"};
    if (o.timing) header.emplace_back("build_ms");
    w.row(header);
    std::uint64_t full = 0;
    std::uint64_t iblt_bytes = 0;
    std::uint32_t recovered = 0;
    for (const auto& r : rows) {
        std::vector<CsvField> f{r.interval, r.changes, r.expected_delta, r.cells, r.full_bytes, r.iblt_bytes, r.retried, r.recovered};
        if (o.timing) f.emplace_back(r.build_ms);
        w.row(f);
        full += r.full_bytes;
        iblt_bytes += r.iblt_bytes;
        recovered += r.recovered ? 1 : 0;
    }
    ordered_json j;
    j["intervals"] = rows.size();
    j["cumulative_full_bytes"] = full;
    j["cumulative_iblt_bytes"] = iblt_bytes;
    j["recovered_intervals"] = recovered;
    write_json_summary(g, j);
    if (io.summary)
        io.out << "IBLT bytes " << iblt_bytes << " vs full dumps " << full << " (1/"
               << format_double(iblt_bytes ? static_cast<double>(full) / iblt_bytes : 0.0) << "), recovered " << recovered
               << "/" << rows.size() << "\n";
    return 0;
}

// ---- ordering-sim -------------------------------------------------------------------------

struct OrderingSimOpts {
    std::uint32_t n = 100;
    double ratio = 1.3;
    std::uint32_t trials = 100;
    std::string mode = "csp";
    std::uint32_t buckets = 4;
    std::uint32_t k = 3;
};

int run_ordering_sim(const Globals& g, const OrderingSimOpts& o, Output& io)
{
    if (o.n == 0) throw InvalidArgument("--n must be at least 1");
    if (o.k < 1 || o.k > 5) throw InvalidArgument("--k must lie in 1..5");
    ordering::OrderingSimConfig cfg;
    cfg.n = o.n;
    cfg.ratio = o.ratio;
    cfg.trials = o.trials;
    cfg.buckets = o.buckets;
    cfg.k = static_cast<std::uint8_t>(o.k);
    cfg.seed = g.seed;
    CsvWriter w(io.csv);
    ordered_json j;
    j["mode"] = o.mode;
    j["trials"] = o.trials;
    if (o.mode == "lex") {
        const auto rows = ordering::run_lex_sim(cfg);
        w.row({"trial", "payload_bytes", "round_trip"});
        std::uint32_t ok = 0;
        for (const auto& r : rows) {
            w.row({r.trial, r.payload_bytes, r.round_trip});
            ok += r.round_trip ? 1 : 0;
        }
        j["round_trips"] = ok;
        write_json_summary(g, j);
        if (io.summary) io.out << "lexicographic round trips " << ok << "/" << rows.size() << "\n";
        return ok == rows.size() ? 0 : 1;
    }
    const auto rows = ordering::run_csp_sim(cfg);
    w.row({"trial", "cells", "actual_ratio", "equations", "resolved", "complete", "linear_determined", "unencoded", "recovered"});
    std::uint32_t complete = 0;
    double unencoded = 0;
    for (const auto& r : rows) {
        w.row({r.trial, r.cells, r.actual_ratio, r.equations, r.resolved, r.complete, r.linear_determined, r.unencoded,
               r.recovered});
        complete += r.complete ? 1 : 0;
        unencoded += r.unencoded;
    }
    const double trials = rows.empty() ? 1 : rows.size();
    j["complete_rate"] = complete / trials;
    j["mean_unencoded"] = unencoded / trials;
    write_json_summary(g, j);
    if (io.summary)
        io.out << "no-guess recovery " << complete << "/" << rows.size() << ", mean unencoded indices "
               << format_double(unencoded / trials) << "\n";
    return 0;
}

// ---- filter-bench -------------------------------------------------------------------------

struct FilterBenchOpts {
    std::string filter = "bloom";
    std::uint64_t n = 2000;
    std::string ratios = "8,12,16";
    std::string hashes;
    std::uint64_t probes = 100000;
    std::uint32_t buckets = 65536;
    std::uint32_t fp_bits = 12;
    double load = 0.95;
    std::uint64_t lookups = 1000000;
    std::uint64_t transactions = 100000;
    double fraction = 0.01;
};

int run_filter_bench(const Globals& g, const FilterBenchOpts& o, Output& io)
{
    CsvWriter w(io.csv);
    ordered_json j;
    j["filter"] = o.filter;
    if (o.filter == "bloom") {
        const auto ratios = parse_list(o.ratios);
        const auto hashes = o.hashes.empty() ? std::vector<double>(ratios.size(), 0.0) : parse_list(o.hashes);
        if (hashes.size() != ratios.size()) throw InvalidArgument("--hashes needs one entry per ratio");
        w.row({"m_over_n", "n", "m", "k", "probes", "false_positives", "measured_fpr", "analytic_fpr", "relative_error",
               "false_negatives"});
        for (std::size_t i = 0; i < ratios.size(); ++i) {
            const auto r = filters::bloom_bench(o.n, ratios[i], static_cast<std::uint32_t>(hashes[i]), o.probes,
                                                derive_seed(g.seed, i));
            w.row({ratios[i], r.n, r.m, r.k, r.probes, r.false_positives, r.measured_fpr, r.analytic_fpr,
                   r.relative_error(), r.false_negatives});
            if (io.summary)
                io.out << "m/n " << format_double(ratios[i]) << " k " << r.k << ": measured "
                       << format_double(r.measured_fpr) << ", analytic " << format_double(r.analytic_fpr) << "\n";
        }
    } else if (o.filter == "cuckoo") {
        const auto r = filters::cuckoo_bench(o.buckets, o.fp_bits, o.load, o.lookups, o.probes, g.seed);
        w.row({"buckets", "capacity", "fp_bits", "target_load", "inserted", "insert_failures", "load", "resident_lookups",
               "false_negatives", "probes", "false_positives", "measured_fpr", "deleted", "unexplained_after_delete",
               "shadowed_after_delete", "present_after_clear"});
        w.row({r.bucket_count, r.bucket_capacity, r.fingerprint_bits, r.target_load, r.inserted, r.insert_failures, r.load,
               r.resident_lookups, r.false_negatives, r.probes, r.false_positives, r.measured_fpr, r.deleted,
               r.unexplained_after_delete, r.shadowed_after_delete, r.present_after_clear});
        j["measured_fpr"] = r.measured_fpr;
        j["false_negatives"] = r.false_negatives;
        if (io.summary)
            io.out << "load " << format_double(r.load) << ", fpr " << format_double(r.measured_fpr) << ", false negatives "
                   << r.false_negatives << "\n";
    } else {
        const auto r = filters::solidity_cache_simulate(o.transactions, o.fraction, g.seed,
                                                        filters::SolidityOptions{0, o.fp_bits});
        w.row({"transactions", "non_solid_fraction", "probes", "disk_reads_avoided", "false_positive_reads",
               "false_negatives", "solidified"});
        w.row({o.transactions, o.fraction, r.probes, r.disk_reads_avoided, r.false_positive_reads, r.false_negatives,
               r.solidified});
        j["disk_reads_avoided"] = r.disk_reads_avoided;
        if (io.summary) io.out << "disk reads avoided " << format_double(r.disk_reads_avoided) << "\n";
    }
    write_json_summary(g, j);
    return 0;
}

// ---- peerscore eval -----------------------------------------------------------------------

int run_peerscore_eval(const Globals& g, Output& io, std::ostream& err)
{
    if (g.json.empty()) throw InvalidArgument("peerscore eval needs --json <golden vectors>");
    const auto checks = peerscore::check_golden(read_file(g.json));
    CsvWriter w(io.csv);
    w.row({"name", "op", "field", "computed", "expected", "match"});
    std::size_t bad = 0;
    for (const auto& c : checks) {
        w.row({c.name, c.op, c.field, c.computed, c.expected, c.ok});
        if (!c.ok) {
            ++bad;
            err << "mismatch: " << c.name << " (" << c.op << "." << c.field << ") computed " << c.computed
                << " expected " << c.expected << "\n";
        }
    }
    if (io.summary) io.out << checks.size() - bad << "/" << checks.size() << " golden checks match\n";
    return bad == 0 ? 0 : 1;
}

// ---- sweep --------------------------------------------------------------------------------

struct SweepOpts {
    std::uint32_t n = 400;
    std::uint64_t mempool = 60000;
    std::string overlap = "0.5:1.0:0.05";
    std::uint32_t trials = 30;
    double payload_mean = 300.0;
    double iblt_margin = 2.0;
    bool no_warmup = false;
};

int run_sweep_cmd(const Globals& g, const SweepOpts& o, Output& io)
{
    simnet::SweepConfig cfg;
    cfg.n = o.n;
    cfg.mempool_size = o.mempool;
    cfg.overlaps = simnet::parse_grid(o.overlap);
    cfg.trials = o.trials;
    cfg.payload_mean = o.payload_mean;
    cfg.seed = g.seed;
    cfg.warmup = !o.no_warmup;
    cfg.graphene.iblt_margin_sigmas = o.iblt_margin;
    for (double p : cfg.overlaps)
        if (p < 0.0 || p > 1.0) throw InvalidArgument("overlap grid must stay within [0, 1]");
    const auto report = simnet::run_sweep(cfg);

    CsvWriter w(io.csv);
    w.row({"overlap", "graphene_bytes", "compact_bytes", "xthin_bytes", "missing_tx_count", "retries", "success_rate"});
    for (const auto& r : report.rows)
        w.row({r.overlap, r.graphene_bytes, r.compact_bytes, r.xthin_bytes, r.missing_tx_count, r.retries, r.success_rate});

    ordered_json meta;
    meta["n"] = o.n;
    meta["mempool"] = o.mempool;
    meta["trials"] = o.trials;
    meta["payload_mean"] = o.payload_mean;
    meta["payload_distribution"] = "uniform [0.5, 1.5] x mean";
    meta["compact_header_bytes"] = simnet::kCompactHeaderBytes;
    meta["compact_id_bytes"] = simnet::kCompactIdBytes;
    meta["getblocktxn_header_bytes"] = simnet::kGetBlockTxnHeaderBytes;
    meta["getblocktxn_index_bytes"] = simnet::kGetBlockTxnIndexBytes;
    meta["blocktxn_header_bytes"] = simnet::kBlockTxnHeaderBytes;
    meta["xthin_bloom_fpr"] = simnet::kXthinBloomFpr;
    meta["tx_wire_overhead_bytes"] = 36;
    meta["graphene_iblt_multiplier"] = cfg.graphene.iblt_multiplier;
    meta["graphene_iblt_margin_sigmas"] = cfg.graphene.iblt_margin_sigmas;
    meta["graphene_max_retries"] = cfg.graphene.max_retries;
    meta["warmup_block"] = cfg.warmup;
    if (report.crossover_overlap) {
        meta["crossover_overlap"] = *report.crossover_overlap;
        meta["crossover_symmetric_difference"] = 1.0 - *report.crossover_overlap;
    } else {
        meta["crossover_overlap"] = nullptr;
    }
    if (!g.csv.empty()) write_file(g.csv + ".meta.json", meta.dump(2) + "\n");
    write_json_summary(g, meta);
    if (io.summary) {
        if (report.crossover_overlap)
            io.out << "graphene exceeds compact blocks from overlap " << format_double(*report.crossover_overlap) << " down\n";
        else
            io.out << "graphene never exceeds compact blocks on this grid\n";
    }
    return 0;
}

// ---- plumbing -----------------------------------------------------------------------------

void collect_params(const CLI::App* app, std::map<std::string, std::string>& params)
{
    for (const CLI::Option* opt : app->get_options()) {
        if (opt->get_lnames().empty()) continue;
        const std::string& name = opt->get_lnames().front();
        if (name == "help" || name == "version") continue;
        if (opt->get_expected_min() == 0) params[name] = opt->count() ? "true" : "false";
        else params[name] = opt->count() ? opt->as<std::string>() : opt->get_default_str();
    }
}

} // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Set reconciliation and block propagation experiments.", "blockrecon"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", BLOCKRECON_VERSION);

    Globals g;
    app.add_option("--seed", g.seed, "Base RNG seed");
    app.add_option("--csv", g.csv, "Write rows here (and a manifest beside it) instead of stdout");
    app.add_option("--json", g.json, "Summary JSON output; for `peerscore eval`, the golden-vector input");
    app.add_flag("--quiet", g.quiet, "Suppress the summary line");

    GrapheneSimOpts gs;
    auto* gs_cmd = app.add_subcommand("graphene-sim", "Relay blocks over the graphene exchange and log every message");
    gs_cmd->add_option("--blocks", gs.blocks, "Blocks to relay")->check(CLI::Range(1U, 1000000U));
    gs_cmd->add_option("--block-size", gs.block_size, "Transactions per block")->check(CLI::Range(1U, 65535U));
    gs_cmd->add_option("--mempool", gs.mempool, "Receiver mempool size");
    gs_cmd->add_option("--overlap", gs.overlap, "Fraction of block transactions the receiver holds")->check(CLI::Range(0.0, 1.0));
    gs_cmd->add_option("--payload-mean", gs.payload_mean, "Mean transaction payload in bytes")->check(CLI::NonNegativeNumber);
    gs_cmd->add_option("--ordering", gs.ordering, "Block order encoding")->check(CLI::IsMember({"lex", "csp"}));
    gs_cmd->add_option("--max-retries", gs.max_retries, "Doublings before giving up");

    FrontierSimOpts fs;
    auto* fs_cmd = app.add_subcommand("frontier-sim", "Frontier reconciliation with IBLTs versus full dumps");
    fs_cmd->add_option("--accounts", fs.accounts, "Accounts in the ledger")->check(CLI::PositiveNumber);
    fs_cmd->add_option("--mean-changes", fs.mean_changes, "Mean accounts advanced per interval")->check(CLI::NonNegativeNumber);
    fs_cmd->add_option("--intervals", fs.intervals, "Request intervals to simulate");
    fs_cmd->add_option("--sizing", fs.sizing, "IBLT sizing: exact delta or twice the previous")
        ->check(CLI::IsMember({"exact", "previous"}));
    fs_cmd->add_flag("--no-retry", fs.no_retry, "Skip the doubled-table retry after a failed decode");
    fs_cmd->add_flag("--timing", fs.timing, "Add a build_ms column (not reproducible)");

    OrderingSimOpts os;
    auto* os_cmd = app.add_subcommand("ordering-sim", "Transaction order recovery trials");
    os_cmd->add_option("--n", os.n, "Transactions per block")->check(CLI::Range(1U, 65535U));
    os_cmd->add_option("--ratio", os.ratio, "Buckets per transaction")->check(CLI::PositiveNumber);
    os_cmd->add_option("--trials", os.trials, "Trials");
    os_cmd->add_option("--mode", os.mode, "csp or lex")->check(CLI::IsMember({"csp", "lex"}));
    os_cmd->add_option("--buckets", os.buckets, "Buckets per IBLT cell")->check(CLI::Range(1U, 64U));
    os_cmd->add_option("--k", os.k, "IBLT hash functions")->check(CLI::Range(1U, 5U));

    FilterBenchOpts fb;
    auto* fb_cmd = app.add_subcommand("filter-bench", "Measured versus analytic filter behaviour");
    fb_cmd->add_option("--filter", fb.filter, "bloom, cuckoo or solidity")->check(CLI::IsMember({"bloom", "cuckoo", "solidity"}));
    fb_cmd->add_option("--n", fb.n, "Bloom: inserted elements")->check(CLI::PositiveNumber);
    fb_cmd->add_option("--ratios", fb.ratios, "Bloom: comma-separated bits per element");
    fb_cmd->add_option("--hashes", fb.hashes, "Bloom: comma-separated k per ratio (default optimal)");
    fb_cmd->add_option("--probes", fb.probes, "Absent-element lookups");
    fb_cmd->add_option("--buckets", fb.buckets, "Cuckoo: bucket count (power of two)");
    fb_cmd->add_option("--fp-bits", fb.fp_bits, "Cuckoo: fingerprint bits")->check(CLI::Range(1U, 16U));
    fb_cmd->add_option("--load", fb.load, "Cuckoo: target load factor")->check(CLI::Range(0.0, 1.0));
    fb_cmd->add_option("--lookups", fb.lookups, "Cuckoo: resident lookups");
    fb_cmd->add_option("--transactions", fb.transactions, "Solidity: transactions")->check(CLI::PositiveNumber);
    fb_cmd->add_option("--fraction", fb.fraction, "Solidity: non-solid fraction")->check(CLI::Range(0.0, 1.0));

    auto* ps_cmd = app.add_subcommand("peerscore", "Peer scoring utilities");
    ps_cmd->require_subcommand(1);
    ps_cmd->fallthrough();
    auto* ev_cmd = ps_cmd->add_subcommand("eval", "Evaluate golden vectors given with --json");
    ev_cmd->fallthrough();

    SweepOpts sw;
    auto* sw_cmd = app.add_subcommand("sweep", "Graphene versus compact and xthin bytes across mempool overlap");
    sw_cmd->add_option("--n", sw.n, "Transactions per block")->check(CLI::Range(1U, 65535U));
    sw_cmd->add_option("--mempool", sw.mempool, "Receiver mempool size");
    sw_cmd->add_option("--overlap", sw.overlap, "Overlap grid lo:hi:step");
    sw_cmd->add_option("--trials", sw.trials, "Trials per grid point")->check(CLI::PositiveNumber);
    sw_cmd->add_option("--payload-mean", sw.payload_mean, "Mean transaction payload in bytes")->check(CLI::NonNegativeNumber);
    sw_cmd->add_option("--iblt-margin", sw.iblt_margin, "IBLT headroom in standard deviations")->check(CLI::NonNegativeNumber);
    sw_cmd->add_flag("--no-warmup", sw.no_warmup, "Measure without a preceding block to prime the receiver");

    std::string manifest_in;
    auto* rp_cmd = app.add_subcommand("replay", "Rerun the invocation recorded in a manifest");
    rp_cmd->add_option("--manifest", manifest_in, "Manifest JSON")->required();

    for (auto* sub : {gs_cmd, fs_cmd, os_cmd, fb_cmd, sw_cmd, rp_cmd}) sub->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    if (rp_cmd->parsed()) {
        try {
            const auto m = RunManifest::from_json(read_file(manifest_in));
            std::string target = g.csv;
            if (target.empty()) {
                auto it = m.params.find("csv");
                if (it == m.params.end() || it->second.empty()) throw InvalidArgument("manifest records no CSV path; pass --csv");
                target = it->second;
            }
            return dispatch(m.replay_args(target), out, err);
        } catch (const InvalidArgument& e) {
            err << "blockrecon replay: " << e.what() << "\n";
            return 2;
        }
    }

    RunManifest manifest;
    manifest.started_at = utc_timestamp();
    manifest.argv = args;
    manifest.seed = g.seed;
    manifest.version = BLOCKRECON_VERSION;
    collect_params(&app, manifest.params);
    for (const CLI::App* cur = &app; !cur->get_subcommands().empty();) {
        cur = cur->get_subcommands().front();
        manifest.subcommand.push_back(cur->get_name());
        collect_params(cur, manifest.params);
    }

    std::unique_ptr<std::ofstream> file;
    if (!g.csv.empty()) {
        file = std::make_unique<std::ofstream>(g.csv, std::ios::binary);
        if (!*file) {
            err << "blockrecon: cannot write " << g.csv << "\n";
            return 1;
        }
    }
    Output io{file ? static_cast<std::ostream&>(*file) : out, out, file != nullptr && !g.quiet};

    int status = 0;
    try {
        if (gs_cmd->parsed()) status = run_graphene_sim(g, gs, io);
        else if (fs_cmd->parsed()) status = run_frontier_sim(g, fs, io);
        else if (os_cmd->parsed()) status = run_ordering_sim(g, os, io);
        else if (fb_cmd->parsed()) status = run_filter_bench(g, fb, io);
        else if (ev_cmd->parsed()) status = run_peerscore_eval(g, io, err);
        else if (sw_cmd->parsed()) status = run_sweep_cmd(g, sw, io);
    } catch (const InvalidArgument& e) {
        err << "blockrecon " << manifest.subcommand.front() << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "blockrecon " << manifest.subcommand.front() << ": " << e.what() << "\n";
        return 1;
    }

    if (file) {
        file->close();
        manifest.finished_at = utc_timestamp();
        write_file(manifest_path_for(g.csv), manifest.to_json());
    }
    return status;
}

int dispatch(int argc, char** argv)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return dispatch(args, std::cout, std::cerr);
}

} // namespace blockrecon::cli
