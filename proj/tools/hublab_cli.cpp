// hublab: generate graphs, build distance labels, query, verify and benchmark them.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hublab/additive.hpp"
#include "hublab/exact.hpp"
#include "hublab/generators.hpp"
#include "hublab/graph.hpp"
#include "hublab/label_io.hpp"
#include "hublab/oracle.hpp"
#include "hublab/sweep.hpp"

namespace {

using namespace hublab;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitVerify = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Graph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open graph file " + path);
    return load_graph(in);
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << text;
}

std::string show(uint32_t d) { return d == kUnreachable ? "inf" : std::to_string(d); }

VerifyMode mode_for(Scheme s) {
    switch (s) {
        case Scheme::exact:
        case Scheme::full:
        case Scheme::additive_exact: return s == Scheme::additive_exact ? VerifyMode::corrected_exact : VerifyMode::exact;
        case Scheme::additive: return VerifyMode::additive2;
        case Scheme::additive_one: return VerifyMode::additive1;
    }
    return VerifyMode::exact;
}

std::vector<uint32_t> parse_list(const std::string& text) {
    std::vector<uint32_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            const long v = std::stol(item);
            if (v <= 0) throw UsageError("parameter values must be positive: " + item);
            out.push_back(static_cast<uint32_t>(v));
        } catch (const std::logic_error&) {
            throw UsageError("not a number in parameter list: " + item);
        }
    }
    if (out.empty()) throw UsageError("empty parameter list");
    return out;
}

Graph generate(const std::string& kind, const std::vector<uint64_t>& p, uint64_t seed) {
    auto need = [&](size_t k, const char* usage) {
        if (p.size() != k) throw UsageError(std::string("usage: gen ") + usage);
    };
    auto node_count = [](uint64_t x) {
        if (x > (uint64_t(1) << 31)) throw UsageError("node count too large");
        return static_cast<node_t>(x);
    };
    try {
        if (kind == "path") return need(1, "path N"), gen::path(node_count(p[0]));
        if (kind == "cycle") return need(1, "cycle N"), gen::cycle(node_count(p[0]));
        if (kind == "grid") return need(2, "grid ROWS COLS"), gen::grid(node_count(p[0]), node_count(p[1]));
        if (kind == "star") return need(1, "star LEAVES"), gen::star(node_count(p[0]));
        if (kind == "star-of-stars")
            return need(2, "star-of-stars HUBS LEAVES"), gen::star_of_stars(node_count(p[0]), node_count(p[1]));
        if (kind == "random-regular")
            return need(2, "random-regular N D"), gen::random_regular(node_count(p[0]), static_cast<uint32_t>(p[1]), seed);
        if (kind == "erdos-renyi") return need(2, "erdos-renyi N M"), gen::erdos_renyi(node_count(p[0]), p[1], seed);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    throw UsageError("unknown graph kind '" + kind +
                     "' (path, cycle, grid, star, star-of-stars, random-regular, erdos-renyi)");
}

LabelSet build_labels(const Graph& g, const std::string& scheme, uint32_t t, uint32_t tau,
                      const std::string& corrections, unsigned threads, std::ostream& log) {
    if (scheme == "exact" || scheme == "full") {
        if (corrections != "none") throw UsageError("--corrections applies to the additive scheme only");
        const ExactLabeling l = scheme == "full" ? build_full_labels(g, threads) : build_exact_avg(g, t, threads);
        for (const auto& w : l.warnings) log << "warning: " << w << '\n';
        const HubStats s = hub_stats(l);
        log << "scheme " << scheme_name(l.info.scheme) << ", labeled nodes " << l.info.n_labeled << ", r' "
            << l.info.r_prime << ", max hub " << s.max_hub << " (bound " << s.hub_bound << "), max label bits "
            << s.max_label_bits << '\n';
        return LabelSet(l);
    }
    if (scheme != "additive") throw UsageError("unknown scheme '" + scheme + "' (exact, full, additive)");
    const AdditiveLabeling l = build_additive(g, tau, threads);
    for (const auto& w : l.warnings) log << "warning: " << w << '\n';
    for (const auto& v : l.violations) log << "bound exceeded: " << v << '\n';
    const AdditiveStats s = additive_stats(l);
    log << "scheme additive, tau " << l.info.param_effective << ", r' " << l.info.r_prime << ", |V'| "
        << l.vprime_size << ", |S'| " << l.sprime_size << ", max label bits " << s.max_label_bits << '\n';
    if (corrections == "none") return LabelSet(l);
    if (corrections != "exact" && corrections != "one")
        throw UsageError("unknown correction mode '" + corrections + "' (none, exact, one)");
    const CorrectionMode mode = corrections == "exact" ? CorrectionMode::exact : CorrectionMode::one_additive;
    CorrectionSet c = build_correction(g, l, mode, threads);
    log << "correction tables: max " << c.max_bits() << " bits per node\n";
    return LabelSet(l, std::move(c));
}

int run(int argc, char** argv) {
    CLI::App app{"Distance labels for undirected 0/1-cost graphs"};
    app.require_subcommand(1);
    unsigned threads = default_threads();
    app.add_option("--threads", threads, "Worker threads (default: HUBLAB_THREADS or all cores)");

    // gen
    auto* gen_cmd = app.add_subcommand("gen", "Write a generated graph");
    std::string kind;
    std::vector<uint64_t> gen_params;
    uint64_t seed = 1;
    std::string out_path;
    gen_cmd->add_option("kind", kind, "path|cycle|grid|star|star-of-stars|random-regular|erdos-renyi")->required();
    gen_cmd->add_option("params", gen_params, "Size parameters of the kind");
    gen_cmd->add_option("--seed", seed, "Random seed");
    gen_cmd->add_option("--out", out_path, "Output file (default stdout)");

    // build
    auto* build_cmd = app.add_subcommand("build", "Build labels for a graph file");
    std::string graph_path, scheme = "exact", corrections = "none";
    uint32_t t_param = 16, tau = 0;
    build_cmd->add_option("graph", graph_path, "Graph file")->required();
    build_cmd->add_option("--scheme", scheme, "exact|full|additive");
    build_cmd->add_option("--T", t_param, "Time parameter of the exact scheme");
    build_cmd->add_option("--tau", tau, "Degree threshold of the additive scheme (default floor(log2(n)/2))");
    build_cmd->add_option("--corrections", corrections, "none|exact|one (additive scheme)");
    build_cmd->add_option("--out", out_path, "Label file")->required();
    build_cmd->add_option("--threads", threads, "Worker threads");

    // query
    auto* query_cmd = app.add_subcommand("query", "Decode the distance between two nodes");
    std::string labels_path;
    uint32_t qu = 0, qv = 0;
    query_cmd->add_option("labels", labels_path, "Label file")->required();
    query_cmd->add_option("u", qu, "First node")->required();
    query_cmd->add_option("v", qv, "Second node")->required();

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "Check labels against brute-force distances");
    bool sampled = false;
    verify_cmd->add_option("labels", labels_path, "Label file")->required();
    verify_cmd->add_option("graph", graph_path, "Graph file the labels were built from")->required();
    verify_cmd->add_flag("--sampled", sampled, "Check 100 x 1000 random pairs instead of all pairs");
    verify_cmd->add_option("--seed", seed, "Seed for sampled pairs");
    verify_cmd->add_option("--threads", threads, "Worker threads");

    // stats
    auto* stats_cmd = app.add_subcommand("stats", "Summarize a label file");
    stats_cmd->add_option("labels", labels_path, "Label file")->required();

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Build, verify and benchmark over a parameter list (CSV)");
    std::string params = "4,16,64,256";
    uint32_t queries = 100000;
    sweep_cmd->add_option("graph", graph_path, "Graph file")->required();
    sweep_cmd->add_option("--scheme", scheme, "exact|full|additive");
    sweep_cmd->add_option("--params", params, "Comma-separated T (exact) or tau (additive) values");
    sweep_cmd->add_option("--queries", queries, "Timed queries per row");
    sweep_cmd->add_option("--seed", seed, "Seed for sampled pairs and queries");
    sweep_cmd->add_option("--out", out_path, "CSV file (default stdout)");
    sweep_cmd->add_option("--threads", threads, "Worker threads");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Median decode time of random queries");
    bench_cmd->add_option("labels", labels_path, "Label file")->required();
    bench_cmd->add_option("--queries", queries, "Timed queries");
    bench_cmd->add_option("--seed", seed, "Seed for query pairs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }
    threads = std::max(1u, threads);

    if (gen_cmd->parsed()) {
        std::ostringstream text;
        write_graph(text, generate(kind, gen_params, seed));
        write_text(out_path, text.str());
        return kExitOk;
    }
    if (build_cmd->parsed()) {
        const Graph g = read_graph_file(graph_path);
        if (tau == 0) tau = default_tau(g.node_count());
        if (t_param < 2) throw UsageError("--T must be at least 2");
        const LabelSet s = build_labels(g, scheme, t_param, tau, corrections, threads, std::cerr);
        save(s, out_path);
        return kExitOk;
    }
    if (query_cmd->parsed()) {
        const LabelSet s = load(labels_path);
        if (qu >= s.info.n_original || qv >= s.info.n_original)
            throw UsageError("node outside [0, " + std::to_string(s.info.n_original) + ")");
        std::cout << show(s.query(qu, qv)) << '\n';
        return kExitOk;
    }
    if (verify_cmd->parsed()) {
        const LabelSet s = load(labels_path);
        const Graph g = read_graph_file(graph_path);
        check_graph(s, g);
        const auto decode = [&](node_t u, node_t v) { return s.query(u, v); };
        const VerifyMode mode = mode_for(s.info.scheme);
        VerifyReport r;
        if (sampled || g.node_count() > ApspTable::kDefaultCap)
            r = verify_sampled(g, decode, mode, 100, 1000, seed, threads);
        else
            r = verify(ApspTable(g, ApspTable::kDefaultCap, threads), decode, mode, threads);
        write_report(std::cout, r);
        return r.ok() ? kExitOk : kExitVerify;
    }
    if (stats_cmd->parsed()) {
        const LabelSet s = load(labels_path);
        const LabelSetStats st = stats(s);
        std::cout << "scheme " << scheme_name(s.info.scheme) << '\n'
                  << "nodes " << s.info.n_original << " (labeled " << s.info.n_labeled << ")\n"
                  << "param requested " << s.info.param_requested << ", effective " << s.info.param_effective << '\n'
                  << "r_prime " << s.info.r_prime << "\ndelta " << s.info.delta << '\n'
                  << "label bits: max " << st.max_label_bits << ", avg " << st.avg_label_bits << ", total "
                  << st.total_label_bits << '\n'
                  << "hubs: max " << st.max_hub << ", avg " << st.avg_hub << '\n';
        if (s.corrections) std::cout << "correction bits per node: max " << st.correction_bits_max << '\n';
        return kExitOk;
    }
    if (sweep_cmd->parsed()) {
        const Graph g = read_graph_file(graph_path);
        if (scheme != "exact" && scheme != "full" && scheme != "additive")
            throw UsageError("unknown scheme '" + scheme + "' (exact, full, additive)");
        SweepOptions o;
        o.queries = queries;
        o.seed = seed;
        o.threads = threads;
        std::ostringstream csv;
        csv << kSweepCsvHeader << '\n';
        bool all_ok = true;
        for (uint32_t p : parse_list(params)) {
            if (scheme == "exact" && p < 2) throw UsageError("T must be at least 2");
            if (scheme == "additive" && p < 2) throw UsageError("tau must be at least 2");
            const SweepRow row = sweep_row(g, scheme, p, o);
            all_ok = all_ok && row.verification == "ok";
            write_csv_row(csv, row);
            std::cerr << "param " << p << " done\n";
        }
        write_text(out_path, csv.str());
        return all_ok ? kExitOk : kExitVerify;
    }
    if (bench_cmd->parsed()) {
        const LabelSet s = load(labels_path);
        const double ns = median_query_ns(s.info.n_original, [&](node_t u, node_t v) { return s.query(u, v); },
                                          queries, seed);
        std::cout << "median ns per query " << ns << " over " << queries << " queries\n";
        return kExitOk;
    }
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const hublab::LabelIoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const hublab::ParseError& e) {
        std::cerr << "error: graph file " << e.what() << '\n';
        return kExitIo;
    } catch (const hublab::MismatchError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitVerify;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
