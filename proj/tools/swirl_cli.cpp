// swirl command line: index / search / evaluate / compare.
//
// Every run echoes its fully resolved configuration and seed so results
// can be reproduced bit-for-bit. Exit codes: 0 success, 2 configuration
// error, 3 input parse error, 4 runtime failure.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "swirl/swirl.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_parse = 3;
constexpr int exit_runtime = 4;

struct cli_options {
    std::string corpus;
    std::string corpus_format = "smart";
    std::string snapshot;
    std::string queries;
    std::string qrels;
    std::string out;
    std::string query_text;
    std::string corpus_dir;          // also via SWIRL_CORPUS_DIR
    std::string stop_list;
    bool no_stem = false;
    bool keep_numbers = false;
    bool keep_hyphens = false;
    std::string scheme = "tfidf";
    std::string measure = "smdr";
    std::string engine = "exhaustive";
    std::vector<std::string> measures; // compare: default all
    int k = 50;
    unsigned threads = 1;
    int repetitions = 3;
    swirl::pso_config pso;
};

fs::path resolve_input(const std::string& path, const std::string& corpus_dir) {
    if (path.empty()) return {};
    fs::path p(path);
    if (fs::exists(p)) return p;
    if (p.is_relative() && !corpus_dir.empty()) {
        const fs::path joined = fs::path(corpus_dir) / p;
        if (fs::exists(joined)) return joined;
    }
    return p; // let the open fail with the original name
}

swirl::preprocess_config make_preproc(const cli_options& opt) {
    swirl::preprocess_config cfg;
    if (!opt.stop_list.empty())
        cfg.stop_list = swirl::load_stop_list_file(resolve_input(opt.stop_list, opt.corpus_dir));
    cfg.use_stemmer = !opt.no_stem;
    cfg.strip_numbers = !opt.keep_numbers;
    cfg.split_hyphens = !opt.keep_hyphens;
    return cfg;
}

swirl::weighting_scheme parse_scheme(const std::string& s) {
    const auto scheme = swirl::weighting_scheme_from_string(s);
    if (!scheme) throw swirl::config_error("unknown weighting scheme: " + s);
    return *scheme;
}

swirl::similarity_measure parse_measure(const std::string& s) {
    const auto m = swirl::measure_from_string(s);
    if (!m) throw swirl::config_error("unknown similarity measure: " + s);
    return *m;
}

swirl::engine_kind parse_engine(const std::string& s) {
    const auto e = swirl::engine_from_string(s);
    if (!e) throw swirl::config_error("unknown engine: " + s);
    return *e;
}

// corpus or snapshot, reduced to what the engines need
struct loaded_model {
    swirl::inverted_index index;
    std::vector<swirl::doc_meta> docs;
    swirl::preprocess_config preproc;
    swirl::weighting_scheme scheme = swirl::weighting_scheme::tfidf;
};

loaded_model load_model(const cli_options& opt) {
    loaded_model model;
    model.preproc = make_preproc(opt);
    model.scheme = parse_scheme(opt.scheme);
    if (!opt.snapshot.empty()) {
        swirl::loaded_snapshot snap =
            swirl::load_snapshot_file(resolve_input(opt.snapshot, opt.corpus_dir), model.preproc);
        model.scheme = snap.index.scheme();
        model.index = std::move(snap.index);
        model.docs = std::move(snap.docs);
        return model;
    }
    if (opt.corpus.empty())
        throw swirl::config_error("either --corpus or --snapshot is required");
    const auto format = opt.corpus_format == "dir" ? swirl::collection_format::directory
                                                   : swirl::collection_format::smart;
    const auto docs = swirl::parse_collection(resolve_input(opt.corpus, opt.corpus_dir), format);
    std::vector<swirl::term_bag> bags;
    bags.reserve(docs.size());
    for (const auto& d : docs) bags.push_back(swirl::preprocess(d.indexed_text(), model.preproc));
    model.index = swirl::inverted_index::build(bags, model.scheme);
    model.docs.reserve(docs.size());
    for (const auto& d : docs)
        model.docs.push_back({d.doc_id, d.source_id, d.title, d.byte_size()});
    return model;
}

nlohmann::json run_config_json(const cli_options& opt, const loaded_model& model,
                               std::string_view command) {
    nlohmann::json j;
    j["command"] = std::string(command);
    j["corpus"] = opt.corpus;
    j["snapshot"] = opt.snapshot;
    j["queries"] = opt.queries;
    j["qrels"] = opt.qrels;
    j["scheme"] = std::string(to_string(model.scheme));
    j["measure"] = opt.measure;
    j["engine"] = opt.engine;
    j["k"] = opt.k;
    j["threads"] = opt.threads;
    j["repetitions"] = opt.repetitions;
    j["seed"] = opt.pso.rng_seed;
    j["particles"] = opt.pso.num_particles;
    j["iterations"] = opt.pso.num_iterations;
    j["inertia"] = opt.pso.inertia;
    j["shards"] = opt.pso.shard_count;
    j["stemmer"] = model.preproc.use_stemmer ? "porter" : "none";
    j["strip_numbers"] = model.preproc.strip_numbers;
    j["split_hyphens"] = model.preproc.split_hyphens;
    j["stop_list_words"] = model.preproc.stop_list.size();
    j["preprocess_fingerprint"] = swirl::detail::fingerprint_hex(model.preproc.fingerprint());
    return j;
}

int cmd_index(const cli_options& opt) {
    if (opt.corpus.empty()) throw swirl::config_error("index: --corpus is required");
    if (opt.out.empty()) throw swirl::config_error("index: --out snapshot path is required");
    const auto preproc = make_preproc(opt);
    const auto format = opt.corpus_format == "dir" ? swirl::collection_format::directory
                                                   : swirl::collection_format::smart;
    const auto docs = swirl::parse_collection(resolve_input(opt.corpus, opt.corpus_dir), format);
    std::vector<swirl::term_bag> bags;
    bags.reserve(docs.size());
    for (const auto& d : docs) bags.push_back(swirl::preprocess(d.indexed_text(), preproc));
    const auto index = swirl::inverted_index::build(bags, parse_scheme(opt.scheme));
    swirl::save_snapshot_file(opt.out, index, docs, preproc);

    const auto stats = swirl::make_collection_stats(docs, index.vocab_size());
    std::cout << "documents: " << stats.num_documents << "\n"
              << "vocabulary: " << stats.num_terms << "\n"
              << "avg_doc_bytes: " << stats.avg_doc_size_bytes << "\n"
              << "scheme: " << to_string(index.scheme()) << "\n"
              << "fingerprint: " << swirl::detail::fingerprint_hex(preproc.fingerprint()) << "\n"
              << "snapshot: " << opt.out << "\n";
    return exit_ok;
}

int cmd_search(const cli_options& opt) {
    if (opt.query_text.empty()) throw swirl::config_error("search: --query text is required");
    const loaded_model model = load_model(opt);
    const auto measure = parse_measure(opt.measure);
    const auto engine = parse_engine(opt.engine);
    if (opt.k < 1) throw swirl::config_error("search: --k must be >= 1");

    const swirl::term_bag bag = swirl::preprocess(opt.query_text, model.preproc);
    const swirl::weighted_query query = swirl::weight_query(bag, model.index);

    std::cout << "# swirl search | engine=" << to_string(engine)
              << " measure=" << to_string(measure) << " k=" << opt.k
              << " seed=" << opt.pso.rng_seed << " particles=" << opt.pso.num_particles
              << " iterations=" << opt.pso.num_iterations << " inertia=" << opt.pso.inertia
              << " shards=" << opt.pso.shard_count << " threads=" << opt.threads
              << " scheme=" << to_string(model.scheme)
              << " fingerprint=" << swirl::detail::fingerprint_hex(model.preproc.fingerprint())
              << "\n";
    std::cout << "# corpus: " << model.index.num_docs() << " docs, " << model.index.vocab_size()
              << " terms\n";

    if (query.empty()) {
        std::cout << "query has no indexable terms under the active preprocessing "
                     "configuration; nothing to rank\n";
        return exit_ok;
    }

    std::vector<swirl::ranked_hit> ranking;
    if (engine == swirl::engine_kind::exhaustive) {
        ranking = swirl::rank_all(measure, query, model.index,
                                  static_cast<std::size_t>(opt.k), opt.threads);
    } else {
        const auto result = swirl::pso_search(query, model.index, measure, opt.pso,
                                              static_cast<std::size_t>(opt.k));
        ranking = result.ranking;
        std::cout << "# pso: " << result.fitness_evaluations << " fitness evaluations, "
                  << result.iterations_run << " iterations\n";
    }
    const double top = ranking.empty() ? 0.0 : ranking.front().score;
    std::printf("%-5s %-8s %-14s %-7s %s\n", "rank", "doc_id", "score", "pct", "title");
    for (std::size_t i = 0; i < ranking.size(); ++i) {
        const auto& hit = ranking[i];
        std::string title;
        if (hit.doc_id >= 1 && static_cast<std::size_t>(hit.doc_id) <= model.docs.size())
            title = model.docs[hit.doc_id - 1].title.substr(0, 50);
        for (auto& c : title)
            if (c == '\n') c = ' ';
        std::printf("%-5zu %-8d %-14.8f %-7.1f %s\n", i + 1, hit.doc_id, hit.score,
                    top > 0.0 ? 100.0 * hit.score / top : 0.0, title.c_str());
    }
    return exit_ok;
}

struct eval_inputs {
    loaded_model model;
    std::vector<swirl::weighted_query> queries;
    swirl::relevance_judgments qrels;
};

eval_inputs load_eval_inputs(const cli_options& opt) {
    if (opt.queries.empty()) throw swirl::config_error("--queries file is required");
    if (opt.qrels.empty()) throw swirl::config_error("--qrels file is required");
    eval_inputs in{load_model(opt), {}, {}};

    const auto raw_queries = swirl::parse_queries_file(resolve_input(opt.queries, opt.corpus_dir));
    if (raw_queries.empty()) throw swirl::parse_error("query file holds no queries");
    for (const auto& rq : raw_queries) {
        const auto bag = swirl::preprocess(rq.text, in.model.preproc);
        in.queries.push_back(swirl::weight_query(bag, in.model.index, rq.query_id));
    }

    const auto raw_qrels = swirl::parse_qrels_file(resolve_input(opt.qrels, opt.corpus_dir));
    if (raw_qrels.empty())
        throw swirl::parse_error("qrels file holds no judgments; nothing to evaluate");
    std::map<int, int> dense;
    for (const auto& d : in.model.docs) dense.emplace(d.source_id, d.doc_id);
    in.qrels = swirl::remap_qrels(raw_qrels, dense);
    return in;
}

swirl::engine_config make_engine_config(const cli_options& opt) {
    swirl::engine_config cfg;
    cfg.engine = parse_engine(opt.engine);
    cfg.pso = opt.pso;
    cfg.k = opt.k;
    cfg.threads = opt.threads;
    cfg.timing_repetitions = opt.repetitions;
    return cfg;
}

void log_excluded(const swirl::evaluation_report& report) {
    for (const int qid : report.excluded_queries)
        std::cerr << "note: query " << qid << " has no relevance judgments; excluded\n";
}

int cmd_evaluate(const cli_options& opt, const std::string& format) {
    if (opt.out.empty()) throw swirl::config_error("evaluate: --out directory is required");
    eval_inputs in = load_eval_inputs(opt);
    const auto measure = parse_measure(opt.measure);
    const auto report =
        swirl::evaluate_engine(in.queries, in.qrels, in.model.index, measure,
                               make_engine_config(opt));
    log_excluded(report);
    const auto cfg_json = run_config_json(opt, in.model, "evaluate");
    if (format == "csv") {
        fs::create_directories(opt.out);
        swirl::detail::write_text_file(fs::path(opt.out) / "metrics.csv",
                                       swirl::metrics_csv(report));
        swirl::detail::write_text_file(fs::path(opt.out) / "pr_mean.csv",
                                       swirl::pr_curve_csv(report.mean_curve));
        for (const auto& q : report.per_query)
            swirl::detail::write_text_file(
                fs::path(opt.out) / ("pr_query_" + std::to_string(q.query_id) + ".csv"),
                swirl::pr_curve_csv(q.curve));
        swirl::detail::write_text_file(fs::path(opt.out) / "timing.json",
                                       swirl::timing_to_json(report).dump(2) + "\n");
    } else {
        swirl::write_report_files(opt.out, report, cfg_json);
    }
    std::cout << "engine: " << to_string(report.engine) << "\n"
              << "measure: " << to_string(report.measure) << "\n"
              << "queries evaluated: " << report.per_query.size() << " (excluded "
              << report.excluded_queries.size() << ")\n"
              << "MAP: " << swirl::detail::fmt_double(report.map) << "\n"
              << "reports: " << opt.out << "\n";
    return exit_ok;
}

int cmd_compare(const cli_options& opt) {
    if (opt.out.empty()) throw swirl::config_error("compare: --out directory is required");
    eval_inputs in = load_eval_inputs(opt);
    std::vector<std::string> measure_names = opt.measures;
    if (measure_names.empty())
        for (const auto m : swirl::all_measures) measure_names.emplace_back(to_string(m));

    std::vector<swirl::evaluation_report> reports;
    nlohmann::json timing = nlohmann::json::array();
    for (const auto& name : measure_names) {
        const auto measure = parse_measure(name);
        auto cfg = make_engine_config(opt);
        auto [exhaustive, swarm] =
            swirl::compare_engines(in.queries, in.qrels, in.model.index, measure, cfg);
        log_excluded(exhaustive);
        for (auto* report : {&exhaustive, &swarm}) {
            const fs::path dir = fs::path(opt.out) /
                                 (std::string(to_string(report->engine)) + "_" + name);
            swirl::write_report_files(dir, *report, run_config_json(opt, in.model, "compare"));
            timing.push_back(swirl::timing_to_json(*report));
            std::cout << to_string(report->engine) << "/" << name << ": MAP "
                      << swirl::detail::fmt_double(report->map) << ", evaluations "
                      << report->total_fitness_evaluations << ", time "
                      << swirl::detail::fmt_double(report->total_response_time_ms) << " ms\n";
        }
        reports.push_back(std::move(exhaustive));
        reports.push_back(std::move(swarm));
    }
    fs::create_directories(opt.out);
    swirl::detail::write_text_file(fs::path(opt.out) / "comparison.csv",
                                   swirl::comparison_csv(reports));
    swirl::detail::write_text_file(fs::path(opt.out) / "comparison_timing.json",
                                   timing.dump(2) + "\n");
    std::cout << "reports: " << opt.out << "\n";
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"swarm-accelerated document retrieval engine"};
    app.set_config("--config", "", "read options from a key=value file");
    cli_options opt;
    if (const char* dir = std::getenv("SWIRL_CORPUS_DIR")) opt.corpus_dir = dir;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--corpus", opt.corpus, "collection file (SMART markers) or directory");
        cmd->add_option("--corpus-format", opt.corpus_format, "smart|dir")
            ->check(CLI::IsMember({"smart", "dir"}));
        cmd->add_option("--corpus-dir", opt.corpus_dir,
                        "base directory for relative input paths (env SWIRL_CORPUS_DIR)");
        cmd->add_option("--stop-list", opt.stop_list, "stop list file (default: built-in SMART)");
        cmd->add_flag("--no-stem", opt.no_stem, "disable stemming");
        cmd->add_flag("--keep-numbers", opt.keep_numbers, "keep digit-only tokens");
        cmd->add_flag("--keep-hyphens", opt.keep_hyphens, "keep hyphenated words whole");
        cmd->add_option("--threads", opt.threads, "worker thread cap")->check(CLI::PositiveNumber);
    };
    const auto add_engine = [&](CLI::App* cmd) {
        cmd->add_option("--snapshot", opt.snapshot, "index snapshot produced by `swirl index`");
        cmd->add_option("--measure", opt.measure, "cosine|dice|jaccard|smdr")
            ->check(CLI::IsMember({"cosine", "dice", "jaccard", "smdr"}));
        cmd->add_option("--engine", opt.engine, "pso|exhaustive")
            ->check(CLI::IsMember({"pso", "exhaustive"}));
        cmd->add_option("--k", opt.k, "retrieval cutoff");
        cmd->add_option("--particles", opt.pso.num_particles, "swarm size");
        cmd->add_option("--iterations", opt.pso.num_iterations, "swarm iterations");
        cmd->add_option("--inertia", opt.pso.inertia, "velocity inertia factor");
        cmd->add_option("--seed", opt.pso.rng_seed, "random seed");
        cmd->add_option("--shards", opt.pso.shard_count,
                        "initialization shards (0 = one per particle)");
    };

    auto* index_cmd = app.add_subcommand("index", "build and snapshot an index");
    add_common(index_cmd);
    index_cmd->add_option("--scheme", opt.scheme, "tf|tfidf")
        ->check(CLI::IsMember({"tf", "tfidf"}));
    index_cmd->add_option("--out", opt.out, "snapshot output path");

    auto* search_cmd = app.add_subcommand("search", "rank documents for a query");
    add_common(search_cmd);
    add_engine(search_cmd);
    search_cmd->add_option("--query", opt.query_text, "free-text query");

    auto* evaluate_cmd = app.add_subcommand("evaluate", "run a query set against judgments");
    add_common(evaluate_cmd);
    add_engine(evaluate_cmd);
    evaluate_cmd->add_option("--queries", opt.queries, "SMART-format query file");
    evaluate_cmd->add_option("--qrels", opt.qrels, "relevance judgments file");
    evaluate_cmd->add_option("--out", opt.out, "report output directory");
    std::string format = "json";
    evaluate_cmd->add_option("--format", format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    evaluate_cmd->add_option("--repetitions", opt.repetitions, "timing repetitions");

    auto* compare_cmd = app.add_subcommand("compare", "pso vs exhaustive over measures");
    add_common(compare_cmd);
    add_engine(compare_cmd);
    compare_cmd->add_option("--queries", opt.queries, "SMART-format query file");
    compare_cmd->add_option("--qrels", opt.qrels, "relevance judgments file");
    compare_cmd->add_option("--out", opt.out, "report output directory");
    compare_cmd->add_option("--measures", opt.measures, "subset of measures to compare");
    compare_cmd->add_option("--repetitions", opt.repetitions, "timing repetitions");

    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    try {
        if (index_cmd->parsed()) return cmd_index(opt);
        if (search_cmd->parsed()) return cmd_search(opt);
        if (evaluate_cmd->parsed()) return cmd_evaluate(opt, format);
        if (compare_cmd->parsed()) return cmd_compare(opt);
        return exit_config;
    } catch (const swirl::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const swirl::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return exit_parse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_runtime;
    }
}
