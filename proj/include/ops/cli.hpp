#pragma once

#include "ops/experiment.hpp"
#include "ops/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace ops {

// Function descriptors accepted by --fn:
//   additive:<v1,v2,...>      weights per element
//   unit-demand:<v1,v2,...>   value of a set is its largest member weight
//   coverage:<path>           coverage graph file
inline SetFunction parse_fn_descriptor(const std::string& desc) {
    auto colon = desc.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("bad function descriptor: " + desc);
    const std::string head = desc.substr(0, colon), body = desc.substr(colon + 1);
    if (head == "additive" || head == "unit-demand") {
        std::vector<Rational> values;
        std::istringstream is(body);
        std::string piece;
        while (std::getline(is, piece, ',')) values.push_back(parse_rational(piece));
        if (values.empty()) throw std::invalid_argument("empty value list in: " + desc);
        return head == "additive" ? make_additive(std::move(values))
                                  : make_unit_demand(std::move(values));
    }
    if (head == "coverage") {
        CoverageGraph g = read_coverage_file(body);
        return make_coverage(std::move(g), "coverage:" + body);
    }
    throw std::invalid_argument("unknown function kind '" + head +
                                "' (expected additive, unit-demand, coverage)");
}

namespace detail {

inline std::vector<uint64_t> expand_seeds(const std::vector<uint64_t>& seeds,
                                          const std::string& range) {
    std::vector<uint64_t> out = seeds;
    if (!range.empty()) {
        auto dots = range.find("..");
        if (dots == std::string::npos)
            throw std::invalid_argument("--seeds-range expects a..b, got: " + range);
        uint64_t a = std::stoull(range.substr(0, dots));
        uint64_t b = std::stoull(range.substr(dots + 2));
        if (b < a) throw std::invalid_argument("--seeds-range expects a <= b");
        for (uint64_t s = a; s <= b; ++s) out.push_back(s);
    }
    if (out.empty()) out.push_back(1);
    return out;
}

struct OutStream {
    std::ostream* os;
    std::unique_ptr<std::ofstream> file;
};

inline OutStream open_out(const std::string& path, std::ostream& fallback) {
    OutStream o{&fallback, nullptr};
    if (!path.empty()) {
        o.file = std::make_unique<std::ofstream>(path);
        if (!*o.file) throw std::runtime_error("cannot open for write: " + path);
        o.os = o.file.get();
    }
    return o;
}

}  // namespace detail

// Exit codes: 0 success, 1 usage or runtime error, 2 verification failure.
inline int cli_dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sample-based set-function maximization toolkit"};
    app.require_subcommand(1);

    // --- gen-instance ---
    auto* gen_inst = app.add_subcommand("gen-instance", "Build a partition instance");
    std::string gi_family = "coverage-poly", gi_out;
    uint32_t gi_n = 12, gi_k = 3, gi_r = 2, gi_ell = 2, gi_sigma = 4, gi_index = 0;
    uint64_t gi_seed = 1;
    gen_inst->add_option("--family", gi_family,
                         "coverage-closed | coverage-poly | submodular");
    gen_inst->add_option("--n", gi_n, "ground set size");
    gen_inst->add_option("--k", gi_k, "part size / cardinality budget");
    gen_inst->add_option("--r", gi_r, "number of parts");
    gen_inst->add_option("--ell", gi_ell, "agreement range (coverage families)");
    gen_inst->add_option("--sigma", gi_sigma, "mask column count (coverage families)");
    gen_inst->add_option("--i", gi_index, "planted good part index");
    gen_inst->add_option("--seed", gi_seed, "construction seed");
    gen_inst->add_option("--out", gi_out, "output file")->required();

    // --- gen-samples ---
    auto* gen_samp = app.add_subcommand("gen-samples", "Draw a labeled sample set");
    std::string gs_fn, gs_instance, gs_dist = "product:1/2", gs_out;
    uint64_t gs_m = 1000, gs_seed = 1;
    gen_samp->add_option("--fn", gs_fn, "function descriptor");
    gen_samp->add_option("--instance", gs_instance, "instance file");
    gen_samp->add_option("--dist", gs_dist, "sampling distribution descriptor");
    gen_samp->add_option("--m", gs_m, "number of samples");
    gen_samp->add_option("--seed", gs_seed, "sampling seed");
    gen_samp->add_option("--out", gs_out, "output file")->required();

    // --- run ---
    auto* run = app.add_subcommand("run", "Run an algorithm across seeds");
    std::string r_fn, r_instance, r_dist, r_algo = "best-sample", r_format = "csv", r_out,
                r_seeds_range;
    std::vector<uint64_t> r_seeds;
    uint64_t r_m = 1000;
    uint32_t r_k = 1;
    bool r_exact = false, r_fixed_index = false;
    run->add_option("--fn", r_fn, "function descriptor");
    run->add_option("--instance", r_instance, "instance file");
    run->add_option("--dist", r_dist, "sampling distribution descriptor");
    run->add_option("--m", r_m, "samples per seed");
    run->add_option("--k", r_k, "cardinality budget");
    run->add_option("--algo", r_algo,
                    "best-sample | max-marg-cont | algo2 | greedy-surrogate");
    run->add_option("--seed", r_seeds, "seed (repeatable)");
    run->add_option("--seeds-range", r_seeds_range, "inclusive seed range a..b");
    run->add_flag("--exact", r_exact, "exact rational estimates and deterministic output");
    run->add_option("--format", r_format, "csv | table | plotdata");
    run->add_option("--out", r_out, "output file (default stdout)");
    run->add_flag("--fixed-index", r_fixed_index,
                  "keep the instance's planted index instead of re-drawing per seed");

    // --- verify ---
    auto* verify = app.add_subcommand("verify", "Check instance properties");
    std::string v_instance;
    VerifyConfig v_cfg;
    verify->add_option("--instance", v_instance, "instance file")->required();
    verify->add_option("--trials", v_cfg.trials, "statistical trials per check");
    verify->add_option("--t-identical", v_cfg.t_identical, "draw size for the agreement check");
    verify->add_option("--t-masking", v_cfg.t_masking, "draw size for the masking check");
    verify->add_option("--seed", v_cfg.seed, "rng seed for statistical checks");

    // --- report ---
    auto* report = app.add_subcommand("report", "Re-render a run CSV");
    std::string rep_in, rep_format = "table", rep_out;
    report->add_option("--in", rep_in, "CSV produced by run")->required();
    report->add_option("--format", rep_format, "csv | table | plotdata");
    report->add_option("--out", rep_out, "output file (default stdout)");

    try {
        args.insert(args.begin(), "bench");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (gen_inst->parsed()) {
            HardFamily family = family_from_name(gi_family);
            HardInstance inst =
                family == HardFamily::Submodular
                    ? build_submodular_hard(gi_n, gi_k, gi_r, gi_seed)
                    : build_coverage_hard(gi_n, gi_k, gi_r, gi_ell, gi_sigma, gi_seed,
                                          family == HardFamily::CoveragePoly);
            inst = with_good_index(std::move(inst), gi_index);
            write_hard_instance_file(inst, gi_out);
            out << "wrote " << gi_out;
            if (!inst.graph_file.empty()) out << " (+ " << inst.graph_file << ")";
            out << "\n";
            return 0;
        }

        if (gen_samp->parsed()) {
            if (gs_fn.empty() == gs_instance.empty())
                throw std::invalid_argument("gen-samples needs exactly one of --fn, --instance");
            SetFunction f = gs_fn.empty()
                                ? make_set_function(read_hard_instance_file(gs_instance))
                                : parse_fn_descriptor(gs_fn);
            SubsetDistribution dist = parse_distribution(gs_dist, f.n());
            SampleSet samples = generate_dataset(f, dist, gs_m, gs_seed);
            write_samples_file(gs_out, samples);
            out << "wrote " << gs_out << " (" << samples.records.size() << " samples)\n";
            return 0;
        }

        if (run->parsed()) {
            if (r_fn.empty() == r_instance.empty())
                throw std::invalid_argument("run needs exactly one of --fn, --instance");
            ExperimentConfig cfg;
            if (!r_instance.empty())
                cfg.instance = read_hard_instance_file(r_instance);
            else
                cfg.fn = parse_fn_descriptor(r_fn);
            const uint32_t n = cfg.instance ? cfg.instance->n : cfg.fn->n();
            if (r_dist.empty()) r_dist = "product:1/2";
            cfg.dist = parse_distribution(r_dist, n);
            cfg.m = r_m;
            cfg.k = r_k;
            cfg.algo = r_algo;
            cfg.exact = r_exact;
            cfg.resample_index = !r_fixed_index;
            cfg.seeds = detail::expand_seeds(r_seeds, r_seeds_range);
            auto records = run_experiment(cfg);
            auto sink = detail::open_out(r_out, out);
            render_report(records, r_format, cfg.exact, *sink.os);
            for (const auto& rec : records)
                for (const auto& w : rec.warnings)
                    err << "warning: seed " << rec.seed << ": " << w << "\n";
            return 0;
        }

        if (verify->parsed()) {
            HardInstance inst = read_hard_instance_file(v_instance);
            auto reports = verify_instance(inst, v_cfg);
            render_reports(reports, out);
            return any_failure(reports) ? 2 : 0;
        }

        if (report->parsed()) {
            std::ifstream is(rep_in);
            if (!is) throw std::runtime_error("cannot open for read: " + rep_in);
            std::vector<RatioRecord> records;
            std::string line;
            if (!std::getline(is, line) || line.rfind("seed,", 0) != 0)
                throw std::invalid_argument("not a run CSV (missing header): " + rep_in);
            while (std::getline(is, line)) {
                if (line.empty() || line.rfind("mean=", 0) == 0) continue;
                std::istringstream ls(line);
                std::string seed_s, value_s, baseline_s, ratio_s, ms_s;
                if (!std::getline(ls, seed_s, ',') || !std::getline(ls, value_s, ',') ||
                    !std::getline(ls, baseline_s, ',') || !std::getline(ls, ratio_s, ',') ||
                    !std::getline(ls, ms_s))
                    throw std::invalid_argument("bad CSV row: " + line);
                RatioRecord rec;
                rec.seed = std::stoull(seed_s);
                rec.value = parse_rational(value_s);
                rec.baseline = parse_rational(baseline_s);
                rec.ratio = parse_rational(ratio_s);
                rec.ms = std::stod(ms_s);
                records.push_back(std::move(rec));
            }
            auto sink = detail::open_out(rep_out, out);
            render_report(records, rep_format, false, *sink.os);
            return 0;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "error: no subcommand\n";
    return 1;
}

}  // namespace ops
