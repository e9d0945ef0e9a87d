#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "codefarm/demo.hpp"
#include "codefarm/errors.hpp"
#include "codefarm/farm.hpp"
#include "codefarm/parallel.hpp"
#include "codefarm/replicator.hpp"
#include "codefarm/snapshot.hpp"

namespace codefarm::cli {

namespace {

struct FarmArgs {
    std::string config;
    std::string snapshot_in;
    std::string snapshot_out;
    std::optional<std::size_t> generations;
    std::optional<std::uint64_t> seed;
    bool quiet = false;
};

struct DemoArgs {
    std::uint64_t seed = 0;
    std::size_t runs = 1;
    std::string csv;
    std::string aggregate_csv;
    std::optional<std::size_t> generations;
    std::optional<std::size_t> genotypes;
    std::optional<std::size_t> genes;
    std::string crossover = "single";
    bool entropy = false;
};

struct ReplicatorArgs {
    std::string trace;
    std::optional<std::size_t> steps;
    std::string initial;
};

struct SeedsArgs {
    std::string snapshot;
    std::size_t count = 1;
    bool dedup = false;
    std::string out;
};

struct ProgressArgs {
    std::string snapshot;
    std::size_t window = 100;
};

int cmd_farm(const FarmArgs& args, std::ostream& out, std::ostream& err)
{
    FarmConfig config;
    try {
        config = load_farm_config(args.config);
        if (args.generations) config.termination.max_generations = *args.generations;
        if (args.seed) config.master_seed = *args.seed;
        config.validate();
    } catch (const ConfigError& e) {
        err << "error: config " << args.config << ": " << e.what() << '\n';
        return kUsageError;
    }

    RunOptions options;
    if (!args.snapshot_in.empty()) options.snapshot_in = args.snapshot_in;
    if (!args.snapshot_out.empty()) options.snapshot_out = args.snapshot_out;
    if (!args.quiet) options.progress_log = &err;
    try {
        FarmState state = run(config, options);
        out << "generation=" << state.generation << " elites=" << state.elites.size()
            << " seeds=" << state.seed_list.size() << '\n';
    } catch (const SnapshotError& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    }
    return kOk;
}

int cmd_demo(const DemoArgs& args, std::ostream& out, std::ostream& err)
{
    demo::Config base;
    if (args.generations) base.num_generations = *args.generations;
    if (args.genotypes) base.num_genotypes = *args.genotypes;
    if (args.genes) {
        base.num_genes = *args.genes;
        base.num_inputs = *args.genes >= 2 && *args.genes <= 31 ? std::size_t{1} << (*args.genes - 1) : 0;
    }
    base.crossover_method = args.crossover == "uniform" ? CrossoverMethod::Uniform : CrossoverMethod::Single;
    std::uint64_t first_seed = args.seed;
    if (args.entropy) first_seed = (std::uint64_t{std::random_device{}()} << 32) | std::random_device{}();
    base.seed = first_seed;
    try {
        base.validate();
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    std::vector<demo::Report> reports(args.runs);
    parallel_for(args.runs, [&](std::size_t r) {
        demo::Config config = base;
        config.seed = first_seed + r;
        reports[r] = demo::run(config);
    });

    out << demo::format_report(reports.front());
    if (args.runs > 1) {
        double mean0 = 0.0;
        double mean1 = 0.0;
        out << "\n      Seed Allele:0 Allele:1\n"
            << "---------- -------- --------\n";
        for (std::size_t r = 0; r < args.runs; ++r) {
            out << std::setw(10) << first_seed + r << " " << std::setw(7) << reports[r].allele0_average << "% "
                << std::setw(7) << reports[r].allele1_average << "%\n";
            mean0 += reports[r].allele0_mean;
            mean1 += reports[r].allele1_mean;
        }
        mean0 /= static_cast<double>(args.runs);
        mean1 /= static_cast<double>(args.runs);
        out << "---------- -------- --------\n"
            << "      Mean " << std::fixed << std::setprecision(2) << std::setw(7) << mean0 << "% " << std::setw(7)
            << mean1 << "%\n";
    }

    if (!args.csv.empty()) {
        std::ofstream csv(args.csv);
        if (!csv) {
            err << "error: cannot write " << args.csv << '\n';
            return kUsageError;
        }
        csv << "run,seed,generation,allele0,allele1\n";
        for (std::size_t r = 0; r < args.runs; ++r) {
            for (const auto& row : reports[r].rows) {
                csv << r << ',' << first_seed + r << ',' << row.generation << ',' << row.allele0_percent << ','
                    << row.allele1_percent << '\n';
            }
        }
    }
    if (!args.aggregate_csv.empty()) {
        std::ofstream csv(args.aggregate_csv);
        if (!csv) {
            err << "error: cannot write " << args.aggregate_csv << '\n';
            return kUsageError;
        }
        csv << "run,seed,allele0_average,allele1_average,allele0_mean,allele1_mean\n";
        csv << std::setprecision(17);
        for (std::size_t r = 0; r < args.runs; ++r) {
            csv << r << ',' << first_seed + r << ',' << reports[r].allele0_average << ','
                << reports[r].allele1_average << ',' << reports[r].allele0_mean << ',' << reports[r].allele1_mean
                << '\n';
        }
    }
    return kOk;
}

int cmd_replicator(const ReplicatorArgs& args, std::ostream& out, std::ostream& err)
{
    std::ifstream in(args.trace);
    if (!in) {
        err << "error: cannot read trace " << args.trace << '\n';
        return kUsageError;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();

    replicator::FitnessTrace trace;
    try {
        trace = replicator::parse_trace_csv(buffer.str());
    } catch (const replicator::TraceParseError& e) {
        err << "error: " << args.trace << ": " << e.what() << '\n';
        return kUsageError;
    }
    if (args.steps && *args.steps < trace.size()) trace.resize(*args.steps);
    std::size_t alleles = trace.front().size();

    replicator::Frequencies initial(alleles, 1.0 / static_cast<double>(alleles));
    if (!args.initial.empty()) {
        initial.clear();
        std::stringstream fields(args.initial);
        std::string field;
        try {
            while (std::getline(fields, field, ',')) initial.push_back(std::stod(field));
        } catch (const std::exception&) {
            err << "error: --initial: not a number: '" << field << "'\n";
            return kUsageError;
        }
        double total = 0.0;
        for (double x : initial) total += x;
        bool valid = initial.size() == alleles && std::all_of(initial.begin(), initial.end(), [](double x) { return x >= 0.0; })
                     && std::abs(total - 1.0) < 1e-9;
        if (!valid) {
            err << "error: --initial needs " << alleles << " nonnegative frequencies summing to 1\n";
            return kUsageError;
        }
    }

    auto states = replicator::run_trace(initial, trace);
    out << "step";
    for (std::size_t j = 0; j < alleles; ++j) out << ",x" << j;
    out << '\n' << std::setprecision(12);
    for (std::size_t t = 0; t < states.size(); ++t) {
        out << t;
        for (double x : states[t]) out << ',' << x;
        out << '\n';
    }

    if (alleles == 2) {
        std::vector<double> a;
        std::vector<double> b;
        for (const auto& row : trace) {
            a.push_back(row[0]);
            b.push_back(row[1]);
        }
        auto report = replicator::variance_comparison(a, b);
        out << "\nallele,arithmetic_mean,geometric_mean,variance\n";
        for (std::size_t j = 0; j < 2; ++j) {
            out << j << ',' << report.arithmetic_mean[j] << ',' << report.geometric_mean[j] << ','
                << report.variance[j] << '\n';
        }
        out << "predicted_winner=" << (report.winner ? std::to_string(*report.winner) : std::string("tie")) << '\n';
    }
    return kOk;
}

template <typename Fn>
int with_snapshot(const std::string& path, std::ostream& err, Fn&& fn)
{
    try {
        return fn(load_snapshot(path));
    } catch (const SnapshotError& e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    }
}

int cmd_seeds_export(const SeedsArgs& args, std::ostream& out, std::ostream& err)
{
    return with_snapshot(args.snapshot, err, [&](const LoadedSnapshot& snap) {
        auto seeds = export_seeds(snap.state.seed_list, snap.state.test_inputs, snap.config.step_limit, args.count,
                                  args.dedup);
        std::ostringstream text;
        for (const auto& g : seeds) text << g.to_hex() << '\n';
        if (args.out.empty()) {
            out << text.str();
        } else {
            std::ofstream file(args.out);
            if (!file) {
                err << "error: cannot write " << args.out << '\n';
                return int{kUsageError};
            }
            file << text.str();
        }
        return int{kOk};
    });
}

int cmd_snapshot_info(const std::string& path, std::ostream& out, std::ostream& err)
{
    return with_snapshot(path, err, [&](const LoadedSnapshot& snap) {
        out << "generation=" << snap.state.generation << '\n'
            << "population=" << snap.state.population.size() << '\n'
            << "genome_length=" << snap.config.genome_length << '\n'
            << "seeds=" << snap.state.seed_list.size() << '\n'
            << "elites=" << snap.state.elites.size() << '\n'
            << "test_inputs=" << snap.state.test_inputs.size() << '\n'
            << "config_digest=" << snap.digest << '\n';
        return int{kOk};
    });
}

int cmd_progress(const ProgressArgs& args, std::ostream& out, std::ostream& err)
{
    return with_snapshot(args.snapshot, err, [&](const LoadedSnapshot& snap) {
        std::size_t window = std::max<std::size_t>(1, std::min(args.window, snap.state.generation));
        double rate = progress_metric(snap.state.elites, window, snap.state.generation);
        out << "generation=" << snap.state.generation << " window=" << window << " elites=" << snap.state.elites.size()
            << " rate=" << rate << '\n';
        return int{kOk};
    });
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Evolve program populations against freshly randomized targets", "codefarm"};
    app.require_subcommand(1);

    FarmArgs farm;
    auto* farm_cmd = app.add_subcommand("farm", "Run the farming loop");
    farm_cmd->add_option("--config", farm.config, "Config file (key = value)")->required();
    farm_cmd->add_option("--snapshot-in", farm.snapshot_in, "Resume from this snapshot");
    farm_cmd->add_option("--snapshot-out", farm.snapshot_out, "Write a snapshot on exit");
    farm_cmd->add_option("--generations", farm.generations, "Override termination.max_generations");
    farm_cmd->add_option("--seed", farm.seed, "Override master_seed");
    farm_cmd->add_flag("--quiet", farm.quiet, "Suppress the per-generation progress log");

    DemoArgs demo;
    auto* demo_cmd = app.add_subcommand("demo", "Run the control-gene allele experiment");
    demo_cmd->add_option("--seed", demo.seed, "Seed of the first run; run r uses seed + r");
    demo_cmd->add_option("--runs", demo.runs, "Number of runs")->check(CLI::PositiveNumber);
    demo_cmd->add_option("--csv", demo.csv, "Per-run report rows as CSV");
    demo_cmd->add_option("--aggregate-csv", demo.aggregate_csv, "Per-run averages as CSV");
    demo_cmd->add_option("--generations", demo.generations, "Number of generations");
    demo_cmd->add_option("--genotypes", demo.genotypes, "Population size");
    demo_cmd->add_option("--genes", demo.genes, "Genes per genotype (inputs = 2^(genes-1))");
    demo_cmd->add_option("--crossover", demo.crossover, "single or uniform")
        ->check(CLI::IsMember({"single", "uniform"}));
    demo_cmd->add_flag("--entropy", demo.entropy, "Seed from std::random_device instead of --seed");

    ReplicatorArgs rep;
    auto* rep_cmd = app.add_subcommand("replicator", "Fold the allele-frequency recurrence over a fitness trace");
    rep_cmd->add_option("--trace", rep.trace, "CSV, one column per allele, one row per generation")->required();
    rep_cmd->add_option("--steps", rep.steps, "Use only the first n rows");
    rep_cmd->add_option("--initial", rep.initial, "Comma-separated initial frequencies (default uniform)");

    SeedsArgs seeds;
    auto* seeds_cmd = app.add_subcommand("seeds", "Seed list operations");
    seeds_cmd->require_subcommand(1);
    auto* export_cmd = seeds_cmd->add_subcommand("export", "Write the newest seeds as hex, one per line");
    export_cmd->add_option("--snapshot", seeds.snapshot, "Snapshot file")->required();
    export_cmd->add_option("--count", seeds.count, "Number of seeds")->required()->check(CLI::PositiveNumber);
    export_cmd->add_flag("--dedup", seeds.dedup, "Drop seeds whose signature repeats a newer one");
    export_cmd->add_option("--out", seeds.out, "Output file (default stdout)");

    std::string info_file;
    auto* snap_cmd = app.add_subcommand("snapshot", "Snapshot inspection");
    snap_cmd->require_subcommand(1);
    auto* info_cmd = snap_cmd->add_subcommand("info", "Summarize a snapshot");
    info_cmd->add_option("--file", info_file, "Snapshot file")->required();

    ProgressArgs progress;
    auto* progress_cmd = app.add_subcommand("progress", "Elites gained per generation over a recent window");
    progress_cmd->add_option("--snapshot", progress.snapshot, "Snapshot file")->required();
    progress_cmd->add_option("--window", progress.window, "Window in generations")->check(CLI::PositiveNumber);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    if (*farm_cmd) return cmd_farm(farm, out, err);
    if (*demo_cmd) return cmd_demo(demo, out, err);
    if (*rep_cmd) return cmd_replicator(rep, out, err);
    if (*export_cmd) return cmd_seeds_export(seeds, out, err);
    if (*info_cmd) return cmd_snapshot_info(info_file, out, err);
    if (*progress_cmd) return cmd_progress(progress, out, err);
    return kUsageError;
}

} // namespace codefarm::cli
