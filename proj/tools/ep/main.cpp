// ep: ensemble-projection feature learning and its evaluation harnesses.
//
// Subcommands: synth, fit, project, ssl, selftaught, cluster, observe1,
// observe2. Every run is deterministic given --seed, independent of
// --threads, and writes machine-readable JSON reports plus headerless CSV
// curve files.

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ep/analysis.hpp"
#include "ep/clustering.hpp"
#include "ep/dataset.hpp"
#include "ep/ensemble.hpp"
#include "ep/errors.hpp"
#include "ep/evaluation.hpp"
#include "ep/parallel.hpp"
#include "ep/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

ep::FileFormat parse_format(const std::string& name) {
    if (name == "csv") return ep::FileFormat::csv;
    if (name == "epb") return ep::FileFormat::epb;
    throw ep::InvalidConfig("unknown format '" + name + "' (expected csv or epb)");
}

// Dataset inputs shared by most subcommands.
struct InputOptions {
    std::string features;
    std::string labels;
    std::string format = "csv";
    bool normalize = false;

    void attach(CLI::App* cmd, bool labels_required) {
        cmd->add_option("--features", features, "Feature matrix file")->required();
        auto* lab = cmd->add_option("--labels", labels, "Label file, one integer per line");
        if (labels_required) lab->required();
        cmd->add_option("--format", format, "Feature file format: csv or epb")
            ->check(CLI::IsMember({"csv", "epb"}));
        cmd->add_flag("--normalize", normalize,
                      "L2-normalize every feature row right after loading");
    }

    ep::Dataset load() const {
        ep::Dataset d = ep::load_dataset(
            features, labels.empty() ? std::nullopt : std::optional<std::string>(labels),
            parse_format(format));
        if (normalize) ep::l2_normalize_rows(d.features);
        return d;
    }

    json echo() const {
        return {{"features", features},
                {"labels", labels},
                {"format", format},
                {"normalize", normalize}};
    }
};

struct EPOptions {
    std::size_t trials = 100;
    std::size_t prototypes = 30;
    std::size_t per_prototype = 6;
    std::size_t hypotheses = 50;
    double base_c_reg = 15.0;
    std::string preset;

    void attach(CLI::App* cmd) {
        cmd->add_option("--T", trials, "Number of prototype sets (trials)");
        cmd->add_option("--r", prototypes, "Prototypes per set");
        cmd->add_option("--n", per_prototype, "Members per prototype");
        cmd->add_option("--m", hypotheses, "Skeleton hypotheses per trial");
        cmd->add_option("--base-c-reg", base_c_reg,
                        "Inverse regularization for the projection learners");
        cmd->add_option("--preset", preset, "Parameter preset: full or desk")
            ->check(CLI::IsMember({"full", "desk"}));
    }

    ep::EPParams params(std::uint64_t seed, const CLI::App* cmd) const {
        ep::EPParams p;
        if (preset == "desk") {
            p.trials = 50;
            p.prototypes = 10;
            p.per_prototype = 4;
            p.hypotheses = 20;
        }
        // explicit flags override the preset
        if (preset.empty() || cmd->count("--T")) p.trials = trials;
        if (preset.empty() || cmd->count("--r")) p.prototypes = prototypes;
        if (preset.empty() || cmd->count("--n")) p.per_prototype = per_prototype;
        if (preset.empty() || cmd->count("--m")) p.hypotheses = hypotheses;
        p.seed = seed;
        return p;
    }

    ep::TrainOptions base_options() const {
        ep::TrainOptions opts;
        opts.c_reg = base_c_reg;
        return opts;
    }

    json echo(const ep::EPParams& p) const {
        return {{"T", p.trials},
                {"r", p.prototypes},
                {"n", p.per_prototype},
                {"m", p.hypotheses},
                {"base_c_reg", base_c_reg},
                {"preset", preset.empty() ? "full" : preset}};
    }
};

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ep::IoError("cannot write " + path);
    out << content;
    if (!out) throw ep::IoError("write failed for " + path);
}

void write_report(const fs::path& out_dir, const std::string& command, const json& config,
                  const json& results) {
    fs::create_directories(out_dir);
    const json report = {{"schema_version", kSchemaVersion},
                         {"command", command},
                         {"config", config},
                         {"results", results}};
    write_text((out_dir / "report.json").string(), report.dump(2) + "\n");
}

void write_csv(const fs::path& path, const std::vector<std::vector<double>>& rows) {
    std::string body;
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) body += ',';
            body += format_double(row[i]);
        }
        body += '\n';
    }
    write_text(path.string(), body);
}

json report_json(const ep::ExperimentReport& r) {
    return {{"per_class", r.per_class},
            {"runs", r.runs},
            {"mean", r.mean},
            {"std", r.stddev},
            {"per_run", r.per_run_precision}};
}

std::vector<std::size_t> parse_count_list(const std::string& csv, const char* what) {
    std::vector<std::size_t> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        const std::size_t comma = csv.find(',', start);
        const std::string tok =
            csv.substr(start, comma == std::string::npos ? comma : comma - start);
        std::size_t value = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            throw ep::InvalidConfig(std::string("bad ") + what + " entry '" + tok + "'");
        out.push_back(value);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw ep::InvalidConfig(std::string("empty ") + what + " list");
    return out;
}

std::vector<double> parse_real_list(const std::string& csv, const char* what) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= csv.size()) {
        const std::size_t comma = csv.find(',', start);
        const std::string tok =
            csv.substr(start, comma == std::string::npos ? comma : comma - start);
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            throw ep::InvalidConfig(std::string("bad ") + what + " entry '" + tok + "'");
        out.push_back(value);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw ep::InvalidConfig(std::string("empty ") + what + " list");
    return out;
}

ep::ClassifierKind parse_classifier(const std::string& name) {
    if (name == "knn1") return ep::ClassifierKind::knn1;
    if (name == "logreg") return ep::ClassifierKind::logreg;
    throw ep::InvalidConfig("unknown classifier '" + name + "'");
}

ep::FeatureKind parse_feature(const std::string& name) {
    if (name == "raw") return ep::FeatureKind::raw;
    if (name == "ep") return ep::FeatureKind::ep;
    throw ep::InvalidConfig("unknown feature kind '" + name + "'");
}

// ---------------------------------------------------------------- synth ---

struct SynthCmd {
    ep::BlobSpec spec;
    std::string features_out;
    std::string labels_out;
    std::string format = "csv";

    void attach(CLI::App* cmd) {
        cmd->add_option("--classes", spec.n_classes, "Number of classes");
        cmd->add_option("--samples-per-class", spec.samples_per_class, "Samples per class");
        cmd->add_option("--dims", spec.n_dims, "Feature dimensions");
        cmd->add_option("--spread", spec.center_spread, "Side of the center hypercube");
        cmd->add_option("--std", spec.within_std, "Within-class standard deviation");
        cmd->add_option("--seed", spec.seed, "Generator seed");
        cmd->add_option("--features", features_out, "Output feature file")->required();
        cmd->add_option("--labels", labels_out, "Output label file");
        cmd->add_option("--format", format, "Feature file format: csv or epb")
            ->check(CLI::IsMember({"csv", "epb"}));
    }

    int run() const {
        const ep::Dataset d = ep::make_blobs(spec);
        ep::save_dataset(d, features_out,
                         labels_out.empty() ? std::nullopt
                                            : std::optional<std::string>(labels_out),
                         parse_format(format));
        std::cout << "wrote " << d.n_samples() << " x " << d.n_dims() << " samples to "
                  << features_out << "\n";
        return 0;
    }
};

// ------------------------------------------------------------------ fit ---

struct FitCmd {
    InputOptions input;
    EPOptions ep_opts;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string model_out;
    CLI::App* cmd = nullptr;

    void attach(CLI::App* c) {
        cmd = c;
        input.attach(c, false);
        ep_opts.attach(c);
        c->add_option("--seed", seed, "Master seed");
        c->add_option("--threads", threads, "Worker cap (0 = auto)");
        c->add_option("--model", model_out, "Output model file")->required();
    }

    int run() const {
        const ep::Dataset d = input.load();
        const ep::EPParams params = ep_opts.params(seed, cmd);
        const ep::EnsembleModel model =
            ep::fit(d, params, ep_opts.base_options(), ep::resolve_threads(threads));
        ep::save_model(model, model_out);
        std::cout << "fitted " << params.trials << " projections ("
                  << model.output_dims() << " output dims) -> " << model_out << "\n";
        return 0;
    }
};

// -------------------------------------------------------------- project ---

struct ProjectCmd {
    InputOptions input;
    std::string model_path;
    std::string out_path;
    std::string out_format = "csv";
    bool normalize_ep = false;
    unsigned threads = 0;

    void attach(CLI::App* c) {
        input.attach(c, false);
        c->add_option("--model", model_path, "Model file from `ep fit`")->required();
        c->add_option("--out", out_path, "Output feature file")->required();
        c->add_option("--out-format", out_format, "Output format: csv or epb")
            ->check(CLI::IsMember({"csv", "epb"}));
        c->add_flag("--normalize-ep", normalize_ep,
                    "L2-normalize the projected rows before writing");
        c->add_option("--threads", threads, "Worker cap (0 = auto)");
    }

    int run() const {
        const ep::Dataset d = input.load();
        const ep::EnsembleModel model = ep::load_model(model_path);
        ep::Dataset projected;
        projected.features =
            ep::project_all(model, d.features, ep::resolve_threads(threads));
        if (normalize_ep) ep::l2_normalize_rows(projected.features);
        ep::save_dataset(projected, out_path, std::nullopt, parse_format(out_format));
        std::cout << "projected " << projected.n_samples() << " samples to "
                  << projected.n_dims() << " dims -> " << out_path << "\n";
        return 0;
    }
};

// ------------------------------------------------------------------ ssl ---

struct SslCmd {
    InputOptions input;
    EPOptions ep_opts;
    std::string per_class_csv = "1,2,5,10";
    std::size_t runs = 5;
    std::string classifier = "logreg";
    std::string feature = "ep";
    double c_reg = 15.0;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string out_dir;
    CLI::App* cmd = nullptr;

    void attach(CLI::App* c) {
        cmd = c;
        input.attach(c, true);
        ep_opts.attach(c);
        c->add_option("--per-class", per_class_csv, "Labeled samples per class (comma list)");
        c->add_option("--runs", runs, "Random splits per setting");
        c->add_option("--classifier", classifier, "Downstream classifier: knn1 or logreg")
            ->check(CLI::IsMember({"knn1", "logreg"}));
        c->add_option("--feature", feature, "Representation: raw or ep")
            ->check(CLI::IsMember({"raw", "ep"}));
        c->add_option("--c-reg", c_reg, "Inverse regularization for the downstream LR");
        c->add_option("--seed", seed, "Master seed");
        c->add_option("--threads", threads, "Worker cap (0 = auto)");
        c->add_option("--out", out_dir, "Output directory")->required();
    }

    int run() const {
        const ep::Dataset d = input.load();
        const auto ladder = parse_count_list(per_class_csv, "--per-class");
        const ep::EPParams params = ep_opts.params(seed, cmd);
        ep::TrainOptions downstream;
        downstream.c_reg = c_reg;
        const unsigned workers = ep::resolve_threads(threads);

        json results = json::array();
        std::vector<std::vector<double>> curve;
        std::cout << "per_class        mean         std\n";
        for (const std::size_t pc : ladder) {
            const ep::ExperimentReport report = ep::run_semi_supervised(
                d, params, pc, runs, parse_classifier(classifier), parse_feature(feature),
                downstream, ep_opts.base_options(), workers);
            results.push_back(report_json(report));
            curve.push_back({static_cast<double>(pc), report.mean, report.stddev});
            std::printf("%9zu  %10.4f  %10.4f\n", pc, report.mean, report.stddev);
        }

        json config = input.echo();
        config.update(ep_opts.echo(params));
        config["seed"] = seed;
        config["per_class"] = ladder;
        config["runs"] = runs;
        config["classifier"] = classifier;
        config["feature"] = feature;
        config["c_reg"] = c_reg;
        write_report(out_dir, "ssl", config, results);
        write_csv(fs::path(out_dir) / "ssl_curve.csv", curve);
        return 0;
    }
};

// ------------------------------------------------------------ selftaught ---

struct SelfTaughtCmd {
    InputOptions target;
    EPOptions ep_opts;
    std::string pool_features;
    std::string pool_format = "csv";
    std::string per_class_csv = "1,2,5,10";
    std::size_t runs = 5;
    std::string classifier = "logreg";
    double c_reg = 15.0;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string out_dir;
    CLI::App* cmd = nullptr;

    void attach(CLI::App* c) {
        cmd = c;
        target.attach(c, true);
        ep_opts.attach(c);
        c->add_option("--pool-features", pool_features, "Unlabeled pool feature file")
            ->required();
        c->add_option("--pool-format", pool_format, "Pool file format: csv or epb")
            ->check(CLI::IsMember({"csv", "epb"}));
        c->add_option("--per-class", per_class_csv, "Labeled samples per class (comma list)");
        c->add_option("--runs", runs, "Random splits per setting");
        c->add_option("--classifier", classifier, "Downstream classifier: knn1 or logreg")
            ->check(CLI::IsMember({"knn1", "logreg"}));
        c->add_option("--c-reg", c_reg, "Inverse regularization for the downstream LR");
        c->add_option("--seed", seed, "Master seed");
        c->add_option("--threads", threads, "Worker cap (0 = auto)");
        c->add_option("--out", out_dir, "Output directory")->required();
    }

    int run() const {
        const ep::Dataset target_ds = target.load();
        ep::Dataset pool =
            ep::load_dataset(pool_features, std::nullopt, parse_format(pool_format));
        if (target.normalize) ep::l2_normalize_rows(pool.features);

        const auto ladder = parse_count_list(per_class_csv, "--per-class");
        const ep::EPParams params = ep_opts.params(seed, cmd);
        ep::TrainOptions downstream;
        downstream.c_reg = c_reg;
        const unsigned workers = ep::resolve_threads(threads);

        json results = json::array();
        std::vector<std::vector<double>> curve;
        std::cout << "per_class        mean         std\n";
        for (const std::size_t pc : ladder) {
            const ep::ExperimentReport report =
                ep::run_self_taught(pool, target_ds, params, pc, runs,
                                    parse_classifier(classifier), downstream,
                                    ep_opts.base_options(), workers);
            results.push_back(report_json(report));
            curve.push_back({static_cast<double>(pc), report.mean, report.stddev});
            std::printf("%9zu  %10.4f  %10.4f\n", pc, report.mean, report.stddev);
        }

        json config = target.echo();
        config.update(ep_opts.echo(params));
        config["pool_features"] = pool_features;
        config["pool_format"] = pool_format;
        config["seed"] = seed;
        config["per_class"] = ladder;
        config["runs"] = runs;
        config["classifier"] = classifier;
        config["c_reg"] = c_reg;
        write_report(out_dir, "selftaught", config, results);
        write_csv(fs::path(out_dir) / "selftaught_curve.csv", curve);
        return 0;
    }
};

// -------------------------------------------------------------- cluster ---

struct ClusterCmd {
    InputOptions input;
    EPOptions ep_opts;
    std::string feature = "ep";
    std::size_t restarts = 10;
    std::size_t max_iters = 100;
    std::size_t k = 0;
    bool normalize_ep = false;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string out_dir;
    CLI::App* cmd = nullptr;

    void attach(CLI::App* c) {
        cmd = c;
        input.attach(c, true);
        ep_opts.attach(c);
        c->add_option("--feature", feature, "Representation: raw or ep")
            ->check(CLI::IsMember({"raw", "ep"}));
        c->add_option("--restarts", restarts, "k-means restarts");
        c->add_option("--max-iters", max_iters, "k-means iteration cap");
        c->add_option("--k", k, "Cluster count (default: the class count)");
        c->add_flag("--normalize-ep", normalize_ep,
                    "L2-normalize projected rows before clustering");
        c->add_option("--seed", seed, "Master seed");
        c->add_option("--threads", threads, "Worker cap (0 = auto)");
        c->add_option("--out", out_dir, "Output directory")->required();
    }

    int run() const {
        ep::Dataset d = input.load();
        const ep::EPParams params = ep_opts.params(seed, cmd);
        const unsigned workers = ep::resolve_threads(threads);

        ep::ClusteringReport report;
        if (parse_feature(feature) == ep::FeatureKind::ep && normalize_ep) {
            // project explicitly so the normalization can sit in between
            const ep::EnsembleModel model =
                ep::fit(d, params, ep_opts.base_options(), workers);
            ep::Dataset projected;
            projected.features = ep::project_all(model, d.features, workers);
            ep::l2_normalize_rows(projected.features);
            projected.labels = d.labels;
            projected.n_classes = d.n_classes;
            report = ep::run_clustering_experiment(projected, params, ep::FeatureKind::raw,
                                                   restarts, max_iters, {}, workers, k);
            report.feature = ep::FeatureKind::ep;
        } else {
            report = ep::run_clustering_experiment(d, params, parse_feature(feature), restarts,
                                                   max_iters, ep_opts.base_options(), workers,
                                                   k);
        }

        std::printf("purity %.4f (k=%zu, inertia %.6g, %zu iterations)\n", report.purity,
                    report.result.k, report.result.inertia, report.result.iterations);

        json config = input.echo();
        config.update(ep_opts.echo(params));
        config["seed"] = seed;
        config["feature"] = feature;
        config["restarts"] = restarts;
        config["max_iters"] = max_iters;
        config["k"] = report.result.k;
        config["normalize_ep"] = normalize_ep;
        const json results = {{"purity", report.purity},
                              {"k", report.result.k},
                              {"inertia", report.result.inertia},
                              {"iterations", report.result.iterations}};
        write_report(out_dir, "cluster", config, results);

        std::vector<std::vector<double>> rows;
        rows.reserve(report.result.assignments.size());
        for (std::size_t i = 0; i < report.result.assignments.size(); ++i)
            rows.push_back({static_cast<double>(i),
                            static_cast<double>(report.result.assignments[i])});
        write_csv(fs::path(out_dir) / "assignments.csv", rows);
        return 0;
    }
};

// ------------------------------------------------------------- observe1 ---

struct Observe1Cmd {
    InputOptions input;
    std::size_t k_max = 20;
    bool per_image = false;
    unsigned threads = 0;
    std::string out_dir;

    void attach(CLI::App* c) {
        input.attach(c, true);
        c->add_option("--k-max", k_max, "Largest neighbor rank to tabulate");
        c->add_flag("--per-image", per_image,
                    "Average per image instead of per class then overall");
        c->add_option("--threads", threads, "Worker cap (0 = auto)");
        c->add_option("--out", out_dir, "Output directory")->required();
    }

    int run() const {
        const ep::Dataset d = input.load();
        const auto curve = ep::label_cooccurrence_curve(
            d, k_max,
            per_image ? ep::CooccurrenceAveraging::per_image
                      : ep::CooccurrenceAveraging::per_class,
            ep::resolve_threads(threads));

        json config = input.echo();
        config["k_max"] = k_max;
        config["per_image"] = per_image;
        write_report(out_dir, "observe1", config, {{"p", curve.p}});

        std::vector<std::vector<double>> rows;
        for (std::size_t k = 0; k < curve.p.size(); ++k)
            rows.push_back({static_cast<double>(k + 1), curve.p[k]});
        write_csv(fs::path(out_dir) / "cooccurrence.csv", rows);
        std::cout << "p(1) = " << curve.p.front() << ", p(" << k_max
                  << ") = " << curve.p.back() << "\n";
        return 0;
    }
};

// ------------------------------------------------------------- observe2 ---

struct Observe2Cmd {
    InputOptions input;
    std::string noise_csv = "0,0.4,0.8";
    std::string t_grid_csv = "1,10,100,500";
    double subsample_fraction = 0.3;
    double train_fraction = 0.5;
    std::string noise_mode = "any";
    double c_reg = 15.0;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string out_dir;

    void attach(CLI::App* c) {
        input.attach(c, true);
        c->add_option("--noise", noise_csv, "Label noise rates R (comma list)");
        c->add_option("--t-grid", t_grid_csv, "Trial budgets T to evaluate (comma list)");
        c->add_option("--subsample-fraction", subsample_fraction,
                      "Share of the training split drawn per trial");
        c->add_option("--train-fraction", train_fraction, "Share of data held as training");
        c->add_option("--noise-mode", noise_mode,
                      "Reassignment draw: any class, or distinct from the original")
            ->check(CLI::IsMember({"any", "distinct"}));
        c->add_option("--c-reg", c_reg, "Inverse regularization for the weak learners");
        c->add_option("--seed", seed, "Master seed");
        c->add_option("--threads", threads, "Worker cap (0 = auto)");
        c->add_option("--out", out_dir, "Output directory")->required();
    }

    int run() const {
        const ep::Dataset d = input.load();
        const auto rates = parse_real_list(noise_csv, "--noise");
        const auto t_grid = parse_count_list(t_grid_csv, "--t-grid");
        const unsigned workers = ep::resolve_threads(threads);

        ep::TrainOptions opts;
        opts.c_reg = c_reg;

        json results = json::array();
        fs::create_directories(out_dir);
        for (std::size_t i = 0; i < rates.size(); ++i) {
            ep::NoiseSimConfig cfg;
            cfg.noise_rate = rates[i];
            cfg.t_max = *std::max_element(t_grid.begin(), t_grid.end());
            cfg.subsample_fraction = subsample_fraction;
            cfg.train_fraction = train_fraction;
            cfg.mode = noise_mode == "distinct" ? ep::NoiseMode::reassign_distinct
                                                : ep::NoiseMode::reassign_any;
            cfg.seed = seed;
            const ep::NoiseSimResult res =
                ep::ensemble_noise_simulation(d, cfg, t_grid, opts, workers);

            json entry = {{"noise", rates[i]},
                          {"t_grid", res.t_grid},
                          {"accuracy", res.accuracy}};
            results.push_back(entry);

            std::vector<std::vector<double>> rows;
            for (std::size_t g = 0; g < res.t_grid.size(); ++g)
                rows.push_back({static_cast<double>(res.t_grid[g]), res.accuracy[g]});
            write_csv(fs::path(out_dir) / ("observe2_curve_" + std::to_string(i) + ".csv"),
                      rows);

            std::cout << "R=" << format_double(rates[i]) << ":";
            for (std::size_t g = 0; g < res.t_grid.size(); ++g)
                std::cout << "  T=" << res.t_grid[g] << " " << format_double(res.accuracy[g]);
            std::cout << "\n";
        }

        json config = input.echo();
        config["noise"] = rates;
        config["t_grid"] = t_grid;
        config["subsample_fraction"] = subsample_fraction;
        config["train_fraction"] = train_fraction;
        config["noise_mode"] = noise_mode;
        config["c_reg"] = c_reg;
        config["seed"] = seed;
        write_report(out_dir, "observe2", config, results);
        return 0;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ensemble-projection feature learning"};
    app.require_subcommand(1);

    SynthCmd synth_cmd;
    synth_cmd.attach(app.add_subcommand("synth", "Generate a labeled blob dataset"));
    FitCmd fit_cmd;
    fit_cmd.attach(app.add_subcommand("fit", "Learn an ensemble-projection model"));
    ProjectCmd project_cmd;
    project_cmd.attach(app.add_subcommand("project", "Project features through a model"));
    SslCmd ssl_cmd;
    ssl_cmd.attach(app.add_subcommand("ssl", "Semi-supervised classification experiment"));
    SelfTaughtCmd selftaught_cmd;
    selftaught_cmd.attach(
        app.add_subcommand("selftaught", "Self-taught classification experiment"));
    ClusterCmd cluster_cmd;
    cluster_cmd.attach(app.add_subcommand("cluster", "Clustering experiment with purity"));
    Observe1Cmd observe1_cmd;
    observe1_cmd.attach(
        app.add_subcommand("observe1", "Label co-occurrence curve of a dataset"));
    Observe2Cmd observe2_cmd;
    observe2_cmd.attach(
        app.add_subcommand("observe2", "Weak-training-set majority-vote simulation"));

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("synth")) return synth_cmd.run();
        if (app.got_subcommand("fit")) return fit_cmd.run();
        if (app.got_subcommand("project")) return project_cmd.run();
        if (app.got_subcommand("ssl")) return ssl_cmd.run();
        if (app.got_subcommand("selftaught")) return selftaught_cmd.run();
        if (app.got_subcommand("cluster")) return cluster_cmd.run();
        if (app.got_subcommand("observe1")) return observe1_cmd.run();
        if (app.got_subcommand("observe2")) return observe2_cmd.run();
    } catch (const ep::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
