#include "choaelm/cli.hpp"

#include "choaelm/baselines.hpp"
#include "choaelm/dataset.hpp"
#include "choaelm/errors.hpp"
#include "choaelm/feature_file.hpp"
#include "choaelm/metrics.hpp"
#include "choaelm/pipeline.hpp"
#include "choaelm/report.hpp"
#include "choaelm/test_functions.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace choaelm::cli {

namespace {

using nlohmann::json;

// Uniform error handling: translate exceptions into the documented exit codes.
template <typename Fn>
int guarded(Fn&& fn) {
    try {
        fn();
        return kOk;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDataError;
    } catch (const NumericError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumericError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDataError;
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open: " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ChaoticMapKind parse_chaos_map(const std::string& name) {
    if (auto kind = chaotic_map_from_name(name)) return *kind;
    throw InvalidInput("unknown chaos map \"" + name + "\" (expected chebyshev, gauss, "
                       "singer, bernoulli, sine or circle)");
}

ChoaStrategy parse_strategy(const std::string& name) {
    if (auto s = choa_strategy_from_name(name)) return *s;
    throw InvalidInput("unknown ChOA strategy \"" + name + "\" (expected choa1 or choa2)");
}

// Bench rows are either a plain optimizer kind or a ChOA strategy shorthand.
std::pair<OptimizerKind, ChoaStrategy> parse_bench_optimizer(const std::string& name) {
    if (name == "choa1") return {OptimizerKind::Choa, ChoaStrategy::Choa1};
    if (name == "choa2") return {OptimizerKind::Choa, ChoaStrategy::Choa2};
    if (auto kind = optimizer_kind_from_name(name)) return {*kind, ChoaStrategy::Choa1};
    throw InvalidInput("unknown optimizer \"" + name + "\"");
}

} // namespace

int cmd_synth(const SynthArgs& args) {
    return guarded([&] {
        if (args.out_dir.empty()) throw InvalidInput("synth requires --out");
        SynthOptions options;
        options.train_per_class = args.train_per_class;
        options.test_per_class = args.test_per_class;
        options.image_size = args.image_size;
        options.seed = args.seed;
        generate_synthetic_dataset(args.out_dir, options);

        json echo;
        echo["command"] = "synth";
        echo["train_per_class"] = args.train_per_class;
        echo["test_per_class"] = args.test_per_class;
        echo["size"] = args.image_size;
        echo["seed"] = args.seed;
        write_text_atomic(std::filesystem::path(args.out_dir) / "synth.json", echo.dump(2));
        std::cout << "wrote " << 2 * (args.train_per_class + args.test_per_class)
                  << " images and manifest.csv under " << args.out_dir << '\n';
    });
}

int cmd_extract(const ExtractArgs& args) {
    return guarded([&] {
        if (args.manifest.empty() || args.out_file.empty()) {
            throw InvalidInput("extract requires --manifest and --out");
        }
        const NetworkSpec spec = parse_structure(args.structure);
        const WeightSource source = args.weights_file.empty()
                                        ? WeightSource::from_seed(args.weights_seed)
                                        : WeightSource::from_file(args.weights_file);
        const WeightStore store = frozen_weights(spec, source);

        const std::filesystem::path manifest_path(args.manifest);
        const Manifest manifest = load_manifest(manifest_path);
        const auto base_dir = manifest_path.parent_path();

        FeatureSet set;
        std::vector<ImageTensor> images;
        std::uint64_t augment_counter = 0;
        for (const auto& rec : manifest.records) {
            const auto image_path = base_dir / rec.image_path;
            const ImageTensor resized = resize_bilinear(
                load_pgm(image_path), NetworkSpec::kInputSize, NetworkSpec::kInputSize);
            if (args.augment_train && rec.split == Split::Train) {
                for (auto& variant : augment(resized, args.augment_seed + augment_counter)) {
                    images.push_back(std::move(variant));
                    set.labels.push_back(rec.label);
                    set.splits.push_back(rec.split);
                }
                ++augment_counter;
            } else {
                images.push_back(resized);
                set.labels.push_back(rec.label);
                set.splits.push_back(rec.split);
            }
        }
        set.features = extract_features_batch(images, spec, store);
        set.structure = spec.structure;

        json echo;
        echo["command"] = "extract";
        echo["manifest"] = args.manifest;
        echo["structure"] = args.structure;
        if (source.type == WeightSource::Type::Seed) {
            echo["weights"] = {{"type", "seed"}, {"seed", source.seed}};
        } else {
            echo["weights"] = {{"type", "file"}, {"path", source.path}};
        }
        echo["augment_train"] = args.augment_train;
        echo["augment_seed"] = args.augment_seed;
        set.config_echo_json = echo.dump();

        save_features(set, args.out_file);
        std::cout << "extracted " << set.features.rows() << " x " << set.features.cols()
                  << " features to " << args.out_file << '\n';
    });
}

int cmd_train(const TrainArgs& args) {
    return guarded([&] {
        if (args.features_file.empty() || args.out_file.empty()) {
            throw InvalidInput("train requires --features and --out");
        }
        const FeatureSet set = load_features(args.features_file);
        auto [features, labels] = select_split(set, Split::Train);
        const Matrix targets = one_hot_targets(labels);

        TrainOptions options;
        const auto kind = optimizer_kind_from_name(args.optimizer);
        if (!kind) throw InvalidInput("unknown optimizer \"" + args.optimizer + "\"");
        options.optimizer = *kind;
        options.strategy = parse_strategy(args.choa_strategy);
        options.config.population = args.population;
        options.config.max_iters = args.iterations;
        options.config.seed = args.seed;
        options.config.chaos_map = parse_chaos_map(args.chaos_map);
        if (args.target_loss >= 0.0) options.config.target_loss = args.target_loss;
        options.n_hidden = args.n_hidden;
        options.structure = set.structure;

        const json feature_echo = json::parse(set.config_echo_json);
        if (feature_echo.contains("weights")) {
            const auto& w = feature_echo["weights"];
            options.weight_source =
                w["type"] == "seed"
                    ? WeightSource::from_seed(w["seed"].get<std::uint64_t>())
                    : WeightSource::from_file(w["path"].get<std::string>());
        }

        const TrainedDetector detector = train_detector(features, targets, options);

        json doc = json::parse(detector_to_json(detector));
        json echo;
        echo["command"] = "train";
        echo["features"] = args.features_file;
        echo["feature_config"] = feature_echo;
        echo["optimizer"] = args.optimizer;
        echo["choa_strategy"] = args.choa_strategy;
        echo["chaos_map"] = args.chaos_map;
        echo["population"] = args.population;
        echo["iterations"] = args.iterations;
        echo["seed"] = args.seed;
        echo["n_hidden"] = args.n_hidden;
        if (args.target_loss >= 0.0) echo["target_loss"] = args.target_loss;
        doc["config_echo"] = std::move(echo);
        write_text_atomic(args.out_file, doc.dump(2));

        std::cout << "trained " << args.optimizer << " detector: final loss "
                  << detector.training.final_loss << ", " << detector.training.evaluations
                  << " evaluations, " << detector.training.wall_seconds << " s\n"
                  << "model written to " << args.out_file << '\n';
    });
}

int cmd_eval(const EvalArgs& args) {
    return guarded([&] {
        if (args.model_file.empty() || args.features_file.empty() || args.out_dir.empty()) {
            throw InvalidInput("eval requires --model, --features and --out");
        }
        const std::string model_text = read_file(args.model_file);
        const TrainedDetector detector = detector_from_json(model_text);
        const FeatureSet set = load_features(args.features_file);

        EvalOptions options;
        options.thresholds = args.thresholds;
        options.ci_p = args.ci_p;
        if (args.split == "train") {
            options.split = Split::Train;
        } else if (args.split == "test") {
            options.split = Split::Test;
        } else {
            throw InvalidInput("unknown split \"" + args.split + "\"");
        }
        for (double th : options.thresholds) {
            if (!(th >= 0.0 && th <= 1.0)) {
                throw InvalidInput("thresholds must lie in [0, 1]");
            }
        }

        json echo;
        echo["command"] = "eval";
        echo["model"] = args.model_file;
        echo["features"] = args.features_file;
        echo["thresholds"] = args.thresholds;
        echo["ci_p"] = args.ci_p;
        echo["split"] = args.split;
        echo["model_config"] = json::parse(model_text).value("config_echo", json::object());

        write_eval_report(detector, set, options, args.out_dir, echo.dump());
        std::cout << "report written under " << args.out_dir << '\n';
    });
}

int cmd_bench(const BenchArgs& args) {
    return guarded([&] {
        if (args.out_dir.empty()) throw InvalidInput("bench requires --out");
        if (args.seeds == 0) throw InvalidInput("bench requires at least one seed");

        ObjectiveFn objective;
        double lo, hi;
        if (args.function == "sphere") {
            objective = sphere;
            lo = -10.0;
            hi = 10.0;
        } else if (args.function == "rastrigin") {
            objective = rastrigin;
            lo = -5.12;
            hi = 5.12;
        } else {
            throw InvalidInput("unknown benchmark function \"" + args.function + "\"");
        }
        const SearchSpace space = SearchSpace::cube(args.dim, lo, hi);

        std::filesystem::create_directories(args.out_dir);

        json per_optimizer = json::array();
        std::vector<std::vector<double>> final_losses;
        for (const auto& name : args.optimizers) {
            const auto [kind, strategy] = parse_bench_optimizer(name);
            json runs = json::array();
            std::vector<double> finals;
            double total_seconds = 0.0;
            for (std::size_t s = 0; s < args.seeds; ++s) {
                OptimizerConfig cfg;
                cfg.population = args.population;
                cfg.max_iters = args.iterations;
                cfg.seed = args.seed_base + s;
                cfg.chaos_map = parse_chaos_map(args.chaos_map);
                const RunTrace trace = run_optimizer(kind, strategy, space, objective, cfg);
                runs.push_back(json{{"seed", cfg.seed},
                                    {"final_loss", trace.best_loss},
                                    {"evaluations", trace.evaluations},
                                    {"trace", trace.best_per_iter}});
                finals.push_back(trace.best_loss);
                total_seconds += trace.elapsed_seconds;
            }
            per_optimizer.push_back(json{{"name", name},
                                         {"runs", std::move(runs)},
                                         {"final_losses", finals},
                                         {"timing", {{"total_seconds", total_seconds}}}});
            final_losses.push_back(std::move(finals));
        }

        // Pairwise rank-sum matrix over the final losses.
        const std::size_t k = args.optimizers.size();
        json p_matrix = json::array();
        std::ostringstream wilcoxon_csv;
        wilcoxon_csv << "optimizer";
        for (const auto& name : args.optimizers) wilcoxon_csv << ',' << name;
        wilcoxon_csv << '\n';
        for (std::size_t i = 0; i < k; ++i) {
            json row = json::array();
            wilcoxon_csv << args.optimizers[i];
            for (std::size_t j = 0; j < k; ++j) {
                const double p =
                    wilcoxon_rank_sum(final_losses[i], final_losses[j]).p_value;
                row.push_back(p);
                wilcoxon_csv << ',' << format_double(p);
            }
            wilcoxon_csv << '\n';
            p_matrix.push_back(std::move(row));
        }

        json doc;
        doc["format_version"] = 1;
        doc["kind"] = "bench_report";
        doc["config_echo"] = {
            {"command", "bench"},       {"function", args.function},
            {"dim", args.dim},          {"optimizers", args.optimizers},
            {"seeds", args.seeds},      {"seed_base", args.seed_base},
            {"population", args.population}, {"iterations", args.iterations},
            {"chaos_map", args.chaos_map},
        };
        doc["bounds"] = {lo, hi};
        doc["optimizers"] = std::move(per_optimizer);
        doc["wilcoxon"] = {{"names", args.optimizers}, {"p_values", std::move(p_matrix)}};

        const std::filesystem::path out_dir(args.out_dir);
        write_text_atomic(out_dir / "bench.json", doc.dump(2));
        write_text_atomic(out_dir / "wilcoxon.csv", wilcoxon_csv.str());
        std::cout << "bench results written under " << args.out_dir << '\n';
    });
}

int run(int argc, const char* const* argv) {
    CLI::App app{"Two-phase X-ray detector: frozen convolutional features feeding a "
                 "chimp-tuned extreme learning machine"};
    app.require_subcommand(1);

    SynthArgs synth_args;
    auto* synth = app.add_subcommand("synth", "Generate the built-in synthetic dataset");
    synth->add_option("--out", synth_args.out_dir, "Output directory")->required();
    synth->add_option("--train-per-class", synth_args.train_per_class,
                      "Training images per class");
    synth->add_option("--test-per-class", synth_args.test_per_class, "Test images per class");
    synth->add_option("--size", synth_args.image_size, "Square image size in pixels");
    synth->add_option("--seed", synth_args.seed, "Generator seed");

    ExtractArgs extract_args;
    auto* extract =
        app.add_subcommand("extract", "Run the frozen extractor over a manifest of images");
    extract->add_option("--manifest", extract_args.manifest, "CSV manifest (path,label,split)")
        ->required();
    extract->add_option("--structure", extract_args.structure,
                        "Structure string, e.g. in_6c_2p_12c_2p");
    extract->add_option("--weights", extract_args.weights_file, "Frozen weight JSON file");
    extract->add_option("--weights-seed", extract_args.weights_seed,
                        "Seed for fresh frozen weights (when no --weights file)");
    extract->add_flag("--augment-train", extract_args.augment_train,
                      "Expand each training image x5 (flip + translations)");
    extract->add_option("--augment-seed", extract_args.augment_seed, "Augmentation seed");
    extract->add_option("--out", extract_args.out_file, "Output feature file")->required();

    TrainArgs train_args;
    auto* train = app.add_subcommand("train", "Tune the ELM head on extracted features");
    train->add_option("--features", train_args.features_file, "Feature file from extract")
        ->required();
    train->add_option("--optimizer", train_args.optimizer, "choa | ga | cs | woa | none");
    train->add_option("--choa-strategy", train_args.choa_strategy, "choa1 | choa2");
    train->add_option("--chaos-map", train_args.chaos_map,
                      "chebyshev | gauss | singer | bernoulli | sine | circle");
    train->add_option("--pop", train_args.population, "Population size");
    train->add_option("--iters", train_args.iterations, "Maximum iterations");
    train->add_option("--seed", train_args.seed, "Run seed");
    train->add_option("--hidden", train_args.n_hidden, "Hidden neurons");
    train->add_option("--target-loss", train_args.target_loss,
                      "Stop early at this training loss (negative disables)");
    train->add_option("--out", train_args.out_file, "Output model JSON")->required();

    EvalArgs eval_args;
    auto* eval = app.add_subcommand(
        "eval",
        "Score a trained model and emit the report.\n"
        "Writes into --out: report.json plus CSVs with one sweep point per row --\n"
        "  roc.csv:        threshold,fpr,tpr\n"
        "  pr.csv:         threshold,recall,precision\n"
        "  epg_hist.csv:   bin_lo,bin_hi,positives,negatives\n"
        "  thresholds.csv: threshold,tp,fn,fp,tn,sensitivity,specificity,precision,\n"
        "                  accuracy,f1,sensitivity_ci,specificity_ci");
    eval->add_option("--model", eval_args.model_file, "Model JSON from train")->required();
    eval->add_option("--features", eval_args.features_file, "Feature file from extract")
        ->required();
    eval->add_option("--thresholds", eval_args.thresholds, "Cut-off thresholds")
        ->delimiter(',');
    eval->add_option("--ci-p", eval_args.ci_p, "Confidence interval multiplier");
    eval->add_option("--split", eval_args.split, "test | train");
    eval->add_option("--out", eval_args.out_dir, "Report directory")->required();

    BenchArgs bench_args;
    auto* bench =
        app.add_subcommand("bench", "Compare optimizers on a benchmark function");
    bench->add_option("--function", bench_args.function, "sphere | rastrigin");
    bench->add_option("--dim", bench_args.dim, "Dimensions");
    bench->add_option("--optimizers", bench_args.optimizers,
                      "Comma-separated: choa1, choa2, ga, cs, woa, none")
        ->delimiter(',');
    bench->add_option("--seeds", bench_args.seeds, "Number of seeds");
    bench->add_option("--seed-base", bench_args.seed_base, "First seed value");
    bench->add_option("--pop", bench_args.population, "Population size");
    bench->add_option("--iters", bench_args.iterations, "Iterations per run");
    bench->add_option("--chaos-map", bench_args.chaos_map, "Chaotic map for ChOA");
    bench->add_option("--out", bench_args.out_dir, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsageError;
    }

    if (synth->parsed()) return cmd_synth(synth_args);
    if (extract->parsed()) return cmd_extract(extract_args);
    if (train->parsed()) return cmd_train(train_args);
    if (eval->parsed()) return cmd_eval(eval_args);
    if (bench->parsed()) return cmd_bench(bench_args);
    return kUsageError;
}

} // namespace choaelm::cli
