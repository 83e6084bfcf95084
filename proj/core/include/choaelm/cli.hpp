#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace choaelm::cli {

// Process exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kUsageError = 2;
inline constexpr int kDataError = 3;
inline constexpr int kNumericError = 4;

struct SynthArgs {
    std::string out_dir;
    std::size_t train_per_class = 100;
    std::size_t test_per_class = 100;
    std::size_t image_size = 40;
    std::uint64_t seed = 7;
};

struct ExtractArgs {
    std::string manifest;
    std::string structure = "in_6c_2p_12c_2p";
    std::string weights_file; // empty -> seeded
    std::uint64_t weights_seed = 17;
    bool augment_train = false;
    std::uint64_t augment_seed = 17;
    std::string out_file;
};

struct TrainArgs {
    std::string features_file;
    std::string optimizer = "choa";
    std::string choa_strategy = "choa1";
    std::string chaos_map = "gauss";
    std::size_t population = 50;
    std::size_t iterations = 10;
    std::uint64_t seed = 1;
    std::size_t n_hidden = 120;
    double target_loss = -1.0; // < 0 disables the loss stop
    std::string out_file;
};

struct EvalArgs {
    std::string model_file;
    std::string features_file;
    std::vector<double> thresholds = {0.1, 0.2, 0.3, 0.4};
    double ci_p = 1.96;
    std::string split = "test";
    std::string out_dir;
};

struct BenchArgs {
    std::string function = "sphere";
    std::size_t dim = 5;
    std::vector<std::string> optimizers = {"choa1", "choa2", "ga", "cs", "woa"};
    std::size_t seeds = 10;
    std::uint64_t seed_base = 1;
    std::size_t population = 50;
    std::size_t iterations = 200;
    std::string chaos_map = "gauss";
    std::string out_dir;
};

int cmd_synth(const SynthArgs& args);
int cmd_extract(const ExtractArgs& args);
int cmd_train(const TrainArgs& args);
int cmd_eval(const EvalArgs& args);
int cmd_bench(const BenchArgs& args);

/// Parse argv and dispatch; returns the process exit code.
int run(int argc, const char* const* argv);

} // namespace choaelm::cli
