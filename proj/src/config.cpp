#include "config.hpp"

#include "error.hpp"

namespace digmol {
namespace {

struct DefaultTracker {
    const RunConfig& config;
    std::vector<std::string>* defaulted;

    void note(const std::string& key) const {
        if (!config.has(key) && defaulted) defaulted->push_back(key);
    }
};

}  // namespace

PretrainConfig PretrainConfig::from_config(const RunConfig& config,
                                           std::vector<std::string>* defaulted) {
    PretrainConfig out;
    DefaultTracker track{config, defaulted};
    auto get_d = [&](const char* key, double fallback) {
        track.note(key);
        return config.get_double(key, fallback);
    };
    auto get_i = [&](const char* key, std::int64_t fallback) {
        track.note(key);
        return config.get_int(key, fallback);
    };
    out.epochs = get_i("epochs", out.epochs);
    out.batch_size = static_cast<std::size_t>(get_i("batch_size", static_cast<std::int64_t>(out.batch_size)));
    out.lr0 = get_d("lr", out.lr0);
    out.weights.alpha = get_d("alpha", out.weights.alpha);
    out.weights.beta = get_d("beta", out.weights.beta);
    out.weights.gamma = get_d("gamma", out.weights.gamma);
    out.weights.tau = get_d("temperature", out.weights.tau);
    out.momentum = get_d("momentum", out.momentum);
    out.augment.mask_ratio = get_d("mask_ratio", out.augment.mask_ratio);
    out.augment.unidir_delete_ratio = get_d("unidir_ratio", out.augment.unidir_delete_ratio);
    track.note("seed");
    out.seed = config.get_uint("seed", out.seed);
    out.augment.seed = out.seed;
    out.arch.num_layers = static_cast<std::size_t>(get_i("num_layer", static_cast<std::int64_t>(out.arch.num_layers)));
    out.arch.k_steps = static_cast<int>(get_i("k_steps", out.arch.k_steps));
    out.arch.epsilon = get_d("epsilon", out.arch.epsilon);
    out.arch.hidden_dim = static_cast<std::size_t>(get_i("emb_dim", static_cast<std::int64_t>(out.arch.hidden_dim)));
    out.arch.projection_dim = static_cast<std::size_t>(get_i("proj_dim", static_cast<std::int64_t>(out.arch.projection_dim)));
    track.note("encoder_mode");
    std::string mode = config.get_string("encoder_mode", "diffusion");
    if (mode == "diffusion") {
        out.mode = EncoderMode::diffusion;
    } else if (mode == "gcn") {
        out.mode = EncoderMode::gcn_ablation;
    } else {
        throw Error(ErrorCode::invalid_config, "encoder_mode must be diffusion or gcn");
    }
    out.validate();
    return out;
}

RunConfig PretrainConfig::to_config() const {
    RunConfig config;
    config.set_int("epochs", epochs);
    config.set_int("batch_size", static_cast<std::int64_t>(batch_size));
    config.set_double("lr", lr0);
    config.set_double("alpha", weights.alpha);
    config.set_double("beta", weights.beta);
    config.set_double("gamma", weights.gamma);
    config.set_double("temperature", weights.tau);
    config.set_double("momentum", momentum);
    config.set_double("mask_ratio", augment.mask_ratio);
    config.set_double("unidir_ratio", augment.unidir_delete_ratio);
    config.set_uint("seed", seed);
    config.set_int("num_layer", static_cast<std::int64_t>(arch.num_layers));
    config.set_int("k_steps", arch.k_steps);
    config.set_double("epsilon", arch.epsilon);
    config.set_int("emb_dim", static_cast<std::int64_t>(arch.hidden_dim));
    config.set_int("proj_dim", static_cast<std::int64_t>(arch.projection_dim));
    config.set("encoder_mode", mode == EncoderMode::diffusion ? "diffusion" : "gcn");
    return config;
}

void PretrainConfig::validate() const {
    if (epochs < 1) throw Error(ErrorCode::invalid_config, "epochs must be >= 1");
    if (batch_size < 2) {
        throw Error(ErrorCode::invalid_config, "batch_size must be >= 2 (NT-Xent needs negatives)");
    }
    if (lr0 <= 0.0) throw Error(ErrorCode::invalid_config, "lr must be positive");
    if (weights.tau <= 0.0) throw Error(ErrorCode::invalid_config, "temperature must be positive");
    if (momentum < 0.0 || momentum > 1.0) {
        throw Error(ErrorCode::invalid_config, "momentum must lie in [0, 1]");
    }
    if (augment.mask_ratio < 0.0 || augment.mask_ratio > 1.0 ||
        augment.unidir_delete_ratio < 0.0 || augment.unidir_delete_ratio > 1.0) {
        throw Error(ErrorCode::invalid_config, "augmentation ratios must lie in [0, 1]");
    }
    if (weights.alpha < 0.0 || weights.beta < 0.0 || weights.gamma < 0.0 ||
        (weights.alpha == 0.0 && weights.beta == 0.0 && weights.gamma == 0.0)) {
        throw Error(ErrorCode::invalid_config, "loss weights must be nonnegative, not all zero");
    }
    if (arch.num_layers < 1 || arch.k_steps < 1) {
        throw Error(ErrorCode::invalid_config, "need num_layer >= 1 and k_steps >= 1");
    }
    if (arch.epsilon < 0.0 || arch.epsilon > 1.0) {
        throw Error(ErrorCode::invalid_config, "epsilon must lie in [0, 1]");
    }
    if (arch.hidden_dim < 1 || arch.projection_dim < 1) {
        throw Error(ErrorCode::invalid_config, "emb_dim and proj_dim must be >= 1");
    }
}

FinetuneConfig FinetuneConfig::from_config(const RunConfig& config,
                                           std::vector<std::string>* defaulted) {
    FinetuneConfig out;
    DefaultTracker track{config, defaulted};
    track.note("epochs");
    out.epochs = config.get_int("epochs", out.epochs);
    track.note("batch_size");
    out.batch_size = static_cast<std::size_t>(
        config.get_int("batch_size", static_cast<std::int64_t>(out.batch_size)));
    track.note("lr");
    out.lr = config.get_double("lr", out.lr);
    track.note("dropout");
    out.dropout = config.get_double("dropout", out.dropout);
    track.note("emb_dim");
    out.head_hidden = static_cast<std::size_t>(
        config.get_int("emb_dim", static_cast<std::int64_t>(out.head_hidden)));
    track.note("seed");
    out.seed = config.get_uint("seed", out.seed);
    out.validate();
    return out;
}

RunConfig FinetuneConfig::to_config() const {
    RunConfig config;
    config.set_int("epochs", epochs);
    config.set_int("batch_size", static_cast<std::int64_t>(batch_size));
    config.set_double("lr", lr);
    config.set_double("dropout", dropout);
    config.set_int("emb_dim", static_cast<std::int64_t>(head_hidden));
    config.set_uint("seed", seed);
    return config;
}

void FinetuneConfig::validate() const {
    if (epochs < 0) throw Error(ErrorCode::invalid_config, "epochs must be >= 0");
    if (batch_size < 1) throw Error(ErrorCode::invalid_config, "batch_size must be >= 1");
    if (lr <= 0.0) throw Error(ErrorCode::invalid_config, "lr must be positive");
    if (dropout < 0.0 || dropout >= 1.0) {
        throw Error(ErrorCode::invalid_config, "dropout must lie in [0, 1)");
    }
    if (head_hidden < 1) throw Error(ErrorCode::invalid_config, "emb_dim must be >= 1");
}

}  // namespace digmol
