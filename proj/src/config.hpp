#ifndef DIGMOL_CONFIG_HPP
#define DIGMOL_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "augment.hpp"
#include "contrastive.hpp"
#include "encoder.hpp"
#include "run_config.hpp"

namespace digmol {

struct PretrainConfig {
    std::int64_t epochs = 100;
    std::size_t batch_size = 32;
    double lr0 = 0.001;
    LossWeights weights;  // alpha=beta=gamma=1, tau=0.1
    double momentum = 0.8;
    AugmentConfig augment;  // ratios 0.25, seed mirrors `seed`
    std::uint64_t seed = 0;
    EncoderArchitecture arch;
    EncoderMode mode = EncoderMode::diffusion;

    // Applies defaults for absent keys; their names are appended to
    // `defaulted` when the caller wants to log them.
    static PretrainConfig from_config(const RunConfig& config,
                                      std::vector<std::string>* defaulted = nullptr);
    RunConfig to_config() const;
    void validate() const;
};

struct FinetuneConfig {
    std::int64_t epochs = 100;
    std::size_t batch_size = 32;
    double lr = 0.001;
    double dropout = 0.0;
    std::size_t head_hidden = 64;  // emb_dim key
    std::uint64_t seed = 0;

    static FinetuneConfig from_config(const RunConfig& config,
                                      std::vector<std::string>* defaulted = nullptr);
    RunConfig to_config() const;
    void validate() const;
};

}  // namespace digmol

#endif
