#ifndef DIGMOL_MOMENTUM_HPP
#define DIGMOL_MOMENTUM_HPP

#include <cstdint>

#include "encoder.hpp"

namespace digmol {

// Online network theta trains by gradient; target network xi only ever
// moves through momentum_update and never sees a gradient.
struct NetworkPair {
    EncoderParams online;
    EncoderParams target;
    double momentum = 0.8;
    std::int64_t step = 0;
};

// Random online parameters, target as an exact deep copy.
NetworkPair init_pair(const EncoderArchitecture& arch, double momentum, std::uint64_t seed);

// xi <- m * xi + (1 - m) * theta, elementwise; call once per optimizer step.
void momentum_update(NetworkPair& pair);

}  // namespace digmol

#endif
