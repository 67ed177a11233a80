#include "momentum.hpp"

#include <vector>

#include "error.hpp"

namespace digmol {

NetworkPair init_pair(const EncoderArchitecture& arch, double momentum, std::uint64_t seed) {
    NetworkPair pair;
    RngStream rng = RngStream(seed).substream(0x70617261);  // parameter stream
    pair.online = init_encoder(arch, rng);
    pair.target = pair.online;
    pair.momentum = momentum;
    pair.step = 0;
    return pair;
}

void momentum_update(NetworkPair& pair) {
    std::vector<Matrix*> online;
    for_each_parameter(pair.online, [&](const std::string&, Matrix& m) { online.push_back(&m); });
    std::size_t at = 0;
    double m = pair.momentum;
    for_each_parameter(pair.target, [&](const std::string& name, Matrix& target) {
        if (at >= online.size() || !target.same_shape(*online[at])) {
            throw Error(ErrorCode::shape_drift, "online/target parameter shapes diverged: " + name);
        }
        const Matrix& theta = *online[at++];
        for (std::size_t i = 0; i < target.size(); ++i) {
            target.data()[i] = m * target.data()[i] + (1.0 - m) * theta.data()[i];
        }
    });
    if (at != online.size()) {
        throw Error(ErrorCode::shape_drift, "online/target parameter counts diverged");
    }
    pair.step += 1;
}

}  // namespace digmol
