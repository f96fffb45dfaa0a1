#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "ecpid/types.hpp"

namespace ecpid {

/// Untrained feedforward network mapping the 6-component controller input
/// I_rho to a 3-component parameter vector rho. Weights are drawn once at
/// construction from a seeded PRNG and are never adapted afterwards.
///
/// Hidden layers use tanh. The output layer is linear followed by a smooth
/// saturation to [-output_scale, +output_scale]:
///
///   squash(z, s) = s * tanh(z / s)
///
/// which degenerates to the zero map at s = 0 and to the identity at
/// s = +inf (squashing disabled).
struct MlpNetwork {
  std::vector<int> layer_sizes;       // e.g. {6, 16, 16, 3}
  std::vector<MatXd> weights;         // weights[l] is (out x in) for layer l
  std::vector<VecXd> biases;          // zero at init, kept for completeness
  std::uint64_t seed = 0;
  double output_scale = 0.1;          // rho component bound

  int input_size() const { return layer_sizes.front(); }
  int output_size() const { return layer_sizes.back(); }
};

/// Identifier of the weight init scheme, echoed into output metadata so a run
/// can be reproduced: mt19937_64 engine, 53-bit mantissa uniforms in [0, 1),
/// weights uniform(-1/sqrt(fan_in), +1/sqrt(fan_in)) drawn layer by layer in
/// row-major order, biases zero.
inline constexpr const char* kWeightInitScheme = "mt19937_64/u53/uniform-fanin";
inline constexpr const char* kHiddenActivation = "tanh";

namespace detail {

// Uniform in [0, 1) from the top 53 bits of the engine output. Avoids
// std::uniform_real_distribution, whose mapping is implementation-defined.
inline double next_unit_uniform(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

inline double squash(double z, double scale) {
  if (scale == 0.0) return 0.0;
  if (std::isinf(scale)) return z;
  return scale * std::tanh(z / scale);
}

}  // namespace detail

/// Builds an untrained network. First width must be 6 and last must be 3;
/// every width must be >= 1.
inline MlpNetwork init_network(const std::vector<int>& layer_sizes, std::uint64_t seed) {
  if (layer_sizes.size() < 2)
    throw std::invalid_argument("init_network: need at least input and output layers");
  if (layer_sizes.front() != 6)
    throw std::invalid_argument("init_network: input width must be 6");
  if (layer_sizes.back() != 3)
    throw std::invalid_argument("init_network: output width must be 3");
  for (int w : layer_sizes)
    if (w < 1) throw std::invalid_argument("init_network: layer widths must be >= 1");

  MlpNetwork net;
  net.layer_sizes = layer_sizes;
  net.seed = seed;
  std::mt19937_64 engine(seed);
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    const int fan_in = layer_sizes[l];
    const int fan_out = layer_sizes[l + 1];
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    MatXd w(fan_out, fan_in);
    for (int r = 0; r < fan_out; ++r)
      for (int c = 0; c < fan_in; ++c)
        w(r, c) = (2.0 * detail::next_unit_uniform(engine) - 1.0) * bound;
    net.weights.push_back(std::move(w));
    net.biases.push_back(VecXd::Zero(fan_out));
  }
  return net;
}

/// Forward pass. Hidden layers apply tanh element-wise; the final layer is
/// linear and then squashed to [-output_scale, +output_scale].
inline Vec3d mlp_forward(const MlpNetwork& net, const Eigen::Ref<const VecXd>& input) {
  if (input.size() != net.input_size())
    throw std::invalid_argument("mlp_forward: input length mismatch");
  if (!input.allFinite())
    throw std::invalid_argument("mlp_forward: non-finite input");

  VecXd x = input;
  const std::size_t n_layers = net.weights.size();
  for (std::size_t l = 0; l + 1 < n_layers; ++l)
    x = (net.weights[l] * x + net.biases[l]).array().tanh();
  VecXd z = net.weights[n_layers - 1] * x + net.biases[n_layers - 1];

  Vec3d out;
  for (int i = 0; i < 3; ++i) out[i] = detail::squash(z[i], net.output_scale);
  return out;
}

}  // namespace ecpid
