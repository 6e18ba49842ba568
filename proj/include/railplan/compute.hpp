#pragma once

#include <cstdint>

#include "railplan/model.hpp"

namespace railplan {

// Per-iteration FLOPs over the whole global batch, split into GEMM-bound
// feed-forward work and attention-score work. Selective activation
// recomputation is folded in: one extra forward pass of the attention scores.
struct FlopBreakdown {
  double ff = 0.0;    // M_FF
  double attn = 0.0;  // M_Attn
};

// Parameters per transformer block: QKV + output projections 4h^2, MLP 8h^2,
// biases and norms 13h.
inline std::int64_t transformer_param_count(const ModelSpec& m) {
  return 12 * m.hidden_size * m.hidden_size + 13 * m.hidden_size;
}

// 2 FLOPs per multiply-accumulate. Forward GEMMs are 24Bsh^2 per layer plus
// the 2BshV logit layer; backward doubles everything; selective recompute
// re-runs only the 4Bs^2h attention-score forward.
inline FlopBreakdown iteration_flops(const ModelSpec& m) {
  const double B = static_cast<double>(m.global_batch);
  const double s = static_cast<double>(m.seq_len);
  const double l = static_cast<double>(m.num_layers);
  const double h = static_cast<double>(m.hidden_size);
  const double V = static_cast<double>(m.vocab_size);
  FlopBreakdown f;
  f.ff = 72.0 * B * s * l * h * h + 6.0 * B * s * h * V;
  f.attn = 16.0 * B * s * s * h * l;
  return f;
}

// Forward+backward compute time of one micro-batch on one GPU:
// t(b) = (M_FF + gamma*M_Attn)*b / (eta*F*B*p*t).
inline double microbatch_time(const ModelSpec& m, const ClusterSpec& c, const ParallelPlan& pl) {
  const FlopBreakdown f = iteration_flops(m);
  const double denom = c.efficiency * c.peak_flops * static_cast<double>(m.global_batch) *
                       static_cast<double>(pl.p) * static_cast<double>(pl.t);
  return (f.ff + c.gamma * f.attn) * static_cast<double>(pl.b) / denom;
}

// First-stage footprint, the binding one: 16 bytes per parameter (16-bit
// weights + grads, fp32 master copy and Adam moments) plus 34*s*b*h bytes per
// layer of activations under selective recomputation, scaled by the
// interleaving factor 1 + (p-1)/(p*v).
inline double memory_per_gpu(const ModelSpec& m, const ParallelPlan& pl) {
  const double st = static_cast<double>(transformer_param_count(m));
  const double layers_per_stage = static_cast<double>(m.num_layers) / static_cast<double>(pl.p);
  const double weights = 16.0 * layers_per_stage * st / static_cast<double>(pl.t);
  const double interleave_factor =
      1.0 + static_cast<double>(pl.p - 1) / (static_cast<double>(pl.p) * static_cast<double>(pl.v));
  const double act = 34.0 * static_cast<double>(m.seq_len) * static_cast<double>(pl.b) *
                     static_cast<double>(m.hidden_size) * layers_per_stage /
                     static_cast<double>(pl.t) * interleave_factor;
  return weights + act;
}

}  // namespace railplan
