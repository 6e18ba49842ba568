#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"

namespace railplan {

using json = nlohmann::json;

class capacity_error : public std::runtime_error {
 public:
  explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

class no_valid_plan_error : public std::runtime_error {
 public:
  explicit no_valid_plan_error(const std::string& what) : std::runtime_error(what) {}
};

// LLM hyperparameters. Immutable after construction.
struct ModelSpec {
  std::int64_t hidden_size = 0;   // h
  std::int64_t seq_len = 0;       // s, tokens
  std::int64_t num_layers = 0;    // l, transformer blocks
  std::int64_t attn_heads = 0;    // a
  std::int64_t vocab_size = 0;    // V
  std::int64_t global_batch = 0;  // B, sequences
  std::int64_t elem_bytes = 2;    // bytes per element (16-bit mixed precision)
};

// Physical cluster. Bandwidths are bytes/second per GPU; latencies are the
// per-ring-step propagation delay in seconds.
struct ClusterSpec {
  std::int64_t n_gpus = 0;    // N
  std::int64_t hb_size = 0;   // K, GPUs per HB domain
  double hb_bw = 0.0;         // C_F
  double net_bw = 0.0;        // C_S
  double peak_flops = 0.0;    // F
  double mem_bytes = 0.0;     // R
  double hb_latency = 0.0;
  double net_latency = 0.0;
  double gamma = 2.5;         // attention slowdown factor
  double efficiency = 1.0;    // eta, multiplier on F
};

// A full PTD-P strategy. p_h*p_l = p etc.; the _h portion maps inside one HB
// domain and the _l portion across the network.
struct ParallelPlan {
  std::int64_t p = 1, t = 1, d = 1;
  std::int64_t p_h = 1, t_h = 1, d_h = 1;
  std::int64_t p_l = 1, t_l = 1, d_l = 1;
  std::int64_t v = 1;  // interleaved stages
  std::int64_t b = 1;  // micro-batch size
  std::int64_t m = 1;  // micro-batches per iteration

  friend bool operator==(const ParallelPlan&, const ParallelPlan&) = default;
};

inline auto plan_tuple(const ParallelPlan& pl) {
  return std::tuple(pl.p, pl.t, pl.d, pl.p_h, pl.t_h, pl.d_h, pl.v, pl.b);
}

enum class Constraint {
  TotalGpus,          // p*d*t = N
  HbDomain,           // d_h*t_h*p_h = K
  MicrobatchProduct,  // m*b = B/d
  DpSplit,            // d_l*d_h = d
  TpSplit,            // t_l*t_h = t
  PpSplit,            // p_l*p_h = p
  Positivity,         // all degrees positive integers
  IntegerRatios,      // l/(p*v), s/t, h/t, B/d integral
  MemoryCapacity,     // per-GPU footprint <= R
};

inline const char* constraint_name(Constraint c) {
  switch (c) {
    case Constraint::TotalGpus: return "total_gpus";
    case Constraint::HbDomain: return "hb_domain";
    case Constraint::MicrobatchProduct: return "microbatch_product";
    case Constraint::DpSplit: return "dp_split";
    case Constraint::TpSplit: return "tp_split";
    case Constraint::PpSplit: return "pp_split";
    case Constraint::Positivity: return "positivity";
    case Constraint::IntegerRatios: return "integer_ratios";
    case Constraint::MemoryCapacity: return "memory_capacity";
  }
  return "?";
}

struct ConstraintViolation {
  Constraint id;
  std::string message;
  double observed = 0.0;
  double required = 0.0;
};

inline void ensure_valid(const ModelSpec& m) {
  auto pos = [](std::int64_t v, const char* name) {
    if (v <= 0) throw std::invalid_argument(std::string("ModelSpec.") + name + " must be positive");
  };
  pos(m.hidden_size, "hidden_size");
  pos(m.seq_len, "seq_len");
  pos(m.num_layers, "num_layers");
  pos(m.attn_heads, "attn_heads");
  pos(m.vocab_size, "vocab_size");
  pos(m.global_batch, "global_batch");
  pos(m.elem_bytes, "elem_bytes");
  if (m.hidden_size % m.attn_heads != 0)
    throw std::invalid_argument("ModelSpec: attn_heads must divide hidden_size");
}

inline void ensure_valid(const ClusterSpec& c) {
  if (c.n_gpus <= 0 || c.hb_size <= 0)
    throw std::invalid_argument("ClusterSpec: n_gpus and hb_size must be positive");
  if (c.n_gpus % c.hb_size != 0)
    throw std::invalid_argument("ClusterSpec: hb_size must divide n_gpus");
  if (!(c.net_bw > 0.0) || c.hb_bw < c.net_bw)
    throw std::invalid_argument("ClusterSpec: requires hb_bw >= net_bw > 0");
  if (!(c.peak_flops > 0.0) || !(c.mem_bytes > 0.0))
    throw std::invalid_argument("ClusterSpec: peak_flops and mem_bytes must be positive");
  if (c.hb_latency < 0.0 || c.net_latency < 0.0)
    throw std::invalid_argument("ClusterSpec: latencies must be non-negative");
  if (!(c.efficiency > 0.0) || c.efficiency > 1.0)
    throw std::invalid_argument("ClusterSpec: efficiency must be in (0, 1]");
  if (c.gamma < 1.0) throw std::invalid_argument("ClusterSpec: gamma must be >= 1");
}

// Declared here, defined in compute.hpp; validate_plan delegates the memory
// constraint to the compute model.
double memory_per_gpu(const ModelSpec& model, const ParallelPlan& plan);

// Checks the full constraint system. Returns one violation per failed
// constraint; an empty list means the plan is valid. Never throws: validation
// is the point, so any field combination is accepted.
inline std::vector<ConstraintViolation> validate_plan(const ParallelPlan& pl,
                                                      const ModelSpec& model,
                                                      const ClusterSpec& cluster) {
  std::vector<ConstraintViolation> out;
  auto add = [&](Constraint id, std::string msg, double obs, double req) {
    out.push_back({id, std::move(msg), obs, req});
  };

  const std::int64_t fields[] = {pl.p,   pl.t,   pl.d,   pl.p_h, pl.t_h, pl.d_h,
                                 pl.p_l, pl.t_l, pl.d_l, pl.v,   pl.b,   pl.m};
  for (std::int64_t f : fields) {
    if (f <= 0) {
      add(Constraint::Positivity, "all plan fields must be positive integers",
          static_cast<double>(f), 1.0);
      return out;  // remaining checks would divide by zero
    }
  }

  if (pl.p * pl.d * pl.t != cluster.n_gpus)
    add(Constraint::TotalGpus, "p*d*t must equal the GPU count",
        static_cast<double>(pl.p * pl.d * pl.t), static_cast<double>(cluster.n_gpus));
  if (pl.d_h * pl.t_h * pl.p_h != cluster.hb_size)
    add(Constraint::HbDomain, "d_h*t_h*p_h must equal the HB domain size",
        static_cast<double>(pl.d_h * pl.t_h * pl.p_h), static_cast<double>(cluster.hb_size));
  if (pl.d_l * pl.d_h != pl.d)
    add(Constraint::DpSplit, "d_l*d_h must equal d",
        static_cast<double>(pl.d_l * pl.d_h), static_cast<double>(pl.d));
  if (pl.t_l * pl.t_h != pl.t)
    add(Constraint::TpSplit, "t_l*t_h must equal t",
        static_cast<double>(pl.t_l * pl.t_h), static_cast<double>(pl.t));
  if (pl.p_l * pl.p_h != pl.p)
    add(Constraint::PpSplit, "p_l*p_h must equal p",
        static_cast<double>(pl.p_l * pl.p_h), static_cast<double>(pl.p));

  // exact integer arithmetic throughout; no float division here
  if (model.global_batch % pl.d != 0) {
    add(Constraint::IntegerRatios, "B/d must be integral",
        static_cast<double>(model.global_batch), static_cast<double>(pl.d));
  } else if (pl.m * pl.b != model.global_batch / pl.d) {
    add(Constraint::MicrobatchProduct, "m*b must equal B/d",
        static_cast<double>(pl.m * pl.b), static_cast<double>(model.global_batch / pl.d));
  }
  if (model.num_layers % (pl.p * pl.v) != 0)
    add(Constraint::IntegerRatios, "l/(p*v) must be integral",
        static_cast<double>(model.num_layers), static_cast<double>(pl.p * pl.v));
  if (model.seq_len % pl.t != 0)
    add(Constraint::IntegerRatios, "s/t must be integral",
        static_cast<double>(model.seq_len), static_cast<double>(pl.t));
  if (model.hidden_size % pl.t != 0)
    add(Constraint::IntegerRatios, "h/t must be integral",
        static_cast<double>(model.hidden_size), static_cast<double>(pl.t));

  if (pl.p * pl.v <= model.num_layers && model.num_layers % (pl.p * pl.v) == 0) {
    const double mem = memory_per_gpu(model, pl);
    if (mem > cluster.mem_bytes)
      add(Constraint::MemoryCapacity, "per-GPU memory footprint exceeds R", mem,
          cluster.mem_bytes);
  }
  return out;
}

// --- JSON (strict: unknown keys rejected) ---

namespace detail {
inline void expect_keys(const json& j, const char* type,
                        std::initializer_list<const char*> required,
                        std::initializer_list<const char*> optional) {
  if (!j.is_object()) throw std::invalid_argument(std::string(type) + ": expected JSON object");
  for (const char* k : required)
    if (!j.contains(k))
      throw std::invalid_argument(std::string(type) + ": missing required key '" + k + "'");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : required) known = known || it.key() == k;
    for (const char* k : optional) known = known || it.key() == k;
    if (!known)
      throw std::invalid_argument(std::string(type) + ": unknown key '" + it.key() + "'");
  }
}
}  // namespace detail

inline void to_json(json& j, const ModelSpec& m) {
  j = json{{"hidden_size", m.hidden_size}, {"seq_len", m.seq_len},
           {"num_layers", m.num_layers},   {"attn_heads", m.attn_heads},
           {"vocab_size", m.vocab_size},   {"global_batch", m.global_batch},
           {"elem_bytes", m.elem_bytes}};
}

inline void from_json(const json& j, ModelSpec& m) {
  detail::expect_keys(j, "ModelSpec",
                      {"hidden_size", "seq_len", "num_layers", "attn_heads", "vocab_size",
                       "global_batch"},
                      {"elem_bytes"});
  j.at("hidden_size").get_to(m.hidden_size);
  j.at("seq_len").get_to(m.seq_len);
  j.at("num_layers").get_to(m.num_layers);
  j.at("attn_heads").get_to(m.attn_heads);
  j.at("vocab_size").get_to(m.vocab_size);
  j.at("global_batch").get_to(m.global_batch);
  m.elem_bytes = j.value("elem_bytes", std::int64_t{2});
  ensure_valid(m);
}

inline void to_json(json& j, const ClusterSpec& c) {
  j = json{{"n_gpus", c.n_gpus},         {"hb_size", c.hb_size},
           {"hb_bw", c.hb_bw},           {"net_bw", c.net_bw},
           {"peak_flops", c.peak_flops}, {"mem_bytes", c.mem_bytes},
           {"hb_latency", c.hb_latency}, {"net_latency", c.net_latency},
           {"gamma", c.gamma},           {"efficiency", c.efficiency}};
}

inline void from_json(const json& j, ClusterSpec& c) {
  detail::expect_keys(j, "ClusterSpec",
                      {"n_gpus", "hb_size", "hb_bw", "net_bw", "peak_flops", "mem_bytes"},
                      {"hb_latency", "net_latency", "gamma", "efficiency"});
  j.at("n_gpus").get_to(c.n_gpus);
  j.at("hb_size").get_to(c.hb_size);
  j.at("hb_bw").get_to(c.hb_bw);
  j.at("net_bw").get_to(c.net_bw);
  j.at("peak_flops").get_to(c.peak_flops);
  j.at("mem_bytes").get_to(c.mem_bytes);
  c.hb_latency = j.value("hb_latency", 0.0);
  c.net_latency = j.value("net_latency", 0.0);
  c.gamma = j.value("gamma", 2.5);
  c.efficiency = j.value("efficiency", 1.0);
  ensure_valid(c);
}

inline void to_json(json& j, const ParallelPlan& p) {
  j = json{{"p", p.p},     {"t", p.t},     {"d", p.d},     {"p_h", p.p_h},
           {"t_h", p.t_h}, {"d_h", p.d_h}, {"p_l", p.p_l}, {"t_l", p.t_l},
           {"d_l", p.d_l}, {"v", p.v},     {"b", p.b},     {"m", p.m}};
}

inline void from_json(const json& j, ParallelPlan& p) {
  detail::expect_keys(j, "ParallelPlan",
                      {"p", "t", "d", "p_h", "t_h", "d_h", "p_l", "t_l", "d_l", "v", "b", "m"},
                      {});
  j.at("p").get_to(p.p);
  j.at("t").get_to(p.t);
  j.at("d").get_to(p.d);
  j.at("p_h").get_to(p.p_h);
  j.at("t_h").get_to(p.t_h);
  j.at("d_h").get_to(p.d_h);
  j.at("p_l").get_to(p.p_l);
  j.at("t_l").get_to(p.t_l);
  j.at("d_l").get_to(p.d_l);
  j.at("v").get_to(p.v);
  j.at("b").get_to(p.b);
  j.at("m").get_to(p.m);
}

}  // namespace railplan
