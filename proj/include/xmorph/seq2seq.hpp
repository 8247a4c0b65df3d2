#pragma once

// From-scratch sequence-to-sequence disambiguator: token embeddings, a
// 2-layer bidirectional recurrent encoder, a 2-layer recurrent decoder with
// general global attention (score = h_t^T W_a h_s, attentional state
// h~ = tanh(W_c [c_t; h_t] + b_c)), teacher-forced cross-entropy training
// with a hand-written backward pass, and greedy decoding. Everything is
// 64-bit floats and seeded, so identical (seed, data, config) reproduce
// every parameter and every output bit-exactly.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "xmorph/errors.hpp"
#include "xmorph/linalg.hpp"
#include "xmorph/rng.hpp"
#include "xmorph/vocab.hpp"

namespace xmorph {

struct model_config {
  enum class cell_t : std::uint32_t { lstm = 0, gru = 1 };

  std::size_t emb_dim = 64;
  std::size_t hidden_dim = 128;
  std::size_t enc_layers = 2;
  std::size_t dec_layers = 2;
  cell_t cell = cell_t::lstm;
  std::size_t max_src_len = 256;
  std::size_t max_tgt_len = 256;
  std::uint64_t seed = 1;
};

inline void validate(const model_config& cfg) {
  if (cfg.emb_dim == 0 || cfg.hidden_dim == 0 || cfg.enc_layers == 0 ||
      cfg.dec_layers == 0 || cfg.max_src_len == 0 || cfg.max_tgt_len == 0)
    throw dimension_mismatch_error("model dimensions must be positive");
  // Decoder layer l is initialized from encoder layer l's final states.
  if (cfg.enc_layers != cfg.dec_layers)
    throw dimension_mismatch_error("encoder and decoder layer counts must match");
}

struct train_config {
  enum class optimizer_t { sgd, adam };

  std::size_t steps = 3000;
  std::size_t batch_size = 16;
  optimizer_t optimizer = optimizer_t::sgd;
  double lr = 1.0;        // conventional choice for adam is 0.001
  double grad_clip = 5.0; // global norm bound
};

// One recurrent cell: pre-activation = W x + U h_prev + b. LSTM rows are
// [input; forget; candidate; output] gates, GRU rows [reset; update;
// candidate]. The GRU candidate applies the reset gate inside U:
// n = tanh(W_n x + r * (U_n h_prev) + b_n), h = (1-z)*n + z*h_prev,
// so the update gate z carries the previous state.
struct cell_tensors {
  matrix w;  // gates*H x input_dim
  matrix u;  // gates*H x H
  matrix b;  // gates*H x 1
};

// Every learned tensor, in checkpoint order. The bidirectional encoder
// stores cells layer-major (enc[2*layer + direction], direction 0 forward).
// fuse_* projects each layer's concatenated direction states (2H) back to H,
// feeding the next layer and the attention memory (top layer). init_* maps
// the concatenated final raw states of encoder layer l to decoder layer l's
// initial state; LSTM cell states get their own projection.
struct model_tensors {
  matrix src_emb, tgt_emb;
  std::vector<cell_tensors> enc;
  std::vector<matrix> fuse_w, fuse_b;
  std::vector<matrix> init_h_w, init_h_b;
  std::vector<matrix> init_c_w, init_c_b;  // lstm only
  std::vector<cell_tensors> dec;
  matrix w_a;
  matrix w_c, b_c;
  matrix w_out, b_out;

  template <typename Self, typename F>
  static void visit(Self& self, F&& f) {
    f("src_emb", self.src_emb);
    f("tgt_emb", self.tgt_emb);
    for (std::size_t i = 0; i < self.enc.size(); ++i) {
      const std::string tag =
          "enc[" + std::to_string(i / 2) + "]." + (i % 2 ? "bwd" : "fwd");
      f((tag + ".w").c_str(), self.enc[i].w);
      f((tag + ".u").c_str(), self.enc[i].u);
      f((tag + ".b").c_str(), self.enc[i].b);
    }
    for (std::size_t l = 0; l < self.fuse_w.size(); ++l) {
      const std::string tag = "fuse[" + std::to_string(l) + "]";
      f((tag + ".w").c_str(), self.fuse_w[l]);
      f((tag + ".b").c_str(), self.fuse_b[l]);
    }
    for (std::size_t l = 0; l < self.init_h_w.size(); ++l) {
      const std::string tag = "init_h[" + std::to_string(l) + "]";
      f((tag + ".w").c_str(), self.init_h_w[l]);
      f((tag + ".b").c_str(), self.init_h_b[l]);
    }
    for (std::size_t l = 0; l < self.init_c_w.size(); ++l) {
      const std::string tag = "init_c[" + std::to_string(l) + "]";
      f((tag + ".w").c_str(), self.init_c_w[l]);
      f((tag + ".b").c_str(), self.init_c_b[l]);
    }
    for (std::size_t l = 0; l < self.dec.size(); ++l) {
      const std::string tag = "dec[" + std::to_string(l) + "]";
      f((tag + ".w").c_str(), self.dec[l].w);
      f((tag + ".u").c_str(), self.dec[l].u);
      f((tag + ".b").c_str(), self.dec[l].b);
    }
    f("w_a", self.w_a);
    f("w_c", self.w_c);
    f("b_c", self.b_c);
    f("w_out", self.w_out);
    f("b_out", self.b_out);
  }

  template <typename F>
  void for_each(F&& f) {
    visit(*this, std::forward<F>(f));
  }
  template <typename F>
  void for_each(F&& f) const {
    visit(*this, std::forward<F>(f));
  }
};

struct seq2seq_model {
  model_config cfg;
  vocabulary src_vocab;
  vocabulary tgt_vocab;
  model_tensors p;

  std::size_t gates() const {
    return cfg.cell == model_config::cell_t::lstm ? 4 : 3;
  }
};

namespace detail {

inline model_tensors make_tensors(const model_config& cfg, std::size_t src_v,
                                  std::size_t tgt_v) {
  const std::size_t h = cfg.hidden_dim;
  const std::size_t e = cfg.emb_dim;
  const std::size_t g =
      (cfg.cell == model_config::cell_t::lstm ? 4 : 3) * h;
  model_tensors t;
  t.src_emb = matrix(src_v, e);
  t.tgt_emb = matrix(tgt_v, e);
  for (std::size_t l = 0; l < cfg.enc_layers; ++l) {
    const std::size_t in = l == 0 ? e : h;
    for (int dir = 0; dir < 2; ++dir)
      t.enc.push_back({matrix(g, in), matrix(g, h), matrix(g, 1)});
    t.fuse_w.emplace_back(h, 2 * h);
    t.fuse_b.emplace_back(h, 1);
  }
  for (std::size_t l = 0; l < cfg.dec_layers; ++l) {
    t.init_h_w.emplace_back(h, 2 * h);
    t.init_h_b.emplace_back(h, 1);
    if (cfg.cell == model_config::cell_t::lstm) {
      t.init_c_w.emplace_back(h, 2 * h);
      t.init_c_b.emplace_back(h, 1);
    }
    const std::size_t in = l == 0 ? e : h;
    t.dec.push_back({matrix(g, in), matrix(g, h), matrix(g, 1)});
  }
  t.w_a = matrix(h, h);
  t.w_c = matrix(h, 2 * h);
  t.b_c = matrix(h, 1);
  t.w_out = matrix(tgt_v, h);
  t.b_out = matrix(tgt_v, 1);
  return t;
}

inline model_tensors zeros_like(const model_tensors& src) {
  model_tensors t = src;
  t.for_each([](const char*, matrix& m) { std::fill(m.a.begin(), m.a.end(), 0.0); });
  return t;
}

inline void add_row(matrix& m, std::size_t r, const double* v) {
  double* row = m.row(r);
  for (std::size_t c = 0; c < m.cols; ++c) row[c] += v[c];
}

// Forward one LSTM step. gates receives the activated [i; f; g; o] values.
inline void lstm_step(const cell_tensors& cell, const double* x,
                      const double* hp, const double* cp, dvec& gates, dvec& h,
                      dvec& c, std::size_t hdim) {
  gates.assign(4 * hdim, 0.0);
  for (std::size_t r = 0; r < 4 * hdim; ++r) gates[r] = cell.b.a[r];
  matvec_acc(cell.w, x, gates.data());
  matvec_acc(cell.u, hp, gates.data());
  h.assign(hdim, 0.0);
  c.assign(hdim, 0.0);
  for (std::size_t k = 0; k < hdim; ++k) {
    const double i = sigmoid(gates[k]);
    const double f = sigmoid(gates[hdim + k]);
    const double g = std::tanh(gates[2 * hdim + k]);
    const double o = sigmoid(gates[3 * hdim + k]);
    gates[k] = i;
    gates[hdim + k] = f;
    gates[2 * hdim + k] = g;
    gates[3 * hdim + k] = o;
    c[k] = f * cp[k] + i * g;
    h[k] = o * std::tanh(c[k]);
  }
}

// Backward one LSTM step. dh/dc are the incoming state gradients; dhp/dcp
// receive the gradients flowing to the previous state, dx accumulates into
// the input gradient.
inline void lstm_backward(const cell_tensors& cell, cell_tensors& g,
                          const double* x, const double* hp, const double* cp,
                          const dvec& gates, const dvec& c, const dvec& dh,
                          const dvec& dc, double* dx, dvec& dhp, dvec& dcp,
                          std::size_t hdim) {
  dvec pre(4 * hdim);
  dhp.assign(hdim, 0.0);
  dcp.assign(hdim, 0.0);
  for (std::size_t k = 0; k < hdim; ++k) {
    const double i = gates[k];
    const double f = gates[hdim + k];
    const double gg = gates[2 * hdim + k];
    const double o = gates[3 * hdim + k];
    const double tc = std::tanh(c[k]);
    const double dout = dh[k] * tc;
    const double dcall = dc[k] + dh[k] * o * (1.0 - tc * tc);
    const double df = dcall * cp[k];
    const double di = dcall * gg;
    const double dg = dcall * i;
    dcp[k] = dcall * f;
    pre[k] = di * i * (1.0 - i);
    pre[hdim + k] = df * f * (1.0 - f);
    pre[2 * hdim + k] = dg * (1.0 - gg * gg);
    pre[3 * hdim + k] = dout * o * (1.0 - o);
  }
  outer_acc(g.w, pre.data(), x);
  outer_acc(g.u, pre.data(), hp);
  for (std::size_t r = 0; r < 4 * hdim; ++r) g.b.a[r] += pre[r];
  matvec_t_acc(cell.w, pre.data(), dx);
  matvec_t_acc(cell.u, pre.data(), dhp.data());
}

// Forward one GRU step. gates receives the activated [r; z; n] values and
// un_h the raw U_n h_prev product needed by the backward pass.
inline void gru_step(const cell_tensors& cell, const double* x,
                     const double* hp, dvec& gates, dvec& un_h, dvec& h,
                     std::size_t hdim) {
  gates.assign(3 * hdim, 0.0);
  for (std::size_t r = 0; r < 3 * hdim; ++r) gates[r] = cell.b.a[r];
  matvec_acc(cell.w, x, gates.data());
  dvec uh(3 * hdim, 0.0);
  matvec_acc(cell.u, hp, uh.data());
  un_h.assign(hdim, 0.0);
  h.assign(hdim, 0.0);
  for (std::size_t k = 0; k < hdim; ++k) {
    const double r = sigmoid(gates[k] + uh[k]);
    const double z = sigmoid(gates[hdim + k] + uh[hdim + k]);
    un_h[k] = uh[2 * hdim + k];
    const double n = std::tanh(gates[2 * hdim + k] + r * un_h[k]);
    gates[k] = r;
    gates[hdim + k] = z;
    gates[2 * hdim + k] = n;
    h[k] = (1.0 - z) * n + z * hp[k];
  }
}

inline void gru_backward(const cell_tensors& cell, cell_tensors& g,
                         const double* x, const double* hp, const dvec& gates,
                         const dvec& un_h, const dvec& dh, double* dx,
                         dvec& dhp, std::size_t hdim) {
  dvec pre_w(3 * hdim);  // pre-activation grads for W/b rows
  dvec pre_u(3 * hdim);  // grads for the corresponding U rows
  dhp.assign(hdim, 0.0);
  for (std::size_t k = 0; k < hdim; ++k) {
    const double r = gates[k];
    const double z = gates[hdim + k];
    const double n = gates[2 * hdim + k];
    const double dz = dh[k] * (hp[k] - n);
    const double dn = dh[k] * (1.0 - z);
    dhp[k] = dh[k] * z;
    const double pre_n = dn * (1.0 - n * n);
    const double dr = pre_n * un_h[k];
    const double d_unh = pre_n * r;
    pre_w[k] = dr * r * (1.0 - r);
    pre_w[hdim + k] = dz * z * (1.0 - z);
    pre_w[2 * hdim + k] = pre_n;
    pre_u[k] = pre_w[k];
    pre_u[hdim + k] = pre_w[hdim + k];
    pre_u[2 * hdim + k] = d_unh;
  }
  outer_acc(g.w, pre_w.data(), x);
  outer_acc(g.u, pre_u.data(), hp);
  for (std::size_t r = 0; r < 3 * hdim; ++r) g.b.a[r] += pre_w[r];
  matvec_t_acc(cell.w, pre_w.data(), dx);
  matvec_t_acc(cell.u, pre_u.data(), dhp.data());
}

struct dir_trace {
  std::vector<dvec> gates;  // activated gate values per position
  std::vector<dvec> h;      // hidden state after consuming position t
  std::vector<dvec> c;      // lstm cell state per position
  std::vector<dvec> un_h;   // gru: U_n h_prev per position
};

struct encoder_trace {
  std::vector<std::vector<dvec>> inputs;  // per layer, per position
  std::vector<std::array<dir_trace, 2>> dirs;
  std::vector<std::vector<dvec>> fused;  // per layer, per position (H)
  std::vector<dvec> att_keys;            // W_a * fused_top per position
};

inline void check_src(const seq2seq_model& m, const std::vector<int>& src) {
  if (src.empty()) throw dimension_mismatch_error("source sequence is empty");
  if (src.size() > m.cfg.max_src_len)
    throw dimension_mismatch_error(
        "source length " + std::to_string(src.size()) + " exceeds maximum " +
        std::to_string(m.cfg.max_src_len));
  for (int id : src)
    if (id < 0 || static_cast<std::size_t>(id) >= m.src_vocab.size())
      throw out_of_vocab_error(id);
}

inline void check_tgt_ids(const seq2seq_model& m, const std::vector<int>& ids,
                          std::size_t limit) {
  if (ids.size() > limit)
    throw dimension_mismatch_error(
        "target length " + std::to_string(ids.size()) + " exceeds maximum " +
        std::to_string(limit));
  for (int id : ids)
    if (id < 0 || static_cast<std::size_t>(id) >= m.tgt_vocab.size())
      throw out_of_vocab_error(id);
}

inline void run_encoder(const seq2seq_model& m, const std::vector<int>& src,
                        encoder_trace& et) {
  const std::size_t T = src.size();
  const std::size_t H = m.cfg.hidden_dim;
  const std::size_t L = m.cfg.enc_layers;
  const bool lstm = m.cfg.cell == model_config::cell_t::lstm;
  const dvec zero(H, 0.0);

  et.inputs.assign(L, {});
  et.dirs.assign(L, {});
  et.fused.assign(L, {});
  for (std::size_t l = 0; l < L; ++l) {
    auto& inputs = et.inputs[l];
    inputs.resize(T);
    for (std::size_t t = 0; t < T; ++t) {
      if (l == 0) {
        const double* row = m.p.src_emb.row(static_cast<std::size_t>(src[t]));
        inputs[t].assign(row, row + m.cfg.emb_dim);
      } else {
        inputs[t] = et.fused[l - 1][t];
      }
    }
    for (int dir = 0; dir < 2; ++dir) {
      dir_trace& dt = et.dirs[l][dir];
      dt.gates.resize(T);
      dt.h.resize(T);
      if (lstm) dt.c.resize(T);
      if (!lstm) dt.un_h.resize(T);
      const cell_tensors& cell = m.p.enc[2 * l + dir];
      for (std::size_t k = 0; k < T; ++k) {
        const std::size_t t = dir == 0 ? k : T - 1 - k;
        const std::size_t pt = dir == 0 ? t - 1 : t + 1;  // only if k > 0
        const double* hp = k == 0 ? zero.data() : dt.h[pt].data();
        if (lstm) {
          const double* cp = k == 0 ? zero.data() : dt.c[pt].data();
          lstm_step(cell, inputs[t].data(), hp, cp, dt.gates[t], dt.h[t],
                    dt.c[t], H);
        } else {
          gru_step(cell, inputs[t].data(), hp, dt.gates[t], dt.un_h[t],
                   dt.h[t], H);
        }
      }
    }
    auto& fused = et.fused[l];
    fused.resize(T);
    dvec cat(2 * H);
    for (std::size_t t = 0; t < T; ++t) {
      std::copy(et.dirs[l][0].h[t].begin(), et.dirs[l][0].h[t].end(),
                cat.begin());
      std::copy(et.dirs[l][1].h[t].begin(), et.dirs[l][1].h[t].end(),
                cat.begin() + H);
      fused[t].assign(m.p.fuse_b[l].a.begin(), m.p.fuse_b[l].a.end());
      matvec_acc(m.p.fuse_w[l], cat.data(), fused[t].data());
    }
  }
  et.att_keys.resize(T);
  for (std::size_t t = 0; t < T; ++t) {
    et.att_keys[t].assign(H, 0.0);
    matvec_acc(m.p.w_a, et.fused[L - 1][t].data(), et.att_keys[t].data());
  }
}

struct decoder_state {
  std::vector<dvec> h;  // per layer
  std::vector<dvec> c;  // per layer, lstm only
};

// Concatenated final raw states of encoder layer l: forward direction at the
// last position, backward direction at the first.
inline void final_state_cat(const encoder_trace& et, std::size_t l,
                            bool cell_state, dvec& cat) {
  const std::size_t T = et.inputs[0].size();
  const auto& fwd = cell_state ? et.dirs[l][0].c : et.dirs[l][0].h;
  const auto& bwd = cell_state ? et.dirs[l][1].c : et.dirs[l][1].h;
  const std::size_t H = fwd[0].size();
  cat.resize(2 * H);
  std::copy(fwd[T - 1].begin(), fwd[T - 1].end(), cat.begin());
  std::copy(bwd[0].begin(), bwd[0].end(), cat.begin() + H);
}

inline decoder_state init_decoder(const seq2seq_model& m,
                                  const encoder_trace& et) {
  const std::size_t L = m.cfg.dec_layers;
  const bool lstm = m.cfg.cell == model_config::cell_t::lstm;
  decoder_state st;
  st.h.resize(L);
  if (lstm) st.c.resize(L);
  dvec cat;
  for (std::size_t l = 0; l < L; ++l) {
    final_state_cat(et, l, false, cat);
    st.h[l].assign(m.p.init_h_b[l].a.begin(), m.p.init_h_b[l].a.end());
    matvec_acc(m.p.init_h_w[l], cat.data(), st.h[l].data());
    if (lstm) {
      final_state_cat(et, l, true, cat);
      st.c[l].assign(m.p.init_c_b[l].a.begin(), m.p.init_c_b[l].a.end());
      matvec_acc(m.p.init_c_w[l], cat.data(), st.c[l].data());
    }
  }
  return st;
}

struct dec_step {
  int y_in = 0;
  std::vector<dvec> gates;  // per layer
  std::vector<dvec> h;      // per layer (state after this step)
  std::vector<dvec> c;      // per layer, lstm
  std::vector<dvec> un_h;   // per layer, gru
  dvec alpha;               // attention weights over source positions
  dvec ctx;                 // context vector (H)
  dvec cat_ctx_h;           // [ctx; top hidden] (2H)
  dvec htilde;              // attentional state (H)
  dvec probs;               // output distribution
};

// Advance the decoder by one token. st is updated in place; the full step
// record lands in out for the backward pass.
inline void decoder_step(const seq2seq_model& m, const encoder_trace& et,
                         decoder_state& st, int y_in, dec_step& out) {
  const std::size_t H = m.cfg.hidden_dim;
  const std::size_t L = m.cfg.dec_layers;
  const std::size_t T = et.att_keys.size();
  const bool lstm = m.cfg.cell == model_config::cell_t::lstm;

  out.y_in = y_in;
  out.gates.resize(L);
  out.h.resize(L);
  if (lstm) out.c.resize(L);
  if (!lstm) out.un_h.resize(L);

  const double* emb = m.p.tgt_emb.row(static_cast<std::size_t>(y_in));
  dvec x(emb, emb + m.cfg.emb_dim);
  for (std::size_t l = 0; l < L; ++l) {
    const double* in = l == 0 ? x.data() : out.h[l - 1].data();
    if (lstm) {
      lstm_step(m.p.dec[l], in, st.h[l].data(), st.c[l].data(), out.gates[l],
                out.h[l], out.c[l], H);
    } else {
      gru_step(m.p.dec[l], in, st.h[l].data(), out.gates[l], out.un_h[l],
               out.h[l], H);
    }
  }
  for (std::size_t l = 0; l < L; ++l) {
    st.h[l] = out.h[l];
    if (lstm) st.c[l] = out.c[l];
  }

  const dvec& top = out.h[L - 1];
  out.alpha.resize(T);
  for (std::size_t t = 0; t < T; ++t)
    out.alpha[t] = dot(top.data(), et.att_keys[t].data(), H);
  softmax_inplace(out.alpha.data(), T);

  out.ctx.assign(H, 0.0);
  for (std::size_t t = 0; t < T; ++t) {
    const dvec& mem = et.fused[m.cfg.enc_layers - 1][t];
    for (std::size_t k = 0; k < H; ++k) out.ctx[k] += out.alpha[t] * mem[k];
  }

  out.cat_ctx_h.resize(2 * H);
  std::copy(out.ctx.begin(), out.ctx.end(), out.cat_ctx_h.begin());
  std::copy(top.begin(), top.end(), out.cat_ctx_h.begin() + H);
  out.htilde.assign(m.p.b_c.a.begin(), m.p.b_c.a.end());
  matvec_acc(m.p.w_c, out.cat_ctx_h.data(), out.htilde.data());
  for (auto& v : out.htilde) v = std::tanh(v);

  out.probs.assign(m.p.b_out.a.begin(), m.p.b_out.a.end());
  matvec_acc(m.p.w_out, out.htilde.data(), out.probs.data());
  softmax_inplace(out.probs.data(), out.probs.size());
}

}  // namespace detail

struct forward_result {
  std::vector<dvec> probs;      // one row per target prefix position
  std::vector<dvec> attention;  // one row per target prefix position
};

/// Teacher-forced forward pass: one output distribution and one attention
/// row per prefix position.
inline forward_result forward(const seq2seq_model& m, const std::vector<int>& src,
                              const std::vector<int>& tgt_prefix) {
  detail::check_src(m, src);
  detail::check_tgt_ids(m, tgt_prefix, m.cfg.max_tgt_len);
  detail::encoder_trace et;
  detail::run_encoder(m, src, et);
  detail::decoder_state st = detail::init_decoder(m, et);
  forward_result out;
  detail::dec_step step;
  for (int y : tgt_prefix) {
    detail::decoder_step(m, et, st, y, step);
    out.probs.push_back(step.probs);
    out.attention.push_back(step.alpha);
  }
  return out;
}

namespace detail {

struct loss_stats {
  double ce_sum = 0.0;      // summed cross-entropy over target positions
  std::size_t tokens = 0;   // number of scored positions
};

// Teacher-forced loss for one pair; decoder inputs are BOS + tgt, outputs
// tgt + EOS. Forward only.
inline loss_stats sequence_loss(const seq2seq_model& m,
                                const std::vector<int>& src,
                                const std::vector<int>& tgt) {
  check_src(m, src);
  check_tgt_ids(m, tgt, m.cfg.max_tgt_len - 1);
  encoder_trace et;
  run_encoder(m, src, et);
  decoder_state st = init_decoder(m, et);
  loss_stats out;
  dec_step step;
  int y_in = vocabulary::bos_id;
  for (std::size_t t = 0; t <= tgt.size(); ++t) {
    const int y_out =
        t < tgt.size() ? tgt[t] : static_cast<int>(vocabulary::eos_id);
    decoder_step(m, et, st, y_in, step);
    out.ce_sum -= std::log(step.probs[static_cast<std::size_t>(y_out)]);
    out.tokens += 1;
    y_in = y_out;
  }
  return out;
}

// Full forward + hand-written backward for one pair. Every gradient
// contribution is scaled by `weight` (the caller passes 1 / batch tokens so
// accumulated gradients match the per-token mean loss).
inline loss_stats sequence_loss_grad(const seq2seq_model& m,
                                     const std::vector<int>& src,
                                     const std::vector<int>& tgt,
                                     model_tensors& g, double weight) {
  check_src(m, src);
  check_tgt_ids(m, tgt, m.cfg.max_tgt_len - 1);
  const std::size_t H = m.cfg.hidden_dim;
  const std::size_t L = m.cfg.dec_layers;
  const std::size_t T = src.size();
  const bool lstm = m.cfg.cell == model_config::cell_t::lstm;
  const dvec zero(H, 0.0);

  encoder_trace et;
  run_encoder(m, src, et);
  decoder_state st = init_decoder(m, et);
  const decoder_state init_st = st;  // st is advanced by the forward loop

  const std::size_t n_steps = tgt.size() + 1;
  std::vector<dec_step> steps(n_steps);
  std::vector<int> y_out(n_steps);
  loss_stats stats;
  {
    int y_in = vocabulary::bos_id;
    for (std::size_t t = 0; t < n_steps; ++t) {
      y_out[t] =
          t < tgt.size() ? tgt[t] : static_cast<int>(vocabulary::eos_id);
      decoder_step(m, et, st, y_in, steps[t]);
      stats.ce_sum -= std::log(steps[t].probs[static_cast<std::size_t>(y_out[t])]);
      stats.tokens += 1;
      y_in = y_out[t];
    }
  }

  // ---- decoder backward ----
  std::vector<dvec> dmem(T, dvec(H, 0.0));  // grads into fused top states
  std::vector<dvec> dh(L, dvec(H, 0.0));    // running state grads
  std::vector<dvec> dc(L, dvec(H, 0.0));
  dvec dhtilde(H), da(H), dcat(2 * H), dctx(H), dtop(H);
  dvec dalpha(T), dscore(T), dkey(H), dx_emb(m.cfg.emb_dim);
  dvec dhp, dcp;
  const std::vector<dvec>& mem = et.fused[m.cfg.enc_layers - 1];

  for (std::size_t t = n_steps; t-- > 0;) {
    const dec_step& sp = steps[t];
    // d loss / d logits = weight * (p - onehot)
    dvec dlogits = sp.probs;
    for (auto& v : dlogits) v *= weight;
    dlogits[static_cast<std::size_t>(y_out[t])] -= weight;
    outer_acc(g.w_out, dlogits.data(), sp.htilde.data());
    for (std::size_t r = 0; r < dlogits.size(); ++r) g.b_out.a[r] += dlogits[r];
    std::fill(dhtilde.begin(), dhtilde.end(), 0.0);
    matvec_t_acc(m.p.w_out, dlogits.data(), dhtilde.data());

    for (std::size_t k = 0; k < H; ++k)
      da[k] = dhtilde[k] * (1.0 - sp.htilde[k] * sp.htilde[k]);
    outer_acc(g.w_c, da.data(), sp.cat_ctx_h.data());
    for (std::size_t r = 0; r < H; ++r) g.b_c.a[r] += da[r];
    std::fill(dcat.begin(), dcat.end(), 0.0);
    matvec_t_acc(m.p.w_c, da.data(), dcat.data());
    std::copy(dcat.begin(), dcat.begin() + H, dctx.begin());
    std::copy(dcat.begin() + H, dcat.end(), dtop.begin());

    // ctx = sum_j alpha_j mem_j
    double dot_adalpha = 0.0;
    for (std::size_t j = 0; j < T; ++j) {
      dalpha[j] = dot(dctx.data(), mem[j].data(), H);
      for (std::size_t k = 0; k < H; ++k) dmem[j][k] += sp.alpha[j] * dctx[k];
      dot_adalpha += dalpha[j] * sp.alpha[j];
    }
    // softmax jacobian
    for (std::size_t j = 0; j < T; ++j)
      dscore[j] = sp.alpha[j] * (dalpha[j] - dot_adalpha);
    // score_j = top . (W_a mem_j)
    const dvec& top = sp.h[L - 1];
    for (std::size_t j = 0; j < T; ++j) {
      if (dscore[j] == 0.0) continue;
      for (std::size_t k = 0; k < H; ++k) {
        dtop[k] += dscore[j] * et.att_keys[j][k];
        dkey[k] = dscore[j] * top[k];
      }
      outer_acc(g.w_a, dkey.data(), mem[j].data());
      matvec_t_acc(m.p.w_a, dkey.data(), dmem[j].data());
    }

    for (std::size_t k = 0; k < H; ++k) dh[L - 1][k] += dtop[k];

    // layer stack, top down
    const double* emb = m.p.tgt_emb.row(static_cast<std::size_t>(sp.y_in));
    std::fill(dx_emb.begin(), dx_emb.end(), 0.0);
    for (std::size_t l = L; l-- > 0;) {
      const double* x =
          l == 0 ? emb : steps[t].h[l - 1].data();
      const double* hp =
          t == 0 ? init_st.h[l].data() : steps[t - 1].h[l].data();
      double* dx = nullptr;
      dvec dx_buf;
      if (l == 0) {
        dx = dx_emb.data();
      } else {
        dx_buf.assign(H, 0.0);
        dx = dx_buf.data();
      }
      if (lstm) {
        const double* cp =
            t == 0 ? init_st.c[l].data() : steps[t - 1].c[l].data();
        lstm_backward(m.p.dec[l], g.dec[l], x, hp, cp, sp.gates[l], sp.c[l],
                      dh[l], dc[l], dx, dhp, dcp, H);
        dc[l] = dcp;
      } else {
        gru_backward(m.p.dec[l], g.dec[l], x, hp, sp.gates[l], sp.un_h[l],
                     dh[l], dx, dhp, H);
      }
      dh[l] = dhp;
      if (l > 0)
        for (std::size_t k = 0; k < H; ++k) dh[l - 1][k] += dx_buf[k];
    }
    add_row(g.tgt_emb, static_cast<std::size_t>(sp.y_in), dx_emb.data());
  }

  // ---- decoder init projections ----
  std::vector<dvec> denc_final_h(L), denc_final_c(L);
  dvec cat;
  for (std::size_t l = 0; l < L; ++l) {
    final_state_cat(et, l, false, cat);
    outer_acc(g.init_h_w[l], dh[l].data(), cat.data());
    for (std::size_t r = 0; r < H; ++r) g.init_h_b[l].a[r] += dh[l][r];
    dvec dcat2(2 * H, 0.0);
    matvec_t_acc(m.p.init_h_w[l], dh[l].data(), dcat2.data());
    denc_final_h[l] = dcat2;
    if (lstm) {
      final_state_cat(et, l, true, cat);
      outer_acc(g.init_c_w[l], dc[l].data(), cat.data());
      for (std::size_t r = 0; r < H; ++r) g.init_c_b[l].a[r] += dc[l][r];
      dvec dcat3(2 * H, 0.0);
      matvec_t_acc(m.p.init_c_w[l], dc[l].data(), dcat3.data());
      denc_final_c[l] = dcat3;
    }
  }

  // ---- encoder backward ----
  std::vector<dvec> dfused = std::move(dmem);  // top layer consumer
  for (std::size_t l = m.cfg.enc_layers; l-- > 0;) {
    // fuse projection
    std::vector<dvec> ddir_h(2, dvec());
    std::vector<std::vector<dvec>> dh_direct(
        2, std::vector<dvec>(T, dvec(H, 0.0)));
    dvec cat2(2 * H);
    for (std::size_t t = 0; t < T; ++t) {
      std::copy(et.dirs[l][0].h[t].begin(), et.dirs[l][0].h[t].end(),
                cat2.begin());
      std::copy(et.dirs[l][1].h[t].begin(), et.dirs[l][1].h[t].end(),
                cat2.begin() + H);
      outer_acc(g.fuse_w[l], dfused[t].data(), cat2.data());
      for (std::size_t r = 0; r < H; ++r) g.fuse_b[l].a[r] += dfused[t][r];
      dvec dcat2(2 * H, 0.0);
      matvec_t_acc(m.p.fuse_w[l], dfused[t].data(), dcat2.data());
      for (std::size_t k = 0; k < H; ++k) {
        dh_direct[0][t][k] += dcat2[k];
        dh_direct[1][t][k] += dcat2[H + k];
      }
    }
    std::vector<dvec> dinput(T, dvec(et.inputs[l][0].size(), 0.0));
    for (int dir = 0; dir < 2; ++dir) {
      const dir_trace& dt = et.dirs[l][dir];
      const cell_tensors& cell = m.p.enc[2 * l + dir];
      cell_tensors& gcell = g.enc[2 * l + dir];
      dvec dh_carry(H, 0.0), dc_carry(H, 0.0);
      // Gradients from the decoder init projections enter at the final
      // processed position of each direction.
      if (!denc_final_h[l].empty()) {
        for (std::size_t k = 0; k < H; ++k)
          dh_carry[k] += denc_final_h[l][dir * H + k];
        if (lstm)
          for (std::size_t k = 0; k < H; ++k)
            dc_carry[k] += denc_final_c[l][dir * H + k];
      }
      for (std::size_t k = T; k-- > 0;) {
        const std::size_t t = dir == 0 ? k : T - 1 - k;
        const std::size_t pt = dir == 0 ? t - 1 : t + 1;  // only if k > 0
        const double* hp = k == 0 ? zero.data() : dt.h[pt].data();
        dvec dh_total = dh_carry;
        for (std::size_t kk = 0; kk < H; ++kk)
          dh_total[kk] += dh_direct[dir][t][kk];
        if (lstm) {
          const double* cp = k == 0 ? zero.data() : dt.c[pt].data();
          lstm_backward(cell, gcell, et.inputs[l][t].data(), hp, cp,
                        dt.gates[t], dt.c[t], dh_total, dc_carry,
                        dinput[t].data(), dhp, dcp, H);
          dh_carry = dhp;
          dc_carry = dcp;
        } else {
          gru_backward(cell, gcell, et.inputs[l][t].data(), hp, dt.gates[t],
                       dt.un_h[t], dh_total, dinput[t].data(), dhp, H);
          dh_carry = dhp;
        }
      }
    }
    if (l == 0) {
      for (std::size_t t = 0; t < T; ++t)
        add_row(g.src_emb, static_cast<std::size_t>(src[t]), dinput[t].data());
    } else {
      dfused = std::move(dinput);
    }
  }
  return stats;
}

inline std::vector<matrix*> tensor_list(model_tensors& t) {
  std::vector<matrix*> out;
  t.for_each([&](const char*, matrix& m) { out.push_back(&m); });
  return out;
}

}  // namespace detail

/// Mint a model with all parameters drawn uniformly from (-0.1, 0.1) using
/// the config seed, in declared tensor order.
inline seq2seq_model init_model(const model_config& cfg,
                                vocabulary src_vocab, vocabulary tgt_vocab) {
  validate(cfg);
  seq2seq_model m;
  m.cfg = cfg;
  m.src_vocab = std::move(src_vocab);
  m.tgt_vocab = std::move(tgt_vocab);
  m.p = detail::make_tensors(cfg, m.src_vocab.size(), m.tgt_vocab.size());
  det_rng rng(cfg.seed);
  m.p.for_each([&](const char*, matrix& t) {
    for (auto& v : t.a) v = rng.uniform(-0.1, 0.1);
  });
  return m;
}

/// Scale gradients so their global norm is at most `clip`. Returns the
/// pre-clip norm.
inline double clip_global_norm(model_tensors& g, double clip) {
  double sq = 0.0;
  g.for_each([&](const char*, matrix& t) {
    for (double v : t.a) sq += v * v;
  });
  const double norm = std::sqrt(sq);
  if (norm > clip && norm > 0.0) {
    const double scale = clip / norm;
    g.for_each([&](const char*, matrix& t) {
      for (auto& v : t.a) v *= scale;
    });
  }
  return norm;
}

struct train_result {
  seq2seq_model model;
  std::vector<double> losses;  // per-step mean cross-entropy, length = steps
};

/// Train a fresh model on (source, target) token sequences. Vocabularies are
/// built from the pairs. SGD halves its learning rate once, at 50% of steps;
/// Adam runs at a constant rate. Bit-identical for identical inputs.
inline train_result train(
    const std::vector<std::pair<token_sequence, token_sequence>>& pairs,
    const model_config& mc, const train_config& tc) {
  if (pairs.empty()) throw empty_corpus_error();
  validate(mc);
  if (tc.batch_size == 0)
    throw dimension_mismatch_error("batch size must be positive");

  std::vector<token_sequence> srcs, tgts;
  srcs.reserve(pairs.size());
  tgts.reserve(pairs.size());
  for (const auto& [s, t] : pairs) {
    srcs.push_back(s);
    tgts.push_back(t);
  }
  train_result out;
  out.model = init_model(mc, build_vocab(srcs), build_vocab(tgts));
  seq2seq_model& m = out.model;

  std::vector<std::vector<int>> src_ids(pairs.size()), tgt_ids(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    src_ids[i] = m.src_vocab.encode(pairs[i].first);
    tgt_ids[i] = m.tgt_vocab.encode(pairs[i].second);
    if (src_ids[i].empty() || src_ids[i].size() > mc.max_src_len ||
        tgt_ids[i].size() + 1 > mc.max_tgt_len)
      throw dimension_mismatch_error(
          "training pair " + std::to_string(i) +
          " violates the configured length limits");
  }

  // Separate stream from parameter init so vocabulary size cannot shift the
  // batch order.
  det_rng order_rng(mc.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::size_t> order(pairs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  order_rng.shuffle(order);
  std::size_t cursor = 0;

  model_tensors grads = detail::zeros_like(m.p);
  model_tensors adam_m, adam_v;
  if (tc.optimizer == train_config::optimizer_t::adam) {
    adam_m = detail::zeros_like(m.p);
    adam_v = detail::zeros_like(m.p);
  }
  auto params = detail::tensor_list(m.p);
  auto gptrs = detail::tensor_list(grads);

  out.losses.reserve(tc.steps);
  std::vector<std::size_t> batch;
  for (std::size_t step = 0; step < tc.steps; ++step) {
    batch.clear();
    for (std::size_t b = 0; b < tc.batch_size; ++b) {
      if (cursor == order.size()) {
        order_rng.shuffle(order);
        cursor = 0;
      }
      batch.push_back(order[cursor++]);
    }
    std::size_t total_tokens = 0;
    for (std::size_t idx : batch) total_tokens += tgt_ids[idx].size() + 1;
    const double weight = 1.0 / static_cast<double>(total_tokens);

    for (auto* gm : gptrs) std::fill(gm->a.begin(), gm->a.end(), 0.0);
    double ce_sum = 0.0;
    for (std::size_t idx : batch)
      ce_sum += detail::sequence_loss_grad(m, src_ids[idx], tgt_ids[idx],
                                           grads, weight)
                    .ce_sum;
    const double loss = ce_sum / static_cast<double>(total_tokens);
    if (!std::isfinite(loss)) throw non_finite_loss_error(step + 1);

    clip_global_norm(grads, tc.grad_clip);

    if (tc.optimizer == train_config::optimizer_t::sgd) {
      const double lr = step >= tc.steps / 2 ? tc.lr * 0.5 : tc.lr;
      for (std::size_t i = 0; i < params.size(); ++i) {
        auto& p = params[i]->a;
        const auto& ga = gptrs[i]->a;
        for (std::size_t k = 0; k < p.size(); ++k) p[k] -= lr * ga[k];
      }
    } else {
      const double b1 = 0.9, b2 = 0.999, eps = 1e-8;
      const double t = static_cast<double>(step + 1);
      auto mptrs = detail::tensor_list(adam_m);
      auto vptrs = detail::tensor_list(adam_v);
      const double bc1 = 1.0 - std::pow(b1, t);
      const double bc2 = 1.0 - std::pow(b2, t);
      for (std::size_t i = 0; i < params.size(); ++i) {
        auto& p = params[i]->a;
        const auto& ga = gptrs[i]->a;
        auto& ma = mptrs[i]->a;
        auto& va = vptrs[i]->a;
        for (std::size_t k = 0; k < p.size(); ++k) {
          ma[k] = b1 * ma[k] + (1.0 - b1) * ga[k];
          va[k] = b2 * va[k] + (1.0 - b2) * ga[k] * ga[k];
          p[k] -= tc.lr * (ma[k] / bc1) / (std::sqrt(va[k] / bc2) + eps);
        }
      }
    }
    out.losses.push_back(loss);
  }
  return out;
}

struct decode_result {
  std::vector<int> ids;    // emitted target ids, EOS excluded
  bool truncated = false;  // hit max_len before EOS
};

/// Greedy decode from BOS until EOS or max_len emitted tokens. Argmax ties
/// break toward the lowest id.
inline decode_result decode(const seq2seq_model& m, const std::vector<int>& src,
                            std::size_t max_len) {
  detail::check_src(m, src);
  detail::encoder_trace et;
  detail::run_encoder(m, src, et);
  detail::decoder_state st = detail::init_decoder(m, et);
  decode_result out;
  detail::dec_step step;
  int y = vocabulary::bos_id;
  for (std::size_t i = 0; i < max_len; ++i) {
    detail::decoder_step(m, et, st, y, step);
    std::size_t best = 0;
    for (std::size_t k = 1; k < step.probs.size(); ++k)
      if (step.probs[k] > step.probs[best]) best = k;
    if (best == vocabulary::eos_id) return out;
    out.ids.push_back(static_cast<int>(best));
    y = static_cast<int>(best);
  }
  out.truncated = true;
  return out;
}

inline decode_result decode(const seq2seq_model& m, const std::vector<int>& src) {
  return decode(m, src, m.cfg.max_tgt_len);
}

/// Teacher-forced per-token accuracy over (source, target) pairs: the share
/// of positions whose argmax equals the reference token (EOS included).
inline double token_accuracy(
    const seq2seq_model& m,
    const std::vector<std::pair<token_sequence, token_sequence>>& pairs) {
  std::size_t correct = 0, total = 0;
  for (const auto& [s, t] : pairs) {
    const std::vector<int> src = m.src_vocab.encode(s);
    const std::vector<int> tgt = m.tgt_vocab.encode(t);
    std::vector<int> prefix;
    prefix.push_back(vocabulary::bos_id);
    prefix.insert(prefix.end(), tgt.begin(), tgt.end());
    forward_result fr = forward(m, src, prefix);
    for (std::size_t i = 0; i < fr.probs.size(); ++i) {
      const int want =
          i < tgt.size() ? tgt[i] : static_cast<int>(vocabulary::eos_id);
      std::size_t best = 0;
      for (std::size_t k = 1; k < fr.probs[i].size(); ++k)
        if (fr.probs[i][k] > fr.probs[i][best]) best = k;
      if (static_cast<int>(best) == want) correct += 1;
      total += 1;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
}

/// Compare the analytic gradient of the per-token mean loss on one sample
/// against central finite differences (step 1e-4). Returns the maximum
/// relative error over sampled entries of every tensor.
inline double gradient_check(const model_config& mc, const token_sequence& src,
                             const token_sequence& tgt) {
  seq2seq_model m = init_model(mc, build_vocab({src}), build_vocab({tgt}));
  const std::vector<int> sids = m.src_vocab.encode(src);
  const std::vector<int> tids = m.tgt_vocab.encode(tgt);

  model_tensors grads = detail::zeros_like(m.p);
  const detail::loss_stats base =
      detail::sequence_loss_grad(m, sids, tids, grads, 1.0);
  const double n = static_cast<double>(base.tokens);

  auto params = detail::tensor_list(m.p);
  auto gptrs = detail::tensor_list(grads);
  const double h = 1e-4;
  double max_rel = 0.0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto& a = params[i]->a;
    const auto& ga = gptrs[i]->a;
    const std::size_t stride = std::max<std::size_t>(1, a.size() / 16);
    for (std::size_t k = 0; k < a.size(); k += stride) {
      const double orig = a[k];
      a[k] = orig + h;
      const double lp = detail::sequence_loss(m, sids, tids).ce_sum / n;
      a[k] = orig - h;
      const double lm = detail::sequence_loss(m, sids, tids).ce_sum / n;
      a[k] = orig;
      const double gn = (lp - lm) / (2.0 * h);
      const double gak = ga[k] / n;  // analytic grad of the mean loss
      const double rel =
          std::abs(gak - gn) / std::max({std::abs(gak), std::abs(gn), 1e-8});
      max_rel = std::max(max_rel, rel);
    }
  }
  return max_rel;
}

// ---- checkpoint io ----

namespace detail {

inline void write_u64le(std::ostream& out, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(b, 8);
}

inline void write_u32le(std::ostream& out, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(b, 4);
}

inline void write_f64le(std::ostream& out, double v) {
  write_u64le(out, std::bit_cast<std::uint64_t>(v));
}

inline std::uint64_t read_u64le(std::istream& in, const std::string& path) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8))
    throw error("corrupt checkpoint: " + path);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

inline std::uint32_t read_u32le(std::istream& in, const std::string& path) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4))
    throw error("corrupt checkpoint: " + path);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

inline double read_f64le(std::istream& in, const std::string& path) {
  return std::bit_cast<double>(read_u64le(in, path));
}

inline constexpr char checkpoint_magic[8] = {'X', 'M', 'S', 'E',
                                             'Q', '2', 'S', '1'};

inline void write_vocab(std::ostream& out, const vocabulary& v) {
  write_u64le(out, v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string& tok = v.token(static_cast<int>(i));
    write_u64le(out, tok.size());
    out.write(tok.data(), static_cast<std::streamsize>(tok.size()));
  }
}

inline vocabulary read_vocab(std::istream& in, const std::string& path) {
  const std::uint64_t count = read_u64le(in, path);
  vocabulary v;
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t len = read_u64le(in, path);
    if (len > (1u << 20)) throw error("corrupt checkpoint: " + path);
    std::string tok(len, '\0');
    if (!in.read(tok.data(), static_cast<std::streamsize>(len)))
      throw error("corrupt checkpoint: " + path);
    if (i < 4) {
      if (tok != v.token(static_cast<int>(i)))
        throw error("corrupt checkpoint: " + path);
    } else {
      v.add(tok);
    }
  }
  return v;
}

}  // namespace detail

/// Single binary file: magic, version, config, both vocabularies, then every
/// tensor in declared order as little-endian 64-bit floats.
inline void save_checkpoint(const seq2seq_model& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error(path);
  out.write(detail::checkpoint_magic, 8);
  detail::write_u32le(out, 1);  // version
  detail::write_u32le(out, static_cast<std::uint32_t>(m.cfg.cell));
  detail::write_u64le(out, m.cfg.emb_dim);
  detail::write_u64le(out, m.cfg.hidden_dim);
  detail::write_u64le(out, m.cfg.enc_layers);
  detail::write_u64le(out, m.cfg.dec_layers);
  detail::write_u64le(out, m.cfg.max_src_len);
  detail::write_u64le(out, m.cfg.max_tgt_len);
  detail::write_u64le(out, m.cfg.seed);
  detail::write_vocab(out, m.src_vocab);
  detail::write_vocab(out, m.tgt_vocab);
  m.p.for_each([&](const char*, const matrix& t) {
    detail::write_u64le(out, t.rows);
    detail::write_u64le(out, t.cols);
    for (double v : t.a) detail::write_f64le(out, v);
  });
  if (!out) throw io_error(path);
}

inline seq2seq_model load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error(path);
  char magic[8];
  if (!in.read(magic, 8) || std::memcmp(magic, detail::checkpoint_magic, 8) != 0)
    throw error("corrupt checkpoint: " + path);
  const std::uint32_t version = detail::read_u32le(in, path);
  if (version != 1)
    throw error("unsupported checkpoint version " + std::to_string(version));
  model_config cfg;
  const std::uint32_t cell = detail::read_u32le(in, path);
  if (cell > 1) throw error("corrupt checkpoint: " + path);
  cfg.cell = static_cast<model_config::cell_t>(cell);
  cfg.emb_dim = detail::read_u64le(in, path);
  cfg.hidden_dim = detail::read_u64le(in, path);
  cfg.enc_layers = detail::read_u64le(in, path);
  cfg.dec_layers = detail::read_u64le(in, path);
  cfg.max_src_len = detail::read_u64le(in, path);
  cfg.max_tgt_len = detail::read_u64le(in, path);
  cfg.seed = detail::read_u64le(in, path);
  validate(cfg);

  seq2seq_model m;
  m.cfg = cfg;
  m.src_vocab = detail::read_vocab(in, path);
  m.tgt_vocab = detail::read_vocab(in, path);
  m.p = detail::make_tensors(cfg, m.src_vocab.size(), m.tgt_vocab.size());
  m.p.for_each([&](const char*, matrix& t) {
    const std::uint64_t rows = detail::read_u64le(in, path);
    const std::uint64_t cols = detail::read_u64le(in, path);
    if (rows != t.rows || cols != t.cols)
      throw error("corrupt checkpoint: " + path);
    for (auto& v : t.a) v = detail::read_f64le(in, path);
  });
  char extra;
  if (in.read(&extra, 1)) throw error("corrupt checkpoint: " + path);
  return m;
}

/// Loss trace CSV: one `step,loss` row per step, 1-based, no header.
inline void write_loss_trace(const std::vector<double>& losses,
                             const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error(path);
  out.precision(17);
  for (std::size_t i = 0; i < losses.size(); ++i)
    out << (i + 1) << ',' << losses[i] << '\n';
}

}  // namespace xmorph
