#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "pivotclr/serialize.hpp"

namespace pivotclr {

struct EncoderConfig {
  std::size_t vocab_size = 0;
  std::size_t max_len = 128;
  std::size_t hidden_dim = 64;
  std::size_t num_layers = 2;
  std::size_t num_heads = 4;
  std::size_t ffn_dim = 128;
  double dropout_rate = 0.0;
  std::uint64_t seed = 42;

  std::size_t head_dim() const { return hidden_dim / num_heads; }
  void validate() const;
  bool operator==(const EncoderConfig&) const = default;
};

struct LayerParams {
  Eigen::MatrixXd wq, wk, wv, wo;        // hidden x hidden
  Eigen::VectorXd bq, bk, bv, bo;        // hidden
  Eigen::MatrixXd w_ffn_in;              // hidden x ffn
  Eigen::VectorXd b_ffn_in;              // ffn
  Eigen::MatrixXd w_ffn_out;             // ffn x hidden
  Eigen::VectorXd b_ffn_out;             // hidden
  Eigen::VectorXd ln1_gain, ln1_bias;    // hidden
  Eigen::VectorXd ln2_gain, ln2_bias;    // hidden
};

// One allocation shape shared by weights and gradients.
struct EncoderParams {
  Eigen::MatrixXd token_embedding;       // vocab x hidden
  Eigen::MatrixXd position_embedding;    // max_len x hidden
  std::vector<LayerParams> layers;

  static EncoderParams zeros(const EncoderConfig& config);
};

struct EncoderModel {
  EncoderConfig config;
  EncoderParams params;
};

// Flat views over every parameter tensor in a fixed traversal order; the
// same order backs Adam state, checkpoints, and gradient checks.
struct TensorRef {
  std::string name;
  double* data;
  std::size_t size;
};
struct ConstTensorRef {
  std::string name;
  const double* data;
  std::size_t size;
};
std::vector<TensorRef> collect_tensors(EncoderParams& p);
std::vector<ConstTensorRef> collect_tensors(const EncoderParams& p);

// Closed form:
//   V*d + M*d + L * (4*(d*d + d) + d*f + f + f*d + d + 4*d)
// for vocab V, max_len M, hidden d, layers L, ffn f: embeddings, four
// attention projections with biases, the two FFN linears with biases, and
// two layer norms (gain + bias) per layer.
std::size_t parameter_count(const EncoderConfig& config);

// Weight matrices ~ Normal(0, 0.02^2) from the seeded generator, biases 0,
// layer-norm gain 1 / bias 0. Deterministic per seed.
EncoderModel init_encoder(const EncoderConfig& config);

// Normalizes one row vector in place support: y = (x - mean) / sqrt(var + eps),
// population variance. Returns the normalized row and writes inv-std through
// the out parameter. Exposed so tests can probe the pre-gain statistics.
Eigen::RowVectorXd layer_norm_row(const Eigen::RowVectorXd& x, double* inv_std_out);
inline constexpr double kLayerNormEps = 1e-12;

struct LayerNormTape {
  Eigen::MatrixXd xhat;      // T x d normalized values (pre gain/bias)
  Eigen::VectorXd inv_std;   // per position
};

struct LayerTape {
  Eigen::MatrixXd input;                  // layer input X (T x d)
  Eigen::MatrixXd q, k, v;                // post-bias projections (T x d)
  std::vector<Eigen::MatrixXd> probs;     // per-head softmax rows (T x T)
  Eigen::MatrixXd attn_concat;            // head outputs concatenated (T x d)
  Eigen::ArrayXXd attn_dropmask;          // empty unless dropout was applied
  LayerNormTape ln1;
  Eigen::MatrixXd x1;                     // LN1 output, FFN input
  Eigen::MatrixXd ffn_pre;                // x1*W1 + b1 (T x f)
  Eigen::ArrayXXd ffn_dropmask;
  LayerNormTape ln2;
};

struct SequenceTape {
  std::vector<std::int32_t> ids;
  std::vector<std::uint8_t> mask;
  std::size_t real_len = 0;
  Eigen::ArrayXXd emb_dropmask;
  std::vector<LayerTape> layers;
};

struct ForwardTape {
  const EncoderModel* model = nullptr;
  std::vector<SequenceTape> seqs;
  bool consumed = false;
};

struct ForwardResult {
  std::vector<Eigen::VectorXd> pooled;  // one hidden_dim vector per sequence
  ForwardTape tape;
};

// Embedding sum -> L x (self-attention -> add&norm -> GELU FFN -> add&norm),
// mean pooling of the last hidden state over mask=1 positions. Dropout is
// active only in train mode and is fully determined by
// (config.seed, dropout_stream).
ForwardResult forward(const EncoderModel& model, const std::vector<TokenSequence>& batch,
                      bool train_mode, std::uint64_t dropout_stream = 0);

// Gradients of a scalar loss with respect to every parameter, given the
// loss gradient of each pooled embedding. Accumulates across the batch.
// A tape can be consumed once.
EncoderParams backward(ForwardTape& tape, const std::vector<Eigen::VectorXd>& pooled_grads);

// Versioned checkpoint: magic + JSON header (config, tensor directory,
// caller metadata) + raw little-endian f64 payload.
void save_checkpoint(const EncoderModel& model, const std::filesystem::path& path,
                     const nlohmann::json& meta);
struct Checkpoint {
  EncoderModel model;
  nlohmann::json meta;
};
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace pivotclr
