#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qaoa/labeled.hpp"

namespace qaoa {

// Fully connected 2p-output regressor with one hidden rectifier layer:
// out = w2 * relu(w1 * x + b1) + b2. Matrices are row-major.
struct MlpModel {
  int input_dim = 0;
  int hidden_dim = 0;
  int output_dim = 0;
  std::vector<double> w1;  // hidden_dim x input_dim
  std::vector<double> b1;  // hidden_dim
  std::vector<double> w2;  // output_dim x hidden_dim
  std::vector<double> b2;  // output_dim

  struct Meta {
    int n = 0;
    int p = 0;
    std::string ensemble;
    std::string training_summary;
  } meta;

  void validate() const;  // throws on inconsistent dimensions or non-finite entries
};

inline constexpr int kDefaultHiddenDim = 100;

std::vector<double> forward(const MlpModel& model, std::span<const double> x);

using Sample = std::pair<std::vector<double>, std::vector<double>>;  // (features, targets)

// Mean over the batch of the (unsquared) Euclidean residual norms.
double l2_loss(const MlpModel& model, const std::vector<Sample>& batch);

// Mean gradient of the batch loss with respect to every weight; the same
// backpropagation path the trainer steps on.
struct LossGradients {
  std::vector<double> w1, b1, w2, b2;
};
LossGradients l2_loss_gradients(const MlpModel& model, const std::vector<Sample>& batch,
                                bool squared = false);

struct TrainConfig {
  double learning_rate = 1e-3;
  double lr_decay = 1.0;      // multiplicative per epoch; 1.0 keeps the rate constant
  double weight_decay = 0.0;  // decoupled L2 pull on w1/w2 (not biases)
  int batch_size = 32;
  int max_epochs = 200;
  double validation_fraction = 0.1;
  int patience = 20;  // early stopping on validation loss
  uint64_t seed = 0;
  int hidden_dim = kDefaultHiddenDim;
  bool squared_loss = false;  // alternative residual form, off by default
  // Copies of each training graph under random node relabelings (the optimal
  // parameters are relabeling-invariant, the encoding is not). 1 = off.
  // Validation always sees unaugmented instances.
  int augment_permutations = 1;
};

struct TrainReport {
  std::vector<double> train_loss;  // per epoch
  std::vector<double> val_loss;    // per epoch
  int stopped_epoch = 0;
  std::string model_checksum;
};

std::pair<MlpModel, TrainReport> train(const std::vector<LabeledInstance>& dataset,
                                       const TrainConfig& cfg);

// Raw-sample variant used by train() after feature extraction.
std::pair<MlpModel, TrainReport> train_samples(const std::vector<Sample>& samples,
                                               int input_dim, int output_dim,
                                               const TrainConfig& cfg,
                                               MlpModel::Meta meta = {});

// JSON round-trip is lossless: every weight is reproduced exactly.
void save_model(const MlpModel& model, const std::filesystem::path& path);
MlpModel load_model(const std::filesystem::path& path);

}  // namespace qaoa
