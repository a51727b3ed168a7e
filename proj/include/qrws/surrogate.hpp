// surrogate.hpp
// Feed-forward network regressing the success probability p(phi, zeta, m),
// trained on sweep datasets and used to extrapolate the landscape to coin
// sizes beyond the simulated range.
//
// Inputs are scaled to (phi / 2 pi, zeta / 2 pi, m / 16), hidden layers use
// tanh, and the head is 0.5 * sigmoid, so every prediction lies in (0, 0.5).

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qrws/sweep.hpp"

namespace qrws {

struct InputScale {
    double phi = 6.283185307179586;
    double zeta = 6.283185307179586;
    double m = 16.0;
};

class SurrogateModel {
public:
    // Zero weights everywhere. layer_sizes = {3, hidden..., 1}.
    explicit SurrogateModel(std::vector<int> layer_sizes, InputScale scale = {});

    // Xavier-uniform weights, zero biases, reproducible from `seed`.
    static SurrogateModel initialized(int hidden_layers, int width, std::uint64_t seed);

    const std::vector<int>& layer_sizes() const { return layer_sizes_; }
    std::size_t layer_count() const { return layer_sizes_.size() - 1; }
    const InputScale& scale() const { return scale_; }
    std::string activation() const { return "tanh"; }

    // All weights and biases, layer by layer: weights (out x in, row-major)
    // then biases.
    std::span<double> parameters() { return parameters_; }
    std::span<const double> parameters() const { return parameters_; }

    std::size_t weight_offset(std::size_t layer) const { return offsets_[layer]; }
    std::size_t bias_offset(std::size_t layer) const {
        return offsets_[layer] + static_cast<std::size_t>(layer_sizes_[layer]) * layer_sizes_[layer + 1];
    }

private:
    std::vector<int> layer_sizes_;
    InputScale scale_;
    std::vector<std::size_t> offsets_;
    std::vector<double> parameters_;
};

double forward(const SurrogateModel& model, double phi, double zeta, double m);

struct Sample {
    double phi = 0.0;
    double zeta = 0.0;
    double m = 0.0;
    double p = 0.0;
};

// Mean squared error over `batch`; gradient (same layout as parameters()) is
// written into `gradient`, which is resized as needed.
double loss_and_gradient(const SurrogateModel& model, std::span<const Sample> batch, std::vector<double>& gradient);

double mean_squared_error(const SurrogateModel& model, std::span<const Sample> samples);

struct TrainParams {
    int hidden_layers = 4;
    int width = 64;
    int epochs = 500;
    int batch_size = 256;
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double adam_epsilon = 1e-8;
    double validation_fraction = 0.1;
    std::uint64_t seed = 1;
    std::size_t min_records_per_m = 1000;
};

struct TrainReport {
    int epochs_run = 0;
    double final_train_loss = 0.0;
    double final_validation_loss = 0.0;
    std::vector<double> train_history;       // mean minibatch loss per epoch
    std::vector<double> validation_history;  // validation MSE after each epoch
};

struct TrainResult {
    SurrogateModel model;
    TrainReport report;
};

// Called after every epoch with (epoch, train loss, validation loss).
using EpochCallback = std::function<void(int, double, double)>;

// Deterministic 90/10 split (seeded shuffle), then minibatch Adam on the MSE.
// Throws std::invalid_argument when some m has fewer than min_records_per_m
// records, DivergenceError when the loss stops being finite.
TrainResult train(std::span<const SweepDataset> datasets, const TrainParams& params,
                  const EpochCallback& on_epoch = {});

std::vector<Sample> samples_from(std::span<const SweepDataset> datasets);

// Predicted landscape at coin size m on the sweep_grid layout.
SweepDataset predict_grid(const SurrogateModel& model, int m, int phi_steps = 180, int zeta_steps = 180);

// alpha fitted to the ridge of the predicted landscape.
double predict_alpha_ml(const SurrogateModel& model, int m, int grid_steps = 180, double column_fraction = 0.9);

// JSON document tagged "qrws-surrogate/1".
std::string model_to_json(const SurrogateModel& model);
SurrogateModel model_from_json(const std::string& text);
void save_model(const SurrogateModel& model, const std::filesystem::path& path);
SurrogateModel load_model(const std::filesystem::path& path);

}  // namespace qrws
