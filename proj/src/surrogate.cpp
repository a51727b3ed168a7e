// surrogate.cpp

#include "qrws/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "qrws/analysis.hpp"
#include "qrws/coin.hpp"
#include "qrws/error.hpp"
#include "qrws/io.hpp"

namespace qrws {

namespace {

constexpr const char* kFormatTag = "qrws-surrogate/1";

double unit_interval(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Per-sample activations: acts[0] is the scaled input, acts[l + 1] the output
// of layer l (tanh for hidden layers, sigmoid before the 0.5 factor for the head).
class Activations {
public:
    explicit Activations(const SurrogateModel& model) {
        for (int size : model.layer_sizes()) acts_.emplace_back(static_cast<std::size_t>(size));
    }

    std::vector<double>& operator[](std::size_t l) { return acts_[l]; }
    const std::vector<double>& operator[](std::size_t l) const { return acts_[l]; }

private:
    std::vector<std::vector<double>> acts_;
};

// Returns the prediction, 0.5 * sigmoid(z_out).
double run_forward(const SurrogateModel& model, double phi, double zeta, double m, Activations& acts) {
    const auto& sizes = model.layer_sizes();
    const auto params = model.parameters();
    acts[0][0] = phi / model.scale().phi;
    acts[0][1] = zeta / model.scale().zeta;
    acts[0][2] = m / model.scale().m;
    const std::size_t layers = model.layer_count();
    for (std::size_t l = 0; l < layers; ++l) {
        const int in = sizes[l];
        const int out = sizes[l + 1];
        const double* w = params.data() + model.weight_offset(l);
        const double* b = params.data() + model.bias_offset(l);
        const double* a = acts[l].data();
        double* z = acts[l + 1].data();
        for (int o = 0; o < out; ++o) {
            const double* row = w + static_cast<std::size_t>(o) * in;
            double sum = b[o];
            for (int i = 0; i < in; ++i) sum += row[i] * a[i];
            z[o] = l + 1 < layers ? std::tanh(sum) : sigmoid(sum);
        }
    }
    return 0.5 * acts[layers][0];
}

}  // namespace

SurrogateModel::SurrogateModel(std::vector<int> layer_sizes, InputScale scale)
    : layer_sizes_(std::move(layer_sizes)), scale_(scale) {
    if (layer_sizes_.size() < 2) throw std::invalid_argument("model needs at least an input and an output layer");
    if (layer_sizes_.front() != 3) throw std::invalid_argument("model input layer must have 3 units");
    if (layer_sizes_.back() != 1) throw std::invalid_argument("model output layer must have 1 unit");
    if (std::any_of(layer_sizes_.begin(), layer_sizes_.end(), [](int n) { return n < 1; }))
        throw std::invalid_argument("layer sizes must be positive");
    if (!(scale_.phi > 0.0 && scale_.zeta > 0.0 && scale_.m > 0.0))
        throw std::invalid_argument("input scales must be positive");
    std::size_t total = 0;
    for (std::size_t l = 0; l + 1 < layer_sizes_.size(); ++l) {
        offsets_.push_back(total);
        total += static_cast<std::size_t>(layer_sizes_[l]) * layer_sizes_[l + 1] + layer_sizes_[l + 1];
    }
    parameters_.assign(total, 0.0);
}

SurrogateModel SurrogateModel::initialized(int hidden_layers, int width, std::uint64_t seed) {
    if (hidden_layers < 1 || width < 1) throw std::invalid_argument("need at least one hidden layer of width >= 1");
    std::vector<int> sizes{3};
    for (int l = 0; l < hidden_layers; ++l) sizes.push_back(width);
    sizes.push_back(1);
    SurrogateModel model(sizes);

    std::mt19937_64 rng(seed);
    for (std::size_t l = 0; l < model.layer_count(); ++l) {
        const int in = sizes[l];
        const int out = sizes[l + 1];
        const double limit = std::sqrt(6.0 / (in + out));
        double* w = model.parameters_.data() + model.weight_offset(l);
        for (std::size_t k = 0; k < static_cast<std::size_t>(in) * out; ++k)
            w[k] = (2.0 * unit_interval(rng()) - 1.0) * limit;
    }
    return model;
}

double forward(const SurrogateModel& model, double phi, double zeta, double m) {
    Activations acts(model);
    return run_forward(model, phi, zeta, m, acts);
}

double loss_and_gradient(const SurrogateModel& model, std::span<const Sample> batch, std::vector<double>& gradient) {
    if (batch.empty()) throw std::invalid_argument("empty batch");
    const auto& sizes = model.layer_sizes();
    const auto params = model.parameters();
    const std::size_t layers = model.layer_count();
    gradient.assign(params.size(), 0.0);

    Activations acts(model);
    std::vector<double> delta;
    std::vector<double> previous;
    const double inv_n = 1.0 / static_cast<double>(batch.size());
    double loss = 0.0;

    for (const Sample& sample : batch) {
        const double y = run_forward(model, sample.phi, sample.zeta, sample.m, acts);
        const double err = y - sample.p;
        loss += err * err;

        // d loss / d z_out, with y = 0.5 s and ds/dz = s (1 - s)
        const double s = acts[layers][0];
        delta.assign(1, 2.0 * err * inv_n * 0.5 * s * (1.0 - s));

        for (std::size_t l = layers; l-- > 0;) {
            const int in = sizes[l];
            const int out = sizes[l + 1];
            const double* a = acts[l].data();
            double* gw = gradient.data() + model.weight_offset(l);
            double* gb = gradient.data() + model.bias_offset(l);
            for (int o = 0; o < out; ++o) {
                const double d = delta[o];
                double* grow = gw + static_cast<std::size_t>(o) * in;
                for (int i = 0; i < in; ++i) grow[i] += d * a[i];
                gb[o] += d;
            }
            if (l == 0) break;
            const double* w = params.data() + model.weight_offset(l);
            previous.assign(static_cast<std::size_t>(in), 0.0);
            for (int o = 0; o < out; ++o) {
                const double d = delta[o];
                const double* row = w + static_cast<std::size_t>(o) * in;
                for (int i = 0; i < in; ++i) previous[i] += row[i] * d;
            }
            for (int i = 0; i < in; ++i) previous[i] *= 1.0 - a[i] * a[i];
            delta.swap(previous);
        }
    }
    return loss * inv_n;
}

double mean_squared_error(const SurrogateModel& model, std::span<const Sample> samples) {
    if (samples.empty()) return std::nan("");
    Activations acts(model);
    double sum = 0.0;
    for (const Sample& s : samples) {
        const double err = run_forward(model, s.phi, s.zeta, s.m, acts) - s.p;
        sum += err * err;
    }
    return sum / static_cast<double>(samples.size());
}

std::vector<Sample> samples_from(std::span<const SweepDataset> datasets) {
    std::vector<Sample> samples;
    for (const auto& dataset : datasets)
        for (const auto& r : dataset.records) samples.push_back({r.phi, r.zeta, static_cast<double>(r.m), r.p});
    return samples;
}

TrainResult train(std::span<const SweepDataset> datasets, const TrainParams& params, const EpochCallback& on_epoch) {
    if (params.epochs < 1 || params.batch_size < 1) throw std::invalid_argument("epochs and batch size must be >= 1");
    if (!(params.validation_fraction >= 0.0 && params.validation_fraction < 1.0))
        throw std::invalid_argument("validation fraction must lie in [0, 1)");

    std::vector<Sample> samples = samples_from(datasets);
    std::map<int, std::size_t> per_m;
    for (const auto& s : samples) ++per_m[static_cast<int>(s.m)];
    if (per_m.empty()) throw std::invalid_argument("no training records");
    for (const auto& [m, count] : per_m)
        if (count < params.min_records_per_m)
            throw std::invalid_argument("coin size " + std::to_string(m) + " has " + std::to_string(count) +
                                        " records, need at least " + std::to_string(params.min_records_per_m));

    std::mt19937_64 rng(params.seed);
    auto shuffle = [&rng](auto& items) {
        for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[rng() % i]);
    };

    shuffle(samples);
    const auto validation_count = static_cast<std::size_t>(params.validation_fraction * samples.size());
    const std::span<const Sample> validation(samples.data(), validation_count);
    std::vector<Sample> training(samples.begin() + static_cast<std::ptrdiff_t>(validation_count), samples.end());
    if (training.empty()) throw std::invalid_argument("no training records left after the validation split");

    TrainResult result{SurrogateModel::initialized(params.hidden_layers, params.width, params.seed ^ 0x5eedULL), {}};
    auto weights = result.model.parameters();
    std::vector<double> first_moment(weights.size(), 0.0);
    std::vector<double> second_moment(weights.size(), 0.0);
    std::vector<double> gradient;
    long long step = 0;

    for (int epoch = 1; epoch <= params.epochs; ++epoch) {
        shuffle(training);
        double epoch_loss = 0.0;
        for (std::size_t begin = 0; begin < training.size(); begin += params.batch_size) {
            const std::size_t count = std::min<std::size_t>(params.batch_size, training.size() - begin);
            const double loss = loss_and_gradient(result.model, {training.data() + begin, count}, gradient);
            if (!std::isfinite(loss))
                throw DivergenceError("training diverged at epoch " + std::to_string(epoch) + ", batch starting at " +
                                      std::to_string(begin) + " (loss " + std::to_string(loss) + ")");
            epoch_loss += loss * static_cast<double>(count);

            ++step;
            const double correction1 = 1.0 - std::pow(params.beta1, static_cast<double>(step));
            const double correction2 = 1.0 - std::pow(params.beta2, static_cast<double>(step));
            for (std::size_t k = 0; k < weights.size(); ++k) {
                first_moment[k] = params.beta1 * first_moment[k] + (1.0 - params.beta1) * gradient[k];
                second_moment[k] = params.beta2 * second_moment[k] + (1.0 - params.beta2) * gradient[k] * gradient[k];
                const double m_hat = first_moment[k] / correction1;
                const double v_hat = second_moment[k] / correction2;
                weights[k] -= params.learning_rate * m_hat / (std::sqrt(v_hat) + params.adam_epsilon);
            }
        }
        const double train_loss = epoch_loss / static_cast<double>(training.size());
        const double validation_loss = mean_squared_error(result.model, validation);
        result.report.train_history.push_back(train_loss);
        result.report.validation_history.push_back(validation_loss);
        result.report.epochs_run = epoch;
        result.report.final_train_loss = train_loss;
        result.report.final_validation_loss = validation_loss;
        if (on_epoch) on_epoch(epoch, train_loss, validation_loss);
    }
    return result;
}

SweepDataset predict_grid(const SurrogateModel& model, int m, int phi_steps, int zeta_steps) {
    if (phi_steps < 2 || zeta_steps < 2) throw std::invalid_argument("grid steps must be >= 2");
    SweepDataset dataset;
    dataset.meta = {SweepMode::Grid, m, 0, 0, 0, phi_steps, zeta_steps};
    dataset.records.reserve(static_cast<std::size_t>(phi_steps) * zeta_steps);
    for (int i = 1; i <= phi_steps; ++i) {
        const double phi = reduce_angle(grid_angle(i, phi_steps));
        for (int j = 1; j <= zeta_steps; ++j) {
            const double zeta = reduce_angle(grid_angle(j, zeta_steps));
            dataset.records.push_back({phi, zeta, m, forward(model, phi, zeta, m)});
        }
    }
    return dataset;
}

double predict_alpha_ml(const SurrogateModel& model, int m, int grid_steps, double column_fraction) {
    const auto ridge = extract_ridge(predict_grid(model, m, grid_steps, grid_steps), column_fraction);
    return fit_alpha(ridge);
}

std::string model_to_json(const SurrogateModel& model) {
    nlohmann::ordered_json j;
    j["format"] = kFormatTag;
    j["activation"] = model.activation();
    j["output"] = "0.5*sigmoid";
    j["layer_sizes"] = model.layer_sizes();
    j["input_scale"] = {{"phi", model.scale().phi}, {"zeta", model.scale().zeta}, {"m", model.scale().m}};
    auto& layers = j["layers"] = nlohmann::ordered_json::array();
    const auto params = model.parameters();
    const auto& sizes = model.layer_sizes();
    for (std::size_t l = 0; l < model.layer_count(); ++l) {
        const std::size_t weight_count = static_cast<std::size_t>(sizes[l]) * sizes[l + 1];
        const auto w = params.subspan(model.weight_offset(l), weight_count);
        const auto b = params.subspan(model.bias_offset(l), static_cast<std::size_t>(sizes[l + 1]));
        layers.push_back({{"inputs", sizes[l]},
                          {"outputs", sizes[l + 1]},
                          {"weights", std::vector<double>(w.begin(), w.end())},
                          {"biases", std::vector<double>(b.begin(), b.end())}});
    }
    return j.dump(1) + "\n";
}

namespace {

SurrogateModel parse_model(const nlohmann::json& j) {
    if (j.value("format", std::string{}) != kFormatTag)
        throw std::runtime_error(std::string("surrogate model: expected format tag ") + kFormatTag);
    if (j.value("activation", std::string{}) != "tanh")
        throw std::runtime_error("surrogate model: unsupported activation");
    InputScale scale;
    scale.phi = j.at("input_scale").at("phi").get<double>();
    scale.zeta = j.at("input_scale").at("zeta").get<double>();
    scale.m = j.at("input_scale").at("m").get<double>();
    SurrogateModel model(j.at("layer_sizes").get<std::vector<int>>(), scale);

    const auto& layers = j.at("layers");
    if (layers.size() != model.layer_count()) throw std::runtime_error("surrogate model: layer count mismatch");
    const auto& sizes = model.layer_sizes();
    auto params = model.parameters();
    for (std::size_t l = 0; l < model.layer_count(); ++l) {
        const auto w = layers[l].at("weights").get<std::vector<double>>();
        const auto b = layers[l].at("biases").get<std::vector<double>>();
        if (w.size() != static_cast<std::size_t>(sizes[l]) * sizes[l + 1] ||
            b.size() != static_cast<std::size_t>(sizes[l + 1]))
            throw std::runtime_error("surrogate model: layer " + std::to_string(l) + " has malformed shapes");
        std::copy(w.begin(), w.end(), params.begin() + static_cast<std::ptrdiff_t>(model.weight_offset(l)));
        std::copy(b.begin(), b.end(), params.begin() + static_cast<std::ptrdiff_t>(model.bias_offset(l)));
    }
    return model;
}

}  // namespace

SurrogateModel model_from_json(const std::string& text) {
    try {
        return parse_model(nlohmann::json::parse(text));
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("surrogate model: ") + e.what());
    }
}

void save_model(const SurrogateModel& model, const std::filesystem::path& path) {
    write_text_file(path, model_to_json(model));
}

SurrogateModel load_model(const std::filesystem::path& path) { return model_from_json(read_text_file(path)); }

}  // namespace qrws
