// SPDX-FileCopyrightText: © 2026 tinySNN contributors
//
// SPDX-License-Identifier: Apache-2.0

#include "tinysnn/config.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tinysnn {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string unquote(const std::string& s)
{
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"')
                          || (s.front() == '\'' && s.back() == '\''))) {
        return s.substr(1, s.size() - 2);
    }
    return s;
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(s);
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

class ValueParser {
public:
    ValueParser(std::string key, std::string value) : key_(std::move(key)), value_(std::move(value)) {}

    double real() const
    {
        try {
            std::size_t pos = 0;
            const double v = std::stod(value_, &pos);
            if (pos != value_.size()) {
                throw std::invalid_argument("");
            }
            return v;
        } catch (...) {
            fail("a real number");
        }
    }
    long long integer() const
    {
        try {
            std::size_t pos = 0;
            const long long v = std::stoll(value_, &pos);
            if (pos != value_.size()) {
                throw std::invalid_argument("");
            }
            return v;
        } catch (...) {
            fail("an integer");
        }
    }
    std::uint64_t uinteger() const
    {
        const long long v = integer();
        if (v < 0) {
            fail("a non-negative integer");
        }
        return static_cast<std::uint64_t>(v);
    }
    bool boolean() const
    {
        if (value_ == "true" || value_ == "1" || value_ == "yes" || value_ == "on") {
            return true;
        }
        if (value_ == "false" || value_ == "0" || value_ == "no" || value_ == "off") {
            return false;
        }
        fail("a boolean (true/false)");
    }
    const std::string& str() const { return value_; }

    [[noreturn]] void fail(const char* expected) const
    {
        throw std::invalid_argument("config key \"" + key_ + "\": expected " + expected
                                    + ", got \"" + value_ + "\"");
    }

private:
    std::string key_;
    std::string value_;
};

} // namespace

std::vector<PrecisionLevel> ExperimentConfig::default_levels()
{
    // 4/6/8/16-bit levels; weights live in [0, 1), potentials get three
    // integer bits of headroom for the adaptive threshold.
    const auto level = [](int w_frac, int v_frac) {
        PrecisionLevel l;
        l.weights = FixedPointFormat{false, 0, w_frac};
        l.v_mem = FixedPointFormat{false, 3, v_frac};
        l.v_thresh = FixedPointFormat{false, 3, v_frac};
        return l;
    };
    return {level(4, 1), level(6, 3), level(8, 5), level(16, 13)};
}

void ExperimentConfig::validate() const
{
    layer.validate();
    learn.validate();
    if (rule != "enhanced" && rule != "pairwise") {
        throw std::invalid_argument("config: rule must be enhanced or pairwise");
    }
    if (rate_scale < 0.0 || rate_scale > 1.0) {
        throw std::invalid_argument("config: rate_scale must be in [0, 1]");
    }
    if (num_inputs == 0 || num_excitatory == 0) {
        throw std::invalid_argument("config: topology counts must be positive");
    }
    if (num_classes < 1) {
        throw std::invalid_argument("config: num_classes must be >= 1");
    }
    if (w_init_max < 0.0 || w_init_max > learn.w_m) {
        throw std::invalid_argument("config: w_init_max must be in [0, w_m]");
    }
    for (double mu : mu_list) {
        if (mu < 0.0) {
            throw std::invalid_argument("config: mu values must be non-negative");
        }
    }
}

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin)
{
    ExperimentConfig cfg;
    cfg.levels = ExperimentConfig::default_levels();
    cfg.learn.update_period = cfg.num_steps; // one update per presentation by default
    bool update_period_set = false;
    bool seen_path[4] = {false, false, false, false};

    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) {
            raw.erase(hash);
        }
        const std::string line = trim(raw);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument(origin + ":" + std::to_string(line_no)
                                        + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = unquote(trim(line.substr(eq + 1)));
        if (key.empty()) {
            throw std::invalid_argument(origin + ":" + std::to_string(line_no) + ": empty key");
        }
        ValueParser v(key, value);

        if (key == "train_images") {
            cfg.train_images = value;
            seen_path[0] = true;
        } else if (key == "train_labels") {
            cfg.train_labels = value;
            seen_path[1] = true;
        } else if (key == "test_images") {
            cfg.test_images = value;
            seen_path[2] = true;
        } else if (key == "test_labels") {
            cfg.test_labels = value;
            seen_path[3] = true;
        } else if (key == "dataset_name") {
            cfg.dataset_name = value;
        } else if (key == "num_classes") {
            cfg.num_classes = static_cast<int>(v.integer());
        } else if (key == "num_inputs") {
            cfg.num_inputs = static_cast<std::size_t>(v.uinteger());
        } else if (key == "num_excitatory") {
            cfg.num_excitatory = static_cast<std::size_t>(v.uinteger());
        } else if (key == "num_steps") {
            cfg.num_steps = static_cast<std::size_t>(v.uinteger());
        } else if (key == "rate_scale") {
            cfg.rate_scale = v.real();
        } else if (key == "v_rest") {
            cfg.layer.v_rest = v.real();
        } else if (key == "v_reset") {
            cfg.layer.v_reset = v.real();
        } else if (key == "v_thresh_base") {
            cfg.layer.v_thresh_base = v.real();
        } else if (key == "tau_mem") {
            cfg.layer.tau_mem = v.real();
        } else if (key == "theta_inc") {
            cfg.layer.theta_inc = v.real();
        } else if (key == "tau_theta") {
            cfg.layer.tau_theta = v.real();
        } else if (key == "t_refrac") {
            cfg.layer.t_refrac = static_cast<int>(v.integer());
        } else if (key == "w_inh") {
            cfg.layer.w_inh = v.real();
        } else if (key == "eta_post") {
            cfg.learn.eta_post = v.real();
        } else if (key == "w_m") {
            cfg.learn.w_m = v.real();
        } else if (key == "n_th") {
            cfg.learn.n_th = static_cast<std::uint32_t>(v.uinteger());
        } else if (key == "update_period") {
            cfg.learn.update_period = static_cast<std::size_t>(v.uinteger());
            update_period_set = true;
        } else if (key == "trace_set_to_one") {
            cfg.learn.trace_set_to_one = v.boolean();
        } else if (key == "tau_pre") {
            cfg.learn.tau_pre = v.real();
        } else if (key == "x_tar") {
            cfg.learn.x_tar = v.real();
        } else if (key == "rule") {
            cfg.rule = value;
        } else if (key == "normalize") {
            cfg.normalize = v.boolean();
        } else if (key == "norm_target_sum") {
            cfg.norm_target_sum = v.real();
        } else if (key == "w_init_max") {
            cfg.w_init_max = v.real();
        } else if (key == "schemes") {
            cfg.schemes.clear();
            for (const auto& s : split_list(value)) {
                cfg.schemes.push_back(parse_scheme(s));
            }
        } else if (key == "roundings") {
            cfg.roundings.clear();
            for (const auto& s : split_list(value)) {
                cfg.roundings.push_back(parse_rounding(s));
            }
        } else if (key == "wfmt_levels" || key == "vmem_levels" || key == "vth_levels") {
            const std::vector<std::string> items = split_list(value);
            if (cfg.levels.size() != items.size()) {
                cfg.levels.resize(items.size());
            }
            for (std::size_t i = 0; i < items.size(); ++i) {
                const std::optional<FixedPointFormat> fmt = parse_format_tag(items[i]);
                if (key == "wfmt_levels") {
                    cfg.levels[i].weights = fmt;
                } else if (key == "vmem_levels") {
                    cfg.levels[i].v_mem = fmt;
                } else {
                    cfg.levels[i].v_thresh = fmt;
                }
            }
        } else if (key == "groups") {
            cfg.groups.clear();
            for (const auto& s : split_list(value)) {
                cfg.groups.push_back(parse_groups(s));
            }
        } else if (key == "mu_list") {
            cfg.mu_list.clear();
            for (const auto& s : split_list(value)) {
                cfg.mu_list.push_back(ValueParser(key, s).real());
            }
        } else if (key == "mem_budget_bits") {
            cfg.mem_budget_bits = value == "none" ? std::nullopt
                                                  : std::optional<std::uint64_t>(v.uinteger());
        } else if (key == "energy_budget_j") {
            cfg.energy_budget_j =
                value == "none" ? std::nullopt : std::optional<double>(v.real());
        } else if (key == "energy_synaptic_j") {
            cfg.energy_coeffs.synaptic_j = v.real();
        } else if (key == "energy_neuron_j") {
            cfg.energy_coeffs.neuron_j = v.real();
        } else if (key == "energy_learning_j") {
            cfg.energy_coeffs.learning_j = v.real();
        } else if (key == "energy_inhibition_j") {
            cfg.energy_coeffs.inhibition_j = v.real();
        } else if (key == "seed") {
            cfg.seed = v.uinteger();
        } else if (key == "train_samples") {
            cfg.train_samples = static_cast<std::size_t>(v.uinteger());
        } else if (key == "test_samples") {
            cfg.test_samples = static_cast<std::size_t>(v.uinteger());
        } else if (key == "label_samples") {
            cfg.label_samples = static_cast<std::size_t>(v.uinteger());
        } else if (key == "calib_samples") {
            cfg.calib_samples = static_cast<std::size_t>(v.uinteger());
        } else {
            throw std::invalid_argument(origin + ":" + std::to_string(line_no)
                                        + ": unknown key \"" + key + "\"");
        }
    }

    for (int i = 0; i < 4; ++i) {
        if (!seen_path[i]) {
            static const char* names[4] = {"train_images", "train_labels", "test_images",
                                           "test_labels"};
            throw std::invalid_argument(origin + ": missing required key \"" + names[i] + "\"");
        }
    }
    if (!update_period_set) {
        cfg.learn.update_period = cfg.num_steps;
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig parse_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open config file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

std::string config_key_reference()
{
    return R"(config keys (key = value, '#' comments, lists comma-separated):
  train_images / train_labels / test_images / test_labels   IDX paths, required
                                     (gzip-compressed files are detected)
  dataset_name   = mnist            name used in reports
  num_classes    = 10
  num_inputs     = 784              input neurons (pixels)
  num_excitatory = 100              excitatory neurons
  num_steps      = 250              presentation window length (timesteps)
  rate_scale     = 0.06375          spike probability per step at intensity 1
  v_rest = 0, v_reset = 0, v_thresh_base = 0.5
  tau_mem = 100, theta_inc = 0.05, tau_theta = 1e5
  t_refrac = 5, w_inh = 0.1         refractory steps, lateral inhibition
  eta_post = 0.01, w_m = 1, n_th = 10
  update_period  = num_steps        timesteps between weight updates
  trace_set_to_one = true, tau_pre = 20
  x_tar = 0.4                       pair-wise rule target trace
  rule = enhanced                   enhanced | pairwise
  normalize = true, norm_target_sum = 78.4
  w_init_max = 0.3                  initial weights uniform in [0, w_init_max]
  schemes   = ptq,itq               exploration grid
  roundings = truncate,nearest,stochastic
  wfmt_levels  = qu0.4,qu0.6,qu0.8,qu0.16     aligned per-level formats
  vmem_levels  = qu3.1,qu3.3,qu3.5,qu3.13
  vth_levels   = qu3.1,qu3.3,qu3.5,qu3.13
  groups    = qw,qwn
  mu_list = 0,0.01,0.05,0.1,0.5     trade-off coefficients for select
  mem_budget_bits = none, energy_budget_j = none
  energy_synaptic_j = 1e-9, energy_neuron_j = 1e-9
  energy_learning_j = 1e-9, energy_inhibition_j = 1e-9
  seed = 12345                      master seed, drives every random stream
  train_samples = 5000, test_samples = 1000
  label_samples = 5000, calib_samples = 200
)";
}

} // namespace tinysnn
