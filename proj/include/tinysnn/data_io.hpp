// SPDX-FileCopyrightText: © 2026 tinySNN contributors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tinysnn/network.hpp"
#include "tinysnn/selection.hpp"

namespace tinysnn {

struct Dataset {
    std::string name;
    std::size_t num_images = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint8_t> images; // [num_images * rows * cols], raw bytes
    std::vector<std::uint8_t> labels; // [num_images]

    std::size_t image_size() const { return rows * cols; }
    std::span<const std::uint8_t> image(std::size_t i) const
    {
        return {images.data() + i * image_size(), image_size()};
    }
};

class IdxMagicError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class IdxTruncatedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class IdxCountError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses a big-endian IDX image/label file pair (magic 0x00000803 with dims
/// [N, rows, cols], magic 0x00000801 with [N]); raw bytes are preserved and
/// the two counts are cross-checked. Gzip-compressed files are detected by
/// their magic bytes and inflated transparently.
Dataset load_idx(const std::string& images_path, const std::string& labels_path);

struct LoadedModel {
    NetworkModel model;
    std::string seed_lineage;
};

/// Versioned structured-text model file. Quantized groups are stored as
/// scaled integers with their format; fp32 groups as decimal text with full
/// round-trip precision, so save/load is bit-exact.
void save_model(const NetworkModel& model, const std::string& path,
                const std::string& seed_lineage);

LoadedModel load_model(const std::string& path);

/// CSV schema:
/// dataset,scheme,rounding,wfmt,vmemfmt,vthfmt,acc,mem_bits,mem_norm,
/// e_train_J,e_infer_J,mu,reward,selected
void write_report(std::span<const CandidateReport> candidates, const std::string& path);

std::vector<CandidateReport> read_report(const std::string& path);

} // namespace tinysnn
