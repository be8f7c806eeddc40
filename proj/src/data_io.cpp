// SPDX-FileCopyrightText: © 2026 tinySNN contributors
//
// SPDX-License-Identifier: Apache-2.0

#include "tinysnn/data_io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <zlib.h>

namespace tinysnn {

namespace {

std::vector<std::uint8_t> read_file_bytes(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open file: " + path);
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return bytes;
}

std::vector<std::uint8_t> gunzip(const std::vector<std::uint8_t>& in, const std::string& path)
{
    z_stream zs{};
    if (inflateInit2(&zs, 15 + 16) != Z_OK) { // 15+16: gzip wrapper
        throw std::runtime_error("zlib init failed for " + path);
    }
    std::vector<std::uint8_t> out;
    out.reserve(in.size() * 4);
    std::uint8_t buf[1 << 16];
    zs.next_in = const_cast<std::uint8_t*>(in.data());
    zs.avail_in = static_cast<uInt>(in.size());
    int rc = Z_OK;
    do {
        zs.next_out = buf;
        zs.avail_out = sizeof(buf);
        rc = inflate(&zs, Z_NO_FLUSH);
        if (rc != Z_OK && rc != Z_STREAM_END) {
            inflateEnd(&zs);
            throw std::runtime_error("gzip decompression failed for " + path + " (zlib rc "
                                     + std::to_string(rc) + ")");
        }
        out.insert(out.end(), buf, buf + (sizeof(buf) - zs.avail_out));
    } while (rc != Z_STREAM_END);
    inflateEnd(&zs);
    return out;
}

std::vector<std::uint8_t> read_maybe_gzipped(const std::string& path)
{
    std::vector<std::uint8_t> bytes = read_file_bytes(path);
    if (bytes.size() >= 2 && bytes[0] == 0x1f && bytes[1] == 0x8b) {
        return gunzip(bytes, path);
    }
    return bytes;
}

std::uint32_t read_u32_be(const std::vector<std::uint8_t>& b, std::size_t offset,
                          const std::string& path)
{
    if (offset + 4 > b.size()) {
        throw IdxTruncatedError("idx: truncated file " + path + " (need 4 bytes at offset "
                                + std::to_string(offset) + ", have "
                                + std::to_string(b.size() - std::min(b.size(), offset)) + ")");
    }
    return (std::uint32_t(b[offset]) << 24) | (std::uint32_t(b[offset + 1]) << 16)
           | (std::uint32_t(b[offset + 2]) << 8) | std::uint32_t(b[offset + 3]);
}

char hexdigit(unsigned v)
{
    return "0123456789abcdef"[v & 0xf];
}

std::string hex32(std::uint32_t v)
{
    std::string s = "0x";
    for (int shift = 28; shift >= 0; shift -= 4) {
        s += hexdigit(v >> shift);
    }
    return s;
}

} // namespace

Dataset load_idx(const std::string& images_path, const std::string& labels_path)
{
    const std::vector<std::uint8_t> img = read_maybe_gzipped(images_path);
    const std::vector<std::uint8_t> lab = read_maybe_gzipped(labels_path);

    const std::uint32_t img_magic = read_u32_be(img, 0, images_path);
    if (img_magic != 0x00000803) {
        throw IdxMagicError("idx: bad magic in " + images_path + " at offset 0 (expected "
                            + hex32(0x803) + ", found " + hex32(img_magic) + ")");
    }
    const std::uint32_t lab_magic = read_u32_be(lab, 0, labels_path);
    if (lab_magic != 0x00000801) {
        throw IdxMagicError("idx: bad magic in " + labels_path + " at offset 0 (expected "
                            + hex32(0x801) + ", found " + hex32(lab_magic) + ")");
    }

    Dataset ds;
    ds.num_images = read_u32_be(img, 4, images_path);
    ds.rows = read_u32_be(img, 8, images_path);
    ds.cols = read_u32_be(img, 12, images_path);
    const std::uint32_t num_labels = read_u32_be(lab, 4, labels_path);
    if (num_labels != ds.num_images) {
        throw IdxCountError("idx: count mismatch (images " + std::to_string(ds.num_images)
                            + " in " + images_path + ", labels " + std::to_string(num_labels)
                            + " in " + labels_path + ")");
    }

    const std::size_t pixel_bytes = ds.num_images * ds.rows * ds.cols;
    if (img.size() < 16 + pixel_bytes) {
        throw IdxTruncatedError("idx: truncated file " + images_path + " (expected "
                                + std::to_string(16 + pixel_bytes) + " bytes, found "
                                + std::to_string(img.size()) + ")");
    }
    if (lab.size() < 8 + ds.num_images) {
        throw IdxTruncatedError("idx: truncated file " + labels_path + " (expected "
                                + std::to_string(8 + ds.num_images) + " bytes, found "
                                + std::to_string(lab.size()) + ")");
    }
    ds.images.assign(img.begin() + 16, img.begin() + 16 + pixel_bytes);
    ds.labels.assign(lab.begin() + 8, lab.begin() + 8 + ds.num_images);
    return ds;
}

// --- model files ------------------------------------------------------------

namespace {

constexpr int kModelVersion = 1;

std::string fmt_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_real_array(std::ostream& out, std::span<const double> values,
                      const std::optional<FixedPointFormat>& fmt, std::size_t per_line)
{
    const double inv_ulp = fmt ? std::ldexp(1.0, fmt->frac_bits) : 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (fmt) {
            // On-grid value -> exact scaled integer.
            const double scaled = values[i] * inv_ulp;
            out << static_cast<long long>(std::llround(scaled));
        } else {
            out << fmt_double(values[i]);
        }
        out << (((i + 1) % per_line == 0 || i + 1 == values.size()) ? '\n' : ' ');
    }
}

class TokenReader {
public:
    explicit TokenReader(std::istream& in) : in_(in) {}

    std::string next(const char* what)
    {
        std::string tok;
        if (!(in_ >> tok)) {
            throw std::runtime_error(std::string("model file: unexpected end of file, expected ")
                                     + what);
        }
        return tok;
    }
    void expect(const std::string& literal)
    {
        const std::string tok = next(literal.c_str());
        if (tok != literal) {
            throw std::runtime_error("model file: expected \"" + literal + "\", found \"" + tok
                                     + "\"");
        }
    }
    double real(const char* what)
    {
        const std::string tok = next(what);
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size()) {
            throw std::runtime_error(std::string("model file: bad number for ") + what + ": "
                                     + tok);
        }
        return v;
    }
    long long integer(const char* what)
    {
        const std::string tok = next(what);
        std::size_t pos = 0;
        const long long v = std::stoll(tok, &pos);
        if (pos != tok.size()) {
            throw std::runtime_error(std::string("model file: bad integer for ") + what + ": "
                                     + tok);
        }
        return v;
    }

private:
    std::istream& in_;
};

void read_real_array(TokenReader& tr, std::span<double> values,
                     const std::optional<FixedPointFormat>& fmt, const char* what)
{
    const double ulp = fmt ? std::ldexp(1.0, -fmt->frac_bits) : 0.0;
    for (double& v : values) {
        if (fmt) {
            v = static_cast<double>(tr.integer(what)) * ulp;
        } else {
            v = tr.real(what);
        }
    }
}

} // namespace

void save_model(const NetworkModel& model, const std::string& path,
                const std::string& seed_lineage)
{
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write model file: " + path);
    }
    const LayerParams& p = model.layer_params();
    const FormatTags& tags = model.format_tags();

    out << "tinysnn-model " << kModelVersion << "\n";
    out << "inputs " << model.num_inputs() << "\n";
    out << "excitatory " << model.num_excitatory() << "\n";
    out << "w_max " << fmt_double(model.w_max()) << "\n";
    out << "wfmt " << format_tag_to_string(tags.weights) << "\n";
    out << "vmemfmt " << format_tag_to_string(tags.v_mem) << "\n";
    out << "vthfmt " << format_tag_to_string(tags.v_thresh) << "\n";
    out << "v_rest " << fmt_double(p.v_rest) << "\n";
    out << "v_reset " << fmt_double(p.v_reset) << "\n";
    out << "v_thresh_base " << fmt_double(p.v_thresh_base) << "\n";
    out << "tau_mem " << fmt_double(p.tau_mem) << "\n";
    out << "theta_inc " << fmt_double(p.theta_inc) << "\n";
    out << "tau_theta " << fmt_double(p.tau_theta) << "\n";
    out << "t_refrac " << p.t_refrac << "\n";
    out << "w_inh " << fmt_double(p.w_inh) << "\n";
    out << "seed_lineage " << (seed_lineage.empty() ? "none" : seed_lineage) << "\n";

    out << "weights " << model.weights().size() << "\n";
    write_real_array(out, model.weights(), tags.weights, model.num_excitatory());

    const auto& neurons = model.neurons();
    std::vector<double> scratch(neurons.size());

    out << "v_mem " << neurons.size() << "\n";
    for (std::size_t j = 0; j < neurons.size(); ++j) {
        scratch[j] = neurons[j].v_mem;
    }
    write_real_array(out, scratch, tags.v_mem, 16);

    out << "theta " << neurons.size() << "\n";
    for (std::size_t j = 0; j < neurons.size(); ++j) {
        scratch[j] = neurons[j].theta;
    }
    write_real_array(out, scratch, tags.v_thresh, 16);

    out << "refrac " << neurons.size() << "\n";
    for (std::size_t j = 0; j < neurons.size(); ++j) {
        out << neurons[j].refrac_remaining << ((j + 1) % 16 == 0 || j + 1 == neurons.size() ? '\n' : ' ');
    }
    out << "end\n";
    if (!out) {
        throw std::runtime_error("write failed for model file: " + path);
    }
}

LoadedModel load_model(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open model file: " + path);
    }
    TokenReader tr(in);
    tr.expect("tinysnn-model");
    const long long version = tr.integer("version");
    if (version != kModelVersion) {
        throw std::runtime_error("model file: unsupported version " + std::to_string(version)
                                 + " (expected " + std::to_string(kModelVersion) + ")");
    }
    tr.expect("inputs");
    const long long n_in = tr.integer("inputs");
    tr.expect("excitatory");
    const long long n_exc = tr.integer("excitatory");
    if (n_in < 0 || n_exc < 0) {
        throw std::runtime_error("model file: negative dimensions");
    }
    tr.expect("w_max");
    const double w_max = tr.real("w_max");

    FormatTags tags;
    tr.expect("wfmt");
    tags.weights = parse_format_tag(tr.next("wfmt"));
    tr.expect("vmemfmt");
    tags.v_mem = parse_format_tag(tr.next("vmemfmt"));
    tr.expect("vthfmt");
    tags.v_thresh = parse_format_tag(tr.next("vthfmt"));

    LayerParams p;
    tr.expect("v_rest");
    p.v_rest = tr.real("v_rest");
    tr.expect("v_reset");
    p.v_reset = tr.real("v_reset");
    tr.expect("v_thresh_base");
    p.v_thresh_base = tr.real("v_thresh_base");
    tr.expect("tau_mem");
    p.tau_mem = tr.real("tau_mem");
    tr.expect("theta_inc");
    p.theta_inc = tr.real("theta_inc");
    tr.expect("tau_theta");
    p.tau_theta = tr.real("tau_theta");
    tr.expect("t_refrac");
    p.t_refrac = static_cast<int>(tr.integer("t_refrac"));
    tr.expect("w_inh");
    p.w_inh = tr.real("w_inh");

    tr.expect("seed_lineage");
    std::string lineage = tr.next("seed_lineage");
    if (lineage == "none") {
        lineage.clear();
    }

    NetworkModel model(static_cast<std::size_t>(n_in), static_cast<std::size_t>(n_exc), p, w_max);
    model.format_tags() = tags;

    tr.expect("weights");
    const long long n_weights = tr.integer("weight count");
    if (n_weights != n_in * n_exc) {
        throw std::runtime_error("model file: weight count " + std::to_string(n_weights)
                                 + " does not match topology");
    }
    read_real_array(tr, model.weights(), tags.weights, "weight");

    auto read_neuron_array = [&](const char* name, const std::optional<FixedPointFormat>& fmt,
                                 auto assign) {
        tr.expect(name);
        const long long count = tr.integer(name);
        if (count != n_exc) {
            throw std::runtime_error(std::string("model file: ") + name + " count mismatch");
        }
        std::vector<double> values(static_cast<std::size_t>(count));
        read_real_array(tr, values, fmt, name);
        for (std::size_t j = 0; j < values.size(); ++j) {
            assign(model.neurons()[j], values[j]);
        }
    };
    read_neuron_array("v_mem", tags.v_mem, [](NeuronDynamicState& n, double v) { n.v_mem = v; });
    read_neuron_array("theta", tags.v_thresh,
                      [](NeuronDynamicState& n, double v) { n.theta = v; });

    tr.expect("refrac");
    const long long n_refrac = tr.integer("refrac count");
    if (n_refrac != n_exc) {
        throw std::runtime_error("model file: refrac count mismatch");
    }
    for (auto& n : model.neurons()) {
        n.refrac_remaining = static_cast<int>(tr.integer("refrac"));
    }
    tr.expect("end");

    return {std::move(model), std::move(lineage)};
}

// --- candidate reports ------------------------------------------------------

namespace {

constexpr const char* kReportHeader =
    "dataset,scheme,rounding,wfmt,vmemfmt,vthfmt,acc,mem_bits,mem_norm,"
    "e_train_J,e_infer_J,mu,reward,selected";

std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else {
            field += c;
        }
    }
    fields.push_back(field);
    return fields;
}

} // namespace

void write_report(std::span<const CandidateReport> candidates, const std::string& path)
{
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write report: " + path);
    }
    out << kReportHeader << "\n";
    for (const auto& c : candidates) {
        out << c.dataset << ',' << to_string(c.scheme) << ',' << to_string(c.rounding) << ','
            << format_tag_to_string(c.wfmt) << ',' << format_tag_to_string(c.vmemfmt) << ','
            << format_tag_to_string(c.vthfmt) << ',' << fmt_double(c.acc) << ',' << c.mem_bits
            << ',' << fmt_double(c.mem_norm) << ',' << fmt_double(c.energy_train_j) << ','
            << fmt_double(c.energy_infer_j) << ',' << fmt_double(c.mu) << ','
            << fmt_double(c.reward) << ',' << (c.selected ? 1 : 0) << "\n";
    }
    if (!out) {
        throw std::runtime_error("write failed for report: " + path);
    }
}

std::vector<CandidateReport> read_report(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open report: " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("report: empty file " + path);
    }
    if (line != kReportHeader) {
        throw std::runtime_error("report: unexpected header in " + path);
    }
    std::vector<CandidateReport> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const std::vector<std::string> f = split_csv_line(line);
        if (f.size() != 14) {
            throw std::runtime_error("report: line " + std::to_string(line_no) + " has "
                                     + std::to_string(f.size()) + " fields, expected 14");
        }
        CandidateReport c;
        c.dataset = f[0];
        c.scheme = parse_scheme(f[1]);
        c.rounding = parse_rounding(f[2]);
        c.wfmt = parse_format_tag(f[3]);
        c.vmemfmt = parse_format_tag(f[4]);
        c.vthfmt = parse_format_tag(f[5]);
        c.acc = std::stod(f[6]);
        c.mem_bits = std::stoull(f[7]);
        c.mem_norm = std::stod(f[8]);
        c.energy_train_j = std::stod(f[9]);
        c.energy_infer_j = std::stod(f[10]);
        c.mu = std::stod(f[11]);
        c.reward = std::stod(f[12]);
        c.selected = f[13] == "1";
        // M_0 is recoverable from the stored ratio.
        c.mem_bits_0 = c.mem_norm > 0.0
                           ? static_cast<std::uint64_t>(std::llround(c.mem_bits / c.mem_norm))
                           : 0;
        rows.push_back(std::move(c));
    }
    return rows;
}

} // namespace tinysnn
