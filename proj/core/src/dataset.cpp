#include "ep/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "ep/errors.hpp"

namespace ep {

namespace {

constexpr char kEpbMagic[4] = {'E', 'P', 'B', '1'};

void write_u64_le(std::ostream& os, std::uint64_t v) {
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    os.write(reinterpret_cast<const char*>(buf), 8);
}

std::uint64_t read_u64_le(std::istream& is) {
    unsigned char buf[8];
    is.read(reinterpret_cast<char*>(buf), 8);
    if (!is) throw FormatError("epb: truncated header");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    return v;
}

void write_f64_le(std::ostream& os, double d) {
    std::uint64_t bits;
    std::memcpy(&bits, &d, 8);
    write_u64_le(os, bits);
}

double parse_double(std::string_view cell, std::size_t line_no) {
    // trim surrounding spaces and an optional trailing CR
    while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t')) cell.remove_prefix(1);
    while (!cell.empty() &&
           (cell.back() == ' ' || cell.back() == '\t' || cell.back() == '\r'))
        cell.remove_suffix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc() || ptr != cell.data() + cell.size())
        throw ParseError("csv: non-numeric cell '" + std::string(cell) + "' on line " +
                         std::to_string(line_no));
    return value;
}

FeatureMatrix load_features_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    FeatureMatrix m;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        std::size_t cols = 0;
        std::size_t start = 0;
        std::string_view view(line);
        while (true) {
            const std::size_t comma = view.find(',', start);
            const std::string_view cell =
                view.substr(start, comma == std::string_view::npos ? comma : comma - start);
            m.values.push_back(parse_double(cell, line_no));
            ++cols;
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (m.n_dims == 0) {
            m.n_dims = cols;
        } else if (cols != m.n_dims) {
            throw ParseError("csv: ragged row on line " + std::to_string(line_no) + " (" +
                             std::to_string(cols) + " columns, expected " +
                             std::to_string(m.n_dims) + ")");
        }
        ++m.n_samples;
    }
    return m;
}

FeatureMatrix load_features_epb(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kEpbMagic, 4) != 0)
        throw FormatError("epb: bad magic in " + path);
    FeatureMatrix m;
    m.n_samples = static_cast<std::size_t>(read_u64_le(in));
    m.n_dims = static_cast<std::size_t>(read_u64_le(in));
    if (m.n_samples == 0 || m.n_dims == 0) throw FormatError("epb: zero dimension header");
    const std::size_t total = m.n_samples * m.n_dims;
    std::vector<unsigned char> raw(total * 8);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size())
        throw FormatError("epb: truncated payload in " + path);
    m.values.resize(total);
    for (std::size_t i = 0; i < total; ++i) {
        std::uint64_t bits = 0;
        for (int b = 0; b < 8; ++b)
            bits |= static_cast<std::uint64_t>(raw[i * 8 + b]) << (8 * b);
        std::memcpy(&m.values[i], &bits, 8);
    }
    return m;
}

std::vector<std::size_t> load_labels(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::vector<std::size_t> labels;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        while (!view.empty() && (view.back() == '\r' || view.back() == ' ')) view.remove_suffix(1);
        while (!view.empty() && view.front() == ' ') view.remove_prefix(1);
        if (view.empty()) continue;
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(view.data(), view.data() + view.size(), v);
        if (ec != std::errc() || ptr != view.data() + view.size())
            throw ParseError("labels: not a non-negative integer on line " +
                             std::to_string(line_no));
        labels.push_back(static_cast<std::size_t>(v));
    }
    return labels;
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

} // namespace

void FeatureMatrix::validate() const {
    if (n_samples < 1 || n_dims < 1)
        throw ValidationError("feature matrix must have at least one sample and one dimension");
    if (values.size() != n_samples * n_dims)
        throw ValidationError("feature matrix storage size does not match its shape");
    for (const double v : values)
        if (!std::isfinite(v)) throw ValidationError("feature matrix contains a non-finite value");
}

void Dataset::validate() const {
    features.validate();
    if (labels) {
        if (labels->size() != features.n_samples)
            throw ValidationError("label count (" + std::to_string(labels->size()) +
                                  ") does not match sample count (" +
                                  std::to_string(features.n_samples) + ")");
        if (!n_classes) throw ValidationError("labeled dataset is missing its class count");
        const std::size_t c = *n_classes;
        if (c < 1) throw ValidationError("class count must be positive");
        std::vector<bool> seen(c, false);
        for (const std::size_t label : *labels) {
            if (label >= c)
                throw ValidationError("label " + std::to_string(label) +
                                      " out of range for " + std::to_string(c) + " classes");
            seen[label] = true;
        }
        for (std::size_t k = 0; k < c; ++k)
            if (!seen[k])
                throw ValidationError("class " + std::to_string(k) + " has no samples");
    }
}

Dataset load_dataset(const std::string& features_path,
                     const std::optional<std::string>& labels_path, FileFormat format) {
    Dataset d;
    d.features = format == FileFormat::csv ? load_features_csv(features_path)
                                           : load_features_epb(features_path);
    if (labels_path) {
        d.labels = load_labels(*labels_path);
        std::size_t max_label = 0;
        for (const std::size_t l : *d.labels) max_label = std::max(max_label, l);
        d.n_classes = d.labels->empty() ? 0 : max_label + 1;
    }
    d.validate();
    return d;
}

void save_dataset(const Dataset& d, const std::string& features_path,
                  const std::optional<std::string>& labels_path, FileFormat format) {
    const FeatureMatrix& m = d.features;
    if (format == FileFormat::csv) {
        std::ofstream out(features_path);
        if (!out) throw IoError("cannot write " + features_path);
        for (std::size_t i = 0; i < m.n_samples; ++i) {
            const auto row = m.row(i);
            for (std::size_t j = 0; j < m.n_dims; ++j) {
                if (j) out << ',';
                out << format_double(row[j]);
            }
            out << '\n';
        }
        if (!out) throw IoError("write failed for " + features_path);
    } else {
        std::ofstream out(features_path, std::ios::binary);
        if (!out) throw IoError("cannot write " + features_path);
        out.write(kEpbMagic, 4);
        write_u64_le(out, m.n_samples);
        write_u64_le(out, m.n_dims);
        for (const double v : m.values) write_f64_le(out, v);
        if (!out) throw IoError("write failed for " + features_path);
    }
    if (labels_path) {
        if (!d.labels) throw ValidationError("labels path given but dataset has no labels");
        std::ofstream out(*labels_path);
        if (!out) throw IoError("cannot write " + *labels_path);
        for (const std::size_t l : *d.labels) out << l << '\n';
        if (!out) throw IoError("write failed for " + *labels_path);
    }
}

FeatureMatrix gather_rows(const FeatureMatrix& m, std::span<const std::size_t> indices) {
    FeatureMatrix out(indices.size(), m.n_dims);
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] >= m.n_samples)
            throw IndexOutOfRange("row index " + std::to_string(indices[i]) + " >= " +
                                  std::to_string(m.n_samples));
        const auto src = m.row(indices[i]);
        std::copy(src.begin(), src.end(), out.row(i).begin());
    }
    return out;
}

void l2_normalize_rows(FeatureMatrix& m) {
    for (std::size_t i = 0; i < m.n_samples; ++i) {
        auto row = m.row(i);
        double sq = 0.0;
        for (const double v : row) sq += v * v;
        if (sq > 0.0) {
            const double inv = 1.0 / std::sqrt(sq);
            for (double& v : row) v *= inv;
        }
    }
}

} // namespace ep
