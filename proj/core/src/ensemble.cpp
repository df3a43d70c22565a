#include "ep/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "ep/errors.hpp"
#include "ep/parallel.hpp"

namespace ep {

namespace {

constexpr char kModelMagic[4] = {'E', 'P', 'M', '1'};

void write_u64_le(std::ostream& os, std::uint64_t v) {
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    os.write(reinterpret_cast<const char*>(buf), 8);
}

std::uint64_t read_u64_le(std::istream& is) {
    unsigned char buf[8];
    is.read(reinterpret_cast<char*>(buf), 8);
    if (!is) throw FormatError("model file: truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    return v;
}

void write_f64_block(std::ostream& os, const std::vector<double>& values) {
    for (const double d : values) {
        std::uint64_t bits;
        std::memcpy(&bits, &d, 8);
        write_u64_le(os, bits);
    }
}

void read_f64_block(std::istream& is, std::vector<double>& out, std::size_t count) {
    out.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t bits = read_u64_le(is);
        std::memcpy(&out[i], &bits, 8);
    }
}

} // namespace

EnsembleModel fit(const Dataset& d, const EPParams& params, const TrainOptions& base_opts,
                  unsigned n_threads) {
    params.validate_for(d.n_samples());
    d.features.validate();

    EnsembleModel model;
    model.params = params;
    model.source_dims = d.n_dims();
    model.projections.resize(params.trials);

    const FeatureMatrix& features = d.features;
    parallel_for(params.trials, n_threads, [&](std::size_t t) {
        Rng rng(derive_seed(params.seed, stream::trial(t)));
        const PrototypeSet set = max_min_sample(features, params, rng);
        const FeatureMatrix member_rows = gather_rows(features, set.member_indices);
        model.projections[t] = train(member_rows, set.pseudo_labels, base_opts);
    });
    return model;
}

EPFeature project(const EnsembleModel& model, std::span<const double> x) {
    if (x.size() != model.source_dims)
        throw DimensionMismatch("input length " + std::to_string(x.size()) +
                                " does not match model source dims " +
                                std::to_string(model.source_dims));
    EPFeature f;
    f.block_size = model.params.prototypes;
    f.values.reserve(model.output_dims());
    for (const LogRegModel& projection : model.projections) {
        const auto probs = predict_proba(projection, x);
        f.values.insert(f.values.end(), probs.begin(), probs.end());
    }
    return f;
}

FeatureMatrix project_all(const EnsembleModel& model, const FeatureMatrix& m_feat,
                          unsigned n_threads) {
    if (m_feat.n_dims != model.source_dims)
        throw DimensionMismatch("matrix width " + std::to_string(m_feat.n_dims) +
                                " does not match model source dims " +
                                std::to_string(model.source_dims));
    FeatureMatrix out(m_feat.n_samples, model.output_dims());
    parallel_for(m_feat.n_samples, n_threads, [&](std::size_t i) {
        const EPFeature f = project(model, m_feat.row(i));
        std::copy(f.values.begin(), f.values.end(), out.row(i).begin());
    });
    return out;
}

void save_model(const EnsembleModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out.write(kModelMagic, 4);
    write_u64_le(out, model.params.trials);
    write_u64_le(out, model.params.prototypes);
    write_u64_le(out, model.params.per_prototype);
    write_u64_le(out, model.params.hypotheses);
    write_u64_le(out, model.params.seed);
    write_u64_le(out, model.source_dims);
    for (const LogRegModel& p : model.projections) {
        write_f64_block(out, p.weights);
        write_f64_block(out, p.biases);
    }
    if (!out) throw IoError("write failed for " + path);
}

EnsembleModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kModelMagic, 4) != 0)
        throw FormatError("model file: bad magic in " + path);

    EnsembleModel model;
    model.params.trials = static_cast<std::size_t>(read_u64_le(in));
    model.params.prototypes = static_cast<std::size_t>(read_u64_le(in));
    model.params.per_prototype = static_cast<std::size_t>(read_u64_le(in));
    model.params.hypotheses = static_cast<std::size_t>(read_u64_le(in));
    model.params.seed = read_u64_le(in);
    model.source_dims = static_cast<std::size_t>(read_u64_le(in));
    if (model.params.trials < 1 || model.params.prototypes < 2 || model.source_dims < 1)
        throw FormatError("model file: implausible header in " + path);

    model.projections.resize(model.params.trials);
    for (LogRegModel& p : model.projections) {
        p.n_classes = model.params.prototypes;
        p.n_dims = model.source_dims;
        read_f64_block(in, p.weights, p.n_classes * p.n_dims);
        read_f64_block(in, p.biases, p.n_classes);
    }
    char extra;
    if (in.read(&extra, 1))
        throw FormatError("model file: trailing bytes in " + path);
    return model;
}

} // namespace ep
