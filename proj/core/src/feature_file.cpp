#include "choaelm/feature_file.hpp"

#include "choaelm/errors.hpp"

#include <json.hpp>

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

static_assert(std::endian::native == std::endian::little,
              "feature files are little-endian; big-endian hosts are unsupported");

namespace choaelm {

namespace {

using nlohmann::json;

constexpr int kFeatureFormatVersion = 1;
constexpr char kMagic[4] = {'D', 'C', 'E', 'F'};

template <typename T>
void write_raw(std::ostream& out, const T& value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_raw(std::istream& in, const char* what) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) throw DataError(std::string("feature file truncated while reading ") + what);
    return value;
}

} // namespace

void FeatureSet::validate() const {
    if (labels.size() != features.rows() || splits.size() != features.rows()) {
        throw InvalidInput("feature set labels/splits must match the row count");
    }
}

void save_features(const FeatureSet& set, const std::filesystem::path& path) {
    set.validate();
    json meta;
    meta["format_version"] = kFeatureFormatVersion;
    meta["structure"] = set.structure;
    json labels = json::array();
    for (Label l : set.labels) labels.push_back(l == Label::Positive ? 1 : 0);
    meta["labels"] = std::move(labels);
    json splits = json::array();
    for (Split s : set.splits) splits.push_back(s == Split::Train ? "train" : "test");
    meta["splits"] = std::move(splits);
    meta["config_echo"] =
        set.config_echo_json.empty() ? json::object() : json::parse(set.config_echo_json);
    const std::string meta_text = meta.dump();

    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw DataError("cannot open feature file for writing: " + path.string());
        out.write(kMagic, 4);
        write_raw(out, static_cast<std::uint32_t>(set.features.rows()));
        write_raw(out, static_cast<std::uint32_t>(set.features.cols()));
        out.write(reinterpret_cast<const char*>(set.features.data().data()),
                  static_cast<std::streamsize>(set.features.data().size() * sizeof(double)));
        write_raw(out, static_cast<std::uint64_t>(meta_text.size()));
        out.write(meta_text.data(), static_cast<std::streamsize>(meta_text.size()));
        if (!out) throw DataError("failed writing feature file: " + path.string());
    }
    std::filesystem::rename(tmp, path);
}

FeatureSet load_features(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open feature file: " + path.string());

    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0) {
        throw DataError("not a DCEF feature file: " + path.string());
    }
    const auto rows = read_raw<std::uint32_t>(in, "row count");
    const auto cols = read_raw<std::uint32_t>(in, "column count");
    if (rows == 0 || cols == 0) {
        throw DataError("feature file has empty dimensions: " + path.string());
    }

    std::vector<double> data(static_cast<std::size_t>(rows) * cols);
    in.read(reinterpret_cast<char*>(data.data()),
            static_cast<std::streamsize>(data.size() * sizeof(double)));
    if (!in) throw DataError("feature file truncated in payload: " + path.string());

    const auto meta_len = read_raw<std::uint64_t>(in, "metadata length");
    std::string meta_text(meta_len, '\0');
    in.read(meta_text.data(), static_cast<std::streamsize>(meta_len));
    if (!in) throw DataError("feature file truncated in metadata: " + path.string());

    json meta;
    try {
        meta = json::parse(meta_text);
    } catch (const json::parse_error& e) {
        throw DataError("feature metadata parse error: " + std::string(e.what()));
    }

    try {
        if (meta.at("format_version").get<int>() != kFeatureFormatVersion) {
            throw DataError("unsupported feature file format_version");
        }
        FeatureSet set;
        set.features = Matrix(rows, cols, std::move(data));
        set.structure = meta.at("structure").get<std::string>();
        for (const auto& l : meta.at("labels")) {
            set.labels.push_back(l.get<int>() != 0 ? Label::Positive : Label::Negative);
        }
        for (const auto& s : meta.at("splits")) {
            const auto text = s.get<std::string>();
            if (text == "train") {
                set.splits.push_back(Split::Train);
            } else if (text == "test") {
                set.splits.push_back(Split::Test);
            } else {
                throw DataError("feature metadata has unknown split \"" + text + "\"");
            }
        }
        set.config_echo_json = meta.at("config_echo").dump();
        set.validate();
        return set;
    } catch (const json::exception& e) {
        throw DataError("feature metadata field error: " + std::string(e.what()));
    }
}

std::pair<Matrix, std::vector<int>> select_split(const FeatureSet& set, Split split) {
    set.validate();
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < set.splits.size(); ++i) {
        if (set.splits[i] == split) rows.push_back(i);
    }
    if (rows.empty()) {
        throw DataError(std::string("feature file has no rows in the ") +
                        (split == Split::Train ? "train" : "test") + " split");
    }
    Matrix features(rows.size(), set.features.cols());
    std::vector<int> labels(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < set.features.cols(); ++c) {
            features(r, c) = set.features(rows[r], c);
        }
        labels[r] = set.labels[rows[r]] == Label::Positive ? 1 : 0;
    }
    return {std::move(features), std::move(labels)};
}

Matrix one_hot_targets(const std::vector<int>& labels) {
    if (labels.empty()) throw InvalidInput("one_hot_targets requires labels");
    Matrix t(labels.size(), 2);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        t(i, labels[i] != 0 ? 0 : 1) = 1.0;
    }
    return t;
}

} // namespace choaelm
