#include "choaelm/dataset.hpp"

#include "choaelm/errors.hpp"
#include "choaelm/rng.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace choaelm {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return {};
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(strip(field));
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    fields.push_back(strip(field));
    return fields;
}

// Skips PGM whitespace and '#' comments, then reads one ASCII integer.
bool read_pgm_int(std::istream& in, std::size_t& out) {
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (!std::isspace(c)) {
            break;
        }
        c = in.get();
    }
    if (c == EOF || !std::isdigit(c)) return false;
    std::size_t value = 0;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + static_cast<std::size_t>(c - '0');
        c = in.get();
    }
    if (c != EOF) in.unget();
    out = value;
    return true;
}

void add_blob(ImageTensor& img, double cy, double cx, double sigma, double amplitude) {
    for (std::size_t y = 0; y < img.height; ++y) {
        for (std::size_t x = 0; x < img.width; ++x) {
            const double dy = static_cast<double>(y) - cy;
            const double dx = static_cast<double>(x) - cx;
            const double v = amplitude * std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
            img.at(0, y, x) = std::min(1.0, img.at(0, y, x) + v);
        }
    }
}

} // namespace

Manifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open manifest: " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw DataError("manifest has no records: " + path.string());
    {
        const auto header = split_csv_line(line);
        if (header.size() != 3 || lower(header[0]) != "path" || lower(header[1]) != "label" ||
            lower(header[2]) != "split") {
            throw DataError("manifest header must be `path,label,split`: " + path.string());
        }
    }

    Manifest manifest;
    std::set<std::string> seen;
    bool train_pos = false, train_neg = false;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (strip(line).empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 3) {
            throw DataError("manifest line " + std::to_string(line_no) +
                            ": expected 3 columns, found " + std::to_string(fields.size()));
        }
        ManifestRecord rec;
        rec.image_path = fields[0];
        if (rec.image_path.empty()) {
            throw DataError("manifest line " + std::to_string(line_no) + ": empty path");
        }
        if (!seen.insert(rec.image_path).second) {
            throw DataError("manifest line " + std::to_string(line_no) + ": duplicate path \"" +
                            rec.image_path + "\"");
        }
        const std::string label = lower(fields[1]);
        if (label == "covid" || label == "positive" || label == "1") {
            rec.label = Label::Positive;
        } else if (label == "normal" || label == "pneumonia" || label == "negative" ||
                   label == "0") {
            rec.label = Label::Negative;
        } else {
            throw DataError("manifest line " + std::to_string(line_no) + ": unknown label \"" +
                            fields[1] + "\"");
        }
        const std::string split = lower(fields[2]);
        if (split == "train") {
            rec.split = Split::Train;
        } else if (split == "test") {
            rec.split = Split::Test;
        } else {
            throw DataError("manifest line " + std::to_string(line_no) + ": unknown split \"" +
                            fields[2] + "\"");
        }
        if (rec.split == Split::Train) {
            (rec.label == Label::Positive ? train_pos : train_neg) = true;
        }
        manifest.records.push_back(std::move(rec));
    }

    if (manifest.records.empty()) {
        throw DataError("manifest has no records: " + path.string());
    }
    if (!(train_pos && train_neg)) {
        throw DataError("manifest train split must contain both labels: " + path.string());
    }
    return manifest;
}

ImageTensor load_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open image: " + path.string());

    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (!in || magic[0] != 'P' || magic[1] != '5') {
        if (magic[0] == 'P' && magic[1] == '2') {
            throw DataError("ASCII PGM (P2) is unsupported, expected binary P5: " +
                            path.string());
        }
        throw DataError("not a binary PGM (P5) file: " + path.string());
    }

    std::size_t width = 0, height = 0, maxval = 0;
    if (!read_pgm_int(in, width) || !read_pgm_int(in, height) || !read_pgm_int(in, maxval)) {
        throw DataError("malformed PGM header: " + path.string());
    }
    if (width == 0 || height == 0) {
        throw DataError("PGM has zero dimensions: " + path.string());
    }
    if (maxval != 255) {
        throw DataError("PGM maxval must be 255, found " + std::to_string(maxval) + ": " +
                        path.string());
    }
    in.get(); // the single whitespace byte before the payload

    std::vector<unsigned char> raw(width * height);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
        throw DataError("truncated PGM payload: " + path.string());
    }

    ImageTensor img(1, height, width);
    for (std::size_t i = 0; i < raw.size(); ++i) {
        img.data[i] = static_cast<double>(raw[i]) / 255.0;
    }
    return img;
}

void save_pgm(const ImageTensor& image, const std::filesystem::path& path) {
    if (image.channels != 1) throw InvalidInput("save_pgm requires a single-channel image");
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw DataError("cannot open image for writing: " + path.string());
        out << "P5\n" << image.width << " " << image.height << "\n255\n";
        std::vector<unsigned char> raw(image.width * image.height);
        for (std::size_t i = 0; i < raw.size(); ++i) {
            const double v = std::clamp(image.data[i], 0.0, 1.0);
            raw[i] = static_cast<unsigned char>(std::lround(v * 255.0));
        }
        out.write(reinterpret_cast<const char*>(raw.data()),
                  static_cast<std::streamsize>(raw.size()));
        if (!out) throw DataError("failed writing image: " + path.string());
    }
    std::filesystem::rename(tmp, path);
}

ImageTensor resize_bilinear(const ImageTensor& image, std::size_t height, std::size_t width) {
    if (image.channels != 1 || image.height == 0 || image.width == 0) {
        throw InvalidInput("resize_bilinear requires a non-empty single-channel image");
    }
    if (height == 0 || width == 0) {
        throw InvalidInput("resize_bilinear target dimensions must be positive");
    }
    ImageTensor out(1, height, width);
    const double sy = static_cast<double>(image.height) / static_cast<double>(height);
    const double sx = static_cast<double>(image.width) / static_cast<double>(width);
    for (std::size_t y = 0; y < height; ++y) {
        const double src_y = (static_cast<double>(y) + 0.5) * sy - 0.5;
        const double cy = std::clamp(src_y, 0.0, static_cast<double>(image.height - 1));
        const auto y0 = static_cast<std::size_t>(cy);
        const std::size_t y1 = std::min(y0 + 1, image.height - 1);
        const double fy = cy - static_cast<double>(y0);
        for (std::size_t x = 0; x < width; ++x) {
            const double src_x = (static_cast<double>(x) + 0.5) * sx - 0.5;
            const double cx = std::clamp(src_x, 0.0, static_cast<double>(image.width - 1));
            const auto x0 = static_cast<std::size_t>(cx);
            const std::size_t x1 = std::min(x0 + 1, image.width - 1);
            const double fx = cx - static_cast<double>(x0);
            const double top =
                image.at(0, y0, x0) * (1.0 - fx) + image.at(0, y0, x1) * fx;
            const double bot =
                image.at(0, y1, x0) * (1.0 - fx) + image.at(0, y1, x1) * fx;
            out.at(0, y, x) = top * (1.0 - fy) + bot * fy;
        }
    }
    return out;
}

namespace {

ImageTensor hflip(const ImageTensor& image) {
    ImageTensor out(1, image.height, image.width);
    for (std::size_t y = 0; y < image.height; ++y) {
        for (std::size_t x = 0; x < image.width; ++x) {
            out.at(0, y, x) = image.at(0, y, image.width - 1 - x);
        }
    }
    return out;
}

ImageTensor translate(const ImageTensor& image, int dy, int dx) {
    ImageTensor out(1, image.height, image.width);
    for (std::size_t y = 0; y < image.height; ++y) {
        for (std::size_t x = 0; x < image.width; ++x) {
            const auto sy = static_cast<long>(y) - dy;
            const auto sx = static_cast<long>(x) - dx;
            if (sy >= 0 && sx >= 0 && sy < static_cast<long>(image.height) &&
                sx < static_cast<long>(image.width)) {
                out.at(0, y, x) =
                    image.at(0, static_cast<std::size_t>(sy), static_cast<std::size_t>(sx));
            }
        }
    }
    return out;
}

} // namespace

std::vector<ImageTensor> augment(const ImageTensor& image, std::uint64_t seed) {
    Rng rng = Rng::derive(seed, 0xA06);
    std::vector<ImageTensor> out;
    out.reserve(5);
    out.push_back(image);
    out.push_back(hflip(image));
    for (int k = 0; k < 3; ++k) {
        int dy = 0, dx = 0;
        while (dy == 0 && dx == 0) {
            dy = static_cast<int>(rng.index(7)) - 3;
            dx = static_cast<int>(rng.index(7)) - 3;
        }
        out.push_back(translate(image, dy, dx));
    }
    return out;
}

void generate_synthetic_dataset(const std::filesystem::path& out_dir,
                                const SynthOptions& options) {
    if (options.train_per_class == 0 || options.test_per_class == 0) {
        throw InvalidInput("synthetic dataset needs at least one image per class and split");
    }
    if (options.image_size < 8) {
        throw InvalidInput("synthetic image size must be at least 8");
    }
    const auto image_dir = out_dir / "images";
    std::filesystem::create_directories(image_dir);

    Rng rng = Rng::derive(options.seed, 0x5D47);
    const auto side = static_cast<double>(options.image_size);

    std::ostringstream manifest;
    manifest << "path,label,split\n";

    auto emit = [&](Label label, Split split, std::size_t index) {
        ImageTensor img(1, options.image_size, options.image_size);
        for (double& v : img.data) v = 0.1 * rng.uniform(); // background noise
        // Blob centre encodes the class: upper-left vs lower-right quadrant.
        const double base = label == Label::Positive ? 0.30 * side : 0.70 * side;
        const double cy = base + rng.uniform(-0.08, 0.08) * side;
        const double cx = base + rng.uniform(-0.08, 0.08) * side;
        add_blob(img, cy, cx, 0.10 * side, 0.8);

        std::ostringstream name;
        name << (label == Label::Positive ? "pos" : "neg") << "_"
             << (split == Split::Train ? "train" : "test") << "_" << index << ".pgm";
        save_pgm(img, image_dir / name.str());
        manifest << "images/" << name.str() << ","
                 << (label == Label::Positive ? "positive" : "negative") << ","
                 << (split == Split::Train ? "train" : "test") << "\n";
    };

    for (std::size_t i = 0; i < options.train_per_class; ++i) {
        emit(Label::Positive, Split::Train, i);
    }
    for (std::size_t i = 0; i < options.train_per_class; ++i) {
        emit(Label::Negative, Split::Train, i);
    }
    for (std::size_t i = 0; i < options.test_per_class; ++i) {
        emit(Label::Positive, Split::Test, i);
    }
    for (std::size_t i = 0; i < options.test_per_class; ++i) {
        emit(Label::Negative, Split::Test, i);
    }

    const auto manifest_path = out_dir / "manifest.csv";
    const std::filesystem::path tmp = manifest_path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw DataError("cannot write manifest: " + manifest_path.string());
        out << manifest.str();
    }
    std::filesystem::rename(tmp, manifest_path);
}

} // namespace choaelm
