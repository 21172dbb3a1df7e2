/**
 * @file raster.cpp
 * @brief BinaryImage, PNG/PNM codecs, thinning, noise and rotation.
 */
#include "arcscan/raster.hpp"
#include "arcscan/neighborhood.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace arcscan {

BinaryImage::BinaryImage(int width, int height) : width_(width), height_(height) {
    if (width < 1 || height < 1) {
        throw std::invalid_argument("BinaryImage: dimensions must be positive, got " +
                                    std::to_string(width) + "x" + std::to_string(height));
    }
    bits_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
}

void BinaryImage::set(int x, int y, bool value) {
    if (!contains(x, y)) {
        throw std::out_of_range("BinaryImage::set: (" + std::to_string(x) + "," +
                                std::to_string(y) + ") outside canvas");
    }
    bits_[index(x, y)] = value ? 1 : 0;
}

std::size_t BinaryImage::count() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::vector<Pixel> BinaryImage::pixels() const {
    std::vector<Pixel> out;
    for (int y = 0; y < height_; ++y) {
        for (int x = 0; x < width_; ++x) {
            if (bits_[index(x, y)] != 0) out.push_back({x, y});
        }
    }
    return out;
}

int count_8_neighbors(const BinaryImage& img, Pixel p) {
    int n = 0;
    for (const auto& d : kNeighborOffsets) n += img.test(p.x + d.x, p.y + d.y) ? 1 : 0;
    return n;
}

// =============================================================================
// Image codecs
// =============================================================================

namespace {

std::vector<unsigned char> read_all(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Cursor over a PNM header: whitespace separated tokens, '#' comments.
class PnmReader {
public:
    explicit PnmReader(const std::vector<unsigned char>& bytes, std::string name)
        : bytes_(bytes), name_(std::move(name)) {}

    int next_int() {
        skip_space_and_comments();
        if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) fail("expected integer");
        long long v = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            v = v * 10 + (bytes_[pos_] - '0');
            if (v > (1LL << 30)) fail("integer too large");
            ++pos_;
        }
        return static_cast<int>(v);
    }

    /// For P1 bits, which may be packed without separators.
    int next_bit() {
        skip_space_and_comments();
        if (pos_ >= bytes_.size()) fail("truncated pixel data");
        const unsigned char c = bytes_[pos_++];
        if (c != '0' && c != '1') fail("bad bit");
        return c - '0';
    }

    /// Binary rasters start after exactly one whitespace byte.
    std::size_t binary_start() {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) fail("missing raster separator");
        return pos_ + 1;
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw IoError("'" + name_ + "': malformed PNM header (" + what + ")");
    }

private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    const std::vector<unsigned char>& bytes_;
    std::string name_;
    std::size_t pos_ = 2;
};

void check_dims(int w, int h, const std::filesystem::path& path) {
    if (w < 1 || h < 1) throw IoError("'" + path.string() + "': zero-size image");
}

BinaryImage decode_pnm(const std::vector<unsigned char>& bytes, const std::filesystem::path& path,
                       int threshold) {
    const char kind = static_cast<char>(bytes[1]);
    PnmReader rd(bytes, path.string());
    const int w = rd.next_int();
    const int h = rd.next_int();
    check_dims(w, h, path);
    BinaryImage img(w, h);

    if (kind == '1') {
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) img.set(x, y, rd.next_bit() == 1);
        return img;
    }
    if (kind == '4') {
        const std::size_t start = rd.binary_start();
        const std::size_t stride = (static_cast<std::size_t>(w) + 7) / 8;
        if (bytes.size() < start + stride * static_cast<std::size_t>(h))
            rd.fail("truncated raster");
        for (int y = 0; y < h; ++y) {
            const unsigned char* row = bytes.data() + start + stride * static_cast<std::size_t>(y);
            for (int x = 0; x < w; ++x) img.set(x, y, ((row[x / 8] >> (7 - x % 8)) & 1) != 0);
        }
        return img;
    }

    const int maxval = rd.next_int();
    if (maxval < 1 || maxval > 65535) rd.fail("maxval out of range");
    auto is_object = [&](int v) {
        // Rescale to 8 bits before comparing against the threshold.
        return (static_cast<long long>(v) * 255 + maxval / 2) / maxval < threshold;
    };
    if (kind == '2') {
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) img.set(x, y, is_object(rd.next_int()));
        return img;
    }
    // P5
    const std::size_t start = rd.binary_start();
    const std::size_t bpp = maxval < 256 ? 1 : 2;
    if (bytes.size() < start + bpp * static_cast<std::size_t>(w) * static_cast<std::size_t>(h))
        rd.fail("truncated raster");
    const unsigned char* p = bytes.data() + start;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            int v = *p++;
            if (bpp == 2) v = (v << 8) | *p++;
            img.set(x, y, is_object(v));
        }
    }
    return img;
}

BinaryImage decode_png(const std::filesystem::path& path, int threshold) {
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    if (png_image_begin_read_from_file(&image, path.string().c_str()) == 0) {
        throw IoError("'" + path.string() + "': " + image.message);
    }
    image.format = PNG_FORMAT_GRAY;
    const int w = static_cast<int>(image.width);
    const int h = static_cast<int>(image.height);
    if (w < 1 || h < 1) {
        png_image_free(&image);
        check_dims(w, h, path);
    }
    std::vector<png_byte> buffer(PNG_IMAGE_SIZE(image));
    if (png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr) == 0) {
        const std::string msg = image.message;
        png_image_free(&image);
        throw IoError("'" + path.string() + "': " + msg);
    }
    BinaryImage img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            img.set(x, y, buffer[static_cast<std::size_t>(y) * w + x] < threshold);
    return img;
}

}  // namespace

BinaryImage load_binary(const std::filesystem::path& path, int threshold) {
    if (threshold < 0 || threshold > 255) {
        throw std::invalid_argument("load_binary: threshold must be in [0, 255]");
    }
    const auto bytes = read_all(path);
    if (bytes.size() >= 8 && bytes[0] == 0x89 && bytes[1] == 'P' && bytes[2] == 'N' &&
        bytes[3] == 'G') {
        return decode_png(path, threshold);
    }
    if (bytes.size() >= 3 && bytes[0] == 'P' && std::string_view("1245").find(
                                                    static_cast<char>(bytes[1])) !=
                                                    std::string_view::npos) {
        return decode_pnm(bytes, path, threshold);
    }
    throw IoError("'" + path.string() + "': unsupported image format");
}

void save_pbm(const BinaryImage& img, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << "P4\n" << img.width() << ' ' << img.height() << '\n';
    const std::size_t stride = (static_cast<std::size_t>(img.width()) + 7) / 8;
    std::vector<char> row(stride);
    for (int y = 0; y < img.height(); ++y) {
        std::fill(row.begin(), row.end(), 0);
        for (int x = 0; x < img.width(); ++x)
            if (img.test(x, y)) row[x / 8] = static_cast<char>(row[x / 8] | (0x80 >> (x % 8)));
        out.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
    if (!out) throw IoError("short write to '" + path.string() + "'");
}

void save_png(const BinaryImage& img, const std::filesystem::path& path) {
    png_image image{};
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(img.width());
    image.height = static_cast<png_uint_32>(img.height());
    image.format = PNG_FORMAT_GRAY;
    std::vector<png_byte> buffer(static_cast<std::size_t>(img.width()) * img.height());
    const auto bits = img.data();
    for (std::size_t i = 0; i < buffer.size(); ++i) buffer[i] = bits[i] != 0 ? 0 : 255;
    if (png_image_write_to_file(&image, path.string().c_str(), 0, buffer.data(), 0, nullptr) == 0) {
        throw IoError("'" + path.string() + "': " + image.message);
    }
}

void save_binary(const BinaryImage& img, const std::filesystem::path& path) {
    auto ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    if (ext == ".png") {
        save_png(img, path);
    } else {
        save_pbm(img, path);
    }
}

// =============================================================================
// Thinning
// =============================================================================

namespace {

/// Neighbourhood bits in Zhang-Suen order P2..P9 (N, NE, E, SE, S, SW, W, NW).
std::array<int, 8> zs_ring(const BinaryImage& img, Pixel p) {
    return {img.test(p.x, p.y - 1),     img.test(p.x + 1, p.y - 1), img.test(p.x + 1, p.y),
            img.test(p.x + 1, p.y + 1), img.test(p.x, p.y + 1),     img.test(p.x - 1, p.y + 1),
            img.test(p.x - 1, p.y),     img.test(p.x - 1, p.y - 1)};
}

bool zs_removable(const std::array<int, 8>& n, bool first_pass) {
    const int b = std::accumulate(n.begin(), n.end(), 0);
    if (b < 2 || b > 6) return false;
    int a = 0;
    for (std::size_t i = 0; i < 8; ++i) a += (n[i] == 0 && n[(i + 1) % 8] == 1) ? 1 : 0;
    if (a != 1) return false;
    const int p2 = n[0], p4 = n[2], p6 = n[4], p8 = n[6];
    if (first_pass) return p2 * p4 * p6 == 0 && p4 * p6 * p8 == 0;
    return p2 * p4 * p8 == 0 && p2 * p6 * p8 == 0;
}

/// One Zhang-Suen sub-iteration. Returns the number of deleted pixels.
std::size_t zs_subiteration(BinaryImage& img, std::vector<Pixel>& active, bool first_pass) {
    std::vector<Pixel> marked;
    for (const Pixel p : active)
        if (zs_removable(zs_ring(img, p), first_pass)) marked.push_back(p);
    if (marked.empty()) return 0;

    // An isolated 2x2 block is deleted in full by a single sub-iteration;
    // keep its top-left pixel so the component survives.
    BinaryImage mark(img.width(), img.height());
    for (const Pixel p : marked) mark.set(p);
    auto isolated_block_at = [&](Pixel p) {
        const std::array<Pixel, 4> block{p, {p.x + 1, p.y}, {p.x, p.y + 1}, {p.x + 1, p.y + 1}};
        return std::all_of(block.begin(), block.end(), [&](Pixel q) {
            return mark.test(q) && count_8_neighbors(img, q) == 3;
        });
    };
    std::size_t removed = 0;
    for (const Pixel p : marked) {
        if (isolated_block_at(p)) continue;
        img.set(p, false);
        ++removed;
    }
    std::erase_if(active, [&](Pixel p) { return !img.test(p); });
    return removed;
}

/// Deletes the corner pixel of 4-connected "L" steps when the opposite side is
/// empty; the two arms stay 8-connected through their shared diagonal.
std::size_t remove_staircase_corners(BinaryImage& img, std::vector<Pixel>& active) {
    // (arm1, arm2, three opposite offsets)
    struct Corner {
        Pixel a, b, o1, o2, o3;
    };
    static constexpr std::array<Corner, 4> kCorners{{
        {{0, -1}, {1, 0}, {0, 1}, {-1, 0}, {-1, 1}},   // N+E, opposite S W SW
        {{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {-1, -1}},  // E+S, opposite W N NW
        {{0, 1}, {-1, 0}, {0, -1}, {1, 0}, {1, -1}},   // S+W, opposite N E NE
        {{-1, 0}, {0, -1}, {1, 0}, {0, 1}, {1, 1}},    // W+N, opposite E S SE
    }};
    std::size_t removed = 0;
    for (const Pixel p : active) {
        auto at = [&](Pixel d) { return img.test(p.x + d.x, p.y + d.y); };
        for (const auto& c : kCorners) {
            if (at(c.a) && at(c.b) && !at(c.o1) && !at(c.o2) && !at(c.o3)) {
                img.set(p, false);
                ++removed;
                break;
            }
        }
    }
    if (removed > 0) std::erase_if(active, [&](Pixel p) { return !img.test(p); });
    return removed;
}

}  // namespace

BinaryImage thin(const BinaryImage& img) {
    BinaryImage out = img;
    std::vector<Pixel> active = out.pixels();
    while (true) {
        std::size_t changed = zs_subiteration(out, active, true);
        changed += zs_subiteration(out, active, false);
        changed += remove_staircase_corners(out, active);
        if (changed == 0) break;
    }
    return out;
}

BinaryImage despeckle(const BinaryImage& img) {
    BinaryImage out = img;
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            if (img.test(x, y)) {
                if (count_8_neighbors(img, {x, y}) == 0) out.set(x, y, false);
            } else if (img.test(x - 1, y) && img.test(x + 1, y) && img.test(x, y - 1) &&
                       img.test(x, y + 1)) {
                out.set(x, y, true);
            }
        }
    }
    return out;
}

BinaryImage prune_spurs(const BinaryImage& skeleton, int max_length) {
    BinaryImage out = skeleton;
    if (max_length <= 0) return out;
    for (const Pixel end : skeleton.pixels()) {
        if (!out.test(end) || m_degree(out, end) != 1) continue;
        std::vector<Pixel> path{end};
        Pixel prev = end;
        Pixel cur = m_neighbors(out, end).front();
        bool reached_junction = false;
        while (static_cast<int>(path.size()) <= max_length) {
            const auto nbrs = m_neighbors(out, cur);
            if (nbrs.size() >= 3) {
                reached_junction = true;
                break;
            }
            if (nbrs.size() != 2) break;
            path.push_back(cur);
            const Pixel next = nbrs[0] == prev ? nbrs[1] : nbrs[0];
            prev = cur;
            cur = next;
        }
        if (reached_junction && static_cast<int>(path.size()) <= max_length) {
            for (const Pixel p : path) out.set(p, false);
        }
    }
    return out;
}

// =============================================================================
// Perturbations
// =============================================================================

BinaryImage add_salt_pepper(const BinaryImage& img, double fraction, std::uint64_t seed) {
    if (!(fraction >= 0.0 && fraction <= 1.0)) {
        throw std::invalid_argument("add_salt_pepper: fraction must lie in [0, 1]");
    }
    const std::size_t total = static_cast<std::size_t>(img.width()) * img.height();
    const auto flips = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(total)));
    std::vector<std::size_t> order(total);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    // Partial Fisher-Yates: the first `flips` entries are a uniform sample.
    for (std::size_t i = 0; i < flips; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, total - 1);
        std::swap(order[i], order[pick(rng)]);
    }
    BinaryImage out = img;
    for (std::size_t i = 0; i < flips; ++i) {
        const int x = static_cast<int>(order[i] % static_cast<std::size_t>(img.width()));
        const int y = static_cast<int>(order[i] / static_cast<std::size_t>(img.width()));
        out.set(x, y, !img.test(x, y));
    }
    return out;
}

Rotation::Rotation(int width, int height, double degrees) {
    double turns = std::fmod(degrees, 360.0);
    if (turns < 0) turns += 360.0;
    if (std::fmod(turns, 90.0) == 0.0) {
        static constexpr std::array<std::pair<double, double>, 4> kQuarter{
            {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}}};
        std::tie(cos_, sin_) = kQuarter[static_cast<std::size_t>(turns / 90.0)];
    } else {
        const double rad = turns * std::numbers::pi / 180.0;
        cos_ = std::cos(rad);
        sin_ = std::sin(rad);
    }
    const double w = std::abs(width * cos_) + std::abs(height * sin_);
    const double h = std::abs(width * sin_) + std::abs(height * cos_);
    out_width_ = std::max(1, static_cast<int>(std::ceil(w - 1e-9)));
    out_height_ = std::max(1, static_cast<int>(std::ceil(h - 1e-9)));
    src_cx_ = (width - 1) / 2.0;
    src_cy_ = (height - 1) / 2.0;
    dst_cx_ = (out_width_ - 1) / 2.0;
    dst_cy_ = (out_height_ - 1) / 2.0;
}

RealPoint Rotation::forward(RealPoint p) const {
    const double dx = p.x - src_cx_;
    const double dy = p.y - src_cy_;
    return {dst_cx_ + cos_ * dx - sin_ * dy, dst_cy_ + sin_ * dx + cos_ * dy};
}

RealPoint Rotation::inverse(RealPoint p) const {
    const double dx = p.x - dst_cx_;
    const double dy = p.y - dst_cy_;
    return {src_cx_ + cos_ * dx + sin_ * dy, src_cy_ - sin_ * dx + cos_ * dy};
}

BinaryImage rotate(const BinaryImage& img, double degrees) {
    const Rotation rot(img.width(), img.height(), degrees);
    BinaryImage out(rot.out_width(), rot.out_height());
    for (int y = 0; y < out.height(); ++y) {
        for (int x = 0; x < out.width(); ++x) {
            const RealPoint src = rot.inverse({static_cast<double>(x), static_cast<double>(y)});
            const int sx = static_cast<int>(std::floor(src.x + 0.5));
            const int sy = static_cast<int>(std::floor(src.y + 0.5));
            if (img.test(sx, sy)) out.set(x, y, true);
        }
    }
    return out;
}

}  // namespace arcscan
