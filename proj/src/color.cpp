#include "cspace/color.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cspace/error.hpp"

namespace cspace {
namespace {

bool unit(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

RgbColor::RgbColor(double r, double g, double b) : r_(r), g_(g), b_(b) {
    if (!unit(r) || !unit(g) || !unit(b)) throw ValidationError("RGB components must lie in [0, 1]");
}

RgbColor RgbColor::from_bytes(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    return RgbColor(r / 255.0, g / 255.0, b / 255.0);
}

Hsb rgb_to_hsb(const RgbColor& c) {
    const double r = c.r(), g = c.g(), b = c.b();
    const double hi = std::max({r, g, b});
    const double lo = std::min({r, g, b});
    const double chroma = hi - lo;
    Hsb out;
    out.brightness = hi;
    out.saturation = hi == 0.0 ? 0.0 : chroma / hi;
    if (chroma == 0.0) return out;
    double h;
    if (hi == r)
        h = (g - b) / chroma;
    else if (hi == g)
        h = 2.0 + (b - r) / chroma;
    else
        h = 4.0 + (r - g) / chroma;
    h *= 60.0;
    if (h < 0.0) h += 360.0;
    if (h >= 360.0) h -= 360.0;
    out.hue = h;
    return out;
}

RgbColor hsb_to_rgb(const Hsb& hsb) {
    if (!(hsb.hue >= 0.0 && hsb.hue < 360.0)) throw ValidationError("hue must lie in [0, 360)");
    if (!unit(hsb.saturation) || !unit(hsb.brightness))
        throw ValidationError("saturation and brightness must lie in [0, 1]");
    const double v = hsb.brightness;
    const double chroma = v * hsb.saturation;
    const double sector = hsb.hue / 60.0;
    const double x = chroma * (1.0 - std::abs(std::fmod(sector, 2.0) - 1.0));
    const double m = v - chroma;
    double r = 0, g = 0, b = 0;
    switch (static_cast<int>(sector)) {
        case 0: r = chroma, g = x; break;
        case 1: r = x, g = chroma; break;
        case 2: g = chroma, b = x; break;
        case 3: g = x, b = chroma; break;
        case 4: r = x, b = chroma; break;
        default: r = chroma, b = x; break;
    }
    auto clamp = [](double t) { return std::clamp(t, 0.0, 1.0); };
    return RgbColor(clamp(r + m), clamp(g + m), clamp(b + m));
}

PixelGrid read_ppm(std::istream& in) {
    std::string magic;
    if (!(in >> magic) || (magic != "P3" && magic != "P6")) throw ParseError(0, "not a P3/P6 portable pixmap");
    auto next_int = [&](const char* what) {
        in >> std::ws;
        while (in.peek() == '#') {
            std::string comment;
            std::getline(in, comment);
            in >> std::ws;
        }
        long value;
        if (!(in >> value) || value < 0) throw ParseError(0, std::string("bad pixmap ") + what);
        return value;
    };
    const long width = next_int("width");
    const long height = next_int("height");
    const long maxval = next_int("maxval");
    if (width == 0 || height == 0) throw ParseError(0, "pixmap has no pixels");
    if (maxval == 0 || maxval > 255) throw ParseError(0, "pixmap maxval must be in 1..255");

    PixelGrid grid;
    grid.width = static_cast<std::size_t>(width);
    grid.height = static_cast<std::size_t>(height);
    grid.pixels.reserve(grid.width * grid.height);
    const double scale = static_cast<double>(maxval);
    auto channel = [&](long v) {
        if (v > maxval) throw ParseError(0, "pixmap sample exceeds maxval");
        return static_cast<double>(v) / scale;
    };
    if (magic == "P6") in.get();  // single whitespace byte before raster
    for (std::size_t i = 0; i < grid.width * grid.height; ++i) {
        long rgb[3];
        for (auto& v : rgb) {
            if (magic == "P3") {
                if (!(in >> v)) throw ParseError(0, "truncated pixmap raster");
            } else {
                const int byte = in.get();
                if (byte == std::char_traits<char>::eof()) throw ParseError(0, "truncated pixmap raster");
                v = byte;
            }
        }
        grid.pixels.emplace_back(channel(rgb[0]), channel(rgb[1]), channel(rgb[2]));
    }
    return grid;
}

Vector color_to_point(const RgbColor& c) {
    const auto hsb = rgb_to_hsb(c);
    return {hsb.hue / 360.0, hsb.saturation, hsb.brightness};
}

Vector image_to_color_point(const PixelGrid& image, const RgbColor& background, double tol) {
    if (image.pixels.empty()) throw ValidationError("image has no pixels");
    double sin_sum = 0, cos_sum = 0, sat_sum = 0, bri_sum = 0;
    std::size_t n = 0;
    for (const auto& px : image.pixels) {
        const double diff = std::max({std::abs(px.r() - background.r()), std::abs(px.g() - background.g()),
                                      std::abs(px.b() - background.b())});
        if (diff <= tol) continue;
        const auto hsb = rgb_to_hsb(px);
        const double angle = hsb.hue * std::numbers::pi / 180.0;
        sin_sum += std::sin(angle);
        cos_sum += std::cos(angle);
        sat_sum += hsb.saturation;
        bri_sum += hsb.brightness;
        ++n;
    }
    if (n == 0) throw ValidationError("image has no foreground pixels");
    double hue = std::atan2(sin_sum, cos_sum) * 180.0 / std::numbers::pi;
    if (hue < 0.0) hue += 360.0;
    if (hue >= 360.0) hue -= 360.0;
    const double count = static_cast<double>(n);
    return {hue / 360.0, sat_sum / count, bri_sum / count};
}

}  // namespace cspace
