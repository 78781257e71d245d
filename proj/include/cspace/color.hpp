#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <vector>

#include "cspace/geometry.hpp"

namespace cspace {

/// An RGB triple with components in [0, 1].
class RgbColor {
public:
    RgbColor() = default;
    /// Throws ValidationError when a component is outside [0, 1].
    RgbColor(double r, double g, double b);
    static RgbColor from_bytes(std::uint8_t r, std::uint8_t g, std::uint8_t b);

    double r() const noexcept { return r_; }
    double g() const noexcept { return g_; }
    double b() const noexcept { return b_; }

    bool operator==(const RgbColor&) const = default;

private:
    double r_ = 0, g_ = 0, b_ = 0;
};

/// Hue in degrees [0, 360), saturation and brightness in [0, 1].
struct Hsb {
    double hue = 0;
    double saturation = 0;
    double brightness = 0;
};

/// Standard hexcone conversion. Hue is 0 for achromatic colors.
Hsb rgb_to_hsb(const RgbColor& c);
/// Inverse of rgb_to_hsb. Throws ValidationError for out-of-range input.
RgbColor hsb_to_rgb(const Hsb& hsb);

/// Row-major pixel grid.
struct PixelGrid {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<RgbColor> pixels;

    const RgbColor& at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }
};

/// Reads a portable pixmap (P3 ASCII or P6 binary, maxval <= 255).
/// Throws ParseError on malformed input.
PixelGrid read_ppm(std::istream& in);

inline constexpr double kDefaultBackgroundTolerance = 0.05;

/// Color-domain coordinates (hue / 360, saturation, brightness) averaged over
/// the foreground: pixels differing from `background` by more than `tol` in
/// some channel. Hue is averaged on the circle. Throws ValidationError when
/// the grid is empty or holds no foreground pixel.
Vector image_to_color_point(const PixelGrid& image, const RgbColor& background,
                            double tol = kDefaultBackgroundTolerance);

/// Color-domain coordinates of a single color.
Vector color_to_point(const RgbColor& c);

}  // namespace cspace
