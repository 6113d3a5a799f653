#pragma once

// Pictures of configurations: one filled disc per vertex, coloured by chip count.

#include "gasketpile/gasket.hpp"
#include "gasketpile/sandpile.hpp"

#include <array>
#include <cstdint>
#include <string>

namespace gasketpile {

enum class ImageFormat { Ppm, Svg };

ImageFormat parse_image_format(const std::string& s);

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

struct RenderSpec {
  ImageFormat format = ImageFormat::Ppm;
  /// Pixels per unit edge.
  int scale = 16;
  /// Colours for 0, 1, 2, 3 chips and for 4 or more.
  std::array<Rgb, 5> palette{{{211, 211, 211}, {0, 160, 0}, {220, 0, 0}, {0, 0, 220}, {0, 0, 0}}};
  Rgb background{255, 255, 255};

  const Rgb& color(std::int64_t chips) const;
};

/// Vertex (a, b) sits at ((a + b/2) * scale, b * sqrt(3)/2 * scale), y pointing up.
std::string render(const GasketGraph& g, const Configuration& c, const RenderSpec& spec = {});

/// Throws std::runtime_error on I/O failure.
void write_file(const std::string& path, const std::string& bytes);

}  // namespace gasketpile
