// SVG figures of packages and tiler output.  Output is a pure function of the
// RenderSpec: fixed element order, coordinates at 12 significant digits.

#ifndef THREEWAY_RENDER_HPP_
#define THREEWAY_RENDER_HPP_

#include <string>
#include <vector>

#include "threeway/io.hpp"

namespace threeway {

struct RenderLayer {
  enum class Kind { region, points, arrows, outline };
  Kind kind = Kind::region;
  std::string style;  // css class; also the layer name
  Region region;               // region, outline
  std::vector<Vec2> points;    // points; arrow tips (tails at the origin)
};

struct RenderSpec {
  BBox viewport{-1, -1, 1, 1};
  std::vector<RenderLayer> layers;
  std::string source_hash;  // hex digest of the JSON the figure came from; may be empty
};

// Throws std::invalid_argument when the viewport has no area.
std::string render_svg(const RenderSpec& spec);

// Hex SHA-256.
std::string sha256_hex(const std::string& data);

// Layer names for an omega package: omega, cell, alcove, roots, lattice,
// coroots (the coroot lattice), intersection.  For tiler output: w, omega,
// reference, pieces.  Empty names pick the defaults.  The viewport is the
// padded box of the drawn regions and arrows.  Throws io::DecodeError for a
// document of unknown kind and std::invalid_argument for an unknown layer.
RenderSpec figure_spec(const io::Json& doc, std::vector<std::string> layers);

}  // namespace threeway

#endif  // THREEWAY_RENDER_HPP_
