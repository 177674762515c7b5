// Canonical JSON for every persisted object.  Scalars are written as exact
// rational text per basis element {1, sqrt2, sqrt3, sqrt6}, so decode(encode(x))
// reproduces x bit for bit.

#ifndef THREEWAY_IO_HPP_
#define THREEWAY_IO_HPP_

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "threeway/construct.hpp"

namespace threeway::io {

using Json = nlohmann::ordered_json;

// Message starts with the JSON path of the offending value, e.g. "omega.polygons[1]: ...".
class DecodeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Json encode(const Scalar& s);
Json encode(const Vec2& v);
Json encode(const Mat2& m);
Json encode(const ConvexPolygon& p);
Json encode(const Region& r);
Json encode(const Isometry& g);
Json encode(const Lattice& l);
Json encode(const HalfPlane& h);
Json encode(const CongruenceWitness& w);
Json encode(const RootSystemData& rs);
Json encode(const OmegaPackage& pkg);
Json encode(const TilingReport& r);
Json encode(const DefectReport& r);

Scalar decode_scalar(const Json& j, const std::string& path = "scalar");
Vec2 decode_vec2(const Json& j, const std::string& path = "vec2");
Mat2 decode_mat2(const Json& j, const std::string& path = "matrix");
ConvexPolygon decode_polygon(const Json& j, const std::string& path = "polygon");
Region decode_region(const Json& j, const std::string& path = "region");
Isometry decode_isometry(const Json& j, const std::string& path = "isometry");
Lattice decode_lattice(const Json& j, const std::string& path = "lattice");
HalfPlane decode_halfplane(const Json& j, const std::string& path = "halfplane");
CongruenceWitness decode_witness(const Json& j, const std::string& path = "witness");
// The root system is rebuilt from the stored name.
OmegaPackage decode_package(const Json& j);
TilingReport decode_tiling_report(const Json& j, const std::string& path = "report");

// Output of the dilation step together with the inputs that produced it.
struct TilerRun {
  RootSystemName system = RootSystemName::A2;
  int variant = 1;
  Mat2 matrix;
  Vec2 theta;
  TilerOptions options;
  Region omega;
  TilerResult result;
};
Json encode(const TilerRun& run);
// Reads back W, omega, pieces and the inputs; diagnostics are not decoded.
TilerRun decode_tiler_run(const Json& j);

// Two-space indent with a trailing newline.
std::string dump(const Json& j);
// Throws DecodeError on malformed text.
Json parse(const std::string& text);

}  // namespace threeway::io

#endif  // THREEWAY_IO_HPP_
