#include "threeway/render.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace threeway {

namespace {

std::string num(double x) {
  if (x == 0)
    x = 0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// y flipped so the figure reads in the usual orientation
std::string pt(const Vec2& v) {
  auto [x, y] = v.to_double();
  return num(x) + "," + num(-y);
}

std::string path_of(const ConvexPolygon& p) {
  std::string d;
  for (size_t i = 0; i < p.size(); ++i)
    d += (i ? " L" : "M") + pt(p.vertices()[i]);
  return d + " Z";
}

// widths in pixels of the 800-wide figure, converted to user units
std::string stylesheet(double px) {
  auto w = [&](double n) { return num(n * px); };
  std::string s;
  s += "  .omega{fill:#4682b4;fill-opacity:0.55;stroke:#1f4e79;stroke-width:" + w(1) + "}\n";
  s += "  .w{fill:#d2691e;fill-opacity:0.55;stroke:#7f3f10;stroke-width:" + w(0.5) + "}\n";
  s += "  .pieces{fill:#2e8b57;fill-opacity:0.45;stroke:#14532d;stroke-width:" + w(0.5) + "}\n";
  s += "  .cell{fill:none;stroke:#555555;stroke-width:" + w(1.5) + ";stroke-dasharray:" + w(6) + "," + w(4) + "}\n";
  s += "  .alcove{fill:none;stroke:#b22222;stroke-width:" + w(2) + "}\n";
  s += "  .reference{fill:none;stroke:#6a0dad;stroke-width:" + w(1.5) + "}\n";
  s += "  .lattice{fill:#222222}\n";
  s += "  .coroots{fill:#b22222}\n";
  s += "  .intersection{fill:none;stroke:#000000;stroke-width:" + w(1) + "}\n";
  s += "  .roots{stroke:#8b0000;stroke-width:" + w(2) + ";marker-end:url(#arrow)}\n";
  return s;
}

void grow(std::optional<BBox>& box, const BBox& b) { box = box ? box->merged(b) : b; }

std::vector<Vec2> lattice_points(const Lattice& l, const BBox& view) {
  // coefficient bounds from the viewport corners in lattice coordinates
  Mat2 inv = l.matrix().inverse();
  double lo[2] = {HUGE_VAL, HUGE_VAL}, hi[2] = {-HUGE_VAL, -HUGE_VAL};
  for (double x : {view.xmin, view.xmax})
    for (double y : {view.ymin, view.ymax}) {
      double c[2] = {inv.a.to_double() * x + inv.b.to_double() * y, inv.c.to_double() * x + inv.d.to_double() * y};
      for (int k = 0; k < 2; ++k) {
        lo[k] = std::min(lo[k], c[k]);
        hi[k] = std::max(hi[k], c[k]);
      }
    }
  std::vector<Vec2> out;
  for (long m = std::lround(std::floor(lo[0])) - 1; m <= std::lround(std::ceil(hi[0])) + 1; ++m)
    for (long n = std::lround(std::floor(lo[1])) - 1; n <= std::lround(std::ceil(hi[1])) + 1; ++n) {
      Vec2 p = l.point(m, n);
      auto [x, y] = p.to_double();
      if (view.contains(x, y))
        out.push_back(p);
      if (out.size() > 20000)
        return out;
    }
  return out;
}

}  // namespace

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string render_svg(const RenderSpec& spec) {
  const BBox& v = spec.viewport;
  if (!(v.xmax > v.xmin && v.ymax > v.ymin))
    throw std::invalid_argument("viewport has no area");
  const double w = v.xmax - v.xmin, h = v.ymax - v.ymin;
  const double r = 0.006 * std::max(w, h);
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  if (!spec.source_hash.empty())
    os << "<!-- source sha256: " << spec.source_hash << " -->\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" << num(v.xmin) << " " << num(-v.ymax)
     << " " << num(w) << " " << num(h) << "\" width=\"800\" height=\"" << num(800 * h / w) << "\">\n";
  os << "<defs>\n<marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"5\" markerHeight=\"5\" "
        "orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 Z\" fill=\"#8b0000\"/></marker>\n<style type=\"text/css\">\n"
     << stylesheet(std::max(w, h) / 800) << "</style>\n</defs>\n";
  os << "<rect x=\"" << num(v.xmin) << "\" y=\"" << num(-v.ymax) << "\" width=\"" << num(w) << "\" height=\"" << num(h)
     << "\" fill=\"#ffffff\"/>\n";
  for (const auto& layer : spec.layers) {
    os << "<g class=\"" << layer.style << "\">\n";
    switch (layer.kind) {
      case RenderLayer::Kind::region:
      case RenderLayer::Kind::outline:
        for (const auto& p : layer.region.parts())
          os << "<path d=\"" << path_of(p) << "\"/>\n";
        break;
      case RenderLayer::Kind::points:
        for (const auto& p : layer.points) {
          auto [x, y] = p.to_double();
          os << "<circle cx=\"" << num(x) << "\" cy=\"" << num(-y) << "\" r=\"" << num(r) << "\"/>\n";
        }
        break;
      case RenderLayer::Kind::arrows:
        for (const auto& p : layer.points) {
          auto [x, y] = p.to_double();
          os << "<line x1=\"0\" y1=\"0\" x2=\"" << num(x) << "\" y2=\"" << num(-y) << "\"/>\n";
        }
        break;
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

RenderSpec figure_spec(const io::Json& doc, std::vector<std::string> layers) {
  RenderSpec spec;
  spec.source_hash = sha256_hex(io::dump(doc));
  std::string kind = doc.is_object() && doc.contains("kind") && doc["kind"].is_string() ? doc["kind"].get<std::string>() : "";
  using K = RenderLayer::Kind;
  std::optional<BBox> box;
  std::vector<std::pair<std::string, const Lattice*>> point_layers;  // filled once the viewport is known

  auto region_layer = [&](const std::string& name, Region r, K kind) {
    for (const auto& p : r.parts())
      grow(box, p.bbox());
    spec.layers.push_back({kind, name, std::move(r), {}});
  };

  std::optional<OmegaPackage> pkg;
  std::optional<Lattice> coroots;
  if (kind == "omega_package") {
    pkg = io::decode_package(doc);
    coroots.emplace(pkg->rs.coroot_lattice_basis[0], pkg->rs.coroot_lattice_basis[1]);
    if (layers.empty())
      layers = {"omega", "cell", "alcove", "roots", "lattice"};
    for (const auto& name : layers) {
      if (name == "omega")
        region_layer(name, pkg->omega, K::region);
      else if (name == "cell")
        region_layer(name, pkg->cell, K::outline);
      else if (name == "alcove")
        region_layer(name, pkg->rs.alcove, K::outline);
      else if (name == "roots") {
        RenderLayer l{K::arrows, name, {}, pkg->rs.roots};
        for (const auto& p : l.points) {
          auto [x, y] = p.to_double();
          grow(box, {std::min(x, 0.0), std::min(y, 0.0), std::max(x, 0.0), std::max(y, 0.0)});
        }
        spec.layers.push_back(std::move(l));
      } else if (name == "lattice")
        point_layers.emplace_back(name, &pkg->lattice);
      else if (name == "coroots")
        point_layers.emplace_back(name, &*coroots);
      else if (name == "intersection")
        point_layers.emplace_back(name, &pkg->intersection);
      else
        throw std::invalid_argument("unknown layer '" + name + "' for an omega package");
    }
  } else if (kind == "three_way_tiler") {
    io::TilerRun run = io::decode_tiler_run(doc);
    if (layers.empty())
      layers = {"reference", "w"};
    for (const auto& name : layers) {
      if (name == "w")
        region_layer(name, run.result.w, K::region);
      else if (name == "omega")
        region_layer(name, run.omega, K::region);
      else if (name == "reference")
        region_layer(name, run.result.reference, K::outline);
      else if (name == "pieces") {
        Region moved;
        for (const auto& p : run.result.pieces)
          for (const auto& c : translate(p.part, p.translation).parts())
            moved.add(c);
        region_layer(name, moved, K::region);
      } else
        throw std::invalid_argument("unknown layer '" + name + "' for tiler output");
    }
  } else {
    throw io::DecodeError("document: expected kind \"omega_package\" or \"three_way_tiler\"");
  }

  if (box) {
    double pad = 0.08 * std::max(box->xmax - box->xmin, box->ymax - box->ymin);
    spec.viewport = {box->xmin - pad, box->ymin - pad, box->xmax + pad, box->ymax + pad};
  }
  // points go first so the regions sit on top of them
  std::vector<RenderLayer> pts;
  for (const auto& [name, l] : point_layers)
    pts.push_back({K::points, name, {}, lattice_points(*l, spec.viewport)});
  spec.layers.insert(spec.layers.begin(), pts.begin(), pts.end());
  return spec;
}

}  // namespace threeway
