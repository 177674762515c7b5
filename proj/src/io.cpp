#include "threeway/io.hpp"

#include <cmath>

namespace threeway::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw DecodeError(path + ": " + what); }

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object())
    fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end())
    fail(path, std::string("missing field '") + key + "'");
  return *it;
}

const Json& array_of(const Json& j, size_t n, const std::string& path) {
  if (!j.is_array() || (n && j.size() != n))
    fail(path, n ? "expected an array of " + std::to_string(n) : "expected an array");
  return j;
}

std::string sub(const std::string& path, const char* key) { return path + "." + key; }
std::string sub(const std::string& path, size_t i) { return path + "[" + std::to_string(i) + "]"; }

template <class T>
T get(const Json& j, const char* key, const std::string& path) {
  const Json& v = field(j, key, path);
  try {
    return v.get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(sub(path, key), "wrong type");
  }
}

Json encode_double(double x) {
  // non-finite values have no JSON form
  return std::isfinite(x) ? Json(x) : Json(nullptr);
}

const char* coefficient_keys[] = {"one", "sqrt2", "sqrt3", "sqrt6"};

}  // namespace

Json encode(const Scalar& s) {
  return Json{{"one", format_rational(s.one())},
              {"sqrt2", format_rational(s.coef_sqrt2())},
              {"sqrt3", format_rational(s.coef_sqrt3())},
              {"sqrt6", format_rational(s.coef_sqrt6())}};
}

Scalar decode_scalar(const Json& j, const std::string& path) {
  if (!j.is_object())
    fail(path, "expected an object with rational fields one, sqrt2, sqrt3, sqrt6");
  mpq_class c[4];
  for (auto it = j.begin(); it != j.end(); ++it) {
    int k = 0;
    while (k < 4 && it.key() != coefficient_keys[k])
      ++k;
    if (k == 4)
      fail(path, "unknown field '" + it.key() + "'");
    if (!it.value().is_string())
      fail(sub(path, coefficient_keys[k]), "rational must be a string such as \"-3/4\"");
    try {
      c[k] = parse_rational(it.value().get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail(sub(path, coefficient_keys[k]), e.what());
    }
  }
  return Scalar(c[0], c[1], c[2], c[3]);
}

Json encode(const Vec2& v) { return Json::array({encode(v.x), encode(v.y)}); }

Vec2 decode_vec2(const Json& j, const std::string& path) {
  array_of(j, 2, path);
  return {decode_scalar(j[0], sub(path, size_t{0})), decode_scalar(j[1], sub(path, size_t{1}))};
}

Json encode(const Mat2& m) { return Json::array({encode(m.a), encode(m.b), encode(m.c), encode(m.d)}); }

Mat2 decode_mat2(const Json& j, const std::string& path) {
  array_of(j, 4, path);
  Scalar e[4];
  for (size_t i = 0; i < 4; ++i)
    e[i] = decode_scalar(j[i], sub(path, i));
  return {e[0], e[1], e[2], e[3]};
}

Json encode(const ConvexPolygon& p) {
  Json out = Json::array();
  for (const auto& v : p.vertices())
    out.push_back(encode(v));
  return out;
}

ConvexPolygon decode_polygon(const Json& j, const std::string& path) {
  array_of(j, 0, path);
  std::vector<Vec2> vs;
  for (size_t i = 0; i < j.size(); ++i)
    vs.push_back(decode_vec2(j[i], sub(path, i)));
  try {
    return ConvexPolygon(std::move(vs));
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

Json encode(const Region& r) {
  Json polys = Json::array();
  for (const auto& p : r.parts())
    polys.push_back(encode(p));
  return Json{{"polygons", polys}};
}

Region decode_region(const Json& j, const std::string& path) {
  const Json& polys = array_of(field(j, "polygons", path), 0, sub(path, "polygons"));
  Region r;
  for (size_t i = 0; i < polys.size(); ++i)
    r.add(decode_polygon(polys[i], sub(sub(path, "polygons"), i)));
  return r;
}

Json encode(const Isometry& g) { return Json{{"linear", encode(g.linear())}, {"translation", encode(g.translation_part())}}; }

Isometry decode_isometry(const Json& j, const std::string& path) {
  Mat2 m = decode_mat2(field(j, "linear", path), sub(path, "linear"));
  Vec2 t = decode_vec2(field(j, "translation", path), sub(path, "translation"));
  try {
    return Isometry(m, t);
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

Json encode(const Lattice& l) { return Json{{"basis", Json::array({encode(l.u()), encode(l.v())})}}; }

Lattice decode_lattice(const Json& j, const std::string& path) {
  const Json& b = array_of(field(j, "basis", path), 2, sub(path, "basis"));
  Vec2 u = decode_vec2(b[0], sub(sub(path, "basis"), size_t{0}));
  Vec2 v = decode_vec2(b[1], sub(sub(path, "basis"), size_t{1}));
  if (cross(u, v).is_zero())
    fail(path, "rank-deficient lattice: basis vectors are linearly dependent");
  return Lattice(u, v);
}

Json encode(const HalfPlane& h) { return Json{{"normal", encode(h.normal)}, {"offset", encode(h.offset)}}; }

HalfPlane decode_halfplane(const Json& j, const std::string& path) {
  Vec2 n = decode_vec2(field(j, "normal", path), sub(path, "normal"));
  Scalar off = decode_scalar(field(j, "offset", path), sub(path, "offset"));
  try {
    return HalfPlane(n, off);
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

Json encode(const CongruenceWitness& w) {
  Json entries = Json::array();
  for (const auto& e : w.entries)
    entries.push_back(Json{{"piece", encode(e.piece)}, {"g", encode(e.g)}});
  return Json{{"source", encode(w.source)}, {"target", encode(w.target)}, {"entries", entries}};
}

CongruenceWitness decode_witness(const Json& j, const std::string& path) {
  CongruenceWitness w;
  w.source = decode_region(field(j, "source", path), sub(path, "source"));
  w.target = decode_region(field(j, "target", path), sub(path, "target"));
  const Json& es = array_of(field(j, "entries", path), 0, sub(path, "entries"));
  for (size_t i = 0; i < es.size(); ++i) {
    std::string p = sub(sub(path, "entries"), i);
    w.entries.push_back({decode_region(field(es[i], "piece", p), sub(p, "piece")),
                         decode_isometry(field(es[i], "g", p), sub(p, "g"))});
  }
  return w;
}

Json encode(const RootSystemData& rs) {
  auto vecs = [](const auto& vs) {
    Json a = Json::array();
    for (const auto& v : vs)
      a.push_back(encode(v));
    return a;
  };
  Json walls = Json::array();
  for (const auto& w : rs.walls)
    walls.push_back(Json{{"label", w.label}, {"root", encode(w.root)}, {"level", w.level}, {"lower_bound", w.lower_bound}});
  Json weyl = Json::array();
  for (const auto& g : rs.weyl_group)
    weyl.push_back(encode(g));
  return Json{{"kind", "root_system"},
              {"name", std::string(to_string(rs.name))},
              {"weyl_order", rs.weyl_group.size()},
              {"roots", vecs(rs.roots)},
              {"simple_roots", vecs(rs.simple_roots)},
              {"positive_roots", vecs(rs.positive_roots)},
              {"highest_root", rs.highest_root ? encode(*rs.highest_root) : Json(nullptr)},
              {"coroots", vecs(rs.coroots)},
              {"weyl_group", weyl},
              {"coroot_lattice", encode(Lattice(rs.coroot_lattice_basis[0], rs.coroot_lattice_basis[1]))},
              {"alcove", encode(rs.alcove)},
              {"alcove_area", encode(rs.alcove.area())},
              {"walls", walls},
              {"notes", rs.notes}};
}

Json encode(const OmegaPackage& pkg) {
  Json derived = Json::array();
  for (const auto& d : pkg.derived_cuts)
    derived.push_back(Json{{"item", d.item}, {"stated", d.stated}, {"used", d.used}, {"reason", d.reason}});
  return Json{{"kind", "omega_package"},
              {"system", std::string(to_string(pkg.rs.name))},
              {"variant", pkg.variant},
              {"delta", encode(pkg.delta)},
              {"eta", encode(pkg.eta)},
              {"lattice", encode(pkg.lattice)},
              {"cell", encode(pkg.cell)},
              {"cut", pkg.cut ? encode(*pkg.cut) : Json(nullptr)},
              {"cut_piece_moves", pkg.cut_piece_moves},
              {"shift", encode(pkg.shift)},
              {"omega", encode(pkg.omega)},
              {"witness_lattice", encode(pkg.witness_lattice)},
              {"witness_weyl", encode(pkg.witness_weyl)},
              {"intersection", encode(pkg.intersection)},
              {"k", pkg.claimed_k},
              {"derived_cuts", derived}};
}

OmegaPackage decode_package(const Json& j) {
  const std::string path = "package";
  if (get<std::string>(j, "kind", path) != "omega_package")
    fail(sub(path, "kind"), "expected \"omega_package\"");
  RootSystemName name;
  try {
    name = parse_root_system_name(get<std::string>(j, "system", path));
  } catch (const std::invalid_argument& e) {
    fail(sub(path, "system"), e.what());
  }
  OmegaPackage pkg{build_root_system(name)};
  pkg.variant = get<int>(j, "variant", path);
  pkg.delta = decode_vec2(field(j, "delta", path), sub(path, "delta"));
  pkg.eta = decode_vec2(field(j, "eta", path), sub(path, "eta"));
  pkg.lattice = decode_lattice(field(j, "lattice", path), sub(path, "lattice"));
  pkg.cell = decode_region(field(j, "cell", path), sub(path, "cell"));
  if (const Json& c = field(j, "cut", path); !c.is_null())
    pkg.cut = decode_halfplane(c, sub(path, "cut"));
  pkg.cut_piece_moves = get<bool>(j, "cut_piece_moves", path);
  pkg.shift = decode_vec2(field(j, "shift", path), sub(path, "shift"));
  pkg.omega = decode_region(field(j, "omega", path), sub(path, "omega"));
  pkg.witness_lattice = decode_witness(field(j, "witness_lattice", path), sub(path, "witness_lattice"));
  pkg.witness_weyl = decode_witness(field(j, "witness_weyl", path), sub(path, "witness_weyl"));
  pkg.intersection = decode_lattice(field(j, "intersection", path), sub(path, "intersection"));
  pkg.claimed_k = get<long>(j, "k", path);
  const Json& ds = array_of(field(j, "derived_cuts", path), 0, sub(path, "derived_cuts"));
  for (size_t i = 0; i < ds.size(); ++i) {
    std::string p = sub(sub(path, "derived_cuts"), i);
    pkg.derived_cuts.push_back({get<std::string>(ds[i], "item", p), get<std::string>(ds[i], "stated", p),
                                get<std::string>(ds[i], "used", p), get<std::string>(ds[i], "reason", p)});
  }
  return pkg;
}

Json encode(const TilingReport& r) {
  Json h = Json::object();
  for (const auto& [m, n] : r.histogram)
    h[std::to_string(m)] = n;
  return Json{{"samples", r.samples},
              {"histogram", h},
              {"boundary", r.boundary},
              {"exact_fallbacks", r.exact_fallbacks},
              {"verdict", r.pass ? "pass" : "fail"},
              {"seed", r.seed}};
}

TilingReport decode_tiling_report(const Json& j, const std::string& path) {
  TilingReport r;
  r.samples = get<uint64_t>(j, "samples", path);
  const Json& h = field(j, "histogram", path);
  if (!h.is_object())
    fail(sub(path, "histogram"), "expected an object");
  for (auto it = h.begin(); it != h.end(); ++it) {
    try {
      size_t used = 0;
      int m = std::stoi(it.key(), &used);
      if (used != it.key().size())
        throw std::invalid_argument("trailing text");
      r.histogram[m] = it.value().get<uint64_t>();
    } catch (const std::exception&) {
      fail(sub(path, "histogram"), "bad entry '" + it.key() + "'");
    }
  }
  r.boundary = get<uint64_t>(j, "boundary", path);
  r.exact_fallbacks = get<uint64_t>(j, "exact_fallbacks", path);
  std::string v = get<std::string>(j, "verdict", path);
  if (v != "pass" && v != "fail")
    fail(sub(path, "verdict"), "expected \"pass\" or \"fail\"");
  r.pass = v == "pass";
  r.seed = get<uint64_t>(j, "seed", path);
  return r;
}

Json encode(const DefectReport& r) {
  return Json{{"samples", r.samples},
              {"boundary", r.boundary},
              {"bad", r.bad},
              {"uncovered", r.uncovered},
              {"overlap_area", encode(r.overlap_area)},
              {"annulus_area", encode(r.annulus_area)},
              {"sample_fraction", encode_double(r.sample_fraction)},
              {"overlap_fraction", encode_double(r.overlap_fraction)},
              {"defect", encode_double(r.defect)}};
}

Json encode(const TilerRun& run) {
  const TilerResult& res = run.result;
  Json pieces = Json::array();
  for (const auto& p : res.pieces)
    pieces.push_back(Json{{"part", encode(p.part)}, {"translation", encode(p.translation)}});
  Json log = Json::array();
  for (const auto& s : res.log)
    log.push_back(Json{{"iteration", s.iteration},
                       {"action", s.action},
                       {"moved_area", encode(s.moved_area)},
                       {"defect", encode_double(s.defect)},
                       {"accepted", s.accepted}});
  const TilerOptions& o = run.options;
  Json options{{"eps", o.eps}, {"max_iter", o.max_iter}, {"depth", o.depth}, {"samples", o.samples}, {"seed", o.seed}};
  options["annulus"] = o.annulus ? Json::array({o.annulus->first, o.annulus->second}) : Json(nullptr);
  return Json{{"kind", "three_way_tiler"},
              {"system", std::string(to_string(run.system))},
              {"variant", run.variant},
              {"matrix", encode(run.matrix)},
              {"theta", encode(run.theta)},
              {"options", options},
              {"omega", encode(run.omega)},
              {"converged", res.converged},
              {"message", res.message},
              {"w", encode(res.w)},
              {"w_area", encode(res.w.area())},
              {"pieces", pieces},
              {"bookkeeping_ok", res.bookkeeping_ok},
              {"monotone", res.monotone},
              {"window_covers", res.window_covers},
              {"iterations", res.iterations},
              {"defect", encode(res.defect)},
              {"annulus", Json::array({encode_double(res.r_inner), encode_double(res.r_outer)})},
              {"reference", encode(res.reference)},
              {"far_translation", encode(res.far_translation)},
              {"far_scale", res.far_scale},
              {"unrepresented_shell_area", encode(res.unrepresented_shell_area)},
              {"log", log}};
}

TilerRun decode_tiler_run(const Json& j) {
  const std::string path = "tiler";
  if (get<std::string>(j, "kind", path) != "three_way_tiler")
    fail(sub(path, "kind"), "expected \"three_way_tiler\"");
  TilerRun run;
  try {
    run.system = parse_root_system_name(get<std::string>(j, "system", path));
  } catch (const std::invalid_argument& e) {
    fail(sub(path, "system"), e.what());
  }
  run.variant = get<int>(j, "variant", path);
  run.matrix = decode_mat2(field(j, "matrix", path), sub(path, "matrix"));
  run.theta = decode_vec2(field(j, "theta", path), sub(path, "theta"));
  const Json& o = field(j, "options", path);
  std::string op = sub(path, "options");
  run.options.eps = get<double>(o, "eps", op);
  run.options.max_iter = get<int>(o, "max_iter", op);
  run.options.depth = get<int>(o, "depth", op);
  run.options.samples = get<uint64_t>(o, "samples", op);
  run.options.seed = get<uint64_t>(o, "seed", op);
  if (const Json& a = field(o, "annulus", op); !a.is_null()) {
    array_of(a, 2, sub(op, "annulus"));
    run.options.annulus = std::make_pair(a[0].get<double>(), a[1].get<double>());
  }
  run.omega = decode_region(field(j, "omega", path), sub(path, "omega"));
  run.result.w = decode_region(field(j, "w", path), sub(path, "w"));
  run.result.converged = get<bool>(j, "converged", path);
  run.result.message = get<std::string>(j, "message", path);
  run.result.reference = decode_polygon(field(j, "reference", path), sub(path, "reference"));
  const Json& ps = array_of(field(j, "pieces", path), 0, sub(path, "pieces"));
  for (size_t i = 0; i < ps.size(); ++i) {
    std::string p = sub(sub(path, "pieces"), i);
    run.result.pieces.push_back({decode_region(field(ps[i], "part", p), sub(p, "part")),
                                 decode_vec2(field(ps[i], "translation", p), sub(p, "translation"))});
  }
  return run;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DecodeError(std::string("json: ") + e.what());
  }
}

}  // namespace threeway::io
