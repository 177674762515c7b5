#include "threeway/commands.hpp"

#include <cmath>
#include <regex>

namespace threeway {

Scalar parse_scalar_text(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)))
      s += c;
  if (s.empty())
    throw std::invalid_argument("empty number");
  // one signed term: [coefficient][*]sqrtK, or a bare rational
  static const std::regex term(R"(([+-]?)(\d+(?:/\d+)?)?(?:(\*?)sqrt([236]))?)");
  Scalar total;
  size_t pos = 0;
  while (pos < s.size()) {
    std::smatch m;
    auto begin = s.cbegin() + static_cast<std::ptrdiff_t>(pos);
    if (!std::regex_search(begin, s.cend(), m, term, std::regex_constants::match_continuous) || m.length(0) == 0 ||
        (!m[2].matched && !m[4].matched) || (m[3].length() && !m[2].matched) ||
        (pos > 0 && !m[1].matched) || (pos > 0 && m[1].length() == 0))
      throw std::invalid_argument("cannot read '" + text + "' as a number in Q(sqrt2, sqrt3)");
    mpq_class c = m[2].matched ? parse_rational(m[2].str()) : mpq_class(1);
    if (m[1].str() == "-")
      c = -c;
    if (!m[4].matched)
      total += Scalar(c);
    else if (m[4].str() == "2")
      total += Scalar(0, c, 0, 0);
    else if (m[4].str() == "3")
      total += Scalar(0, 0, c, 0);
    else
      total += Scalar(0, 0, 0, c);
    pos += static_cast<size_t>(m.length(0));
  }
  return total;
}

namespace {

double diameter(const Region& r) {
  double d = 0;
  for (const auto& p : r.parts())
    for (const auto& a : p.vertices())
      for (const auto& b : p.vertices()) {
        auto [ax, ay] = a.to_double();
        auto [bx, by] = b.to_double();
        d = std::max(d, std::hypot(ax - bx, ay - by));
      }
  return d;
}

io::Json check(const std::string& name, bool ok, const std::string& message) {
  return io::Json{{"name", name}, {"ok", ok}, {"message", message}};
}

}  // namespace

VerifyOutcome verify_package(const OmegaPackage& pkg, const std::string& mode, uint64_t samples, uint64_t seed) {
  VerifyOutcome out;
  io::Json& rep = out.report;
  rep["mode"] = mode;
  rep["system"] = std::string(to_string(pkg.rs.name));
  rep["variant"] = pkg.variant;
  if (mode == "witness") {
    io::Json checks = io::Json::array();
    bool ok = true;
    auto add = [&](const std::string& name, bool pass, const std::string& msg) {
      checks.push_back(check(name, pass, msg));
      ok = ok && pass;
    };
    VerifyReport lw = verify_congruence(pkg.witness_lattice);
    add("lattice witness omega -> cell", lw.ok, lw.message);
    VerifyReport ww = verify_congruence(pkg.witness_weyl);
    add("affine Weyl witness omega -> alcove", ww.ok, ww.message);
    VerifyReport back = verify_congruence(pkg.witness_weyl.inverted());
    add("affine Weyl witness alcove -> omega", back.ok, back.message);
    Scalar a = pkg.omega.area();
    add("area omega = area cell", a == pkg.cell.area(), a.str() + " vs " + pkg.cell.area().str());
    add("area omega = area alcove", a == pkg.rs.alcove.area(), a.str() + " vs " + pkg.rs.alcove.area().str());
    rep["checks"] = checks;
    // the lattice hypothesis is reported beside the verdict, which covers the tiling claims only
    bool kin = pkg.intersection.contains(pkg.lattice.scaled(pkg.claimed_k));
    rep["lattice_hypothesis"] = io::Json{{"k", pkg.claimed_k}, {"k_lattice_in_j", kin}, {"j", io::encode(pkg.intersection)}};
    out.pass = ok;
  } else if (mode == "mc") {
    SampleBox box = centred_box(pkg.omega, diameter(pkg.cell), 3);
    TilingReport tr = mc_tiling_multiplicity(pkg.omega, pkg.lattice, samples, seed, box);
    TilingReport wr = mc_tiling_multiplicity(pkg.omega, pkg.rs, samples, seed, box);
    rep["samples"] = samples;
    rep["seed"] = seed;
    rep["box"] = io::Json::array({box.xmin, box.ymin, box.xmax, box.ymax});
    rep["translation"] = io::encode(tr);
    rep["affine_weyl"] = io::encode(wr);
    out.pass = tr.pass && wr.pass;
  } else if (mode == "fuglede") {
    const double tolerance = 1e-3;
    GramReport g = fuglede_gram(pkg.omega, pkg.lattice, 20, 64);
    rep["frequencies"] = g.frequencies;
    rep["deviation"] = g.deviation;
    rep["tolerance"] = tolerance;
    out.pass = g.deviation <= tolerance;
  } else {
    throw std::invalid_argument("unknown verify mode '" + mode + "' (witness, mc or fuglede)");
  }
  rep["verdict"] = out.pass ? "pass" : "fail";
  return out;
}

io::TilerRun run_wavelet(const OmegaPackage& pkg, const Mat2& a, std::optional<Vec2> theta, const TilerOptions& options) {
  if (!is_expansive(a))
    throw std::invalid_argument("matrix is not expansive: some eigenvalue has modulus <= 1");
  io::TilerRun run;
  run.system = pkg.rs.name;
  run.variant = pkg.variant;
  run.matrix = a;
  run.theta = theta ? *theta : alcove_barycenter(pkg.rs);
  run.options = options;
  run.omega = pkg.omega;
  run.result = build_three_way_tiler(pkg, ExpansiveMap(a, run.theta), options);
  return run;
}

}  // namespace threeway
