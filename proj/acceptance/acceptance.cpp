// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance                 all criteria
//   acceptance --criterion 5   just one
//   acceptance --json-dir d    also write the JSON reports of criteria 5 and 7

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "threeway/commands.hpp"

using namespace threeway;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> lines;  // details, printed indented

  void expect(bool ok, const std::string& what) {
    pass = pass && ok;
    lines.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void note(const std::string& what) { lines.push_back("     " + what); }
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fmt(double x, int prec = 4) {
  std::ostringstream os;
  os.precision(prec);
  os << x;
  return os.str();
}

const std::pair<RootSystemName, int> packages[] = {{RootSystemName::A2, 1}, {RootSystemName::A2, 2},
                                                   {RootSystemName::B2, 1}, {RootSystemName::B2, 2},
                                                   {RootSystemName::G2, 1}, {RootSystemName::G2, 2}};

std::string label(RootSystemName n, int v) { return std::string(to_string(n)) + " variant " + std::to_string(v); }

Lattice coroot_lattice(const RootSystemData& rs) { return Lattice(rs.coroot_lattice_basis[0], rs.coroot_lattice_basis[1]); }

// 1. areas of the coroot cell K and the alcove C, exactly
Outcome areas() {
  Outcome o;
  auto t0 = Clock::now();
  const Scalar r3 = Scalar::sqrt3();
  struct Row {
    RootSystemName name;
    Scalar k, c;
  };
  const Row rows[] = {{RootSystemName::A2, r3, Scalar::rational(1, 6) * r3},
                      {RootSystemName::B2, 2, Scalar::rational(1, 4)},
                      {RootSystemName::G2, Scalar::rational(1, 3) * r3, Scalar::rational(1, 36) * r3}};
  for (const auto& r : rows) {
    auto rs = build_root_system(r.name);
    Scalar k = coroot_lattice(rs).cell_area(), c = rs.alcove.area();
    o.expect(k == r.k, std::string(to_string(r.name)) + " |K| = " + k.str());
    o.expect(c == r.c, std::string(to_string(r.name)) + " |C| = " + c.str());
  }
  for (auto n : {RootSystemName::A1xA1, RootSystemName::A2, RootSystemName::B2, RootSystemName::G2}) {
    auto rs = build_root_system(n);
    Scalar k = coroot_lattice(rs).cell_area();
    Scalar wc = Scalar(static_cast<long>(rs.weyl_group.size())) * rs.alcove.area();
    o.expect(k == wc, std::string(to_string(n)) + " |K| = |W| |C| = " + wc.str());
  }
  double s = seconds_since(t0);
  o.expect(s < 1, "runtime " + fmt(s) + " s < 1 s");
  return o;
}

// 2. Weyl group orders by enumeration
Outcome weyl_orders() {
  Outcome o;
  const std::pair<RootSystemName, size_t> want[] = {
      {RootSystemName::A1xA1, 4}, {RootSystemName::A2, 6}, {RootSystemName::B2, 8}, {RootSystemName::G2, 12}};
  for (auto [n, order] : want) {
    auto rs = build_root_system(n);
    size_t got = enumerate_weyl_group(rs.simple_roots).size();
    o.expect(got == order, std::string(to_string(n)) + " |W| = " + std::to_string(got));
  }
  return o;
}

// 3. all six packages with both witnesses verified exactly
Outcome packages_verify() {
  Outcome o;
  auto t0 = Clock::now();
  for (auto [n, v] : packages) {
    auto pkg = build_omega(n, v);
    VerifyReport lw = verify_congruence(pkg.witness_lattice);
    VerifyReport ww = verify_congruence(pkg.witness_weyl);
    o.expect(lw.ok && ww.ok, label(n, v) + ": lattice witness " + (lw.ok ? "verified" : lw.message) +
                                 ", affine Weyl witness " + (ww.ok ? "verified" : ww.message));
    for (const auto& d : pkg.derived_cuts)
      o.note("derived " + d.item + ": stated [" + d.stated + "], used [" + d.used + "]: " + d.reason);
  }
  double s = seconds_since(t0);
  o.expect(s < 10, "runtime " + fmt(s) + " s < 10 s");
  return o;
}

// 4. J = lattice ∩ coroot lattice is full rank and contains k times the lattice
Outcome lattice_hypothesis() {
  Outcome o;
  for (auto [n, v] : packages) {
    auto pkg = build_omega(n, v);
    LatticeIntersection li = lattice_intersection(pkg.lattice, coroot_lattice(pkg.rs));
    bool full = li.commensurable && li.lattice.has_value();
    o.expect(full, label(n, v) + ": J full rank, index " + li.index_in_first.get_str() + " in the lattice");
    long k = pkg.claimed_k;
    bool kin = full && li.lattice->contains(pkg.lattice.scaled(k));
    std::string msg = label(n, v) + ": " + std::to_string(k) + " * lattice inside J";
    if (!kin) {
      for (long m = k + 1; m <= 12 * k; ++m)
        if (full && li.lattice->contains(pkg.lattice.scaled(m))) {
          msg += " (smallest multiple that works: " + std::to_string(m) + ")";
          break;
        }
    }
    o.expect(kin, msg);
    if (n == RootSystemName::A2 && v == 1) {
      bool eq = full && li.lattice->same_as(coroot_lattice(pkg.rs));
      o.expect(eq && li.index_in_first == 6, "A2 variant 1: J equals the coroot lattice, index " +
                                                 li.index_in_first.get_str() + " (want 6)");
    }
  }
  return o;
}

// 5. seeded Monte-Carlo multiplicities, 1e5 samples per package
Outcome monte_carlo(io::Json* report) {
  Outcome o;
  io::Json all = io::Json::array();
  for (auto [n, v] : packages) {
    auto t0 = Clock::now();
    auto pkg = build_omega(n, v);
    VerifyOutcome r = verify_package(pkg, "mc", 100000, 20240601);
    double s = seconds_since(t0);
    const auto& tr = r.report["translation"];
    const auto& wr = r.report["affine_weyl"];
    auto summary = [](const io::Json& t) {
      std::string h;
      for (auto it = t["histogram"].begin(); it != t["histogram"].end(); ++it)
        h += (h.empty() ? "" : " ") + it.key() + ":" + std::to_string(it.value().get<uint64_t>());
      return "{" + h + "} boundary " + std::to_string(t["boundary"].get<uint64_t>());
    };
    o.expect(r.pass, label(n, v) + ": translation " + summary(tr) + "; affine Weyl " + summary(wr));
    o.expect(s < 60, label(n, v) + ": runtime " + fmt(s) + " s < 60 s");
    all.push_back(r.report);
  }
  if (report)
    *report = all;
  return o;
}

// 6. Fuglede Gram check and a negative control
Outcome fuglede() {
  Outcome o;
  for (auto [n, v] : packages) {
    auto pkg = build_omega(n, v);
    GramReport g = fuglede_gram(pkg.omega, pkg.lattice, 20, 64);
    o.expect(g.frequencies == 20 && g.deviation <= 1e-3,
             label(n, v) + ": Gram deviation " + fmt(g.deviation, 3) + " <= 1e-3 over " + std::to_string(g.frequencies) +
                 " frequencies");
  }
  Scalar s = Scalar::rational(11, 10);
  GramReport neg = fuglede_gram(ConvexPolygon::rectangle(0, 0, s, s), Lattice({1, 0}, {0, 1}), 20, 64);
  o.expect(neg.deviation > 1e-2, "control: side 1.1 square against Z^2, deviation " + fmt(neg.deviation, 3) + " > 1e-2");
  return o;
}

// 7. the dilation step for A2 variant 1 with A = 2I
Outcome tiler(io::Json* report) {
  Outcome o;
  auto t0 = Clock::now();
  auto pkg = build_omega(RootSystemName::A2, 1);
  const Mat2 twice{2, 0, 0, 2};
  TilerOptions opt;  // eps 0.01, 200 iterations, depth 6
  io::TilerRun primary = run_wavelet(pkg, twice, std::nullopt, opt);
  const TilerResult& p = primary.result;
  o.note("theta = alcove barycenter " + primary.theta.str());
  o.note("defect " + fmt(p.defect.defect) + " after " + std::to_string(p.iterations) + " iterations, annulus [" +
         fmt(p.r_inner) + ", " + fmt(p.r_outer) + "]: " + p.message);
  o.expect(p.bookkeeping_ok, "barycenter run: exact J-congruence bookkeeping at every iterate");
  o.expect(p.monotone, "barycenter run: accepted defects never increase");
  bool primary_ok = p.converged && p.defect.defect <= opt.eps;
  if (primary_ok) {
    o.expect(true, "barycenter run: defect " + fmt(p.defect.defect) + " <= 0.01");
  } else {
    // stalled; the honest report must say so
    o.expect(!p.converged && !p.message.empty(), "barycenter run reports non-convergence: \"" + p.message + "\"");
    o.note("unrepresented part of the reference shell: " + fmt(p.unrepresented_shell_area.to_double()) + " of area " +
           fmt((p.reference.area() - Scalar::rational(1, 4) * p.reference.area()).to_double()));
  }

  // documented alternative: theta at the centroid of the piece of the cell that stays put
  const Scalar r2 = Scalar::sqrt2(), r6 = Scalar::sqrt6();
  Vec2 theta{Scalar::rational(1, 6) * r2, Scalar::rational(1, 9) * r6};
  io::TilerRun alt = run_wavelet(pkg, twice, theta, opt);
  const TilerResult& a = alt.result;
  o.note("alternative theta " + theta.str() + ": defect " + fmt(a.defect.defect) + " after " +
         std::to_string(a.iterations) + " iterations, annulus [" + fmt(a.r_inner) + ", " + fmt(a.r_outer) + "]");
  o.expect(a.converged && a.defect.defect <= opt.eps, "alternative run: defect " + fmt(a.defect.defect) + " <= 0.01");
  o.expect(a.bookkeeping_ok && pieces_recompose(a.pieces, pkg.omega, pkg.intersection),
           "alternative run: W is J-congruent to omega (exact)");
  o.expect(a.monotone, "alternative run: accepted defects never increase");
  o.expect(a.window_covers, "alternative run: sample window reaches every scale of W");
  double s = seconds_since(t0);
  o.expect(s < 120, "runtime " + fmt(s) + " s < 120 s");
  if (report)
    *report = io::Json{{"barycenter", io::encode(primary)}, {"alternative", io::encode(alt)}};
  return o;
}

// 8. criteria 5 and 7 again with the same seeds give identical bytes
Outcome determinism(const std::string& json_dir) {
  Outcome o;
  io::Json a5, b5, a7, b7;
  monte_carlo(&a5);
  monte_carlo(&b5);
  tiler(&a7);
  tiler(&b7);
  std::string s5 = io::dump(a5), s7 = io::dump(a7);
  o.expect(s5 == io::dump(b5), "criterion 5 report byte-identical (" + std::to_string(s5.size()) + " bytes)");
  o.expect(s7 == io::dump(b7), "criterion 7 report byte-identical (" + std::to_string(s7.size()) + " bytes)");
  if (!json_dir.empty()) {
    std::filesystem::create_directories(json_dir);
    std::ofstream(json_dir + "/criterion5.json", std::ios::binary) << s5;
    std::ofstream(json_dir + "/criterion7.json", std::ios::binary) << s7;
    o.note("reports written to " + json_dir);
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  std::string json_dir;
  app.add_option("--criterion", only, "run one criterion (1-8)")->check(CLI::Range(1, 8));
  app.add_option("--json-dir", json_dir, "write the criterion 5 and 7 reports here");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"exact areas of K and C", areas},
      {"Weyl group orders", weyl_orders},
      {"six packages with verified witnesses", packages_verify},
      {"lattice hypothesis k * lattice inside J", lattice_hypothesis},
      {"Monte-Carlo multiplicity one", [] { return monte_carlo(nullptr); }},
      {"Fuglede Gram check", fuglede},
      {"three-way tiler for A2 variant 1, A = 2I", [] { return tiler(nullptr); }},
      {"determinism of criteria 5 and 7", [&] { return determinism(json_dir); }},
  };
  bool all = true;
  for (size_t i = 0; i < criteria.size(); ++i) {
    if (only && static_cast<size_t>(only) != i + 1)
      continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << "\n";
    for (const auto& l : o.lines)
      std::cout << "    " << l << "\n";
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
