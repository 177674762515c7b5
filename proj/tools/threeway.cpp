// threeway: construct, verify and draw three-way tiling sets.
// Exit codes: 0 success, 1 failed verification (or a tiler run that did not
// converge), 2 usage or input errors.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "threeway/commands.hpp"
#include "threeway/render.hpp"

using namespace threeway;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text))
    throw UsageError("cannot write " + path);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    out.push_back(cur);
  return out;
}

OmegaPackage load_package(const std::string& path) { return io::decode_package(io::parse(read_file(path))); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact construction and verification of three-way tiling sets in the plane"};
  app.require_subcommand(1);

  std::string system;
  auto* info = app.add_subcommand("info", "Print root system data as JSON");
  info->add_option("system", system, "a1xa1, a2, b2 or g2")->required();

  int variant = 1;
  std::string out_path;
  auto* construct = app.add_subcommand("construct", "Build an omega package");
  construct->add_option("--system", system, "a1xa1, a2, b2 or g2")->required();
  construct->add_option("--variant", variant, "1 or 2")->check(CLI::IsMember({1, 2}));
  construct->add_option("--out", out_path, "output JSON (stdout when omitted)");

  std::string pkg_path, mode = "witness";
  uint64_t samples = 100000, seed = 1;
  auto* verify = app.add_subcommand("verify", "Check a package; exit 0 iff every check passes");
  verify->add_option("--pkg", pkg_path, "package JSON")->required();
  verify->add_option("--mode", mode, "witness, mc or fuglede")->check(CLI::IsMember({"witness", "mc", "fuglede"}));
  verify->add_option("--samples", samples, "Monte-Carlo samples");
  verify->add_option("--seed", seed, "Monte-Carlo seed");
  verify->add_option("--out", out_path, "report JSON (stdout when omitted)");

  std::string matrix, theta_text;
  TilerOptions topt;
  auto* wavelet = app.add_subcommand("wavelet", "Run the dilation step from a package");
  wavelet->add_option("--pkg", pkg_path, "package JSON")->required();
  wavelet->add_option("--matrix", matrix, "a,b,c,d for [[a,b],[c,d]], rational entries")->required();
  wavelet->add_option("--theta", theta_text, "x,y fixed point, e.g. 1/6*sqrt2,1/9*sqrt6 (default: alcove barycenter)");
  wavelet->add_option("--eps", topt.eps, "target dilation defect");
  wavelet->add_option("--max-iter", topt.max_iter, "iteration limit");
  wavelet->add_option("--depth", topt.depth, "scales -depth..depth in the defect window");
  wavelet->add_option("--samples", topt.samples, "defect samples");
  wavelet->add_option("--seed", topt.seed, "defect sample seed");
  wavelet->add_option("--out", out_path, "output JSON (stdout when omitted)");

  std::string in_path, layers;
  auto* render = app.add_subcommand("render", "Draw a package or tiler output as SVG");
  render->add_option("--in", in_path, "package or tiler JSON")->required();
  render->add_option("--out", out_path, "output SVG (stdout when omitted)");
  render->add_option("--layers", layers,
                     "comma separated; package: omega,cell,alcove,roots,lattice,coroots,intersection; "
                     "tiler: w,omega,reference,pieces");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*info) {
      write_out("", io::dump(io::encode(build_root_system(parse_root_system_name(system)))));
      return 0;
    }
    if (*construct) {
      write_out(out_path, io::dump(io::encode(build_omega(parse_root_system_name(system), variant))));
      return 0;
    }
    if (*verify) {
      VerifyOutcome v = verify_package(load_package(pkg_path), mode, samples, seed);
      write_out(out_path, io::dump(v.report));
      return v.pass ? 0 : 1;
    }
    if (*wavelet) {
      auto entries = split(matrix, ',');
      if (entries.size() != 4)
        throw UsageError("--matrix needs four comma separated entries");
      Mat2 a{parse_scalar_text(entries[0]), parse_scalar_text(entries[1]), parse_scalar_text(entries[2]),
             parse_scalar_text(entries[3])};
      if (!(a.a.is_rational() && a.b.is_rational() && a.c.is_rational() && a.d.is_rational()))
        throw UsageError("--matrix entries must be rational");
      if (!is_expansive(a))
        throw UsageError("matrix " + matrix + " is not expansive: some eigenvalue has modulus <= 1");
      std::optional<Vec2> theta;
      if (!theta_text.empty()) {
        auto xy = split(theta_text, ',');
        if (xy.size() != 2)
          throw UsageError("--theta needs two comma separated coordinates");
        theta = Vec2{parse_scalar_text(xy[0]), parse_scalar_text(xy[1])};
      }
      io::TilerRun run = run_wavelet(load_package(pkg_path), a, theta, topt);
      write_out(out_path, io::dump(io::encode(run)));
      std::cerr << run.result.message << "\n";
      return run.result.converged ? 0 : 1;
    }
    if (*render) {
      std::vector<std::string> names;
      if (!layers.empty())
        names = split(layers, ',');
      write_out(out_path, render_svg(figure_spec(io::parse(read_file(in_path)), names)));
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    // bad names, malformed numbers, undecodable input, theta outside the alcove
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
