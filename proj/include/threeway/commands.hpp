// The work behind the command-line subcommands, shared with the acceptance
// runner so both emit the same JSON.

#ifndef THREEWAY_COMMANDS_HPP_
#define THREEWAY_COMMANDS_HPP_

#include <optional>
#include <string>

#include "threeway/io.hpp"

namespace threeway {

// Terms like "3/2", "-sqrt2", "1/3*sqrt6" joined by + or -, e.g. the output of
// Scalar::str().  Throws std::invalid_argument.
Scalar parse_scalar_text(const std::string& text);

struct VerifyOutcome {
  io::Json report;
  bool pass = false;
};

// mode: "witness" (exact congruences, areas, lattice hypothesis), "mc"
// (seeded multiplicity under the lattice and the affine Weyl group in a box
// of three cell diameters) or "fuglede" (Gram matrix on 20 dual frequencies).
// Throws std::invalid_argument for an unknown mode.
VerifyOutcome verify_package(const OmegaPackage& pkg, const std::string& mode, uint64_t samples, uint64_t seed);

// theta defaults to the alcove barycenter.  Throws std::invalid_argument when
// the matrix is not expansive or theta is not interior to the alcove.
io::TilerRun run_wavelet(const OmegaPackage& pkg, const Mat2& a, std::optional<Vec2> theta, const TilerOptions& options);

}  // namespace threeway

#endif  // THREEWAY_COMMANDS_HPP_
