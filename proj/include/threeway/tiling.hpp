// Congruence witnesses (piecewise equality by group elements), their exact
// verification and bounded search, Monte-Carlo tiling multiplicity, and the
// exponential Gram check for lattice tiles.

#ifndef THREEWAY_TILING_HPP_
#define THREEWAY_TILING_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "threeway/geometry.hpp"
#include "threeway/groups.hpp"
#include "threeway/roots.hpp"

namespace threeway {

struct WitnessEntry {
  Region piece;  // part of the source
  Isometry g;    // g(piece) is part of the target
};

struct CongruenceWitness {
  Region source, target;
  std::vector<WitnessEntry> entries;

  // Witness for target -> source: pieces g(piece) moved back by g^-1.
  CongruenceWitness inverted() const;
};

struct VerifyReport {
  bool ok = false;
  std::string message;
  std::optional<size_t> failing_entry;
  Region offending;  // overlap or gap that caused the failure
  Scalar offending_area;
};

VerifyReport verify_congruence(const CongruenceWitness& w);

// The two group actions used throughout: translations by a lattice, or the
// affine Weyl group W x Gamma of a root system.
using GroupAction = std::variant<Lattice, RootSystemData>;

// Greedy search over group elements with lattice coefficients |m|, |n| <= bound
// (times every element of W in the affine case), smallest coefficients first.
// Returns a verified witness, or nothing when the leftovers do not vanish.
std::optional<CongruenceWitness> search_congruence(const Region& source, const Region& target,
                                                   const GroupAction& group, int bound);

struct SampleBox {
  double xmin, ymin, xmax, ymax;
};

// Square box centred on r, side = multiple * diameter; corners snapped to a
// dyadic grid so that samples are exact doubles.
SampleBox centred_box(const Region& r, double diameter, double multiple);

struct TilingReport {
  uint64_t samples = 0;
  std::map<int, uint64_t> histogram;  // multiplicity -> count (non-boundary samples)
  uint64_t boundary = 0;
  uint64_t exact_fallbacks = 0;  // samples resolved with exact arithmetic
  bool pass = false;
  uint64_t seed = 0;
};

// Pseudo-random sample i for a seed: a point of the box on a 2^-28 grid.
std::array<double, 2> sample_point(const SampleBox& box, uint64_t seed, uint64_t index);

TilingReport mc_tiling_multiplicity(const Region& r, const GroupAction& group, uint64_t samples, uint64_t seed,
                                    const SampleBox& box);

// The first n points of the lattice ordered by exact norm, ties by (m, n).
std::vector<Vec2> shortest_lattice_points(const Lattice& l, size_t n);

struct GramReport {
  double deviation = 0;  // max |G - I|
  size_t frequencies = 0;
};

// G[j][k] = (1/|r|) * integral over r of exp(2 pi i <s_j - s_k, x>), s_j the
// first n points of the dual lattice.  precision_bits: 53 (double) or 64
// (extended); anything else throws std::invalid_argument.
GramReport fuglede_gram(const Region& r, const Lattice& l, size_t n, int precision_bits = 64);

}  // namespace threeway

#endif  // THREEWAY_TILING_HPP_
