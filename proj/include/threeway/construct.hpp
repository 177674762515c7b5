// The Omega sets of rank two root systems with their companion lattices and
// congruence witnesses, and the dilation step: sets that tile under the
// lattice, the affine Weyl group and an expansive dilation at once.

#ifndef THREEWAY_CONSTRUCT_HPP_
#define THREEWAY_CONSTRUCT_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "threeway/geometry.hpp"
#include "threeway/groups.hpp"
#include "threeway/roots.hpp"
#include "threeway/tiling.hpp"

namespace threeway {

class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One departure from the printed construction: what was stated, what is used.
struct DerivedCut {
  std::string item;
  std::string stated;
  std::string used;
  std::string reason;
  friend bool operator==(const DerivedCut&, const DerivedCut&) = default;
};

struct OmegaPackage {
  explicit OmegaPackage(RootSystemData r) : rs(std::move(r)) {}

  RootSystemData rs;
  int variant = 1;
  Vec2 delta, eta;  // lattice basis; the cell is the parallelogram they span
  Lattice lattice{Vec2{1, 0}, Vec2{0, 1}};
  Region cell;
  // Cut piece = cell ∩ {<p, cut_normal> >= cut_offset}; unset for A1xA1.
  std::optional<HalfPlane> cut;
  bool cut_piece_moves = false;  // otherwise its complement in the cell moves
  Vec2 shift;                    // lattice vector applied to the moving piece
  Region omega;
  CongruenceWitness witness_lattice;  // omega -> cell
  CongruenceWitness witness_weyl;     // omega -> alcove
  Lattice intersection{Vec2{1, 0}, Vec2{0, 1}};
  long claimed_k = 0;  // claimed: k * lattice lies in the intersection
  std::vector<DerivedCut> derived_cuts;
};

// name in {A2, B2, G2} with variant 1 or 2, or A1xA1 with variant 1 (unit
// square).  Throws std::invalid_argument on bad input, ConstructionError when
// nothing in the cut family verifies.
OmegaPackage build_omega(RootSystemName name, int variant);

// Both eigenvalues of the rational matrix [[a, b], [c, d]] exceed 1 in modulus.
// Throws std::invalid_argument if an entry is irrational.
bool is_expansive(const Mat2& a);

// D(x) = A (x - theta) + theta.
class ExpansiveMap {
 public:
  // Throws std::invalid_argument unless A is rational and expansive.
  ExpansiveMap(Mat2 a, Vec2 theta);

  const Mat2& matrix() const { return a_; }
  const Vec2& theta() const { return theta_; }
  // D^k as an affine map (linear part, translation); k may be negative.
  Mat2 power(int k) const;
  Vec2 apply(int k, const Vec2& x) const;
  ConvexPolygon apply(int k, const ConvexPolygon& p) const;
  Region apply(int k, const Region& r) const;
  // Rough growth per step, sqrt|det A|; used only to place annuli.
  double octave() const;

 private:
  Mat2 a_, inv_;
  Vec2 theta_;
};

// Centroid of the alcove.
Vec2 alcove_barycenter(const RootSystemData& rs);

struct DefectReport {
  uint64_t samples = 0;     // non-boundary samples used
  uint64_t boundary = 0;    // samples excluded for landing on an edge
  uint64_t bad = 0;         // samples whose window count is not 1
  uint64_t uncovered = 0;   // of those, count 0
  Scalar overlap_area;      // exact pairwise overlap inside the annulus
  Scalar annulus_area;
  double sample_fraction = 0;
  double overlap_fraction = 0;
  double defect = 0;        // sample_fraction + overlap_fraction
};

// Square annulus r_inner <= |x - theta|_inf <= r_outer.  For each sample x,
// counts n in [-depth, depth] with D^-n(x) in w.  Throws std::invalid_argument
// unless 0 < r_inner < r_outer.
DefectReport dilation_defect(const Region& w, const ExpansiveMap& map, int depth, double r_inner, double r_outer,
                             uint64_t samples, uint64_t seed);

struct TilerOptions {
  double eps = 0.01;
  int max_iter = 200;
  int depth = 6;
  uint64_t samples = 20000;
  uint64_t seed = 1;
  // Chosen from the placement of W when unset (three octaves wide).
  std::optional<std::pair<double, double>> annulus;
};

// A part of omega and the lattice vector (from the intersection) moving it.
struct TilerPiece {
  Region part;
  Vec2 translation;
};

struct TilerStep {
  int iteration = 0;
  std::string action;
  Scalar moved_area;
  double defect = 0;
  bool accepted = false;
};

struct TilerResult {
  Region w;
  std::vector<TilerPiece> pieces;
  bool converged = false;
  bool bookkeeping_ok = true;  // held at every iterate
  bool monotone = true;        // accepted defects never increased
  bool window_covers = true;   // every sample's window reaches all scales of W
  int iterations = 0;
  DefectReport defect;
  double r_inner = 0, r_outer = 0;
  ConvexPolygon reference = ConvexPolygon::rectangle(0, 0, 1, 1);  // Q with D^-1 Q inside Q
  Vec2 far_translation;  // J-vector carrying omega into a dilated shell
  int far_scale = 0;
  Scalar unrepresented_shell_area;  // part of Q \ D^-1 Q no J-translate of omega reaches
  std::vector<TilerStep> log;
  std::string message;
};

// Exact check that pieces partition omega and use translations from j.
bool pieces_recompose(const std::vector<TilerPiece>& pieces, const Region& omega, const Lattice& j);

// Throws std::invalid_argument when theta is not interior to the alcove.
TilerResult build_three_way_tiler(const OmegaPackage& pkg, const ExpansiveMap& map, const TilerOptions& options);

}  // namespace threeway

#endif  // THREEWAY_CONSTRUCT_HPP_
