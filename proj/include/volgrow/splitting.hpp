#ifndef VOLGROW_SPLITTING_HPP
#define VOLGROW_SPLITTING_HPP

#include <cstdint>
#include <vector>

#include "volgrow/cocycle.hpp"
#include "volgrow/systems.hpp"

namespace volgrow {

// Per-point orthonormal bases for the bundles of a splitting
// E^s + E^1 + ... + E^l + E^u. The first block is stable iff stable_dim > 0
// and the last is unstable iff unstable_dim > 0; every interior block is one
// dimensional. Blocks are individually orthonormal but in general not
// mutually orthogonal.
struct SplittingFrame {
  TorusPoint base_point;
  std::vector<Mat> blocks;
  int stable_dim = 0;
  int unstable_dim = 0;

  int dimension() const;
  int num_centers() const;

  // F^i = E^{i+1} + ... + E^l + E^u for 0 <= i <= l, returned as an
  // orthonormal frame spanning the sum.
  Mat bundle_f(int i) const;

  // Join of blocks [first, last) as an orthonormal frame.
  Mat join_blocks(int first, int last) const;

  void validate() const;
};

// Cone along F with width alpha: vectors v_E + v_F with |v_E| <= alpha |v_F|.
struct ConeSpec {
  Mat e_frame;
  Mat f_frame;
  double alpha = 1.0;
};

struct DominationReport {
  bool passed = false;
  double empirical_lambda = 0.0;  // worst contraction ratio; < 1 means dominated
  long long iterate = 1;
  TorusPoint worst_point;
  std::int64_t samples = 0;
  bool cone_invariant = false;  // image of boundary rays stays in the scaled cone
  bool used_coordinate_fallback = false;
};

struct SplittingOptions {
  long long n_fwd = 40;
  long long n_bwd = 40;
  double angle_tolerance = 1e-6;       // successive-iterate stagnation bound
  double intersection_tolerance = 1e-8;
  std::uint64_t seed = 0;
};

// Power iteration on flags: a generic frame pushed forward n_fwd steps from
// f^{-n_fwd}(x) converges (under domination) to the most-expanded flag; the
// backward iteration from f^{+n_bwd}(x) yields the most-contracted flag.
// Interior blocks come from principal-angle intersections of the two flags.
// dims lists the block dimensions from most stable to most unstable;
// stable_dim / unstable_dim label the ends (pass 0 to treat an end block as a
// center).
SplittingFrame estimate_splitting(const SystemSpec& system, const TorusPoint& x, long long n_fwd,
                                  long long n_bwd, const std::vector<int>& dims, int stable_dim,
                                  int unstable_dim, const SplittingOptions& options = {});

// Convenience: stable_dim = dims.front(), unstable_dim = dims.back().
SplittingFrame estimate_splitting(const SystemSpec& system, const TorusPoint& x, long long n_fwd,
                                  long long n_bwd, const std::vector<int>& dims,
                                  const SplittingOptions& options = {});

// Splitting with the coordinate axes as blocks; the honest fallback when
// power iteration stagnates (no domination), where every ratio test still
// evaluates and reports failure.
SplittingFrame coordinate_splitting(const SystemSpec& system, const TorusPoint& x,
                                    const std::vector<int>& dims, int stable_dim, int unstable_dim);

struct DominationOptions {
  double alpha = 1.0;
  long long iterate = 1;
  std::int64_t samples = 100;
  std::uint64_t seed = 0;
  long long n_fwd = 40;
  long long n_bwd = 40;
  bool coordinate_fallback = false;  // on stagnation use coordinate blocks
};

// Worst ratio of E-growth to F-growth over sampled points and a
// deterministic lattice of extreme rays; E = blocks [0, cut), F = the rest.
DominationReport verify_domination(const SystemSpec& system, const std::vector<int>& dims,
                                   int stable_dim, int unstable_dim, int cut,
                                   const DominationOptions& options);

// log |det Df^n restricted to F^i| at x for the given splitting.
double subbundle_log_det(const SystemSpec& system, const TorusPoint& x, long long n, int i,
                         const SplittingFrame& splitting);

// Birkhoff-normalized gap (1/n)(log det on V - log det on F).
double grassmann_phi_gap(const SystemSpec& system, const TorusPoint& x, const Mat& v_frame,
                         const Mat& f_frame, long long n);

struct GrassmannGapOptions {
  std::int64_t point_samples = 100;
  std::int64_t frame_samples = 20;
  std::uint64_t seed = 0;
  int cut = 1;  // F = blocks[cut..] of the estimated splitting
  std::vector<int> dims;
  int stable_dim = -1;    // -1: dims.front()
  int unstable_dim = -1;  // -1: dims.back()
  long long n_fwd = 40;
  long long n_bwd = 40;
  bool coordinate_fallback = false;
};

struct GrassmannGapStats {
  double max_gap = 0.0;
  double min_gap = 0.0;
  double mean_gap = 0.0;
  std::int64_t samples = 0;
};

double max_gap_over_grassmannian(const SystemSpec& system, long long n,
                                 const GrassmannGapOptions& options);
GrassmannGapStats grassmann_gap_stats(const SystemSpec& system, long long n,
                                      const GrassmannGapOptions& options);

// Uniform-on-Grassmannian frame: orthonormalized Gaussian d x k matrix.
Mat random_orthonormal_frame(int dimension, int k, std::uint64_t seed, std::uint64_t counter);

std::vector<int> default_dims(const SystemSpec& system);

}  // namespace volgrow

#endif  // VOLGROW_SPLITTING_HPP
