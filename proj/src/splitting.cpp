#include "volgrow/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "volgrow/rng.hpp"

namespace volgrow {

namespace {

constexpr const char* kModule = "splitting-tools";

Mat orthonormalize(const Mat& columns) {
  const int d = static_cast<int>(columns.rows());
  const int k = static_cast<int>(columns.cols());
  Eigen::HouseholderQR<Mat> qr(columns);
  return qr.householderQ() * Mat::Identity(d, k);
}

// sin of the largest principal angle between the spans of two orthonormal
// frames; accurate for tiny angles (no 1 - cos cancellation).
double sin_max_principal_angle(const Mat& p, const Mat& q) {
  if (p.cols() == 0 || q.cols() == 0) return 0.0;
  Mat residual = q - p * (p.transpose() * q);
  Eigen::JacobiSVD<Mat> svd(residual);
  return svd.singularValues()[0];
}

struct FlagPush {
  Mat frame_a;
  Mat frame_b;  // independently seeded, for the stagnation check
};

// Push two generic frames through the given Jacobian sequence with QR
// re-orthonormalization each step. jacobians[k] maps the tangent space at
// orbit point k to the one at point k+1; the result is based at the final
// point.
FlagPush push_flags(const std::vector<Mat>& jacobians, int dimension, std::uint64_t seed) {
  FlagPush flags;
  flags.frame_a = random_orthonormal_frame(dimension, dimension, seed, 0);
  flags.frame_b = random_orthonormal_frame(dimension, dimension, seed, 1);
  for (const Mat& j : jacobians) {
    flags.frame_a = orthonormalize(j * flags.frame_a);
    flags.frame_b = orthonormalize(j * flags.frame_b);
  }
  return flags;
}

void check_flag_convergence(const FlagPush& flags, const std::vector<int>& cuts, double tolerance,
                            const char* direction) {
  for (int k : cuts) {
    if (k <= 0 || k >= flags.frame_a.cols()) continue;
    const double angle = sin_max_principal_angle(flags.frame_a.leftCols(k), flags.frame_b.leftCols(k));
    if (!(angle <= tolerance)) {
      throw ConvergenceError(kModule, "estimate_splitting",
                             std::string(direction) + " flag of dimension " + std::to_string(k) +
                                 " stagnated (angle " + std::to_string(angle) + ")");
    }
  }
}

// Basis of span(p) intersected with span(q); expects the intersection to have
// dimension r and reports stagnation otherwise.
Mat intersect_subspaces(const Mat& p, const Mat& q, int r, double tolerance) {
  Eigen::JacobiSVD<Mat> svd(p.transpose() * q, Eigen::ComputeFullU);
  int accepted = 0;
  const auto& sigma = svd.singularValues();
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma[i] >= 1.0 - tolerance) ++accepted;
  }
  if (accepted != r) {
    throw ConvergenceError(kModule, "estimate_splitting",
                           "flag intersection expected dimension " + std::to_string(r) + ", found " +
                               std::to_string(accepted));
  }
  Mat basis(p.rows(), r);
  for (int i = 0; i < r; ++i) basis.col(i) = p * svd.matrixU().col(i);
  return orthonormalize(basis);
}

void validate_dims(const SystemSpec& system, const std::vector<int>& dims, int stable_dim,
                   int unstable_dim) {
  if (dims.empty()) throw ArgumentError(kModule, "estimate_splitting", "dims must be nonempty");
  const int total = std::accumulate(dims.begin(), dims.end(), 0);
  if (total != system.dimension()) {
    throw ArgumentError(kModule, "estimate_splitting", "block dimensions must sum to the system dimension");
  }
  for (int d : dims) {
    if (d < 1) throw ArgumentError(kModule, "estimate_splitting", "block dimensions must be positive");
  }
  if (stable_dim != 0 && stable_dim != dims.front()) {
    throw ArgumentError(kModule, "estimate_splitting", "stable_dim must be 0 or the first block dimension");
  }
  if (unstable_dim != 0 && unstable_dim != dims.back()) {
    throw ArgumentError(kModule, "estimate_splitting", "unstable_dim must be 0 or the last block dimension");
  }
  const std::size_t first_center = stable_dim > 0 ? 1 : 0;
  const std::size_t last_center = dims.size() - (unstable_dim > 0 ? 1 : 0);
  for (std::size_t i = first_center; i < last_center; ++i) {
    if (dims[i] != 1) {
      throw ArgumentError(kModule, "estimate_splitting", "center blocks must be one dimensional");
    }
  }
}

}  // namespace

int SplittingFrame::dimension() const {
  int d = 0;
  for (const Mat& b : blocks) d += static_cast<int>(b.cols());
  return d;
}

int SplittingFrame::num_centers() const {
  return static_cast<int>(blocks.size()) - (stable_dim > 0 ? 1 : 0) - (unstable_dim > 0 ? 1 : 0);
}

Mat SplittingFrame::join_blocks(int first, int last) const {
  const int d = dimension();
  int width = 0;
  for (int b = first; b < last; ++b) width += static_cast<int>(blocks[b].cols());
  if (width == 0) throw ArgumentError(kModule, "SplittingFrame", "empty block join");
  Mat joined(d, width);
  int at = 0;
  for (int b = first; b < last; ++b) {
    joined.middleCols(at, blocks[b].cols()) = blocks[b];
    at += static_cast<int>(blocks[b].cols());
  }
  return orthonormalize(joined);
}

Mat SplittingFrame::bundle_f(int i) const {
  const int l = num_centers();
  if (i < 0 || i > l) {
    throw ArgumentError(kModule, "bundle_f", "bundle index must be in {0,...," + std::to_string(l) + "}");
  }
  const int first = (stable_dim > 0 ? 1 : 0) + i;
  if (first >= static_cast<int>(blocks.size())) {
    throw ArgumentError(kModule, "bundle_f", "bundle F^" + std::to_string(i) + " is empty");
  }
  return join_blocks(first, static_cast<int>(blocks.size()));
}

void SplittingFrame::validate() const {
  for (const Mat& b : blocks) {
    Mat gram = b.transpose() * b;
    gram -= Mat::Identity(b.cols(), b.cols());
    if (gram.cwiseAbs().maxCoeff() > 1e-10) {
      throw ArgumentError(kModule, "SplittingFrame", "block is not orthonormal within 1e-10");
    }
  }
  if (dimension() != base_point.dimension()) {
    throw ArgumentError(kModule, "SplittingFrame", "blocks do not span the tangent space");
  }
}

Mat random_orthonormal_frame(int dimension, int k, std::uint64_t seed, std::uint64_t counter) {
  rng::Prng prng(seed, rng::Stream::kGrassmannFrames);
  Mat g(dimension, k);
  for (int c = 0; c < k; ++c) {
    for (int r = 0; r < dimension; ++r) {
      g(r, c) = prng.gaussian(counter * 16 + static_cast<std::uint64_t>(c * kMaxDim + r), 0);
    }
  }
  return orthonormalize(g);
}

std::vector<int> default_dims(const SystemSpec& system) {
  return std::vector<int>(static_cast<std::size_t>(system.dimension()), 1);
}

SplittingFrame coordinate_splitting(const SystemSpec& system, const TorusPoint& x,
                                    const std::vector<int>& dims, int stable_dim, int unstable_dim) {
  validate_dims(system, dims, stable_dim, unstable_dim);
  SplittingFrame frame;
  frame.base_point = x;
  frame.stable_dim = stable_dim;
  frame.unstable_dim = unstable_dim;
  const int d = system.dimension();
  int at = 0;
  for (int width : dims) {
    Mat block = Mat::Zero(d, width);
    for (int c = 0; c < width; ++c) block(at + c, c) = 1.0;
    frame.blocks.push_back(block);
    at += width;
  }
  return frame;
}

SplittingFrame estimate_splitting(const SystemSpec& system, const TorusPoint& x, long long n_fwd,
                                  long long n_bwd, const std::vector<int>& dims, int stable_dim,
                                  int unstable_dim, const SplittingOptions& options) {
  if (n_fwd < 1 || n_bwd < 1) {
    throw ArgumentError(kModule, "estimate_splitting", "n_fwd and n_bwd must be >= 1");
  }
  validate_dims(system, dims, stable_dim, unstable_dim);
  const int d = system.dimension();
  const int blocks = static_cast<int>(dims.size());

  // Cumulative block dimensions from the stable end.
  std::vector<int> cum(static_cast<std::size_t>(blocks) + 1, 0);
  for (int b = 0; b < blocks; ++b) cum[b + 1] = cum[b] + dims[b];

  // Forward push runs along the stored backward orbit of x, so roundoff in
  // the backward iteration only perturbs it as a pseudo-orbit and the final
  // frame is anchored exactly at x. Same for the backward push along the
  // stored forward orbit.
  std::vector<Mat> fwd_jacobians(static_cast<std::size_t>(n_fwd));
  {
    TorusPoint p = x;
    for (long long k = 0; k < n_fwd; ++k) {
      p = evaluate_inverse(system, p);
      jacobian_into(system, p, fwd_jacobians[static_cast<std::size_t>(n_fwd - 1 - k)]);
    }
  }
  std::vector<Mat> bwd_jacobians(static_cast<std::size_t>(n_bwd));
  {
    TorusPoint p = x;
    Mat j(d, d);
    for (long long k = 0; k < n_bwd; ++k) {
      jacobian_into(system, p, j);
      bwd_jacobians[static_cast<std::size_t>(k)] = j.inverse();
      p = evaluate(system, p);
    }
    std::reverse(bwd_jacobians.begin(), bwd_jacobians.end());
  }

  const FlagPush forward = push_flags(fwd_jacobians, d, options.seed * 2 + 1);
  const FlagPush backward = push_flags(bwd_jacobians, d, options.seed * 2 + 2);

  std::vector<int> fwd_cuts, bwd_cuts;
  for (int b = 0; b < blocks; ++b) {
    fwd_cuts.push_back(d - cum[b]);  // leading most-expanded complement of blocks below b
    bwd_cuts.push_back(cum[b + 1]);  // leading most-contracted span through block b
  }
  check_flag_convergence(forward, fwd_cuts, options.angle_tolerance, "forward");
  check_flag_convergence(backward, bwd_cuts, options.angle_tolerance, "backward");

  SplittingFrame frame;
  frame.base_point = x;
  frame.stable_dim = stable_dim;
  frame.unstable_dim = unstable_dim;
  for (int b = 0; b < blocks; ++b) {
    const int fwd_dim = d - cum[b];
    const int bwd_dim = cum[b + 1];
    if (fwd_dim == d) {
      frame.blocks.push_back(backward.frame_a.leftCols(bwd_dim));
    } else if (bwd_dim == d) {
      frame.blocks.push_back(forward.frame_a.leftCols(fwd_dim));
    } else {
      frame.blocks.push_back(intersect_subspaces(backward.frame_a.leftCols(bwd_dim),
                                                 forward.frame_a.leftCols(fwd_dim), dims[b],
                                                 options.intersection_tolerance));
    }
  }
  frame.validate();
  return frame;
}

SplittingFrame estimate_splitting(const SystemSpec& system, const TorusPoint& x, long long n_fwd,
                                  long long n_bwd, const std::vector<int>& dims,
                                  const SplittingOptions& options) {
  return estimate_splitting(system, x, n_fwd, n_bwd, dims, dims.front(), dims.back(), options);
}

namespace {

// Unit probe directions with components in {-1, 0, 1}: the extreme rays of
// the sign lattice, deduped up to sign.
std::vector<Vec> lattice_directions(int dim) {
  std::vector<Vec> out;
  int count = 1;
  for (int i = 0; i < dim; ++i) count *= 3;
  for (int code = 0; code < count; ++code) {
    Vec v = Vec::Zero(dim);
    int rest = code;
    for (int i = 0; i < dim; ++i) {
      v[i] = static_cast<double>(rest % 3 - 1);
      rest /= 3;
    }
    double first = 0.0;
    for (int i = 0; i < dim; ++i) {
      if (v[i] != 0.0) {
        first = v[i];
        break;
      }
    }
    if (first <= 0.0) continue;  // zero vector or sign duplicate
    out.push_back(v.normalized());
  }
  return out;
}

Mat iterate_jacobian(const SystemSpec& system, const TorusPoint& x, long long t) {
  const int d = system.dimension();
  Mat product = Mat::Identity(d, d);
  Mat j(d, d);
  TorusPoint p = x;
  for (long long k = 0; k < t; ++k) {
    jacobian_into(system, p, j);
    product = j * product;
    p = evaluate(system, p);
  }
  return product;
}

SplittingFrame splitting_or_fallback(const SystemSpec& system, const TorusPoint& x,
                                     const std::vector<int>& dims, int stable_dim, int unstable_dim,
                                     long long n_fwd, long long n_bwd, std::uint64_t seed,
                                     bool fallback, bool* fallback_used = nullptr) {
  SplittingOptions opts;
  opts.seed = seed;
  try {
    return estimate_splitting(system, x, n_fwd, n_bwd, dims, stable_dim, unstable_dim, opts);
  } catch (const ConvergenceError&) {
    if (!fallback) throw;
    if (fallback_used) *fallback_used = true;
    return coordinate_splitting(system, x, dims, stable_dim, unstable_dim);
  }
}

}  // namespace

DominationReport verify_domination(const SystemSpec& system, const std::vector<int>& dims,
                                   int stable_dim, int unstable_dim, int cut,
                                   const DominationOptions& options) {
  if (options.alpha <= 0.0) throw ArgumentError(kModule, "verify_domination", "alpha must be positive");
  if (options.iterate < 1) throw ArgumentError(kModule, "verify_domination", "iterate T must be >= 1");
  if (cut < 1 || cut >= static_cast<int>(dims.size())) {
    throw ArgumentError(kModule, "verify_domination", "cut must split the blocks into two nonempty parts");
  }

  rng::Prng prng(options.seed, rng::Stream::kDominationPoints);
  DominationReport report;
  report.iterate = options.iterate;
  report.samples = options.samples;
  report.empirical_lambda = 0.0;
  report.cone_invariant = true;

  struct ConeCase {
    Vec image_e_component;  // coordinates of the pushed boundary ray
    Vec image_f_component;
  };
  std::vector<ConeCase> cone_cases;

  for (std::int64_t sample = 0; sample < options.samples; ++sample) {
    const TorusPoint x = sample_torus_point(prng, static_cast<std::uint64_t>(sample), system.dimension());
    const SplittingFrame at_x =
        splitting_or_fallback(system, x, dims, stable_dim, unstable_dim, options.n_fwd, options.n_bwd,
                              options.seed, options.coordinate_fallback,
                              &report.used_coordinate_fallback);
    const Mat e_frame = at_x.join_blocks(0, cut);
    const Mat f_frame = at_x.join_blocks(cut, static_cast<int>(dims.size()));
    const Mat push = iterate_jacobian(system, x, options.iterate);

    const auto e_dirs = lattice_directions(static_cast<int>(e_frame.cols()));
    const auto f_dirs = lattice_directions(static_cast<int>(f_frame.cols()));

    double max_e_growth = 0.0;
    double min_f_growth = std::numeric_limits<double>::infinity();
    for (const Vec& w : e_dirs) max_e_growth = std::max(max_e_growth, (push * (e_frame * w)).norm());
    for (const Vec& w : f_dirs) min_f_growth = std::min(min_f_growth, (push * (f_frame * w)).norm());
    const double ratio = max_e_growth / min_f_growth;
    if (ratio > report.empirical_lambda) {
      report.empirical_lambda = ratio;
      report.worst_point = x;
    }

    // Boundary rays of the cone, decomposed in the splitting at f^T(x).
    const TorusPoint fx = [&] {
      TorusPoint p = x;
      for (long long k = 0; k < options.iterate; ++k) p = evaluate(system, p);
      return p;
    }();
    const SplittingFrame at_fx =
        splitting_or_fallback(system, fx, dims, stable_dim, unstable_dim, options.n_fwd, options.n_bwd,
                              options.seed, options.coordinate_fallback,
                              &report.used_coordinate_fallback);
    const Mat e_image = at_fx.join_blocks(0, cut);
    const Mat f_image = at_fx.join_blocks(cut, static_cast<int>(dims.size()));
    Mat basis(system.dimension(), system.dimension());
    basis << e_image, f_image;
    const Mat solver = basis.inverse();
    for (const Vec& we : e_dirs) {
      for (const Vec& wf : f_dirs) {
        const Vec boundary = options.alpha * (e_frame * we) + f_frame * wf;
        const Vec components = solver * (push * boundary);
        ConeCase c;
        c.image_e_component = components.head(e_frame.cols());
        c.image_f_component = components.tail(f_frame.cols());
        cone_cases.push_back(std::move(c));
      }
    }
  }

  for (const ConeCase& c : cone_cases) {
    const double e_norm = c.image_e_component.norm();
    const double f_norm = c.image_f_component.norm();
    const double allowed = options.alpha * report.empirical_lambda * f_norm;
    if (e_norm > allowed * (1.0 + 1e-9) + 1e-12) {
      report.cone_invariant = false;
      break;
    }
  }

  report.passed = report.empirical_lambda < 1.0;
  return report;
}

double subbundle_log_det(const SystemSpec& system, const TorusPoint& x, long long n, int i,
                         const SplittingFrame& splitting) {
  if (torus_distance(splitting.base_point, x) > 1e-12) {
    throw ArgumentError(kModule, "subbundle_log_det", "splitting is not based at the query point");
  }
  return restricted_log_det(system, x, n, splitting.bundle_f(i));
}

double grassmann_phi_gap(const SystemSpec& system, const TorusPoint& x, const Mat& v_frame,
                         const Mat& f_frame, long long n) {
  if (v_frame.cols() != f_frame.cols()) {
    throw ArgumentError(kModule, "grassmann_phi_gap", "dim V must equal dim F");
  }
  if (n < 1) throw ArgumentError(kModule, "grassmann_phi_gap", "n must be >= 1");
  const double v_log = restricted_log_det(system, x, n, v_frame);
  const double f_log = restricted_log_det(system, x, n, f_frame);
  return (v_log - f_log) / static_cast<double>(n);
}

GrassmannGapStats grassmann_gap_stats(const SystemSpec& system, long long n,
                                      const GrassmannGapOptions& options) {
  if (n < 1) throw ArgumentError(kModule, "max_gap_over_grassmannian", "n must be >= 1");
  if (options.point_samples < 1 || options.frame_samples < 1) {
    throw ArgumentError(kModule, "max_gap_over_grassmannian", "sample counts must be >= 1");
  }
  std::vector<int> dims = options.dims.empty() ? default_dims(system) : options.dims;
  const int stable_dim = options.stable_dim >= 0 ? options.stable_dim : dims.front();
  const int unstable_dim = options.unstable_dim >= 0 ? options.unstable_dim : dims.back();
  if (options.cut < 1 || options.cut >= static_cast<int>(dims.size())) {
    throw ArgumentError(kModule, "max_gap_over_grassmannian", "cut out of range");
  }

  rng::Prng points(options.seed, rng::Stream::kGrassmannPoints);
  GrassmannGapStats stats;
  stats.max_gap = -std::numeric_limits<double>::infinity();
  stats.min_gap = std::numeric_limits<double>::infinity();
  double total = 0.0;

  for (std::int64_t p = 0; p < options.point_samples; ++p) {
    const TorusPoint x = sample_torus_point(points, static_cast<std::uint64_t>(p), system.dimension());
    const SplittingFrame frame =
        splitting_or_fallback(system, x, dims, stable_dim, unstable_dim, options.n_fwd, options.n_bwd,
                              options.seed, options.coordinate_fallback);
    const Mat f_frame = frame.join_blocks(options.cut, static_cast<int>(dims.size()));
    const int k = static_cast<int>(f_frame.cols());
    const double f_log = restricted_log_det(system, x, n, f_frame);
    for (std::int64_t fidx = 0; fidx < options.frame_samples; ++fidx) {
      const Mat v                                  // uniform on Gr(k, d)
          = random_orthonormal_frame(system.dimension(), k, options.seed,
                                     static_cast<std::uint64_t>(p * options.frame_samples + fidx) + 2);
      const double gap =
          (restricted_log_det(system, x, n, v) - f_log) / static_cast<double>(n);
      stats.max_gap = std::max(stats.max_gap, gap);
      stats.min_gap = std::min(stats.min_gap, gap);
      total += gap;
      ++stats.samples;
    }
  }
  stats.mean_gap = total / static_cast<double>(stats.samples);
  return stats;
}

double max_gap_over_grassmannian(const SystemSpec& system, long long n,
                                 const GrassmannGapOptions& options) {
  return grassmann_gap_stats(system, n, options).max_gap;
}

}  // namespace volgrow
