#ifndef VOLGROW_SYSTEMS_HPP
#define VOLGROW_SYSTEMS_HPP

#include <optional>
#include <string>

#include "volgrow/torus.hpp"
#include "volgrow/types.hpp"

namespace volgrow {

enum class SystemKind { kLinearToral, kSkewProduct, kPerturbedCat };

std::string to_string(SystemKind kind);
SystemKind system_kind_from_string(const std::string& name);

// Df at a point.
struct Jacobian {
  Mat entries;
  TorusPoint base_point;
};

// Immutable description of a built-in torus diffeomorphism.
//
//   linear_toral   x |-> A x (mod 1), A integer with |det A| = 1
//   skew_product   (x, y, z) |-> (A (x, y), z + eps sin(2 pi x)) (mod 1)
//   perturbed_cat  (x, y) |-> A (x, y) + eps (sin(2 pi y), 0) (mod 1)
//
// Construction validates unimodularity, the perturbation bound
// eps * 2 pi < 0.5, and (for perturbed_cat) that det Df stays away from zero
// over a y-grid.
class SystemSpec {
 public:
  static SystemSpec linear_toral(const Mat& matrix);
  static SystemSpec identity(int dimension);
  static SystemSpec cat_map();
  static SystemSpec skew_product(double epsilon);
  static SystemSpec skew_product(double epsilon, const Mat& base_matrix);
  static SystemSpec perturbed_cat(double epsilon);
  static SystemSpec perturbed_cat(double epsilon, const Mat& matrix);

  SystemKind kind() const { return kind_; }
  int dimension() const { return dimension_; }
  const Mat& matrix() const { return matrix_; }
  const Mat& matrix_inverse() const { return matrix_inverse_; }
  double epsilon() const { return epsilon_; }

  std::optional<double> exact_entropy() const { return exact_entropy_; }
  const std::string& entropy_note() const { return entropy_note_; }
  void set_exact_entropy(double value, std::string note) {
    exact_entropy_ = value;
    entropy_note_ = std::move(note);
  }

 private:
  SystemSpec(SystemKind kind, int dimension, Mat matrix, double epsilon);

  SystemKind kind_;
  int dimension_;
  Mat matrix_;          // linear part (for skew_product: the 2x2 base)
  Mat matrix_inverse_;  // exact integer inverse of the linear part
  double epsilon_ = 0.0;
  std::optional<double> exact_entropy_;
  std::string entropy_note_;
};

TorusPoint evaluate(const SystemSpec& system, const TorusPoint& x);
TorusPoint evaluate_inverse(const SystemSpec& system, const TorusPoint& x);

Jacobian jacobian(const SystemSpec& system, const TorusPoint& x);

// Hot-path variant that skips the Jacobian wrapper.
void jacobian_into(const SystemSpec& system, const TorusPoint& x, Mat& out);

}  // namespace volgrow

#endif  // VOLGROW_SYSTEMS_HPP
