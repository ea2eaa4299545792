#ifndef VOLGROW_TYPES_HPP
#define VOLGROW_TYPES_HPP

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace volgrow {

// All tangent-space objects live in dimension d <= 4, so the dense types are
// capped at 4x4 and never touch the heap.
constexpr int kMaxDim = 4;

using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;

// Error taxonomy mirrored by the CLI exit codes: argument/config problems,
// floating-point trouble carrying the offending index, and iteration
// stagnation.
class Error : public std::runtime_error {
 public:
  Error(std::string module, std::string operation, const std::string& message)
      : std::runtime_error(message), module_(std::move(module)), operation_(std::move(operation)) {}
  const std::string& module_name() const { return module_; }
  const std::string& operation() const { return operation_; }

 private:
  std::string module_;
  std::string operation_;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  NumericalError(std::string module, std::string operation, const std::string& message,
                 long long index = -1)
      : Error(std::move(module), std::move(operation), message), index_(index) {}
  long long index() const { return index_; }

 private:
  long long index_;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace volgrow

#endif  // VOLGROW_TYPES_HPP
