#pragma once

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace spmdbench {

namespace detail {
inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}
}  // namespace detail

/// Bad configuration, arity, or parameter value.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Out-of-range element access, naming the buffer and index.
class IndexError : public std::out_of_range {
 public:
  IndexError(std::string buffer, std::size_t index, std::size_t size)
      : std::out_of_range("index " + std::to_string(index) + " out of range for buffer '" +
                          buffer + "' of length " + std::to_string(size)),
        buffer_(std::move(buffer)),
        index_(index) {}

  const std::string& buffer() const noexcept { return buffer_; }
  std::size_t index() const noexcept { return index_; }

 private:
  std::string buffer_;
  std::size_t index_;
};

/// Kernel output did not match its oracle.
class VerificationError : public std::runtime_error {
 public:
  VerificationError(std::string kernel, double deviation, double tolerance)
      : std::runtime_error("verification failed for kernel '" + kernel + "': max deviation " +
                           detail::sci(deviation) + " exceeds tolerance " +
                           detail::sci(tolerance)),
        kernel_(std::move(kernel)),
        deviation_(deviation),
        tolerance_(tolerance) {}

  const std::string& kernel() const noexcept { return kernel_; }
  double deviation() const noexcept { return deviation_; }
  double tolerance() const noexcept { return tolerance_; }

 private:
  std::string kernel_;
  double deviation_;
  double tolerance_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed command line.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Host environment problem (e.g. worker pool creation).
class EnvironmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spmdbench
