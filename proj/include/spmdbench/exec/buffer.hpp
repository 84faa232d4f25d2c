#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "spmdbench/errors.hpp"
#include "spmdbench/exec/types.hpp"

namespace spmdbench::exec {

/// Flat typed scalar array standing in for a device allocation.
class Buffer {
 public:
  Buffer(std::string name, std::size_t len, ElemType type, double fill);

  const std::string& name() const noexcept { return name_; }
  ElemType elem_type() const noexcept { return type_; }
  std::size_t size() const noexcept;

  /// Typed storage. Throws InvalidArgument if T does not match elem_type().
  template <class T>
  std::span<T> data() {
    check_type<T>();
    auto& v = std::get<std::vector<T>>(storage_);
    return {v.data(), v.size()};
  }

  template <class T>
  std::span<const T> data() const {
    check_type<T>();
    const auto& v = std::get<std::vector<T>>(storage_);
    return {v.data(), v.size()};
  }

  /// Bounds-checked element read/write, converting through double.
  double get(std::size_t i) const;
  void set(std::size_t i, double value);

  void fill(double value);

  /// Copy of the contents widened to double.
  std::vector<double> to_vector() const;

 private:
  template <class T>
  void check_type() const {
    if (elem_type_of<T>() != type_) {
      throw InvalidArgument("buffer '" + name_ + "' holds " + std::string(to_string(type_)) +
                            ", requested " + std::string(to_string(elem_type_of<T>())));
    }
  }

  std::string name_;
  ElemType type_;
  std::variant<std::vector<float>, std::vector<double>> storage_;
};

/// `len` must be >= 1; the fill value is rounded to the element type.
Buffer create_buffer(std::int64_t len, ElemType type, double fill, std::string name = "buffer");

}  // namespace spmdbench::exec
