#include "spmdbench/exec/buffer.hpp"

#include <algorithm>

namespace spmdbench::exec {

Buffer::Buffer(std::string name, std::size_t len, ElemType type, double fill)
    : name_(std::move(name)), type_(type) {
  if (len == 0) throw InvalidArgument("buffer '" + name_ + "' must have length >= 1");
  if (type == ElemType::f32) {
    storage_ = std::vector<float>(len, static_cast<float>(fill));
  } else {
    storage_ = std::vector<double>(len, fill);
  }
}

std::size_t Buffer::size() const noexcept {
  return std::visit([](const auto& v) { return v.size(); }, storage_);
}

double Buffer::get(std::size_t i) const {
  return std::visit(
      [&](const auto& v) -> double {
        if (i >= v.size()) throw IndexError(name_, i, v.size());
        return static_cast<double>(v[i]);
      },
      storage_);
}

void Buffer::set(std::size_t i, double value) {
  std::visit(
      [&](auto& v) {
        using T = typename std::decay_t<decltype(v)>::value_type;
        if (i >= v.size()) throw IndexError(name_, i, v.size());
        v[i] = static_cast<T>(value);
      },
      storage_);
}

void Buffer::fill(double value) {
  std::visit(
      [&](auto& v) {
        using T = typename std::decay_t<decltype(v)>::value_type;
        std::fill(v.begin(), v.end(), static_cast<T>(value));
      },
      storage_);
}

std::vector<double> Buffer::to_vector() const {
  return std::visit([](const auto& v) { return std::vector<double>(v.begin(), v.end()); },
                    storage_);
}

Buffer create_buffer(std::int64_t len, ElemType type, double fill, std::string name) {
  if (len < 1) {
    throw InvalidArgument("buffer length must be >= 1, got " + std::to_string(len));
  }
  return Buffer(std::move(name), static_cast<std::size_t>(len), type, fill);
}

}  // namespace spmdbench::exec
