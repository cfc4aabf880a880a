#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fpm {

// A request needs more table entries (or depth) than allowed.
class capacity_error : public std::length_error {
 public:
  using std::length_error::length_error;
};

// An index outside the valid range of a table or sequence.
class index_error : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Arguments outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A partial sum of a moment sequence vanished; `index` is where.
class division_error : public std::domain_error {
 public:
  division_error(const std::string& what, std::size_t index)
      : std::domain_error(what), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace fpm
