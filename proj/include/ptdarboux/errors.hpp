#pragma once

#include <stdexcept>
#include <string>

namespace ptdarboux {

// A gamma-type pole was hit (argument at a non-positive integer).
class pole_error : public std::domain_error {
public:
    explicit pole_error(const std::string& what) : std::domain_error(what) {}
};

// An iterative routine failed to converge. For the eigensolver,
// `index` names the eigenvalue block that failed to deflate; for
// series evaluation it is the term cap that was exhausted.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& what, long index)
        : std::runtime_error(what + " (index " + std::to_string(index) + ")"),
          index_(index) {}

    long index() const noexcept { return index_; }

private:
    long index_;
};

} // namespace ptdarboux
