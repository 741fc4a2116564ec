#pragma once

#include <stdexcept>
#include <string>

namespace bunchmin {

enum class Errc {
  Parse,             // unreadable or malformed input document
  InvalidSpec,       // system description violates a structural invariant
  Infeasible,        // constraint system has no solution
  Unbounded,         // objective unbounded below on the feasible set
  EmptyBox,          // exhaustive scan found no feasible point in the box
  UnsupportedShape,  // no witness template matches the system
  Limit,             // internal search limit exceeded
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace bunchmin
