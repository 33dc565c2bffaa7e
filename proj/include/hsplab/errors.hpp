#pragma once

#include <stdexcept>
#include <string>

namespace hsp {

enum class Errc {
  InvalidSpec,     // bad constructor arguments
  NotAGroup,       // cayley table fails a group axiom
  Catalog,         // unknown builtin family / parameter
  Capacity,        // configured cap exceeded
  Domain,          // element or subgroup from the wrong group
  Normality,       // quotient by a non-normal subgroup
  InvalidDivisor,  // subgroup_of_order with d not dividing n
  Unsupported,     // operation not available for this group kind
  UnluckySeed,     // randomized construction exhausted its retry cap
  Parse,           // CLI spec string / file parse failure
  Instance,        // oracle instance violates an algorithm precondition
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace hsp
