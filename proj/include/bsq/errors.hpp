#pragma once

#include <stdexcept>
#include <string>

#include "bsq/types.hpp"

namespace bsq {

// Contract violations (bad parameters, mismatched grids, unreadable files).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Advective CFL rejection; carries the largest admissible step.
class CflViolation : public Error {
 public:
  CflViolation(Real dt, Real suggested)
      : Error("time step " + std::to_string(dt) +
              " violates the advective CFL bound; use dt <= " +
              std::to_string(suggested)),
        suggested_dt(suggested) {}

  Real suggested_dt;
};

}  // namespace bsq
