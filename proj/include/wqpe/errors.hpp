#pragma once

#include <stdexcept>
#include <string>

namespace wqpe {

// Base class for every error raised by the library. The CLI maps these to
// exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Requested dense storage exceeds the amplitude cap (see amplitude_cap()).
class CapacityError : public Error {
 public:
  using Error::Error;
};

class NotHermitianError : public Error {
 public:
  using Error::Error;
};

class NotUnitaryError : public Error {
 public:
  using Error::Error;
};

// An eigenphase of a unitary sits on (or within tolerance of) the -pi cut.
class BranchCutError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

// Scaled spectrum leaves the non-aliasing window [-1/2 + margin, 1/2 - margin].
class AliasingError : public Error {
 public:
  using Error::Error;
};

class GapTooSmallError : public Error {
 public:
  using Error::Error;
};

class FilteredToNothingError : public Error {
 public:
  using Error::Error;
};

class ScanFailedError : public Error {
 public:
  using Error::Error;
};

class ZeroOverlapError : public Error {
 public:
  using Error::Error;
};

class DegenerateGroundStateError : public Error {
 public:
  using Error::Error;
};

}  // namespace wqpe
