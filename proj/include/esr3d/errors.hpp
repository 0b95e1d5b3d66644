#ifndef ESR3D_ERRORS_HPP
#define ESR3D_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace esr3d {

// Base class for everything this library throws.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

class PartitionMismatch : public Error {
public:
  using Error::Error;
};

class InvalidPartition : public Error {
public:
  using Error::Error;
};

class NonFiniteValue : public Error {
public:
  using Error::Error;
};

class NonSquareReversal : public Error {
public:
  using Error::Error;
};

class GridTooSmall : public Error {
public:
  using Error::Error;
};

class DegenerateSurface : public Error {
public:
  using Error::Error;
};

class NumericalFailure : public Error {
public:
  using Error::Error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

class UnknownCase : public Error {
public:
  using Error::Error;
};

}  // namespace esr3d

#endif
