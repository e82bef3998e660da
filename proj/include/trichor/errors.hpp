#pragma once

#include <stdexcept>
#include <string>

namespace trichor {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DuplicatePoint : public Error {
 public:
  DuplicatePoint(std::size_t i, std::size_t j)
      : Error("duplicate point: indices " + std::to_string(i) + " and " + std::to_string(j)),
        first(i),
        second(j) {}
  std::size_t first;
  std::size_t second;
};

class CollinearTriple : public Error {
 public:
  CollinearTriple(std::size_t i, std::size_t j, std::size_t k)
      : Error("collinear triple: indices " + std::to_string(i) + ", " + std::to_string(j) + ", " +
              std::to_string(k)),
        a(i),
        b(j),
        c(k) {}
  std::size_t a;
  std::size_t b;
  std::size_t c;
};

class CoordinateOutOfRange : public Error {
 public:
  using Error::Error;
};

class ExhaustedRetries : public Error {
 public:
  using Error::Error;
};

class UnknownEdge : public Error {
 public:
  using Error::Error;
};

class NotFlippable : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class NotSimple : public Error {
 public:
  using Error::Error;
};

class InvalidChord : public Error {
 public:
  using Error::Error;
};

class CrossingChords : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class HasDeepEdges : public Error {
 public:
  using Error::Error;
};

class NotA3Vint : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace trichor
