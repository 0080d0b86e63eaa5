// Copyright 2026 The Heegaard Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

namespace heegaard {

/// Exact integer used for every user-visible quantity.
using Integer = boost::multiprecision::cpp_int;

inline Integer abs(const Integer& x) { return x < 0 ? Integer(-x) : x; }
inline std::string to_string(const Integer& x) { return x.str(); }
inline int sign_of(const Integer& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

/// Base class of all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text or parameters.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An exponential routine was asked for more than its configured limit.
class SizeLimitExceeded : public Error {
 public:
  using Error::Error;
};

class SizeMismatch : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

/// The intersection graph has no perfect matching.
class NoGenerators : public Error {
 public:
  using Error::Error;
};

/// A diagram failed one of its structural invariants.
class ValidationError : public Error {
 public:
  enum class Kind { WordInconsistency, GenusMismatch, DisconnectedComplement };
  ValidationError(Kind kind, const std::string& what)
      : Error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}
  Kind kind() const { return kind_; }
  static const char* kind_name(Kind k) {
    switch (k) {
      case Kind::WordInconsistency:
        return "WordInconsistency";
      case Kind::GenusMismatch:
        return "GenusMismatch";
      case Kind::DisconnectedComplement:
        return "DisconnectedComplement";
    }
    return "ValidationError";
  }

 private:
  Kind kind_;
};

class SplitObstructed : public Error {
 public:
  using Error::Error;
};

class InvalidWave : public Error {
 public:
  using Error::Error;
};

class InvalidAntiwave : public Error {
 public:
  using Error::Error;
};

class ChildValidationFailed : public Error {
 public:
  using Error::Error;
};

class DegenerateTemplate : public Error {
 public:
  using Error::Error;
};

class InfiniteHomology : public Error {
 public:
  using Error::Error;
};

class NoAlphaPath : public Error {
 public:
  using Error::Error;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

/// Tunable bounds for the exponential routines.
struct Limits {
  int permanent_size = 20;   // largest matrix handed to the permanent
  int max_edges = 24;        // Pfaffian orientation brute force
  int witness_genus = 20;    // subset scan in reducibility_witness
  unsigned threads = 0;      // 0 means hardware concurrency

  unsigned worker_count() const {
    if (threads != 0) return threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
  }

  /// Defaults, with HEEGAARD_MAX_EDGES applied when set.
  static Limits from_env() {
    Limits l;
    if (const char* v = std::getenv("HEEGAARD_MAX_EDGES")) {
      char* end = nullptr;
      long n = std::strtol(v, &end, 10);
      if (end != v && *end == '\0' && n > 0 && n < 64) l.max_edges = static_cast<int>(n);
    }
    return l;
  }
};

}  // namespace heegaard
