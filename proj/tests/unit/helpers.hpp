#pragma once

#include <algorithm>
#include <cmath>

#include <doctest.h>

#include "casimir/error.hpp"

// CHECK that `expr` throws casimir::Error with the given code.
#define CHECK_ERROR_CODE(expr, expected)                    \
  do {                                                      \
    bool thrown_ = false;                                   \
    try {                                                   \
      (void)(expr);                                         \
    } catch (const casimir::Error& e_) {                    \
      thrown_ = true;                                       \
      CHECK(e_.code() == casimir::ErrorCode::expected);     \
    }                                                       \
    CHECK_MESSAGE(thrown_, "expected " #expected);          \
  } while (0)

inline bool close_rel(double a, double b, double rel) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= rel * scale;
}
