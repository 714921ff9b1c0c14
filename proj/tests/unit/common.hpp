#pragma once

#include <gtest/gtest.h>

#include "deltatour/deltatour.hpp"
#include "support/graphs.hpp"

namespace dt = deltatour;
using dt::Point;
using dt::Rational;
using dt::Tour;

inline Rational R(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }
inline Point V(dt::Vertex v) { return Point::vertex(v); }

#define EXPECT_ERROR(stmt, errcode)                                   \
  do {                                                                \
    try {                                                             \
      stmt;                                                           \
      ADD_FAILURE() << "expected " #errcode;                          \
    } catch (const dt::Error& e) {                                    \
      EXPECT_EQ(e.code(), dt::ErrorCode::errcode) << e.what();        \
    }                                                                 \
  } while (0)
