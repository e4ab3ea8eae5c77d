#pragma once

#include <gtest/gtest.h>

#include "boroczky/error.hpp"

// Fails unless `stmt` throws boroczky::Error carrying `expected`.
#define EXPECT_ERROR_CODE(stmt, expected)                                                    \
  do {                                                                                       \
    try {                                                                                    \
      (void)(stmt);                                                                          \
      ADD_FAILURE() << #stmt " did not throw";                                               \
    } catch (const ::boroczky::Error& e) {                                                   \
      EXPECT_EQ(e.code(), (expected)) << #stmt " threw " << ::boroczky::to_string(e.code()); \
    }                                                                                        \
  } while (0)
