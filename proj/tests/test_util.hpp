#pragma once

#include <gtest/gtest.h>

#include <functional>

#include "ordervc/error.hpp"

namespace ordervc::testing {

inline ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an ordervc::Error";
  return ErrorCode::kParseError;
}

}  // namespace ordervc::testing
