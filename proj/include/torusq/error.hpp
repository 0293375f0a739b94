#pragma once

#include <stdexcept>

namespace torusq {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace torusq
