#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fsample {

enum class ErrorCode {
  parse,               // malformed input file
  invalid_argument,    // precondition violated by caller
  infeasible_budget,   // budget cannot pay for a single sample / step
  undefined_estimate,  // estimator or oracle undefined on this input (e.g. zero variance)
  not_stationary,      // graph is disconnected or bipartite
  capacity,            // state space too large
  io,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fsample
