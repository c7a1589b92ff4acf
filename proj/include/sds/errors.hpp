#pragma once

#include <stdexcept>
#include <string>

namespace sds {

// Error taxonomy shared by every module; the CLI maps these onto its
// exit-code contract (input 3, budget 2, not-applicable 1).
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

class budget_error : public std::runtime_error {
 public:
  explicit budget_error(const std::string& msg) : std::runtime_error(msg) {}
};

class not_applicable : public std::runtime_error {
 public:
  explicit not_applicable(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace sds
