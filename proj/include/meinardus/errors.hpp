#pragma once

#include <stdexcept>
#include <string>

namespace meinardus {

// Domain violations (bad parameters, poles, exact-mode misuse) throw
// std::domain_error / std::invalid_argument.  Iterative solvers and
// quadratures that fail to reach their target throw convergence_error,
// so callers can tell "you asked for something invalid" apart from
// "the algorithm gave up".
class convergence_error : public std::runtime_error {
public:
  explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace meinardus
