#pragma once

// Central finite differences, used as an independent check on the jets.

#include <functional>
#include <span>
#include <vector>

namespace kropina {

struct FdStepPolicy {
  double h0_first = 1e-5;   // relative step for gradients
  double h0_second = 1e-4;  // relative step for Hessians
  // Combine steps h and h/2 as (4 D(h/2) - D(h)) / 3, cancelling the O(h^2) term.
  bool richardson = false;
};

struct FdDerivatives {
  double value = 0.0;
  std::vector<double> grad;
  std::vector<std::vector<double>> hess;  // empty for order 1
  std::vector<double> steps;              // per-variable step actually used
};

class FdOracle {
 public:
  using Function = std::function<double(std::span<const double>)>;
  // Returns false for points where f must not be evaluated.
  using Domain = std::function<bool(std::span<const double>)>;

  explicit FdOracle(FdStepPolicy policy = {}) : policy_(policy) {}

  // order 1: gradient; order 2: gradient and Hessian.
  // Throws DomainError when a stencil point leaves the domain.
  FdDerivatives derivatives(const Function& f, std::span<const double> x, int order,
                            const Domain& domain = {}) const;

  const FdStepPolicy& policy() const { return policy_; }

 private:
  FdStepPolicy policy_;
};

inline FdDerivatives fd_derivatives(const FdOracle::Function& f, std::span<const double> x, int order,
                                    const FdOracle::Domain& domain = {}, FdStepPolicy policy = {}) {
  return FdOracle(policy).derivatives(f, x, order, domain);
}

}  // namespace kropina
