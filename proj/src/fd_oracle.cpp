#include "kropina/fd_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kropina/errors.hpp"

namespace kropina {

namespace {

class Stencil {
 public:
  Stencil(const FdOracle::Function& f, const FdOracle::Domain& domain, std::span<const double> x)
      : f_(f), domain_(domain), point_(x.begin(), x.end()) {}

  double at(int i, double di, int j = -1, double dj = 0.0) {
    std::vector<double> p = point_;
    p[i] += di;
    if (j >= 0) p[j] += dj;
    if (domain_ && !domain_(p)) {
      throw DomainError("finite-difference stencil", p[i],
                        "stencil point leaves the domain along variable " + std::to_string(i));
    }
    return f_(p);
  }

 private:
  const FdOracle::Function& f_;
  const FdOracle::Domain& domain_;
  std::vector<double> point_;
};

}  // namespace

FdDerivatives FdOracle::derivatives(const Function& f, std::span<const double> x, int order,
                                    const Domain& domain) const {
  if (policy_.richardson) {
    FdStepPolicy half = policy_;
    half.richardson = false;
    const FdDerivatives coarse = FdOracle(half).derivatives(f, x, order, domain);
    half.h0_first *= 0.5;
    half.h0_second *= 0.5;
    FdDerivatives fine = FdOracle(half).derivatives(f, x, order, domain);
    for (std::size_t i = 0; i < fine.grad.size(); ++i) fine.grad[i] = (4.0 * fine.grad[i] - coarse.grad[i]) / 3.0;
    for (std::size_t i = 0; i < fine.hess.size(); ++i)
      for (std::size_t j = 0; j < fine.hess[i].size(); ++j)
        fine.hess[i][j] = (4.0 * fine.hess[i][j] - coarse.hess[i][j]) / 3.0;
    fine.steps = coarse.steps;
    return fine;
  }
  if (order != 1 && order != 2) throw DimensionError("fd_derivatives: order must be 1 or 2");
  if (x.empty()) throw DimensionError("fd_derivatives: empty point");
  if (domain && !domain(x)) throw DomainError("finite-difference stencil", x[0], "base point outside domain");

  const int n = static_cast<int>(x.size());
  Stencil s(f, domain, x);
  FdDerivatives out;
  out.value = f(x);
  out.grad.assign(n, 0.0);
  out.steps.assign(n, 0.0);

  for (int i = 0; i < n; ++i) {
    const double h = std::max(std::abs(x[i]), 1.0) * policy_.h0_first;
    out.grad[i] = (s.at(i, h) - s.at(i, -h)) / (2.0 * h);
    out.steps[i] = h;
  }
  if (order == 1) return out;

  std::vector<double> h2(n);
  for (int i = 0; i < n; ++i) h2[i] = std::max(std::abs(x[i]), 1.0) * policy_.h0_second;
  out.hess.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    const double hi = h2[i];
    out.hess[i][i] = (s.at(i, hi) - 2.0 * out.value + s.at(i, -hi)) / (hi * hi);
    for (int j = i + 1; j < n; ++j) {
      const double hj = h2[j];
      const double v = (s.at(i, hi, j, hj) - s.at(i, hi, j, -hj) - s.at(i, -hi, j, hj) +
                        s.at(i, -hi, j, -hj)) /
                       (4.0 * hi * hj);
      out.hess[i][j] = v;
      out.hess[j][i] = v;
    }
  }
  out.steps = h2;
  return out;
}

}  // namespace kropina
