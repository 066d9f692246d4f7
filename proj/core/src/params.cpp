#include "ptw/params.hpp"

#include <cmath>
#include <sstream>

#include "ptw/error.hpp"

namespace ptw {

PTParams::PTParams(double rho, double kappa, double alpha) : rho_(rho), kappa_(kappa), alpha_(alpha) {
  if (!(std::isfinite(rho) && std::isfinite(kappa) && std::isfinite(alpha)) || !(rho > 1.0) ||
      !(kappa > 1.0) || !(alpha > 0.0)) {
    std::ostringstream os;
    os << "invalid Poschl-Teller parameters (rho=" << rho << ", kappa=" << kappa << ", alpha=" << alpha
       << "): need rho > 1, kappa > 1, alpha > 0";
    throw DomainError(os.str());
  }
}

bool PTParams::eta_is_integer() const noexcept {
  const double e = eta();
  return std::nearbyint(e) == e;
}

long long PTParams::eta_integer() const {
  if (!eta_is_integer()) {
    throw PreconditionError("rho + kappa is not an integer");
  }
  return static_cast<long long>(std::llround(eta()));
}

}  // namespace ptw
