#include "ptw/fractional_time.hpp"

#include <numeric>
#include <sstream>

#include "ptw/error.hpp"

namespace ptw {

FractionalTime::FractionalTime(int r, int s) : r_(r), s_(s) {
  if (r < 1 || s < 1 || r > s || std::gcd(r, s) != 1) {
    std::ostringstream os;
    os << "invalid fractional time " << r << "/" << s << " (need 1 <= r <= s, gcd(r,s) = 1)";
    throw DomainError(os.str());
  }
}

FractionalTime parse_fractional_time(const std::string& text) {
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const int r = std::stoi(text, &used);
      if (used != text.size()) throw DomainError("");
      return FractionalTime(r, 1);
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    const int r = std::stoi(num, &used);
    if (used != num.size()) throw DomainError("");
    const int s = std::stoi(den, &used);
    if (used != den.size()) throw DomainError("");
    return FractionalTime(r, s);
  } catch (const DomainError& e) {
    if (std::string(e.what()).empty()) throw DomainError("malformed fractional time '" + text + "'");
    throw;
  } catch (const std::exception&) {
    throw DomainError("malformed fractional time '" + text + "'");
  }
}

}  // namespace ptw
