#include "etaparity/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace etaparity {

DyadicRational::DyadicRational(std::uint64_t numerator, unsigned log_denominator)
    : num_(numerator), logden_(log_denominator) {
  if (logden_ > 62) throw std::invalid_argument("dyadic denominator too large");
  if (num_ == 0) {
    logden_ = 0;
    return;
  }
  while (logden_ > 0 && num_ % 2 == 0) {
    num_ /= 2;
    --logden_;
  }
}

double DyadicRational::to_double() const noexcept {
  return std::ldexp(static_cast<double>(num_), -static_cast<int>(logden_));
}

std::string DyadicRational::to_string() const {
  if (logden_ == 0) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(std::uint64_t{1} << logden_);
}

DyadicRational operator+(DyadicRational x, DyadicRational y) {
  const unsigned k = std::max(x.logden_, y.logden_);
  return {(x.num_ << (k - x.logden_)) + (y.num_ << (k - y.logden_)), k};
}

std::strong_ordering operator<=>(const DyadicRational& x, const DyadicRational& y) {
  const unsigned k = std::max(x.logden_, y.logden_);
  return (x.num_ << (k - x.logden_)) <=> (y.num_ << (k - y.logden_));
}

DyadicRational pow2_inv(unsigned k) { return {1, k}; }

DyadicRational nearest_dyadic(double v, unsigned max_log_den) {
  if (!(v >= 0.0)) v = 0.0;
  const double scale = std::ldexp(1.0, static_cast<int>(max_log_den));
  const double scaled = v * scale;
  auto n = static_cast<std::uint64_t>(std::floor(scaled));
  if (scaled - static_cast<double>(n) > 0.5) ++n;
  return {n, max_log_den};
}

}  // namespace etaparity
