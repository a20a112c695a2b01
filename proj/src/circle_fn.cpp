#include "opint/circle_fn.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace opint {

namespace {

void require_on_circle(cplx z) {
  if (std::abs(std::abs(z) - 1.0) > kCircleTol)
    throw std::domain_error("point off the unit circle");
}

}  // namespace

TrigPoly::TrigPoly(std::map<int, cplx> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (it->second == cplx(0.0, 0.0))
      it = coeffs_.erase(it);
    else
      ++it;
  }
}

TrigPoly TrigPoly::monomial(int degree, cplx coeff) {
  return TrigPoly({{degree, coeff}});
}

TrigPoly TrigPoly::constant(cplx value) { return TrigPoly({{0, value}}); }

cplx TrigPoly::eval(cplx z) const {
  require_on_circle(z);
  if (coeffs_.empty()) return 0.0;
  const int lo = coeffs_.begin()->first;
  const int hi = coeffs_.rbegin()->first;
  const cplx zinv = 1.0 / z;
  // walk the power ladder once in each direction
  cplx acc = 0.0;
  cplx zp = 1.0;
  for (int m = 0; m <= hi; ++m) {
    auto it = coeffs_.find(m);
    if (it != coeffs_.end()) acc += it->second * zp;
    zp *= z;
  }
  cplx zn = zinv;
  for (int m = -1; m >= lo; --m) {
    auto it = coeffs_.find(m);
    if (it != coeffs_.end()) acc += it->second * zn;
    zn *= zinv;
  }
  return acc;
}

TrigPoly TrigPoly::derivative(int order) const {
  if (order < 0) throw std::invalid_argument("derivative order must be >= 0");
  std::map<int, cplx> cur = coeffs_;
  for (int pass = 0; pass < order; ++pass) {
    std::map<int, cplx> next;
    for (const auto& [m, c] : cur) {
      if (m == 0) continue;
      next[m - 1] += double(m) * c;
    }
    cur = std::move(next);
  }
  return TrigPoly(std::move(cur));
}

int TrigPoly::max_degree() const {
  int deg = 0;
  for (const auto& [m, c] : coeffs_) deg = std::max(deg, std::abs(m));
  return deg;
}

double TrigPoly::coeff_mass(int weight) const {
  double mass = 0.0;
  for (const auto& [m, c] : coeffs_)
    mass += std::abs(c) * std::pow(double(std::max(1, std::abs(m))), weight);
  return mass;
}

TrigPoly TrigPoly::operator+(const TrigPoly& rhs) const {
  std::map<int, cplx> out = coeffs_;
  for (const auto& [m, c] : rhs.coeffs_) out[m] += c;
  return TrigPoly(std::move(out));
}

TrigPoly TrigPoly::operator-(const TrigPoly& rhs) const {
  std::map<int, cplx> out = coeffs_;
  for (const auto& [m, c] : rhs.coeffs_) out[m] -= c;
  return TrigPoly(std::move(out));
}

TrigPoly TrigPoly::operator*(const TrigPoly& rhs) const {
  std::map<int, cplx> out;
  for (const auto& [m, c] : coeffs_)
    for (const auto& [k, d] : rhs.coeffs_) out[m + k] += c * d;
  return TrigPoly(std::move(out));
}

TrigPoly TrigPoly::scaled(cplx factor) const {
  std::map<int, cplx> out;
  for (const auto& [m, c] : coeffs_) out[m] = factor * c;
  return TrigPoly(std::move(out));
}

CircleFunction::CircleFunction(TrigPoly poly) : repr_(std::move(poly)) {}

CircleFunction::CircleFunction(CircleClosure closure) : repr_(std::move(closure)) {
  const auto& c = std::get<CircleClosure>(repr_);
  if (!c.value) throw std::invalid_argument("closure function without a value");
}

bool CircleFunction::is_trig_poly() const {
  return std::holds_alternative<TrigPoly>(repr_);
}

const TrigPoly& CircleFunction::poly() const {
  return std::get<TrigPoly>(repr_);
}

int CircleFunction::smoothness() const {
  if (is_trig_poly()) return std::numeric_limits<int>::max();
  return static_cast<int>(std::get<CircleClosure>(repr_).derivatives.size());
}

cplx CircleFunction::eval(cplx z) const {
  if (is_trig_poly()) return poly().eval(z);
  require_on_circle(z);
  return std::get<CircleClosure>(repr_).value(z);
}

CircleFunction CircleFunction::derivative(int order) const {
  if (order < 0) throw std::invalid_argument("derivative order must be >= 0");
  if (order == 0) return *this;
  if (is_trig_poly()) return CircleFunction(poly().derivative(order));
  const auto& c = std::get<CircleClosure>(repr_);
  if (order > static_cast<int>(c.derivatives.size()))
    throw std::domain_error("derivative order exceeds stored smoothness");
  CircleClosure shifted;
  shifted.value = c.derivatives[order - 1];
  shifted.derivatives.assign(c.derivatives.begin() + order, c.derivatives.end());
  return CircleFunction(std::move(shifted));
}

double sup_norm(const CircleFunction& f, int grid_size) {
  if (grid_size < kMinSupGrid)
    throw std::invalid_argument("sup-norm grid must have at least 64 points");
  double best = 0.0;
  for (int j = 0; j < grid_size; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / grid_size;
    best = std::max(best, std::abs(f.eval(circle_point(theta))));
  }
  return best;
}

TrigPoly fejer_approx(const CircleFunction& f, int k, int grid_size) {
  if (k < 1) throw std::invalid_argument("smoothing order must be >= 1");
  if (grid_size < 4 * k + 1)
    throw std::invalid_argument("grid too coarse for the requested smoothing order");
  std::vector<cplx> samples(grid_size);
  for (int j = 0; j < grid_size; ++j)
    samples[j] = f.eval(circle_point(2.0 * std::numbers::pi * j / grid_size));
  std::map<int, cplx> coeffs;
  for (int m = -(k - 1); m <= k - 1; ++m) {
    cplx hat = 0.0;
    for (int j = 0; j < grid_size; ++j) {
      const double theta = 2.0 * std::numbers::pi * j / grid_size;
      hat += samples[j] * circle_point(-m * theta);
    }
    hat /= double(grid_size);
    const cplx weighted = (1.0 - std::abs(m) / double(k)) * hat;
    if (weighted != cplx(0.0, 0.0)) coeffs[m] = weighted;
  }
  return TrigPoly(std::move(coeffs));
}

}  // namespace opint
