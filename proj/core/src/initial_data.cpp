#include "expwave/initial_data.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "expwave/csv.hpp"

namespace expwave {

BumpProfile::BumpProfile(double center, double halfwidth, double amplitude)
    : center_(center), halfwidth_(halfwidth), amplitude_(amplitude) {
  if (!(halfwidth > 0.0))
    throw std::invalid_argument("bump halfwidth must be positive");
  if (!std::isfinite(center) || !std::isfinite(halfwidth) || !std::isfinite(amplitude))
    throw std::invalid_argument("bump parameters must be finite");
}

double BumpProfile::value(double x) const {
  const double r = (x - center_) / halfwidth_;
  if (std::abs(r) >= 1.0) return 0.0;
  const double q = 1.0 - r * r;
  return amplitude_ * q * q * q;
}

double BumpProfile::derivative(double x) const {
  const double r = (x - center_) / halfwidth_;
  if (std::abs(r) >= 1.0) return 0.0;
  const double q = 1.0 - r * r;
  return -6.0 * amplitude_ * r * q * q / halfwidth_;
}

double BumpProfile::sup_norm() const { return std::abs(amplitude_); }

SampledProfile::SampledProfile(std::vector<double> x, std::vector<double> y) {
  for (double v : y)
    if (!std::isfinite(v))
      throw std::invalid_argument("sampled profile: non-finite value");
  for (double v : y) sup_ = std::max(sup_, std::abs(v));
  interp_ = LocalCubic(std::move(x), std::move(y));
}

double SampledProfile::value(double x) const { return interp_.value(x); }
double SampledProfile::derivative(double x) const { return interp_.derivative(x); }

CallableProfile::CallableProfile(std::function<double(double)> value,
                                 std::function<double(double)> derivative,
                                 double sup_norm)
    : value_(std::move(value)), derivative_(std::move(derivative)), sup_(sup_norm) {
  if (!value_ || !derivative_)
    throw std::invalid_argument("callable profile needs both value and derivative");
}

std::shared_ptr<const Profile> bump_profile(double center, double halfwidth,
                                            double amplitude,
                                            double interval_length) {
  if (!(interval_length > 0.0))
    throw std::invalid_argument("bump_profile: interval length must be positive");
  const double slack = 1e-12 * interval_length;
  if (center - halfwidth < -slack || center + halfwidth > interval_length + slack) {
    std::ostringstream os;
    os << "bump support [" << center - halfwidth << ", " << center + halfwidth
       << "] is not inside [0, " << interval_length << "]";
    throw std::invalid_argument(os.str());
  }
  return std::make_shared<BumpProfile>(center, halfwidth, amplitude);
}

std::shared_ptr<const Profile> sampled_profile_from_csv(const std::string& path) {
  CsvTable t = read_csv(path);
  if (t.header.size() != 2)
    throw std::invalid_argument("sampled profile CSV must have two columns (x,value): " + path);
  std::vector<double> xs, ys;
  xs.reserve(t.rows.size());
  ys.reserve(t.rows.size());
  for (const auto& row : t.rows) {
    xs.push_back(row[0]);
    ys.push_back(row[1]);
  }
  return std::make_shared<SampledProfile>(std::move(xs), std::move(ys));
}

InitialData::InitialData(const MovingDomain& domain,
                         std::shared_ptr<const Profile> displacement,
                         std::shared_ptr<const Profile> velocity)
    : InitialData(domain, std::move(displacement), std::move(velocity), domain.t0) {}

InitialData::InitialData(const MovingDomain& domain,
                         std::shared_ptr<const Profile> displacement,
                         std::shared_ptr<const Profile> velocity, double data_time)
    : domain_(domain),
      displacement_(std::move(displacement)),
      velocity_(std::move(velocity)),
      data_time_(data_time) {
  if (!displacement_ || !velocity_)
    throw std::invalid_argument("initial data needs both profiles");
  if (!(data_time_ >= domain_.t0))
    throw std::invalid_argument("data time must be >= t0");
  // Dirichlet compatibility of the displacement at both ends, relative to the
  // profile's own scale.
  const double L = half_length();
  const double tol = 1e-12 * std::max(displacement_->sup_norm(), 1e-300);
  if (std::abs(displacement_->value(0.0)) > tol)
    throw std::invalid_argument("displacement violates the fixed-end Dirichlet condition");
  if (std::abs(displacement_->value(L)) > tol)
    throw std::invalid_argument("displacement violates the moving-end Dirichlet condition");
}

void InitialData::check_range(double x) const {
  const double L = half_length();
  if (std::abs(x) > L * (1.0 + 1e-12) + 1e-300)
    throw std::domain_error("initial data queried outside [-L, L]");
}

double InitialData::displacement(double x) const {
  check_range(x);
  const double ax = std::min(std::abs(x), half_length());
  const double v = displacement_->value(ax);
  return x < 0.0 ? -v : v;
}

double InitialData::displacement_slope(double x) const {
  check_range(x);
  const double ax = std::min(std::abs(x), half_length());
  return displacement_->derivative(ax);  // even in x
}

double InitialData::velocity(double x) const {
  check_range(x);
  const double ax = std::min(std::abs(x), half_length());
  const double v = velocity_->value(ax);
  return x < 0.0 ? -v : v;
}

std::pair<double, double> InitialData::odd_extend(double x) const {
  return {displacement(x), velocity(x)};
}

}  // namespace expwave
