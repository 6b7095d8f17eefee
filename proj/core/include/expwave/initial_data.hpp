#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "expwave/domain.hpp"
#include "expwave/interpolation.hpp"

namespace expwave {

/// One component of the data pair, defined on [0, L] at the data time.
class Profile {
 public:
  virtual ~Profile() = default;
  virtual double value(double x) const = 0;
  virtual double derivative(double x) const = 0;
  /// Upper estimate of sup |value|; used for relative compatibility checks.
  virtual double sup_norm() const = 0;
};

class ZeroProfile final : public Profile {
 public:
  double value(double) const override { return 0.0; }
  double derivative(double) const override { return 0.0; }
  double sup_norm() const override { return 0.0; }
};

/// amplitude * (1 - r^2)^3 with r = (x - center)/halfwidth, zero outside.
/// The profile and two derivatives vanish at the support edge, so the support
/// may touch the closed ends of the data interval.
class BumpProfile final : public Profile {
 public:
  BumpProfile(double center, double halfwidth, double amplitude);
  double value(double x) const override;
  double derivative(double x) const override;
  double sup_norm() const override;
  double center() const { return center_; }
  double halfwidth() const { return halfwidth_; }
  double amplitude() const { return amplitude_; }

 private:
  double center_, halfwidth_, amplitude_;
};

/// Cubic interpolation through sampled values on strictly increasing
/// abscissae; the derivative differentiates the interpolant.
class SampledProfile final : public Profile {
 public:
  SampledProfile(std::vector<double> x, std::vector<double> y);
  double value(double x) const override;
  double derivative(double x) const override;
  double sup_norm() const override { return sup_; }

 private:
  LocalCubic interp_;
  double sup_ = 0.0;
};

/// Wraps analytic value/derivative callables (band-limited synthesis).
class CallableProfile final : public Profile {
 public:
  CallableProfile(std::function<double(double)> value,
                  std::function<double(double)> derivative, double sup_norm);
  double value(double x) const override { return value_(x); }
  double derivative(double x) const override { return derivative_(x); }
  double sup_norm() const override { return sup_; }

 private:
  std::function<double(double)> value_, derivative_;
  double sup_;
};

/// Validates that the bump support lies inside the closed interval
/// [0, interval_length] (touching the ends is allowed; the bump vanishes to
/// third order there).
std::shared_ptr<const Profile> bump_profile(double center, double halfwidth,
                                            double amplitude,
                                            double interval_length);

/// Loads a (x, value) two-column CSV with a header row.
std::shared_ptr<const Profile> sampled_profile_from_csv(const std::string& path);

/// Displacement/velocity pair on [0, ell*data_time], extended oddly in x.
/// data_time defaults to t0; the sharpness scenarios release data later.
class InitialData {
 public:
  InitialData(const MovingDomain& domain,
              std::shared_ptr<const Profile> displacement,
              std::shared_ptr<const Profile> velocity);
  InitialData(const MovingDomain& domain,
              std::shared_ptr<const Profile> displacement,
              std::shared_ptr<const Profile> velocity, double data_time);

  const MovingDomain& domain() const { return domain_; }
  double data_time() const { return data_time_; }
  double half_length() const { return domain_.ell * data_time_; }

  /// Odd extension: displacement and velocity flip sign for x < 0; the
  /// displacement slope is even.  pre: |x| <= half_length().
  double displacement(double x) const;
  double displacement_slope(double x) const;
  double velocity(double x) const;
  std::pair<double, double> odd_extend(double x) const;

  double displacement_sup() const { return displacement_->sup_norm(); }
  double velocity_sup() const { return velocity_->sup_norm(); }

 private:
  void check_range(double x) const;
  MovingDomain domain_;
  std::shared_ptr<const Profile> displacement_, velocity_;
  double data_time_;
};

}  // namespace expwave
