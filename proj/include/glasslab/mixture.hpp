#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace glasslab {

// Mixture coefficients theta_p (finitely many, p >= 2) and the structure
// function xi(x) = sum_p theta_p^2 x^p / p!.
class MixtureSpec {
 public:
  explicit MixtureSpec(std::map<int, double> theta);

  static MixtureSpec pure(int p, double theta = 1.0);
  // Schema: {"theta": {"3": 1.0, "4": 0.5}}. Any other top-level key, a
  // non-integer key, p < 2 or a negative value is rejected.
  static MixtureSpec from_json_text(const std::string& text);
  std::string to_json_text() const;

  const std::map<int, double>& theta() const { return theta_; }
  double theta_at(int p) const;

  // Smallest even p >= 4 with theta_p > 0 (p = 2 never counts here).
  std::optional<int> p_even() const { return p_even_; }
  // Smallest odd p >= 3 with theta_p > 0.
  std::optional<int> p_odd() const { return p_odd_; }
  // Smallest present p overall, including 2.
  int p_min() const { return p_min_; }
  int p_max() const { return theta_.rbegin()->first; }

  bool has_p2() const { return theta_.count(2) != 0; }
  bool is_pure() const { return theta_.size() == 1; }
  int pure_p() const;

  double xi(double x) const;
  double xi_d1(double x) const;
  double xi_d2(double x) const;

 private:
  std::map<int, double> theta_;  // only strictly positive entries kept
  std::optional<int> p_even_, p_odd_;
  int p_min_ = 0;
};

}  // namespace glasslab
