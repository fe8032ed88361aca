#include "glasslab/mixture.hpp"

#include <cmath>
#include <nlohmann/json.hpp>

namespace glasslab {

MixtureSpec::MixtureSpec(std::map<int, double> theta) {
  for (const auto& [p, th] : theta) {
    if (p < 2) throw std::invalid_argument("MixtureSpec: uniformity p must be >= 2");
    if (!(th >= 0.0) || !std::isfinite(th))
      throw std::invalid_argument("MixtureSpec: theta_p must be finite and >= 0");
    if (th > 0.0) theta_[p] = th;
  }
  if (theta_.empty())
    throw std::invalid_argument("MixtureSpec: at least one theta_p must be positive");
  p_min_ = theta_.begin()->first;
  for (const auto& [p, th] : theta_) {
    if (p >= 4 && p % 2 == 0 && !p_even_) p_even_ = p;
    if (p >= 3 && p % 2 == 1 && !p_odd_) p_odd_ = p;
  }
}

MixtureSpec MixtureSpec::pure(int p, double theta) {
  return MixtureSpec({{p, theta}});
}

double MixtureSpec::theta_at(int p) const {
  auto it = theta_.find(p);
  return it == theta_.end() ? 0.0 : it->second;
}

int MixtureSpec::pure_p() const {
  if (!is_pure()) throw std::logic_error("MixtureSpec: not a pure model");
  return theta_.begin()->first;
}

double MixtureSpec::xi(double x) const {
  if (!(std::fabs(x) <= 1.0)) throw std::domain_error("xi: |x| > 1");
  double s = 0.0;
  for (const auto& [p, th] : theta_)
    s += th * th * std::pow(x, p) / std::tgamma(p + 1.0);
  return s;
}

double MixtureSpec::xi_d1(double x) const {
  if (!(std::fabs(x) <= 1.0)) throw std::domain_error("xi_d1: |x| > 1");
  double s = 0.0;
  for (const auto& [p, th] : theta_)
    s += th * th * std::pow(x, p - 1) / std::tgamma(p + 0.0);
  return s;
}

double MixtureSpec::xi_d2(double x) const {
  if (!(std::fabs(x) <= 1.0)) throw std::domain_error("xi_d2: |x| > 1");
  double s = 0.0;
  for (const auto& [p, th] : theta_)
    s += th * th * std::pow(x, p - 2) / std::tgamma(p - 1.0);
  return s;
}

MixtureSpec MixtureSpec::from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_object()) throw std::invalid_argument("mixture json: expected object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "theta")
      throw std::invalid_argument("mixture json: unknown key '" + it.key() + "'");
  if (!j.contains("theta") || !j["theta"].is_object())
    throw std::invalid_argument("mixture json: missing \"theta\" object");
  std::map<int, double> theta;
  for (auto it = j["theta"].begin(); it != j["theta"].end(); ++it) {
    std::size_t pos = 0;
    int p = 0;
    try {
      p = std::stoi(it.key(), &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("mixture json: key '" + it.key() + "' is not an integer");
    }
    if (pos != it.key().size())
      throw std::invalid_argument("mixture json: key '" + it.key() + "' is not an integer");
    if (!it.value().is_number())
      throw std::invalid_argument("mixture json: theta values must be numbers");
    theta[p] = it.value().get<double>();
  }
  return MixtureSpec(theta);
}

std::string MixtureSpec::to_json_text() const {
  nlohmann::json th = nlohmann::json::object();
  for (const auto& [p, t] : theta_) th[std::to_string(p)] = t;
  nlohmann::json j;
  j["theta"] = th;
  return j.dump();
}

}  // namespace glasslab
