#include "mouldnf/observable.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace mouldnf {

std::size_t ModeHash::operator()(const Mode& md) const {
  std::size_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](int v) {
    h ^= static_cast<std::size_t>(static_cast<unsigned>(v));
    h *= 0x100000001b3ULL;
  };
  for (int v : md.k) mix(v);
  mix(0x7fffffff);
  for (int v : md.m) mix(v);
  return h;
}

Observable Observable::single(IntVec k, IntVec m, Complex b) {
  if (k.size() != m.size()) throw std::invalid_argument("mode k and m must have equal dimension");
  Observable o(k.size());
  o.add(Mode{std::move(k), std::move(m)}, b);
  return o;
}

Complex Observable::coeff(const IntVec& k, const IntVec& m) const {
  auto it = coeffs_.find(Mode{k, m});
  return it == coeffs_.end() ? Complex{} : it->second;
}

void Observable::add(const Mode& mode, Complex b) {
  if (mode.k.size() != d_ || mode.m.size() != d_) throw std::invalid_argument("mode dimension mismatch");
  if (b == Complex{}) return;
  auto [it, inserted] = coeffs_.try_emplace(mode, b);
  if (!inserted) {
    it->second += b;
    if (it->second == Complex{}) coeffs_.erase(it);
  }
}

void Observable::check_dimension(const Observable& o) const {
  if (o.d_ != d_) throw std::invalid_argument("observable dimension mismatch");
}

Observable& Observable::operator+=(const Observable& o) {
  check_dimension(o);
  for (const auto& [mode, b] : o.coeffs_) add(mode, b);
  real_ = real_ && o.real_;
  return *this;
}

Observable& Observable::operator-=(const Observable& o) {
  check_dimension(o);
  for (const auto& [mode, b] : o.coeffs_) add(mode, -b);
  real_ = real_ && o.real_;
  return *this;
}

Observable& Observable::operator*=(Complex c) {
  if (c == Complex{}) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [mode, b] : coeffs_) b *= c;
  if (c.imag() != 0.0) real_ = false;
  return *this;
}

double Observable::max_abs() const {
  double m = 0.0;
  for (const auto& [mode, b] : coeffs_) m = std::max(m, std::abs(b));
  return m;
}

void Observable::prune(double rel) {
  double cut = rel * max_abs();
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (std::abs(it->second) <= cut)
      it = coeffs_.erase(it);
    else
      ++it;
  }
}

double Observable::reality_defect() const {
  double worst = 0.0;
  for (const auto& [mode, b] : coeffs_) {
    Complex partner = coeff(negate(mode.k), negate(mode.m));
    worst = std::max(worst, std::abs(partner - std::conj(b)));
  }
  return worst;
}

Observable Observable::slice(const IntVec& k) const {
  Observable out(d_);
  for (const auto& [mode, b] : coeffs_)
    if (mode.k == k) out.coeffs_.emplace(mode, b);
  return out;
}

std::vector<IntVec> Observable::k_support() const {
  std::set<IntVec> ks;
  for (const auto& [mode, b] : coeffs_) ks.insert(mode.k);
  return {ks.begin(), ks.end()};
}

int Observable::max_k_inf() const {
  int m = 0;
  for (const auto& [mode, b] : coeffs_)
    for (int v : mode.k) m = std::max(m, std::abs(v));
  return m;
}

Complex Observable::evaluate(const std::vector<double>& x, const std::vector<double>& xi) const {
  if (x.size() != d_ || xi.size() != d_) throw std::invalid_argument("evaluation point dimension mismatch");
  Complex acc{};
  for (const auto& [mode, b] : coeffs_) {
    double phase = 0.0;
    for (std::size_t j = 0; j < d_; ++j) phase += mode.k[j] * x[j] + mode.m[j] * xi[j];
    acc += b * std::polar(1.0, phase);
  }
  return acc;
}

double norm_rho(const Observable& g, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("norm_rho: rho must be positive");
  double acc = 0.0;
  for (const auto& [mode, b] : g.coeffs())
    acc += std::abs(b) * std::exp(rho * (l1_norm(mode.m) + 2.0 * l1_norm(mode.k)));
  return acc;
}

double max_coeff_diff(const Observable& a, const Observable& b) {
  a.check_dimension(b);
  double worst = 0.0;
  for (const auto& [mode, v] : a.coeffs()) worst = std::max(worst, std::abs(v - b.coeff(mode.k, mode.m)));
  for (const auto& [mode, v] : b.coeffs())
    if (a.coeffs().find(mode) == a.coeffs().end()) worst = std::max(worst, std::abs(v));
  return worst;
}

nlohmann::json to_json(const Observable& g) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& [mode, b] : g.coeffs())
    coeffs.push_back({{"k", mode.k}, {"m", mode.m}, {"re", b.real()}, {"im", b.imag()}});
  return {{"d", g.dim()}, {"real", g.real_flag()}, {"coeffs", coeffs}};
}

Observable observable_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("observable must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "d" && it.key() != "coeffs" && it.key() != "real")
      throw std::invalid_argument("unknown observable key '" + it.key() + "'");
  if (!j.contains("d")) throw std::invalid_argument("observable needs 'd'");
  Observable g(j.at("d").get<std::size_t>());
  if (j.contains("coeffs")) {
    for (const auto& c : j.at("coeffs")) {
      for (auto it = c.begin(); it != c.end(); ++it)
        if (it.key() != "k" && it.key() != "m" && it.key() != "re" && it.key() != "im")
          throw std::invalid_argument("unknown coefficient key '" + it.key() + "'");
      IntVec k = c.at("k").get<IntVec>();
      IntVec m = c.at("m").get<IntVec>();
      double re = c.value("re", 0.0);
      double im = c.value("im", 0.0);
      g.add(k, m, Complex(re, im));
    }
  }
  g.set_real_flag(j.value("real", false));
  return g;
}

}  // namespace mouldnf
