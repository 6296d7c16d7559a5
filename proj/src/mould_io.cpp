#include "mouldnf/mould_io.hpp"

#include <stdexcept>

namespace mouldnf {

nlohmann::json dump_mould_table(const Mould& m, const std::vector<Word>& words) {
  nlohmann::json out = nlohmann::json::object();
  for (const Word& w : words) {
    Complex v = m(w);
    out[w.to_string()] = {v.real(), v.imag()};
  }
  return out;
}

nlohmann::json dump_mould_table(const ExactMould& m, const std::vector<Word>& words) {
  nlohmann::json out = nlohmann::json::object();
  for (const Word& w : words) {
    GaussianRational v = m(w);
    out[w.to_string()] = {to_string(v.real()), to_string(v.imag())};
  }
  return out;
}

namespace {

const nlohmann::json& pair_of(const nlohmann::json& v, const std::string& key) {
  if (!v.is_array() || v.size() != 2) throw std::invalid_argument("mould table entry '" + key + "' is not [re, im]");
  return v;
}

}  // namespace

Mould load_mould_table(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("mould table must be a JSON object");
  std::unordered_map<Word, Complex, WordHash> values;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& v = pair_of(it.value(), it.key());
    values[Word::parse(it.key())] = Complex(v[0].get<double>(), v[1].get<double>());
  }
  return Mould::table(std::move(values));
}

ExactMould load_exact_mould_table(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("mould table must be a JSON object");
  std::unordered_map<Word, GaussianRational, WordHash> values;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& v = pair_of(it.value(), it.key());
    values[Word::parse(it.key())] = GaussianRational(parse_rational(v[0].get<std::string>()),
                                                     parse_rational(v[1].get<std::string>()));
  }
  return ExactMould::table(std::move(values));
}

}  // namespace mouldnf
