#include "chistar/json_io.hpp"

#include <limits>
#include <stdexcept>

#include "chistar/rational.hpp"

namespace chistar {

nlohmann::json integer_to_json(const Integer& value) {
  if (mpz_fits_slong_p(value.get_mpz_t())) return value.get_si();
  return value.get_str();
}

Integer integer_from_json(const nlohmann::json& value) {
  if (value.is_number_integer()) return Integer(std::to_string(value.get<long long>()));
  if (value.is_string()) {
    Integer out;
    if (out.set_str(value.get<std::string>(), 10) != 0) throw std::invalid_argument("bad integer string");
    return out;
  }
  throw std::invalid_argument("expected an integer");
}

nlohmann::json rational_to_json(const Rational& value) {
  return nlohmann::json::array({integer_to_json(value.get_num()), integer_to_json(value.get_den())});
}

Rational rational_from_json(const nlohmann::json& value) {
  if (value.is_array()) {
    if (value.size() != 2) throw std::invalid_argument("rational must be [num, den]");
    const Integer den = integer_from_json(value[1]);
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rational out(integer_from_json(value[0]), den);
    out.canonicalize();
    return out;
  }
  if (value.is_number_integer()) return Rational(integer_from_json(value));
  if (value.is_string()) return parse_rational(value.get<std::string>());
  throw std::invalid_argument("expected a rational");
}

nlohmann::json expansion_to_json(const QExpansion& f) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (auto n = f.lead(); n < f.order(); ++n) coeffs.push_back(rational_to_json(f.coeff(n)));
  return {{"lead", f.lead()}, {"order", f.order()}, {"coeffs", coeffs}};
}

QExpansion expansion_from_json(const nlohmann::json& value) {
  std::vector<Rational> coeffs;
  for (const auto& c : value.at("coeffs")) coeffs.push_back(rational_from_json(c));
  return QExpansion(value.at("lead").get<std::int64_t>(), std::move(coeffs), value.at("order").get<std::int64_t>());
}

nlohmann::json poly_to_json(const QPoly& p) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : p.coeffs()) out.push_back(rational_to_json(c));
  return out;
}

QPoly poly_from_json(const nlohmann::json& value) {
  std::vector<Rational> coeffs;
  for (const auto& c : value) coeffs.push_back(rational_from_json(c));
  return QPoly(std::move(coeffs));
}

std::string decimal(const BigFloat& x) { return x.to_string(0); }

}  // namespace chistar
