#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "dunkl/polynomial.hpp"
#include "dunkl/quadrature.hpp"
#include "dunkl/root_system.hpp"

namespace dunkl {

/// {"terms": [{"exp": [2,0,1], "coef": "3/2"}]}
template <class S>
nlohmann::json poly_to_json(const MultiPoly<S>& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [mono, coef] : p.terms()) {
    nlohmann::json t;
    std::vector<int> exp(static_cast<std::size_t>(p.dim()));
    for (int i = 0; i < p.dim(); ++i) exp[static_cast<std::size_t>(i)] = mono[i];
    t["exp"] = exp;
    t["coef"] = scalar_traits<S>::str(coef);
    terms.push_back(std::move(t));
  }
  return nlohmann::json{{"terms", terms}};
}

template <class S>
MultiPoly<S> poly_from_json(const nlohmann::json& j, int dim = 0) {
  if (!j.contains("terms") || !j["terms"].is_array()) throw ConfigError("polynomial json needs a 'terms' array");
  for (const auto& t : j["terms"])
    if (t.contains("exp")) dim = std::max(dim, static_cast<int>(t["exp"].size()));
  MultiPoly<S> p(dim);
  for (const auto& t : j["terms"]) {
    std::vector<int> exp = t.at("exp").get<std::vector<int>>();
    exp.resize(static_cast<std::size_t>(dim), 0);
    p.add_term(Monomial(exp), scalar_traits<S>::from_rational(parse_rational(t.at("coef").get<std::string>())));
  }
  return p;
}

/// Custom root-system descriptor:
///   {"roots": [["1","0"], ["0","1"], ...],
///    "multiplicity": {"1,0": "1/2", "1,1": "1"}}   (orbit named by any of
///                                                   its roots, input coords)
/// or "k": ["1/2", "1"] ordered by the sorted orbit representatives.
inline GroupContext<Sqrt2> custom_system_from_json(const nlohmann::json& j) {
  if (!j.contains("roots")) throw ConfigError("custom system json needs 'roots'");
  std::vector<std::vector<Rational>> roots;
  for (const auto& r : j["roots"]) {
    std::vector<Rational> v;
    for (const auto& c : r) v.push_back(parse_rational(c.get<std::string>()));
    roots.push_back(std::move(v));
  }
  auto ctx = build_custom(roots);
  if (j.contains("k")) {
    std::vector<Rational> k;
    for (const auto& c : j["k"]) k.push_back(parse_rational(c.get<std::string>()));
    ctx.set_multiplicity(k);
  } else if (j.contains("multiplicity")) {
    std::vector<std::pair<Vec<Sqrt2>, Rational>> assignments;
    for (const auto& [key, value] : j["multiplicity"].items()) {
      // key is a comma-separated rational vector in the INPUT coordinates;
      // renormalize it the same way the roots were
      std::stringstream ss(key);
      std::vector<Rational> raw;
      std::string part;
      while (std::getline(ss, part, ',')) raw.push_back(parse_rational(part));
      if (static_cast<int>(raw.size()) != ctx.dim()) throw ConfigError("multiplicity key has wrong dimension");
      Rational nn = 0;
      for (const auto& c : raw) nn += c * c;
      Rational r;
      Vec<Sqrt2> root(raw.size());
      if (detail::rational_sqrt(nn / 2, r)) {
        for (std::size_t i = 0; i < raw.size(); ++i) root[i] = Sqrt2(raw[i] / r);
      } else if (detail::rational_sqrt(nn, r)) {
        for (std::size_t i = 0; i < raw.size(); ++i) root[i] = Sqrt2(raw[i] / r) * Sqrt2::sqrt2();
      } else {
        throw ConfigError("multiplicity key is not a root of the system");
      }
      assignments.emplace_back(std::move(root), parse_rational(value.get<std::string>()));
    }
    ctx.set_multiplicity(multiplicity_from_root_values(ctx, assignments));
  }
  return ctx;
}

inline GroupContext<Sqrt2> custom_system_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open custom system file " + path);
  nlohmann::json j;
  in >> j;
  return custom_system_from_json(j);
}

/// node/weight CSV (one line per node; coordinates then the weight).
inline std::string rule_to_csv(const QuadratureRule& rule) {
  std::ostringstream os;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    char buf[64];
    for (double c : rule.nodes[i]) {
      std::snprintf(buf, sizeof(buf), "%.17g,", c);
      os << buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g\n", rule.weights[i]);
    os << buf;
  }
  return os.str();
}

}  // namespace dunkl
