#pragma once

#include <algorithm>
#include <cctype>
#include <complex>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "dunkl/errors.hpp"
#include "dunkl/linalg.hpp"
#include "dunkl/monomial.hpp"
#include "dunkl/scalar.hpp"

namespace dunkl {

namespace detail {
template <class S, class X>
struct convert_scalar {
  static X to(const S& s) { return static_cast<X>(s); }
};
template <>
struct convert_scalar<Sqrt2, double> {
  static double to(const Sqrt2& s) { return s.to_double(); }
};
template <>
struct convert_scalar<Sqrt2, std::complex<double>> {
  static std::complex<double> to(const Sqrt2& s) { return {s.to_double(), 0.0}; }
};
template <>
struct convert_scalar<double, std::complex<double>> {
  static std::complex<double> to(double s) { return {s, 0.0}; }
};
}  // namespace detail

/// Sparse multivariate polynomial over the scalar field S, graded by total
/// degree. Terms are kept in graded-lex order and never store zero
/// coefficients.
template <class S>
class MultiPoly {
 public:
  using Scalar = S;
  using TermMap = std::map<Monomial, S>;

  MultiPoly() = default;
  explicit MultiPoly(int dim) : dim_(dim) {}

  static MultiPoly zero(int dim) { return MultiPoly(dim); }
  static MultiPoly constant(int dim, S c) {
    MultiPoly p(dim);
    p.add_term(Monomial(dim), std::move(c));
    return p;
  }
  static MultiPoly monomial(Monomial m, S c) {
    MultiPoly p(m.dim());
    p.add_term(std::move(m), std::move(c));
    return p;
  }
  static MultiPoly variable(int dim, int i) {
    return monomial(Monomial(dim).raised(i), scalar_traits<S>::one());
  }
  /// <v, x> as a degree-one polynomial.
  static MultiPoly linear_form(const std::vector<S>& v) {
    MultiPoly p(static_cast<int>(v.size()));
    for (int i = 0; i < p.dim_; ++i) p.add_term(Monomial(p.dim_).raised(i), v[static_cast<std::size_t>(i)]);
    return p;
  }
  static MultiPoly squared_norm(int dim) {
    MultiPoly p(dim);
    for (int i = 0; i < dim; ++i) p.add_term(Monomial(dim).raised(i, 2), scalar_traits<S>::one());
    return p;
  }

  int dim() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  S coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? scalar_traits<S>::zero() : it->second;
  }

  void add_term(Monomial m, S c) {
    if (scalar_traits<S>::is_zero(c)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(std::move(m), std::move(c));
    } else {
      it->second += c;
      if (scalar_traits<S>::is_zero(it->second)) terms_.erase(it);
    }
  }

  MultiPoly& operator+=(const MultiPoly& q) {
    check_dim(q);
    for (const auto& [m, c] : q.terms_) add_term(m, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& q) {
    check_dim(q);
    for (const auto& [m, c] : q.terms_) add_term(m, -c);
    return *this;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator-(const MultiPoly& a) {
    MultiPoly r(a.dim_);
    for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
    return r;
  }

  MultiPoly& operator*=(const S& c) {
    if (scalar_traits<S>::is_zero(c)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
  }
  friend MultiPoly operator*(MultiPoly a, const S& c) { return a *= c; }
  friend MultiPoly operator*(const S& c, MultiPoly a) { return a *= c; }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_dim(b);
    MultiPoly r(a.dim_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m(a.dim_);
        for (int i = 0; i < a.dim_; ++i) m.set(i, ma[i] + mb[i]);
        r.add_term(std::move(m), ca * cb);
      }
    return r;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  double max_abs_coefficient() const {
    double m = 0;
    for (const auto& [mono, c] : terms_) m = std::max(m, scalar_traits<S>::abs_double(c));
    return m;
  }

  /// Largest |coefficient| distance to q, in double (float-backend tests).
  double max_coeff_distance(const MultiPoly& q) const {
    double m = 0;
    for (const auto& [mono, c] : terms_) m = std::max(m, std::fabs(scalar_traits<S>::to_double(c) - scalar_traits<S>::to_double(q.coefficient(mono))));
    for (const auto& [mono, c] : q.terms_)
      if (terms_.find(mono) == terms_.end()) m = std::max(m, scalar_traits<S>::abs_double(c));
    return m;
  }

  MultiPoly homogeneous_component(int n) const {
    MultiPoly r(dim_);
    for (const auto& [m, c] : terms_)
      if (m.degree() == n) r.terms_.emplace(m, c);
    return r;
  }
  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    int d = terms_.begin()->first.degree();
    for (const auto& [m, c] : terms_)
      if (m.degree() != d) return false;
    return true;
  }

  /// Evaluation in the scalar field of the point (exact when X is exact).
  template <class X>
  X eval(const std::vector<X>& x) const {
    if (static_cast<int>(x.size()) != dim_) throw std::invalid_argument("eval: dimension mismatch");
    std::vector<std::vector<X>> powers(static_cast<std::size_t>(dim_));
    for (int i = 0; i < dim_; ++i) powers[static_cast<std::size_t>(i)] = {X(1)};
    auto power = [&](int i, int e) -> const X& {
      auto& tab = powers[static_cast<std::size_t>(i)];
      while (static_cast<int>(tab.size()) <= e) tab.push_back(tab.back() * x[static_cast<std::size_t>(i)]);
      return tab[static_cast<std::size_t>(e)];
    };
    X acc(0);
    for (const auto& [m, c] : terms_) {
      X t = detail::convert_scalar<S, X>::to(c);
      for (int i = 0; i < dim_; ++i)
        if (m[i] > 0) t *= power(i, m[i]);
      acc += t;
    }
    return acc;
  }

  S eval_exact(const std::vector<S>& x) const { return eval<S>(x); }

  /// d/dx_i.
  MultiPoly partial(int i) const {
    MultiPoly r(dim_);
    for (const auto& [m, c] : terms_) {
      int e = m[i];
      if (e == 0) continue;
      r.add_term(m.lowered(i), c * S(e));
    }
    return r;
  }

  /// Directional derivative along xi.
  MultiPoly partial_dir(const std::vector<S>& xi) const {
    MultiPoly r(dim_);
    for (int i = 0; i < dim_; ++i) {
      if (scalar_traits<S>::is_zero(xi[static_cast<std::size_t>(i)])) continue;
      r += partial(i) * xi[static_cast<std::size_t>(i)];
    }
    return r;
  }

  /// p(M x). Signed permutations (every reflection matrix of the A/B
  /// families) take the cheap monomial-relabeling path.
  MultiPoly compose_linear(const Matrix<S>& m) const {
    if (m.rows() != dim_ || m.cols() != dim_) throw std::invalid_argument("compose_linear: shape mismatch");
    // signed-permutation detection relies on exact 0 / ±1 entries; the
    // double mirrors of the exact A/B groups carry those exactly as well
    const S one = scalar_traits<S>::one();
    std::vector<int> img(static_cast<std::size_t>(dim_), -1);
    std::vector<int> sgn(static_cast<std::size_t>(dim_), 1);
    std::vector<bool> col_used(static_cast<std::size_t>(dim_), false);
    bool signed_perm = true;
    for (int i = 0; i < dim_ && signed_perm; ++i) {
      int nonzero = -1;
      for (int j = 0; j < dim_; ++j) {
        if (scalar_traits<S>::is_zero(m(i, j))) continue;
        if (nonzero != -1 || (m(i, j) != one && m(i, j) != -one)) {
          signed_perm = false;
          break;
        }
        nonzero = j;
        sgn[static_cast<std::size_t>(i)] = (m(i, j) == one) ? 1 : -1;
      }
      if (nonzero == -1 || col_used[static_cast<std::size_t>(nonzero)]) signed_perm = false;
      if (signed_perm) col_used[static_cast<std::size_t>(nonzero)] = true;
      img[static_cast<std::size_t>(i)] = nonzero;
    }
    MultiPoly r(dim_);
    if (signed_perm) {
      for (const auto& [mono, c] : terms_) {
        Monomial t(dim_);
        int flips = 0;
        for (int i = 0; i < dim_; ++i) {
          if (mono[i] == 0) continue;
          t.set(img[static_cast<std::size_t>(i)], t[img[static_cast<std::size_t>(i)]] + mono[i]);
          if (sgn[static_cast<std::size_t>(i)] < 0 && (mono[i] & 1)) ++flips;
        }
        r.add_term(std::move(t), (flips & 1) ? -c : c);
      }
      return r;
    }
    // generic path with memoized row-form powers
    std::vector<MultiPoly> rows;
    rows.reserve(static_cast<std::size_t>(dim_));
    for (int i = 0; i < dim_; ++i) {
      std::vector<S> row(static_cast<std::size_t>(dim_));
      for (int j = 0; j < dim_; ++j) row[static_cast<std::size_t>(j)] = m(i, j);
      rows.push_back(linear_form(row));
    }
    std::vector<std::vector<MultiPoly>> pow(static_cast<std::size_t>(dim_));
    auto row_power = [&](int i, int e) -> const MultiPoly& {
      auto& tab = pow[static_cast<std::size_t>(i)];
      if (tab.empty()) tab.push_back(constant(dim_, one));
      while (static_cast<int>(tab.size()) <= e) tab.push_back(tab.back() * rows[static_cast<std::size_t>(i)]);
      return tab[static_cast<std::size_t>(e)];
    };
    for (const auto& [mono, c] : terms_) {
      MultiPoly t = constant(dim_, c);
      for (int i = 0; i < dim_; ++i)
        if (mono[i] > 0) t = t * row_power(i, mono[i]);
      r += t;
    }
    return r;
  }

  friend std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.str(); }

  /// Text format: `3/2 x1^2 x3 - 1 x2`, highest-degree terms first.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      S c = it->second;
      bool neg = scalar_traits<S>::is_negative(c);
      if (first) {
        if (neg) os << "-";
      } else {
        os << (neg ? " - " : " + ");
      }
      first = false;
      if (neg) c = -c;
      os << scalar_traits<S>::str(c);
      for (int i = 0; i < dim_; ++i) {
        if (it->first[i] == 0) continue;
        os << " x" << (i + 1);
        if (it->first[i] > 1) os << "^" << it->first[i];
      }
    }
    return os.str();
  }

 private:
  void check_dim(const MultiPoly& q) const {
    if (dim_ != q.dim_) throw std::invalid_argument("polynomial dimension mismatch");
  }
  int dim_ = 0;
  TermMap terms_;
};

/// Exact division of p by the linear form <alpha, x>. The quotient q with
/// <alpha,x> * q == p is returned; a nonzero remainder (p not vanishing on
/// the hyperplane) raises PreconditionError. Division runs as synthetic
/// division in the variable carrying the largest |alpha_j|, which keeps all
/// arithmetic inside the scalar field.
template <class S>
MultiPoly<S> divide_by_linear(const MultiPoly<S>& p, const std::vector<S>& alpha) {
  const int dim = p.dim();
  if (static_cast<int>(alpha.size()) != dim) throw std::invalid_argument("divide_by_linear: dimension mismatch");
  int piv = -1;
  for (int j = 0; j < dim; ++j) {
    if (scalar_traits<S>::is_zero(alpha[static_cast<std::size_t>(j)])) continue;
    if (piv == -1 || scalar_traits<S>::abs_double(alpha[static_cast<std::size_t>(j)]) > scalar_traits<S>::abs_double(alpha[static_cast<std::size_t>(piv)]))
      piv = j;
  }
  if (piv == -1) throw std::invalid_argument("divide_by_linear: zero linear form");
  const double scale = p.max_abs_coefficient() / std::max(1e-300, scalar_traits<S>::abs_double(alpha[static_cast<std::size_t>(piv)]));

  MultiPoly<S> quotient(dim);
  MultiPoly<S> rest = p;
  const MultiPoly<S> form = MultiPoly<S>::linear_form(alpha);
  while (true) {
    // highest x_piv-exponent slice of the running remainder
    int top = 0;
    for (const auto& [m, c] : rest.terms()) top = std::max(top, m[piv]);
    if (top == 0) break;
    MultiPoly<S> chunk(dim);
    for (const auto& [m, c] : rest.terms())
      if (m[piv] == top) chunk.add_term(m.lowered(piv), c / alpha[static_cast<std::size_t>(piv)]);
    quotient += chunk;
    rest -= chunk * form;
  }
  for (const auto& [m, c] : rest.terms())
    if (!scalar_traits<S>::negligible(c, scale))
      throw PreconditionError("divide_by_linear: nonzero remainder (input does not vanish on the hyperplane)");
  return quotient;
}

/// --- text format parsing ------------------------------------------------

/// Parses `3/2 x1^2 x3 - 1 x2` style text. Coefficients are rationals;
/// `dim` fixes the variable count (0 = infer from the largest index).
template <class S>
MultiPoly<S> parse_poly(const std::string& text, int dim = 0) {
  struct Term {
    Rational coef;
    std::vector<std::pair<int, int>> factors;  // (variable index, exponent)
  };
  std::vector<Term> parsed;
  int max_var = 0;

  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*')) ++i;
  };
  skip_ws();
  bool first = true;
  while (i < text.size()) {
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip_ws();
    } else if (!first) {
      throw ConfigError("expected '+' or '-' between polynomial terms");
    }
    first = false;
    Term t;
    t.coef = sign;
    bool saw_something = false;
    if (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '.')) {
      std::size_t j = i;
      while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '/' || text[j] == '.')) ++j;
      t.coef *= parse_rational(text.substr(i, j - i));
      i = j;
      saw_something = true;
      skip_ws();
    }
    while (i < text.size() && (text[i] == 'x' || text[i] == 'X')) {
      ++i;
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j == i) throw ConfigError("variable index missing after 'x'");
      int var = std::stoi(text.substr(i, j - i));
      if (var < 1) throw ConfigError("variable indices start at x1");
      i = j;
      int exp = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        j = i;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        if (j == i) throw ConfigError("exponent missing after '^'");
        exp = std::stoi(text.substr(i, j - i));
        i = j;
      }
      t.factors.emplace_back(var - 1, exp);
      max_var = std::max(max_var, var);
      saw_something = true;
      skip_ws();
    }
    if (!saw_something) throw ConfigError("empty term in polynomial text");
    parsed.push_back(std::move(t));
  }
  if (dim == 0) dim = std::max(max_var, 1);
  if (max_var > dim) throw ConfigError("variable index exceeds polynomial dimension");
  MultiPoly<S> p(dim);
  for (const auto& t : parsed) {
    Monomial m(dim);
    for (auto [v, e] : t.factors) m.set(v, m[v] + e);
    p.add_term(std::move(m), scalar_traits<S>::from_rational(t.coef));
  }
  return p;
}

}  // namespace dunkl
