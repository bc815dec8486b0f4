#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "dunkl/errors.hpp"
#include "dunkl/linalg.hpp"
#include "dunkl/rational.hpp"
#include "dunkl/scalar.hpp"

namespace dunkl {

enum class GroupType { A, B, Dihedral, Custom };

inline std::string group_type_name(GroupType t) {
  switch (t) {
    case GroupType::A: return "A";
    case GroupType::B: return "B";
    case GroupType::Dihedral: return "I2";
    case GroupType::Custom: return "custom";
  }
  return "?";
}

template <class S>
using Vec = std::vector<S>;

template <class S>
S inner(const Vec<S>& x, const Vec<S>& y) {
  S acc = scalar_traits<S>::zero();
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

/// sigma_alpha(x) = x - 2 <alpha,x>/<alpha,alpha> alpha.
template <class S>
Vec<S> reflect(const Vec<S>& alpha, const Vec<S>& x) {
  S nn = inner(alpha, alpha);
  if (scalar_traits<S>::is_zero(nn)) throw std::invalid_argument("reflect: zero root");
  S f = (S(2) * inner(alpha, x)) / nn;
  Vec<S> r = x;
  for (std::size_t i = 0; i < x.size(); ++i) r[i] -= f * alpha[i];
  return r;
}

template <class S>
Matrix<S> reflection_matrix(const Vec<S>& alpha) {
  const int n = static_cast<int>(alpha.size());
  S nn = inner(alpha, alpha);
  Matrix<S> m = Matrix<S>::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) -= (S(2) * alpha[static_cast<std::size_t>(i)] * alpha[static_cast<std::size_t>(j)]) / nn;
  return m;
}

template <class S>
struct GroupElement {
  Matrix<S> matrix;
  int word_length = 0;
};

template <class S>
struct RootSystem {
  GroupType type = GroupType::Custom;
  int dim = 0;               // ambient dimension N
  int rank = 0;              // dimension of the span
  int dihedral_n = 0;        // for I2(n)
  std::vector<Vec<S>> roots;       // full set, normalized to <a,a> = 2
  std::vector<Vec<S>> positive;    // R_+ chosen by a fixed generic functional
  std::vector<Vec<S>> unnormalized;  // original coordinates, kept as metadata
};

namespace detail {

inline bool rational_sqrt(const Rational& q, Rational& out) {
  if (q < 0) return false;
  Integer num = numerator(q), den = denominator(q);
  Integer rn = boost::multiprecision::sqrt(num), rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) return false;
  out = Rational(rn, rd);
  return true;
}

template <class S>
bool vec_equal(const Vec<S>& a, const Vec<S>& b) {
  if constexpr (scalar_traits<S>::exact) {
    return a == b;
  } else {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m < scalar_traits<double>::tol;
  }
}

template <class S>
int find_vec(const std::vector<Vec<S>>& set, const Vec<S>& v) {
  for (std::size_t i = 0; i < set.size(); ++i)
    if (vec_equal<S>(set[i], v)) return static_cast<int>(i);
  return -1;
}

/// Strict weak order on vectors for deterministic orbit representatives.
template <class S>
bool vec_less(const Vec<S>& a, const Vec<S>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if constexpr (scalar_traits<S>::exact) {
      int s = (a[i] - b[i]).sign();
      if (s != 0) return s < 0;
    } else {
      if (std::fabs(a[i] - b[i]) > scalar_traits<double>::tol) return a[i] < b[i];
    }
  }
  return false;
}

/// Orderable exact key for group-closure membership tests.
inline std::vector<std::pair<Rational, Rational>> matrix_key(const Matrix<Sqrt2>& m) {
  std::vector<std::pair<Rational, Rational>> key;
  key.reserve(static_cast<std::size_t>(m.rows()) * m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) key.emplace_back(m(i, j).rational_part(), m(i, j).sqrt2_part());
  return key;
}

/// Signed-permutation encoding (Mx)_i = sign_i * x_{perm_i}; available for
/// every reflection of the A/B families, which makes their group closures
/// cheap integer work.
struct SignedPerm {
  std::vector<std::int8_t> perm;
  std::vector<std::int8_t> sign;
  friend bool operator<(const SignedPerm& a, const SignedPerm& b) {
    if (a.perm != b.perm) return a.perm < b.perm;
    return a.sign < b.sign;
  }
  /// this ∘ other as matrices: result = M_this * M_other.
  SignedPerm after(const SignedPerm& other) const {
    SignedPerm r;
    const std::size_t n = perm.size();
    r.perm.resize(n);
    r.sign.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      r.perm[i] = other.perm[static_cast<std::size_t>(perm[i])];
      r.sign[i] = static_cast<std::int8_t>(sign[i] * other.sign[static_cast<std::size_t>(perm[i])]);
    }
    return r;
  }
};

template <class S>
std::optional<SignedPerm> as_signed_perm(const Matrix<S>& m) {
  const S one = scalar_traits<S>::one();
  SignedPerm sp;
  sp.perm.assign(static_cast<std::size_t>(m.rows()), 0);
  sp.sign.assign(static_cast<std::size_t>(m.rows()), 1);
  std::vector<bool> used(static_cast<std::size_t>(m.cols()), false);
  for (int i = 0; i < m.rows(); ++i) {
    int nz = -1;
    for (int j = 0; j < m.cols(); ++j) {
      if (scalar_traits<S>::is_zero(m(i, j))) continue;
      if (nz != -1 || (m(i, j) != one && m(i, j) != -one)) return std::nullopt;
      nz = j;
      sp.sign[static_cast<std::size_t>(i)] = (m(i, j) == one) ? 1 : -1;
    }
    if (nz == -1 || used[static_cast<std::size_t>(nz)]) return std::nullopt;
    used[static_cast<std::size_t>(nz)] = true;
    sp.perm[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(nz);
  }
  return sp;
}

template <class S>
Matrix<S> matrix_of_signed_perm(const SignedPerm& sp) {
  const int n = static_cast<int>(sp.perm.size());
  Matrix<S> m(n, n);
  for (int i = 0; i < n; ++i)
    m(i, sp.perm[static_cast<std::size_t>(i)]) =
        sp.sign[static_cast<std::size_t>(i)] > 0 ? scalar_traits<S>::one() : -scalar_traits<S>::one();
  return m;
}

}  // namespace detail

/// Closure of the reflections {sigma_alpha} under multiplication.
/// Breadth-first, so word_length is the minimal factorization length.
template <class S>
std::vector<GroupElement<S>> generate_group(const std::vector<Vec<S>>& positive_roots, int dim,
                                            std::size_t cap = 1000000) {
  std::vector<GroupElement<S>> elems;
  std::vector<Matrix<S>> gens;
  gens.reserve(positive_roots.size());
  for (const auto& a : positive_roots) gens.push_back(reflection_matrix<S>(a));

  // signed-permutation closure when every generator admits the encoding
  {
    std::vector<detail::SignedPerm> sp_gens;
    bool all = true;
    for (const auto& g : gens) {
      auto sp = detail::as_signed_perm(g);
      if (!sp) {
        all = false;
        break;
      }
      sp_gens.push_back(*sp);
    }
    if (all && dim > 0) {
      std::map<detail::SignedPerm, int> seen;
      std::vector<detail::SignedPerm> list;
      std::vector<int> word;
      detail::SignedPerm id;
      id.perm.resize(static_cast<std::size_t>(dim));
      id.sign.assign(static_cast<std::size_t>(dim), 1);
      for (int i = 0; i < dim; ++i) id.perm[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(i);
      seen.emplace(id, 0);
      list.push_back(id);
      word.push_back(0);
      std::size_t head = 0;
      while (head < list.size()) {
        detail::SignedPerm base = list[head];
        int wl = word[head] + 1;
        ++head;
        for (const auto& g : sp_gens) {
          if (list.size() > cap) throw ResourceError("group closure exceeded the configured cap");
          detail::SignedPerm prod = g.after(base);
          if (seen.emplace(prod, static_cast<int>(list.size())).second) {
            list.push_back(std::move(prod));
            word.push_back(wl);
          }
        }
      }
      for (std::size_t i = 0; i < list.size(); ++i)
        elems.push_back({detail::matrix_of_signed_perm<S>(list[i]), word[i]});
      return elems;
    }
  }

  // exact backend keeps an ordered key index; float groups are small
  // (dihedral), a tolerance scan is enough there
  std::map<std::vector<std::pair<Rational, Rational>>, int> seen;
  auto push_if_new = [&](Matrix<S> m, int wl) -> bool {
    if constexpr (scalar_traits<S>::exact) {
      auto key = detail::matrix_key(m);
      if (seen.count(key)) return false;
      seen.emplace(std::move(key), static_cast<int>(elems.size()));
    } else {
      for (const auto& e : elems)
        if (e.matrix.max_abs_diff(m) < scalar_traits<double>::tol) return false;
    }
    elems.push_back({std::move(m), wl});
    return true;
  };

  push_if_new(Matrix<S>::identity(dim), 0);
  std::size_t head = 0;
  while (head < elems.size()) {
    Matrix<S> base = elems[head].matrix;
    int wl = elems[head].word_length + 1;
    ++head;
    for (const auto& g : gens) {
      if (elems.size() > cap) throw ResourceError("group closure exceeded the configured cap");
      push_if_new(g * base, wl);
    }
  }
  return elems;
}

/// Root system + generated group + multiplicity data. Immutable once the
/// multiplicity has been fixed; safe to share across threads.
template <class S>
class GroupContext {
 public:
  using Scalar = S;

  RootSystem<S> system;
  std::vector<GroupElement<S>> group;

  // per positive root
  std::vector<Matrix<S>> reflections;
  std::vector<int> orbit_index;

  // per orbit
  std::vector<Vec<S>> orbit_reps;  // lexicographically minimal root in the orbit
  std::vector<Rational> k;

  int dim() const { return system.dim; }
  int num_positive() const { return static_cast<int>(system.positive.size()); }
  int num_orbits() const { return static_cast<int>(orbit_reps.size()); }

  Rational gamma() const {
    Rational g = 0;
    for (std::size_t i = 0; i < system.positive.size(); ++i) g += k[static_cast<std::size_t>(orbit_index[i])];
    return g;
  }

  const Rational& k_of_positive(int i) const { return k[static_cast<std::size_t>(orbit_index[static_cast<std::size_t>(i)])]; }

  void set_multiplicity(const std::vector<Rational>& values) {
    if (static_cast<int>(values.size()) != num_orbits())
      throw ConfigError("expected " + std::to_string(num_orbits()) + " multiplicity value(s), got " +
                        std::to_string(values.size()));
    for (const auto& v : values)
      if (v < 0) throw ConfigError("multiplicity values must be nonnegative");
    k = values;
  }

  /// Orbit index of a root given by coordinates (sign-insensitive).
  int orbit_of_root(const Vec<S>& root) const {
    int ri = detail::find_vec<S>(system.positive, root);
    if (ri < 0) {
      Vec<S> neg = root;
      for (auto& c : neg) c = -c;
      ri = detail::find_vec<S>(system.positive, neg);
    }
    if (ri < 0) throw ConfigError("root not found in the system");
    return orbit_index[static_cast<std::size_t>(ri)];
  }

  /// w_k(x) = prod |<alpha,x>|^{2 k(alpha)} over R_+.
  double weight(const std::vector<double>& x) const {
    double w = 1.0;
    for (int i = 0; i < num_positive(); ++i) {
      double ip = 0;
      for (int j = 0; j < dim(); ++j) ip += scalar_traits<S>::to_double(system.positive[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) * x[static_cast<std::size_t>(j)];
      w *= std::pow(std::fabs(ip), 2.0 * to_double(k_of_positive(i)));
    }
    return w;
  }

  /// g alpha, also asserting g sigma_alpha g^{-1} == sigma_{g alpha}.
  Vec<S> conjugated_root(const GroupElement<S>& g, const Vec<S>& alpha) const {
    Vec<S> ga = g.matrix.apply(alpha);
    Matrix<S> lhs = g.matrix * reflection_matrix<S>(alpha) * g.matrix.transposed();
    Matrix<S> rhs = reflection_matrix<S>(ga);
    bool ok;
    if constexpr (scalar_traits<S>::exact)
      ok = lhs == rhs;
    else
      ok = lhs.max_abs_diff(rhs) < scalar_traits<double>::tol;
    if (!ok) throw RegularityError("conjugation identity failed: group construction bug");
    return ga;
  }
};

/// Builds a per-orbit multiplicity vector from per-root assignments,
/// rejecting assignments that differ within one G-orbit.
template <class S>
std::vector<Rational> multiplicity_from_root_values(
    const GroupContext<S>& ctx, const std::vector<std::pair<Vec<S>, Rational>>& assignments) {
  std::vector<std::optional<Rational>> staged(static_cast<std::size_t>(ctx.num_orbits()));
  for (const auto& [root, value] : assignments) {
    if (value < 0) throw ConfigError("multiplicity values must be nonnegative");
    int oi = ctx.orbit_of_root(root);
    if (staged[static_cast<std::size_t>(oi)] && *staged[static_cast<std::size_t>(oi)] != value)
      throw ConfigError("conflicting multiplicity within one G-orbit");
    staged[static_cast<std::size_t>(oi)] = value;
  }
  std::vector<Rational> out;
  for (auto& v : staged) {
    if (!v) throw ConfigError("multiplicity missing for at least one orbit");
    out.push_back(*v);
  }
  return out;
}

namespace detail {

template <class S>
void finalize_context(GroupContext<S>& ctx, std::size_t cap) {
  auto& sys = ctx.system;
  const int dim = sys.dim;

  // standing convention <alpha, alpha> = 2
  for (const auto& a : sys.roots) {
    S nn = inner(a, a);
    if (!scalar_traits<S>::negligible(nn - S(2), 1.0))
      throw ConfigError("root is not normalized to squared norm 2");
  }

  // positive subsystem via the fixed generic functional u = (1, 1+e, 1+2e, ...)
  std::vector<S> u(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i)
    u[static_cast<std::size_t>(i)] = scalar_traits<S>::from_rational(Rational(10000 + i, 10000));
  sys.positive.clear();
  for (const auto& a : sys.roots) {
    S ip = inner(a, u);
    bool positive;
    if constexpr (scalar_traits<S>::exact) {
      int sg = ip.sign();
      if (sg == 0) throw ConfigError("positive-subsystem functional is not generic for this system");
      positive = sg > 0;
    } else {
      if (std::fabs(ip) < scalar_traits<double>::tol)
        throw ConfigError("positive-subsystem functional is not generic for this system");
      positive = ip > 0;
    }
    if (positive) sys.positive.push_back(a);
  }
  if (2 * sys.positive.size() != sys.roots.size())
    throw ConfigError("root system is not symmetric under negation");

  // rank = dimension of the span
  {
    Matrix<S> m(static_cast<int>(sys.positive.size()), dim);
    for (int i = 0; i < static_cast<int>(sys.positive.size()); ++i)
      for (int j = 0; j < dim; ++j) m(i, j) = sys.positive[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    // column-echelon rank count
    int rank = 0, row = 0;
    Matrix<S> a = m;
    for (int col = 0; col < dim && row < a.rows(); ++col) {
      int piv = -1;
      for (int r = row; r < a.rows(); ++r)
        if (!scalar_traits<S>::negligible(a(r, col), 1.0)) {
          piv = r;
          break;
        }
      if (piv == -1) continue;
      for (int j = 0; j < dim; ++j) std::swap(a(piv, j), a(row, j));
      for (int r = row + 1; r < a.rows(); ++r) {
        if (scalar_traits<S>::negligible(a(r, col), 1.0)) continue;
        S f = a(r, col) / a(row, col);
        for (int j = col; j < dim; ++j) a(r, j) -= f * a(row, j);
      }
      ++rank;
      ++row;
    }
    sys.rank = rank;
  }

  ctx.group = generate_group<S>(sys.positive, dim, cap);
  ctx.reflections.clear();
  for (const auto& a : sys.positive) ctx.reflections.push_back(reflection_matrix<S>(a));

  // orbits of R under G: connected components under the generating
  // reflections (the group is generated by them). Representatives are
  // lexicographically minimal over the orbit including negatives.
  const int np = static_cast<int>(sys.positive.size());
  std::vector<int> parent(static_cast<std::size_t>(np));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) {
    while (parent[static_cast<std::size_t>(a)] != a) a = parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
    return a;
  };
  for (int i = 0; i < np; ++i)
    for (int s = 0; s < np; ++s) {
      Vec<S> img = reflect(sys.positive[static_cast<std::size_t>(s)], sys.positive[static_cast<std::size_t>(i)]);
      if (detail::find_vec<S>(sys.roots, img) < 0)
        throw RegularityError("reflections do not preserve the root set");
      int pj = detail::find_vec<S>(sys.positive, img);
      if (pj < 0) {
        for (auto& c : img) c = -c;
        pj = detail::find_vec<S>(sys.positive, img);
      }
      if (pj >= 0) parent[static_cast<std::size_t>(find(i))] = find(pj);
    }
  ctx.orbit_index.assign(static_cast<std::size_t>(np), -1);
  ctx.orbit_reps.clear();
  for (int i = 0; i < np; ++i) {
    int root_of = find(i);
    int oi = ctx.orbit_index[static_cast<std::size_t>(root_of)];
    if (oi < 0) {
      oi = static_cast<int>(ctx.orbit_reps.size());
      ctx.orbit_index[static_cast<std::size_t>(root_of)] = oi;
      ctx.orbit_reps.push_back(sys.positive[static_cast<std::size_t>(root_of)]);
    }
    ctx.orbit_index[static_cast<std::size_t>(i)] = oi;
    // minimize the representative over ± of every member
    Vec<S> cand = sys.positive[static_cast<std::size_t>(i)];
    Vec<S> neg = cand;
    for (auto& c : neg) c = -c;
    if (detail::vec_less<S>(cand, ctx.orbit_reps[static_cast<std::size_t>(oi)])) ctx.orbit_reps[static_cast<std::size_t>(oi)] = cand;
    if (detail::vec_less<S>(neg, ctx.orbit_reps[static_cast<std::size_t>(oi)])) ctx.orbit_reps[static_cast<std::size_t>(oi)] = neg;
  }
  // order orbits by their representative for a deterministic CLI interface
  std::vector<int> order(ctx.orbit_reps.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return detail::vec_less<S>(ctx.orbit_reps[static_cast<std::size_t>(a)], ctx.orbit_reps[static_cast<std::size_t>(b)]);
  });
  std::vector<int> new_of_old(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) new_of_old[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  std::vector<Vec<S>> reps(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) reps[i] = ctx.orbit_reps[static_cast<std::size_t>(order[i])];
  ctx.orbit_reps = std::move(reps);
  for (auto& oi : ctx.orbit_index) oi = new_of_old[static_cast<std::size_t>(oi)];

  ctx.k.assign(ctx.orbit_reps.size(), Rational(0));
}

}  // namespace detail

/// The one-dimensional system {±sqrt 2} with group {id, x -> -x}.
template <class S>
GroupContext<S> build_rank_one(std::size_t cap = 1000000) {
  GroupContext<S> ctx;
  auto& sys = ctx.system;
  sys.type = GroupType::A;
  sys.dim = 1;
  Vec<S> a(1);
  if constexpr (scalar_traits<S>::exact)
    a[0] = Sqrt2::sqrt2();
  else
    a[0] = std::sqrt(2.0);
  sys.roots.push_back(a);
  a[0] = -a[0];
  sys.roots.push_back(a);
  sys.unnormalized = sys.roots;
  detail::finalize_context(ctx, cap);
  return ctx;
}

/// Standard systems. Type A with ambient dimension N carries the rank N-1
/// system {±(e_i - e_j)}; type B is full rank with the short roots rescaled
/// to sqrt(2) e_i; dimension 1 is the rank-one system {±sqrt 2} for either
/// letter. Dihedral systems are built on the double backend only (their
/// coordinates leave Q(sqrt 2)); I2(3), I2(4) have exact twins A_2/B_2.
template <class S>
GroupContext<S> build_standard(GroupType type, int n, std::size_t cap = 1000000) {
  if ((type == GroupType::A || type == GroupType::B) && n == 1) return build_rank_one<S>(cap);
  GroupContext<S> ctx;
  auto& sys = ctx.system;
  sys.type = type;
  const S one = scalar_traits<S>::one();

  switch (type) {
    case GroupType::A: {
      if (n < 2) throw ConfigError("type A needs dimension >= 2");
      sys.dim = n;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          Vec<S> a(static_cast<std::size_t>(n), scalar_traits<S>::zero());
          a[static_cast<std::size_t>(i)] = one;
          a[static_cast<std::size_t>(j)] = -one;
          sys.roots.push_back(a);
          for (auto& c : a) c = -c;
          sys.roots.push_back(a);
        }
      break;
    }
    case GroupType::B: {
      if (n < 2) throw ConfigError("type B needs dimension >= 2");
      sys.dim = n;
      for (int i = 0; i < n; ++i) {
        Vec<S> a(static_cast<std::size_t>(n), scalar_traits<S>::zero());
        if constexpr (scalar_traits<S>::exact)
          a[static_cast<std::size_t>(i)] = Sqrt2::sqrt2();
        else
          a[static_cast<std::size_t>(i)] = std::sqrt(2.0);
        sys.roots.push_back(a);
        for (auto& c : a) c = -c;
        sys.roots.push_back(a);
      }
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          for (int s = 0; s < 2; ++s) {
            Vec<S> a(static_cast<std::size_t>(n), scalar_traits<S>::zero());
            a[static_cast<std::size_t>(i)] = one;
            a[static_cast<std::size_t>(j)] = s ? -one : one;
            sys.roots.push_back(a);
            for (auto& c : a) c = -c;
            sys.roots.push_back(a);
          }
      break;
    }
    case GroupType::Dihedral: {
      if constexpr (scalar_traits<S>::exact)
        throw ConfigError("dihedral systems use the double backend (cos(pi/n) leaves Q(sqrt 2))");
      else {
        if (n < 3) throw ConfigError("dihedral I2(n) needs n >= 3");
        sys.dim = 2;
        sys.dihedral_n = n;
        for (int j = 0; j < n; ++j) {
          double t = M_PI * j / n;
          Vec<S> a = {std::sqrt(2.0) * std::cos(t), std::sqrt(2.0) * std::sin(t)};
          sys.roots.push_back(a);
          sys.roots.push_back({-a[0], -a[1]});
        }
      }
      break;
    }
    case GroupType::Custom:
      throw ConfigError("use build_custom for user-supplied root systems");
  }
  sys.unnormalized = sys.roots;
  detail::finalize_context(ctx, cap);
  return ctx;
}

/// User-supplied rational roots. The set is completed under negation,
/// validated (reducedness, sigma_alpha(R) = R) and normalized to
/// <alpha,alpha> = 2, which is possible inside Q(sqrt 2) exactly when each
/// squared norm is r^2 or 2 r^2 for rational r.
inline GroupContext<Sqrt2> build_custom(const std::vector<std::vector<Rational>>& raw_roots,
                                        std::size_t cap = 1000000) {
  if (raw_roots.empty()) throw ConfigError("custom system needs at least one root");
  GroupContext<Sqrt2> ctx;
  auto& sys = ctx.system;
  sys.type = GroupType::Custom;
  sys.dim = static_cast<int>(raw_roots.front().size());

  std::vector<Vec<Sqrt2>> roots;
  for (const auto& rr : raw_roots) {
    if (static_cast<int>(rr.size()) != sys.dim) throw ConfigError("custom roots must share one dimension");
    Vec<Sqrt2> a(rr.size());
    bool zero = true;
    for (std::size_t i = 0; i < rr.size(); ++i) {
      a[i] = Sqrt2(rr[i]);
      zero = zero && rr[i] == 0;
    }
    if (zero) throw ConfigError("custom root must be nonzero");
    if (detail::find_vec<Sqrt2>(roots, a) < 0) roots.push_back(a);
  }
  // close under negation
  for (std::size_t i = 0, n0 = roots.size(); i < n0; ++i) {
    Vec<Sqrt2> neg = roots[i];
    for (auto& c : neg) c = -c;
    if (detail::find_vec<Sqrt2>(roots, neg) < 0) roots.push_back(neg);
  }
  sys.unnormalized = roots;

  // normalize to squared norm 2
  for (auto& a : roots) {
    Rational nn = inner(a, a).as_rational();  // rational input -> rational norm
    Rational r;
    if (detail::rational_sqrt(nn / 2, r)) {
      for (auto& c : a) c = c / Sqrt2(r);
    } else if (detail::rational_sqrt(nn, r)) {
      for (auto& c : a) c = c * Sqrt2::sqrt2() / Sqrt2(r);
    } else {
      throw ConfigError("cannot normalize root inside Q(sqrt 2): squared norm " + to_string(nn) +
                        " is neither r^2 nor 2 r^2");
    }
  }
  // drop duplicates produced by proportional input roots
  std::vector<Vec<Sqrt2>> uniq;
  for (const auto& a : roots)
    if (detail::find_vec<Sqrt2>(uniq, a) < 0) uniq.push_back(a);
  roots = std::move(uniq);

  // reducedness: R ∩ R·alpha = {±alpha}; after normalization proportional
  // roots collapse, so it suffices that no distinct pair is proportional.
  // sigma_alpha(R) = R:
  for (const auto& a : roots)
    for (const auto& b : roots) {
      Vec<Sqrt2> img = reflect(a, b);
      if (detail::find_vec<Sqrt2>(roots, img) < 0)
        throw ConfigError("custom set is not a root system: sigma_alpha(R) != R");
    }

  sys.roots = roots;
  detail::finalize_context(ctx, cap);
  return ctx;
}

}  // namespace dunkl
