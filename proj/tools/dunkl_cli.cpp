// dunkl: reflection groups, Dunkl operators, the intertwining operator,
// kernel/transform/heat evaluation and the identity-verification suites.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dunkl/asymptotics.hpp"
#include "dunkl/io.hpp"
#include "dunkl/verify.hpp"

using namespace dunkl;

namespace {

struct Config {
  std::string group = "A";
  int dim = 1;
  int dihedral_n = 5;
  std::string custom_path;
  std::vector<std::string> k_values;
  int max_degree = 6;
  int truncation = 40;
  int nodes = 48;
  std::string format = "text";
  std::uint64_t seed = 1;
};

std::vector<Rational> parse_k_list(const std::vector<std::string>& vals) {
  std::vector<Rational> out;
  for (const auto& chunk : vals) {
    std::stringstream ss(chunk);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(parse_rational(part));
  }
  return out;
}

template <class S>
void assign_multiplicity(GroupContext<S>& ctx, const Config& cfg) {
  auto k = parse_k_list(cfg.k_values);
  if (k.empty()) k.assign(static_cast<std::size_t>(ctx.num_orbits()), Rational(1, 2));
  ctx.set_multiplicity(k);
}

/// Runs fn on the configured context; exact backend for A/B/custom,
/// double backend for dihedral groups.
template <class F>
int with_context(const Config& cfg, F&& fn) {
  if (cfg.group == "I2" || cfg.group == "i2" || cfg.group == "D" || cfg.group == "dihedral") {
    auto ctx = build_standard<double>(GroupType::Dihedral, cfg.dihedral_n);
    assign_multiplicity(ctx, cfg);
    return fn(ctx);
  }
  if (cfg.group == "custom") {
    if (cfg.custom_path.empty()) throw ConfigError("custom group needs --custom <json-file>");
    auto ctx = custom_system_from_file(cfg.custom_path);
    if (!cfg.k_values.empty()) assign_multiplicity(ctx, cfg);
    return fn(ctx);
  }
  GroupType type;
  if (cfg.group == "A" || cfg.group == "a")
    type = GroupType::A;
  else if (cfg.group == "B" || cfg.group == "b")
    type = GroupType::B;
  else
    throw ConfigError("unknown group '" + cfg.group + "' (use A, B, I2 or custom)");
  auto ctx = build_standard<Sqrt2>(type, cfg.dim);
  assign_multiplicity(ctx, cfg);
  return fn(ctx);
}

GroupContext<Sqrt2> rank_one_from_config(const Config& cfg) {
  auto ctx = build_rank_one<Sqrt2>();
  auto k = parse_k_list(cfg.k_values);
  if (k.empty()) k = {Rational(1, 2)};
  if (k.size() != 1) throw ConfigError("this command uses the rank-one system: pass a single k");
  ctx.set_multiplicity(k);
  return ctx;
}

template <class S>
Vec<S> parse_direction(const std::string& text, int dim) {
  Vec<S> out(static_cast<std::size_t>(dim), scalar_traits<S>::zero());
  if (!text.empty() && (text[0] == 'e' || text[0] == 'E')) {
    int idx = std::stoi(text.substr(1));
    if (idx < 1 || idx > dim) throw ConfigError("direction index out of range in '" + text + "'");
    out[static_cast<std::size_t>(idx - 1)] = scalar_traits<S>::one();
    return out;
  }
  std::stringstream ss(text);
  std::string part;
  int i = 0;
  while (std::getline(ss, part, ',')) {
    if (i >= dim) throw ConfigError("direction has too many coordinates");
    out[static_cast<std::size_t>(i++)] = scalar_traits<S>::from_rational(parse_rational(part));
  }
  if (i != dim) throw ConfigError("direction has too few coordinates");
  return out;
}

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(to_double(parse_rational(part)));
  return out;
}

/// Operator expression syntax: whitespace-separated factors compose right
/// to left (function composition). Factors: T(<dir>), Delta, Euler,
/// Exp(-Delta/2), Exp(+Delta/2), Mul(<poly>).
template <class S>
OperatorExpr<S> parse_operator(const std::string& text, int dim) {
  std::vector<OperatorExpr<S>> chain;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto read_parens = [&]() -> std::string {
    if (i >= text.size() || text[i] != '(') throw ConfigError("expected '(' in operator expression");
    ++i;
    int depth = 1;
    std::string inner;
    while (i < text.size()) {
      if (text[i] == '(') ++depth;
      if (text[i] == ')') {
        --depth;
        if (depth == 0) break;
      }
      inner.push_back(text[i++]);
    }
    if (depth != 0) throw ConfigError("unbalanced parentheses in operator expression");
    ++i;
    return inner;
  };
  skip_ws();
  while (i < text.size()) {
    std::size_t j = i;
    while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
    std::string word = text.substr(i, j - i);
    i = j;
    if (word == "T") {
      chain.push_back(OperatorExpr<S>::dunkl(parse_direction<S>(read_parens(), dim)));
    } else if (word == "Delta" || word == "delta") {
      chain.push_back(OperatorExpr<S>::laplacian());
    } else if (word == "Euler" || word == "euler" || word == "rho") {
      chain.push_back(OperatorExpr<S>::euler());
    } else if (word == "Exp" || word == "exp") {
      std::string inner = read_parens();
      std::string squeezed;
      for (char ch : inner)
        if (!std::isspace(static_cast<unsigned char>(ch))) squeezed.push_back(ch);
      if (squeezed == "-Delta/2")
        chain.push_back(OperatorExpr<S>::exp_half_laplacian(-1));
      else if (squeezed == "+Delta/2" || squeezed == "Delta/2")
        chain.push_back(OperatorExpr<S>::exp_half_laplacian(+1));
      else
        throw ConfigError("Exp takes -Delta/2 or +Delta/2");
    } else if (word == "Mul" || word == "mul") {
      chain.push_back(OperatorExpr<S>::multiply(parse_poly<S>(read_parens(), dim)));
    } else if (word.empty()) {
      throw ConfigError("cannot parse operator expression near '" + text.substr(i) + "'");
    } else {
      throw ConfigError("unknown operator '" + word + "'");
    }
    skip_ws();
  }
  if (chain.empty()) throw ConfigError("empty operator expression");
  return OperatorExpr<S>::compose(std::move(chain));
}

std::string format_complex(std::complex<double> v) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.12g%+.12gi", v.real(), v.imag());
  return buf;
}

int emit_suites(const std::vector<SuiteReport>& suites, const Config& cfg) {
  bool all_pass = true;
  for (const auto& s : suites) all_pass = all_pass && s.all_pass();
  if (cfg.format == "json") {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& s : suites) {
      nlohmann::json js{{"suite", s.suite}, {"checks", nlohmann::json::array()}};
      for (const auto& c : s.checks) {
        js["checks"].push_back({{"tag", c.tag},
                                {"name", c.name},
                                {"pass", c.pass},
                                {"worst_error", c.worst_error},
                                {"tolerance", c.tolerance},
                                {"detail", c.detail}});
      }
      out.push_back(std::move(js));
    }
    std::cout << out.dump(2) << "\n";
  } else {
    std::printf("seed %llu\n", static_cast<unsigned long long>(cfg.seed));
    for (const auto& s : suites) std::cout << format_suite(s);
    std::printf("%s\n", all_pass ? "all checks passed" : "FAILURES present");
  }
  return all_pass ? 0 : 1;
}

template <class S>
std::string describe_group(const GroupContext<S>& ctx) {
  std::ostringstream os;
  os << "type: " << group_type_name(ctx.system.type);
  if (ctx.system.type == GroupType::Dihedral) os << "(" << ctx.system.dihedral_n << ")";
  os << "\nambient dimension: " << ctx.dim() << "\nrank: " << ctx.system.rank
     << "\nroots: " << ctx.system.roots.size() << "\ngroup order: " << ctx.group.size()
     << "\norbits: " << ctx.num_orbits() << "\n";
  auto vec_str = [](const Vec<S>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ", ";
      s += scalar_traits<S>::str(v[i]);
    }
    return s + ")";
  };
  for (int o = 0; o < ctx.num_orbits(); ++o)
    os << "  orbit " << o << ": representative " << vec_str(ctx.orbit_reps[static_cast<std::size_t>(o)])
       << ", k = " << to_string(ctx.k[static_cast<std::size_t>(o)]) << "\n";
  os << "gamma: " << to_string(ctx.gamma()) << "\n";
  // chamber: <alpha, x> > 0 over R_+; the simple roots (not positive
  // combinations of two other positive roots -- the norm-2 rescaling
  // breaks plain sums, so solve the 2x2 combinations) already cut it out
  os << "chamber: { x : <alpha, x> > 0 for the simple positive roots }\n";
  const int np = ctx.num_positive();
  auto as_double = [&](int idx) {
    std::vector<double> v(static_cast<std::size_t>(ctx.dim()));
    for (int t = 0; t < ctx.dim(); ++t)
      v[static_cast<std::size_t>(t)] =
          scalar_traits<S>::to_double(ctx.system.positive[static_cast<std::size_t>(idx)][static_cast<std::size_t>(t)]);
    return v;
  };
  for (int i = 0; i < np; ++i) {
    auto a = as_double(i);
    bool simple = true;
    for (int p = 0; p < np && simple; ++p)
      for (int q = p + 1; q < np && simple; ++q) {
        if (p == i || q == i) continue;
        auto b = as_double(p), g = as_double(q);
        // least-squares c1 b + c2 g = a via normal equations
        double bb = 0, bg = 0, gg = 0, ab = 0, ag = 0;
        for (std::size_t t = 0; t < a.size(); ++t) {
          bb += b[t] * b[t];
          bg += b[t] * g[t];
          gg += g[t] * g[t];
          ab += a[t] * b[t];
          ag += a[t] * g[t];
        }
        double det = bb * gg - bg * bg;
        if (std::fabs(det) < 1e-12) continue;
        double c1 = (ab * gg - ag * bg) / det;
        double c2 = (bb * ag - bg * ab) / det;
        if (c1 <= 1e-9 || c2 <= 1e-9) continue;
        double resid = 0;
        for (std::size_t t = 0; t < a.size(); ++t) {
          double d = c1 * b[t] + c2 * g[t] - a[t];
          resid += d * d;
        }
        if (resid < 1e-18) simple = false;
      }
    os << "  " << (simple ? "simple " : "       ") << vec_str(ctx.system.positive[static_cast<std::size_t>(i)]) << "\n";
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rational Dunkl theory: groups, operators, kernels, transforms"};
  app.require_subcommand(1);
  Config cfg;

  app.add_option("--group,--type,-g", cfg.group, "group family: A, B, I2, custom");
  app.add_option("--dim,-d", cfg.dim, "ambient dimension (dim 1 = the rank-one system)");
  app.add_option("--n", cfg.dihedral_n, "dihedral parameter n for I2(n)");
  app.add_option("--custom", cfg.custom_path, "custom root-system json file");
  app.add_option("--k", cfg.k_values, "multiplicity per orbit, rationals like 1/2,1 (default 1/2 each)");
  app.add_option("--max-degree", cfg.max_degree, "polynomial degree cap for tables/suites");
  app.add_option("--truncation", cfg.truncation, "kernel series truncation");
  app.add_option("--nodes", cfg.nodes, "radial quadrature nodes");
  app.add_option("--format", cfg.format, "output format: text, json, csv");
  app.add_option("--seed", cfg.seed, "seed for randomized batteries");

  int exit_code = 0;

  auto* cmd_group = app.add_subcommand("group", "construct a reflection group and print its data");
  bool info = false;
  cmd_group->add_flag("--info", info, "print order, orbits, gamma and chamber description");
  cmd_group->callback([&] {
    with_context(cfg, [&](auto& ctx) {
      if (cfg.format == "json") {
        nlohmann::json j{{"type", group_type_name(ctx.system.type)},
                         {"dim", ctx.dim()},
                         {"rank", ctx.system.rank},
                         {"roots", ctx.system.roots.size()},
                         {"order", ctx.group.size()},
                         {"orbits", ctx.num_orbits()},
                         {"gamma", to_string(ctx.gamma())}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << describe_group(ctx);
      }
      return 0;
    });
  });

  auto* cmd_apply = app.add_subcommand("apply", "apply an operator expression to a polynomial");
  std::string op_text, poly_text;
  cmd_apply->add_option("--op", op_text, "operator, e.g. \"T(e1)\" or \"Exp(-Delta/2) Delta\"")->required();
  cmd_apply->add_option("--poly", poly_text, "polynomial, e.g. \"x1^3 - 2 x2\"")->required();
  cmd_apply->callback([&] {
    with_context(cfg, [&](auto& ctx) {
      using S = typename std::decay_t<decltype(ctx)>::Scalar;
      DunklOps<S> ops(ctx);
      auto expr = parse_operator<S>(op_text, ctx.dim());
      auto p = parse_poly<S>(poly_text, ctx.dim());
      auto r = expr.apply(ops, p);
      if (cfg.format == "json")
        std::cout << poly_to_json(r).dump(2) << "\n";
      else
        std::cout << r.str() << "\n";
      return 0;
    });
  });

  auto* cmd_pair = app.add_subcommand("pair", "pairing [p, q]_k = (p(T) q)(0)");
  std::string p_text, q_text;
  cmd_pair->add_option("--p", p_text)->required();
  cmd_pair->add_option("--q", q_text)->required();
  cmd_pair->callback([&] {
    with_context(cfg, [&](auto& ctx) {
      using S = typename std::decay_t<decltype(ctx)>::Scalar;
      DunklOps<S> ops(ctx);
      auto v = ops.fischer_pair(parse_poly<S>(p_text, ctx.dim()), parse_poly<S>(q_text, ctx.dim()));
      std::cout << scalar_traits<S>::str(v) << "\n";
      return 0;
    });
  });

  auto* cmd_inter = app.add_subcommand("intertwine", "apply the intertwining operator / verify it");
  std::string ipoly;
  bool iverify = false;
  cmd_inter->add_option("--poly", ipoly, "polynomial to map");
  cmd_inter->add_flag("--verify", iverify, "run the intertwiner identity report");
  cmd_inter->callback([&] {
    exit_code = with_context(cfg, [&](auto& ctx) {
      using S = typename std::decay_t<decltype(ctx)>::Scalar;
      if (iverify) {
        VerifyOptions opt{cfg.seed, cfg.max_degree, cfg.truncation, cfg.nodes};
        return emit_suites({verify_intertwiner(ctx, opt)}, cfg);
      }
      if (ipoly.empty()) throw ConfigError("pass --poly or --verify");
      auto p = parse_poly<S>(ipoly, ctx.dim());
      IntertwinerTable<S> table(ctx, std::max(0, p.degree()));
      auto r = table.apply(p);
      if (cfg.format == "json")
        std::cout << poly_to_json(r).dump(2) << "\n";
      else
        std::cout << r.str() << "\n";
      return 0;
    });
  });

  auto* cmd_int = app.add_subcommand("integrate", "quadrature against the weighted measures");
  std::string measure = "gaussian-wk", expr_text;
  double domain = 8.0;
  cmd_int->add_option("--measure", measure, "gaussian-wk or lebesgue-wk");
  cmd_int->add_option("--expr", expr_text, "polynomial integrand (omit to export the rule as CSV)");
  cmd_int->add_option("--domain", domain, "truncation radius for lebesgue-wk");
  cmd_int->callback([&] {
    with_context(cfg, [&](auto& ctx) {
      using S = typename std::decay_t<decltype(ctx)>::Scalar;
      QuadratureRule rule = (measure == "lebesgue-wk")
                                ? build_lebesgue_wk_rule(ctx, domain, cfg.nodes, 32)
                                : build_gaussian_wk_rule(ctx, cfg.nodes, 32);
      if (expr_text.empty()) {
        std::cout << rule_to_csv(rule);
        return 0;
      }
      auto p = parse_poly<S>(expr_text, ctx.dim());
      double v = rule.integrate_real([&](const std::vector<double>& x) { return p.template eval<double>(x); });
      if (cfg.format == "json") {
        nlohmann::json j{{"value", v}, {"nodes", rule.size()}, {"measure", measure}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::printf("%.15g\n", v);
      }
      return 0;
    });
  });

  auto* cmd_kernel = app.add_subcommand("kernel", "evaluate the kernel E_k (or the Bessel average)");
  std::string xs, ys, ys_im;
  bool bessel = false;
  cmd_kernel->add_option("--x", xs, "real point, e.g. 1,0")->required();
  cmd_kernel->add_option("--y", ys, "real part of y")->required();
  cmd_kernel->add_option("--yim", ys_im, "imaginary part of y (optional)");
  cmd_kernel->add_flag("--bessel", bessel, "group-averaged Bessel value");
  cmd_kernel->callback([&] {
    with_context(cfg, [&](auto& ctx) {
      using S = typename std::decay_t<decltype(ctx)>::Scalar;
      KernelEvaluator<S> ev(ctx, cfg.truncation);
      auto x = parse_point(xs);
      auto yre = parse_point(ys);
      std::vector<std::complex<double>> y(yre.begin(), yre.end());
      if (!ys_im.empty()) {
        auto yim = parse_point(ys_im);
        for (std::size_t i = 0; i < y.size() && i < yim.size(); ++i) y[i] += std::complex<double>(0.0, yim[i]);
      }
      auto val = bessel ? ev.eval_J(x, y) : ev.eval_E(x, y);
      if (cfg.format == "text") {
        std::printf("%s  (tail bound %.3e at truncation %d)\n", format_complex(val.value).c_str(),
                    val.tail_bound, val.truncation);
      } else {
        nlohmann::json j{{"value_re", val.value.real()},
                         {"value_im", val.value.imag()},
                         {"tail_bound", val.tail_bound},
                         {"truncation", val.truncation}};
        std::cout << j.dump(2) << "\n";
      }
      return 0;
    });
  });

  auto* cmd_hermite = app.add_subcommand("hermite", "generalized Hermite systems");
  bool hlist = false;
  std::string hcheck;
  cmd_hermite->add_flag("--list", hlist, "print the basis, norms and Hermite polynomials");
  cmd_hermite->add_option("--check", hcheck, "run the identity suite ('all')");
  cmd_hermite->callback([&] {
    exit_code = with_context(cfg, [&](auto& ctx) {
      using S = typename std::decay_t<decltype(ctx)>::Scalar;
      if (!hcheck.empty()) {
        VerifyOptions opt{cfg.seed, cfg.max_degree, cfg.truncation, cfg.nodes};
        return emit_suites({verify_hermite(ctx, opt)}, cfg);
      }
      HermiteSystem<S> sys(ctx, cfg.max_degree);
      for (int n = 0; n <= sys.cap(); ++n)
        for (const auto& e : sys.degree(n)) {
          std::cout << "degree " << n << "  phi = " << e.phi.str()
                    << "  |phi|^2 = " << scalar_traits<S>::str(e.norm_sq) << "\n"
                    << "          H   = " << e.h.str() << "\n";
        }
      (void)hlist;
      return 0;
    });
  });

  auto* cmd_tr = app.add_subcommand("transform", "Dunkl transform on the line");
  std::string fname = "gaussian";
  double xi_value = 0.0;
  cmd_tr->add_option("--f", fname, "gaussian | hermite:<n> | polygauss:<poly>  (poly times e^{-x^2/2})");
  cmd_tr->add_option("--xi", xi_value, "evaluation frequency")->required();
  cmd_tr->callback([&] {
    auto ctx = rank_one_from_config(cfg);
    TransformPlan<Sqrt2> plan(ctx);
    std::function<double(double)> f;
    if (fname == "gaussian") {
      f = [](double x) { return std::exp(-x * x / 2.0); };
    } else if (fname.rfind("hermite:", 0) == 0) {
      int n = std::stoi(fname.substr(8));
      auto sys = std::make_shared<HermiteSystem<Sqrt2>>(ctx, n);
      f = [sys, n](double x) {
        return sys->degree(n)[0].h.eval<double>({std::sqrt(2.0) * x}) * std::exp(-x * x / 2.0);
      };
    } else if (fname.rfind("polygauss:", 0) == 0) {
      auto p = std::make_shared<MultiPoly<Sqrt2>>(parse_poly<Sqrt2>(fname.substr(10), 1));
      f = [p](double x) { return p->eval<double>({x}) * std::exp(-x * x / 2.0); };
    } else {
      throw ConfigError("unknown --f choice '" + fname + "'");
    }
    auto v = plan.transform(f, xi_value);
    if (cfg.format == "text") {
      std::printf("%s  (boundary mass %.2e)\n", format_complex(v.value).c_str(), v.boundary_mass);
    } else {
      nlohmann::json j{{"value_re", v.value.real()},
                       {"value_im", v.value.imag()},
                       {"boundary_mass", v.boundary_mass},
                       {"domain", plan.domain()}};
      std::cout << j.dump(2) << "\n";
    }
  });

  auto* cmd_heat = app.add_subcommand("heat", "heat kernel evaluation and checks");
  double t_value = 0.5, hx = 1.0, hy = 0.3;
  std::string heat_check;
  cmd_heat->add_option("--t", t_value, "time");
  cmd_heat->add_option("--x", hx);
  cmd_heat->add_option("--y", hy);
  cmd_heat->add_option("--check", heat_check, "mass | semigroup | pde | markov | all");
  cmd_heat->callback([&] {
    auto ctx = rank_one_from_config(cfg);
    HeatKernel<Sqrt2> heat(ctx);
    if (!heat_check.empty()) {
      SuiteReport suite{"heat", {}};
      TransformPlan<Sqrt2> plan(ctx);
      if (heat_check == "all" || heat_check == "mass" || heat_check == "semigroup" || heat_check == "pde")
        suite.checks.push_back(check_heat_properties(heat, ctx, cfg.seed));
      if (heat_check == "all" || heat_check == "markov")
        suite.checks.push_back(check_heat_markov_transform(heat, plan));
      if (heat_check == "all") suite.checks.push_back(check_heat_semigroup_operator(heat, ctx));
      if (suite.checks.empty()) throw ConfigError("unknown --check choice '" + heat_check + "'");
      exit_code = emit_suites({suite}, cfg);
      return;
    }
    double v = heat.eval(t_value, {hx}, {hy});
    if (cfg.format == "text") {
      std::printf("%.15g\n", v);
    } else {
      nlohmann::json j{{"value", v}, {"t", t_value}, {"x", hx}, {"y", hy}};
      std::cout << j.dump(2) << "\n";
    }
  });

  auto* cmd_asym = app.add_subcommand("asympt", "rank-one asymptotic probes (CSV: t,value,target,error)");
  std::string mode = "ray", t_list = "50,100,200";
  double ax = 1.0, ay = 1.0;
  cmd_asym->add_option("--mode", mode, "ray | halfplane | heat");
  cmd_asym->add_option("--x", ax);
  cmd_asym->add_option("--y", ay);
  cmd_asym->add_option("--t", t_list, "comma list of t values (or radii for halfplane)");
  cmd_asym->callback([&] {
    auto ctx = rank_one_from_config(cfg);
    AsymptoticProbe probe(ctx.k[0]);
    auto ts = parse_point(t_list);
    std::printf("t,value_re,value_im,target_re,target_im,error\n");
    if (mode == "ray") {
      for (const auto& p : probe.ray_probe(ax, ay, ts))
        std::printf("%.6g,%.12g,%.12g,%.12g,%.12g,%.3e\n", p.t, p.value.real(), p.value.imag(),
                    p.target.real(), p.target.imag(), p.error);
    } else if (mode == "halfplane") {
      double target = probe.c_k() / probe.c_0() / std::sqrt(probe.weight(ax) * probe.weight(ay));
      for (double r : ts) {
        double dev = probe.half_plane_arc_deviation(ax, ay, r);
        std::printf("%.6g,,,%.12g,0,%.3e\n", r, target, dev);
      }
    } else if (mode == "heat") {
      for (double t : ts) {
        double v = probe.heat_ratio(t, ax, ay);
        std::printf("%.6g,%.12g,0,1,0,%.3e\n", t, v, std::fabs(v - 1.0));
      }
    } else {
      throw ConfigError("unknown --mode");
    }
  });

  auto* cmd_verify = app.add_subcommand("verify", "run an identity suite");
  std::string suite_name = "all";
  cmd_verify->add_option("suite", suite_name,
                         "operators | intertwiner | kernel | macdonald | hermite | transform | heat | "
                         "asymptotics | all");
  cmd_verify->callback([&] {
    VerifyOptions opt{cfg.seed, cfg.max_degree, cfg.truncation, cfg.nodes};
    auto k_list = parse_k_list(cfg.k_values);
    Rational k1 = k_list.empty() ? Rational(1, 2) : k_list.front();
    std::vector<SuiteReport> suites;
    bool known = false;
    auto want = [&](const char* name) {
      if (suite_name == name || suite_name == "all") {
        known = true;
        return true;
      }
      return false;
    };
    bool want_ops = want("operators"), want_inter = want("intertwiner"), want_ker = want("kernel");
    bool want_mac = want("macdonald"), want_her = want("hermite");
    if (want_ops || want_inter || want_ker || want_mac || want_her) {
      with_context(cfg, [&](auto& ctx) {
        if (want_ops) suites.push_back(verify_operators(ctx, opt));
        if (want_inter) suites.push_back(verify_intertwiner(ctx, opt));
        if (want_ker) suites.push_back(verify_kernel(ctx, opt));
        if (want_mac && ctx.dim() <= 3 && ctx.system.rank <= 2) suites.push_back(verify_macdonald(ctx, opt));
        if (want_her) suites.push_back(verify_hermite(ctx, opt));
        return 0;
      });
    }
    if (want("transform")) suites.push_back(verify_transform(k1, opt));
    if (want("heat")) suites.push_back(verify_heat(k1, opt));
    if (want("asymptotics")) suites.push_back(verify_asymptotics(k1, opt));
    if (!known) throw ConfigError("unknown suite '" + suite_name + "'");
    exit_code = emit_suites(suites, cfg);
  });

  for (auto* sc : {cmd_group, cmd_apply, cmd_pair, cmd_inter, cmd_int, cmd_kernel, cmd_hermite, cmd_tr,
                   cmd_heat, cmd_asym, cmd_verify})
    sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const UnsupportedDimensionError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return exit_code;
}
