#include "dualbound/capital.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "dualbound/exact_num.hpp"

namespace dualbound::capital {

namespace {

void require_n(long n) {
  if (n < 1) throw std::domain_error("capital: n must be at least 1");
}

void require_eps(const Rational& eps) {
  if (eps.sign() <= 0 || eps >= Rational(1)) throw std::domain_error("capital: epsilon must lie in (0, 1)");
}

std::string name2(const char* base, long k, long i) { return indexed_name(base, {k, i}); }

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

BigInt CapitalInstance::demand(long k) const {
  BigInt v;
  mpz_ui_pow_ui(v.get_mpz_t(), 2, static_cast<unsigned long>(k * k));
  return v;
}

Rational CapitalInstance::opt(long k) const {
  const BigInt dk = demand(k);
  std::optional<Rational> best;
  for (long i = 1; i <= n; ++i) {
    Rational cost = capital(i) + production(i) * Rational(dk);
    if (!best || cost < *best) best = std::move(cost);
  }
  return *best;
}

void GenericCapitalInstance::compute_opts() {
  if (machines.empty()) throw std::domain_error("capital: instance needs at least one machine");
  if (demands.empty()) throw std::domain_error("capital: instance needs at least one phase");
  for (const auto& m : machines) {
    if (m.capital.sign() < 0 || m.production.sign() < 0) {
      throw std::domain_error("capital: machine costs must be nonnegative");
    }
  }
  for (std::size_t k = 0; k < demands.size(); ++k) {
    if (demands[k] <= 0) throw std::domain_error("capital: demands must be positive");
    if (k > 0 && demands[k] < demands[k - 1]) throw std::domain_error("capital: demands must be nondecreasing");
  }
  opts.clear();
  for (const auto& d : demands) {
    std::optional<Rational> best;
    for (const auto& m : machines) {
      Rational cost = m.capital + m.production * Rational(d);
      if (!best || cost < *best) best = std::move(cost);
    }
    opts.push_back(*best);
  }
}

GenericCapitalInstance GenericCapitalInstance::standard(long n) {
  require_n(n);
  const CapitalInstance inst{n};
  GenericCapitalInstance g;
  for (long i = 1; i <= n; ++i) g.machines.push_back({inst.capital(i), inst.production(i)});
  for (long k = 1; k <= n; ++k) g.demands.push_back(inst.demand(k));
  g.compute_opts();
  return g;
}

GenericCapitalInstance GenericCapitalInstance::parse(std::string_view text) {
  GenericCapitalInstance g;
  enum class Section { None, Machines, Demands } section = Section::None;
  std::istringstream in{std::string(text)};
  std::string raw;
  long line_no = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(std::string_view(raw).substr(0, hash));
    if (line.empty()) continue;
    if (line == "machines") {
      section = Section::Machines;
      continue;
    }
    if (line == "demands") {
      section = Section::Demands;
      continue;
    }
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    try {
      if (section == Section::Machines) {
        if (tok.size() != 2) fail("expected 'capital production'");
        g.machines.push_back({Rational::parse(tok[0]), Rational::parse(tok[1])});
      } else if (section == Section::Demands) {
        if (tok.size() != 1) fail("expected one demand per line");
        const Rational d = Rational::parse(tok[0]);
        if (!d.is_integer()) fail("demand must be an integer");
        g.demands.push_back(d.num());
      } else {
        fail("data before a 'machines' or 'demands' header");
      }
    } catch (const std::invalid_argument& e) {
      const std::string what = e.what();
      if (what.rfind("line ", 0) == 0) throw;
      fail(what);
    }
  }
  try {
    g.compute_opts();
  } catch (const std::domain_error& e) {
    throw std::invalid_argument(e.what());
  }
  return g;
}

LinearProgram primal(long n) { return primal(GenericCapitalInstance::standard(n)); }

LinearProgram primal(const GenericCapitalInstance& g) {
  if (g.machines.empty()) throw std::domain_error("capital: instance needs at least one machine");
  if (g.opts.size() != g.demands.size()) throw std::domain_error("capital: opts not computed");
  const long machines = static_cast<long>(g.machines.size());
  const long phases = static_cast<long>(g.demands.size());
  LinearProgram p(Sense::Minimize);
  const std::size_t c = p.add_variable("c");
  std::vector<std::vector<std::size_t>> x(phases + 1, std::vector<std::size_t>(machines + 1));
  std::vector<std::vector<std::size_t>> q = x;
  for (long k = 1; k <= phases; ++k) {
    for (long i = 1; i <= machines; ++i) x[k][i] = p.add_variable(name2("x", k, i));
  }
  for (long k = 1; k <= phases; ++k) {
    for (long i = 1; i <= machines; ++i) q[k][i] = p.add_variable(name2("q", k, i));
  }
  p.set_objective({{c, Rational(1)}});
  for (long k = 1; k <= phases; ++k) {
    for (long i = 1; i <= machines; ++i) {
      std::vector<Term> terms;
      for (long r = 1; r <= k; ++r) terms.push_back({x[r][i], Rational(1)});
      terms.push_back({q[k][i], Rational(-1)});
      p.add_constraint(name2("y", k, i), std::move(terms), Relation::GreaterEqual, Rational(0));
    }
  }
  for (long k = 1; k <= phases; ++k) {
    std::vector<Term> terms;
    for (long i = 1; i <= machines; ++i) terms.push_back({q[k][i], Rational(1)});
    p.add_constraint(indexed_name("w", {k}), std::move(terms), Relation::Equal, Rational(1));
  }
  for (long k = 1; k <= phases; ++k) {
    std::vector<Term> terms;
    for (long r = 1; r <= k; ++r) {
      for (long i = 1; i <= machines; ++i) terms.push_back({x[r][i], g.machines[i - 1].capital});
    }
    const Rational demand(g.demands[k - 1]);
    for (long i = 1; i <= machines; ++i) terms.push_back({q[k][i], demand * g.machines[i - 1].production});
    terms.push_back({c, -g.opts[k - 1]});
    p.add_constraint(indexed_name("z", {k}), std::move(terms), Relation::LessEqual, Rational(0));
  }
  return p;
}

LinearProgram dual(long n, bool include_budget) {
  require_n(n);
  LinearProgram p(Sense::Maximize);
  std::vector<std::vector<std::size_t>> y(n + 1, std::vector<std::size_t>(n + 1));
  std::vector<std::size_t> z(n + 1), w(n + 1);
  for (long k = 1; k <= n; ++k) {
    for (long i = 1; i <= n; ++i) y[k][i] = p.add_variable(name2("y", k, i));
  }
  std::vector<Term> obj;
  for (long k = 1; k <= n; ++k) {
    w[k] = p.add_variable(indexed_name("w", {k}), VarSign::Free);
    obj.push_back({w[k], Rational(1)});
  }
  for (long k = 1; k <= n; ++k) z[k] = p.add_variable(indexed_name("z", {k}));
  p.set_objective(std::move(obj));
  if (include_budget) {
    std::vector<Term> terms;
    for (long k = 1; k <= n; ++k) terms.push_back({z[k], Rational(k + 2)});
    p.add_constraint("c", std::move(terms), Relation::LessEqual, Rational(1));
  }
  for (long k = 1; k <= n; ++k) {
    for (long i = 1; i <= n; ++i) {
      std::vector<Term> terms;
      for (long r = k; r <= n; ++r) {
        terms.push_back({z[r], Rational(i + 1)});
        terms.push_back({y[r][i], Rational(-1)});
      }
      p.add_constraint(name2("x", k, i), std::move(terms), Relation::GreaterEqual, Rational(0));
    }
  }
  for (long k = 1; k <= n; ++k) {
    for (long i = 1; i <= n; ++i) {
      p.add_constraint(name2("q", k, i),
                       {{y[k][i], Rational(1)}, {w[k], Rational(-1)}, {z[k], Rational::pow2(k * k - i * i)}},
                       Relation::GreaterEqual, Rational(0));
    }
  }
  return p;
}

CapitalCertificate certificate(long n, const Rational& epsilon, std::optional<long> cutoff) {
  require_n(n);
  require_eps(epsilon);
  CapitalCertificate cert;
  cert.n = n;
  cert.epsilon = epsilon;
  cert.cutoff = cutoff ? *cutoff : (Rational(n) * epsilon).floor().get_si();
  if (cert.cutoff < 0 || cert.cutoff > n) throw std::domain_error("capital: cutoff must lie in [0, n]");
  if (cert.cutoff == 0) cert.warnings.push_back("floor(n * epsilon) = 0: every w is zero and the bound is 0");
  const mpfr_prec_t prec = default_precision();
  // e (1 - eps) rounded down, then times ln((k+1)/k) rounded down.
  const HighPrecFloat scale = mul(HighPrecFloat::e(Round::Down, prec), Rational(1) - epsilon, Round::Down);
  for (long k = 1; k <= n; ++k) {
    cert.z.push_back(Rational(1, k * (k + 1)));
    if (k <= cert.cutoff) {
      const HighPrecFloat ratio = HighPrecFloat::from_rational(Rational(k + 1, k), Round::Down, prec);
      cert.w.push_back(mul(scale, log(ratio, Round::Down), Round::Down));
    } else {
      cert.w.emplace_back(0L, prec);
    }
  }
  return cert;
}

Point CapitalCertificate::point() const {
  Point pt;
  for (long k = 1; k <= n; ++k) {
    pt.set(indexed_name("w", {k}), w[k - 1]);
    pt.set(indexed_name("z", {k}), z[k - 1]);
    for (long i = 1; i <= n; ++i) {
      pt.set(name2("y", k, i), k <= i ? Scalar(w[k - 1]) : Scalar(Rational(0)));
    }
  }
  return pt;
}

RatioCertificate CapitalCertificate::ratio() const {
  RatioCertificate rc;
  rc.point = point();
  for (long k = 1; k <= n; ++k) {
    rc.numerator_terms.emplace_back(indexed_name("w", {k}), Rational(1));
    rc.denominator_terms.emplace_back(indexed_name("z", {k}), Rational(k + 2));
  }
  return rc;
}

FeasibilityReport verify(const CapitalCertificate& cert) {
  const long n = cert.n;
  const mpfr_prec_t prec = default_precision();
  FeasibilityReport rep;
  rep.exact = false;
  rep.tolerance = HighPrecFloat::from_double(kCapitalMargin, prec);
  std::optional<HighPrecFloat> worst;
  auto record = [&](HighPrecFloat slack, const char* base, long k, long i) {
    if (!worst || slack < *worst) {
      worst = std::move(slack);
      rep.tightest_constraint = name2(base, k, i);
    }
    ++rep.constraints_checked;
  };

  // Exact suffix sums of z; directed prefix sums of w.
  std::vector<Rational> suffix(n + 2);
  for (long k = n; k >= 1; --k) suffix[k] = suffix[k + 1] + cert.z[k - 1];
  std::vector<HighPrecFloat> pre_up, pre_down;
  pre_up.emplace_back(0L, prec);
  pre_down.emplace_back(0L, prec);
  for (long k = 1; k <= n; ++k) {
    pre_up.push_back(add(pre_up.back(), cert.w[k - 1], Round::Up));
    pre_down.push_back(add(pre_down.back(), cert.w[k - 1], Round::Down));
  }

  // Rows x_k_i: (i+1) sum_{r>=k} z_r - sum_{r=k}^{i} w_r >= 0 (y_{r,i} = 0 for r > i).
  for (long k = 1; k <= n; ++k) {
    const HighPrecFloat s_down = HighPrecFloat::from_rational(suffix[k], Round::Down, prec);
    for (long i = 1; i <= n; ++i) {
      HighPrecFloat lhs(prec);
      mpfr_mul_si(lhs.get_mut(), s_down.get(), i + 1, MPFR_RNDD);
      if (k <= i) {
        const HighPrecFloat wsum = sub(pre_up[i], pre_down[k - 1], Round::Up);
        record(sub(lhs, wsum, Round::Down), "x", k, i);
      } else {
        record(std::move(lhs), "x", k, i);
      }
    }
  }

  // Rows q_k_i: y_{k,i} - w_k + z_k 2^(k^2 - i^2) >= 0.
  for (long k = 1; k <= n; ++k) {
    const Rational& zk = cert.z[k - 1];
    const HighPrecFloat z_down = HighPrecFloat::from_rational(zk, Round::Down, prec);
    const HighPrecFloat& wk = cert.w[k - 1];
    for (long i = 1; i <= n; ++i) {
      const long e = k * k - i * i;
      const HighPrecFloat scaled = ldexp(z_down, e);
      if (k <= i) {
        // y_{k,i} equals w_k.
        record(scaled, "q", k, i);
        continue;
      }
      // y_{k,i} = 0: need w_k <= z_k 2^e.
      bool holds;
      if (wk.sign() <= 0) {
        holds = zk.sign() >= 0;
      } else if (zk.sign() <= 0) {
        holds = false;
      } else {
        holds = pow2_exponent_compare(wk.to_rational(), zk, e) != std::strong_ordering::greater;
      }
      HighPrecFloat slack = sub(scaled, wk, Round::Down);
      if (!holds && slack.sign() >= 0) slack = HighPrecFloat(-1L, prec);
      if (holds && slack.sign() < 0) slack = HighPrecFloat(0L, prec);
      record(std::move(slack), "q", k, i);
    }
  }

  for (long k = 1; k <= n; ++k) {
    if (cert.z[k - 1].sign() < 0) rep.sign_violations.push_back(indexed_name("z", {k}));
  }
  const HighPrecFloat w = worst.value_or(HighPrecFloat(0L, prec));
  rep.worst_slack = w;
  rep.worst_violation = w.sign() < 0 ? -w : HighPrecFloat(0L, prec);
  rep.objective_value = pre_down.back();
  rep.feasible = rep.sign_violations.empty() && w >= -HighPrecFloat::from_double(kCapitalMargin, prec);
  return rep;
}

FeasibilityReport verify(long n, const Rational& epsilon) { return verify(certificate(n, epsilon)); }

Rational denominator_exact(long n) {
  require_n(n);
  Rational sum;
  for (long k = 1; k <= n; ++k) sum += Rational(k + 2, k * (k + 1));
  return sum;
}

namespace {

// H(n) + 1 - 1/(n+1) rounded up.
HighPrecFloat denominator_up(const BigInt& n, mpfr_prec_t prec) {
  HighPrecFloat den = harmonic_float(n, Round::Up, prec);
  HighPrecFloat tail = HighPrecFloat::from_rational(Rational(BigInt(n), BigInt(n + 1)), Round::Up, prec);
  return add(den, tail, Round::Up);
}

}  // namespace

HighPrecFloat closed_form_bound(const BigInt& n, const Rational& epsilon) {
  if (n < 1) throw std::domain_error("capital: n must be at least 1");
  require_eps(epsilon);
  const mpfr_prec_t prec = default_precision() + static_cast<mpfr_prec_t>(mpz_sizeinbase(n.get_mpz_t(), 2));
  const BigInt m = (Rational(n) * epsilon).floor();
  const HighPrecFloat ln_m1 = log(HighPrecFloat::from_bigint(m + 1, Round::Down, prec), Round::Down);
  const HighPrecFloat num =
      mul(mul(HighPrecFloat::e(Round::Down, prec), Rational(1) - epsilon, Round::Down), ln_m1, Round::Down);
  return div(num, denominator_up(n, prec), Round::Down);
}

CapitalBound bound(long n, const Rational& epsilon) {
  const CapitalCertificate cert = certificate(n, epsilon);
  const mpfr_prec_t prec = default_precision();
  HighPrecFloat num(0L, prec);
  for (const auto& w : cert.w) num = add(num, w, Round::Down);
  HighPrecFloat den_up(prec);
  if (n <= 10'000) {
    // The z column sums to H(n) + 1 - 1/(n+1) exactly.
    Rational den;
    for (long k = 1; k <= n; ++k) den += Rational(k + 2) * cert.z[k - 1];
    den_up = HighPrecFloat::from_rational(den, Round::Up, prec);
  } else {
    den_up = denominator_up(BigInt(n), prec);
  }
  CapitalBound out;
  out.exact_ratio_value = div(num, den_up, Round::Down);
  out.analytic_form = closed_form_bound(BigInt(n), epsilon);
  return out;
}

}  // namespace dualbound::capital
