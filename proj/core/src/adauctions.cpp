#include "dualbound/adauctions.hpp"

#include <stdexcept>

#include "dualbound/lp_solver.hpp"

namespace dualbound::adauctions {

namespace {

void require_d(long d) {
  if (d < 2) throw std::domain_error("adauctions: d must be at least 2");
}

std::string name2(const char* base, long k, long i) { return indexed_name(base, {k, i}); }

long to_long(const BigInt& v) {
  if (!v.fits_slong_p()) throw SizeLimitError("adauctions: index range too large");
  return v.get_si();
}

}  // namespace

AdInstance instance(long d) {
  require_d(d);
  AdInstance inst;
  inst.d = d;
  mpz_ui_pow_ui(inst.n.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(d - 1));
  for (long k = 1; k <= d; ++k) {
    BigInt a;
    BigInt b;
    mpz_ui_pow_ui(a.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(d - k));
    mpz_ui_pow_ui(b.get_mpz_t(), static_cast<unsigned long>(d - 1), static_cast<unsigned long>(k - 1));
    inst.R.push_back(a * b);
  }
  return inst;
}

LinearProgram primal(long d) {
  require_d(d);
  if (d > kMaxFullDegree) {
    throw SizeLimitError("adauctions: full program limited to d <= " + std::to_string(kMaxFullDegree));
  }
  const AdInstance inst = instance(d);
  LinearProgram p(Sense::Maximize);
  // x[k][i], i in [R_k]; t[k][i], i in [R_{k+1}]; index 0 unused.
  std::vector<std::vector<std::size_t>> x(d), t(d);
  for (long k = 1; k <= d - 1; ++k) {
    const long rk = to_long(inst.r(k));
    x[k].resize(rk + 1);
    for (long i = 1; i <= rk; ++i) x[k][i] = p.add_variable(name2("x", k, i));
  }
  for (long k = 1; k <= d - 1; ++k) {
    const long rk1 = to_long(inst.r(k + 1));
    t[k].resize(rk1 + 1);
    for (long i = 1; i <= rk1; ++i) t[k][i] = p.add_variable(name2("t", k, i));
  }
  std::vector<Term> obj;
  for (long k = 1; k <= d - 1; ++k) {
    for (std::size_t i = 1; i < x[k].size(); ++i) obj.push_back({x[k][i], Rational(1)});
  }
  for (std::size_t i = 1; i < t[d - 1].size(); ++i) obj.push_back({t[d - 1][i], Rational(-1)});
  p.set_objective(std::move(obj), Rational(inst.r(d)));

  for (long k = 1; k <= d - 1; ++k) {
    const long rk = to_long(inst.r(k));
    for (long a = 1; a <= rk / d; ++a) {
      std::vector<Term> terms;
      for (long i = (a - 1) * d + 1; i <= a * d; ++i) terms.push_back({x[k][i], Rational(1)});
      p.add_constraint(name2("y", k, a), std::move(terms), Relation::LessEqual, Rational(1));
    }
    for (long i = 1; i <= rk; ++i) {
      if (i % d == 0) continue;
      const long top = d * ((i + d - 1) / d);
      std::vector<Term> terms{{x[k][top], Rational(1)}, {x[k][i], Rational(-1)}};
      if (k > 1) {
        terms.push_back({t[k - 1][top], Rational(1)});
        terms.push_back({t[k - 1][i], Rational(-1)});
      }
      p.add_constraint(name2("w", k, i), std::move(terms), Relation::LessEqual, Rational(0));
    }
    std::vector<Term> terms;
    for (long i = 1; i <= rk; ++i) {
      if (i % d == 0) continue;
      terms.push_back({x[k][i], Rational(1)});
      if (k > 1) terms.push_back({t[k - 1][i], Rational(1)});
    }
    for (std::size_t i = 1; i < t[k].size(); ++i) terms.push_back({t[k][i], Rational(-1)});
    p.add_constraint(indexed_name("z", {k}), std::move(terms), Relation::Equal, Rational(0));
  }
  return p;
}

LinearProgram primal_symmetric(long d) {
  require_d(d);
  const AdInstance inst = instance(d);
  LinearProgram p(Sense::Maximize);
  // xs/xd: x of a survivor / of the dropped member in phase k. ts/td: t_k
  // at survivor / dropped positions of phase k+1; tf = t_{d-1}.
  std::vector<std::size_t> xs(d), xd(d), ts(d), td(d);
  for (long k = 1; k <= d - 1; ++k) {
    xs[k] = p.add_variable(indexed_name("xs", {k}));
    xd[k] = p.add_variable(indexed_name("xd", {k}));
  }
  for (long k = 1; k <= d - 2; ++k) {
    ts[k] = p.add_variable(indexed_name("ts", {k}));
    td[k] = p.add_variable(indexed_name("td", {k}));
  }
  const std::size_t tf = p.add_variable("tf");
  std::vector<Term> obj;
  for (long k = 1; k <= d - 1; ++k) {
    const Rational group_count = Rational(inst.r(k)) / Rational(d);
    obj.push_back({xs[k], group_count * Rational(d - 1)});
    obj.push_back({xd[k], group_count});
  }
  obj.push_back({tf, -Rational(inst.r(d))});
  p.set_objective(std::move(obj), Rational(inst.r(d)));

  for (long k = 1; k <= d - 1; ++k) {
    p.add_constraint(indexed_name("y", {k}), {{xs[k], Rational(d - 1)}, {xd[k], Rational(1)}}, Relation::LessEqual,
                     Rational(1));
    std::vector<Term> w{{xd[k], Rational(1)}, {xs[k], Rational(-1)}};
    if (k > 1) {
      w.push_back({td[k - 1], Rational(1)});
      w.push_back({ts[k - 1], Rational(-1)});
    }
    p.add_constraint(indexed_name("w", {k}), std::move(w), Relation::LessEqual, Rational(0));
    // Survivors carry x + t into the R_{k+1} positions of the next phase.
    std::vector<Term> z{{xs[k], Rational(d)}};
    if (k > 1) z.push_back({ts[k - 1], Rational(d)});
    if (k < d - 1) {
      z.push_back({ts[k], Rational(-(d - 1))});
      z.push_back({td[k], Rational(-1)});
    } else {
      z.push_back({tf, Rational(-d)});
    }
    p.add_constraint(indexed_name("z", {k}), std::move(z), Relation::Equal, Rational(0));
  }
  return p;
}

LinearProgram dual(long d) {
  require_d(d);
  if (d > kMaxFullDegree) {
    throw SizeLimitError("adauctions: full program limited to d <= " + std::to_string(kMaxFullDegree));
  }
  const AdInstance inst = instance(d);
  LinearProgram p(Sense::Minimize);
  std::vector<std::vector<std::size_t>> y(d), w(d);
  std::vector<std::size_t> z(d);
  std::vector<Term> obj;
  for (long k = 1; k <= d - 1; ++k) {
    const long rk = to_long(inst.r(k));
    y[k].resize(rk / d + 1);
    for (long a = 1; a <= rk / d; ++a) {
      y[k][a] = p.add_variable(name2("y", k, a));
      obj.push_back({y[k][a], Rational(1)});
    }
    w[k].resize(rk + 1);
    for (long i = 1; i <= rk; ++i) {
      if (i % d != 0) w[k][i] = p.add_variable(name2("w", k, i));
    }
    z[k] = p.add_variable(indexed_name("z", {k}), VarSign::Free);
  }
  p.set_objective(std::move(obj), Rational(inst.r(d)));

  auto group_w = [&](long k, long i, std::vector<Term>& terms) {
    const long a = (i + d - 1) / d;
    for (long r = (a - 1) * d + 1; r < a * d; ++r) terms.push_back({w[k][r], Rational(1)});
  };
  for (long k = 1; k <= d - 1; ++k) {
    const long rk = to_long(inst.r(k));
    for (long i = 1; i <= rk; ++i) {
      const long a = (i + d - 1) / d;
      std::vector<Term> terms{{y[k][a], Rational(1)}};
      if (i % d != 0) {
        terms.push_back({w[k][i], Rational(-1)});
        terms.push_back({z[k], Rational(1)});
      } else {
        group_w(k, i, terms);
      }
      p.add_constraint(name2("x", k, i), std::move(terms), Relation::GreaterEqual, Rational(1));
    }
  }
  for (long k = 1; k <= d - 2; ++k) {
    const long rk1 = to_long(inst.r(k + 1));
    for (long i = 1; i <= rk1; ++i) {
      std::vector<Term> terms{{z[k], Rational(-1)}};
      if (i % d != 0) {
        terms.push_back({w[k + 1][i], Rational(-1)});
        terms.push_back({z[k + 1], Rational(1)});
      } else {
        group_w(k + 1, i, terms);
      }
      p.add_constraint(name2("t", k, i), std::move(terms), Relation::GreaterEqual, Rational(0));
    }
  }
  p.add_constraint(name2("t", d - 1, 1), {{z[d - 1], Rational(-1)}}, Relation::GreaterEqual, Rational(-1));
  return p;
}

LinearProgram class_dual(long d) {
  require_d(d);
  const AdInstance inst = instance(d);
  LinearProgram p(Sense::Minimize);
  std::vector<std::size_t> y(d), w(d), z(d);
  std::vector<Term> obj;
  for (long k = 1; k <= d - 1; ++k) {
    y[k] = p.add_variable(indexed_name("y", {k}));
    w[k] = p.add_variable(indexed_name("w", {k}));
    z[k] = p.add_variable(indexed_name("z", {k}), VarSign::Free);
    obj.push_back({y[k], Rational(inst.r(k)) / Rational(d)});
  }
  p.set_objective(std::move(obj), Rational(inst.r(d)));
  // Rows are named after a representative full row: index 1 is a survivor,
  // index d the dropped member of group 1.
  for (long k = 1; k <= d - 1; ++k) {
    p.add_constraint(name2("x", k, 1), {{y[k], Rational(1)}, {w[k], Rational(-1)}, {z[k], Rational(1)}},
                     Relation::GreaterEqual, Rational(1));
    p.add_constraint(name2("x", k, d), {{y[k], Rational(1)}, {w[k], Rational(d - 1)}}, Relation::GreaterEqual,
                     Rational(1));
  }
  for (long k = 1; k <= d - 2; ++k) {
    p.add_constraint(name2("t", k, 1), {{w[k + 1], Rational(-1)}, {z[k], Rational(-1)}, {z[k + 1], Rational(1)}},
                     Relation::GreaterEqual, Rational(0));
    p.add_constraint(name2("t", k, d), {{w[k + 1], Rational(d - 1)}, {z[k], Rational(-1)}}, Relation::GreaterEqual,
                     Rational(0));
  }
  p.add_constraint(name2("t", d - 1, 1), {{z[d - 1], Rational(-1)}}, Relation::GreaterEqual, Rational(-1));
  return p;
}

Point AdCertificate::class_point() const {
  Point pt;
  for (long k = 1; k <= d - 1; ++k) {
    pt.set(indexed_name("y", {k}), y[k - 1]);
    pt.set(indexed_name("w", {k}), w[k - 1]);
    pt.set(indexed_name("z", {k}), z[k - 1]);
  }
  return pt;
}

Point AdCertificate::full_point() const {
  if (d > kMaxFullDegree) throw SizeLimitError("adauctions: full point limited to small d");
  const AdInstance inst = instance(d);
  Point pt;
  for (long k = 1; k <= d - 1; ++k) {
    const long rk = to_long(inst.r(k));
    for (long a = 1; a <= rk / d; ++a) pt.set(name2("y", k, a), y[k - 1]);
    for (long i = 1; i <= rk; ++i) {
      if (i % d != 0) pt.set(name2("w", k, i), w[k - 1]);
    }
    pt.set(indexed_name("z", {k}), z[k - 1]);
  }
  return pt;
}

TightnessReport check_tightness(const AdCertificate& c) {
  TightnessReport rep;
  const long d = c.d;
  auto expect = [&](bool ok, const char* what, long k) {
    ++rep.identities_checked;
    if (!ok && !rep.first_failure) rep.first_failure = std::string(what) + " at k=" + std::to_string(k);
  };
  for (long k = 1; k <= d - 1; ++k) {
    const Rational &y = c.y[k - 1], &w = c.w[k - 1], &z = c.z[k - 1];
    expect(y - w + z == Rational(1), "y_k - w_k + z_k = 1", k);
    expect(y + Rational(d - 1) * w == Rational(1), "y_k + (d-1) w_k = 1", k);
    if (k <= d - 2) {
      expect(-c.w[k] - z + c.z[k] == Rational(0), "-w_{k+1} - z_k + z_{k+1} = 0", k);
      expect(Rational(d - 1) * c.w[k] - z == Rational(0), "(d-1) w_{k+1} - z_k = 0", k);
    }
  }
  expect(c.z[d - 2] == Rational(1), "z_{d-1} = 1", d - 1);
  return rep;
}

AdCertificate certificate(long d) {
  require_d(d);
  AdCertificate c;
  c.d = d;
  const Rational q(d - 1, d);
  for (long k = 1; k <= d - 1; ++k) {
    const Rational qk = Rational::pow(q, d - k);
    c.z.push_back(Rational::pow(q, d - k - 1));
    c.w.push_back(qk / Rational(d - 1));
    c.y.push_back(Rational(1) - qk);
  }
  const TightnessReport rep = check_tightness(c);
  if (!rep.holds()) throw std::logic_error("adauctions: tightness identity failed: " + *rep.first_failure);
  return c;
}

AdBound bound(long d) {
  const AdCertificate c = certificate(d);
  const AdInstance inst = instance(d);
  Rational value(inst.r(d));
  for (long k = 1; k <= d - 1; ++k) value += c.y[k - 1] * Rational(inst.r(k)) / Rational(d);
  const Rational n(inst.n);
  const Rational closed = n * (Rational(1) - Rational::pow(Rational(d - 1, d), d));
  if (value != closed) throw std::logic_error("adauctions: certificate value disagrees with the closed form");
  return {value, value / n};
}

FeasibilityReport verify(long d) {
  return evaluate(class_dual(d), certificate(d).class_point(), {.tolerance = 0.0, .keep_slacks = true});
}

}  // namespace dualbound::adauctions
