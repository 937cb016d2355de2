#include "dualbound/lp_core.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace dualbound {

namespace {

// Evaluates with exact arithmetic.
FeasibilityReport evaluate_exact(const LinearProgram& p, const std::vector<Rational>& x, const EvaluateOptions& opts) {
  FeasibilityReport rep;
  rep.exact = true;
  const Rational tol = opts.tolerance ? Rational::from_double(*opts.tolerance) : Rational(0);
  rep.tolerance = tol;
  std::optional<Rational> worst;
  for (const auto& row : p.constraints()) {
    Rational lhs;
    for (const auto& t : row.terms) {
      if (!x[t.var].is_zero()) lhs += t.coef * x[t.var];
    }
    Rational slack;
    switch (row.relation) {
      case Relation::LessEqual:
        slack = row.rhs - lhs;
        break;
      case Relation::GreaterEqual:
        slack = lhs - row.rhs;
        break;
      case Relation::Equal:
        slack = -(lhs - row.rhs).abs();
        break;
    }
    if (!worst || slack < *worst) {
      worst = slack;
      rep.tightest_constraint = row.name;
    }
    if (opts.keep_slacks) rep.per_constraint_slack.emplace_back(row.name, slack);
    ++rep.constraints_checked;
  }
  const Rational w = worst.value_or(Rational(0));
  rep.worst_slack = w;
  rep.worst_violation = w.sign() < 0 ? -w : Rational(0);
  for (std::size_t j = 0; j < p.variables().size(); ++j) {
    if (p.variables()[j].sign == VarSign::NonNegative && x[j].sign() < 0) {
      rep.sign_violations.push_back(p.variables()[j].name);
    }
  }
  Rational obj = p.objective_offset();
  for (const auto& t : p.objective()) obj += t.coef * x[t.var];
  rep.objective_value = obj;
  rep.feasible = rep.sign_violations.empty() && std::get<Rational>(rep.worst_violation) <= tol;
  return rep;
}

// lhs accumulated with every product and partial sum rounded in direction r.
void directed_lhs(const Constraint& row, const std::vector<HighPrecFloat>& x, Round r, HighPrecFloat& acc,
                  HighPrecFloat& tmp) {
  const mpfr_rnd_t rnd = to_mpfr(r);
  mpfr_set_zero(acc.get_mut(), 1);
  for (const auto& t : row.terms) {
    const HighPrecFloat& v = x[t.var];
    if (v.is_zero()) continue;
    mpfr_mul_z(tmp.get_mut(), v.get(), t.coef.raw().get_num_mpz_t(), rnd);
    mpfr_div_z(tmp.get_mut(), tmp.get(), t.coef.raw().get_den_mpz_t(), rnd);
    mpfr_add(acc.get_mut(), acc.get(), tmp.get(), rnd);
  }
}

FeasibilityReport evaluate_float(const LinearProgram& p, const std::vector<HighPrecFloat>& x, mpfr_prec_t prec,
                                 const EvaluateOptions& opts) {
  FeasibilityReport rep;
  rep.exact = false;
  const double tol_d = opts.tolerance.value_or(kFloatTolerance);
  const HighPrecFloat tol = HighPrecFloat::from_double(tol_d, prec);
  rep.tolerance = tol;
  HighPrecFloat acc(prec);
  HighPrecFloat tmp(prec);
  HighPrecFloat rhs_lo(prec);
  HighPrecFloat rhs_hi(prec);
  std::optional<HighPrecFloat> worst;
  for (const auto& row : p.constraints()) {
    mpfr_set_q(rhs_lo.get_mut(), row.rhs.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(rhs_hi.get_mut(), row.rhs.get_mpq_t(), MPFR_RNDU);
    HighPrecFloat slack(prec);
    if (row.relation != Relation::GreaterEqual) {
      directed_lhs(row, x, Round::Up, acc, tmp);
      mpfr_sub(slack.get_mut(), rhs_lo.get(), acc.get(), MPFR_RNDD);
    }
    if (row.relation != Relation::LessEqual) {
      directed_lhs(row, x, Round::Down, acc, tmp);
      HighPrecFloat other(prec);
      mpfr_sub(other.get_mut(), acc.get(), rhs_hi.get(), MPFR_RNDD);
      if (row.relation == Relation::GreaterEqual || other < slack) slack = std::move(other);
    }
    slack.set_rounding(Round::Down);
    if (!worst || slack < *worst) {
      worst = slack;
      rep.tightest_constraint = row.name;
    }
    if (opts.keep_slacks) rep.per_constraint_slack.emplace_back(row.name, std::move(slack));
    ++rep.constraints_checked;
  }
  HighPrecFloat w = worst.value_or(HighPrecFloat(0L, prec));
  rep.worst_violation = w.sign() < 0 ? -w : HighPrecFloat(0L, prec);
  rep.worst_slack = std::move(w);
  for (std::size_t j = 0; j < p.variables().size(); ++j) {
    if (p.variables()[j].sign == VarSign::NonNegative && add(x[j], tol, Round::Up).sign() < 0) {
      rep.sign_violations.push_back(p.variables()[j].name);
    }
  }
  HighPrecFloat obj = HighPrecFloat::from_rational(p.objective_offset(), Round::Nearest, prec);
  for (const auto& t : p.objective()) obj = add(obj, mul(x[t.var], t.coef, Round::Nearest), Round::Nearest);
  rep.objective_value = std::move(obj);
  rep.feasible =
      rep.sign_violations.empty() && std::get<HighPrecFloat>(rep.worst_violation) <= tol;
  return rep;
}

struct CanonRow {
  std::string name;
  std::vector<std::pair<std::string, Rational>> coeffs;
  Relation relation;
  Rational rhs;

  std::string content_key() const {
    std::ostringstream os;
    for (const auto& [n, c] : coeffs) os << n << '*' << c << ' ';
    os << to_string(relation) << ' ' << rhs;
    return os.str();
  }
};

CanonRow canonical_row(const LinearProgram& p, const Constraint& row) {
  CanonRow out{row.name, {}, row.relation, row.rhs};
  for (const auto& t : row.terms) out.coeffs.emplace_back(p.variables()[t.var].name, t.coef);
  std::sort(out.coeffs.begin(), out.coeffs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  bool negate = false;
  if (row.relation == Relation::GreaterEqual) {
    negate = true;
    out.relation = Relation::LessEqual;
  } else if (row.relation == Relation::Equal) {
    negate = !out.coeffs.empty() ? out.coeffs.front().second.sign() < 0 : row.rhs.sign() < 0;
  }
  if (negate) {
    for (auto& [n, c] : out.coeffs) c = -c;
    out.rhs = -out.rhs;
  }
  return out;
}

std::vector<CanonRow> canonical_rows(const LinearProgram& p, bool dedupe) {
  std::vector<CanonRow> rows;
  std::unordered_set<std::string> seen;
  for (const auto& row : p.constraints()) {
    CanonRow c = canonical_row(p, row);
    if (dedupe && !seen.insert(c.content_key()).second) continue;
    rows.push_back(std::move(c));
  }
  return rows;
}

std::string describe(const CanonRow& r) {
  return r.name + ": " + r.content_key();
}

}  // namespace

const Scalar* FeasibilityReport::slack_of(const std::string& row) const {
  for (const auto& [name, s] : per_constraint_slack) {
    if (name == row) return &s;
  }
  return nullptr;
}

FeasibilityReport evaluate(const LinearProgram& p, const Point& pt, const EvaluateOptions& opts) {
  const std::size_t n = p.variables().size();
  bool any_float = false;
  bool any_exact = false;
  mpfr_prec_t prec = default_precision();
  std::vector<const Scalar*> assigned(n, nullptr);
  for (const auto& [name, value] : pt.values) {
    const auto idx = p.find_variable(name);
    if (!idx) throw std::invalid_argument("point assigns unknown variable '" + name + "'");
    assigned[*idx] = &value;
    if (const auto* f = std::get_if<HighPrecFloat>(&value)) {
      any_float = true;
      prec = std::max(prec, f->precision());
    } else {
      any_exact = true;
    }
  }
  if (!any_float) {
    std::vector<Rational> x(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (assigned[j] != nullptr) x[j] = std::get<Rational>(*assigned[j]);
    }
    return evaluate_exact(p, x, opts);
  }
  // An exact value becomes a float rounded to nearest; the directed rounding
  // of the row sides then decides feasibility for those stored floats.
  std::vector<HighPrecFloat> x;
  x.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (assigned[j] == nullptr) {
      x.emplace_back(0L, prec);
    } else {
      x.push_back(to_float(*assigned[j], Round::Nearest, prec));
    }
  }
  FeasibilityReport rep = evaluate_float(p, x, prec, opts);
  rep.promoted_to_float = any_exact;
  return rep;
}

LinearProgram dualize(const LinearProgram& p) {
  const bool primal_min = p.sense() == Sense::Minimize;
  LinearProgram d(primal_min ? Sense::Maximize : Sense::Minimize);
  const auto& rows = p.constraints();
  std::vector<Rational> mult(rows.size(), Rational(1));
  LinearExpr objective;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Relation natural = primal_min ? Relation::GreaterEqual : Relation::LessEqual;
    VarSign sign = VarSign::NonNegative;
    if (rows[i].relation == Relation::Equal) {
      sign = VarSign::Free;
    } else if (rows[i].relation != natural) {
      mult[i] = Rational(-1);
    }
    const std::size_t u = d.add_variable(rows[i].name, sign);
    objective.add(u, mult[i] * rows[i].rhs);
  }
  d.set_objective(objective.terms(), p.objective_offset());

  std::vector<std::vector<Term>> columns(p.variables().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto& t : rows[i].terms) columns[t.var].push_back({i, mult[i] * t.coef});
  }
  std::vector<Rational> cost(p.variables().size());
  for (const auto& t : p.objective()) cost[t.var] = t.coef;
  for (std::size_t j = 0; j < p.variables().size(); ++j) {
    const auto& v = p.variables()[j];
    Relation rel = Relation::Equal;
    if (v.sign == VarSign::NonNegative) rel = primal_min ? Relation::LessEqual : Relation::GreaterEqual;
    d.add_constraint(v.name, std::move(columns[j]), rel, cost[j]);
  }
  return d;
}

Scalar evaluate_form(const std::vector<std::pair<std::string, Rational>>& terms, const Point& pt, Round r) {
  bool exact = true;
  mpfr_prec_t prec = default_precision();
  for (const auto& [name, coef] : terms) {
    if (const Scalar* v = pt.find(name); v != nullptr && !is_exact(*v)) {
      exact = false;
      prec = std::max(prec, std::get<HighPrecFloat>(*v).precision());
    }
  }
  if (exact) {
    Rational sum;
    for (const auto& [name, coef] : terms) {
      if (const Scalar* v = pt.find(name)) sum += coef * std::get<Rational>(*v);
    }
    return sum;
  }
  HighPrecFloat sum(0L, prec);
  for (const auto& [name, coef] : terms) {
    if (const Scalar* v = pt.find(name)) sum = add(sum, mul(to_float(*v, r, prec), coef, r), r);
  }
  sum.set_rounding(r);
  return sum;
}

NormalizedCertificate normalize_ratio(const RatioCertificate& rc) {
  NormalizedCertificate out;
  out.numerator = evaluate_form(rc.numerator_terms, rc.point, Round::Down);
  out.denominator = evaluate_form(rc.denominator_terms, rc.point, Round::Up);
  if (sign(out.denominator) <= 0) {
    throw std::domain_error("ratio certificate denominator must be strictly positive");
  }
  if (is_exact(out.numerator) && is_exact(out.denominator)) {
    const Rational& den = std::get<Rational>(out.denominator);
    out.value = std::get<Rational>(out.numerator) / den;
    for (const auto& [name, v] : rc.point.values) out.point.set(name, std::get<Rational>(v) / den);
    return out;
  }
  const mpfr_prec_t prec = std::max(to_float(out.numerator, Round::Down).precision(),
                                    to_float(out.denominator, Round::Up).precision());
  const HighPrecFloat num = to_float(out.numerator, Round::Down, prec);
  const HighPrecFloat den_up = to_float(out.denominator, Round::Up, prec);
  out.value = div(num, den_up, Round::Down);
  const HighPrecFloat den_near = to_float(evaluate_form(rc.denominator_terms, rc.point, Round::Nearest),
                                          Round::Nearest, prec);
  for (const auto& [name, v] : rc.point.values) {
    out.point.set(name, div(to_float(v, Round::Nearest, prec), den_near, Round::Nearest));
  }
  return out;
}

std::optional<std::string> structural_difference(const LinearProgram& a, const LinearProgram& b,
                                                 const CompareOptions& opts) {
  if (a.sense() != b.sense()) return "objective sense differs";
  std::map<std::string, VarSign> va;
  std::map<std::string, VarSign> vb;
  for (const auto& v : a.variables()) va.emplace(v.name, v.sign);
  for (const auto& v : b.variables()) vb.emplace(v.name, v.sign);
  for (const auto& [name, s] : va) {
    auto it = vb.find(name);
    if (it == vb.end()) return "variable '" + name + "' only in first program";
    if (it->second != s) return "variable '" + name + "' has a different sign restriction";
  }
  for (const auto& [name, s] : vb) {
    if (va.count(name) == 0) return "variable '" + name + "' only in second program";
  }
  auto objective_map = [](const LinearProgram& p) {
    std::map<std::string, Rational> m;
    for (const auto& t : p.objective()) m.emplace(p.variables()[t.var].name, t.coef);
    return m;
  };
  if (objective_map(a) != objective_map(b)) return "objective coefficients differ";
  if (a.objective_offset() != b.objective_offset()) return "objective offsets differ";

  const auto ra = canonical_rows(a, opts.dedupe_identical_rows);
  const auto rb = canonical_rows(b, opts.dedupe_identical_rows);
  std::unordered_map<std::string, const CanonRow*> by_name;
  for (const auto& r : rb) by_name.emplace(r.name, &r);
  for (const auto& r : ra) {
    auto it = by_name.find(r.name);
    if (it == by_name.end()) return "row '" + r.name + "' only in first program";
    const CanonRow& o = *it->second;
    if (r.coeffs != o.coeffs || r.relation != o.relation || r.rhs != o.rhs) {
      return "row differs: [" + describe(r) + "] vs [" + describe(o) + "]";
    }
  }
  if (ra.size() != rb.size()) {
    std::unordered_set<std::string> names;
    for (const auto& r : ra) names.insert(r.name);
    for (const auto& r : rb) {
      if (names.count(r.name) == 0) return "row '" + r.name + "' only in second program";
    }
  }
  return std::nullopt;
}

}  // namespace dualbound
